//! First line: comma-separated parameter names. Rest: the equation.
//! Anything that parses must survive render and re-parse unchanged.
#![no_main]

use libfuzzer_sys::fuzz_target;
use osa_core::pdeparse::{parse_equation, render};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (head, src) = text.split_once('\n').unwrap_or(("", text));
    let params: Vec<&str> = head
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if let Ok(e) = parse_equation(src, &params) {
        let shown = render(&e);
        let back = parse_equation(&shown, &params)
            .unwrap_or_else(|err| panic!("rendered `{shown}` does not re-parse: {err}"));
        assert_eq!(back, e, "{shown}");
    }
});
