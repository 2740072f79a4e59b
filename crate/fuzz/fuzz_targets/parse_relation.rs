#![no_main]

use libfuzzer_sys::fuzz_target;
use osa_core::osa::parse_relation;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        let _ = parse_relation(src);
    }
});
