//! First line: the ansatz. Second line, if any: an objective name such as
//! `power_law:-1/2`.
#![no_main]

use libfuzzer_sys::fuzz_target;
use osa_core::osa::{Ansatz, Objective};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (ansatz, objective) = text.split_once('\n').unwrap_or((text, "constant_width"));
    let velocity = Ansatz::parse(ansatz).ok();
    let _ = Objective::parse(
        objective,
        velocity.as_ref().and_then(|a| a.velocity_exponent()),
    );
});
