#![no_main]

use libfuzzer_sys::fuzz_target;
use moya_core::iprob::{validate_measure, FiniteIntervalMeasure};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(m) = FiniteIntervalMeasure::from_json(src) else { return };
    // keep the exhaustive pass small
    if m.weights.len() <= 12 {
        let _ = validate_measure(&m);
    }
});
