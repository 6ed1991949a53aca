#![no_main]

use libfuzzer_sys::fuzz_target;
use moya_core::iprob::{pdf, DistributionSpec};
use moya_core::Interval;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(spec) = DistributionSpec::from_json(src) else { return };
    let Ok(d) = spec.build() else { return };
    for x in [-1.0, 0.0, 0.5, 2.0] {
        let _ = pdf(&d, Interval::point(x));
    }
});
