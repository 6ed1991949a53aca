#![no_main]

use libfuzzer_sys::fuzz_target;
use moya_core::expr::{eval_with, parse};
use moya_core::{Interval, Rounding};

fuzz_target!(|data: &[u8]| {
    if data.len() < 16 {
        return;
    }
    let (head, tail) = data.split_at(16);
    let lo = f64::from_le_bytes(head[..8].try_into().unwrap());
    let hi = f64::from_le_bytes(head[8..].try_into().unwrap());
    let Ok(x) = Interval::new(lo.min(hi), lo.max(hi)) else { return };
    let Ok(src) = std::str::from_utf8(tail) else { return };
    let Ok(e) = parse(src) else { return };
    for rounding in [Rounding::Nearest, Rounding::Outward] {
        if let Ok(v) = eval_with(&e, x, rounding) {
            assert!(!(v.lo() > v.hi()));
        }
    }
});
