#![no_main]

use libfuzzer_sys::fuzz_target;
use moya_core::Interval;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(x) = src.parse::<Interval>() {
        assert!(x.lo() <= x.hi());
        let again: Interval = x.to_string().parse().expect("display reparses");
        assert_eq!(again, x);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<Interval>(&json).unwrap(), x);
    }
});
