#![no_main]

use libfuzzer_sys::fuzz_target;
use moya_core::expr::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    match parse(src) {
        // printing is a fixed point of parsing
        Ok(e) => {
            let printed = e.to_string();
            let back = parse(&printed).expect("printed expression reparses");
            assert_eq!(back, e);
            assert_eq!(back.to_string(), printed);
        }
        Err(err) => assert!(err.offset <= src.len()),
    }
});
