#![no_main]

use libfuzzer_sys::fuzz_target;
use qwedge_core::parse::parse_tableau;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_tableau(text) {
        assert_eq!(parse_tableau(&t.to_string()).unwrap(), t);
    }
});
