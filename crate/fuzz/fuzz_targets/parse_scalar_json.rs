#![no_main]

use libfuzzer_sys::fuzz_target;
use qwedge_core::parse::parse_scalar_json;

fuzz_target!(|data: &str| {
    // Anything accepted must survive a round trip unchanged.
    if let Ok(x) = parse_scalar_json(data) {
        let text = x.to_json_value().to_string();
        assert_eq!(parse_scalar_json(&text).unwrap(), x);
    }
});
