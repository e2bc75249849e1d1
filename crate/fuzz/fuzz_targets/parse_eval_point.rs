#![no_main]

use libfuzzer_sys::fuzz_target;
use qwedge_core::parse::parse_eval_point;

fuzz_target!(|data: &str| {
    if let Ok(r) = parse_eval_point(data) {
        assert!(*r.numer() != 0.into());
        assert_eq!(parse_eval_point(&r.to_string()).unwrap(), r);
    }
});
