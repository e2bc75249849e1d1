#![no_main]

use libfuzzer_sys::fuzz_target;
use qwedge_core::parse::parse_affine_type;

fuzz_target!(|data: &str| {
    if let Ok(t) = parse_affine_type(data) {
        assert!(t.n >= t.kind.min_rank());
        let again = format!("{}:{}", t.kind.cli_name(), t.n);
        assert_eq!(parse_affine_type(&again).unwrap(), t);
    }
});
