//! Replays the checked-in fuzz corpus through the parsers with the same
//! round-trip checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use qwedge_core::parse::{parse_affine_type, parse_eval_point, parse_scalar_json, parse_tableau};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn accepted(target: &str, ok: impl Fn(&str) -> bool) -> Vec<String> {
    seeds(target).into_iter().filter(|(_, text)| ok(text)).map(|(name, _)| name).collect()
}

#[test]
fn scalar_json_seeds() {
    let ok = accepted("parse_scalar_json", |text| match parse_scalar_json(text) {
        Ok(x) => {
            assert_eq!(parse_scalar_json(&x.to_json_value().to_string()).unwrap(), x);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["big_exponent", "one", "q_plus_inverse", "quotient"]);
}

#[test]
fn eval_point_seeds() {
    let ok = accepted("parse_eval_point", |text| match parse_eval_point(text) {
        Ok(r) => {
            assert_eq!(parse_eval_point(&r.to_string()).unwrap(), r);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["default", "integer", "negative"]);
}

#[test]
fn affine_type_seeds() {
    let ok = accepted("parse_affine_type", |text| match parse_affine_type(text) {
        Ok(t) => {
            assert_eq!(parse_affine_type(&format!("{}:{}", t.kind.cli_name(), t.n)).unwrap(), t);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["c1", "dagger", "display_name"]);
}

#[test]
fn tableau_seeds() {
    let ok = accepted("parse_tableau", |text| match parse_tableau(text) {
        Ok(t) => {
            assert_eq!(parse_tableau(&t.to_string()).unwrap(), t);
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok, ["column", "spin", "zeros"]);
}

proptest::proptest! {
    #[test]
    fn parsers_never_panic(text in "\\PC{0,64}", json in r#"\{"num":\[(\[-?[0-9]{1,5},"-?[0-9]{1,3}(/[0-9]{1,2})?"\],?){0,3}\],"den":\[(\[-?[0-9]{1,5},"[0-9]{1,3}"\],?){0,3}\]\}"#) {
        let _ = parse_eval_point(&text);
        let _ = parse_affine_type(&text);
        let _ = parse_tableau(&text);
        let _ = parse_scalar_json(&text);
        if let Ok(x) = parse_scalar_json(&json) {
            proptest::prop_assert_eq!(parse_scalar_json(&x.to_json_value().to_string()).unwrap(), x);
        }
    }
}
