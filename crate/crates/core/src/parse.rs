//! Entry points for untrusted text input. None of these panic.

use crate::crystal::Tableau;
use crate::error::{Error, Result};
use crate::rootdata::AffineType;
use crate::scalar::{parse_rational, Rational, RationalScalar};
use num::Zero;

/// Longest column accepted; columns never exceed the rank bound.
pub const MAX_TABLEAU_LEN: usize = 64;

/// Parses the JSON form `{"num": [[exp,"p/q"],...], "den": [...]}`.
pub fn parse_scalar_json(text: &str) -> Result<RationalScalar> {
    RationalScalar::from_json_str(text)
}

/// Parses an evaluation point `P/Q` for `s`; zero is rejected because `s` is
/// inverted everywhere.
pub fn parse_eval_point(text: &str) -> Result<Rational> {
    let r = parse_rational(text)?;
    if r.is_zero() {
        return Err(Error::Parse("evaluation point must be nonzero".into()));
    }
    Ok(r)
}

/// Parses `kind:n`, e.g. `c1:3`, validating the rank.
pub fn parse_affine_type(text: &str) -> Result<AffineType> {
    text.parse()
}

/// Parses a column such as `1 2 -1`.
pub fn parse_tableau(text: &str) -> Result<Tableau> {
    let mut entries = Vec::new();
    for tok in text.split_whitespace() {
        if entries.len() == MAX_TABLEAU_LEN {
            return Err(Error::Parse("column too long".into()));
        }
        let j: i32 = tok.parse().map_err(|_| Error::Parse(format!("bad entry {tok:?}")))?;
        entries.push(j);
    }
    if entries.is_empty() {
        return Err(Error::Parse("empty column".into()));
    }
    Ok(Tableau::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        assert!(parse_eval_point("0/5").is_err());
        assert!(parse_eval_point("1/0").is_err());
        assert_eq!(parse_eval_point("3/2").unwrap(), Rational::new(3.into(), 2.into()));
        assert!(parse_affine_type("c1:1").is_err());
        assert!(parse_affine_type("a2odd-dagger:4").is_ok());
        assert_eq!(parse_tableau(" 1 2  -1 ").unwrap().entries, vec![1, 2, -1]);
        assert!(parse_tableau("1 x").is_err());
        assert!(parse_scalar_json(r#"{"num":[[0,"1"]],"den":[]}"#).is_err());
    }
}
