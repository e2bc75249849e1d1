use num::{One, Zero};
use proptest::prelude::*;
use qwedge_core::scalar::{quantum_integer, LaurentPolynomial, Rational, RationalScalar, Ring, SpectralPolynomial};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-4i32..5, -5i64..6), 1..4)
        .prop_map(|terms| LaurentPolynomial::from_terms(terms.into_iter().map(|(e, c)| (e, rat(c, 1)))))
}

fn scalar() -> impl Strategy<Value = RationalScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        let d = if d.is_zero() { LaurentPolynomial::one() } else { d };
        RationalScalar::canonicalize(n, d).unwrap()
    })
}

/// `z`-coefficients are Laurent in `s`, as for every R-matrix entry.
fn coefficients() -> impl Strategy<Value = Vec<(i32, RationalScalar)>> {
    prop::collection::vec((0i32..4, laurent().prop_map(RationalScalar::from_laurent)), 1..4)
}

fn nonzero_scalar() -> impl Strategy<Value = RationalScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

/// Evaluation by hand: numerator and denominator term by term.
fn eval_oracle(x: &RationalScalar, s: &Rational) -> Option<Rational> {
    let ev = |p: &LaurentPolynomial| {
        p.terms().fold(Rational::zero(), |acc, (e, c)| acc + c * powi(s, e))
    };
    let den = ev(x.denominator());
    (!den.is_zero()).then(|| ev(x.numerator()) / den)
}

fn powi(s: &Rational, e: i32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= s;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.minus(&a), RationalScalar::zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in nonzero_scalar()) {
        prop_assert_eq!(a.times(&b).try_div(&b).unwrap(), a.clone());
        prop_assert_eq!(b.try_div(&b).unwrap(), RationalScalar::one());
    }

    #[test]
    fn canonicalize_is_idempotent(a in scalar()) {
        let again = RationalScalar::canonicalize(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let d = a.denominator();
        prop_assert!(d.low_exp() == Some(0));
        prop_assert!(d.coeff(0).is_one());
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(a in scalar(), b in scalar(), c in nonzero_scalar()) {
        let s = rat(3, 2);
        let symbolic = a.times(&b).plus(&c).try_div(&c).unwrap();
        let (Some(ea), Some(eb), Some(ec), Some(es)) = (eval_oracle(&a, &s), eval_oracle(&b, &s), eval_oracle(&c, &s), eval_oracle(&symbolic, &s)) else {
            return Ok(());
        };
        prop_assume!(!ec.is_zero());
        prop_assert_eq!(es, (&ea * &eb + &ec) / &ec);
        prop_assert_eq!(a.eval(&s), Some(ea));
    }

    #[test]
    fn json_round_trip(a in scalar()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(RationalScalar::from_json_str(&text).unwrap(), a);
    }

    #[test]
    fn spectral_evaluation_commutes(p in coefficients(), r in coefficients(), z in nonzero_scalar()) {
        let p = SpectralPolynomial::from_terms(p);
        let r = SpectralPolynomial::from_terms(r);
        let lhs = p.times(&r).plus(&p).eval(&z).unwrap();
        let (pz, rz) = (p.eval(&z).unwrap(), r.eval(&z).unwrap());
        prop_assert_eq!(lhs, pz.times(&rz).plus(&pz));
        prop_assert!(p.minus(&p).is_zero());
    }
}

#[test]
fn quantum_integers_against_the_defining_quotient() {
    for d in [1, 2, 4] {
        let diff = RationalScalar::s_pow(d).minus(&RationalScalar::s_pow(-d));
        for k in 0..=12u32 {
            let lhs = quantum_integer(k, d).times(&diff);
            let rhs = RationalScalar::s_pow(d * k as i32).minus(&RationalScalar::s_pow(-d * k as i32));
            assert_eq!(lhs, rhs, "k={k} d={d}");
        }
    }
    // [2] with q_n = s: s + s^-1.
    assert_eq!(quantum_integer(2, 1), RationalScalar::s_pow(1).plus(&RationalScalar::s_pow(-1)));
    // [3] with d = 2: q^2 + 1 + q^-2.
    let expect = RationalScalar::q_pow(2).plus(&RationalScalar::one()).plus(&RationalScalar::q_pow(-2));
    assert_eq!(quantum_integer(3, 2), expect);
}

#[test]
fn regularity_at_zero() {
    let q = RationalScalar::q_pow(1);
    let x = q.try_div(&RationalScalar::one().plus(&q)).unwrap();
    assert_eq!(x.order_and_value_at_zero().unwrap(), (2, Rational::zero()));
    let y = RationalScalar::one().plus(&RationalScalar::q_pow(2));
    assert_eq!(y.order_and_value_at_zero().unwrap(), (0, Rational::one()));
    let z = RationalScalar::q_pow(-1);
    assert_eq!(z.order(), Some(-2));
    assert_eq!(z.value_at_zero().unwrap_err().to_string(), "not regular at 0");
}
