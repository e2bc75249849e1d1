use qwedge_core::rootdata::{binomial, AffineDatum, AffineKind, AffineType};
use qwedge_core::scalar::Rational;
use qwedge_core::wedge::{
    build_wedge_space, expected_components, find_highest_weight_vectors, verify_decomposition, verify_w_characterization, WedgeConfig,
};
use qwedge_core::Error;

fn datum(kind: AffineKind, n: usize) -> AffineDatum {
    AffineDatum::new(AffineType::new(kind, n).unwrap())
}

/// `dim V^k` by counting: the full exterior power, except for C1 where
/// only the top component `omega_k` of `Sp_{2n}` survives.
fn dim_oracle(kind: AffineKind, n: usize, k: usize) -> u64 {
    let d = match kind {
        AffineKind::A2Even => 2 * n + 1,
        _ => 2 * n,
    } as u64;
    let full = binomial(d, k as u64);
    match kind {
        AffineKind::C1 if k >= 2 => full - binomial(d, k as u64 - 2),
        _ => full,
    }
}

fn ranks(kind: AffineKind) -> Vec<usize> {
    match kind {
        AffineKind::A2OddDagger => vec![3, 4],
        _ => (kind.min_rank()..=3).collect(),
    }
}

#[test]
fn dimensions_match_the_counting_oracle() {
    let cfg = WedgeConfig::default();
    for kind in AffineKind::ALL {
        for n in ranks(kind) {
            for k in 1..=n {
                let d = datum(kind, n);
                let space = build_wedge_space(&d, k, &cfg).unwrap();
                assert_eq!(space.dim() as u64, dim_oracle(kind, n, k), "{kind} n={n} k={k}");
                let report = verify_decomposition(&space).unwrap();
                assert!(report.all_passed(), "{kind} n={n} k={k}: {}", report.summary());
            }
        }
    }
}

#[test]
fn relation_space_is_the_complement_of_the_square() {
    let s0 = Rational::new(3.into(), 2.into());
    for kind in AffineKind::ALL {
        let n = kind.min_rank();
        let d = datum(kind, n);
        let (w, report) = verify_w_characterization(&d, &s0).unwrap();
        assert!(report.all_passed(), "{kind}: {}", report.summary());
        let dim = d.dim() as u64;
        assert_eq!(w.dim_w as u64, dim * dim - dim_oracle(kind, n, 2), "{kind}");
    }
}

#[test]
fn tabulated_relation_dimensions() {
    let s0 = Rational::new(3.into(), 2.into());
    for (kind, n, expect) in [(AffineKind::C1, 2, 11), (AffineKind::A2Odd, 3, 21), (AffineKind::A2Even, 2, 15)] {
        let (w, _) = verify_w_characterization(&datum(kind, n), &s0).unwrap();
        assert_eq!(w.dim_w, expect, "{kind} n={n}");
    }
}

#[test]
fn component_counts() {
    let cfg = WedgeConfig::default();
    for n in [3, 4] {
        for k in 1..=n {
            let space = build_wedge_space(&datum(AffineKind::A2Odd, n), k, &cfg).unwrap();
            assert_eq!(expected_components(&space).unwrap().len(), k / 2 + 1, "A2_odd n={n} k={k}");
            assert_eq!(find_highest_weight_vectors(&space).len(), k / 2 + 1, "A2_odd n={n} k={k}");
        }
        let space = build_wedge_space(&datum(AffineKind::A2OddDagger, n), n, &cfg).unwrap();
        assert_eq!(find_highest_weight_vectors(&space).len(), 2, "dagger n={n}");
    }
}

#[test]
fn cap_is_enforced_before_any_work() {
    let cfg = WedgeConfig { cap: 100, ..WedgeConfig::default() };
    let d = datum(AffineKind::A2Even, 3);
    assert!(build_wedge_space(&d, 2, &cfg).is_ok());
    assert!(matches!(build_wedge_space(&d, 3, &cfg), Err(Error::ResourceCap { tuples: 343, cap: 100 })));
}

#[test]
fn action_and_well_definedness() {
    let cfg = WedgeConfig::default();
    for kind in AffineKind::ALL {
        let space = build_wedge_space(&datum(kind, kind.min_rank()), 2, &cfg).unwrap();
        let r = space.check_well_defined();
        assert!(r.all_passed(), "{kind}: {}", r.summary());
        let r = space.check_action_relations();
        assert!(r.all_passed(), "{kind}: {}", r.summary());
    }
}
