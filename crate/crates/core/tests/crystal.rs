use std::collections::BTreeSet;

use qwedge_core::crystal::{
    crystal_config, crystal_of, enumerate_tableaux, label_crystal, verify_crystal_axioms, verify_operator_words, verify_zero_arrows, Tableau,
};
use qwedge_core::rootdata::{binomial, AffineDatum, AffineKind, AffineType};
use qwedge_core::wedge::{build_wedge_space, WedgeConfig};
use qwedge_core::Error;

fn datum(kind: AffineKind, n: usize) -> AffineDatum {
    AffineDatum::new(AffineType::new(kind, n).unwrap())
}

fn dim_oracle(kind: AffineKind, n: usize, k: usize) -> usize {
    let d = if kind == AffineKind::A2Even { 2 * n + 1 } else { 2 * n } as u64;
    let full = binomial(d, k as u64);
    let dim = if kind == AffineKind::C1 && k >= 2 { full - binomial(d, k as u64 - 2) } else { full };
    dim as usize
}

fn cases() -> Vec<(AffineKind, usize)> {
    vec![(AffineKind::A2Even, 2), (AffineKind::A2Even, 3), (AffineKind::C1, 2), (AffineKind::C1, 3), (AffineKind::A2OddDagger, 3)]
}

#[test]
fn tableau_counts_match_dimensions() {
    for (kind, n) in cases().into_iter().chain([(AffineKind::A2OddDagger, 4)]) {
        let d = datum(kind, n);
        for k in 1..=n {
            let t = enumerate_tableaux(&d, k);
            assert_eq!(t.len(), dim_oracle(kind, n, k), "{kind} n={n} k={k}");
            assert!(t.iter().all(|x| x.is_admissible(&d) && x.entries.len() == k));
        }
    }
}

#[test]
fn labelled_crystals_are_consistent() {
    let cfg = crystal_config();
    for (kind, n) in cases() {
        let d = datum(kind, n);
        for k in 1..=n {
            let mut data = crystal_of(&d, k, &cfg).unwrap();
            let colors: Vec<usize> = (0..=n).collect();
            let axioms = verify_crystal_axioms(&data, &colors);
            assert!(axioms.all_passed(), "{kind} n={n} k={k}: {}", axioms.summary());
            label_crystal(&mut data, &cfg).unwrap();
            let zero = verify_zero_arrows(&data);
            assert!(zero.all_passed(), "{kind} n={n} k={k}: {}", zero.summary());

            let g = &data.graph;
            assert_eq!(g.vertices.len(), dim_oracle(kind, n, k));
            let labels = g.labels.as_ref().unwrap();
            let distinct: BTreeSet<&Tableau> = labels.iter().collect();
            assert_eq!(distinct.len(), labels.len(), "labels must be a bijection");
            let all: BTreeSet<Tableau> = enumerate_tableaux(&d, k).into_iter().collect();
            assert!(labels.iter().all(|t| all.contains(t)));

            let json = g.to_json();
            assert_eq!(json["vertices"].as_array().unwrap().len(), g.vertices.len());
            assert_eq!(json["edges"].as_array().unwrap().len(), g.edges.len());
            // Every f arrow lowers the weight, so no color can revisit a vertex.
            for c in 0..=n {
                let srcs: Vec<_> = g.edges.iter().filter(|e| e.color == c).map(|e| e.src).collect();
                let set: BTreeSet<_> = srcs.iter().collect();
                assert_eq!(set.len(), srcs.len(), "color {c} is not a partial function");
            }
            let expect = if kind == AffineKind::A2OddDagger && k == n { 2 } else { 1 };
            assert_eq!(g.classical_components(), expect, "{kind} n={n} k={k}");
        }
    }
}

#[test]
fn vector_module_crystal_is_a_cycle_through_zero() {
    let cfg = crystal_config();
    let d = datum(AffineKind::C1, 2);
    let mut data = crystal_of(&d, 1, &cfg).unwrap();
    label_crystal(&mut data, &cfg).unwrap();
    let g = &data.graph;
    let labels = g.labels.as_ref().unwrap();
    let text: BTreeSet<(String, String, usize)> =
        g.edges.iter().map(|e| (labels[e.src].to_string(), labels[e.dst].to_string(), e.color)).collect();
    let expect: BTreeSet<(String, String, usize)> =
        [("1", "2", 1), ("2", "-2", 2), ("-2", "-1", 1)].iter().map(|(a, b, c)| (a.to_string(), b.to_string(), *c)).collect();
    let classical: BTreeSet<_> = text.iter().filter(|e| e.2 != 0).cloned().collect();
    assert_eq!(classical, expect);
    assert!(text.iter().any(|e| e.2 == 0));
}

#[test]
fn operator_words() {
    for (kind, n) in [(AffineKind::A2Even, 2), (AffineKind::C1, 2), (AffineKind::A2OddDagger, 3)] {
        let space = build_wedge_space(&datum(kind, n), 1, &crystal_config()).unwrap();
        let r = verify_operator_words(&space).unwrap();
        assert!(r.all_passed(), "{kind}: {}", r.summary());
    }
}

#[test]
fn unshifted_parameters_break_the_operator_words() {
    let space = build_wedge_space(&datum(AffineKind::A2Even, 2), 1, &WedgeConfig::default()).unwrap();
    assert!(!verify_operator_words(&space).unwrap().all_passed());
}

#[test]
fn a2odd_has_no_crystal_here() {
    let d = datum(AffineKind::A2Odd, 3);
    assert!(matches!(crystal_of(&d, 1, &crystal_config()), Err(Error::Unsupported(_))));
}
