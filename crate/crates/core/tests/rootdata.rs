use num::ToPrimitive;
use qwedge_core::rootdata::{
    binomial, fundamental_weight, fundamental_weight_bar, positive_roots, weyl_dimension, AffineDatum, AffineKind, AffineType,
    ClassicalFamily, ClassicalWeight,
};
use qwedge_core::scalar::Rational;

fn datum(kind: AffineKind, n: usize) -> AffineDatum {
    AffineDatum::new(AffineType::new(kind, n).unwrap())
}

/// Positive roots generated from scratch: every `±e_i ± e_j`, `±e_i`,
/// `±2e_i` allowed in the family whose first nonzero coordinate is positive.
fn roots_oracle(family: ClassicalFamily, n: usize) -> Vec<Vec<i32>> {
    let mut all = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = a;
                v[j] = b;
                all.push(v);
            }
        }
        for c in [1, -1, 2, -2] {
            let keep = match family {
                ClassicalFamily::B => c == 1 || c == -1,
                ClassicalFamily::C => c == 2 || c == -2,
                ClassicalFamily::D => false,
            };
            if keep {
                let mut v = vec![0; n];
                v[i] = c;
                all.push(v);
            }
        }
    }
    all.retain(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0));
    all
}

/// Weyl's product with `rho` taken as half the sum of the oracle roots.
fn dimension_oracle(family: ClassicalFamily, lambda: &[i32]) -> u64 {
    let n = lambda.len();
    let roots = roots_oracle(family, n);
    let mut two_rho = vec![0i64; n];
    for r in &roots {
        for (t, x) in two_rho.iter_mut().zip(r) {
            *t += *x as i64;
        }
    }
    let mut prod = Rational::from_integer(1.into());
    for r in &roots {
        let dot = |v: &[i64]| v.iter().zip(r).map(|(a, b)| a * *b as i64).sum::<i64>();
        let shifted: Vec<i64> = lambda.iter().zip(&two_rho).map(|(l, t)| 2 * *l as i64 + t).collect();
        prod *= Rational::new(dot(&shifted).into(), dot(&two_rho).into());
    }
    prod.to_integer().to_u64().unwrap()
}

#[test]
fn positive_roots_match_the_oracle() {
    for n in 2..=5 {
        for fam in [ClassicalFamily::B, ClassicalFamily::C, ClassicalFamily::D] {
            let mut ours: Vec<Vec<i32>> = positive_roots(fam, n).into_iter().map(|r| r.0).collect();
            let mut oracle = roots_oracle(fam, n);
            ours.sort();
            oracle.sort();
            assert_eq!(ours, oracle, "{fam:?} n={n}");
        }
    }
}

#[test]
fn dimensions_of_fundamental_weights() {
    for n in 2..=5usize {
        let nu = n as u64;
        for k in 0..=n {
            let w = fundamental_weight(n, k);
            let b = weyl_dimension(ClassicalFamily::B, &w).unwrap();
            let c = weyl_dimension(ClassicalFamily::C, &w).unwrap();
            assert_eq!(b, dimension_oracle(ClassicalFamily::B, &w.0));
            assert_eq!(c, dimension_oracle(ClassicalFamily::C, &w.0));
            // Exterior powers of the natural modules.
            assert_eq!(b, binomial(2 * nu + 1, k as u64), "B{n} omega_{k}");
            let lower = if k >= 2 { binomial(2 * nu, k as u64 - 2) } else { 0 };
            assert_eq!(c, binomial(2 * nu, k as u64) - lower, "C{n} omega_{k}");
            if n >= 3 {
                let d = weyl_dimension(ClassicalFamily::D, &w).unwrap();
                assert_eq!(d, dimension_oracle(ClassicalFamily::D, &w.0));
                let expect = if k == n { binomial(2 * nu, nu) / 2 } else { binomial(2 * nu, k as u64) };
                assert_eq!(d, expect, "D{n} omega_{k}");
            }
        }
        if n >= 3 {
            let bar = fundamental_weight_bar(n);
            assert_eq!(weyl_dimension(ClassicalFamily::D, &bar).unwrap(), binomial(2 * nu, nu) / 2);
        }
    }
}

#[test]
fn tabulated_dimensions() {
    assert_eq!(dimension_oracle(ClassicalFamily::B, &[1, 1]), 10);
    assert_eq!(dimension_oracle(ClassicalFamily::D, &[1, 1, 1, 1]), 35);
    assert_eq!(dimension_oracle(ClassicalFamily::D, &[1, 1, 1, -1]), 35);
    assert_eq!(weyl_dimension(ClassicalFamily::D, &ClassicalWeight(vec![1, 1, 1, -1])).unwrap(), 35);
}

#[test]
fn a2odd_components_fill_the_exterior_power() {
    for n in 3..=5usize {
        for k in 1..=n {
            let total: u64 = (0..=k / 2).map(|l| weyl_dimension(ClassicalFamily::C, &fundamental_weight(n, k - 2 * l)).unwrap()).sum();
            assert_eq!(total, binomial(2 * n as u64, k as u64));
        }
    }
}

#[test]
fn theta_has_the_dual_normalization() {
    for kind in AffineKind::ALL {
        for n in kind.min_rank()..=4 {
            let d = datum(kind, n);
            let two_a0 = Rational::from_integer((2 * d.comarks[0]).into());
            assert_eq!(d.theta_norm(), two_a0, "{kind} n={n}");
        }
    }
}

#[test]
fn index_set_order_and_bar() {
    for kind in AffineKind::ALL {
        let n = kind.min_rank();
        let d = datum(kind, n);
        let ni = n as i32;
        let mut expect: Vec<i32> = (1..=ni).collect();
        if kind == AffineKind::A2Even {
            expect.push(0);
        }
        expect.extend((1..=ni).rev().map(|j| -j));
        assert_eq!(d.index_set, expect);
        for &j in &d.index_set {
            let bar = d.bar(j);
            match j {
                0 => assert_eq!(bar, ni + 1),
                j if j > 0 => assert_eq!(bar, j),
                j => assert_eq!(bar, j + d.big_n),
            }
        }
    }
}

#[test]
fn coroot_pairings() {
    let d = datum(AffineKind::A2Odd, 3);
    let eps_n = ClassicalWeight(vec![0, 0, 1]);
    assert_eq!(d.coroot_pairing(&eps_n, 3), Rational::from_integer(1.into()));
    // eps_1 + ... + eps_k is fundamental away from the spin nodes; there
    // omega_n = 2 Lambda_n (B, D) and omega_{n-1} = Lambda_{n-1} + Lambda_n (D).
    for kind in AffineKind::ALL {
        let n = 4;
        let d = datum(kind, n);
        for k in 1..=n {
            for i in 1..=n {
                let expect: i64 = match (kind.classical(), k, i) {
                    (ClassicalFamily::B, 4, 4) => 2,
                    (ClassicalFamily::D, 3, 4) => 1,
                    (ClassicalFamily::D, 4, 4) => 2,
                    (ClassicalFamily::D, 4, 3) => 0,
                    _ => i64::from(i == k),
                };
                let w = fundamental_weight(n, k);
                assert_eq!(d.coroot_pairing(&w, i), Rational::from_integer(expect.into()), "{kind} k={k} i={i}");
            }
        }
    }
}
