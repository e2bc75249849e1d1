//! Dynkin data of the four affine types, the index set `J` of the vector
//! representation, classical weights and the Weyl dimension formula.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{quantum_integer, Rational, RationalScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineKind {
    /// `A^(2)_{2n}`, classical part `B_n`.
    A2Even,
    /// `A^(2)_{2n-1}` with the 0-node attached to node 2, classical part `C_n`.
    A2Odd,
    /// `A^(2)_{2n-1}` with the branch at the far end, classical part `D_n`.
    A2OddDagger,
    /// `C^(1)_n`, classical part `C_n`.
    C1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalFamily {
    B,
    C,
    D,
}

impl AffineKind {
    pub const ALL: [AffineKind; 4] = [Self::A2Even, Self::A2Odd, Self::A2OddDagger, Self::C1];

    pub fn min_rank(self) -> usize {
        match self {
            Self::A2Even | Self::C1 => 2,
            Self::A2Odd | Self::A2OddDagger => 3,
        }
    }

    pub fn classical(self) -> ClassicalFamily {
        match self {
            Self::A2Even => ClassicalFamily::B,
            Self::A2Odd | Self::C1 => ClassicalFamily::C,
            Self::A2OddDagger => ClassicalFamily::D,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            Self::A2Even => "a2even",
            Self::A2Odd => "a2odd",
            Self::A2OddDagger => "a2odd-dagger",
            Self::C1 => "c1",
        }
    }
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A2Even => "A2_even",
            Self::A2Odd => "A2_odd",
            Self::A2OddDagger => "A2_odd_dagger",
            Self::C1 => "C1",
        })
    }
}

impl FromStr for AffineKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let key: String = text.trim().to_ascii_lowercase().chars().filter(|c| !matches!(c, '-' | '_')).collect();
        match key.as_str() {
            "a2even" => Ok(Self::A2Even),
            "a2odd" => Ok(Self::A2Odd),
            "a2odddagger" => Ok(Self::A2OddDagger),
            "c1" => Ok(Self::C1),
            _ => Err(Error::Parse(format!("unknown affine type {text:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineType {
    pub kind: AffineKind,
    pub n: usize,
}

/// Largest rank accepted anywhere; the index set grows linearly but tensor
/// powers grow exponentially, so this is a sanity bound only.
pub const MAX_RANK: usize = 32;

impl AffineType {
    pub fn new(kind: AffineKind, n: usize) -> Result<Self> {
        if n < kind.min_rank() || n > MAX_RANK {
            return Err(Error::InvalidRank { kind: kind.to_string(), n });
        }
        Ok(Self { kind, n })
    }
}

impl FromStr for AffineType {
    type Err = Error;

    /// Parses `kind:n`, e.g. `a2odd-dagger:4`.
    fn from_str(text: &str) -> Result<Self> {
        let (kind, n) = text.split_once(':').ok_or_else(|| Error::Parse(format!("expected kind:n, got {text:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad rank {n:?}")))?;
        Self::new(kind.parse()?, n)
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.kind, self.n)
    }
}

/// A classical weight in the orthogonal basis `eps_1..eps_n`.
///
/// Only integral weights occur as weights of vectors; half-integral vectors
/// such as `rho` for `B_n` are handled inside [`weyl_dimension`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalWeight(pub Vec<i32>);

impl ClassicalWeight {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `(self | other)` with `(eps_i | eps_j) = delta_ij`.
    pub fn dot(&self, other: &Self) -> i32 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Everything that depends only on the affine type and rank.
#[derive(Clone, Debug)]
pub struct AffineDatum {
    pub ty: AffineType,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    /// Classical parts of `alpha_0..alpha_n`; `alpha_0` also carries `delta`.
    pub simple_roots: Vec<ClassicalWeight>,
    /// `(eps_i | eps_i)` in the normalization `(theta|theta) = 2 a_0^vee`.
    pub bilinear_scale: Rational,
    /// The index set in increasing order.
    pub index_set: Vec<i32>,
    pub xi: RationalScalar,
    pub xi_prime: RationalScalar,
    pub big_n: i32,
    /// `d_i` with `q_i = s^{d_i}`, equal to `(alpha_i|alpha_i)` for
    /// `(eps|eps) = 1`.
    pub root_length: Vec<i32>,
}

impl AffineDatum {
    pub fn new(ty: AffineType) -> Self {
        let AffineType { kind, n } = ty;
        let ni = n as i32;
        let e = |i: usize| {
            let mut v = vec![0; n];
            v[i - 1] = 1;
            ClassicalWeight(v)
        };
        let mut roots = Vec::with_capacity(n + 1);
        roots.push(match kind {
            AffineKind::A2Odd => ClassicalWeight::zero(n).sub(&e(1)).sub(&e(2)),
            _ => ClassicalWeight::zero(n).sub(&e(1)).sub(&e(1)),
        });
        for i in 1..n {
            roots.push(e(i).sub(&e(i + 1)));
        }
        roots.push(match kind {
            AffineKind::A2Even => e(n),
            AffineKind::A2Odd | AffineKind::C1 => e(n).add(&e(n)),
            AffineKind::A2OddDagger => e(n - 1).add(&e(n)),
        });
        let root_length = roots.iter().map(|a| a.dot(a)).collect();

        let (marks, comarks): (Vec<i64>, Vec<i64>) = match kind {
            AffineKind::A2Even => {
                let marks = (0..=n).map(|i| if i == 0 { 1 } else { 2 }).collect();
                let comarks = (0..=n).map(|i| if i == n { 1 } else { 2 }).collect();
                (marks, comarks)
            }
            AffineKind::A2Odd => {
                let marks = (0..=n).map(|i| if i <= 1 || i == n { 1 } else { 2 }).collect();
                let comarks = (0..=n).map(|i| if i <= 1 { 1 } else { 2 }).collect();
                (marks, comarks)
            }
            AffineKind::A2OddDagger => {
                let marks = (0..=n).map(|i| if i == 0 || i + 1 >= n { 1 } else { 2 }).collect();
                let comarks = (0..=n).map(|i| if i + 1 >= n { 1 } else { 2 }).collect();
                (marks, comarks)
            }
            AffineKind::C1 => {
                let marks = (0..=n).map(|i| if i == 0 || i == n { 1 } else { 2 }).collect();
                (marks, vec![1; n + 1])
            }
        };

        let bilinear_scale = match kind {
            AffineKind::C1 => Rational::new(1.into(), 2.into()),
            _ => Rational::one(),
        };

        let mut index_set: Vec<i32> = (1..=ni).collect();
        if kind == AffineKind::A2Even {
            index_set.push(0);
        }
        index_set.extend((1..=ni).rev().map(|j| -j));

        let (big_n, xi) = match kind {
            AffineKind::A2Even => (2 * ni + 1, -RationalScalar::q_pow(2 * ni + 1)),
            AffineKind::A2Odd => (2 * ni + 2, -RationalScalar::q_pow(2 * ni)),
            AffineKind::A2OddDagger => (2 * ni, -RationalScalar::q_pow(2 * ni)),
            AffineKind::C1 => (2 * ni + 2, RationalScalar::q_pow(2 * ni + 2)),
        };
        let xi_prime = match kind {
            AffineKind::A2Odd => RationalScalar::q_pow(2 * ni + 2),
            _ => xi.clone(),
        };

        Self { ty, marks, comarks, simple_roots: roots, bilinear_scale, index_set, xi, xi_prime, big_n, root_length }
    }

    pub fn kind(&self) -> AffineKind {
        self.ty.kind
    }

    pub fn n(&self) -> usize {
        self.ty.n
    }

    pub fn dim(&self) -> usize {
        self.index_set.len()
    }

    pub fn has_zero_index(&self) -> bool {
        self.kind() == AffineKind::A2Even
    }

    /// Position of `j` in the order `1 < 2 < ... < n (< 0) < -n < ... < -1`.
    pub fn position(&self, j: i32) -> usize {
        let n = self.n() as i32;
        debug_assert!(j.abs() <= n && (j != 0 || self.has_zero_index()));
        if j > 0 {
            (j - 1) as usize
        } else if j == 0 {
            self.n()
        } else {
            (self.dim() as i32 + j) as usize
        }
    }

    pub fn index_at(&self, pos: usize) -> i32 {
        self.index_set[pos]
    }

    pub fn contains_index(&self, j: i32) -> bool {
        j.unsigned_abs() as usize <= self.n() && (j != 0 || self.has_zero_index())
    }

    /// `i ≺ j`.
    pub fn precedes(&self, i: i32, j: i32) -> bool {
        self.position(i) < self.position(j)
    }

    /// `wt(v_j) = ±eps_|j|`, zero for `j = 0`.
    pub fn weight_of_index(&self, j: i32) -> ClassicalWeight {
        let mut v = vec![0; self.n()];
        if j != 0 {
            v[j.unsigned_abs() as usize - 1] = j.signum();
        }
        ClassicalWeight(v)
    }

    /// `eps_j` from the R-matrix coefficients.
    pub fn eps(&self, j: i32) -> RationalScalar {
        if self.kind() == AffineKind::A2OddDagger || j > 0 {
            RationalScalar::one()
        } else if j == 0 {
            quantum_integer(2, self.root_length[self.n()])
        } else {
            -RationalScalar::one()
        }
    }

    /// `j̄`.
    pub fn bar(&self, j: i32) -> i32 {
        match j {
            j if j > 0 => j,
            0 => self.n() as i32 + 1,
            j => j + self.big_n,
        }
    }

    /// `<h_i, mu> = 2 (mu|alpha_i) / (alpha_i|alpha_i)`.
    pub fn coroot_pairing(&self, mu: &ClassicalWeight, i: usize) -> Rational {
        let a = &self.simple_roots[i];
        Rational::new((2 * mu.dot(a)).into(), a.dot(a).into())
    }

    /// Integer-valued pairing; panics on a non-integral value, which cannot
    /// occur for weights of the vector representation and its powers.
    pub fn coroot_pairing_int(&self, mu: &ClassicalWeight, i: usize) -> i32 {
        let a = &self.simple_roots[i];
        let num = 2 * mu.dot(a);
        let den = a.dot(a);
        assert!(num % den == 0, "non-integral pairing");
        num / den
    }

    /// Exponent `m` with `t_i = s^m` on a vector of weight `mu`.
    pub fn t_exponent(&self, mu: &ClassicalWeight, i: usize) -> i32 {
        2 * mu.dot(&self.simple_roots[i])
    }

    /// `(theta|theta)` for `theta = delta - alpha_0`, in the stored normalization.
    pub fn theta_norm(&self) -> Rational {
        let theta = &self.simple_roots[0];
        Rational::from_integer(theta.dot(theta).into()) * &self.bilinear_scale
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.comarks.iter().sum()
    }

    /// `omega_k = eps_1 + ... + eps_k`.
    pub fn fundamental_weight(&self, k: usize) -> ClassicalWeight {
        fundamental_weight(self.n(), k)
    }
}

pub fn fundamental_weight(n: usize, k: usize) -> ClassicalWeight {
    ClassicalWeight((0..n).map(|i| i32::from(i < k)).collect())
}

/// `eps_1 + ... + eps_{n-1} - eps_n`.
pub fn fundamental_weight_bar(n: usize) -> ClassicalWeight {
    let mut w = fundamental_weight(n, n);
    w.0[n - 1] = -1;
    w
}

/// Positive roots of the classical family in `eps` coordinates.
pub fn positive_roots(family: ClassicalFamily, n: usize) -> Vec<ClassicalWeight> {
    let unit = |i: usize, c: i32| {
        let mut v = vec![0; n];
        v[i] = c;
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut minus = unit(i, 1);
            minus[j] = -1;
            let mut plus = unit(i, 1);
            plus[j] = 1;
            out.push(ClassicalWeight(minus));
            out.push(ClassicalWeight(plus));
        }
        match family {
            ClassicalFamily::B => out.push(ClassicalWeight(unit(i, 1))),
            ClassicalFamily::C => out.push(ClassicalWeight(unit(i, 2))),
            ClassicalFamily::D => {}
        }
    }
    out
}

fn classical_simple_roots(family: ClassicalFamily, n: usize) -> Vec<ClassicalWeight> {
    let mut out: Vec<ClassicalWeight> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            ClassicalWeight(v)
        })
        .collect();
    let mut last = vec![0; n];
    match family {
        ClassicalFamily::B => last[n - 1] = 1,
        ClassicalFamily::C => last[n - 1] = 2,
        ClassicalFamily::D => {
            last[n - 2] = 1;
            last[n - 1] = 1;
        }
    }
    out.push(ClassicalWeight(last));
    out
}

pub fn is_dominant(family: ClassicalFamily, lambda: &ClassicalWeight) -> bool {
    classical_simple_roots(family, lambda.0.len()).iter().all(|a| {
        let num = 2 * lambda.dot(a);
        let den = a.dot(a);
        num >= 0 && num % den == 0
    })
}

/// Dimension of the irreducible module with highest weight `lambda`.
pub fn weyl_dimension(family: ClassicalFamily, lambda: &ClassicalWeight) -> Result<u64> {
    let n = lambda.0.len();
    if n == 0 || (family == ClassicalFamily::D && n < 2) {
        return Err(Error::Unsupported(format!("rank {n} for family {family:?}")));
    }
    if !is_dominant(family, lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    // 2*rho keeps everything integral.
    let two_rho: Vec<i64> = (0..n)
        .map(|i| {
            let m = (n - i) as i64;
            match family {
                ClassicalFamily::B => 2 * m - 1,
                ClassicalFamily::C => 2 * m,
                ClassicalFamily::D => 2 * m - 2,
            }
        })
        .collect();
    let mut num = Rational::one();
    for alpha in positive_roots(family, n) {
        let dot = |v: &[i64]| -> i64 { v.iter().zip(&alpha.0).map(|(a, b)| a * i64::from(*b)).sum() };
        let lam2: Vec<i64> = lambda.0.iter().map(|&x| 2 * i64::from(x)).collect();
        let shifted: Vec<i64> = lam2.iter().zip(&two_rho).map(|(a, b)| a + b).collect();
        num *= Rational::new(dot(&shifted).into(), dot(&two_rho).into());
    }
    if !num.is_integer() || num <= Rational::zero() {
        return Err(Error::Unsupported(format!("non-integral dimension {num}")));
    }
    num.to_integer().try_into().map_err(|_| Error::Unsupported("dimension overflow".into()))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(kind: AffineKind, n: usize) -> AffineDatum {
        AffineDatum::new(AffineType::new(kind, n).unwrap())
    }

    #[test]
    fn rank_bounds() {
        assert!(AffineType::new(AffineKind::A2Even, 1).is_err());
        assert!(AffineType::new(AffineKind::A2Odd, 2).is_err());
        assert!(AffineType::new(AffineKind::A2OddDagger, 3).is_ok());
        assert!(AffineType::new(AffineKind::C1, 2).is_ok());
        assert_eq!("a2odd-dagger:4".parse::<AffineType>().unwrap().n, 4);
        assert!("c1:x".parse::<AffineType>().is_err());
    }

    #[test]
    fn constants_table() {
        let c1 = datum(AffineKind::C1, 2);
        assert_eq!(c1.xi, RationalScalar::s_pow(12));
        let b = datum(AffineKind::A2Even, 2);
        assert_eq!(b.index_set, vec![1, 2, 0, -2, -1]);
        assert_eq!(b.big_n, 5);
        assert_eq!(b.xi, -RationalScalar::q_pow(5));
        let d = datum(AffineKind::A2OddDagger, 3);
        assert!(d.index_set.iter().all(|&j| d.eps(j).is_one()));
        let a = datum(AffineKind::A2Odd, 3);
        assert_eq!(a.xi_prime, RationalScalar::q_pow(8));
        assert_eq!(b.eps(0), RationalScalar::s_pow(1) + RationalScalar::s_pow(-1));
        assert_eq!(b.bar(0), 3);
        assert_eq!(b.bar(-1), 4);
    }

    #[test]
    fn order_and_positions() {
        for kind in AffineKind::ALL {
            let d = datum(kind, 3);
            for (p, &j) in d.index_set.iter().enumerate() {
                assert_eq!(d.position(j), p);
            }
        }
    }

    #[test]
    fn null_root_and_center_have_no_classical_part() {
        for kind in AffineKind::ALL {
            for n in kind.min_rank()..=4 {
                let d = datum(kind, n);
                let mut delta = vec![0i64; n];
                let mut center = vec![Rational::zero(); n];
                for (i, a) in d.simple_roots.iter().enumerate() {
                    let len = Rational::from_integer(a.dot(a).into());
                    for (m, &x) in a.0.iter().enumerate() {
                        delta[m] += d.marks[i] * i64::from(x);
                        center[m] += Rational::from_integer((2 * d.comarks[i] * i64::from(x)).into()) / &len;
                    }
                }
                assert!(delta.iter().all(|&x| x == 0), "{kind} {n}");
                assert!(center.iter().all(Zero::is_zero), "{kind} {n}");
                let expect = Rational::from_integer((2 * d.comarks[0]).into());
                assert_eq!(d.theta_norm(), expect, "{kind} {n}");
            }
        }
    }

    #[test]
    fn pairings() {
        let d = datum(AffineKind::A2Odd, 3);
        assert_eq!(d.coroot_pairing(&d.weight_of_index(3), 3), Rational::one());
        assert_eq!(d.coroot_pairing(&d.weight_of_index(1), 1), Rational::one());
        for k in 1..=3 {
            for i in 1..=3 {
                let expect = Rational::from_integer(i64::from(i == k).into());
                assert_eq!(d.coroot_pairing(&d.fundamental_weight(k), i), expect);
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension(ClassicalFamily::B, &fundamental_weight(2, 2)).unwrap(), 10);
        assert_eq!(weyl_dimension(ClassicalFamily::D, &fundamental_weight(4, 4)).unwrap(), 35);
        assert_eq!(weyl_dimension(ClassicalFamily::D, &fundamental_weight_bar(4)).unwrap(), 35);
        assert_eq!(weyl_dimension(ClassicalFamily::C, &ClassicalWeight::zero(3)).unwrap(), 1);
        assert_eq!(weyl_dimension(ClassicalFamily::B, &ClassicalWeight(vec![1, 0])).unwrap(), 5);
        assert!(matches!(weyl_dimension(ClassicalFamily::C, &ClassicalWeight(vec![0, 1])), Err(Error::NotDominant(_))));
        for n in 2..=4u64 {
            let w1 = fundamental_weight(n as usize, 1);
            assert_eq!(weyl_dimension(ClassicalFamily::B, &w1).unwrap(), 2 * n + 1);
            assert_eq!(weyl_dimension(ClassicalFamily::C, &w1).unwrap(), 2 * n);
            if n >= 3 {
                assert_eq!(weyl_dimension(ClassicalFamily::D, &w1).unwrap(), 2 * n);
            }
            for k in 1..=n {
                let dim = weyl_dimension(ClassicalFamily::C, &fundamental_weight(n as usize, k as usize)).unwrap();
                let expect = binomial(2 * n, k) - if k >= 2 { binomial(2 * n, k - 2) } else { 0 };
                assert_eq!(dim, expect);
                let total: u64 = (0..=k / 2)
                    .map(|l| {
                        weyl_dimension(ClassicalFamily::C, &fundamental_weight(n as usize, (k - 2 * l) as usize)).unwrap()
                    })
                    .sum();
                assert_eq!(total, binomial(2 * n, k));
            }
        }
    }

    #[test]
    fn weyl_dimension_b2_by_direct_product() {
        // B2 roots: e1-e2, e1+e2, e1, e2; rho = (3/2, 1/2); omega_2 = (1,1).
        let rho = [Rational::new(3.into(), 2.into()), Rational::new(1.into(), 2.into())];
        let lam = [Rational::one(), Rational::one()];
        let roots = [[1, -1], [1, 1], [1, 0], [0, 1]];
        let mut prod = Rational::one();
        for a in roots {
            let f = |v: &[Rational; 2]| &v[0] * Rational::from_integer(a[0].into()) + &v[1] * Rational::from_integer(a[1].into());
            let shifted = [&lam[0] + &rho[0], &lam[1] + &rho[1]];
            prod *= f(&shifted) / f(&rho);
        }
        assert_eq!(prod, Rational::from_integer(10.into()));
    }
}
