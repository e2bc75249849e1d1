//! The vector representation `V` and the action of `U'_q` on tensor powers
//! through the lower coproduct, with one spectral parameter per factor.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::report::Report;
use crate::rootdata::{AffineDatum, AffineKind, ClassicalWeight};
use crate::scalar::{quantum_integer, Field, Rational, RationalScalar, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    T(usize),
    TInv(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Self::E(i) | Self::F(i) | Self::T(i) | Self::TInv(i) => i,
        }
    }

    /// Every `e_i, f_i, t_i` for `i = 0..=n`.
    pub fn all(n: usize) -> Vec<Generator> {
        (0..=n).flat_map(|i| [Self::E(i), Self::F(i), Self::T(i)]).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::E(i) => write!(f, "e{i}"),
            Self::F(i) => write!(f, "f{i}"),
            Self::T(i) => write!(f, "t{i}"),
            Self::TInv(i) => write!(f, "t{i}^-1"),
        }
    }
}

/// Matrices of `e_i, f_i, t_i, t_i^{-1}` on some module, indexed by `i`.
#[derive(Clone, Debug)]
pub struct GeneratorMatrices<F> {
    pub e: Vec<SparseMatrix<F>>,
    pub f: Vec<SparseMatrix<F>>,
    pub t: Vec<SparseMatrix<F>>,
    pub t_inv: Vec<SparseMatrix<F>>,
}

impl<F: Ring> GeneratorMatrices<F> {
    pub fn get(&self, g: Generator) -> &SparseMatrix<F> {
        match g {
            Generator::E(i) => &self.e[i],
            Generator::F(i) => &self.f[i],
            Generator::T(i) => &self.t[i],
            Generator::TInv(i) => &self.t_inv[i],
        }
    }
}

/// The vector representation over a field `F` (symbolic `Q(s)` or a
/// specialization at a rational value of `s`). Matrices are indexed by
/// positions in the ordered index set.
#[derive(Clone, Debug)]
pub struct Representation<F> {
    pub datum: AffineDatum,
    pub mats: GeneratorMatrices<F>,
    /// `t_exp[i][p]`: `t_i v = s^{t_exp} v` on the basis vector at position `p`.
    pub t_exp: Vec<Vec<i32>>,
    /// `q_i = s^{d_i}` as elements of `F`.
    pub q_i: Vec<F>,
    pub weights: Vec<ClassicalWeight>,
    e_cols: Vec<Vec<Vec<(usize, F)>>>,
    f_cols: Vec<Vec<Vec<(usize, F)>>>,
}

fn columns<F: Ring>(m: &SparseMatrix<F>) -> Vec<Vec<(usize, F)>> {
    let mut cols = vec![Vec::new(); m.dim()];
    for (r, c, x) in m.triplets() {
        cols[c].push((r, x.clone()));
    }
    cols
}

/// Builds the vector representation over `Q(s)`.
pub fn build_rep(datum: &AffineDatum) -> Representation<RationalScalar> {
    let n = datum.n();
    let ni = n as i32;
    let dim = datum.dim();
    let one = RationalScalar::one();
    let unit = |a: i32, b: i32| (datum.position(a), datum.position(b), one.clone());
    let two_n = quantum_integer(2, datum.root_length[n]);

    let mut e = Vec::with_capacity(n + 1);
    e.push(match datum.kind() {
        AffineKind::A2Odd => SparseMatrix::from_triplets(dim, [unit(-1, 2), unit(-2, 1)]),
        _ => SparseMatrix::from_triplets(dim, [unit(-1, 1)]),
    });
    for i in 1..ni {
        e.push(SparseMatrix::from_triplets(dim, [unit(i, i + 1), unit(-i - 1, -i)]));
    }
    e.push(match datum.kind() {
        AffineKind::A2Even => SparseMatrix::from_triplets(
            dim,
            [(datum.position(ni), datum.position(0), two_n.clone()), unit(0, -ni)],
        ),
        AffineKind::A2Odd | AffineKind::C1 => SparseMatrix::from_triplets(dim, [unit(ni, -ni)]),
        AffineKind::A2OddDagger => SparseMatrix::from_triplets(dim, [unit(ni - 1, -ni), unit(ni, -ni + 1)]),
    });
    let mut f: Vec<SparseMatrix<RationalScalar>> = e.iter().map(SparseMatrix::transpose).collect();
    if datum.kind() == AffineKind::A2Even {
        f[n] = SparseMatrix::from_triplets(dim, [unit(0, ni), (datum.position(-ni), datum.position(0), two_n)]);
    }

    let weights: Vec<ClassicalWeight> = datum.index_set.iter().map(|&j| datum.weight_of_index(j)).collect();
    let t_exp: Vec<Vec<i32>> =
        (0..=n).map(|i| weights.iter().map(|w| datum.t_exponent(w, i)).collect()).collect();
    let t = t_exp.iter().map(|row| SparseMatrix::diagonal(row.iter().map(|&x| RationalScalar::s_pow(x)).collect())).collect();
    let t_inv =
        t_exp.iter().map(|row| SparseMatrix::diagonal(row.iter().map(|&x| RationalScalar::s_pow(-x)).collect())).collect();
    let q_i = datum.root_length.iter().map(|&d| RationalScalar::s_pow(d)).collect();
    Representation::assemble(datum.clone(), GeneratorMatrices { e, f, t, t_inv }, t_exp, q_i, weights)
}

impl<F: Field> Representation<F> {
    fn assemble(
        datum: AffineDatum,
        mats: GeneratorMatrices<F>,
        t_exp: Vec<Vec<i32>>,
        q_i: Vec<F>,
        weights: Vec<ClassicalWeight>,
    ) -> Self {
        let e_cols = mats.e.iter().map(columns).collect();
        let f_cols = mats.f.iter().map(columns).collect();
        Self { datum, mats, t_exp, q_i, weights, e_cols, f_cols }
    }

    /// Converts every scalar with `map`.
    pub fn map<G: Field>(&self, map: impl Fn(&F) -> G + Copy) -> Representation<G> {
        let mm = |v: &Vec<SparseMatrix<F>>| v.iter().map(|m| m.map(map)).collect::<Vec<_>>();
        let mats = GeneratorMatrices { e: mm(&self.mats.e), f: mm(&self.mats.f), t: mm(&self.mats.t), t_inv: mm(&self.mats.t_inv) };
        Representation::assemble(
            self.datum.clone(),
            mats,
            self.t_exp.clone(),
            self.q_i.iter().map(map).collect(),
            self.weights.clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `t_i` (or its inverse) on position `p`, as an element of `F`.
    fn t_value(&self, i: usize, p: usize, inverse: bool) -> F {
        let m = if inverse { &self.mats.t_inv[i] } else { &self.mats.t[i] };
        m.get(p, p)
    }

    /// `[m]_i!` in `F`.
    pub fn quantum_factorial(&self, i: usize, m: u32) -> F {
        let q = &self.q_i[i];
        let q_inv = q.recip();
        let mut acc = F::one();
        for k in 1..=m {
            // [k]_i = sum_{l=0}^{k-1} q_i^{k-1-2l}
            let mut term = pow(q, &q_inv, k as i32 - 1);
            let step = q_inv.times(&q_inv);
            let mut sum = F::zero();
            for _ in 0..k {
                sum.add_assign_ref(&term);
                term = term.times(&step);
            }
            acc = acc.times(&sum);
        }
        acc
    }

    /// Applies a generator to the basis tensor at `positions`, calling `out`
    /// once per resulting basis tensor.
    pub fn act_on_positions(
        &self,
        g: Generator,
        positions: &[usize],
        params: &SpectralParams<F>,
        mut out: impl FnMut(Vec<usize>, F),
    ) {
        let k = positions.len();
        match g {
            Generator::T(i) | Generator::TInv(i) => {
                let inv = matches!(g, Generator::TInv(_));
                let mut c = F::one();
                for &p in positions {
                    c = c.times(&self.t_value(i, p, inv));
                }
                out(positions.to_vec(), c);
            }
            Generator::E(i) => {
                // e acts on slot j; t_i^{-1} on every later slot.
                let mut tail = vec![F::one(); k + 1];
                for j in (0..k).rev() {
                    tail[j] = tail[j + 1].times(&self.t_value(i, positions[j], true));
                }
                for j in 0..k {
                    let col = &self.e_cols[i][positions[j]];
                    if col.is_empty() {
                        continue;
                    }
                    let mut c = tail[j + 1].clone();
                    if i == 0 {
                        c = c.times(&params.z[j]);
                    }
                    for (row, x) in col {
                        let mut next = positions.to_vec();
                        next[j] = *row;
                        out(next, c.times(x));
                    }
                }
            }
            Generator::F(i) => {
                let mut head = F::one();
                for j in 0..k {
                    let col = &self.f_cols[i][positions[j]];
                    if !col.is_empty() {
                        let mut c = head.clone();
                        if i == 0 {
                            c = c.times(&params.z_inv[j]);
                        }
                        for (row, x) in col {
                            let mut next = positions.to_vec();
                            next[j] = *row;
                            out(next, c.times(x));
                        }
                    }
                    head = head.times(&self.t_value(i, positions[j], false));
                }
            }
        }
    }

    pub fn positions_of(&self, tuple: &[i32]) -> Vec<usize> {
        tuple.iter().map(|&j| self.datum.position(j)).collect()
    }

    pub fn indices_of(&self, positions: &[usize]) -> Vec<i32> {
        positions.iter().map(|&p| self.datum.index_at(p)).collect()
    }

    /// Action of a generator on a tensor state.
    pub fn tensor_act(&self, g: Generator, state: &TensorState<F>, params: &SpectralParams<F>) -> Result<TensorState<F>> {
        if params.len() != state.k {
            return Err(Error::DegreeMismatch { expected: state.k, found: params.len() });
        }
        if g.index() > self.datum.n() {
            return Err(Error::Unsupported(format!("generator {g}")));
        }
        let mut out = TensorState::zero(state.k);
        for (tuple, amp) in &state.amps {
            let pos = self.positions_of(tuple);
            self.act_on_positions(g, &pos, params, |next, c| {
                out.add_term(self.indices_of(&next), c.times(amp));
            });
        }
        Ok(out)
    }

    /// `f_i^{(m)}` or `e_i^{(m)}` on a tensor state.
    pub fn divided_power_act(
        &self,
        g: Generator,
        m: u32,
        state: &TensorState<F>,
        params: &SpectralParams<F>,
    ) -> Result<TensorState<F>> {
        let mut cur = state.clone();
        for _ in 0..m {
            cur = self.tensor_act(g, &cur, params)?;
        }
        let fact = self.quantum_factorial(g.index(), m);
        Ok(cur.scale(&fact.recip()))
    }

    pub fn weight_of(&self, state: &TensorState<F>) -> Result<ClassicalWeight> {
        let mut found: Option<ClassicalWeight> = None;
        for tuple in state.amps.keys() {
            let w = tuple.iter().fold(ClassicalWeight::zero(self.datum.n()), |acc, &j| acc.add(&self.datum.weight_of_index(j)));
            match &found {
                None => found = Some(w),
                Some(prev) if *prev != w => return Err(Error::Inhomogeneous),
                Some(_) => {}
            }
        }
        found.ok_or(Error::Inhomogeneous)
    }
}

fn pow<F: Field>(x: &F, x_inv: &F, e: i32) -> F {
    let base = if e < 0 { x_inv } else { x };
    let mut acc = F::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc.times(base);
    }
    acc
}

impl Representation<RationalScalar> {
    /// Specialization at `s = s0`.
    pub fn specialize(&self, s0: &Rational) -> Result<Representation<Rational>> {
        // All entries are Laurent polynomials, so only s0 = 0 can fail.
        if s0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.map(|x| x.eval(s0).expect("Laurent entry")))
    }
}

/// Spectral parameters `z_1..z_k` and their inverses.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParams<F> {
    pub z: Vec<F>,
    pub z_inv: Vec<F>,
}

impl<F: Field> SpectralParams<F> {
    pub fn new(z: Vec<F>) -> Self {
        let z_inv = z.iter().map(Field::recip).collect();
        Self { z, z_inv }
    }

    pub fn unit(k: usize) -> Self {
        Self::new(vec![F::one(); k])
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SpectralParams<G> {
        SpectralParams::new(self.z.iter().map(f).collect())
    }
}

impl SpectralParams<RationalScalar> {
    /// `z_j = (-q)^{2j - k + shift}` for `j = 1..k`.
    ///
    /// `shift = 0` gives the fusion parameters used to define the quotient;
    /// any common shift rescales `e_0, f_0` by inverse scalars and leaves the
    /// relation subspace invariant.
    pub fn fusion(k: usize, shift: i32) -> Self {
        let k = k as i32;
        Self::new((1..=k).map(|j| RationalScalar::neg_q_pow(2 * j - k + shift)).collect())
    }
}

/// A vector of `V^{⊗k}` as a sparse map from index tuples to amplitudes.
#[derive(Clone, PartialEq)]
pub struct TensorState<F> {
    pub k: usize,
    amps: BTreeMap<Vec<i32>, F>,
}

impl<F: Ring> TensorState<F> {
    pub fn zero(k: usize) -> Self {
        Self { k, amps: BTreeMap::new() }
    }

    pub fn basis(tuple: &[i32]) -> Self {
        let mut s = Self::zero(tuple.len());
        s.add_term(tuple.to_vec(), F::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, F)>>(k: usize, terms: I) -> Self {
        let mut s = Self::zero(k);
        for (t, c) in terms {
            s.add_term(t, c);
        }
        s
    }

    pub fn add_term(&mut self, tuple: Vec<i32>, c: F) {
        debug_assert_eq!(tuple.len(), self.k);
        if c.is_zero() {
            return;
        }
        match self.amps.get_mut(&tuple) {
            Some(slot) => {
                let sum = slot.plus(&c);
                if sum.is_zero() {
                    self.amps.remove(&tuple);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.amps.insert(tuple, c);
            }
        }
    }

    pub fn amplitude(&self, tuple: &[i32]) -> F {
        self.amps.get(tuple).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &F)> + '_ {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.amps {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().negate()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        Self { k: self.k, amps: self.amps.iter().map(|(t, x)| (t.clone(), x.times(c))).collect() }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k + other.k);
        for (a, x) in &self.amps {
            for (b, y) in &other.amps {
                let mut t = a.clone();
                t.extend_from_slice(b);
                out.add_term(t, x.times(y));
            }
        }
        out
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> TensorState<G> {
        TensorState::from_terms(self.k, self.amps.iter().map(|(t, x)| (t.clone(), f(x))))
    }
}

impl<F: fmt::Display> fmt::Display for TensorState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .amps
            .iter()
            .map(|(t, c)| {
                let v: Vec<String> = t.iter().map(|j| format!("v{j}")).collect();
                format!("({c}) {}", v.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: fmt::Display> fmt::Debug for TensorState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Checks every defining relation of `U'_q` on the given generator matrices.
pub fn check_defining_relations(datum: &AffineDatum, mats: &GeneratorMatrices<RationalScalar>) -> Report {
    let n = datum.n();
    let mut report = Report::new();
    let dim = mats.e[0].dim();
    let id = SparseMatrix::<RationalScalar>::identity(dim);
    let roots = &datum.simple_roots;
    let reference = "quantum group relations";

    for i in 0..=n {
        let tt = mats.t[i].mul(&mats.t_inv[i]);
        report.check(format!("t{i} t{i}^-1 = 1"), reference, tt == id, || "nonidentity".into());
        for j in 0..=n {
            let comm = mats.t[i].mul(&mats.t[j]).sub(&mats.t[j].mul(&mats.t[i]));
            report.check(format!("[t{i},t{j}] = 0"), reference, comm.is_zero(), || "noncommuting".into());
            // t_i e_j t_i^{-1} = q_i^{a_ij} e_j = s^{2 (alpha_i|alpha_j)} e_j
            let c = RationalScalar::s_pow(2 * roots[i].dot(&roots[j]));
            let lhs = mats.t[i].mul(&mats.e[j]).mul(&mats.t_inv[i]);
            let residual = lhs.sub(&mats.e[j].scale(&c));
            report.check(format!("t{i} e{j} t{i}^-1"), reference, residual.is_zero(), || format!("{} nonzero entries", residual.nnz()));
            let lhs = mats.t[i].mul(&mats.f[j]).mul(&mats.t_inv[i]);
            let residual = lhs.sub(&mats.f[j].scale(&c.recip()));
            report.check(format!("t{i} f{j} t{i}^-1"), reference, residual.is_zero(), || format!("{} nonzero entries", residual.nnz()));

            let comm = mats.e[i].mul(&mats.f[j]).sub(&mats.f[j].mul(&mats.e[i]));
            let expect = if i == j {
                let qi = RationalScalar::s_pow(datum.root_length[i]);
                let denom = &qi - &qi.recip();
                mats.t[i].sub(&mats.t_inv[i]).scale(&denom.recip())
            } else {
                SparseMatrix::zero(dim)
            };
            let residual = comm.sub(&expect);
            report.check(format!("[e{i},f{j}]"), reference, residual.is_zero(), || format!("{} nonzero entries", residual.nnz()));
        }
    }

    for i in 0..=n {
        for j in 0..=n {
            if i == j {
                continue;
            }
            let a_ij = datum.coroot_pairing_int(&roots[j], i);
            let b = (1 - a_ij) as u32;
            for (label, mi, mj) in [("e", &mats.e[i], &mats.e[j]), ("f", &mats.f[i], &mats.f[j])] {
                let powers = divided_powers(mi, b, datum.root_length[i]);
                let mut acc = SparseMatrix::zero(dim);
                for k in 0..=b {
                    let term = powers[k as usize].mul(mj).mul(&powers[(b - k) as usize]);
                    let sign = if k % 2 == 0 { RationalScalar::one() } else { -RationalScalar::one() };
                    acc = acc.lin_comb(&sign, &term);
                }
                report.check(
                    format!("Serre {label}{i},{label}{j} (b={b})"),
                    reference,
                    acc.is_zero(),
                    || format!("{} nonzero entries", acc.nnz()),
                );
            }
        }
    }
    report
}

fn divided_powers(m: &SparseMatrix<RationalScalar>, up_to: u32, d: i32) -> Vec<SparseMatrix<RationalScalar>> {
    let mut out = vec![SparseMatrix::identity(m.dim())];
    let mut fact = RationalScalar::one();
    let mut cur = SparseMatrix::identity(m.dim());
    for k in 1..=up_to {
        cur = cur.mul(m);
        fact = fact.times(&quantum_integer(k, d));
        out.push(cur.scale(&fact.recip()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::AffineType;

    fn rep(kind: AffineKind, n: usize) -> Representation<RationalScalar> {
        build_rep(&AffineDatum::new(AffineType::new(kind, n).unwrap()))
    }

    fn s(e: i32) -> RationalScalar {
        RationalScalar::s_pow(e)
    }

    #[test]
    fn matrices_match_the_generator_table() {
        let r = rep(AffineKind::A2Even, 3);
        let d = &r.datum;
        let two = s(1) + s(-1);
        assert_eq!(r.mats.e[3].get(d.position(3), d.position(0)), two);
        assert!(r.mats.e[3].get(d.position(0), d.position(-3)).is_one());
        assert_eq!(r.mats.f[3].get(d.position(-3), d.position(0)), two);
        assert!(r.mats.f[3].get(d.position(0), d.position(3)).is_one());
        let r = rep(AffineKind::A2Odd, 3);
        let d = &r.datum;
        assert!(r.mats.e[0].get(d.position(-1), d.position(2)).is_one());
        assert!(r.mats.e[0].get(d.position(-2), d.position(1)).is_one());
        assert_eq!(r.mats.e[0].nnz(), 2);
    }

    #[test]
    fn t_eigenvalues_follow_the_table() {
        for kind in AffineKind::ALL {
            let r = rep(kind, 3);
            let d = &r.datum;
            let n = 3i32;
            let delta = |a: i32, b: i32| i32::from(a == b);
            for &j in &d.index_set {
                let p = d.position(j);
                for i in 1..n {
                    let e = delta(j, i) - delta(j, i + 1) + delta(j, -i - 1) - delta(j, -i);
                    assert_eq!(r.t_exp[i as usize][p], 2 * e);
                }
                let e0 = match kind {
                    AffineKind::A2Odd => -delta(j, 1) - delta(j, 2) + delta(j, -1) + delta(j, -2),
                    _ => -2 * delta(j, 1) + 2 * delta(j, -1),
                };
                assert_eq!(r.t_exp[0][p], 2 * e0);
                let en = match kind {
                    AffineKind::A2Even => delta(j, n) - delta(j, -n),
                    AffineKind::A2Odd | AffineKind::C1 => 2 * delta(j, n) - 2 * delta(j, -n),
                    AffineKind::A2OddDagger => delta(j, n - 1) + delta(j, n) - delta(j, -n) - delta(j, 1 - n),
                };
                assert_eq!(r.t_exp[3][p], 2 * en);
            }
        }
    }

    #[test]
    fn defining_relations_hold_on_v() {
        for kind in AffineKind::ALL {
            let r = rep(kind, 3);
            let report = check_defining_relations(&r.datum, &r.mats);
            assert!(report.all_passed(), "{kind}: {}", report.summary());
        }
    }

    #[test]
    fn divided_square_of_f1() {
        let r = rep(AffineKind::C1, 3);
        let st = TensorState::basis(&[1, 1]);
        let out = r.divided_power_act(Generator::F(1), 2, &st, &SpectralParams::unit(2)).unwrap();
        assert_eq!(out, TensorState::basis(&[2, 2]));
        let same = r.divided_power_act(Generator::F(1), 0, &st, &SpectralParams::unit(2)).unwrap();
        assert_eq!(same, st);
    }

    #[test]
    fn weights_shift_by_simple_roots() {
        let r = rep(AffineKind::A2OddDagger, 4);
        let st = TensorState::basis(&[2, -1, 3]);
        let w = r.weight_of(&st).unwrap();
        assert_eq!(w, ClassicalWeight(vec![-1, 1, 1, 0]));
        for i in 1..=4 {
            let moved = r.tensor_act(Generator::E(i), &st, &SpectralParams::unit(3)).unwrap();
            if !moved.is_zero() {
                assert_eq!(r.weight_of(&moved).unwrap(), w.add(&r.datum.simple_roots[i]));
            }
        }
        let mixed = TensorState::basis(&[1, 2]).add(&TensorState::basis(&[1, 1]));
        assert_eq!(r.weight_of(&mixed), Err(Error::Inhomogeneous));
        assert!(r.tensor_act(Generator::E(1), &st, &SpectralParams::unit(2)).is_err());
    }

    #[test]
    fn fusion_parameters() {
        let p = SpectralParams::fusion(3, 0);
        assert_eq!(p.z, vec![-RationalScalar::q_pow(-1), -RationalScalar::q_pow(1), -RationalScalar::q_pow(3)]);
        let p = SpectralParams::fusion(2, 0);
        assert_eq!(&p.z[0] / &p.z[1], RationalScalar::q_pow(-2));
    }
}
