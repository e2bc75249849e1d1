//! q-deformed exterior powers `V^k = V^{⊗k} / R_k`, where `R_k` is spanned by
//! every placement of the two-site relation space `W = Im Ř(q^2)`.
//!
//! The pattern is the same as for `U_q(sl_n)`, where `W` is spanned by
//! `v_i⊗v_i` and `v_i⊗v_j + q v_j⊗v_i` (`i > j`) and equals the image of the
//! trigonometric R-matrix at `z = q^2`. A desk check of that warm-up case at
//! `s = 3/2`, `n = 3`:
//!
//! ```
//! use qwedge_core::linalg::rank;
//! use qwedge_core::scalar::Rational;
//!
//! let n = 3usize;
//! let s = Rational::new(3.into(), 2.into());
//! let q = &s * &s;
//! let one = Rational::from_integer(1.into());
//! let z = &q * &q;
//! let idx = |i: usize, j: usize| i * n + j;
//! // Ř(q^2) for sl_3 in the basis v_i ⊗ v_j.
//! let mut r = vec![vec![Rational::from_integer(0.into()); n * n]; n * n];
//! for i in 0..n {
//!     r[idx(i, i)][idx(i, i)] = &one - &q * &z;
//!     for j in 0..n {
//!         if i != j {
//!             r[idx(j, i)][idx(i, j)] = &q * (&one - &z);
//!             let d = &one - &q * &q;
//!             r[idx(i, j)][idx(i, j)] = if i > j { d } else { d * &z };
//!         }
//!     }
//! }
//! // Columns of Ř(q^2) span W; compare with the explicit generators.
//! let image: Vec<Vec<Rational>> = (0..n * n).map(|c| (0..n * n).map(|row| r[row][c].clone()).collect()).collect();
//! let mut gens = Vec::new();
//! for i in 0..n {
//!     for j in 0..=i {
//!         let mut v = vec![Rational::from_integer(0.into()); n * n];
//!         if i == j {
//!             v[idx(i, i)] = one.clone();
//!         } else {
//!             v[idx(i, j)] = one.clone();
//!             v[idx(j, i)] = q.clone();
//!         }
//!         gens.push(v);
//!     }
//! }
//! let mut both = image.clone();
//! both.extend(gens.iter().cloned());
//! assert_eq!(rank(&image), n * (n + 1) / 2);
//! assert_eq!(rank(&gens), n * (n + 1) / 2);
//! assert_eq!(rank(&both), n * (n + 1) / 2);
//! // The quotient V⊗V / W has the dimension of the exterior square, and at
//! // q = 1 the generators become the symmetric ones.
//! assert_eq!(n * n - rank(&gens), n * (n - 1) / 2);
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseMatrix, SparseVec};
use crate::report::Report;
use crate::rmatrix::{build_rmatrix, pair_index, specialize_dense};
use crate::rootdata::{
    binomial, fundamental_weight, fundamental_weight_bar, is_dominant, weyl_dimension, AffineDatum, AffineKind,
    AffineType, ClassicalWeight,
};
use crate::scalar::{Field, Rational, RationalScalar, Ring};
use crate::vectorrep::{build_rep, check_defining_relations, Generator, GeneratorMatrices, Representation, SpectralParams, TensorState};

type Rs = RationalScalar;

/// Default bound on `|J|^k`.
pub const DEFAULT_CAP: usize = 10_000;

/// The rational point used for rank computations.
pub fn default_eval_point() -> Rational {
    Rational::new(3.into(), 2.into())
}

#[derive(Clone, Debug)]
pub struct WedgeConfig {
    pub cap: usize,
    /// Exponent shift in `z_j = (-q)^{2j-k+shift}`.
    pub shift: i32,
    pub eval_point: Rational,
}

impl Default for WedgeConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, shift: 0, eval_point: default_eval_point() }
    }
}

/// Spanning vectors of `W ⊂ V ⊗ V`.
pub fn relation_generators(d: &AffineDatum) -> Vec<TensorState<Rs>> {
    let n = d.n() as i32;
    let one = Rs::one;
    let q = || Rs::q_pow(1);
    let q2 = || Rs::q_pow(2);
    let mut out = Vec::new();
    for &i in &d.index_set {
        if i != 0 {
            out.push(TensorState::basis(&[i, i]));
        }
    }
    for &i in &d.index_set {
        for &j in &d.index_set {
            if d.precedes(j, i) && i != -j {
                out.push(TensorState::from_terms(2, [(vec![i, j], one()), (vec![j, i], q())]));
            }
        }
    }
    for i in 1..n {
        out.push(TensorState::from_terms(
            2,
            [(vec![-i, i], one()), (vec![i, -i], q2()), (vec![i + 1, -i - 1], q()), (vec![-i - 1, i + 1], q())],
        ));
    }
    let first = TensorState::from_terms(2, [(vec![-1, 1], one()), (vec![1, -1], one())]);
    let last = TensorState::from_terms(2, [(vec![-n, n], one()), (vec![n, -n], q2())]);
    match d.kind() {
        AffineKind::A2Even => {
            let mut last = last;
            last.add_term(vec![0, 0], Rs::s_pow(1));
            out.push(first);
            out.push(last);
        }
        AffineKind::A2Odd => out.push(last),
        AffineKind::A2OddDagger => out.push(first),
        AffineKind::C1 => {
            out.push(first);
            out.push(last);
        }
    }
    out
}

fn pair_vector(d: &AffineDatum, state: &TensorState<Rs>) -> SparseVec<Rs> {
    let mut v = SparseVec::new();
    for (t, c) in state.terms() {
        let p = pair_index(d, t[0], t[1]);
        let cur: Rs = v.remove(&p).unwrap_or_else(Rs::zero);
        let next = cur + c.clone();
        if !next.is_zero() {
            v.insert(p, next);
        }
    }
    v
}

fn dense_rows(rows: &[SparseVec<Rs>], cols: usize, s0: &Rational) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| {
            let mut out = vec![Rational::zero(); cols];
            for (c, x) in r {
                out[*c] = x.eval(s0).ok_or(Error::DivisionByZero)?;
            }
            Ok(out)
        })
        .collect()
}

/// Ranks found while comparing the generators of `W` with `Ř(q^{±2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSummary {
    pub dim_w: usize,
    pub rank_image: usize,
    pub rank_kernel_complement: usize,
    pub dim_quotient: usize,
}

/// Checks `span(generators) = Im Ř(q^2) = Ker Ř(q^{-2})`.
///
/// Membership is proved symbolically: every generator is killed by
/// `Ř(q^{-2})`, and `Ř(q^{-2}) Ř(q^2) = 0`. Equality of the three spaces then
/// follows from equal ranks at the evaluation point, since specialization can
/// only lower a rank.
pub fn verify_w_characterization(d: &AffineDatum, s0: &Rational) -> Result<(WSummary, Report)> {
    let mut report = Report::new();
    let reference = "generators of W; W = Im R(q^2) = Ker R(q^-2)";
    let r = build_rmatrix(d);
    let plus = r.at(&Rs::q_pow(2))?;
    let minus = r.at(&Rs::q_pow(-2))?;
    let gens = relation_generators(d);
    let dim2 = d.dim() * d.dim();

    let mut bad = None;
    for g in &gens {
        let v = pair_vector(d, g);
        let mut dense = vec![Rs::zero(); dim2];
        for (c, x) in &v {
            dense[*c] = x.clone();
        }
        if minus.apply(&dense).iter().any(|x| !x.is_zero()) {
            bad = Some(g.to_string());
            break;
        }
    }
    report.check("generators lie in Ker R(q^-2)", reference, bad.is_none(), || bad.unwrap_or_default());
    let product = minus.mul(&plus);
    report.check("R(q^-2) R(q^2) = 0", reference, product.is_zero(), || format!("{} nonzero entries", product.nnz()));

    let gen_rows: Vec<SparseVec<Rs>> = gens.iter().map(|g| pair_vector(d, g)).collect();
    let dim_w = linalg::rank(&dense_rows(&gen_rows, dim2, s0)?);
    let rank_image = linalg::rank(&specialize_dense(&plus, s0)?);
    let rank_minus = linalg::rank(&specialize_dense(&minus, s0)?);
    let kernel = dim2 - rank_minus;
    report.check("rank of generators equals rank of R(q^2)", reference, dim_w == rank_image, || {
        format!("{dim_w} vs {rank_image}")
    });
    report.check("rank of R(q^2) equals nullity of R(q^-2)", reference, rank_image == kernel, || {
        format!("{rank_image} vs {kernel}")
    });

    let fam = d.kind().classical();
    let mut expected = weyl_dimension(fam, &two_omega_one(d.n()))? as usize;
    if d.kind() != AffineKind::A2Odd {
        expected += 1;
    }
    report.check("dim W matches the classical components", reference, dim_w == expected, || {
        format!("dim W = {dim_w}, expected {expected}")
    });
    Ok((WSummary { dim_w, rank_image, rank_kernel_complement: rank_minus, dim_quotient: dim2 - dim_w }, report))
}

fn two_omega_one(n: usize) -> ClassicalWeight {
    let mut w = ClassicalWeight::zero(n);
    w.0[0] = 2;
    w
}

/// Substitutes `s = 1` into the generators of `W`: each must become a
/// symmetric tensor, and together they must span the symmetric square.
pub fn check_degeneration(d: &AffineDatum) -> Report {
    let mut report = Report::new();
    let reference = "degeneration of W at q = 1";
    let one = Rational::one();
    let dim = d.dim();
    let mut rows = Vec::new();
    let mut asym = None;
    for g in relation_generators(d) {
        let at_one: TensorState<Rational> = g.map(|c| c.eval(&one).expect("polynomial coefficient"));
        let flipped = TensorState::from_terms(2, at_one.terms().map(|(t, c)| (vec![t[1], t[0]], c.clone())));
        if at_one.is_zero() || flipped != at_one {
            asym.get_or_insert_with(|| g.to_string());
        }
        let mut row = vec![Rational::zero(); dim * dim];
        for (t, c) in at_one.terms() {
            row[pair_index(d, t[0], t[1])] += c;
        }
        rows.push(row);
    }
    report.check("every generator is symmetric at q = 1", reference, asym.is_none(), || asym.unwrap_or_default());
    let r = linalg::rank(&rows);
    let sym = dim * (dim + 1) / 2;
    report.check("generators span the symmetric square at q = 1", reference, r == sym, || format!("rank {r}, expected {sym}"));
    report
}

/// A vector of `V^k` in coordinates over the normal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeVector<F> {
    pub coords: SparseVec<F>,
}

impl<F: Ring> WedgeVector<F> {
    pub fn zero() -> Self {
        Self { coords: SparseVec::new() }
    }

    pub fn unit(i: usize) -> Self {
        Self { coords: SparseVec::from([(i, F::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> F {
        self.coords.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        linalg::axpy(&mut self.coords, c, &other.coords);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one().negate(), other);
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coords: self.coords.iter().map(|(k, x)| (*k, x.times(c))).collect() }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> WedgeVector<G> {
        WedgeVector { coords: self.coords.iter().map(|(k, x)| (*k, f(x))).filter(|(_, x)| !x.is_zero()).collect() }
    }
}

type Relation<F> = Vec<(Vec<usize>, F)>;

/// All tuples of one weight, sorted so that the most disordered tuple comes
/// last and therefore becomes the pivot of any relation containing it.
struct Bucket {
    tuples: Vec<Vec<usize>>,
    col: HashMap<Vec<usize>, usize>,
    relations: Vec<usize>,
}

fn disorder(t: &[usize]) -> usize {
    let mut inv = 0;
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t[a] >= t[b] {
                inv += 1;
            }
        }
    }
    inv
}

fn all_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |p| {
                    let mut u = t.clone();
                    u.push(p);
                    u
                })
            })
            .collect();
    }
    out
}

fn placements<F: Ring>(dim: usize, k: usize, gens: &[Relation<F>]) -> Vec<Relation<F>> {
    if k < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in 0..=k - 2 {
        for prefix in all_tuples(dim, p) {
            for suffix in all_tuples(dim, k - 2 - p) {
                for g in gens {
                    let rel = g
                        .iter()
                        .map(|(pair, c)| {
                            let mut t = prefix.clone();
                            t.extend_from_slice(pair);
                            t.extend_from_slice(&suffix);
                            (t, c.clone())
                        })
                        .collect();
                    out.push(rel);
                }
            }
        }
    }
    out
}

fn tuple_weight(weights: &[ClassicalWeight], t: &[usize]) -> ClassicalWeight {
    let n = weights.first().map_or(0, |w| w.0.len());
    t.iter().fold(ClassicalWeight::zero(n), |acc, &p| acc.add(&weights[p]))
}

fn layout<F: Ring>(weights: &[ClassicalWeight], k: usize, relations: &[Relation<F>]) -> BTreeMap<ClassicalWeight, Bucket> {
    let mut buckets: BTreeMap<ClassicalWeight, Vec<Vec<usize>>> = BTreeMap::new();
    for t in all_tuples(weights.len(), k) {
        buckets.entry(tuple_weight(weights, &t)).or_default().push(t);
    }
    let mut out: BTreeMap<ClassicalWeight, Bucket> = buckets
        .into_iter()
        .map(|(w, mut tuples)| {
            tuples.sort_by_key(|t| (disorder(t), t.clone()));
            let col = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            (w, Bucket { tuples, col, relations: Vec::new() })
        })
        .collect();
    for (i, rel) in relations.iter().enumerate() {
        if let Some((t, _)) = rel.first() {
            out.get_mut(&tuple_weight(weights, t)).expect("weight bucket").relations.push(i);
        }
    }
    out
}

fn row_in<F: Ring>(bucket: &Bucket, rel: &Relation<F>) -> SparseVec<F> {
    let mut v = SparseVec::new();
    for (t, c) in rel {
        let col = bucket.col[t];
        let mut acc = SparseVec::from([(col, c.clone())]);
        std::mem::swap(&mut acc, &mut v);
        linalg::axpy(&mut v, &F::one(), &acc);
    }
    v
}

/// Inserts the bucket's relations, optionally only those flagged by a
/// schedule; returns the echelon form and which rows raised the rank.
fn eliminate<F: Field>(bucket: &Bucket, relations: &[Relation<F>], schedule: Option<&[bool]>) -> (Echelon<F>, Vec<bool>) {
    let mut ech = Echelon::new();
    let mut used = Vec::with_capacity(bucket.relations.len());
    for (slot, &ri) in bucket.relations.iter().enumerate() {
        if schedule.is_some_and(|s| !s[slot]) {
            used.push(false);
            continue;
        }
        used.push(ech.insert(row_in(bucket, &relations[ri])));
    }
    (ech, used)
}

struct BucketResult<F> {
    normal: Vec<Vec<usize>>,
    /// Pivot tuple to its expansion over normal tuples.
    reductions: Vec<(Vec<usize>, Vec<(Vec<usize>, F)>)>,
    rank: usize,
}

fn finish<F: Field>(bucket: &Bucket, ech: &Echelon<F>) -> BucketResult<F> {
    let normal = bucket.tuples.iter().enumerate().filter(|(c, _)| !ech.is_pivot(*c)).map(|(_, t)| t.clone()).collect();
    let reductions = ech
        .reductions()
        .into_iter()
        .map(|(p, red)| (bucket.tuples[p].clone(), red.into_iter().map(|(c, x)| (bucket.tuples[c].clone(), x)).collect()))
        .collect();
    BucketResult { normal, reductions, rank: ech.rank() }
}

/// Checks that every relation of the bucket reduces to zero.
fn all_vanish<F: Field>(bucket: &Bucket, relations: &[Relation<F>], ech: &Echelon<F>) -> bool {
    bucket.relations.iter().all(|&ri| ech.reduce(row_in(bucket, &relations[ri])).is_empty())
}

/// The quotient `V^k` with its induced action.
#[derive(Clone, Debug)]
pub struct WedgeSpace<F> {
    pub datum: AffineDatum,
    pub k: usize,
    pub rep: Representation<F>,
    pub params: SpectralParams<F>,
    /// Image of `s` in the coefficient field.
    pub s: F,
    /// Surviving tuples in lexicographic order of positions.
    pub normal_basis: Vec<Vec<i32>>,
    pub basis_weights: Vec<ClassicalWeight>,
    pub relation_rank: usize,
    pub actions: GeneratorMatrices<F>,
    basis_positions: Vec<Vec<usize>>,
    basis_index: HashMap<Vec<usize>, usize>,
    reductions: HashMap<Vec<usize>, SparseVec<F>>,
    relations: Vec<Relation<F>>,
    columns: HashMap<Generator, Vec<SparseVec<F>>>,
}

fn check_cap(d: &AffineDatum, k: usize, cap: usize) -> Result<()> {
    let tuples = (d.dim() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if tuples > cap as u128 {
        return Err(Error::ResourceCap { tuples: tuples.min(usize::MAX as u128) as usize, cap });
    }
    Ok(())
}

fn gens_in_positions(d: &AffineDatum) -> Vec<Relation<Rs>> {
    relation_generators(d)
        .iter()
        .map(|g| g.terms().map(|(t, c)| (vec![d.position(t[0]), d.position(t[1])], c.clone())).collect())
        .collect()
}

fn eval_relation(rel: &Relation<Rs>, s0: &Rational) -> Result<Relation<Rational>> {
    rel.iter().map(|(t, c)| Ok((t.clone(), c.eval(s0).ok_or(Error::DivisionByZero)?))).collect()
}

/// Builds `V^k` over `Q(s)`.
///
/// Elimination runs first at the evaluation point to find which relations
/// are independent; only those are reduced symbolically. Every relation is
/// then checked to vanish modulo the symbolic span, and a bucket falls back
/// to full symbolic elimination if one does not.
pub fn build_wedge_space(d: &AffineDatum, k: usize, config: &WedgeConfig) -> Result<WedgeSpace<Rs>> {
    check_cap(d, k, config.cap)?;
    let rep = build_rep(d);
    let relations = placements(d.dim(), k, &gens_in_positions(d));
    let numeric: Vec<Relation<Rational>> =
        relations.iter().map(|r| eval_relation(r, &config.eval_point)).collect::<Result<_>>()?;
    let buckets = layout(&rep.weights, k, &relations);
    let results: Vec<BucketResult<Rs>> = buckets
        .par_iter()
        .map(|(_, b)| {
            let (_, schedule) = eliminate(b, &numeric, None);
            let (ech, _) = eliminate(b, &relations, Some(&schedule));
            if all_vanish(b, &relations, &ech) {
                finish(b, &ech)
            } else {
                finish(b, &eliminate(b, &relations, None).0)
            }
        })
        .collect();
    let params = SpectralParams::fusion(k, config.shift);
    Ok(WedgeSpace::assemble(d.clone(), k, rep, params, Rs::s_pow(1), relations, results))
}

/// Builds `V^k` with `s` specialized to a nonzero rational.
pub fn build_wedge_space_at(d: &AffineDatum, k: usize, config: &WedgeConfig) -> Result<WedgeSpace<Rational>> {
    check_cap(d, k, config.cap)?;
    let s0 = &config.eval_point;
    let rep = build_rep(d).specialize(s0)?;
    let relations: Vec<Relation<Rational>> =
        placements(d.dim(), k, &gens_in_positions(d)).iter().map(|r| eval_relation(r, s0)).collect::<Result<_>>()?;
    let buckets = layout(&rep.weights, k, &relations);
    let results: Vec<BucketResult<Rational>> =
        buckets.par_iter().map(|(_, b)| finish(b, &eliminate(b, &relations, None).0)).collect();
    let params = SpectralParams::fusion(k, config.shift).map(|z| z.eval(s0).expect("power of s"));
    Ok(WedgeSpace::assemble(d.clone(), k, rep, params, s0.clone(), relations, results))
}

impl<F: Field> WedgeSpace<F> {
    fn assemble(
        datum: AffineDatum,
        k: usize,
        rep: Representation<F>,
        params: SpectralParams<F>,
        s: F,
        relations: Vec<Relation<F>>,
        results: Vec<BucketResult<F>>,
    ) -> Self {
        let mut basis_positions: Vec<Vec<usize>> = results.iter().flat_map(|r| r.normal.iter().cloned()).collect();
        basis_positions.sort();
        let basis_index: HashMap<Vec<usize>, usize> =
            basis_positions.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let relation_rank = results.iter().map(|r| r.rank).sum();
        let mut reductions = HashMap::new();
        for r in results {
            for (pivot, red) in r.reductions {
                let v: SparseVec<F> = red.into_iter().map(|(t, x)| (basis_index[&t], x)).collect();
                reductions.insert(pivot, v);
            }
        }
        let normal_basis = basis_positions.iter().map(|t| rep.indices_of(t)).collect();
        let basis_weights = basis_positions.iter().map(|t| tuple_weight(&rep.weights, t)).collect();
        let n = datum.n();
        let empty = GeneratorMatrices { e: Vec::new(), f: Vec::new(), t: Vec::new(), t_inv: Vec::new() };
        let mut space = Self {
            datum,
            k,
            rep,
            params,
            s,
            normal_basis,
            basis_weights,
            relation_rank,
            actions: empty,
            basis_positions,
            basis_index,
            reductions,
            relations,
            columns: HashMap::new(),
        };
        space.rebuild_actions(n);
        space
    }

    fn rebuild_actions(&mut self, n: usize) {
        let gens: Vec<Generator> = (0..=n).flat_map(|i| [Generator::E(i), Generator::F(i), Generator::T(i), Generator::TInv(i)]).collect();
        let columns: Vec<(Generator, Vec<SparseVec<F>>)> = gens
            .par_iter()
            .map(|&g| {
                let cols = self.basis_positions.iter().map(|t| self.act_on_tuple(g, t)).collect();
                (g, cols)
            })
            .collect();
        let dim = self.dim();
        let to_matrix = |cols: &[SparseVec<F>]| {
            SparseMatrix::from_triplets(dim, cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x.clone()))))
        };
        let mut m = GeneratorMatrices { e: Vec::new(), f: Vec::new(), t: Vec::new(), t_inv: Vec::new() };
        for (g, cols) in &columns {
            let mat = to_matrix(cols);
            match g {
                Generator::E(_) => m.e.push(mat),
                Generator::F(_) => m.f.push(mat),
                Generator::T(_) => m.t.push(mat),
                Generator::TInv(_) => m.t_inv.push(mat),
            }
        }
        self.actions = m;
        self.columns = columns.into_iter().collect();
    }

    /// The same quotient with a different choice of spectral parameters.
    pub fn with_params(&self, params: SpectralParams<F>) -> Result<Self> {
        if params.len() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: params.len() });
        }
        let mut out = self.clone();
        out.params = params;
        out.rebuild_actions(self.datum.n());
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.basis_positions.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    fn reduce_tuple(&self, t: &[usize]) -> SparseVec<F> {
        match self.basis_index.get(t) {
            Some(&i) => SparseVec::from([(i, F::one())]),
            None => self.reductions.get(t).cloned().expect("every tuple is normal or a pivot"),
        }
    }

    fn act_on_tuple(&self, g: Generator, t: &[usize]) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        self.rep.act_on_positions(g, t, &self.params, |next, c| {
            linalg::axpy(&mut acc, &c, &self.reduce_tuple(&next));
        });
        acc
    }

    pub fn index_of(&self, tuple: &[i32]) -> Option<usize> {
        if tuple.iter().any(|&j| !self.datum.contains_index(j)) {
            return None;
        }
        self.basis_index.get(&self.rep.positions_of(tuple)).copied()
    }

    /// Coset representative of a tensor in normal-basis coordinates.
    pub fn normal_form(&self, state: &TensorState<F>) -> Result<WedgeVector<F>> {
        if state.k != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: state.k });
        }
        let mut acc = SparseVec::new();
        for (t, c) in state.terms() {
            if t.iter().any(|&j| !self.datum.contains_index(j)) {
                return Err(Error::Parse(format!("index outside J in {t:?}")));
            }
            linalg::axpy(&mut acc, c, &self.reduce_tuple(&self.rep.positions_of(t)));
        }
        Ok(WedgeVector { coords: acc })
    }

    /// `v_{i_1} ∧ ... ∧ v_{i_k}`.
    pub fn monomial(&self, tuple: &[i32]) -> Result<WedgeVector<F>> {
        self.normal_form(&TensorState::basis(tuple))
    }

    pub fn act(&self, g: Generator, v: &WedgeVector<F>) -> WedgeVector<F> {
        let cols = &self.columns[&g];
        let mut acc = SparseVec::new();
        for (c, x) in &v.coords {
            linalg::axpy(&mut acc, x, &cols[*c]);
        }
        WedgeVector { coords: acc }
    }

    /// `e_i^{(m)}` or `f_i^{(m)}`.
    pub fn divided_power(&self, g: Generator, m: u32, v: &WedgeVector<F>) -> WedgeVector<F> {
        let mut cur = v.clone();
        for _ in 0..m {
            cur = self.act(g, &cur);
        }
        cur.scale(&self.rep.quantum_factorial(g.index(), m).recip())
    }

    pub fn weight_of(&self, v: &WedgeVector<F>) -> Result<ClassicalWeight> {
        let mut found: Option<&ClassicalWeight> = None;
        for i in v.coords.keys() {
            let w = &self.basis_weights[*i];
            match found {
                None => found = Some(w),
                Some(prev) if prev != w => return Err(Error::Inhomogeneous),
                Some(_) => {}
            }
        }
        found.cloned().ok_or(Error::Inhomogeneous)
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<ClassicalWeight, Vec<usize>> {
        let mut out: BTreeMap<ClassicalWeight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.basis_weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// `q` as an element of the coefficient field.
    pub fn q(&self) -> F {
        self.s.times(&self.s)
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(&self, e: i32) -> F {
        let base = self.q().negate();
        let base = if e < 0 { base.recip() } else { base };
        (0..e.unsigned_abs()).fold(F::one(), |acc, _| acc.times(&base))
    }

    pub fn format_vector(&self, v: &WedgeVector<F>) -> String
    where
        F: fmt::Display,
    {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .coords
            .iter()
            .map(|(i, c)| {
                let word: Vec<String> = self.normal_basis[*i].iter().map(|j| format!("v{j}")).collect();
                format!("({c})*{}", word.join("^"))
            })
            .collect();
        parts.join(" + ")
    }

    /// Every relation vector and its image under every generator must reduce
    /// to zero, so the induced action is well defined.
    pub fn check_well_defined(&self) -> Report {
        self.check_well_defined_on(&(0..self.relations.len()).collect::<Vec<_>>())
    }

    pub fn check_well_defined_on(&self, which: &[usize]) -> Report {
        let mut report = Report::new();
        let reference = "submodule property of the relation space";
        let n = self.datum.n();
        let gens: Vec<Generator> = (0..=n).flat_map(|i| [Generator::E(i), Generator::F(i)]).collect();
        let failure: Option<String> = which.par_iter().find_map_any(|&ri| {
            let rel = &self.relations[ri];
            let mut nf = SparseVec::new();
            for (t, c) in rel {
                linalg::axpy(&mut nf, c, &self.reduce_tuple(t));
            }
            if !nf.is_empty() {
                return Some(format!("relation {ri} does not vanish"));
            }
            for &g in &gens {
                let mut acc = SparseVec::new();
                for (t, c) in rel {
                    let img = self.act_on_tuple(g, t);
                    linalg::axpy(&mut acc, c, &img);
                }
                if !acc.is_empty() {
                    return Some(format!("{g} applied to relation {ri} survives"));
                }
            }
            None
        });
        report.check(
            format!("relations and their images vanish in V^{} ({} relations)", self.k, which.len()),
            reference,
            failure.is_none(),
            || failure.unwrap_or_default(),
        );
        report
    }
}

impl WedgeSpace<Rs> {
    /// Re-runs the defining relations of `U'_q` on the induced matrices.
    pub fn check_action_relations(&self) -> Report {
        check_defining_relations(&self.datum, &self.actions)
    }

    /// The same quotient with `z_j = (-q)^{2j-k+shift}`.
    pub fn with_shift(&self, shift: i32) -> Result<Self> {
        self.with_params(SpectralParams::fusion(self.k, shift))
    }
}

/// Basis of the vectors killed by every `e_i`, `i = 1..n`, weight by weight.
pub fn find_highest_weight_vectors<F: Field>(space: &WedgeSpace<F>) -> Vec<(ClassicalWeight, WedgeVector<F>)> {
    let fam = space.datum.kind().classical();
    let n = space.datum.n();
    let mut out = Vec::new();
    for (w, idx) in space.weight_spaces() {
        if !is_dominant(fam, &w) {
            continue;
        }
        let mut rows: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
        for i in 1..=n {
            let cols = &space.columns[&Generator::E(i)];
            for (c, &b) in idx.iter().enumerate() {
                for (r, x) in &cols[b] {
                    rows.entry((i, *r)).or_insert_with(|| vec![F::zero(); idx.len()])[c] = x.clone();
                }
            }
        }
        let m: Vec<Vec<F>> = rows.into_values().collect();
        for v in linalg::nullspace(&m, idx.len()) {
            let coords = idx.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(&b, x)| (b, x)).collect();
            out.push((w.clone(), WedgeVector { coords }));
        }
    }
    out
}

/// `w_{k-2l} = Σ (-q)^{|I|} v_1 ∧ ... ∧ v_{k-2l} ∧ v_{i_1} ∧ ... ∧ v_{i_l} ∧ v_{-i_l} ∧ ... ∧ v_{-i_1}`
/// over `k-2l < i_1 < ... < i_l <= n`.
pub fn predicted_hw<F: Field>(space: &WedgeSpace<F>, l: usize) -> Result<WedgeVector<F>> {
    let k = space.k;
    let n = space.datum.n();
    if 2 * l > k {
        return Err(Error::Unsupported(format!("l = {l} exceeds k/2 for k = {k}")));
    }
    let head: Vec<i32> = (1..=(k - 2 * l) as i32).collect();
    let mut state = TensorState::zero(k);
    for subset in increasing_subsets(k - 2 * l + 1, n, l) {
        let mut t = head.clone();
        t.extend(subset.iter().map(|&i| i as i32));
        t.extend(subset.iter().rev().map(|&i| -(i as i32)));
        let total: usize = subset.iter().sum();
        state.add_term(t, space.neg_q_pow(total as i32));
    }
    space.normal_form(&state)
}

/// Increasing `l`-subsets of `lo..=hi`.
fn increasing_subsets(lo: usize, hi: usize, l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in increasing_subsets(first + 1, hi, l - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn proportional<F: Field>(a: &WedgeVector<F>, b: &WedgeVector<F>) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let mut ech = Echelon::new();
    ech.insert(a.coords.clone());
    !ech.insert(b.coords.clone())
}

/// Highest weights the quotient is expected to have, with one expected
/// highest weight vector for each.
pub fn expected_components<F: Field>(space: &WedgeSpace<F>) -> Result<Vec<(ClassicalWeight, WedgeVector<F>)>> {
    let n = space.datum.n();
    let k = space.k;
    match space.datum.kind() {
        AffineKind::A2Odd => (0..=k / 2).map(|l| Ok((fundamental_weight(n, k - 2 * l), predicted_hw(space, l)?))).collect(),
        AffineKind::A2OddDagger if k == n => {
            let mut second: Vec<i32> = (1..n as i32).collect();
            second.push(-(n as i32));
            Ok(vec![(fundamental_weight(n, n), predicted_hw(space, 0)?), (fundamental_weight_bar(n), space.monomial(&second)?)])
        }
        _ => Ok(vec![(fundamental_weight(n, k), predicted_hw(space, 0)?)]),
    }
}

/// Compares the quotient with its predicted classical decomposition.
pub fn verify_decomposition<F: Field>(space: &WedgeSpace<F>) -> Result<Report> {
    let mut report = Report::new();
    let reference = "decomposition of V^k into classical highest weight modules";
    let d = &space.datum;
    let (n, k) = (d.n(), space.k);
    if k == 0 || k > n {
        report.pass(format!("k = {k} outside 1..=n: decomposition not asserted"), reference);
        return Ok(report);
    }
    let fam = d.kind().classical();
    let found = find_highest_weight_vectors(space);
    let expected = expected_components(space)?;

    let mut found_w: Vec<&ClassicalWeight> = found.iter().map(|(w, _)| w).collect();
    let mut exp_w: Vec<&ClassicalWeight> = expected.iter().map(|(w, _)| w).collect();
    found_w.sort();
    exp_w.sort();
    report.check("highest weights match the prediction", reference, found_w == exp_w, || {
        format!("found {found_w:?}, expected {exp_w:?}")
    });
    for (w, predicted) in &expected {
        let ok = found.iter().any(|(fw, v)| fw == w && proportional(v, predicted));
        report.check(format!("predicted highest weight vector of weight {w}"), reference, ok, || {
            format!("no found vector proportional to the prediction at {w}")
        });
    }
    if d.kind() == AffineKind::C1 {
        for l in 1..=k / 2 {
            let w = predicted_hw(space, l)?;
            report.check(format!("w_(k-2l) vanishes for l = {l}"), reference, w.is_zero(), || "nonzero".into());
        }
    }

    let mut total = 0u64;
    for (w, _) in &expected {
        total += weyl_dimension(fam, w)?;
    }
    let dim = space.dim() as u64;
    report.check("dim V^k equals the sum of component dimensions", reference, dim == total, || {
        format!("dim {dim}, components {total}")
    });
    let predicted = match d.kind() {
        AffineKind::C1 => {
            let m = 2 * n as u64;
            binomial(m, k as u64) - if k >= 2 { binomial(m, k as u64 - 2) } else { 0 }
        }
        _ => binomial(d.dim() as u64, k as u64),
    };
    report.check("dim V^k closed form", reference, dim == predicted, || format!("dim {dim}, expected {predicted}"));
    if d.kind() != AffineKind::C1 {
        let increasing = space.normal_basis.iter().all(|t| t.windows(2).all(|p| d.precedes(p[0], p[1])));
        report.check("normal basis is the strictly increasing tuples", reference, increasing, || {
            "a non-increasing tuple survives".into()
        });
    }
    Ok(report)
}

fn datum(kind: AffineKind, n: usize) -> Result<AffineDatum> {
    Ok(AffineDatum::new(AffineType::new(kind, n)?))
}

fn tensor(terms: &[(&[i32], Rs)]) -> TensorState<Rs> {
    let k = terms.first().map_or(0, |(t, _)| t.len());
    TensorState::from_terms(k, terms.iter().map(|(t, c)| (t.to_vec(), c.clone())))
}

fn nq(e: i32) -> Rs {
    Rs::neg_q_pow(e)
}

/// The weight-zero singlet `Σ(-q)^{i-1} v_i⊗v_{-i} - Σ(-q)^{-i-1}ξ' v_{-i}⊗v_i (- v_0 term)`.
fn singlet(d: &AffineDatum) -> TensorState<Rs> {
    crate::rmatrix::square_hw_vectors(d)[2].clone()
}

/// `Σ_{i=1}^n (-q)^{i-1} v_i ⊗ v_{-i}`.
fn alternating_sum(n: i32) -> TensorState<Rs> {
    TensorState::from_terms(2, (1..=n).map(|i| (vec![i, -i], nq(i - 1))))
}

/// `Σ_{i=1}^n (-q)^{-(i-1)} v_{-i} ⊗ v_i`.
fn alternating_sum_reversed(n: i32) -> TensorState<Rs> {
    TensorState::from_terms(2, (1..=n).map(|i| (vec![-i, i], nq(1 - i))))
}

fn in_span(gens: &[TensorState<Rs>], d: &AffineDatum, v: &TensorState<Rs>) -> bool {
    let mut ech = Echelon::new();
    for g in gens {
        ech.insert(pair_vector(d, g));
    }
    ech.reduce(pair_vector(d, v)).is_empty()
}

/// The straightening and vanishing identities of `V^2` and the worked
/// examples for the given type.
pub fn check_identities(d: &AffineDatum) -> Result<Report> {
    let mut report = Report::new();
    let n = d.n() as i32;
    let config = WedgeConfig::default();
    let v2 = build_wedge_space(d, 2, &config)?;
    let u0 = v2.normal_form(&singlet(d))?;
    match d.kind() {
        AffineKind::A2Odd => {
            let rhs = v2.normal_form(&alternating_sum(n))?.scale(&(Rs::one() + Rs::q_pow(2 * n + 2)));
            report.check("u0 = (1+q^(2n+2)) Σ(-q)^(i-1) v_i^v_-i", "weight-zero identity in V^2", u0 == rhs, || {
                v2.format_vector(&u0.sub(&rhs))
            });
            report.check("u0 is nonzero in V^2", "weight-zero identity in V^2", !u0.is_zero(), String::new);
            for i in 1..n {
                let lhs = v2.monomial(&[-i, i])?;
                let mut rhs = TensorState::from_terms(2, [(vec![i, -i], -Rs::q_pow(2))]);
                for k in 1..=n - i {
                    rhs.add_term(vec![i + k, -(i + k)], (Rs::one() - Rs::q_pow(2)) * nq(k));
                }
                let rhs = v2.normal_form(&rhs)?;
                report.check(format!("straightening of v_-{i}^v_{i}"), "straightening formula in V^2", lhs == rhs, || {
                    v2.format_vector(&lhs.sub(&rhs))
                });
            }
        }
        _ => {
            report.check("u0 vanishes in V^2", "weight-zero singlet in V^2", u0.is_zero(), || v2.format_vector(&u0));
        }
    }
    if d.kind() == AffineKind::C1 {
        let state = TensorState::from_terms(2, (1..=n).map(|j| (vec![j, -j], nq(j))));
        let v = v2.normal_form(&state)?;
        report.check("Σ(-q)^j v_j^v_-j = 0", "vanishing sum for C", v.is_zero(), || v2.format_vector(&v));
        let mut mixed = TensorState::zero(2);
        for i in 1..=n {
            mixed.add_term(vec![i, -i], nq(i - 1));
            mixed.add_term(vec![-i, i], -nq(2 * n - i + 1));
        }
        let v = v2.normal_form(&mixed)?;
        report.check("Σ(-q)^(i-1) v_i^v_-i - Σ(-q)^(2n-i+1) v_-i^v_i = 0", "vanishing sum for C", v.is_zero(), || {
            v2.format_vector(&v)
        });
    }
    report.extend(check_congruences(d.n())?);
    report.extend(check_example(d.kind())?);
    Ok(report)
}

/// The congruences modulo `W_1` and `W_2`, the two halves of the `C_n` relation
/// space, on the `2n`-dimensional space.
pub fn check_congruences(n: usize) -> Result<Report> {
    let mut report = Report::new();
    let reference = "congruences modulo W1 and W2";
    let d = datum(AffineKind::C1, n.max(2))?;
    let ni = d.n() as i32;
    let gens = relation_generators(&d);
    let common = &gens[..gens.len() - 2];
    let mut w1 = common.to_vec();
    w1.push(gens[gens.len() - 2].clone());
    let mut w2 = common.to_vec();
    w2.push(gens[gens.len() - 1].clone());

    let lhs = alternating_sum_reversed(ni);
    let base = alternating_sum(ni);
    let diff2 = lhs.sub(&base.scale(&-Rs::q_pow(2)));
    report.check("Σ(-q)^-(i-1) v_-i⊗v_i ≡ -q^2 Σ(-q)^(i-1) v_i⊗v_-i mod W2", reference, in_span(&w2, &d, &diff2), String::new);
    let diff1 = lhs.sub(&base.scale(&-Rs::q_pow(-(2 * ni - 2))));
    report.check(
        "Σ(-q)^-(i-1) v_-i⊗v_i ≡ -q^-(2n-2) Σ(-q)^(i-1) v_i⊗v_-i mod W1",
        reference,
        in_span(&w1, &d, &diff1),
        String::new,
    );
    let one_minus_q2 = Rs::one() - Rs::q_pow(2);
    for i in 1..=ni {
        let mut rhs1 = tensor(&[(&[i, -i], -Rs::one())]);
        // Derived from the middle relations by induction on i; the sum carries
        // the factor q^2 - 1.
        for k in 1..i {
            rhs1.add_term(vec![i - k, -(i - k)], -(one_minus_q2.clone() * nq(-k)));
        }
        let v = TensorState::basis(&[-i, i]).sub(&rhs1);
        report.check(format!("v_-{i}⊗v_{i} straightened mod W1"), reference, in_span(&w1, &d, &v), String::new);
        let mut rhs2 = tensor(&[(&[i, -i], -Rs::q_pow(2))]);
        for k in 1..=ni - i {
            rhs2.add_term(vec![i + k, -(i + k)], one_minus_q2.clone() * nq(k));
        }
        let v = TensorState::basis(&[-i, i]).sub(&rhs2);
        report.check(format!("v_-{i}⊗v_{i} straightened mod W2"), reference, in_span(&w2, &d, &v), String::new);
    }
    Ok(report)
}

/// The worked example attached to each type, at its own rank.
pub fn check_example(kind: AffineKind) -> Result<Report> {
    let mut report = Report::new();
    let config = WedgeConfig::default();
    let q = || Rs::q_pow(1);
    match kind {
        AffineKind::A2OddDagger => {
            let reference = "worked example for the dagger type, n = 4";
            let d = datum(kind, 4)?;
            let v3 = build_wedge_space(&d, 3, &config)?;
            let x = v3.normal_form(&tensor(&[(&[1, 2, -2], Rs::one()), (&[1, 3, -3], -q()), (&[1, 4, -4], Rs::q_pow(2))]))?;
            let target = v3.monomial(&[1, 3, 4])?.scale(&-(q() * (Rs::one() + Rs::q_pow(2))));
            // The image has weight eps_1 + eps_3 + eps_4 = eps_1 + alpha_4, so
            // the raising operator is the one attached to the last node.
            let image = v3.act(Generator::E(4), &x);
            report.check("e_4(v1^v2^v-2 - q v1^v3^v-3 + q^2 v1^v4^v-4) = -q(1+q^2) v1^v3^v4", reference, image == target, || {
                v3.format_vector(&image.sub(&target))
            });
            let e3 = v3.act(Generator::E(3), &x);
            report.check("e_3 of the same vector vanishes by weight", reference, e3.is_zero(), || v3.format_vector(&e3));

            let v2 = build_wedge_space(&d, 2, &config)?;
            let lhs = v2.normal_form(&TensorState::from_terms(2, (1..=4).map(|i| (vec![i, -i], nq(i - 1)))))?;
            let rhs = v2
                .normal_form(&TensorState::from_terms(2, (1..=4).map(|i| (vec![-i, i], nq(1 - i)))))?
                .scale(&-Rs::q_pow(6));
            report.check("Σ(-q)^(i-1) v_i^v_-i = -q^6 Σ(-q)^-(i-1) v_-i^v_i", reference, lhs == rhs, || {
                v2.format_vector(&lhs.sub(&rhs))
            });
        }
        AffineKind::A2Odd => {
            let reference = "worked example for A2_odd, n = 3";
            let d = datum(kind, 3)?;
            let v2 = build_wedge_space(&d, 2, &config)?;
            let u0 = v2.normal_form(&tensor(&[(&[1, -1], Rs::one()), (&[2, -2], -q()), (&[3, -3], Rs::q_pow(2))]))?;
            report.check("u0 is a nonzero highest weight vector of V^2", reference, is_highest(&v2, &u0), || {
                v2.format_vector(&u0)
            });
            let v3 = build_wedge_space(&d, 3, &config)?;
            let u1 = v3.normal_form(&tensor(&[(&[1, 2, -2], Rs::one()), (&[1, 3, -3], -q())]))?;
            report.check("u_omega1 is a nonzero highest weight vector of V^3", reference, is_highest(&v3, &u1), || {
                v3.format_vector(&u1)
            });
        }
        AffineKind::C1 => {
            let reference = "worked example for C, n = 4";
            let d = datum(kind, 4)?;
            let v2 = build_wedge_space(&d, 2, &config)?;
            let u0 = v2.normal_form(&alternating_sum(4))?;
            let u0p = v2.normal_form(&alternating_sum_reversed(4))?;
            report.check("u0 = 0", reference, u0.is_zero(), || v2.format_vector(&u0));
            report.check("u0' = 0", reference, u0p.is_zero(), || v2.format_vector(&u0p));
        }
        AffineKind::A2Even => {}
    }
    Ok(report)
}

fn is_highest(space: &WedgeSpace<Rs>, v: &WedgeVector<Rs>) -> bool {
    !v.is_zero() && (1..=space.datum.n()).all(|i| space.act(Generator::E(i), v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        let d = datum(AffineKind::C1, 2).unwrap();
        let gens = relation_generators(&d);
        // 4 squares, 4 ordered pairs with i ≠ ±j, one from the middle family, two extras.
        assert_eq!(gens.len(), 4 + 4 + 1 + 2);
    }

    #[test]
    fn v1_is_v() {
        let d = datum(AffineKind::A2Even, 2).unwrap();
        let v1 = build_wedge_space(&d, 1, &WedgeConfig::default()).unwrap();
        assert_eq!(v1.dim(), 5);
        let rep = build_rep(&d);
        for i in 1..=2 {
            let m = &rep.mats.e[i];
            for (r, c, x) in m.triplets() {
                assert_eq!(v1.actions.e[i].get(r, c), x.clone());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = datum(AffineKind::A2OddDagger, 4).unwrap();
        let cfg = WedgeConfig { cap: 100, ..WedgeConfig::default() };
        assert!(matches!(build_wedge_space(&d, 3, &cfg), Err(Error::ResourceCap { .. })));
    }
}

/// The `U_q(sl_n)` warm-up of the construction, at `s = s0`: `W` is the image
/// of the trigonometric `Ř(q^2)`, is stable under the generators, becomes
/// the symmetric square at `q = 1`, and `V^{⊗3}` modulo the placements of
/// `W` has the dimension of the third exterior power.
pub fn sl_warmup_check(n: usize, s0: &Rational) -> Report {
    let mut report = Report::new();
    let reference = "sl_n warm-up of the wedge construction";
    let zero = Rational::zero;
    let one = Rational::one();
    let q = s0 * s0;
    let z = &q * &q;
    let idx = |i: usize, j: usize| i * n + j;
    let dim2 = n * n;

    let mut r = vec![vec![zero(); dim2]; dim2];
    for i in 0..n {
        r[idx(i, i)][idx(i, i)] = &one - &q * &z;
        for j in (0..n).filter(|&j| j != i) {
            r[idx(i, j)][idx(j, i)] = &q * (&one - &z);
            let d = &one - &q * &q;
            r[idx(i, j)][idx(i, j)] = if i > j { d } else { d * &z };
        }
    }
    let image: Vec<Vec<Rational>> = (0..dim2).map(|c| (0..dim2).map(|row| r[row][c].clone()).collect()).collect();
    let gens_at = |qq: &Rational| {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..=i {
                let mut v = vec![zero(); dim2];
                v[idx(i, i)] = one.clone();
                if i != j {
                    v[idx(i, i)] = zero();
                    v[idx(i, j)] = one.clone();
                    v[idx(j, i)] = qq.clone();
                }
                gens.push(v);
            }
        }
        gens
    };
    let gens = gens_at(&q);
    let sym = n * (n + 1) / 2;
    let mut both = image.clone();
    both.extend(gens.iter().cloned());
    let (ri, rg, rb) = (linalg::rank(&image), linalg::rank(&gens), linalg::rank(&both));
    report.check("W = Im Ř(q^2)", reference, ri == sym && rg == sym && rb == sym, || format!("ranks {ri}, {rg}, {rb}"));

    // Generators on V ⊗ V via Δ(e_i) = e_i ⊗ t_i^{-1} + 1 ⊗ e_i and
    // Δ(f_i) = f_i ⊗ 1 + t_i ⊗ f_i.
    let qinv = q.recip();
    let t_diag = |i: usize, a: usize| {
        if a == i {
            q.clone()
        } else if a == i + 1 {
            qinv.clone()
        } else {
            one.clone()
        }
    };
    let mut invariant = true;
    for i in 0..n - 1 {
        for g in &gens {
            let mut ev = vec![zero(); dim2];
            let mut fv = vec![zero(); dim2];
            for a in 0..n {
                for b in 0..n {
                    let c = &g[idx(a, b)];
                    if c.is_zero() {
                        continue;
                    }
                    if a == i + 1 {
                        ev[idx(i, b)] += c / t_diag(i, b);
                    }
                    if b == i + 1 {
                        ev[idx(a, i)] += c.clone();
                    }
                    if a == i {
                        fv[idx(i + 1, b)] += c.clone();
                    }
                    if b == i {
                        fv[idx(a, i + 1)] += c * t_diag(i, a);
                    }
                }
            }
            for v in [ev, fv] {
                let mut m = gens.clone();
                m.push(v);
                invariant &= linalg::rank(&m) == sym;
            }
        }
    }
    report.check("W is stable under e_i and f_i", reference, invariant, || "a generator leaves W".into());

    let at_one = gens_at(&one);
    let symmetric = at_one.iter().all(|v| (0..n).all(|a| (0..n).all(|b| v[idx(a, b)] == v[idx(b, a)])));
    report.check("at q = 1 the generators span the symmetric square", reference, symmetric && linalg::rank(&at_one) == sym, || {
        "not symmetric".into()
    });

    let dim3 = n * n * n;
    let mut rel = Vec::new();
    for g in &gens {
        for x in 0..n {
            let mut left = vec![zero(); dim3];
            let mut right = vec![zero(); dim3];
            for a in 0..n {
                for b in 0..n {
                    left[(x * n + a) * n + b] = g[idx(a, b)].clone();
                    right[(a * n + b) * n + x] = g[idx(a, b)].clone();
                }
            }
            rel.push(left);
            rel.push(right);
        }
    }
    let quotient = dim3 - linalg::rank(&rel);
    let expect = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
    report.check("dim V^{⊗3}/R_3 = C(n,3)", reference, quotient == expect, || format!("{quotient} vs {expect}"));
    report
}

#[cfg(test)]
mod warmup_tests {
    #[test]
    fn sl_warmup() {
        for n in 2..=4 {
            let r = super::sl_warmup_check(n, &super::default_eval_point());
            assert!(r.all_passed(), "{}", r.summary());
        }
    }
}
