//! Exact linear algebra over a [`Field`]: dense row reduction for small blocks
//! and an incremental sparse echelon form for relation spaces.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::{Field, Ring};

pub type DenseMatrix<F> = Vec<Vec<F>>;
pub type SparseVec<F> = BTreeMap<usize, F>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut DenseMatrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = x.times(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.minus(&factor.times(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &DenseMatrix<F>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of `{x : m x = 0}` for an `r x cols` matrix.
pub fn nullspace<F: Field>(m: &DenseMatrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = work[r][f].negate();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(m: &DenseMatrix<F>) -> Option<DenseMatrix<F>> {
    let n = m.len();
    let mut aug: DenseMatrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = b` for one solution, `None` when inconsistent.
pub fn solve<F: Field>(m: &DenseMatrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: DenseMatrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn mat_mul<F: Ring>(a: &DenseMatrix<F>, b: &DenseMatrix<F>) -> DenseMatrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![F::zero(); cols];
            for (k, x) in row.iter().enumerate().take(inner) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        o.add_assign_ref(&x.times(y));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec<F: Ring>(a: &DenseMatrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            let mut acc = F::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc.add_assign_ref(&x.times(y));
                }
            }
            acc
        })
        .collect()
}

/// `acc += c * v` on sparse vectors, dropping cancelled entries.
pub fn axpy<F: Ring>(acc: &mut SparseVec<F>, c: &F, v: &SparseVec<F>) {
    for (k, x) in v {
        let term = c.times(x);
        match acc.get_mut(k) {
            Some(slot) => {
                let sum = slot.plus(&term);
                if sum.is_zero() {
                    acc.remove(k);
                } else {
                    *slot = sum;
                }
            }
            None => {
                if !term.is_zero() {
                    acc.insert(*k, term);
                }
            }
        }
    }
}

/// Square sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    dim: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Ring> SparseMatrix<F> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, rows: vec![SparseVec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| F::one()).collect())
    }

    pub fn diagonal(values: Vec<F>) -> Self {
        let dim = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { SparseVec::new() } else { SparseVec::from([(i, x)]) })
            .collect();
        Self { dim, rows }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, F)>>(dim: usize, entries: I) -> Self {
        let mut m = Self::zero(dim);
        for (r, c, x) in entries {
            m.add_entry(r, c, &x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_entry(&mut self, r: usize, c: usize, x: &F) {
        axpy(&mut self.rows[r], &F::one(), &SparseVec::from([(c, x.clone())]));
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec<F> {
        &self.rows[r]
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, x)| (c, r, x.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, x) in row {
                    axpy(&mut acc, x, &other.rows[*k]);
                }
                acc
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lin_comb(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lin_comb(&F::one().negate(), other)
    }

    /// `self + c * other`.
    pub fn lin_comb(&self, c: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, o) in out.rows.iter_mut().zip(&other.rows) {
            axpy(row, c, o);
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::zero(self.dim).lin_comb(c, self)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc.add_assign_ref(&x.times(&v[*c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec<F> {
        self.rows.iter().enumerate().filter_map(|(r, row)| row.get(&c).map(|x| (r, x.clone()))).collect()
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = vec![F::zero(); self.dim];
                for (c, x) in row {
                    out[*c] = x.clone();
                }
                out
            })
            .collect()
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix::from_triplets(self.dim, self.triplets().map(|(r, c, x)| (r, c, f(x))))
    }
}

/// Incremental echelon form of a set of sparse vectors.
///
/// Each stored row has its pivot at its largest column and leading
/// coefficient one. Reduction walks columns from the top down, so a vector
/// reduces to a combination of non-pivot columns only.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self { rows: Vec::new(), pivot_row: HashMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| *r.keys().next_back().unwrap())
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Reduces `v` modulo the stored rows.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.keys().next_back().copied(),
                Some(c) => v.range(..c).next_back().map(|(k, _)| *k),
            };
            let Some(col) = next else { break };
            cursor = Some(col);
            if let Some(&r) = self.pivot_row.get(&col) {
                let c = v[&col].negate();
                axpy(&mut v, &c, &self.rows[r]);
            }
        }
        v
    }

    /// Adds `v` to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next_back() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec<F> = v.iter().map(|(k, x)| (*k, x.times(&inv))).collect();
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    /// For every pivot column `p`, the expression of the unit vector at `p`
    /// modulo the span as a combination of non-pivot columns.
    pub fn reductions(&self) -> HashMap<usize, SparseVec<F>> {
        let mut order: Vec<usize> = self.pivot_row.keys().copied().collect();
        order.sort_unstable();
        let mut out: HashMap<usize, SparseVec<F>> = HashMap::with_capacity(order.len());
        for p in order {
            let row = &self.rows[self.pivot_row[&p]];
            let mut acc = SparseVec::new();
            for (k, x) in row.range(..p) {
                let c = x.negate();
                match out.get(k) {
                    Some(red) => axpy(&mut acc, &c, red),
                    None => axpy(&mut acc, &c, &SparseVec::from([(*k, F::one())])),
                }
            }
            out.insert(p, acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ker = nullspace(&m, 3);
        assert_eq!(ker.len(), 1);
        assert!(mat_vec(&m, &ker[0]).iter().all(|x| x == &r(0)));
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), mat(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(solve(&m, &[r(3), r(11)]), Some(vec![r(1), r(1)]));
    }

    #[test]
    fn echelon_reductions() {
        let mut e = Echelon::<Rational>::new();
        // e2 + e0, e1 - e2
        assert!(e.insert(SparseVec::from([(2, r(1)), (0, r(1))])));
        assert!(e.insert(SparseVec::from([(1, r(1)), (2, r(-1))])));
        assert!(!e.insert(SparseVec::from([(1, r(1)), (0, r(1))])));
        assert_eq!(e.rank(), 2);
        let red = e.reductions();
        assert_eq!(red[&2], SparseVec::from([(0, r(-1))]));
        assert_eq!(red[&1], SparseVec::from([(0, r(-1))]));
        assert!(e.reduce(SparseVec::from([(1, r(3)), (0, r(3))])).is_empty());
    }
}
