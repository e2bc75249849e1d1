//! The R-matrix `Ř(z)` on `V ⊗ V`, its intertwining property and its
//! spectral decomposition into three classical components.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::report::Report;
use crate::rootdata::{fundamental_weight, weyl_dimension, AffineDatum, AffineKind, ClassicalWeight};
use crate::scalar::{quantum_integer, Field, Rational, RationalScalar, Ring, SpectralPolynomial};
use crate::vectorrep::{Generator, Representation, TensorState};

type Rs = RationalScalar;
type Sp = SpectralPolynomial;

/// `Ř(z)` as a sparse `|J|^2 x |J|^2` matrix; the pair `(a, b)` sits at
/// `pos(a) * |J| + pos(b)`.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub datum: AffineDatum,
    pub matrix: SparseMatrix<Sp>,
}

fn q(e: i32) -> Rs {
    Rs::q_pow(e)
}

fn one() -> Rs {
    Rs::one()
}

/// `a + b z`.
fn lin(a: Rs, b: Rs) -> Sp {
    Sp::linear(a, b)
}

fn z() -> Sp {
    Sp::z_pow(1)
}

fn cst(c: Rs) -> Sp {
    Sp::constant(c)
}

/// The four eigenvalue-type factors shared by the coefficient formulas.
fn one_minus_q2z() -> Sp {
    lin(one(), -q(2))
}

fn one_minus_xi_z(d: &AffineDatum) -> Sp {
    lin(one(), -d.xi.clone())
}

/// `a_ij(z)`.
pub fn a_coefficient(d: &AffineDatum, i: i32, j: i32) -> Sp {
    let xi = &d.xi;
    let one_minus_q2 = one() - q(2);
    if i == j {
        // (q^2 - xi z)(1 - z) + delta_{i0} (1 - q)(q + z)(1 - xi z)
        let mut a = lin(q(2), -xi.clone()).times(&lin(one(), -one()));
        if i == 0 {
            let extra = lin(q(1), one()).times(&one_minus_xi_z(d)).scale(&(one() - q(1)));
            a = a.plus(&extra);
        }
        return a;
    }
    let ratio = d.eps(j) / d.eps(i);
    let sign_power = Rs::neg_q_pow(d.bar(j) - d.bar(i));
    let z_minus_1 = lin(-one(), one());
    let opposite = if i == -j { one_minus_xi_z(d) } else { Sp::zero() };
    if d.precedes(i, j) {
        z_minus_1.scale(&(ratio * sign_power)).plus(&opposite).scale(&one_minus_q2)
    } else {
        z_minus_1.scale(&(ratio * xi.clone() * sign_power)).plus(&opposite).times(&z()).scale(&one_minus_q2)
    }
}

pub fn pair_index(d: &AffineDatum, a: i32, b: i32) -> usize {
    d.position(a) * d.dim() + d.position(b)
}

pub fn build_rmatrix(d: &AffineDatum) -> RMatrix {
    let dim = d.dim();
    let mut m = SparseMatrix::<Sp>::zero(dim * dim);
    let xi_factor = one_minus_xi_z(d);
    let idx = |a: i32, b: i32| pair_index(d, a, b);
    for &i in &d.index_set {
        if i != 0 {
            m.add_entry(idx(i, i), idx(i, i), &one_minus_q2z().times(&xi_factor));
        }
        for &j in &d.index_set {
            if i != j && i != -j {
                // q (1 - z)(1 - xi z) E_ij ⊗ E_ji
                let c = lin(one(), -one()).times(&xi_factor).scale(&q(1));
                m.add_entry(idx(i, j), idx(j, i), &c);
                // (1 - q^2)(1 - xi z)(1 or z) E_ii ⊗ E_jj
                let base = xi_factor.scale(&(one() - q(2)));
                let c = if d.precedes(j, i) { base } else { base.times(&z()) };
                m.add_entry(idx(i, j), idx(i, j), &c);
            }
            // a_ij(z) E_{-i,j} ⊗ E_{i,-j}
            m.add_entry(idx(-i, i), idx(j, -j), &a_coefficient(d, i, j));
        }
    }
    RMatrix { datum: d.clone(), matrix: m }
}

impl RMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Ř(z0)` over `K`.
    pub fn at(&self, z0: &Rs) -> Result<SparseMatrix<Rs>> {
        let mut out = SparseMatrix::zero(self.dim());
        for (r, c, p) in self.matrix.triplets() {
            out.add_entry(r, c, &p.eval(z0)?);
        }
        Ok(out)
    }

    /// Applies `Ř(z)` to a two-fold tensor, giving amplitudes in `K[z, z^-1]`.
    pub fn apply(&self, state: &TensorState<Rs>) -> Vec<Sp> {
        let v = self.embed(state);
        self.matrix.apply(&v)
    }

    pub fn embed(&self, state: &TensorState<Rs>) -> Vec<Sp> {
        let mut v = vec![Sp::zero(); self.dim()];
        for (t, c) in state.terms() {
            let p = pair_index(&self.datum, t[0], t[1]);
            v[p] = v[p].plus(&cst(c.clone()));
        }
        v
    }

    /// Every entry is a polynomial in `z` of degree at most two, so
    /// `z2^2 Ř(z1/z2)` is homogeneous and setting `z2 = 1` loses nothing.
    pub fn is_homogenizable(&self) -> bool {
        self.matrix.triplets().all(|(_, _, p)| p.low_exp().unwrap_or(0) >= 0 && p.high_exp().unwrap_or(0) <= 2)
    }

    /// Checks that every nonzero entry connects pairs of equal weight.
    pub fn preserves_weight(&self) -> bool {
        let d = &self.datum;
        let weight = |p: usize| {
            let a = d.index_at(p / d.dim());
            let b = d.index_at(p % d.dim());
            d.weight_of_index(a).add(&d.weight_of_index(b))
        };
        self.matrix.triplets().all(|(r, c, _)| weight(r) == weight(c))
    }
}

fn kron(a: &SparseMatrix<Sp>, b: &SparseMatrix<Sp>) -> SparseMatrix<Sp> {
    let n = b.dim();
    let mut out = SparseMatrix::zero(a.dim() * n);
    for (i, j, x) in a.triplets() {
        for (k, l, y) in b.triplets() {
            out.add_entry(i * n + k, j * n + l, &x.times(y));
        }
    }
    out
}

fn lift(m: &SparseMatrix<Rs>) -> SparseMatrix<Sp> {
    m.map(|x| cst(x.clone()))
}

/// `(π_{z1} ⊗ π_{z2}) Δ(x)` with `z1, z2` each either `z` or `1`.
pub fn coproduct_matrix(rep: &Representation<Rs>, g: Generator, first_is_z: bool) -> SparseMatrix<Sp> {
    let dim = rep.dim();
    let id = SparseMatrix::<Sp>::identity(dim);
    let i = g.index();
    let twist = |power: i32, on: bool| if on && i == 0 { Sp::z_pow(power) } else { Sp::one() };
    match g {
        Generator::E(_) => {
            let e = lift(&rep.mats.e[i]);
            let a = kron(&e, &lift(&rep.mats.t_inv[i])).scale(&twist(1, first_is_z));
            let b = kron(&id, &e).scale(&twist(1, !first_is_z));
            a.add(&b)
        }
        Generator::F(_) => {
            let f = lift(&rep.mats.f[i]);
            let a = kron(&f, &id).scale(&twist(-1, first_is_z));
            let b = kron(&lift(&rep.mats.t[i]), &f).scale(&twist(-1, !first_is_z));
            a.add(&b)
        }
        Generator::T(_) => kron(&lift(&rep.mats.t[i]), &lift(&rep.mats.t[i])),
        Generator::TInv(_) => kron(&lift(&rep.mats.t_inv[i]), &lift(&rep.mats.t_inv[i])),
    }
}

/// `Ř(z)(π_z ⊗ π_1)Δ(x) = (π_1 ⊗ π_z)Δ(x)Ř(z)` for every generator.
pub fn intertwining_check(rep: &Representation<Rs>, r: &RMatrix) -> Report {
    let mut report = Report::new();
    let reference = "intertwining relation of the R-matrix";
    report.check("R(z) has degree <= 2 in z (homogenizable)", reference, r.is_homogenizable(), || "entry outside degrees 0..2".into());
    let n = rep.datum.n();
    for g in Generator::all(n) {
        let lhs = r.matrix.mul(&coproduct_matrix(rep, g, true));
        let rhs = coproduct_matrix(rep, g, false).mul(&r.matrix);
        let residual = lhs.sub(&rhs);
        report.check(format!("intertwining {g}"), reference, residual.is_zero(), || {
            let (a, b, x) = residual.triplets().next().unwrap();
            format!("{} nonzero entries; first ({a},{b}) = {x}", residual.nnz())
        });
    }
    report
}

/// Which classical component of `V ⊗ V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// Highest weight `2 eps_1`.
    Symmetric,
    /// Highest weight `eps_1 + eps_2`.
    Antisymmetric,
    /// The invariant line.
    Trivial,
}

impl Component {
    pub const ALL: [Component; 3] = [Self::Symmetric, Self::Antisymmetric, Self::Trivial];

    pub fn highest_weight(self, n: usize) -> ClassicalWeight {
        match self {
            Self::Symmetric => fundamental_weight(n, 1).add(&fundamental_weight(n, 1)),
            Self::Antisymmetric => fundamental_weight(n, 2),
            Self::Trivial => ClassicalWeight::zero(n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: [Sp; 3],
    pub hw_vectors: [TensorState<Rs>; 3],
    pub component_dims: [u64; 3],
}

impl SpectralData {
    pub fn eigenvalue(&self, c: Component) -> &Sp {
        &self.eigenvalues[c as usize]
    }

    pub fn vector(&self, c: Component) -> &TensorState<Rs> {
        &self.hw_vectors[c as usize]
    }
}

/// The classical highest weight vectors of `V ⊗ V`.
pub fn square_hw_vectors(d: &AffineDatum) -> [TensorState<Rs>; 3] {
    let n = d.n() as i32;
    let sym = TensorState::basis(&[1, 1]);
    let anti = TensorState::from_terms(2, [(vec![1, 2], one()), (vec![2, 1], -q(1))]);
    let mut trivial = TensorState::zero(2);
    for i in 1..=n {
        trivial.add_term(vec![i, -i], Rs::neg_q_pow(i - 1));
        trivial.add_term(vec![-i, i], -(Rs::neg_q_pow(-i - 1) * d.xi_prime.clone()));
    }
    if d.has_zero_index() {
        let two = quantum_integer(2, d.root_length[d.n()]);
        trivial.add_term(vec![0, 0], -(Rs::neg_q_pow(n - 1) / two));
    }
    [sym, anti, trivial]
}

/// The eigenvalue polynomials `c_X(z)`.
pub fn eigenvalues(d: &AffineDatum) -> [Sp; 3] {
    let xi = d.xi.clone();
    let z_minus = |c: Rs| lin(-c, one());
    let c_sym = one_minus_q2z().times(&one_minus_xi_z(d));
    let c_anti = one_minus_xi_z(d).times(&z_minus(q(2)));
    let c_triv = match d.kind() {
        AffineKind::A2Odd => z_minus(q(2)).times(&z_minus(xi)),
        _ => one_minus_q2z().times(&z_minus(xi)),
    };
    [c_sym, c_anti, c_triv]
}

pub fn spectral_data(d: &AffineDatum) -> Result<SpectralData> {
    let fam = d.kind().classical();
    let dims = [
        weyl_dimension(fam, &Component::Symmetric.highest_weight(d.n()))?,
        weyl_dimension(fam, &Component::Antisymmetric.highest_weight(d.n()))?,
        1,
    ];
    Ok(SpectralData { eigenvalues: eigenvalues(d), hw_vectors: square_hw_vectors(d), component_dims: dims })
}

/// Eigen-equations, the annihilating cubic and the trace identity.
pub fn spectral_verify(rep: &Representation<Rs>, r: &RMatrix, data: &SpectralData) -> Report {
    let mut report = Report::new();
    let reference = "spectral decomposition of the R-matrix";
    let d = &rep.datum;
    let total: u64 = data.component_dims.iter().sum();
    report.check("component dimensions sum to |J|^2", reference, total == (d.dim() * d.dim()) as u64, || format!("{total}"));

    for c in Component::ALL {
        let u = data.vector(c);
        let killed = (1..=d.n()).all(|i| {
            rep.tensor_act(Generator::E(i), u, &crate::vectorrep::SpectralParams::unit(2)).map(|x| x.is_zero()).unwrap_or(false)
        });
        report.check(format!("{c:?} vector is classically highest"), "tensor square decomposition", killed, || u.to_string());
        let image = r.apply(u);
        let expect: Vec<Sp> = r.embed(u).iter().map(|x| x.times(data.eigenvalue(c))).collect();
        report.check(format!("R(z) u = c(z) u for {c:?}"), reference, image == expect, || {
            format!("R(z)u differs from ({}) u", data.eigenvalue(c))
        });
    }

    let id = SparseMatrix::<Sp>::identity(r.dim());
    let mut prod = id.clone();
    for c in &data.eigenvalues {
        prod = prod.mul(&r.matrix.sub(&id.scale(c)));
    }
    report.check("annihilating cubic", reference, prod.is_zero(), || format!("{} nonzero entries", prod.nnz()));

    let mut trace = Sp::zero();
    for p in 0..r.dim() {
        trace = trace.plus(&r.matrix.get(p, p));
    }
    let mut expect = Sp::zero();
    for (c, dim) in data.eigenvalues.iter().zip(data.component_dims) {
        expect = expect.plus(&c.scale(&Rs::from_int(dim as i64)));
    }
    report.check("trace identity", reference, trace == expect, || format!("trace {trace} vs {expect}"));
    report
}

/// The projector onto one component at the spectral point `z0`.
pub fn projector_at(r: &RMatrix, data: &SpectralData, x: Component, z0: &Rs) -> Result<SparseMatrix<Rs>> {
    let at = r.at(z0)?;
    let cx = data.eigenvalue(x).eval(z0)?;
    let id = SparseMatrix::<Rs>::identity(r.dim());
    let mut out = id.clone();
    for y in Component::ALL {
        if y == x {
            continue;
        }
        let cy = data.eigenvalue(y).eval(z0)?;
        let gap = &cx - &cy;
        if gap.is_zero() {
            return Err(Error::DegenerateSpectralPoint);
        }
        out = out.mul(&at.sub(&id.scale(&cy))).scale(&gap.recip());
    }
    Ok(out)
}

/// Rank of `Ř(z0)` after specializing `s = s0`.
pub fn rank_at(r: &RMatrix, z0: &Rs, s0: &Rational) -> Result<usize> {
    let m = r.at(z0)?;
    let dense = specialize_dense(&m, s0)?;
    Ok(linalg::rank(&dense))
}

pub fn specialize_dense(m: &SparseMatrix<Rs>, s0: &Rational) -> Result<Vec<Vec<Rational>>> {
    let mut out = vec![vec![Rational::zero(); m.dim()]; m.dim()];
    for (r, c, x) in m.triplets() {
        out[r][c] = x.eval(s0).ok_or(Error::DivisionByZero)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::AffineType;
    use crate::vectorrep::build_rep;

    fn datum(kind: AffineKind, n: usize) -> AffineDatum {
        AffineDatum::new(AffineType::new(kind, n).unwrap())
    }

    #[test]
    fn diagonal_coefficient_and_band() {
        let d = datum(AffineKind::A2OddDagger, 3);
        let xi = d.xi.clone();
        let expect = lin(q(2), -xi.clone()).times(&lin(one(), -one()));
        assert_eq!(a_coefficient(&d, 2, 2), expect);
        // i ≺ j, i ≠ -j: (1 - q^2)(-q)^{j̄ - ī}(z - 1)
        let a = a_coefficient(&d, 1, 3);
        assert_eq!(a, lin(-one(), one()).scale(&((one() - q(2)) * Rs::neg_q_pow(2))));
        let r = build_rmatrix(&d);
        let image = r.apply(&TensorState::basis(&[2, 2]));
        let p = pair_index(&d, 2, 2);
        assert_eq!(image[p], one_minus_q2z().times(&lin(one(), -xi)));
        assert_eq!(image.iter().filter(|x| !x.is_zero()).count(), 1);
        assert!(r.preserves_weight());
    }

    #[test]
    fn eigenvalue_ratio_relations() {
        // c_sym (q^-1 z - q) = c_anti (q^-1 - q z), after clearing z^-1.
        for kind in AffineKind::ALL {
            let d = datum(kind, 3);
            let [c_sym, c_anti, _] = eigenvalues(&d);
            let lhs = c_sym.times(&lin(-q(1), q(-1)));
            let rhs = c_anti.times(&lin(q(-1), -q(1)));
            assert_eq!(lhs, rhs, "{kind}");
        }
    }

    #[test]
    fn projectors_resolve_identity() {
        let d = datum(AffineKind::C1, 2);
        let r = build_rmatrix(&d);
        let data = spectral_data(&d).unwrap();
        let z0 = q(4);
        let ps: Vec<_> = Component::ALL.iter().map(|&c| projector_at(&r, &data, c, &z0).unwrap()).collect();
        let id = SparseMatrix::<Rs>::identity(r.dim());
        assert_eq!(ps[0].add(&ps[1]).add(&ps[2]), id);
        for (a, p) in ps.iter().enumerate() {
            assert_eq!(p.mul(p), *p);
            for (b, p2) in ps.iter().enumerate() {
                if a != b {
                    assert!(p.mul(p2).is_zero());
                }
            }
        }
        let rep = build_rep(&d);
        let rep_report = spectral_verify(&rep, &r, &data);
        assert!(rep_report.all_passed(), "{:#?}", rep_report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn degenerate_point_detected() {
        let d = datum(AffineKind::A2Odd, 3);
        let r = build_rmatrix(&d);
        let data = spectral_data(&d).unwrap();
        // c_anti and c_triv both vanish at z = q^2 for this type.
        assert_eq!(projector_at(&r, &data, Component::Trivial, &q(2)).unwrap_err(), Error::DegenerateSpectralPoint);
    }
}
