//! Crystal lattices and crystal graphs of `V^k`, computed from the induced
//! action through Kashiwara's string operators, together with the
//! combinatorial column tableaux that label them.
//!
//! The local ring is the ring of rational functions in `s` regular at
//! `s = 0`; residues are taken modulo `sL`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg;
use crate::report::Report;
use crate::rootdata::{AffineDatum, AffineKind, ClassicalFamily, ClassicalWeight};
use crate::scalar::{Field, Rational, RationalScalar, Ring};
use crate::vectorrep::Generator;
use crate::wedge::{build_wedge_space, WedgeConfig, WedgeSpace, WedgeVector};

type Rs = RationalScalar;
type Vector = WedgeVector<Rs>;

/// Spectral shift under which the 0-colored operators act on the crystal
/// lattice: `z_j = (-q)^{2j-k-1}`.
pub const CRYSTAL_SHIFT: i32 = -1;

/// Configuration for the spaces on which crystals are computed.
pub fn crystal_config() -> WedgeConfig {
    WedgeConfig { shift: CRYSTAL_SHIFT, ..WedgeConfig::default() }
}

/// One `i`-string: `images[m] = f_i^{(m)} u` for `u ∈ Ker e_i` of weight `weight`.
#[derive(Clone, Debug)]
pub struct StringBlock {
    pub weight: ClassicalWeight,
    pub length: usize,
    pub images: Vec<Vector>,
}

/// A basis adapted to the `i`-strings, with `ẽ_i` and `f̃_i` as matrices.
#[derive(Clone, Debug)]
pub struct StringDecomposition {
    pub color: usize,
    pub blocks: Vec<StringBlock>,
    f_cols: Vec<Vector>,
    e_cols: Vec<Vector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    E,
    F,
}

impl StringDecomposition {
    /// `ẽ_i v` or `f̃_i v`; linear over `Q(s)`.
    pub fn apply(&self, dir: Direction, v: &Vector) -> Vector {
        let cols = match dir {
            Direction::E => &self.e_cols,
            Direction::F => &self.f_cols,
        };
        let mut out = Vector::zero();
        for (b, x) in &v.coords {
            out.add_scaled(x, &cols[*b]);
        }
        out
    }

    /// Number of basis vectors the strings account for.
    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.length + 1).sum()
    }
}

fn dense_column(v: &Vector, idx: &[usize]) -> Vec<Rs> {
    idx.iter().map(|b| v.coord(*b)).collect()
}

/// Splits the module into `i`-strings through `Ker e_i`, weight by weight.
pub fn string_decompose(space: &WedgeSpace<Rs>, color: usize) -> Result<StringDecomposition> {
    let spaces = space.weight_spaces();
    let mut blocks = Vec::new();
    for (w, idx) in &spaces {
        let mut rows: BTreeMap<usize, Vec<Rs>> = BTreeMap::new();
        for (c, &b) in idx.iter().enumerate() {
            let img = space.act(Generator::E(color), &Vector::unit(b));
            for (r, x) in img.coords {
                rows.entry(r).or_insert_with(|| vec![Rs::zero(); idx.len()])[c] = x;
            }
        }
        let m: Vec<Vec<Rs>> = rows.into_values().collect();
        for u in linalg::nullspace(&m, idx.len()) {
            let top = Vector { coords: idx.iter().zip(u).filter(|(_, x)| !x.is_zero()).map(|(&b, x)| (b, x)).collect() };
            let mut images = vec![top];
            loop {
                let m = images.len() as u32;
                let next = space.act(Generator::F(color), images.last().expect("nonempty"));
                if next.is_zero() {
                    break;
                }
                let ratio = space.rep.quantum_factorial(color, m - 1).over(&space.rep.quantum_factorial(color, m));
                images.push(next.scale(&ratio));
                if images.len() > space.dim() + 1 {
                    return Err(Error::Unsupported(format!("unbounded {color}-string")));
                }
            }
            blocks.push(StringBlock { weight: w.clone(), length: images.len() - 1, images });
        }
    }

    // Invert the adapted basis inside each weight space.
    let dim = space.dim();
    let mut f_cols = vec![Vector::zero(); dim];
    let mut e_cols = vec![Vector::zero(); dim];
    let mut members: HashMap<ClassicalWeight, Vec<(usize, usize)>> = HashMap::new();
    for (bi, block) in blocks.iter().enumerate() {
        for (m, v) in block.images.iter().enumerate() {
            let w = space.weight_of(v)?;
            members.entry(w).or_default().push((bi, m));
        }
    }
    for (w, idx) in &spaces {
        let here = members.get(w).cloned().unwrap_or_default();
        if here.len() != idx.len() {
            return Err(Error::LatticeClosure(format!(
                "{color}-strings give {} vectors of weight {w}, expected {}",
                here.len(),
                idx.len()
            )));
        }
        let cols: Vec<Vec<Rs>> = here.iter().map(|&(bi, m)| dense_column(&blocks[bi].images[m], idx)).collect();
        let mat: Vec<Vec<Rs>> = (0..idx.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = linalg::inverse(&mat)
            .ok_or_else(|| Error::LatticeClosure(format!("{color}-strings are dependent at weight {w}")))?;
        for (j, &b) in idx.iter().enumerate() {
            let mut f = Vector::zero();
            let mut e = Vector::zero();
            for (t, &(bi, m)) in here.iter().enumerate() {
                let c = &inv[t][j];
                if c.is_zero() {
                    continue;
                }
                let block = &blocks[bi];
                if m < block.length {
                    f.add_scaled(c, &block.images[m + 1]);
                }
                if m > 0 {
                    e.add_scaled(c, &block.images[m - 1]);
                }
            }
            f_cols[b] = f;
            e_cols[b] = e;
        }
    }
    Ok(StringDecomposition { color, blocks, f_cols, e_cols })
}

/// Expands `v` in the string basis of `dec` and shifts along each string.
pub fn kashiwara_apply(dec: &StringDecomposition, dir: Direction, v: &Vector) -> Vector {
    dec.apply(dir, v)
}

/// The `A`-lattice spanned by the lifts of the crystal basis.
#[derive(Clone, Debug)]
pub struct CrystalLattice {
    pub basis_lifts: Vec<Vector>,
    pub weights: Vec<ClassicalWeight>,
    /// Weight to (vertex ids, normal-basis indices, inverse of the lift matrix).
    blocks: HashMap<ClassicalWeight, (Vec<usize>, Vec<usize>, Vec<Vec<Rs>>)>,
}

impl CrystalLattice {
    pub fn len(&self) -> usize {
        self.basis_lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis_lifts.is_empty()
    }

    /// Coordinates of `v` in the lifts, weight by weight.
    pub fn coordinates(&self, space: &WedgeSpace<Rs>, v: &Vector) -> Result<BTreeMap<usize, Rs>> {
        let mut by_weight: HashMap<&ClassicalWeight, Vector> = HashMap::new();
        for (b, x) in &v.coords {
            by_weight.entry(&space.basis_weights[*b]).or_insert_with(Vector::zero).coords.insert(*b, x.clone());
        }
        let mut out = BTreeMap::new();
        for (w, part) in by_weight {
            let (ids, idx, inv) = self.blocks.get(w).ok_or_else(|| Error::LatticeClosure(format!("no lifts of weight {w}")))?;
            let col = dense_column(&part, idx);
            for (r, id) in ids.iter().enumerate() {
                let mut acc = Rs::zero();
                for (x, y) in inv[r].iter().zip(&col) {
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.plus(&x.times(y));
                    }
                }
                if !acc.is_zero() {
                    out.insert(*id, acc);
                }
            }
        }
        Ok(out)
    }

    /// `v ∈ L`: every coordinate is regular at `s = 0`.
    pub fn contains(&self, space: &WedgeSpace<Rs>, v: &Vector) -> Result<bool> {
        Ok(self.coordinates(space, v)?.values().all(|x| x.order().is_none_or(|o| o >= 0)))
    }
}

/// Result of one Kashiwara operator on one lift, read modulo `sL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arrow {
    /// The image lies in `sL`.
    Zero,
    /// The image is the given vertex modulo `sL`.
    To(usize),
    /// A coordinate has a pole at `s = 0`.
    OutsideLattice(String),
    /// The residue is neither zero nor a single basis element.
    NotInBasis(String),
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: usize,
    pub weight: ClassicalWeight,
    pub lift: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub color: usize,
}

/// Vertices, colored `f̃` arrows and optional tableau labels.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub labels: Option<Vec<Tableau>>,
}

impl CrystalGraph {
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = self
            .vertices
            .iter()
            .map(|v| {
                json!({
                    "id": v.id,
                    "tableau": self.labels.as_ref().map(|l| l[v.id].entries.clone()),
                    "weight": v.weight.0,
                })
            })
            .collect();
        let edges: Vec<_> = self.edges.iter().map(|e| json!({"src": e.src, "dst": e.dst, "color": e.color})).collect();
        json!({"vertices": vertices, "edges": edges})
    }

    /// Number of connected components under the classical colors.
    pub fn classical_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in self.edges.iter().filter(|e| e.color != 0) {
            let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
            parent[a] = b;
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }
}

/// Everything computed for one `V^k`.
#[derive(Clone, Debug)]
pub struct CrystalData {
    pub space: WedgeSpace<Rs>,
    pub strings: Vec<StringDecomposition>,
    pub lattice: CrystalLattice,
    pub graph: CrystalGraph,
    /// Vertex ids of the classical highest weight lifts.
    pub roots: Vec<usize>,
    /// `arrows[i][v] = (f̃_i, ẽ_i)` on vertex `v`.
    pub arrows: Vec<Vec<(Arrow, Arrow)>>,
}

impl CrystalData {
    pub fn f_arrow(&self, color: usize, v: usize) -> &Arrow {
        &self.arrows[color][v].0
    }

    pub fn e_arrow(&self, color: usize, v: usize) -> &Arrow {
        &self.arrows[color][v].1
    }
}

fn supported(kind: AffineKind) -> Result<()> {
    if kind == AffineKind::A2Odd {
        return Err(Error::Unsupported("crystal bases for the A2_odd labeling".into()));
    }
    Ok(())
}

/// Index tuples of the classical highest weight vectors that generate the
/// crystal lattice.
pub fn root_tuples(d: &AffineDatum, k: usize) -> Vec<Vec<i32>> {
    let n = d.n();
    let mut out = vec![(1..=k as i32).collect::<Vec<_>>()];
    if d.kind() == AffineKind::A2OddDagger && k == n {
        let mut t: Vec<i32> = (1..n as i32).collect();
        t.push(-(n as i32));
        out.push(t);
    }
    out
}

fn rho_height(w: &ClassicalWeight) -> i64 {
    let n = w.0.len() as i64;
    w.0.iter().enumerate().map(|(j, &x)| x as i64 * (n - j as i64)).sum()
}

/// Pivoting over the local ring: repeatedly takes the entry of least order
/// as pivot, which keeps every row operation unimodular. Returns the rows of
/// an `A`-basis together with their pivot columns.
fn local_basis(mut rows: Vec<Vec<Rs>>) -> Vec<(usize, Vec<Rs>)> {
    let mut basis = Vec::new();
    loop {
        let mut best: Option<(i32, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if let Some(o) = x.order() {
                    if best.is_none_or(|(b, _, _)| o < b) {
                        best = Some((o, r, c));
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        let pivot = rows.swap_remove(r);
        for row in rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].over(&pivot[c]);
            for (x, y) in row.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x = x.minus(&factor.times(y));
                }
            }
        }
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        basis.push((c, pivot));
    }
    basis
}

/// Coordinates of `x` in a basis from [`local_basis`].
fn local_coordinates(basis: &[(usize, Vec<Rs>)], x: &[Rs]) -> Option<Vec<Rs>> {
    let mut rem = x.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for (p, row) in basis {
        let a = rem[*p].over(&row[*p]);
        if !a.is_zero() {
            for (r, y) in rem.iter_mut().zip(row) {
                if !y.is_zero() {
                    *r = r.minus(&a.times(y));
                }
            }
        }
        out.push(a);
    }
    rem.iter().all(Zero::is_zero).then_some(out)
}

fn residue(x: &Rs) -> Option<Rational> {
    match x.order() {
        None => Some(Rational::zero()),
        Some(o) if o > 0 => Some(Rational::zero()),
        Some(_) => x.value_at_zero().ok(),
    }
}

/// Builds the crystal lattice from the classical highest weight vectors by
/// closing under `f̃_1, ..., f̃_n`, then reads every colored arrow, including
/// color 0, modulo `sL`.
pub fn build_crystal(space: &WedgeSpace<Rs>) -> Result<CrystalData> {
    let d = &space.datum;
    supported(d.kind())?;
    let n = d.n();
    let strings: Vec<StringDecomposition> =
        (0..=n).into_par_iter().map(|i| string_decompose(space, i)).collect::<Result<_>>()?;

    let mut weights: Vec<(ClassicalWeight, Vec<usize>)> = space.weight_spaces().into_iter().collect();
    weights.sort_by(|a, b| rho_height(&b.0).cmp(&rho_height(&a.0)).then_with(|| a.0.cmp(&b.0)));
    let mut roots_at: HashMap<ClassicalWeight, Vec<Vector>> = HashMap::new();
    for t in root_tuples(d, space.k) {
        let v = space.monomial(&t)?;
        roots_at.entry(space.weight_of(&v)?).or_default().push(v);
    }

    let mut lifts: Vec<Vector> = Vec::new();
    let mut lift_weights: Vec<ClassicalWeight> = Vec::new();
    let mut by_weight: HashMap<ClassicalWeight, Vec<usize>> = HashMap::new();
    let mut roots = Vec::new();
    let mut blocks = HashMap::new();
    for (w, idx) in &weights {
        let mut candidates: Vec<(Vector, bool)> =
            roots_at.get(w).into_iter().flatten().map(|v| (v.clone(), true)).collect();
        for i in 1..=n {
            let above = w.add(&d.simple_roots[i]);
            for &id in by_weight.get(&above).into_iter().flatten() {
                let y = strings[i].apply(Direction::F, &lifts[id]);
                if !y.is_zero() {
                    candidates.push((y, false));
                }
            }
        }
        let rows: Vec<Vec<Rs>> = candidates.iter().map(|(v, _)| dense_column(v, idx)).collect();
        let basis = local_basis(rows.clone());
        if basis.len() != idx.len() {
            return Err(Error::LatticeClosure(format!(
                "lattice at weight {w} has rank {} but the weight space has dimension {}",
                basis.len(),
                idx.len()
            )));
        }
        let mut seen: Vec<Vec<Rational>> = Vec::new();
        let mut ids = Vec::new();
        for ((v, is_root), row) in candidates.iter().zip(&rows) {
            let coords = local_coordinates(&basis, row).ok_or_else(|| Error::LatticeClosure(format!("candidate outside span at {w}")))?;
            let res: Vec<Rational> = coords
                .iter()
                .map(|x| residue(x).ok_or_else(|| Error::LatticeClosure(format!("pole in a candidate at {w}"))))
                .collect::<Result<_>>()?;
            if res.iter().all(Zero::is_zero) || seen.contains(&res) {
                continue;
            }
            seen.push(res);
            let id = lifts.len();
            if *is_root {
                roots.push(id);
            }
            lifts.push(v.clone());
            lift_weights.push(w.clone());
            ids.push(id);
        }
        if ids.len() != idx.len() || linalg::rank(&seen) != idx.len() {
            return Err(Error::LatticeClosure(format!(
                "{} distinct residues at weight {w} for a space of dimension {}",
                ids.len(),
                idx.len()
            )));
        }
        let mat: Vec<Vec<Rs>> =
            (0..idx.len()).map(|r| ids.iter().map(|&id| dense_column(&lifts[id], idx)[r].clone()).collect()).collect();
        let inv = linalg::inverse(&mat).ok_or_else(|| Error::LatticeClosure(format!("dependent lifts at {w}")))?;
        blocks.insert(w.clone(), (ids.clone(), idx.clone(), inv));
        by_weight.insert(w.clone(), ids);
    }
    if lifts.len() != space.dim() {
        return Err(Error::LatticeClosure(format!("{} lifts for dimension {}", lifts.len(), space.dim())));
    }
    let lattice = CrystalLattice { basis_lifts: lifts, weights: lift_weights, blocks };

    let arrows: Vec<Vec<(Arrow, Arrow)>> = strings
        .par_iter()
        .map(|dec| {
            (0..lattice.len())
                .map(|v| {
                    let lift = &lattice.basis_lifts[v];
                    (read_arrow(space, &lattice, &dec.apply(Direction::F, lift)), read_arrow(space, &lattice, &dec.apply(Direction::E, lift)))
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for (color, per) in arrows.iter().enumerate() {
        for (v, (f, _)) in per.iter().enumerate() {
            if let Arrow::To(t) = f {
                edges.push(Edge { src: v, dst: *t, color });
            }
        }
    }
    let vertices = (0..lattice.len())
        .map(|id| Vertex { id, weight: lattice.weights[id].clone(), lift: lattice.basis_lifts[id].clone() })
        .collect();
    let graph = CrystalGraph { n, vertices, edges, labels: None };
    Ok(CrystalData { space: space.clone(), strings, lattice, graph, roots, arrows })
}

/// Builds `V^k` with the crystal spectral shift and its crystal.
pub fn crystal_of(d: &AffineDatum, k: usize, config: &WedgeConfig) -> Result<CrystalData> {
    supported(d.kind())?;
    let config = WedgeConfig { shift: CRYSTAL_SHIFT, ..config.clone() };
    build_crystal(&build_wedge_space(d, k, &config)?)
}

fn read_arrow(space: &WedgeSpace<Rs>, lattice: &CrystalLattice, y: &Vector) -> Arrow {
    let coords = match lattice.coordinates(space, y) {
        Ok(c) => c,
        Err(e) => return Arrow::OutsideLattice(e.to_string()),
    };
    let mut hits = Vec::new();
    for (id, x) in &coords {
        match x.order() {
            Some(o) if o < 0 => return Arrow::OutsideLattice(format!("coordinate {x} on lift {id}")),
            Some(0) => hits.push((*id, x.value_at_zero().unwrap_or_default())),
            _ => {}
        }
    }
    match hits.as_slice() {
        [] => Arrow::Zero,
        [(id, c)] if c.is_one() => Arrow::To(*id),
        _ => Arrow::NotInBasis(format!("residue {hits:?}")),
    }
}

/// The crystal axioms for the requested colors.
pub fn verify_crystal_axioms(data: &CrystalData, colors: &[usize]) -> Report {
    let mut report = Report::new();
    let space = &data.space;
    let lat = &data.lattice;
    report.check("lifts span V^k", "crystal lattice spans the module", lat.len() == space.dim(), || {
        format!("{} lifts, dimension {}", lat.len(), space.dim())
    });
    let graded = lat.basis_lifts.iter().zip(&lat.weights).all(|(v, w)| space.weight_of(v).ok().as_ref() == Some(w));
    report.check("every basis element has a single weight", "weight decomposition of L and B", graded, String::new);
    for &i in colors {
        let per = &data.arrows[i];
        let first = |pred: &dyn Fn(&Arrow) -> bool| {
            per.iter().enumerate().find_map(|(v, (f, e))| {
                if pred(f) {
                    Some(format!("f~_{i} on vertex {v}: {f:?}"))
                } else if pred(e) {
                    Some(format!("e~_{i} on vertex {v}: {e:?}"))
                } else {
                    None
                }
            })
        };
        let pole = first(&|a| matches!(a, Arrow::OutsideLattice(_)));
        report.check(format!("e~_{i} L ⊂ L and f~_{i} L ⊂ L"), "stability of the crystal lattice", pole.is_none(), || {
            pole.unwrap_or_default()
        });
        let bad = first(&|a| matches!(a, Arrow::NotInBasis(_)));
        report.check(format!("e~_{i} B and f~_{i} B lie in B ∪ {{0}}"), "stability of the crystal basis", bad.is_none(), || {
            bad.unwrap_or_default()
        });
        let mut dual = None;
        for (v, (f, _)) in per.iter().enumerate() {
            if let Arrow::To(t) = f {
                if per[*t].1 != Arrow::To(v) {
                    dual.get_or_insert(format!("f~_{i} {v} = {t} but e~_{i} {t} = {:?}", per[*t].1));
                }
            }
        }
        for (v, (_, e)) in per.iter().enumerate() {
            if let Arrow::To(t) = e {
                if per[*t].0 != Arrow::To(v) {
                    dual.get_or_insert(format!("e~_{i} {v} = {t} but f~_{i} {t} = {:?}", per[*t].0));
                }
            }
        }
        report.check(format!("f~_{i} b = b' iff e~_{i} b' = b"), "crystal duality", dual.is_none(), || dual.unwrap_or_default());
    }
    report
}

/// One column of the combinatorial crystal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    pub entries: Vec<i32>,
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Tableau {
    pub fn new(entries: Vec<i32>) -> Self {
        Self { entries }
    }

    /// Conditions (1) and (2) on the column.
    pub fn is_admissible(&self, d: &AffineDatum) -> bool {
        let t = &self.entries;
        let n = d.n() as i32;
        if t.iter().any(|&j| !d.contains_index(j)) {
            return false;
        }
        let family = d.kind().classical();
        let adjacent_ok = t.windows(2).all(|p| {
            d.precedes(p[0], p[1])
                || (family == ClassicalFamily::B && p[0] == 0 && p[1] == 0)
                || (family == ClassicalFamily::D && p[0] == -n && p[1] == n)
        });
        if !adjacent_ok {
            return false;
        }
        let k = t.len();
        for (s, &a) in t.iter().enumerate() {
            if a <= 0 {
                continue;
            }
            for (tpos, &b) in t.iter().enumerate() {
                if b == -a && s < tpos && (s + 1) + (k - (tpos + 1) + 1) > a as usize {
                    return false;
                }
            }
        }
        true
    }
}

/// All admissible columns of height `k`, in lexicographic order of positions.
pub fn enumerate_tableaux(d: &AffineDatum, k: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(d: &AffineDatum, k: usize, cur: &mut Vec<i32>, out: &mut Vec<Tableau>) {
        if cur.len() == k {
            let t = Tableau::new(cur.clone());
            if t.is_admissible(d) {
                out.push(t);
            }
            return;
        }
        for &j in &d.index_set {
            cur.push(j);
            if prefix_ok(d, cur) {
                go(d, k, cur, out);
            }
            cur.pop();
        }
    }
    fn prefix_ok(d: &AffineDatum, cur: &[i32]) -> bool {
        let n = d.n() as i32;
        let family = d.kind().classical();
        cur.windows(2).all(|p| {
            d.precedes(p[0], p[1])
                || (family == ClassicalFamily::B && p[0] == 0 && p[1] == 0)
                || (family == ClassicalFamily::D && p[0] == -n && p[1] == n)
        })
    }
    go(d, k, &mut cur, &mut out);
    out
}

/// The crystal of the vector representation, read from the computed
/// crystal of `V^1`.
#[derive(Clone, Debug)]
pub struct BoxCrystal {
    n: usize,
    f: HashMap<(usize, i32), i32>,
    e: HashMap<(usize, i32), i32>,
}

impl BoxCrystal {
    pub fn from_vector_crystal(data: &CrystalData) -> Result<Self> {
        let d = &data.space.datum;
        let index_of = |v: usize| -> Result<i32> {
            let w = &data.lattice.weights[v];
            d.index_set
                .iter()
                .copied()
                .find(|&j| &d.weight_of_index(j) == w)
                .ok_or_else(|| Error::CrystalMismatch(format!("no index of weight {w}")))
        };
        let mut f = HashMap::new();
        let mut e = HashMap::new();
        for i in 1..=d.n() {
            for v in 0..data.lattice.len() {
                if let Arrow::To(t) = data.f_arrow(i, v) {
                    f.insert((i, index_of(v)?), index_of(*t)?);
                }
                if let Arrow::To(t) = data.e_arrow(i, v) {
                    e.insert((i, index_of(v)?), index_of(*t)?);
                }
            }
        }
        Ok(Self { n: d.n(), f, e })
    }

    fn run(&self, map: &HashMap<(usize, i32), i32>, i: usize, mut j: i32) -> usize {
        let mut count = 0;
        while let Some(&next) = map.get(&(i, j)) {
            j = next;
            count += 1;
            if count > 2 * self.n + 2 {
                break;
            }
        }
        count
    }

    pub fn epsilon(&self, i: usize, j: i32) -> usize {
        self.run(&self.e, i, j)
    }

    pub fn phi(&self, i: usize, j: i32) -> usize {
        self.run(&self.f, i, j)
    }
}

/// Tensor product rule and the order in which a column is read as a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Convention {
    /// `f̃` acts on the leftmost unmatched `+` of the signature when true,
    /// on the rightmost when false.
    pub kashiwara: bool,
    /// The column is read top to bottom when true.
    pub top_down: bool,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention { kashiwara: true, top_down: true },
        Convention { kashiwara: true, top_down: false },
        Convention { kashiwara: false, top_down: true },
        Convention { kashiwara: false, top_down: false },
    ];
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = if self.kashiwara { "Kashiwara tensor rule" } else { "opposite tensor rule" };
        let order = if self.top_down { "top-down reading" } else { "bottom-up reading" };
        write!(f, "{rule}, {order}")
    }
}

/// `f̃_i` or `ẽ_i` on a column through the signature rule.
pub fn combinatorial_apply(bx: &BoxCrystal, conv: Convention, dir: Direction, i: usize, t: &Tableau) -> Option<Tableau> {
    let mut word = t.entries.clone();
    // The opposite rule on a word is the Kashiwara rule on the reversed word.
    let reversed = conv.top_down != conv.kashiwara;
    if reversed {
        word.reverse();
    }
    // Unmatched signs after cancelling every `+` followed by `-`.
    let mut stack: Vec<(usize, bool)> = Vec::new();
    for (p, &j) in word.iter().enumerate() {
        for _ in 0..bx.epsilon(i, j) {
            if matches!(stack.last(), Some((_, true))) {
                stack.pop();
            } else {
                stack.push((p, false));
            }
        }
        for _ in 0..bx.phi(i, j) {
            stack.push((p, true));
        }
    }
    let target = match dir {
        Direction::F => stack.iter().find(|(_, plus)| *plus).map(|(p, _)| *p),
        Direction::E => stack.iter().rev().find(|(_, plus)| !*plus).map(|(p, _)| *p),
    }?;
    let map = match dir {
        Direction::F => &bx.f,
        Direction::E => &bx.e,
    };
    word[target] = *map.get(&(i, word[target]))?;
    if reversed {
        word.reverse();
    }
    Some(Tableau::new(word))
}

/// Propagates labels from the roots along the classical arrows and checks
/// that every arrow agrees with the combinatorial operators.
pub fn label_vertices(data: &CrystalData, tableaux: &[Tableau], bx: &BoxCrystal, conv: Convention) -> Result<Vec<Tableau>> {
    let d = &data.space.datum;
    let n = d.n();
    let count = data.lattice.len();
    if tableaux.len() != count {
        return Err(Error::CrystalMismatch(format!("{} tableaux for {count} vertices", tableaux.len())));
    }
    let allowed: BTreeSet<&Tableau> = tableaux.iter().collect();
    let mut labels: Vec<Option<Tableau>> = vec![None; count];
    let mut queue = VecDeque::new();
    for (root, t) in data.roots.iter().zip(root_tuples(d, data.space.k)) {
        labels[*root] = Some(Tableau::new(t));
        queue.push_back(*root);
    }
    while let Some(v) = queue.pop_front() {
        let t = labels[v].clone().expect("queued vertices are labeled");
        for i in 1..=n {
            let comb = combinatorial_apply(bx, conv, Direction::F, i, &t);
            match (data.f_arrow(i, v), comb) {
                (Arrow::To(y), Some(next)) => {
                    if !allowed.contains(&next) {
                        return Err(Error::CrystalMismatch(format!("f~_{i}({t}) = {next} is not admissible")));
                    }
                    match &labels[*y] {
                        Some(existing) if existing != &next => {
                            return Err(Error::CrystalMismatch(format!("vertex {y} labeled {existing} and {next}")));
                        }
                        Some(_) => {}
                        None => {
                            labels[*y] = Some(next);
                            queue.push_back(*y);
                        }
                    }
                }
                (Arrow::Zero, None) => {}
                (alg, comb) => {
                    return Err(Error::CrystalMismatch(format!("f~_{i} on {t}: computed {alg:?}, combinatorial {comb:?}")));
                }
            }
        }
    }
    let labels: Vec<Tableau> = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| Error::CrystalMismatch(format!("vertex {v} unreachable from the roots"))))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<&Tableau> = labels.iter().collect();
    if distinct.len() != count {
        return Err(Error::CrystalMismatch("two vertices share a label".into()));
    }
    for (v, t) in labels.iter().enumerate() {
        for i in 1..=n {
            let comb = combinatorial_apply(bx, conv, Direction::E, i, t);
            let alg = match data.e_arrow(i, v) {
                Arrow::To(y) => Some(labels[*y].clone()),
                Arrow::Zero => None,
                other => return Err(Error::CrystalMismatch(format!("e~_{i} on {t}: {other:?}"))),
            };
            if alg != comb {
                return Err(Error::CrystalMismatch(format!("e~_{i} on {t}: computed {alg:?}, combinatorial {comb:?}")));
            }
        }
    }
    Ok(labels)
}

/// Selects the tensor convention that labels the crystal of `V^2`.
pub fn calibrate(d: &AffineDatum, config: &WedgeConfig) -> Result<(BoxCrystal, Convention)> {
    let v1 = crystal_of(d, 1, config)?;
    let bx = BoxCrystal::from_vector_crystal(&v1)?;
    let v2 = crystal_of(d, 2, config)?;
    let tableaux = enumerate_tableaux(d, 2);
    for conv in Convention::ALL {
        if label_vertices(&v2, &tableaux, &bx, conv).is_ok() {
            return Ok((bx, conv));
        }
    }
    Err(Error::CrystalMismatch("no tensor convention labels the crystal of V^2".into()))
}

/// Calibrates on `V^2`, then labels `data` and stores the labels in its graph.
pub fn label_crystal(data: &mut CrystalData, config: &WedgeConfig) -> Result<Convention> {
    let d = data.space.datum.clone();
    let (bx, conv) = calibrate(&d, config)?;
    let tableaux = enumerate_tableaux(&d, data.space.k);
    let labels = label_vertices(data, &tableaux, &bx, conv)?;
    data.graph.labels = Some(labels);
    Ok(conv)
}

/// Rule for `f̃_0` on a column.
pub fn predicted_f0(t: &Tableau) -> Option<Tableau> {
    let k = t.entries.len();
    (t.entries.last() == Some(&-1)).then(|| {
        let mut e = vec![1];
        e.extend_from_slice(&t.entries[..k - 1]);
        Tableau::new(e)
    })
}

/// Rule for `ẽ_0` on a column.
pub fn predicted_e0(t: &Tableau) -> Option<Tableau> {
    (t.entries.first() == Some(&1)).then(|| {
        let mut e = t.entries[1..].to_vec();
        e.push(-1);
        Tableau::new(e)
    })
}

/// Compares the computed 0-arrows with the column rules.
pub fn verify_zero_arrows(data: &CrystalData) -> Report {
    let mut report = Report::new();
    let reference = "0-arrows on the column crystal";
    let Some(labels) = &data.graph.labels else {
        report.check("0-arrows compared", reference, false, || "graph is unlabeled".into());
        return report;
    };
    let lookup = |a: &Arrow| match a {
        Arrow::To(y) => Ok(Some(labels[*y].clone())),
        Arrow::Zero => Ok(None),
        other => Err(format!("{other:?}")),
    };
    let total = labels.len();
    let mut f_ok = 0;
    let mut e_ok = 0;
    let mut f_bad = None;
    let mut e_bad = None;
    for (v, t) in labels.iter().enumerate() {
        let f = lookup(data.f_arrow(0, v));
        if f.as_ref().ok() == Some(&predicted_f0(t)) {
            f_ok += 1;
        } else {
            f_bad.get_or_insert(format!("f~_0({t}): computed {f:?}, expected {:?}", predicted_f0(t)));
        }
        let e = lookup(data.e_arrow(0, v));
        if e.as_ref().ok() == Some(&predicted_e0(t)) {
            e_ok += 1;
        } else {
            e_bad.get_or_insert(format!("e~_0({t}): computed {e:?}, expected {:?}", predicted_e0(t)));
        }
    }
    report.check(format!("f~_0 rule on {f_ok}/{total} columns"), reference, f_ok == total, || f_bad.unwrap_or_default());
    report.check(format!("e~_0 rule on {e_ok}/{total} columns"), reference, e_ok == total, || e_bad.unwrap_or_default());
    report
}

/// One operator word with the columns it connects: the `f̃` word carries
/// `f_from` to `f_to`, and the same word in `ẽ` carries `e_from` to `e_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    /// Colors written left to right; the rightmost acts first.
    pub word: Vec<usize>,
    pub f_from: Vec<i32>,
    pub f_to: Vec<i32>,
    pub e_from: Vec<i32>,
    pub e_to: Vec<i32>,
}

fn negate_reverse(t: &[i32]) -> Vec<i32> {
    t.iter().rev().map(|j| -j).collect()
}

fn drop_first_append_minus_one(t: &[i32]) -> Vec<i32> {
    let mut v = t[1..].to_vec();
    v.push(-1);
    v
}

/// The operator words between the top column and the column ending in `-1`.
pub fn operator_words(d: &AffineDatum, k: usize) -> Vec<OperatorWord> {
    let n = d.n();
    let squares = |upto: usize| (1..upto).flat_map(|i| [i, i]).collect::<Vec<_>>();
    match d.kind() {
        AffineKind::A2OddDagger if k == n => {
            let ni = n as i32;
            let column = |last: i32| {
                let mut t: Vec<i32> = (1..ni).collect();
                t.push(last);
                t
            };
            [(ni, n), (-ni, n - 1)]
                .into_iter()
                .map(|(sign_n, doubled)| {
                    let mut word = squares(n - 1);
                    word.extend([doubled, doubled]);
                    let own = column(sign_n);
                    let other = column(-sign_n);
                    // The ẽ word runs between the mirrored columns, which
                    // swaps the sign of n relative to the f̃ word's endpoints.
                    let f_to = drop_first_append_minus_one(&other);
                    OperatorWord { word, e_from: negate_reverse(&own), e_to: negate_reverse(&f_to), f_from: own, f_to }
                })
                .collect()
        }
        kind => {
            let mut word = squares(k);
            let last_middle = if kind == AffineKind::A2OddDagger { n - 2 } else { n - 1 };
            word.extend(k..=last_middle);
            word.push(n);
            if kind == AffineKind::A2Even {
                word.push(n);
            }
            word.extend((k..n).rev());
            let top: Vec<i32> = (1..=k as i32).collect();
            let end = drop_first_append_minus_one(&top);
            vec![OperatorWord { word, e_from: negate_reverse(&top), e_to: negate_reverse(&end), f_from: top, f_to: end }]
        }
    }
}

fn apply_word(strings: &[StringDecomposition], dir: Direction, word: &[usize], v: &Vector) -> Vector {
    word.iter().rev().fold(v.clone(), |acc, &i| strings[i].apply(dir, &acc))
}

/// The operator words of [`operator_words`] as exact identities in `V^k`, and
/// the plain `f_0`, `e_0` steps that close each loop.
pub fn verify_operator_words(space: &WedgeSpace<Rs>) -> Result<Report> {
    let d = &space.datum;
    supported(d.kind())?;
    let n = d.n();
    let strings: Vec<StringDecomposition> = (0..=n).into_par_iter().map(|i| string_decompose(space, i)).collect::<Result<_>>()?;
    let mut report = Report::new();
    let reference = "operator words between extremal columns";
    let fmt_word = |w: &[usize], c: char| w.iter().map(|i| format!("{c}{i}")).collect::<Vec<_>>().join(" ");
    let mono = |t: &[i32]| space.monomial(t);
    for lw in operator_words(d, space.k) {
        for (dir, from, to, c) in [(Direction::F, &lw.f_from, &lw.f_to, 'f'), (Direction::E, &lw.e_from, &lw.e_to, 'e')] {
            let image = apply_word(&strings, dir, &lw.word, &mono(from)?);
            let expected = mono(to)?;
            report.check(format!("[{}] v{from:?} = v{to:?}", fmt_word(&lw.word, c)), reference, image == expected, || {
                space.format_vector(&image.sub(&expected))
            });
        }
        let f0_target = predicted_f0(&Tableau::new(lw.f_to.clone())).expect("column ends in -1").entries;
        let got = space.act(Generator::F(0), &mono(&lw.f_to)?);
        let want = mono(&f0_target)?;
        report.check(format!("f0 v{:?} = v{f0_target:?}", lw.f_to), reference, got == want, || space.format_vector(&got.sub(&want)));
        let e0_target = predicted_e0(&Tableau::new(lw.e_to.clone())).expect("column starts with 1").entries;
        let got = space.act(Generator::E(0), &mono(&lw.e_to)?);
        let want = mono(&e0_target)?;
        report.check(format!("e0 v{:?} = v{e0_target:?}", lw.e_to), reference, got == want, || space.format_vector(&got.sub(&want)));
    }
    Ok(report)
}
