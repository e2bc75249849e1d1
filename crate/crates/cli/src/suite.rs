//! The verification suite behind `qwedge verify`: one case per
//! (check, type, rank, degree), run in parallel and reported in plan order.

use std::time::Instant;

use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use qwedge_core::crystal::{crystal_config, crystal_of, enumerate_tableaux, label_crystal, verify_crystal_axioms, verify_operator_words, verify_zero_arrows};
use qwedge_core::report::Report;
use qwedge_core::rmatrix::{build_rmatrix, intertwining_check, spectral_data, spectral_verify, Component};
use qwedge_core::rootdata::{weyl_dimension, AffineDatum, AffineKind, AffineType};
use qwedge_core::scalar::{LaurentPolynomial, Rational, RationalScalar, Ring, SpectralPolynomial};
use qwedge_core::vectorrep::{build_rep, check_defining_relations};
use qwedge_core::wedge::{
    build_wedge_space, check_degeneration, check_identities, find_highest_weight_vectors, sl_warmup_check, verify_decomposition,
    verify_w_characterization, WedgeConfig, DEFAULT_CAP,
};
use qwedge_core::{Error, Result};

use crate::app::{EXIT_FAILURE, EXIT_OK, EXIT_RESOURCE_CAP};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub reference: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Seconds.
    pub wall_time: f64,
    #[serde(skip)]
    pub criterion: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    #[serde(rename = "type")]
    pub ty: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub eval_point: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: ReportConfig,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(config: ReportConfig, cases: Vec<CaseResult>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Self { version: REPORT_VERSION.into(), config, cases, summary }
    }

    /// 1 on any failure, else the cap code if a case was skipped, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            EXIT_FAILURE
        } else if self.summary.skipped > 0 {
            EXIT_RESOURCE_CAP
        } else {
            EXIT_OK
        }
    }

    /// Cases of one acceptance criterion.
    pub fn criterion(&self, c: u8) -> impl Iterator<Item = &CaseResult> + '_ {
        self.cases.iter().filter(move |x| x.criterion == c)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub kind: Option<AffineKind>,
    pub eval_point: Rational,
    pub cap: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { max_n: 4, kind: None, eval_point: qwedge_core::wedge::default_eval_point(), cap: DEFAULT_CAP, seed: 0 }
    }
}

pub type Runner = Box<dyn Fn(&SuiteOptions) -> Result<Report> + Send + Sync>;

pub struct CaseSpec {
    pub id: String,
    pub criterion: u8,
    pub reference: &'static str,
    run: Runner,
}

impl CaseSpec {
    pub fn new(id: impl Into<String>, criterion: u8, reference: &'static str, run: Runner) -> Self {
        Self { id: id.into(), criterion, reference, run }
    }
}

fn datum(kind: AffineKind, n: usize) -> Result<AffineDatum> {
    Ok(AffineDatum::new(AffineType::new(kind, n)?))
}

fn wedge_config(opts: &SuiteOptions) -> WedgeConfig {
    WedgeConfig { cap: opts.cap, eval_point: opts.eval_point.clone(), ..WedgeConfig::default() }
}

/// Ranks 2 and 3 where the type allows them.
fn small_ranks(kind: AffineKind) -> Vec<usize> {
    (kind.min_rank()..=3).collect()
}

/// Ranks on which the module and crystal statements are checked.
fn module_ranks(kind: AffineKind) -> Vec<usize> {
    match kind {
        AffineKind::A2OddDagger => vec![3, 4],
        _ => small_ranks(kind),
    }
}

fn crystal_kinds() -> [AffineKind; 3] {
    [AffineKind::A2Even, AffineKind::A2OddDagger, AffineKind::C1]
}

fn tag(kind: AffineKind, n: usize) -> String {
    format!("{}/n={n}", kind.cli_name())
}

/// The full plan, filtered by rank and type.
pub fn plan(opts: &SuiteOptions) -> Vec<CaseSpec> {
    let mut specs = Vec::new();
    let mut push = |id: String, criterion: u8, reference: &'static str, run: Runner| {
        specs.push(CaseSpec { id, criterion, reference, run });
    };
    let wanted = |kind: AffineKind, n: usize| n <= opts.max_n && opts.kind.is_none_or(|k| k == kind);

    push("scalars/random-evaluation".into(), 0, "exact arithmetic in Q(s) commutes with evaluation", Box::new(random_evaluation));

    for kind in AffineKind::ALL {
        let mut ranks = small_ranks(kind);
        if kind == AffineKind::A2OddDagger {
            ranks.push(4);
        }
        for n in ranks.into_iter().filter(|&n| wanted(kind, n)) {
            push(
                format!("relations/{}", tag(kind, n)),
                1,
                "defining relations of U_q on the vector representation",
                Box::new(move |_| {
                    let d = datum(kind, n)?;
                    Ok(check_defining_relations(&d, &build_rep(&d).mats))
                }),
            );
        }
    }
    for kind in AffineKind::ALL {
        for n in small_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            push(
                format!("intertwining/{}", tag(kind, n)),
                2,
                "intertwining property of the R-matrix",
                Box::new(move |_| {
                    let d = datum(kind, n)?;
                    Ok(intertwining_check(&build_rep(&d), &build_rmatrix(&d)))
                }),
            );
        }
    }
    for kind in AffineKind::ALL {
        for n in small_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            push(format!("spectral/{}", tag(kind, n)), 3, "spectral decomposition of the R-matrix", Box::new(move |_| spectral(kind, n)));
        }
    }
    for kind in AffineKind::ALL {
        for n in small_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            push(
                format!("w-space/{}", tag(kind, n)),
                4,
                "relation space W = Im R(q^2) = Ker R(q^-2)",
                Box::new(move |o| w_space(kind, n, o)),
            );
        }
    }
    for kind in AffineKind::ALL {
        for n in module_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            for k in 1..=n {
                push(
                    format!("decomposition/{}/k={k}", tag(kind, n)),
                    5,
                    "structure of the q-wedge module V^k",
                    Box::new(move |o| decomposition(kind, n, k, o)),
                );
            }
        }
    }
    for kind in AffineKind::ALL {
        for n in module_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            push(
                format!("identities/{}", tag(kind, n)),
                6,
                "identities in V^2 and V^3 and the worked examples",
                Box::new(move |_| check_identities(&datum(kind, n)?)),
            );
        }
    }
    for kind in crystal_kinds() {
        for n in module_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            for k in 1..=n {
                push(
                    format!("crystal/{}/k={k}", tag(kind, n)),
                    7,
                    "crystal base of V^k and its zero arrows",
                    Box::new(move |o| crystal(kind, n, k, o)),
                );
            }
        }
    }
    for kind in crystal_kinds() {
        for n in module_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            for k in 1..=n {
                push(
                    format!("operator-words/{}/k={k}", tag(kind, n)),
                    8,
                    "operator words between extremal columns",
                    Box::new(move |o| {
                        let cfg = WedgeConfig { cap: o.cap, ..crystal_config() };
                        verify_operator_words(&build_wedge_space(&datum(kind, n)?, k, &cfg)?)
                    }),
                );
            }
        }
    }
    for kind in AffineKind::ALL {
        for n in small_ranks(kind).into_iter().filter(|&n| wanted(kind, n)) {
            push(
                format!("degeneration/{}", tag(kind, n)),
                9,
                "degeneration of W at q = 1",
                Box::new(move |_| Ok(check_degeneration(&datum(kind, n)?))),
            );
        }
    }
    for n in (2..=4).filter(|&n| n <= opts.max_n.max(2) && opts.kind.is_none()) {
        push(format!("warm-up/sl/n={n}"), 9, "sl_n warm-up of the wedge construction", Box::new(move |o| Ok(sl_warmup_check(n, &o.eval_point))));
    }
    specs
}

fn spectral(kind: AffineKind, n: usize) -> Result<Report> {
    let d = datum(kind, n)?;
    let rep = build_rep(&d);
    let r = build_rmatrix(&d);
    let data = spectral_data(&d)?;
    let mut report = spectral_verify(&rep, &r, &data);
    if kind == AffineKind::A2Odd {
        // The invariant line has eigenvalue (z - q^2)(z - xi) for this type
        // instead of the generic (1 - q^2 z)(z - xi).
        let z_minus = |c: RationalScalar| SpectralPolynomial::linear(-c, RationalScalar::one());
        let exceptional = z_minus(RationalScalar::q_pow(2)).times(&z_minus(d.xi.clone()));
        let generic = SpectralPolynomial::linear(RationalScalar::one(), -RationalScalar::q_pow(2)).times(&z_minus(d.xi.clone()));
        let u = data.vector(Component::Trivial);
        let image = r.apply(u);
        let embedded = r.embed(u);
        let eigen = |c: &SpectralPolynomial| image.iter().zip(&embedded).all(|(a, b)| *a == b.times(c));
        report.check("invariant line has eigenvalue (z-q^2)(z-xi)", "spectral decomposition of the R-matrix", eigen(&exceptional), || {
            "eigen-equation fails".into()
        });
        report.check("the generic eigenvalue does not apply", "spectral decomposition of the R-matrix", !eigen(&generic), || {
            "generic eigenvalue also satisfies the eigen-equation".into()
        });
    }
    Ok(report)
}

/// dim W for the cases where it is tabulated: C1 n=2, A2_odd n=3, A2_even n=2.
fn tabulated_dim_w(kind: AffineKind, n: usize) -> Option<usize> {
    match (kind, n) {
        (AffineKind::C1, 2) => Some(11),
        (AffineKind::A2Odd, 3) => Some(21),
        (AffineKind::A2Even, 2) => Some((2 * n + 1) * (n + 1)),
        _ => None,
    }
}

fn w_space(kind: AffineKind, n: usize, opts: &SuiteOptions) -> Result<Report> {
    let d = datum(kind, n)?;
    let (summary, mut report) = verify_w_characterization(&d, &opts.eval_point)?;
    if let Some(expect) = tabulated_dim_w(kind, n) {
        report.check(format!("dim W = {expect}"), "relation space W = Im R(q^2) = Ker R(q^-2)", summary.dim_w == expect, || {
            format!("dim W = {}", summary.dim_w)
        });
    }
    Ok(report)
}

fn decomposition(kind: AffineKind, n: usize, k: usize, opts: &SuiteOptions) -> Result<Report> {
    let d = datum(kind, n)?;
    let space = build_wedge_space(&d, k, &wedge_config(opts))?;
    let mut report = verify_decomposition(&space)?;
    report.extend(space.check_well_defined());
    report.extend(space.check_action_relations());
    let reference = "structure of the q-wedge module V^k";
    let found = find_highest_weight_vectors(&space);
    let fam = kind.classical();
    let mut dims = Vec::new();
    for (w, _) in &found {
        dims.push(weyl_dimension(fam, w)?);
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    match kind {
        AffineKind::A2Odd => {
            let m = k / 2 + 1;
            report.check(format!("{m} classical components"), reference, found.len() == m, || format!("{} found", found.len()));
        }
        AffineKind::A2OddDagger if k == n => {
            report.check("two classical components for k = n", reference, found.len() == 2, || format!("{} found", found.len()));
        }
        _ => {}
    }
    let tabulated: Option<(usize, Vec<u64>)> = match (kind, n, k) {
        (AffineKind::A2OddDagger, 4, 4) => Some((70, vec![35, 35])),
        (AffineKind::A2Odd, 3, 2) => Some((15, vec![14, 1])),
        (AffineKind::C1, 2, 2) => Some((5, vec![5])),
        _ => None,
    };
    if let Some((dim, comps)) = tabulated {
        report.check(format!("dim V^k = {dim} with components {comps:?}"), reference, space.dim() == dim && dims == comps, || {
            format!("dim {} with components {dims:?}", space.dim())
        });
    }
    Ok(report)
}

fn crystal(kind: AffineKind, n: usize, k: usize, opts: &SuiteOptions) -> Result<Report> {
    let d = datum(kind, n)?;
    let cfg = WedgeConfig { cap: opts.cap, ..crystal_config() };
    let mut data = crystal_of(&d, k, &cfg)?;
    let reference = "crystal base of V^k and its zero arrows";
    let colors: Vec<usize> = (0..=n).collect();
    let mut report = verify_crystal_axioms(&data, &colors);
    label_crystal(&mut data, &cfg)?;
    report.extend(verify_zero_arrows(&data));
    let dim = data.space.dim();
    let b = data.graph.vertices.len();
    let tableaux = enumerate_tableaux(&d, k).len();
    report.check("|B| = dim V^k", reference, b == dim, || format!("|B| = {b}, dim = {dim}"));
    report.check("tableau count = dim V^k", reference, tableaux == dim, || format!("{tableaux} tableaux, dim = {dim}"));
    let expect = if kind == AffineKind::A2OddDagger && k == n { 2 } else { 1 };
    let comps = data.graph.classical_components();
    report.check(format!("{expect} classical component(s)"), reference, comps == expect, || format!("{comps} components"));
    Ok(report)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> RationalScalar {
    let mut poly = || {
        let terms: Vec<(i32, Rational)> =
            (0..rng.gen_range(1..4)).map(|_| (rng.gen_range(-3..4), Rational::from_integer(rng.gen_range(-4i64..5).into()))).collect();
        LaurentPolynomial::from_terms(terms)
    };
    let num = poly();
    let mut den = poly();
    if den.is_zero() {
        den = LaurentPolynomial::one();
    }
    RationalScalar::canonicalize(num, den).unwrap_or_else(|_| RationalScalar::one())
}

/// Symbolic arithmetic then evaluation against evaluation then arithmetic,
/// on seeded random scalars.
fn random_evaluation(opts: &SuiteOptions) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let s0 = &opts.eval_point;
    let mut report = Report::new();
    let mut bad = None;
    for _ in 0..100 {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        let symbolic = a.times(&b).plus(&c).minus(&b);
        let (Some(ea), Some(eb), Some(ec), Some(es)) = (a.eval(s0), b.eval(s0), c.eval(s0), symbolic.eval(s0)) else {
            continue;
        };
        if es != &ea * &eb + &ec - &eb {
            bad = Some(format!("a = {a}, b = {b}, c = {c}"));
            break;
        }
    }
    report.check("ab + c - b at s0", "exact arithmetic in Q(s) commutes with evaluation", bad.is_none(), || bad.unwrap_or_default());
    Ok(report)
}

fn outcome(result: Result<Report>) -> (Status, Option<String>) {
    match result {
        Ok(r) if r.all_passed() => (Status::Pass, Some(r.summary())),
        Ok(r) => (Status::Fail, Some(r.summary())),
        Err(e @ Error::ResourceCap { .. }) => (Status::Skipped, Some(e.to_string())),
        Err(e) => (Status::Fail, Some(e.to_string())),
    }
}

pub fn run_cases(specs: &[CaseSpec], opts: &SuiteOptions) -> Vec<CaseResult> {
    specs
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let (status, witness) = outcome((spec.run)(opts));
            CaseResult {
                id: spec.id.clone(),
                reference: spec.reference.into(),
                status,
                witness,
                wall_time: start.elapsed().as_secs_f64(),
                criterion: spec.criterion,
            }
        })
        .collect()
}

pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let cases = run_cases(&plan(opts), opts);
    let config = ReportConfig {
        ty: opts.kind.map_or("all".into(), |k| k.cli_name().into()),
        n: Some(opts.max_n),
        k: None,
        eval_point: opts.eval_point.to_string(),
    };
    SuiteReport::new(config, cases)
}
