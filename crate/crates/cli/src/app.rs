use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qwedge_core::crystal::{crystal_config, crystal_of, label_crystal, verify_crystal_axioms, verify_zero_arrows};
use qwedge_core::parse::parse_eval_point;
use qwedge_core::rmatrix::{build_rmatrix, intertwining_check, spectral_data, spectral_verify};
use qwedge_core::rootdata::{weyl_dimension, AffineDatum, AffineKind, AffineType};
use qwedge_core::scalar::Rational;
use qwedge_core::vectorrep::{build_rep, check_defining_relations};
use qwedge_core::wedge::{
    build_wedge_space, expected_components, find_highest_weight_vectors, verify_decomposition, verify_w_characterization,
    WedgeConfig, DEFAULT_CAP,
};
use qwedge_core::Error;

use crate::emit::{emit_dot, emit_report, rep_json, rmatrix_json};
use crate::suite::{run_suite, Status, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qwedge", version, about = "q-wedge modules of twisted quantum affine algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vector representation matrices and their defining relations.
    Rep(RepArgs),
    /// The R-matrix, its intertwining property and spectral decomposition.
    Rmatrix(RmatrixArgs),
    /// The quotient V^k and its classical decomposition.
    Wedge(WedgeArgs),
    /// The crystal graph of V^k.
    Crystal(CrystalArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    A2even,
    A2odd,
    A2oddDagger,
    C1,
}

impl From<TypeArg> for AffineKind {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::A2even => AffineKind::A2Even,
            TypeArg::A2odd => AffineKind::A2Odd,
            TypeArg::A2oddDagger => AffineKind::A2OddDagger,
            TypeArg::C1 => AffineKind::C1,
        }
    }
}

#[derive(Args, Debug)]
pub struct Target {
    #[arg(long = "type", value_enum)]
    pub kind: TypeArg,
    #[arg(long)]
    pub n: usize,
}

impl Target {
    fn datum(&self) -> Result<AffineDatum, Error> {
        Ok(AffineDatum::new(AffineType::new(self.kind.into(), self.n)?))
    }
}

#[derive(Args, Debug)]
pub struct Numeric {
    /// Rational value of s used for rank computations.
    #[arg(long, value_parser = parse_eval_point, default_value = "3/2")]
    pub eval_point: Rational,
    /// Largest tensor power |J|^k that may be built.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RmatrixArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub numeric: Numeric,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WedgeArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub numeric: Numeric,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrystalArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub numeric: Numeric,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    /// Restrict the suite to one type.
    #[arg(long = "type", value_enum)]
    pub kind: Option<TypeArg>,
    #[command(flatten)]
    pub numeric: Numeric,
    /// Seed for the randomized arithmetic spot checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Anything that ends a command early.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::ResourceCap { .. }) => EXIT_RESOURCE_CAP,
            Failure::Core(Error::InvalidRank { .. } | Error::Parse(_) | Error::Unsupported(_)) | Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(_) | Failure::Io(..) => EXIT_FAILURE,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, &(serde_json::to_string_pretty(value).expect("json serializes") + "\n")),
        None => Ok(()),
    }
}

fn status_code(all_passed: bool) -> i32 {
    if all_passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn check_degree(d: &AffineDatum, k: usize, upper: usize) -> Result<(), Failure> {
    if k == 0 || k > upper {
        return Err(Failure::Usage(format!("degree k={k} must lie in 1..={upper} for {}", d.ty)));
    }
    Ok(())
}

fn rep(args: &RepArgs, out: &mut dyn Write) -> Outcome {
    let d = args.target.datum()?;
    let rep = build_rep(&d);
    let report = check_defining_relations(&d, &rep.mats);
    let _ = writeln!(out, "{}: dim V = {}, defining relations: {}", d.ty, d.dim(), report.summary());
    write_json(&args.json, &rep_json(&rep, report.all_passed()))?;
    Ok(status_code(report.all_passed()))
}

fn rmatrix(args: &RmatrixArgs, out: &mut dyn Write) -> Outcome {
    let d = args.target.datum()?;
    let rep = build_rep(&d);
    let r = build_rmatrix(&d);
    let data = spectral_data(&d)?;
    let mut report = intertwining_check(&rep, &r);
    report.extend(spectral_verify(&rep, &r, &data));
    let (w, w_report) = verify_w_characterization(&d, &args.numeric.eval_point)?;
    report.extend(w_report);
    let _ = writeln!(out, "{}: R-matrix of size {}, dim W = {}: {}", d.ty, r.dim(), w.dim_w, report.summary());
    let mut value = rmatrix_json(&r);
    value["eigenvalues"] = json!(data.eigenvalues.iter().map(|c| serde_json::to_value(c).expect("json")).collect::<Vec<_>>());
    value["dim_w"] = json!(w.dim_w);
    value["checks"] = serde_json::to_value(&report).expect("json");
    write_json(&args.json, &value)?;
    Ok(status_code(report.all_passed()))
}

fn wedge(args: &WedgeArgs, out: &mut dyn Write) -> Outcome {
    let d = args.target.datum()?;
    check_degree(&d, args.k, d.dim())?;
    let config = WedgeConfig { cap: args.numeric.cap, eval_point: args.numeric.eval_point.clone(), ..WedgeConfig::default() };
    let space = build_wedge_space(&d, args.k, &config)?;
    let mut report = verify_decomposition(&space)?;
    report.extend(space.check_well_defined());
    let fam = d.kind().classical();
    let found = find_highest_weight_vectors(&space);
    // Components in the predicted order when k ≤ n, else as found.
    let order: Vec<_> = if args.k <= d.n() {
        expected_components(&space)?.into_iter().map(|(w, _)| w).collect()
    } else {
        found.iter().map(|(w, _)| w.clone()).collect()
    };
    let mut components = Vec::new();
    let mut highest = Vec::new();
    for w in order.iter().filter(|w| found.iter().any(|(f, _)| f == *w)) {
        let dim = weyl_dimension(fam, w)?;
        components.push(dim);
        let v = &found.iter().find(|(f, _)| f == w).expect("filtered").1;
        highest.push(json!({"weight": w.0, "dim": dim, "vector": space.format_vector(v)}));
    }
    let _ = writeln!(out, "{} k={}: dim V^k = {}, components {:?}: {}", d.ty, args.k, space.dim(), components, report.summary());
    let value = json!({
        "type": d.kind().cli_name(),
        "n": d.n(),
        "k": args.k,
        "dims": {"total": space.dim(), "components": components},
        "basis": space.normal_basis,
        "weights": space.basis_weights.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
        "highest_weight_vectors": highest,
        "checks": report,
    });
    write_json(&args.json, &value)?;
    Ok(status_code(report.all_passed()))
}

fn crystal(args: &CrystalArgs, out: &mut dyn Write) -> Outcome {
    let d = args.target.datum()?;
    check_degree(&d, args.k, d.n())?;
    let config = WedgeConfig { cap: args.numeric.cap, eval_point: args.numeric.eval_point.clone(), ..crystal_config() };
    let mut data = crystal_of(&d, args.k, &config)?;
    let colors: Vec<usize> = (0..=d.n()).collect();
    let mut report = verify_crystal_axioms(&data, &colors);
    let convention = label_crystal(&mut data, &config)?;
    report.extend(verify_zero_arrows(&data));
    let g = &data.graph;
    let _ = writeln!(
        out,
        "{} k={}: {} vertices, {} edges, labeled by {}: {}",
        d.ty,
        args.k,
        g.vertices.len(),
        g.edges.len(),
        convention,
        report.summary()
    );
    write_json(&args.json, &g.to_json())?;
    if let Some(p) = &args.dot {
        write_file(p, &emit_dot(g))?;
    }
    Ok(status_code(report.all_passed()))
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let SuiteName::All = args.suite;
    let opts = SuiteOptions {
        max_n: args.max_n,
        kind: args.kind.map(Into::into),
        eval_point: args.numeric.eval_point.clone(),
        cap: args.numeric.cap,
        seed: args.seed,
    };
    let report = run_suite(&opts);
    for c in &report.cases {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let _ = writeln!(out, "{status} {} ({:.2}s)", c.id, c.wall_time);
        if c.status != Status::Pass {
            let _ = writeln!(out, "     {}", c.witness.as_deref().unwrap_or(""));
        }
    }
    let s = report.summary;
    let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
    if let Some(p) = &args.json {
        write_file(p, &(emit_report(&report) + "\n"))?;
    }
    Ok(report.exit_code())
}

/// Parses `args` (program name first) and runs the command, writing human
/// output to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Rep(a) => rep(a, out),
        Command::Rmatrix(a) => rmatrix(a, out),
        Command::Wedge(a) => wedge(a, out),
        Command::Crystal(a) => crystal(a, out),
        Command::Verify(a) => verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "qwedge: {}", f.message());
            f.exit_code()
        }
    }
}

