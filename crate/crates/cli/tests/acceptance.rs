//! Acceptance gate: runs the full verification suite through rank 4 and
//! prints one line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use qwedge_cli::suite::{run_suite, Status, SuiteOptions};

/// (criterion, what it covers, time budget in seconds summed over its cases)
const CRITERIA: [(u8, &str, f64); 9] = [
    (1, "defining relations of the vector representation", 30.0),
    (2, "intertwining property of the R-matrix", 120.0),
    (3, "spectral decomposition and exceptional eigenvalue", 120.0),
    (4, "relation space W as image and kernel", 60.0),
    (5, "dimensions and highest weight vectors of V^k", 300.0),
    (6, "wedge identities and worked examples", f64::INFINITY),
    (7, "crystal base and its 0-arrows", 600.0),
    (8, "operator words on extremal vectors", f64::INFINITY),
    (9, "degeneration at q = 1 and the sl_n warm-up", f64::INFINITY),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let report = run_suite(&SuiteOptions { max_n: 4, ..SuiteOptions::default() });
    let mut all_ok = true;
    for (c, what, budget) in CRITERIA {
        let cases: Vec<_> = report.criterion(c).collect();
        let failed: Vec<_> = cases.iter().filter(|x| x.status != Status::Pass).collect();
        let time: f64 = cases.iter().map(|x| x.wall_time).sum();
        let ok = !cases.is_empty() && failed.is_empty() && time < budget;
        all_ok &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {c}: {verdict} ({} cases, {time:.2}s) {what}", cases.len());
        for f in failed {
            println!("    {} [{:?}] {}", f.id, f.status, f.witness.as_deref().unwrap_or(""));
        }
        if time >= budget {
            println!("    over the {budget}s budget");
        }
    }
    let s = report.summary;
    println!("acceptance: {} pass, {} fail, {} skipped in {:.1}s", s.pass, s.fail, s.skipped, start.elapsed().as_secs_f64());
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
