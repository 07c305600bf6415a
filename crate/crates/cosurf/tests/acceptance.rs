//! Acceptance run: one PASS/FAIL line per criterion, each within its time
//! budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::Result;
use cosurf::formats::GroupoidSpec;
use cosurf::suites;
use cosurf::Report;
use cosurf_core::algebra::FiniteGroup;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Result<Report>,
}

fn groups(names: &[&str]) -> Vec<FiniteGroup> {
    names.iter().map(|n| FiniteGroup::by_name(n).expect("built-in group")).collect()
}

fn exp_log() -> Result<Report> {
    suites::series_roundtrip(&[GroupoidSpec::Nat, GroupoidSpec::Interval(0, 6)], 100, 6, 2, 0)
}

fn product_integral() -> Result<Report> {
    let mut r = suites::product_integral_suite(&[GroupoidSpec::Nat, GroupoidSpec::Interval(0, 4)], 20, 0)?;
    r.extend(suites::expmap(&GroupoidSpec::Nat, None, 4, &[8, 16, 32, 64])?);
    r.extend(suites::expmap(&GroupoidSpec::Interval(0, 4), None, 4, &[8, 16, 32, 64])?);
    Ok(r)
}

fn semigroup() -> Result<Report> {
    suites::semigroup_suite(&groups(&suites::SEMIGROUP_GROUPS), &[0.25, 0.5, 1.0, 2.0], 1e-12)
}

fn markov() -> Result<Report> {
    suites::markov_suite(&groups(&["Z2", "Z3", "S3"]), 1e-12)
}

fn cut_paste() -> Result<Report> {
    suites::cut_paste_suite(&groups(&["Z2", "Z3", "S3"]), 1e-12)
}

fn reorder() -> Result<Report> {
    suites::reorder_suite(&FiniteGroup::cyclic(3)?, &FiniteGroup::symmetric3(), 1e-12)
}

fn extension() -> Result<Report> {
    suites::extension_suite(&suites::ExtensionOptions::default())
}

fn measure_series() -> Result<Report> {
    suites::measure_series_suite(&GroupoidSpec::Interval(0, 5), 5, &FiniteGroup::cyclic(3)?, 1e-12)
}

fn nonregular() -> Result<Report> {
    suites::nonregular_suite(&suites::NONREGULAR_TS, 1_000_000)
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "exp/log bijection", budget: secs(5), run: exp_log },
        Criterion { id: 2, title: "product integral and Euler convergence", budget: secs(30), run: product_integral },
        Criterion { id: 3, title: "semigroup axioms", budget: secs(5), run: semigroup },
        Criterion { id: 4, title: "Markov property", budget: secs(60), run: markov },
        Criterion { id: 5, title: "cutting/pasting factorization", budget: secs(60), run: cut_paste },
        Criterion { id: 6, title: "reordering (in)variance", budget: secs(30), run: reorder },
        Criterion { id: 7, title: "dimension extension", budget: secs(120), run: extension },
        Criterion { id: 8, title: "measure-valued series multiplicativity", budget: secs(5), run: measure_series },
        Criterion { id: 9, title: "non-regularity witness", budget: secs(10), run: nonregular },
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut all = true;
    for c in criteria.iter().filter(|c| only.is_none_or(|k| k == c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let line = match &outcome {
            Ok(r) => {
                let failed: Vec<&str> = r.failures().map(|f| f.name.as_str()).collect();
                let ok = r.pass && in_time;
                all &= ok;
                format!(
                    "{} criterion {}: {} ({} cases, {} failed, max residual {:.2e}, {:.2}s / {}s){}",
                    if ok { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    r.cases.len(),
                    failed.len(),
                    r.max_residual,
                    elapsed.as_secs_f64(),
                    c.budget.as_secs(),
                    if failed.is_empty() { String::new() } else { format!(" failing: {}", failed.join("; ")) }
                )
            }
            Err(e) => {
                all = false;
                format!("FAIL criterion {}: {} (error: {e:#})", c.id, c.title)
            }
        };
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
