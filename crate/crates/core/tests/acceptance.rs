//! One PASS/FAIL line per acceptance criterion, each within its time limit.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quiverconf::config::SearchOptions;
use quiverconf::exceptional::run_exceptional;
use quiverconf::verify::{run_check, Status, VerifyOptions};
use quiverconf::DynkinKind;

struct Criterion {
    number: u8,
    checks: &'static [&'static str],
    limit: Duration,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { number: 1, checks: &["counts"], limit: Duration::from_secs(1) },
    Criterion { number: 2, checks: &["brauer"], limit: Duration::from_secs(5) },
    Criterion { number: 3, checks: &["A"], limit: Duration::from_secs(30) },
    Criterion { number: 4, checks: &["B", "C", "D"], limit: Duration::from_secs(120) },
    Criterion { number: 5, checks: &["hom"], limit: Duration::from_secs(30) },
    Criterion { number: 6, checks: &["E6", "E7", "F4", "G2"], limit: Duration::from_secs(120) },
    Criterion { number: 6, checks: &["E8"], limit: Duration::from_secs(900) },
    Criterion { number: 7, checks: &["structure"], limit: Duration::from_secs(60) },
];

/// The exceptional lists agree with the checked-in golden files.
fn golden_ok(kinds: &[&str]) -> bool {
    kinds.iter().all(|k| {
        let kind: DynkinKind = k.parse().expect("exceptional kind");
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{k}.json"));
        let Ok(text) = std::fs::read_to_string(path) else { return false };
        let Ok(stored) = serde_json::from_str::<serde_json::Value>(&text) else { return false };
        let Ok(r) = run_exceptional(kind, SearchOptions::default()) else { return false };
        let members: Vec<&Vec<usize>> = r.configurations.iter().map(|c| &c.members).collect();
        stored["configurations"] == serde_json::json!(members)
    })
}

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut all = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let mut details = Vec::new();
        let mut ok = true;
        for id in c.checks {
            let row = run_check(id, &opts).expect("known check");
            ok &= row.status == Status::Pass;
            details.push(format!("{id}: {} [{}]", row.computed, row.paper));
        }
        if c.number == 6 {
            let golden = golden_ok(c.checks);
            ok &= golden;
            details.push(format!("golden files {}", if golden { "match" } else { "differ" }));
        }
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        ok &= in_time;
        all &= ok;
        println!(
            "criterion {} {}: {} ({:.2}s of {}s) {}",
            c.number,
            c.checks.join("/"),
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            details.join("; ")
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
