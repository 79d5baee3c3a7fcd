//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use critline_cli::{Check, Suite, Verifier};

/// Runtime budgets per criterion; `None` has no stated budget.
fn budget(k: u32) -> Option<Duration> {
    match k {
        1 | 3 | 4 => Some(Duration::from_secs(5)),
        2 => Some(Duration::from_secs(60)),
        5 | 7 => Some(Duration::from_secs(180)),
        _ => None,
    }
}

fn summarize(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} = {:.6e} ({})", c.check, c.measured, c.expected))
        .collect::<Vec<_>>()
        .join("; ")
}

fn verify_report(workers: u32, dir: &std::path::Path) -> Result<(Vec<u8>, Duration), String> {
    let out = dir.join(format!("verify-{workers}.json"));
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_critline"))
        .args([
            "verify",
            "--suite",
            "fast",
            "--workers",
            &workers.to_string(),
            "--out",
        ])
        .arg(&out)
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !status.success() {
        return Err(format!(
            "verify with {workers} workers exited with {status}"
        ));
    }
    Ok((std::fs::read(&out).map_err(|e| e.to_string())?, elapsed))
}

fn determinism() -> (bool, String) {
    let dir = tempfile::tempdir().expect("temporary directory");
    let one = verify_report(1, dir.path());
    let eight = verify_report(8, dir.path());
    match (one, eight) {
        (Ok((a, ta)), Ok((b, tb))) => {
            let within_budget = ta.max(tb) <= Duration::from_secs(120);
            let pass = a == b && within_budget;
            let detail = format!(
                "reports {} ({} bytes); runtimes {:.2?} / {:.2?} (budget 120s)",
                if a == b { "byte-identical" } else { "differ" },
                a.len(),
                ta,
                tb
            );
            (pass, detail)
        }
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let verifier = Verifier::new(Suite::Fast).expect("verifier");
    let mut failures = 0;
    for k in critline_cli::verify::CRITERIA {
        let start = Instant::now();
        let result = verifier.criterion(k);
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(checks) => {
                let within_budget = budget(k).is_none_or(|b| elapsed <= b);
                let all = checks.iter().all(|c| c.pass);
                (all && within_budget, summarize(&checks))
            }
            Err(e) => (false, format!("error: {e:#}")),
        };
        let limit = budget(k).map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!(
            "criterion {k:>2}: {} [{elapsed:.2?}{limit}] {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        failures += usize::from(!pass);
    }
    let (pass, detail) = determinism();
    println!(
        "criterion 13: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    failures += usize::from(!pass);
    println!("acceptance: {} of 13 criteria passed", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
