//! `opmeans verify`.

use std::fmt::Write;

use opmeans_core::verify::{check_ids, SuiteReport};

/// Parses `LO..HI` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a range LO..HI"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((parse(lo)?, parse(hi)?))
        }
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

/// Expands `all` and splits a comma-separated check list.
pub fn parse_checks(s: &str) -> Vec<String> {
    if s.trim() == "all" {
        return check_ids().into_iter().map(String::from).collect();
    }
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:+.3e}"))
}

pub fn summary_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<18} {:>6} {:>6} {:>6} {:>11} {:>9}  status",
        "check", "pass", "fail", "inconc", "worst", "tol"
    );
    for s in &report.results {
        let status = if s.passed { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<18} {:>6} {:>6} {:>6} {:>11} {:>9}  {status}",
            s.check_id,
            s.passes,
            s.failures,
            s.inconclusive,
            fmt_opt(s.worst_margin),
            s.worst_tolerance.map_or_else(|| "-".into(), |t| format!("{t:.0e}")),
        );
        if !s.witness_seeds.is_empty() {
            let _ = writeln!(out, "    failing seeds: {:?}", s.witness_seeds);
        }
    }
    let failed = report.results.iter().filter(|s| !s.passed).count();
    let _ = writeln!(
        out,
        "{} checks, {} failed, {:.1} s",
        report.results.len(),
        failed,
        report.wall_clock_s
    );
    out
}
