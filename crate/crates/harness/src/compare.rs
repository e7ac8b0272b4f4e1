//! PID vs SMC comparison on a shared plant and scenario.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::experiment::{run_experiment, summarize, RunOutcome};
use crate::trace_csv::emit_csv;

/// Thresholds a comparison is judged against.
pub const MIN_SETTLING_RATIO: f64 = 3.0;
pub const MIN_DROP_RATIO: f64 = 4.0;
pub const MIN_PID_DROP_PCT: f64 = 20.0;
pub const MAX_SMC_DROP_PCT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratios {
    /// PID settling time over SMC settling time.
    pub settling: f64,
    /// PID drop over SMC drop; `None` if either drop is undefined.
    pub drop: Option<f64>,
    /// PID RMS voltage over SMC RMS voltage.
    pub effort: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: Option<f64>,
    pub threshold: String,
    pub passed: bool,
}

#[derive(Debug)]
pub struct ComparisonReport {
    pub pid: Result<RunOutcome, HarnessError>,
    pub smc: Result<RunOutcome, HarnessError>,
    /// Present only when both runs completed.
    pub ratios: Option<Ratios>,
    pub checks: Vec<Check>,
}

/// `a / b`, with equal operands (including two infinities or two zeros) giving 1.
fn ratio(a: f64, b: f64) -> f64 {
    if a == b {
        1.0
    } else {
        a / b
    }
}

impl ComparisonReport {
    pub fn is_complete(&self) -> bool {
        self.ratios.is_some()
    }

    pub fn all_passed(&self) -> bool {
        self.is_complete() && self.checks.iter().all(|c| c.passed)
    }

    fn build(pid: Result<RunOutcome, HarnessError>, smc: Result<RunOutcome, HarnessError>) -> Self {
        let (ratios, checks) = match (&pid, &smc) {
            (Ok(p), Ok(s)) => {
                let (mp, ms) = (&p.metrics, &s.metrics);
                let r = Ratios {
                    settling: ratio(mp.settling_time, ms.settling_time),
                    drop: mp
                        .dist_drop_pct
                        .zip(ms.dist_drop_pct)
                        .map(|(a, b)| ratio(a, b)),
                    effort: ratio(mp.control_rms, ms.control_rms),
                };
                let at_least = |name, v: Option<f64>, min: f64| Check {
                    name,
                    value: v,
                    threshold: format!(">= {min}"),
                    passed: v.is_some_and(|v| v >= min),
                };
                let at_most = |name, v: Option<f64>, max: f64| Check {
                    name,
                    value: v,
                    threshold: format!("<= {max}"),
                    passed: v.is_some_and(|v| v <= max),
                };
                let checks = vec![
                    at_least("settling_ratio", Some(r.settling), MIN_SETTLING_RATIO),
                    at_least("drop_ratio", r.drop, MIN_DROP_RATIO),
                    at_least("pid_drop_pct", mp.dist_drop_pct, MIN_PID_DROP_PCT),
                    at_most("smc_drop_pct", ms.dist_drop_pct, MAX_SMC_DROP_PCT),
                    Check {
                        name: "smc_reaching",
                        value: s.reaching.as_ref().map(|r| r.violations.len() as f64),
                        threshold: "== 0 violations".to_string(),
                        passed: s.passed(),
                    },
                ];
                (Some(r), checks)
            }
            _ => (None, Vec::new()),
        };
        Self {
            pid,
            smc,
            ratios,
            checks,
        }
    }

    /// Plain-text report. Contains no timestamps, so identical inputs give
    /// identical bytes.
    pub fn render(&self) -> String {
        let mut out = String::from("PID vs SMC comparison\n=====================\n\n");
        for (label, run) in [("pid", &self.pid), ("smc", &self.smc)] {
            let _ = writeln!(out, "[{label}]");
            match run {
                Ok(o) => out.push_str(&summarize(o)),
                Err(e) => {
                    let _ = writeln!(out, "FAULT {e}");
                }
            }
            out.push('\n');
        }
        match &self.ratios {
            None => out.push_str("comparison INCOMPLETE: at least one run faulted\n"),
            Some(r) => {
                let opt =
                    |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.4}"));
                let _ = writeln!(out, "[ratios pid/smc]");
                let _ = writeln!(out, "settling          {:.4}", r.settling);
                let _ = writeln!(out, "drop              {}", opt(r.drop));
                let _ = writeln!(out, "effort            {:.4}", r.effort);
                out.push_str("\n[checks]\n");
                for c in &self.checks {
                    let _ = writeln!(
                        out,
                        "{:<4} {:<16} {:>12} {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        opt(c.value),
                        c.threshold
                    );
                }
                let _ = writeln!(
                    out,
                    "\noverall {}",
                    if self.all_passed() { "PASS" } else { "FAIL" }
                );
            }
        }
        out
    }
}

fn mismatch(a: &ExperimentConfig, b: &ExperimentConfig) -> Option<&'static str> {
    if a.motor != b.motor {
        Some("motor")
    } else if a.sim != b.sim {
        Some("sim")
    } else if a.scenario != b.scenario {
        Some("scenario")
    } else {
        None
    }
}

/// Runs both configs (concurrently) and assembles the report. Fails only if
/// the configs do not share motor, sim and scenario; run faults are recorded
/// in the report.
pub fn compare(
    cfg_pid: &ExperimentConfig,
    cfg_smc: &ExperimentConfig,
) -> Result<ComparisonReport, HarnessError> {
    if let Some(block) = mismatch(cfg_pid, cfg_smc) {
        return Err(HarnessError::ScenarioMismatch(block));
    }
    let (pid, smc) = std::thread::scope(|scope| {
        let pid = scope.spawn(|| run_experiment(cfg_pid));
        let smc = run_experiment(cfg_smc);
        (pid.join().expect("pid run thread panicked"), smc)
    });
    Ok(ComparisonReport::build(pid, smc))
}

/// Files written by [`write_comparison`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonFiles {
    pub pid_csv: Option<PathBuf>,
    pub smc_csv: Option<PathBuf>,
    pub report: PathBuf,
}

/// Writes `<name>_pid.csv`, `<name>_smc.csv` (for completed runs) and
/// `<name>_report.txt` into `dir`.
pub fn write_comparison(
    report: &ComparisonReport,
    dir: &Path,
    name: &str,
) -> Result<ComparisonFiles, HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let write_run = |run: &Result<RunOutcome, HarnessError>,
                     suffix: &str|
     -> Result<Option<PathBuf>, HarnessError> {
        match run {
            Ok(o) => {
                let path = dir.join(format!("{name}_{suffix}.csv"));
                emit_csv(&o.trace, &path)?;
                Ok(Some(path))
            }
            Err(_) => Ok(None),
        }
    };
    let pid_csv = write_run(&report.pid, "pid")?;
    let smc_csv = write_run(&report.smc, "smc")?;
    let report_path = dir.join(format!("{name}_report.txt"));
    std::fs::write(&report_path, report.render()).map_err(|e| HarnessError::io(&report_path, e))?;
    Ok(ComparisonFiles {
        pid_csv,
        smc_csv,
        report: report_path,
    })
}
