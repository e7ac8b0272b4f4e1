//! Single experiment runs.

use dcmotor_core::{
    check_reaching, simulate, Metrics, MetricsF64, ReachingReport, SimulationTraceF64,
};

use crate::config::{ControllerKind, ExperimentConfig};
use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub controller: ControllerKind,
    pub trace: SimulationTraceF64,
    pub metrics: MetricsF64,
    /// Reaching-condition check, SMC runs only.
    pub reaching: Option<ReachingReport<f64>>,
}

impl RunOutcome {
    /// False when an SMC run violated the reaching condition outside its
    /// boundary layer.
    pub fn passed(&self) -> bool {
        self.reaching.as_ref().is_none_or(|r| r.is_satisfied())
    }
}

/// Simulates `cfg` and computes its metrics. Deterministic.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutcome, HarnessError> {
    cfg.validate().map_err(HarnessError::Invalid)?;
    let controller = cfg.build_controller().map_err(HarnessError::Invalid)?;
    let trace = simulate(&controller, &cfg.scenario, &cfg.motor, &cfg.sim)
        .map_err(HarnessError::Simulation)?;
    let metrics = Metrics::from_trace(&trace, &cfg.scenario).map_err(HarnessError::Simulation)?;
    let reaching = match cfg.controller {
        ControllerKind::Pid => None,
        ControllerKind::Smc => {
            Some(check_reaching(&trace, cfg.surface.phi).map_err(HarnessError::Simulation)?)
        }
    };
    Ok(RunOutcome {
        controller: cfg.controller,
        trace,
        metrics,
        reaching,
    })
}

/// Human-readable metric lines for one run.
pub fn summarize(outcome: &RunOutcome) -> String {
    let m = &outcome.metrics;
    let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.4}"));
    let mut s = format!(
        "controller        {}\nsettling_time_s   {:.4}\novershoot_pct     {:.4}\ndist_drop_pct     {}\nrecovery_time_s   {}\ncontrol_rms_v     {:.4}\ncontrol_peak_v    {:.4}\nswitch_count      {}\nswitch_rate_hz    {:.4}\n",
        outcome.controller.as_str(),
        m.settling_time,
        m.overshoot_pct,
        opt(m.dist_drop_pct),
        opt(m.recovery_time),
        m.control_rms,
        m.control_peak,
        m.switch_count,
        m.switch_rate,
    );
    if let Some(r) = &outcome.reaching {
        s.push_str(&format!("reaching_violations {}\n", r.violations.len()));
        if let Some(t) = r.violations.first() {
            s.push_str(&format!("first_violation_s {t:.4}\n"));
        }
    }
    s
}
