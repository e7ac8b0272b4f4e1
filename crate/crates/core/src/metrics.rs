//! Comparison metrics computed from trace rows.
//!
//! All functions take row slices so callers can restrict them to a window
//! (e.g. [`SimulationTrace::before`] the disturbance onset).

use crate::control::smc::sign;
use crate::error::{Error, Result};
use crate::integrate::{SimulationTrace, TraceRow};
use crate::scalar::Scalar;
use crate::scenario::Scenario;

/// Settling band used throughout, percent of the target.
pub const DEFAULT_BAND_PCT: f64 = 2.0;

fn in_band<T: Scalar>(omega: T, target: T, band_pct: T) -> bool {
    (omega - target).abs() <= band_pct / T::lit(100.0) * target.abs()
}

fn check_target<T: Scalar>(target: T) -> Result<()> {
    if target > T::zero() && target.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "target",
            format!("must be finite and > 0, got {target}"),
        ))
    }
}

/// Earliest sample time after which every speed sample stays inside
/// `±band_pct %` of `target`. Infinity if the last sample is outside the band.
pub fn settling_time<T: Scalar>(rows: &[TraceRow<T>], target: T, band_pct: T) -> Result<T> {
    if rows.is_empty() {
        return Err(Error::TraceTooShort { len: 0, min: 1 });
    }
    check_target(target)?;
    let first_inside = rows
        .iter()
        .rposition(|r| !in_band(r.omega, target, band_pct))
        .map_or(0, |k| k + 1);
    Ok(rows.get(first_inside).map_or(T::infinity(), |r| r.t))
}

/// Peak overshoot above `target`, percent; zero if the speed never exceeds it.
pub fn overshoot_pct<T: Scalar>(rows: &[TraceRow<T>], target: T) -> Result<T> {
    check_target(target)?;
    let peak = rows.iter().map(|r| r.omega).fold(T::neg_infinity(), T::max);
    Ok((T::lit(100.0) * (peak - target) / target).max(T::zero()))
}

/// Speed drop caused by a disturbance starting at `t_on`.
///
/// Returns `(drop_pct, recovery_time)`: the drop is
/// `100·(target − min ω over [t_on, end])/target` clamped to `[0, 100]`; the
/// recovery time runs from `t_on` to the sample after which ω stays inside the
/// ±2 % band (zero if it never left, infinity if it never returns).
///
/// Fails if the speed has not settled before `t_on`.
pub fn disturbance_drop<T: Scalar>(rows: &[TraceRow<T>], target: T, t_on: T) -> Result<(T, T)> {
    check_target(target)?;
    let (first, last) = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::TraceTooShort { len: 0, min: 1 }),
    };
    if !(t_on >= first.t && t_on <= last.t) {
        return Err(Error::OnsetOutsideTrace {
            t_on: t_on.as_f64(),
            t_start: first.t.as_f64(),
            t_end: last.t.as_f64(),
        });
    }
    let split = rows.partition_point(|r| r.t < t_on);
    let band = T::lit(DEFAULT_BAND_PCT);
    let (pre, post) = rows.split_at(split);
    if pre.is_empty() || !settling_time(pre, target, band)?.is_finite() {
        return Err(Error::DisturbanceBeforeSettling {
            t_on: t_on.as_f64(),
        });
    }

    let hundred = T::lit(100.0);
    let min_omega = post.iter().map(|r| r.omega).fold(T::infinity(), T::min);
    let drop = (hundred * (target - min_omega) / target)
        .max(T::zero())
        .min(hundred);

    let recovery = match post.iter().rposition(|r| !in_band(r.omega, target, band)) {
        None => T::zero(),
        Some(k) => post.get(k + 1).map_or(T::infinity(), |r| r.t - t_on),
    };
    Ok((drop, recovery))
}

/// `(rms, peak)` of the applied voltage.
pub fn control_effort<T: Scalar>(rows: &[TraceRow<T>]) -> Result<(T, T)> {
    if rows.is_empty() {
        return Err(Error::TraceTooShort { len: 0, min: 1 });
    }
    let n = T::from_usize(rows.len()).unwrap();
    let sum_sq = rows.iter().fold(T::zero(), |acc, r| acc + r.u * r.u);
    let peak = rows.iter().fold(T::zero(), |acc, r| acc.max(r.u.abs()));
    Ok(((sum_sq / n).sqrt(), peak))
}

/// Sign changes of `u − u_eq` (zeros skipped) and their rate over the trace span.
pub fn chattering_metrics<T: Scalar>(rows: &[TraceRow<T>]) -> Result<(usize, T)> {
    let (first, last) = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::TraceTooShort { len: 0, min: 1 }),
    };
    let mut count = 0usize;
    let mut prev = T::zero();
    for r in rows {
        let sg = sign(r.u - r.u_eq);
        if sg == T::zero() {
            continue;
        }
        if prev != T::zero() && sg != prev {
            count += 1;
        }
        prev = sg;
    }
    let duration = last.t - first.t;
    let rate = if duration > T::zero() {
        T::from_usize(count).unwrap() / duration
    } else {
        T::zero()
    };
    Ok((count, rate))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics<T> {
    /// Seconds; infinity if not settled within the pre-disturbance window.
    pub settling_time: T,
    pub overshoot_pct: T,
    /// `None` when the speed did not settle before the disturbance.
    pub dist_drop_pct: Option<T>,
    pub recovery_time: Option<T>,
    pub control_rms: T,
    pub control_peak: T,
    pub switch_count: usize,
    pub switch_rate: T,
}

impl<T: Scalar> Metrics<T> {
    /// All metrics for a trace produced from `scenario`. Settling time and
    /// overshoot use the rows before the disturbance onset; with no
    /// disturbance the drop and recovery are zero.
    pub fn from_trace(trace: &SimulationTrace<T>, scenario: &Scenario<T>) -> Result<Self> {
        let target = scenario.target_speed()?;
        let band = T::lit(DEFAULT_BAND_PCT);
        let onset = scenario.disturbance.onset();
        let window = match onset {
            Some(t_on) => trace.before(t_on),
            None => trace.rows(),
        };
        let settling_time = if window.is_empty() {
            T::infinity()
        } else {
            settling_time(window, target, band)?
        };
        let overshoot_pct = overshoot_pct(window, target)?;
        let (dist_drop_pct, recovery_time) = match onset {
            None => (Some(T::zero()), Some(T::zero())),
            Some(t_on) => match disturbance_drop(trace.rows(), target, t_on) {
                Ok((d, r)) => (Some(d), Some(r)),
                Err(Error::DisturbanceBeforeSettling { .. }) => (None, None),
                Err(e) => return Err(e),
            },
        };
        let (control_rms, control_peak) = control_effort(trace.rows())?;
        let (switch_count, switch_rate) = chattering_metrics(trace.rows())?;
        Ok(Self {
            settling_time,
            overshoot_pct,
            dist_drop_pct,
            recovery_time,
            control_rms,
            control_peak,
            switch_count,
            switch_rate,
        })
    }
}
