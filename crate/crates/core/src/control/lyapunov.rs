//! Reaching-condition monitor for `V = ½s²`.

use crate::error::{Error, Result};
use crate::integrate::SimulationTrace;
use crate::scalar::Scalar;

pub fn lyapunov_value<T: Scalar>(s: T) -> T {
    T::half() * s * s
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReachingReport<T> {
    /// Times of interior samples outside the boundary layer where `V̇ >= tolerance`.
    pub violations: Vec<T>,
    /// Largest finite-difference `V̇` among samples with `|s| > phi`;
    /// `None` if no interior sample lies outside the layer.
    pub max_vdot_outside_layer: Option<T>,
    pub tolerance: T,
}

impl<T: Scalar> ReachingReport<T> {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scaled tolerance `1e-9 · max V` over the trace, for callers that want to
/// absorb roundoff on nearly-flat `V`.
pub fn scaled_tolerance<T: Scalar>(trace: &SimulationTrace<T>) -> T {
    let max_v = trace
        .rows()
        .iter()
        .map(|r| r.v_lyap)
        .fold(T::zero(), T::max);
    T::lit(1e-9) * max_v
}

/// Strict reaching check: every interior sample with `|s| > phi` must have
/// central-difference `V̇ < 0`.
pub fn check_reaching<T: Scalar>(trace: &SimulationTrace<T>, phi: T) -> Result<ReachingReport<T>> {
    check_reaching_with_tolerance(trace, phi, T::zero())
}

pub fn check_reaching_with_tolerance<T: Scalar>(
    trace: &SimulationTrace<T>,
    phi: T,
    tolerance: T,
) -> Result<ReachingReport<T>> {
    let rows = trace.rows();
    if rows.len() < 3 {
        return Err(Error::TraceTooShort {
            len: rows.len(),
            min: 3,
        });
    }
    let mut violations = Vec::new();
    let mut max_vdot: Option<T> = None;
    for w in rows.windows(3) {
        let (prev, cur, next) = (&w[0], &w[1], &w[2]);
        if cur.s.abs() <= phi {
            continue;
        }
        let vdot = (next.v_lyap - prev.v_lyap) / (next.t - prev.t);
        max_vdot = Some(max_vdot.map_or(vdot, |m| m.max(vdot)));
        if vdot >= tolerance {
            violations.push(cur.t);
        }
    }
    Ok(ReachingReport {
        violations,
        max_vdot_outside_layer: max_vdot,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::TraceRow;

    fn trace_from_s(s: &[f64]) -> SimulationTrace<f64> {
        let rows = s
            .iter()
            .enumerate()
            .map(|(j, &s)| TraceRow {
                t: j as f64 * 1e-3,
                s,
                v_lyap: lyapunov_value(s),
                ..TraceRow::zero()
            })
            .collect();
        SimulationTrace::from_rows(rows)
    }

    #[test]
    fn values() {
        assert_eq!(lyapunov_value(0.0), 0.0);
        assert_eq!(lyapunov_value(2.0), 2.0);
        assert_eq!(lyapunov_value(-2.0), 2.0);
    }

    #[test]
    fn monotone_decrease_has_no_violations() {
        let s: Vec<f64> = (0..50).map(|j| 10.0 - 0.1 * j as f64).collect();
        let r = check_reaching(&trace_from_s(&s), 1.0).unwrap();
        assert!(r.is_satisfied());
        assert!(r.max_vdot_outside_layer.unwrap() < 0.0);
    }

    #[test]
    fn constant_v_is_flagged_everywhere() {
        let s = vec![2.0_f64.sqrt(); 10];
        let r = check_reaching(&trace_from_s(&s), 0.5).unwrap();
        assert_eq!(r.violations.len(), 8);
    }

    #[test]
    fn samples_inside_layer_are_ignored() {
        let s = vec![0.3; 10];
        let r = check_reaching(&trace_from_s(&s), 0.5).unwrap();
        assert!(r.is_satisfied());
        assert_eq!(r.max_vdot_outside_layer, None);
    }

    #[test]
    fn scaled_tolerance_absorbs_flat_v() {
        let s = vec![1.0; 10];
        let t = trace_from_s(&s);
        let tol = scaled_tolerance(&t);
        assert_eq!(tol, 0.5e-9);
        assert!(check_reaching_with_tolerance(&t, 0.5, tol)
            .unwrap()
            .is_satisfied());
    }

    #[test]
    fn short_trace() {
        assert_eq!(
            check_reaching(&trace_from_s(&[1.0, 0.5]), 0.0),
            Err(Error::TraceTooShort { len: 2, min: 3 })
        );
    }
}
