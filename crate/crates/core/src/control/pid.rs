//! Discrete PID with output clamping, conditional-integration anti-windup and
//! a first-order filter on the derivative.

use crate::error::{Error, Result};
use crate::scalar::{clamp_sym, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidConfig<T> {
    pub kp: T,
    pub ki: T,
    pub kd: T,
    /// Output clamp, volt.
    pub u_limit: T,
    /// Derivative filter time constant, s. Zero disables filtering.
    pub tf_d: T,
}

impl Default for PidConfig<f64> {
    fn default() -> Self {
        Self {
            kp: 0.05,
            ki: 1.0,
            kd: 0.0,
            u_limit: crate::motor::DEFAULT_VOLTAGE_LIMIT,
            tf_d: 0.01,
        }
    }
}

impl<T: Scalar> PidConfig<T> {
    pub fn zero(u_limit: T) -> Self {
        Self {
            kp: T::zero(),
            ki: T::zero(),
            kd: T::zero(),
            u_limit,
            tf_d: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("kp", self.kp),
            ("ki", self.ki),
            ("kd", self.kd),
            ("tf_d", self.tf_d),
        ] {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and >= 0, got {v}"),
                ));
            }
        }
        if !self.u_limit.is_finite() || self.u_limit <= T::zero() {
            return Err(Error::invalid(
                "u_limit",
                format!("must be finite and > 0, got {}", self.u_limit),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PidState<T> {
    pub integral: T,
    pub derivative: T,
    /// `None` until the first update, so the first sample produces no derivative kick.
    pub prev_error: Option<T>,
}

impl<T: Scalar> PidState<T> {
    pub fn new() -> Self {
        Self {
            integral: T::zero(),
            derivative: T::zero(),
            prev_error: None,
        }
    }
}

/// One controller update for tracking error `error` over a sample of `dt`.
///
/// The integral is accumulated by rectangles (`I += e·dt`) before the output is
/// formed. If the unclamped output exceeds `u_limit` in the same direction as
/// `e`, the accumulator keeps its previous value.
pub fn pid_update<T: Scalar>(
    cfg: &PidConfig<T>,
    st: &PidState<T>,
    error: T,
    dt: T,
) -> Result<(T, PidState<T>)> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::invalid(
            "dt",
            format!("must be finite and > 0, got {dt}"),
        ));
    }
    if !error.is_finite() {
        return Err(Error::NonFinite {
            name: "error",
            value: error.as_f64(),
        });
    }

    let de = st.prev_error.map_or(T::zero(), |prev| error - prev);
    // backward-Euler discretisation of d/dt · 1/(tf·s + 1)
    let derivative = (cfg.tf_d * st.derivative + de) / (cfg.tf_d + dt);

    let raw = |integral: T| cfg.kp * error + cfg.ki * integral + cfg.kd * derivative;

    let mut integral = st.integral + error * dt;
    let mut u = raw(integral);
    if u.abs() > cfg.u_limit && u.signum() == error.signum() {
        integral = st.integral;
        u = raw(integral);
    }

    let next = PidState {
        integral,
        derivative,
        prev_error: Some(error),
    };
    Ok((clamp_sym(u, cfg.u_limit), next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg(kp: f64, ki: f64, kd: f64) -> PidConfig<f64> {
        PidConfig {
            kp,
            ki,
            kd,
            u_limit: 24.0,
            tf_d: 0.0,
        }
    }

    #[test]
    fn pure_proportional() {
        let (u, _) = pid_update(&cfg(2.0, 0.0, 0.0), &PidState::new(), 3.0, 0.001).unwrap();
        assert_eq!(u, 6.0);
    }

    #[test]
    fn rectangular_integration() {
        let c = cfg(0.0, 1.0, 0.0);
        let (u1, st) = pid_update(&c, &PidState::new(), 1.0, 0.5).unwrap();
        let (u2, _) = pid_update(&c, &st, 1.0, 0.5).unwrap();
        assert_eq!(u1, 0.5);
        assert_eq!(u2, 1.0);
    }

    #[test]
    fn anti_windup_freezes_integral() {
        let c = PidConfig {
            kp: 10.0,
            ki: 1.0,
            kd: 0.0,
            u_limit: 5.0,
            tf_d: 0.0,
        };
        let st = PidState {
            integral: 0.2,
            derivative: 0.0,
            prev_error: Some(1.0),
        };
        let (u, st2) = pid_update(&c, &st, 1.0, 0.1).unwrap();
        assert_eq!(u, 5.0);
        assert_eq!(st2.integral, st.integral);
        let (_, st3) = pid_update(&c, &st2, 1.0, 0.1).unwrap();
        assert_eq!(st3.integral, st.integral);

        // opposite-sign error unwinds
        let (_, st4) = pid_update(&c, &st3, -0.1, 0.1).unwrap();
        assert!(st4.integral < st3.integral);
    }

    #[test]
    fn derivative_filter() {
        let c = PidConfig {
            kp: 0.0,
            ki: 0.0,
            kd: 1.0,
            u_limit: 1e9,
            tf_d: 0.01,
        };
        let (u0, st) = pid_update(&c, &PidState::new(), 1.0, 0.001).unwrap();
        assert_eq!(u0, 0.0);
        let (u1, _) = pid_update(&c, &st, 2.0, 0.001).unwrap();
        // (0.01·0 + 1)/(0.01 + 0.001)
        assert_relative_eq!(u1, 1.0 / 0.011, max_relative = 1e-12);

        let raw = PidConfig { tf_d: 0.0, ..c };
        let (_, st) = pid_update(&raw, &PidState::new(), 1.0, 0.001).unwrap();
        let (u1, _) = pid_update(&raw, &st, 2.0, 0.001).unwrap();
        assert_relative_eq!(u1, 1000.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_dt() {
        assert!(pid_update(&cfg(1.0, 0.0, 0.0), &PidState::new(), 1.0, 0.0).is_err());
        assert!(PidConfig {
            kp: -1.0,
            ..cfg(0.0, 0.0, 0.0)
        }
        .validate()
        .is_err());
        assert!(PidConfig {
            u_limit: 0.0,
            ..cfg(0.0, 0.0, 0.0)
        }
        .validate()
        .is_err());
    }

    proptest! {
        #[test]
        fn zero_gains_zero_output(errs in prop::collection::vec(-100.0..100.0f64, 1..50)) {
            let c = PidConfig::zero(24.0);
            let mut st = PidState::new();
            for e in errs {
                let (u, next) = pid_update(&c, &st, e, 1e-3).unwrap();
                prop_assert_eq!(u, 0.0);
                st = next;
            }
        }

        #[test]
        fn pure_transition(kp in 0.0..5.0f64, ki in 0.0..5.0f64, kd in 0.0..1.0f64, e in -50.0..50.0f64, i in -10.0..10.0f64) {
            let c = PidConfig { kp, ki, kd, u_limit: 24.0, tf_d: 0.01 };
            let st = PidState { integral: i, derivative: 0.3, prev_error: Some(1.0) };
            let a = pid_update(&c, &st, e, 1e-3).unwrap();
            let b = pid_update(&c, &st, e, 1e-3).unwrap();
            prop_assert_eq!(a, b);
            prop_assert!(a.0.abs() <= 24.0);
        }
    }
}
