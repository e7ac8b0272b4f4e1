//! Fixed-step plant integration and the sampled-data closed loop.
//!
//! The plant is integrated with step `dt_plant`; the controller runs every
//! `dt_control` and its (saturated) output is held constant in between.

use crate::control::lyapunov::lyapunov_value;
use crate::control::Controller;
use crate::error::{Error, Result};
use crate::motor::{rates, MotorParams, MotorState};
use crate::scalar::{clamp_sym, Scalar};
use crate::scenario::{disturbance_at, Disturbance, Scenario};

/// |i| or |ω| beyond this aborts the integration.
pub const BLOWUP_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Euler,
    Rk4,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Euler => "euler",
            Method::Rk4 => "rk4",
        }
    }

    fn advance<T: Scalar>(
        self,
        x: MotorState<T>,
        u: T,
        d: Disturbance<T>,
        p: &MotorParams<T>,
        dt: T,
    ) -> MotorState<T> {
        let f = |x| rates(x, u, d.load_torque, d.extra_friction, p);
        match self {
            Method::Euler => x + f(x) * dt,
            Method::Rk4 => {
                let half = dt * T::half();
                let k1 = f(x);
                let k2 = f(x + k1 * half);
                let k3 = f(x + k2 * half);
                let k4 = f(x + k3 * dt);
                x + (k1 + (k2 + k3) * T::two() + k4) * (dt / T::lit(6.0))
            }
        }
    }

    /// One plant step, `u` and the disturbance held over the step.
    /// `t` is only used to label a blowup.
    pub fn step<T: Scalar>(
        self,
        x: MotorState<T>,
        u: T,
        d: Disturbance<T>,
        p: &MotorParams<T>,
        dt: T,
        t: T,
    ) -> Result<MotorState<T>> {
        let next = self.advance(x, u, d, p, dt);
        let limit = T::lit(BLOWUP_LIMIT);
        if !next.is_finite() || next.current.abs() > limit || next.omega.abs() > limit {
            return Err(Error::IntegrationBlowup {
                t: (t + dt).as_f64(),
                current: next.current.as_f64(),
                omega: next.omega.as_f64(),
            });
        }
        Ok(next)
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "euler" => Ok(Method::Euler),
            "rk4" => Ok(Method::Rk4),
            other => Err(format!(
                "unknown integration method `{other}` (expected euler or rk4)"
            )),
        }
    }
}

fn check_dt<T: Scalar>(dt: T) -> Result<()> {
    if dt > T::zero() && dt.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "dt",
            format!("must be finite and > 0, got {dt}"),
        ))
    }
}

/// Explicit Euler step with `u` and `c_r` held.
pub fn step_euler<T: Scalar>(
    state: MotorState<T>,
    u: T,
    c_r: T,
    params: &MotorParams<T>,
    dt: T,
) -> Result<MotorState<T>> {
    check_dt(dt)?;
    let d = Disturbance {
        load_torque: c_r,
        extra_friction: T::zero(),
    };
    Method::Euler.step(state, u, d, params, dt, T::zero())
}

/// Classical fourth-order Runge–Kutta step with `u` and `c_r` held.
pub fn step_rk4<T: Scalar>(
    state: MotorState<T>,
    u: T,
    c_r: T,
    params: &MotorParams<T>,
    dt: T,
) -> Result<MotorState<T>> {
    check_dt(dt)?;
    let d = Disturbance {
        load_torque: c_r,
        extra_friction: T::zero(),
    };
    Method::Rk4.step(state, u, d, params, dt, T::zero())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig<T> {
    pub dt_plant: T,
    pub dt_control: T,
    pub t_end: T,
    pub method: Method,
}

impl Default for SimConfig<f64> {
    fn default() -> Self {
        Self {
            dt_plant: 1e-4,
            dt_control: 1e-3,
            t_end: 20.0,
            method: Method::Rk4,
        }
    }
}

impl<T: Scalar> SimConfig<T> {
    /// RK4 configuration, validated.
    pub fn new(dt_plant: T, dt_control: T, t_end: T) -> Result<Self> {
        let cfg = Self {
            dt_plant,
            dt_control,
            t_end,
            method: Method::Rk4,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("dt_plant", self.dt_plant),
            ("dt_control", self.dt_control),
            ("t_end", self.t_end),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        if self.dt_plant > self.dt_control {
            return Err(Error::invalid("dt_plant", "must not exceed dt_control"));
        }
        if self.dt_control > self.t_end {
            return Err(Error::invalid("dt_control", "must not exceed t_end"));
        }
        let ratio = self.dt_control / self.dt_plant;
        if (ratio - ratio.round()).abs() > T::lit(1e-6) * ratio {
            return Err(Error::invalid(
                "dt_control",
                format!(
                    "must be an integer multiple of dt_plant ({} / {})",
                    self.dt_control, self.dt_plant
                ),
            ));
        }
        Ok(())
    }

    /// Plant steps per control sample.
    pub fn substeps(&self) -> usize {
        (self.dt_control / self.dt_plant)
            .round()
            .to_usize()
            .unwrap_or(1)
            .max(1)
    }

    /// Number of control intervals; the trace has one more row than this.
    pub fn control_steps(&self) -> usize {
        let q = self.t_end / self.dt_control;
        let nearest = q.round();
        let tol = T::lit(1e-6).max(T::epsilon() * T::lit(16.0)) * q.max(T::one());
        let n = if (q - nearest).abs() <= tol {
            nearest
        } else {
            q.floor()
        };
        n.to_usize().unwrap_or(0)
    }
}

/// One row per control instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow<T> {
    pub t: T,
    /// Speed setpoint, rad/s.
    pub setpoint: T,
    pub omega: T,
    pub current: T,
    /// Applied (saturated) armature voltage.
    pub u: T,
    pub u_eq: T,
    pub s: T,
    pub v_lyap: T,
    /// Load torque at this instant.
    pub c_r: T,
}

impl<T: Scalar> TraceRow<T> {
    pub fn zero() -> Self {
        let z = T::zero();
        Self {
            t: z,
            setpoint: z,
            omega: z,
            current: z,
            u: z,
            u_eq: z,
            s: z,
            v_lyap: z,
            c_r: z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimulationTrace<T> {
    rows: Vec<TraceRow<T>>,
}

impl<T: Scalar> SimulationTrace<T> {
    pub fn from_rows(rows: Vec<TraceRow<T>>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[TraceRow<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<TraceRow<T>> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRow<T>> {
        self.rows.last()
    }

    /// Rows with `t < t_cut`.
    pub fn before(&self, t_cut: T) -> &[TraceRow<T>] {
        let n = self.rows.partition_point(|r| r.t < t_cut);
        &self.rows[..n]
    }

    /// Rows with `t >= t_cut`.
    pub fn from_time(&self, t_cut: T) -> &[TraceRow<T>] {
        let n = self.rows.partition_point(|r| r.t < t_cut);
        &self.rows[n..]
    }
}

/// Runs the closed loop from `scenario.initial_state` over `[0, cfg.t_end]`.
///
/// At every control instant the controller sees the setpoint and the full
/// measured state, its output is clamped to `±u_max` and held for
/// `dt_control` while the plant takes `dt_control / dt_plant` steps. The
/// disturbance is sampled at the start of each plant step.
pub fn simulate<T: Scalar>(
    controller: &Controller<T>,
    scenario: &Scenario<T>,
    params: &MotorParams<T>,
    cfg: &SimConfig<T>,
) -> Result<SimulationTrace<T>> {
    params.validate()?;
    cfg.validate()?;
    scenario.validate()?;
    if (scenario.t_end - cfg.t_end).abs() > T::lit(1e-9) * cfg.t_end {
        return Err(Error::invalid(
            "t_end",
            format!(
                "scenario horizon {} differs from simulation horizon {}",
                scenario.t_end, cfg.t_end
            ),
        ));
    }

    let mut ctrl = controller.clone();
    ctrl.reset();
    let omega_d = scenario.target_speed()?;
    let n = cfg.control_steps();
    let substeps = cfg.substeps();
    let u_max = params.voltage_limit;

    let mut x = scenario.initial_state;
    let mut rows = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let t = cfg.dt_control * T::from_usize(j).unwrap();
        let out = ctrl.update(omega_d, x, cfg.dt_control)?;
        if !out.u.is_finite() {
            return Err(Error::ControllerFault {
                t: t.as_f64(),
                u: out.u.as_f64(),
            });
        }
        let u = clamp_sym(out.u, u_max);
        rows.push(TraceRow {
            t,
            setpoint: omega_d,
            omega: x.omega,
            current: x.current,
            u,
            u_eq: out.u_eq,
            s: out.s,
            v_lyap: lyapunov_value(out.s),
            c_r: disturbance_at(&scenario.disturbance, t).load_torque,
        });
        if j == n {
            break;
        }
        for m in 0..substeps {
            let ts = t + cfg.dt_plant * T::from_usize(m).unwrap();
            let d = disturbance_at(&scenario.disturbance, ts);
            x = cfg.method.step(x, u, d, params, cfg.dt_plant, ts)?;
        }
    }
    Ok(SimulationTrace { rows })
}
