//! Experiment scenarios: setpoint, horizon, initial state and a load or
//! friction disturbance profile.

use crate::error::{Error, Result};
use crate::motor::{rpm_to_rad_s, MotorState};
use crate::scalar::Scalar;

/// Bench calibration of the setpoint potentiometer.
pub const RPM_PER_VOLT: f64 = 660.0;

/// Converts a setpoint in the bench's volt scale to shaft speed in rad/s.
pub fn setpoint_to_speed<T: Scalar>(volts: T) -> Result<T> {
    if !volts.is_finite() || volts < T::zero() {
        return Err(Error::invalid(
            "setpoint_volts",
            format!("must be finite and >= 0, got {volts}"),
        ));
    }
    Ok(rpm_to_rad_s(volts * T::lit(RPM_PER_VOLT)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisturbanceKind {
    None,
    /// Load torque switched on at `t_on` and kept.
    LoadStep,
    /// Load torque on `[t_on, t_off)`.
    LoadPulse,
    /// Additional viscous friction switched on at `t_on` and kept.
    FrictionStep,
}

impl DisturbanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DisturbanceKind::None => "none",
            DisturbanceKind::LoadStep => "load_step",
            DisturbanceKind::LoadPulse => "load_pulse",
            DisturbanceKind::FrictionStep => "friction_step",
        }
    }
}

impl std::str::FromStr for DisturbanceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(DisturbanceKind::None),
            "load_step" => Ok(DisturbanceKind::LoadStep),
            "load_pulse" => Ok(DisturbanceKind::LoadPulse),
            "friction_step" => Ok(DisturbanceKind::FrictionStep),
            other => Err(format!(
                "unknown disturbance kind `{other}` (expected none, load_step, load_pulse or friction_step)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceProfile<T> {
    pub kind: DisturbanceKind,
    /// N·m for load kinds, N·m·s for `FrictionStep`.
    pub magnitude: T,
    pub t_on: T,
    /// Release time, used by `LoadPulse` only.
    pub t_off: T,
}

/// Disturbance inputs at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disturbance<T> {
    /// Load torque c_r, N·m.
    pub load_torque: T,
    /// Viscous friction added to the plant's f, N·m·s.
    pub extra_friction: T,
}

impl<T: Scalar> Disturbance<T> {
    pub fn zero() -> Self {
        Self {
            load_torque: T::zero(),
            extra_friction: T::zero(),
        }
    }
}

impl<T: Scalar> DisturbanceProfile<T> {
    pub fn none() -> Self {
        Self {
            kind: DisturbanceKind::None,
            magnitude: T::zero(),
            t_on: T::zero(),
            t_off: T::zero(),
        }
    }

    pub fn load_pulse(magnitude: T, t_on: T, t_off: T) -> Self {
        Self {
            kind: DisturbanceKind::LoadPulse,
            magnitude,
            t_on,
            t_off,
        }
    }

    pub fn load_step(magnitude: T, t_on: T) -> Self {
        Self {
            kind: DisturbanceKind::LoadStep,
            magnitude,
            t_on,
            t_off: t_on,
        }
    }

    pub fn friction_step(magnitude: T, t_on: T) -> Self {
        Self {
            kind: DisturbanceKind::FrictionStep,
            magnitude,
            t_on,
            t_off: t_on,
        }
    }

    pub fn is_none(&self) -> bool {
        self.kind == DisturbanceKind::None
    }

    /// Onset time, or `None` when there is no disturbance.
    pub fn onset(&self) -> Option<T> {
        (!self.is_none()).then_some(self.t_on)
    }

    pub fn validate(&self, t_end: T) -> Result<()> {
        if self.is_none() {
            return Ok(());
        }
        if !self.magnitude.is_finite() || self.magnitude < T::zero() {
            return Err(Error::invalid(
                "magnitude",
                format!("must be finite and >= 0, got {}", self.magnitude),
            ));
        }
        if !(self.t_on >= T::zero() && self.t_on <= t_end) {
            return Err(Error::invalid(
                "t_on",
                format!("must lie in [0, t_end = {t_end}], got {}", self.t_on),
            ));
        }
        if self.kind == DisturbanceKind::LoadPulse
            && !(self.t_off >= self.t_on && self.t_off <= t_end)
        {
            return Err(Error::invalid(
                "t_off",
                format!(
                    "must lie in [t_on = {}, t_end = {t_end}], got {}",
                    self.t_on, self.t_off
                ),
            ));
        }
        Ok(())
    }
}

/// Disturbance inputs at time `t`.
pub fn disturbance_at<T: Scalar>(profile: &DisturbanceProfile<T>, t: T) -> Disturbance<T> {
    let active = match profile.kind {
        DisturbanceKind::None => false,
        DisturbanceKind::LoadStep | DisturbanceKind::FrictionStep => t >= profile.t_on,
        DisturbanceKind::LoadPulse => t >= profile.t_on && t < profile.t_off,
    };
    if !active {
        return Disturbance::zero();
    }
    match profile.kind {
        DisturbanceKind::FrictionStep => Disturbance {
            load_torque: T::zero(),
            extra_friction: profile.magnitude,
        },
        _ => Disturbance {
            load_torque: profile.magnitude,
            extra_friction: T::zero(),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario<T> {
    /// Command in the bench's volt scale (1 V ≈ 660 RPM).
    pub setpoint_volts: T,
    pub t_end: T,
    pub disturbance: DisturbanceProfile<T>,
    pub initial_state: MotorState<T>,
}

impl<T: Scalar> Scenario<T> {
    /// Step to `setpoint_volts` from rest with no disturbance.
    pub fn step(setpoint_volts: T, t_end: T) -> Self {
        Self {
            setpoint_volts,
            t_end,
            disturbance: DisturbanceProfile::none(),
            initial_state: MotorState::zero(),
        }
    }

    pub fn with_disturbance(mut self, disturbance: DisturbanceProfile<T>) -> Self {
        self.disturbance = disturbance;
        self
    }

    /// Speed setpoint in rad/s.
    pub fn target_speed(&self) -> Result<T> {
        setpoint_to_speed(self.setpoint_volts)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t_end.is_finite() || self.t_end <= T::zero() {
            return Err(Error::invalid(
                "t_end",
                format!("must be finite and > 0, got {}", self.t_end),
            ));
        }
        setpoint_to_speed(self.setpoint_volts)?;
        if !self.initial_state.is_finite() {
            return Err(Error::invalid("initial_state", "must be finite"));
        }
        self.disturbance.validate(self.t_end)
    }
}

impl Default for Scenario<f64> {
    /// 1 V (660 RPM) step over 20 s with an 8 N·m load pulse on [10, 12) s.
    fn default() -> Self {
        Scenario::step(1.0, 20.0).with_disturbance(DisturbanceProfile::load_pulse(8.0, 10.0, 12.0))
    }
}
