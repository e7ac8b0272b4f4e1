//! Permanent-magnet DC motor: armature circuit plus shaft.
//!
//! ```text
//! L di/dt = u - R i - k omega
//! J domega/dt = k i - f omega - c_r
//! ```
//!
//! The torque constant and the back-EMF constant are the same number `k`
//! (SI units make N·m/A and V·s/rad identical). State is `[i, omega]`, input
//! is the armature voltage `u`, and the load torque `c_r` enters the shaft
//! equation as a disturbance.
//!
//! Note on the sign of `A[0][1]`: back-EMF opposes the supply, so the entry is
//! `-k/L`. Some printed derivations show `+k/L` symbolically while their
//! numeric matrix carries `-1/0.0028`; the numeric form is the physical one.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Nominal supply voltage of the bench motor.
pub const NOMINAL_VOLTAGE: f64 = 24.0;

/// Default armature voltage limit. Higher than [`NOMINAL_VOLTAGE`] because the
/// bench parameters with `k = 1` need ~145 V to hold 660 RPM.
pub const DEFAULT_VOLTAGE_LIMIT: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotorParams<T> {
    /// Armature resistance R, ohm.
    pub resistance: T,
    /// Armature inductance L, henry.
    pub inductance: T,
    /// Rotor inertia J, kg·m².
    pub inertia: T,
    /// Viscous friction f, N·m·s.
    pub friction: T,
    /// Torque / back-EMF constant k, N·m/A.
    pub torque_constant: T,
    /// Armature voltage limit, volt. Applied symmetrically at the plant input.
    pub voltage_limit: T,
}

impl<T: Scalar> Default for MotorParams<T> {
    /// Bench motor: R = 5.5 Ω, L = 2.8 mH, J = 0.0163 kg·m², f = 0.2 N·m·s, k = 1.
    fn default() -> Self {
        Self {
            resistance: T::lit(5.5),
            inductance: T::lit(0.0028),
            inertia: T::lit(0.0163),
            friction: T::lit(0.2),
            torque_constant: T::one(),
            voltage_limit: T::lit(DEFAULT_VOLTAGE_LIMIT),
        }
    }
}

impl<T: Scalar> MotorParams<T> {
    /// Same as the default but with zero friction, which reproduces the
    /// frictionless state matrices.
    pub fn frictionless() -> Self {
        Self {
            friction: T::zero(),
            ..Self::default()
        }
    }

    pub fn with_friction(mut self, friction: T) -> Self {
        self.friction = friction;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("R", self.resistance),
            ("L", self.inductance),
            ("J", self.inertia),
            ("k", self.torque_constant),
            ("u_max", self.voltage_limit),
        ];
        for (name, v) in positive {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        if !self.friction.is_finite() || self.friction < T::zero() {
            return Err(Error::invalid(
                "f",
                format!("must be finite and >= 0, got {}", self.friction),
            ));
        }
        Ok(())
    }

    /// Electrical time constant L/R.
    pub fn electrical_time_constant(&self) -> T {
        self.inductance / self.resistance
    }
}

/// Plant state. Also used for its time derivative (A/s, rad/s²).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MotorState<T> {
    /// Armature current, A.
    pub current: T,
    /// Shaft speed, rad/s.
    pub omega: T,
}

impl<T: Scalar> MotorState<T> {
    pub fn new(current: T, omega: T) -> Self {
        Self { current, omega }
    }

    pub fn zero() -> Self {
        Self {
            current: T::zero(),
            omega: T::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.current.is_finite() && self.omega.is_finite()
    }

    pub fn norm(&self) -> T {
        self.current.hypot(self.omega)
    }

    /// Stored energy ½L·i² + ½J·ω².
    pub fn energy(&self, params: &MotorParams<T>) -> T {
        T::half()
            * (params.inductance * self.current * self.current
                + params.inertia * self.omega * self.omega)
    }
}

impl<T: Scalar> Add for MotorState<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.current + rhs.current, self.omega + rhs.omega)
    }
}

impl<T: Scalar> Sub for MotorState<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.current - rhs.current, self.omega - rhs.omega)
    }
}

impl<T: Scalar> Mul<T> for MotorState<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.current * rhs, self.omega * rhs)
    }
}

/// `ẋ = A x + B u`, `y = C x + D u` with `x = [i, omega]` and `y = omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateMatrices<T> {
    pub a: [[T; 2]; 2],
    pub b: [T; 2],
    pub c_out: [T; 2],
    pub d: T,
}

impl<T: Scalar> StateMatrices<T> {
    /// `A·x + B·u`.
    pub fn apply(&self, x: MotorState<T>, u: T) -> MotorState<T> {
        MotorState::new(
            self.a[0][0] * x.current + self.a[0][1] * x.omega + self.b[0] * u,
            self.a[1][0] * x.current + self.a[1][1] * x.omega + self.b[1] * u,
        )
    }

    pub fn output(&self, x: MotorState<T>, u: T) -> T {
        self.c_out[0] * x.current + self.c_out[1] * x.omega + self.d * u
    }

    pub fn trace(&self) -> T {
        self.a[0][0] + self.a[1][1]
    }

    pub fn determinant(&self) -> T {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    /// A 2×2 matrix is Hurwitz iff trace < 0 and det > 0.
    pub fn is_hurwitz(&self) -> bool {
        self.trace() < T::zero() && self.determinant() > T::zero()
    }
}

/// Speed response `Ω(s) = num/den · U(s) − dist_num/den · C_r(s)`.
/// Coefficients are in ascending powers of `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction<T> {
    pub num: Vec<T>,
    pub den: Vec<T>,
    pub dist_num: Vec<T>,
}

impl<T: Scalar> TransferFunction<T> {
    /// Voltage-to-speed gain at s = 0.
    pub fn dc_gain(&self) -> T {
        self.num[0] / self.den[0]
    }

    /// Load-torque-to-speed-drop gain at s = 0.
    pub fn disturbance_dc_gain(&self) -> T {
        self.dist_num[0] / self.den[0]
    }
}

fn check_finite<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite {
            name,
            value: v.as_f64(),
        })
    }
}

/// Plant rates with an extra viscous friction term, no validation.
#[inline]
pub(crate) fn rates<T: Scalar>(
    x: MotorState<T>,
    u: T,
    load_torque: T,
    extra_friction: T,
    p: &MotorParams<T>,
) -> MotorState<T> {
    let k = p.torque_constant;
    MotorState::new(
        (u - p.resistance * x.current - k * x.omega) / p.inductance,
        (k * x.current - (p.friction + extra_friction) * x.omega - load_torque) / p.inertia,
    )
}

/// Time derivative of the plant state for armature voltage `u` and load torque `c_r`.
pub fn derivative<T: Scalar>(
    state: MotorState<T>,
    u: T,
    c_r: T,
    params: &MotorParams<T>,
) -> Result<MotorState<T>> {
    params.validate()?;
    check_finite("i", state.current)?;
    check_finite("omega", state.omega)?;
    check_finite("u", u)?;
    check_finite("c_r", c_r)?;
    Ok(rates(state, u, c_r, T::zero(), params))
}

pub fn state_matrices<T: Scalar>(params: &MotorParams<T>) -> Result<StateMatrices<T>> {
    params.validate()?;
    let MotorParams {
        resistance: r,
        inductance: l,
        inertia: j,
        friction: f,
        torque_constant: k,
        ..
    } = *params;
    Ok(StateMatrices {
        a: [[-r / l, -k / l], [k / j, -f / j]],
        b: [T::one() / l, T::zero()],
        c_out: [T::zero(), T::one()],
        d: T::zero(),
    })
}

pub fn transfer_function<T: Scalar>(params: &MotorParams<T>) -> Result<TransferFunction<T>> {
    params.validate()?;
    let MotorParams {
        resistance: r,
        inductance: l,
        inertia: j,
        friction: f,
        torque_constant: k,
        ..
    } = *params;
    Ok(TransferFunction {
        num: vec![k],
        den: vec![r * f + k * k, r * j + l * f, l * j],
        dist_num: vec![r, l],
    })
}

/// Equilibrium speed for constant `u` and `c_r`: `(k·u − R·c_r)/(R·f + k²)`.
pub fn steady_state_speed<T: Scalar>(u: T, c_r: T, params: &MotorParams<T>) -> Result<T> {
    params.validate()?;
    let k = params.torque_constant;
    let r = params.resistance;
    Ok((k * u - r * c_r) / (r * params.friction + k * k))
}

/// Current that holds `omega` in equilibrium against friction and `c_r`.
pub fn steady_state_current<T: Scalar>(omega: T, c_r: T, params: &MotorParams<T>) -> T {
    (params.friction * omega + c_r) / params.torque_constant
}

pub fn rad_s_to_rpm<T: Scalar>(omega: T) -> T {
    omega * T::lit(60.0) / (T::two() * T::lit(std::f64::consts::PI))
}

pub fn rpm_to_rad_s<T: Scalar>(rpm: T) -> T {
    rpm * T::two() * T::lit(std::f64::consts::PI) / T::lit(60.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn origin_is_equilibrium() {
        let p = MotorParams::<f64>::default();
        let d = derivative(MotorState::zero(), 0.0, 0.0, &p).unwrap();
        assert_eq!(d, MotorState::zero());
    }

    #[test]
    fn full_voltage_from_rest() {
        let p = MotorParams::<f64>::default();
        let d = derivative(MotorState::zero(), 24.0, 0.0, &p).unwrap();
        assert_relative_eq!(d.current, 24.0 / 0.0028, max_relative = 1e-12);
        assert_relative_eq!(d.current, 8571.428571428571, max_relative = 1e-9);
        assert_eq!(d.omega, 0.0);
    }

    #[test]
    fn frictionless_rates_match_numeric_matrix() {
        let p = MotorParams::<f64>::frictionless();
        let d = derivative(MotorState::new(1.0, 10.0), 0.0, 0.0, &p).unwrap();
        // numeric A with f = 0, k = 1
        let a = [[-5.5 / 0.0028, -1.0 / 0.0028], [1.0 / 0.0163, 0.0]];
        assert_relative_eq!(
            d.current,
            a[0][0] * 1.0 + a[0][1] * 10.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(d.current, -5535.714285714285, max_relative = 1e-9);
        assert_relative_eq!(d.omega, a[1][0], max_relative = 1e-12);
        assert_relative_eq!(d.omega, 61.34969325153374, max_relative = 1e-9);
    }

    #[test]
    fn rejects_non_finite_inputs() {
        let p = MotorParams::<f64>::default();
        assert!(matches!(
            derivative(MotorState::new(f64::NAN, 0.0), 0.0, 0.0, &p),
            Err(Error::NonFinite { name: "i", .. })
        ));
        assert!(matches!(
            derivative(MotorState::zero(), f64::INFINITY, 0.0, &p),
            Err(Error::NonFinite { name: "u", .. })
        ));
        assert!(matches!(
            derivative(MotorState::zero(), 0.0, f64::NAN, &p),
            Err(Error::NonFinite { name: "c_r", .. })
        ));
    }

    #[test]
    fn rejects_invalid_params() {
        let mut p = MotorParams::<f64>::default();
        p.inductance = 0.0;
        assert!(matches!(
            state_matrices(&p),
            Err(Error::InvalidParameter { name: "L", .. })
        ));
        let p = MotorParams::<f64>::default().with_friction(-0.1);
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "f", .. })
        ));
    }

    #[test]
    fn frictionless_matrices() {
        let m = state_matrices(&MotorParams::<f64>::frictionless()).unwrap();
        assert_relative_eq!(m.a[0][0], -5.5 / 0.0028, max_relative = 1e-15);
        assert_relative_eq!(m.a[0][0], -1964.2857142857142, max_relative = 1e-9);
        assert_relative_eq!(m.a[0][1], -357.14285714285717, max_relative = 1e-9);
        assert_relative_eq!(m.a[1][0], 1.0 / 0.0163, max_relative = 1e-15);
        assert_eq!(m.a[1][1], 0.0);
        assert_relative_eq!(m.b[0], 357.14285714285717, max_relative = 1e-9);
        assert_eq!(m.b[1], 0.0);
        assert_eq!(m.c_out, [0.0, 1.0]);
        assert_eq!(m.d, 0.0);
    }

    #[test]
    fn friction_enters_a11() {
        let m = state_matrices(&MotorParams::<f64>::default()).unwrap();
        assert_relative_eq!(m.a[1][1], -0.2 / 0.0163, max_relative = 1e-15);
        assert_relative_eq!(m.a[1][1], -12.269938650306749, max_relative = 1e-9);
    }

    #[test]
    fn transfer_function_coefficients() {
        let tf = transfer_function(&MotorParams::<f64>::default()).unwrap();
        assert_eq!(tf.num, vec![1.0]);
        assert_relative_eq!(tf.den[0], 2.1, max_relative = 1e-12);
        assert_relative_eq!(tf.den[1], 0.09021, max_relative = 1e-12);
        assert_relative_eq!(tf.den[2], 4.564e-5, max_relative = 1e-12);
        assert_eq!(tf.dist_num, vec![5.5, 0.0028]);

        let tf0 = transfer_function(&MotorParams::<f64>::frictionless()).unwrap();
        assert_relative_eq!(tf0.dc_gain(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn steady_state_speeds() {
        let p = MotorParams::<f64>::default();
        assert_relative_eq!(
            steady_state_speed(24.0, 0.0, &p).unwrap(),
            24.0 / 2.1,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            steady_state_speed(24.0, 0.0, &p).unwrap(),
            11.428571428571429,
            max_relative = 1e-9
        );
        let p0 = MotorParams::<f64>::frictionless();
        assert_relative_eq!(
            steady_state_speed(24.0, 0.0, &p0).unwrap(),
            24.0,
            max_relative = 1e-15
        );
        assert_eq!(steady_state_speed(0.0, 0.0, &p).unwrap(), 0.0);
    }

    #[test]
    fn rpm_conversion() {
        assert_relative_eq!(
            rpm_to_rad_s(660.0_f64),
            69.11503837897544,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            rad_s_to_rpm(rpm_to_rad_s(1234.5_f64)),
            1234.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn works_in_f32() {
        let p = MotorParams::<f32>::default();
        let d = derivative(MotorState::zero(), 24.0_f32, 0.0, &p).unwrap();
        assert_relative_eq!(d.current, 8571.428_f32, max_relative = 1e-5);
        assert!(state_matrices(&p).unwrap().is_hurwitz());
    }
}
