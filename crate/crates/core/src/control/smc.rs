//! Sliding-mode speed controller.
//!
//! The surface is `s = c·(x_d − x)` on the tracking error. For a constant
//! reference `ṡ = −c·(A x + B u)`, so the equivalent control
//! `u_eq = −(c·B)⁻¹ c·A x` holds `ṡ = 0`, and adding `kappa·switch(s)` gives
//! `ṡ = −kappa·(c·B)·switch(s)`. With `V = ½s²`,
//! `V̇ = −kappa·(c·B)·s·switch(s) ≤ 0` whenever `kappa·(c·B) > 0`.
//!
//! `switch` is `sign(s)` for a zero boundary layer and `clamp(s/phi, −1, 1)`
//! otherwise.

use crate::error::{Error, Result};
use crate::motor::{MotorState, StateMatrices};
use crate::scalar::Scalar;

/// Three-valued sign with `sign(0) = 0`.
pub fn sign<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlidingSurface<T> {
    c1: T,
    c2: T,
    kappa: T,
    phi: T,
}

impl<T: Scalar> SlidingSurface<T> {
    /// Builds a surface `c = [c1, c2]` with switching gain `kappa` and boundary
    /// layer half-width `phi`.
    ///
    /// Because the armature input matrix is `B = [1/L, 0]` with `L > 0`,
    /// `c·B ≠ 0` reduces to `c1 ≠ 0` and the sign of `kappa·(c·B)` is the sign
    /// of `kappa·c1`.
    pub fn new(c1: T, c2: T, kappa: T, phi: T) -> Result<Self> {
        let s = Self::new_unchecked(c1, c2, kappa, phi)?;
        if !(kappa * c1 > T::zero()) {
            return Err(Error::UnstableSwitchingGain {
                product: (kappa * c1).as_f64(),
            });
        }
        Ok(s)
    }

    /// Like [`new`](Self::new) but accepts `kappa·(c·B) ≤ 0`. The surface is
    /// still required to be non-singular. Only useful for demonstrating what
    /// happens when the reaching condition is broken.
    pub fn new_unchecked(c1: T, c2: T, kappa: T, phi: T) -> Result<Self> {
        for (name, v) in [("c1", c1), ("c2", c2), ("kappa", kappa), ("phi", phi)] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name,
                    value: v.as_f64(),
                });
            }
        }
        if c1 == T::zero() {
            return Err(Error::SingularSurface);
        }
        if phi < T::zero() {
            return Err(Error::invalid("phi", format!("must be >= 0, got {phi}")));
        }
        Ok(Self { c1, c2, kappa, phi })
    }

    pub fn c(&self) -> [T; 2] {
        [self.c1, self.c2]
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Same surface with every weight multiplied by `alpha`.
    pub fn scaled(&self, alpha: T) -> Result<Self> {
        Self::new_unchecked(self.c1 * alpha, self.c2 * alpha, self.kappa, self.phi)
    }

    /// Same surface with a different boundary layer.
    pub fn with_phi(&self, phi: T) -> Result<Self> {
        Self::new_unchecked(self.c1, self.c2, self.kappa, phi)
    }

    /// `c·B` for the given plant.
    pub fn c_dot_b(&self, m: &StateMatrices<T>) -> T {
        self.c1 * m.b[0] + self.c2 * m.b[1]
    }

    /// Checks `c·B ≠ 0` and `kappa·(c·B) > 0` against an actual plant.
    pub fn check_reaching_gain(&self, m: &StateMatrices<T>) -> Result<()> {
        let cb = self.c_dot_b(m);
        if cb == T::zero() {
            return Err(Error::SingularSurface);
        }
        let product = self.kappa * cb;
        if !(product > T::zero()) {
            return Err(Error::UnstableSwitchingGain {
                product: product.as_f64(),
            });
        }
        Ok(())
    }

    /// Switching function: `sign(s)` or boundary-layer saturation.
    pub fn switch(&self, s: T) -> T {
        if self.phi == T::zero() {
            sign(s)
        } else {
            (s / self.phi).max(-T::one()).min(T::one())
        }
    }
}

/// Reference state for a speed setpoint: the equilibrium current that holds
/// `omega_d` against the nominal friction, `i_d = f·ω_d/k = −A₁₁/A₁₀·ω_d`.
pub fn reference_state<T: Scalar>(m: &StateMatrices<T>, omega_d: T) -> MotorState<T> {
    MotorState::new(-m.a[1][1] / m.a[1][0] * omega_d, omega_d)
}

/// `s = c₁·(i_d − i) + c₂·(ω_d − ω)`.
pub fn sliding_value<T: Scalar>(
    surface: &SlidingSurface<T>,
    x_d: MotorState<T>,
    x: MotorState<T>,
) -> T {
    let e = x_d - x;
    surface.c1 * e.current + surface.c2 * e.omega
}

/// `u_eq = −(c·B)⁻¹·(c·A·x)`.
pub fn equivalent_control<T: Scalar>(
    surface: &SlidingSurface<T>,
    m: &StateMatrices<T>,
    x: MotorState<T>,
) -> T {
    let [c1, c2] = surface.c();
    let ca0 = c1 * m.a[0][0] + c2 * m.a[1][0];
    let ca1 = c1 * m.a[0][1] + c2 * m.a[1][1];
    -(ca0 * x.current + ca1 * x.omega) / surface.c_dot_b(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmcOutput<T> {
    pub u: T,
    pub u_eq: T,
    pub s: T,
}

/// `u = u_eq + kappa·switch(s)`.
pub fn smc_control<T: Scalar>(
    surface: &SlidingSurface<T>,
    m: &StateMatrices<T>,
    x_d: MotorState<T>,
    x: MotorState<T>,
) -> SmcOutput<T> {
    let s = sliding_value(surface, x_d, x);
    let u_eq = equivalent_control(surface, m, x);
    SmcOutput {
        u: u_eq + surface.kappa * surface.switch(s),
        u_eq,
        s,
    }
}
