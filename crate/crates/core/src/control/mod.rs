//! Speed controllers: the PID baseline and the sliding-mode controller.

pub mod lyapunov;
pub mod pid;
pub mod smc;

use crate::error::Result;
use crate::motor::{state_matrices, MotorParams, MotorState, StateMatrices};
use crate::scalar::Scalar;

use self::pid::{pid_update, PidConfig, PidState};
use self::smc::{reference_state, smc_control, SlidingSurface};

/// What a controller emits at one sample. For PID `u_eq` and `s` are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput<T> {
    pub u: T,
    pub u_eq: T,
    pub s: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Controller<T> {
    Pid(PidConfig<T>, PidState<T>),
    Smc(SlidingSurface<T>, StateMatrices<T>),
}

impl<T: Scalar> Controller<T> {
    pub fn pid(cfg: PidConfig<T>) -> Result<Self> {
        cfg.validate()?;
        Ok(Controller::Pid(cfg, PidState::new()))
    }

    /// Sliding-mode controller designed on the nominal plant `params`.
    /// Fails if `kappa·(c·B) <= 0` for that plant.
    pub fn smc(surface: SlidingSurface<T>, params: &MotorParams<T>) -> Result<Self> {
        let m = state_matrices(params)?;
        surface.check_reaching_gain(&m)?;
        Ok(Controller::Smc(surface, m))
    }

    /// Like [`smc`](Self::smc) without the reaching-gain check.
    pub fn smc_unchecked(surface: SlidingSurface<T>, params: &MotorParams<T>) -> Result<Self> {
        Ok(Controller::Smc(surface, state_matrices(params)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Controller::Pid(..) => "pid",
            Controller::Smc(..) => "smc",
        }
    }

    /// Clears PID memory. No-op for SMC, which is static.
    pub fn reset(&mut self) {
        if let Controller::Pid(_, st) = self {
            *st = PidState::new();
        }
    }

    /// Computes the control for speed setpoint `omega_d` from the measured state.
    pub fn update(&mut self, omega_d: T, x: MotorState<T>, dt: T) -> Result<ControlOutput<T>> {
        match self {
            Controller::Pid(cfg, st) => {
                let (u, next) = pid_update(cfg, st, omega_d - x.omega, dt)?;
                *st = next;
                Ok(ControlOutput {
                    u,
                    u_eq: T::zero(),
                    s: T::zero(),
                })
            }
            Controller::Smc(surface, m) => {
                let out = smc_control(surface, m, reference_state(m, omega_d), x);
                Ok(ControlOutput {
                    u: out.u,
                    u_eq: out.u_eq,
                    s: out.s,
                })
            }
        }
    }
}
