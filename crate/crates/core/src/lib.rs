//! Closed-loop speed control of a permanent-magnet DC motor.
//!
//! The crate covers the plant (armature/shaft ODEs, state-space matrices,
//! transfer function), a sampled-data simulator with Euler and RK4 plant
//! integration, a sliding-mode controller with equivalent control and an
//! optional boundary layer, a PID baseline with anti-windup, and the metrics
//! used to compare the two (settling time, disturbance drop, control effort,
//! chattering).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`). The `*F64`
//! aliases below are what most callers want.
//!
//! ```
//! use dcmotor_core::{simulate, Controller, MotorParamsF64, ScenarioF64, SimConfigF64, SlidingSurfaceF64};
//!
//! let params = MotorParamsF64::default();
//! let surface = SlidingSurfaceF64::new(0.1, 1.0, 16.0, 2.0).unwrap();
//! let controller = Controller::smc(surface, &params).unwrap();
//! let cfg = SimConfigF64::new(1e-4, 1e-3, 1.0).unwrap();
//! let scenario = ScenarioF64::step(1.0, 1.0);
//! let trace = simulate(&controller, &scenario, &params, &cfg).unwrap();
//! assert_eq!(trace.len(), 1001);
//! ```

pub mod control;
pub mod error;
pub mod integrate;
pub mod metrics;
pub mod motor;
pub mod scalar;
pub mod scenario;

pub use control::lyapunov::{
    check_reaching, check_reaching_with_tolerance, lyapunov_value, ReachingReport,
};
pub use control::pid::{pid_update, PidConfig, PidState};
pub use control::smc::{
    equivalent_control, reference_state, sign, sliding_value, smc_control, SlidingSurface,
    SmcOutput,
};
pub use control::{ControlOutput, Controller};
pub use error::{Error, Result};
pub use integrate::{simulate, step_euler, step_rk4, Method, SimConfig, SimulationTrace, TraceRow};
pub use metrics::{
    chattering_metrics, control_effort, disturbance_drop, overshoot_pct, settling_time, Metrics,
};
pub use motor::{
    derivative, rad_s_to_rpm, rpm_to_rad_s, state_matrices, steady_state_speed, transfer_function,
    MotorParams, MotorState, StateMatrices, TransferFunction,
};
pub use scalar::Scalar;
pub use scenario::{
    disturbance_at, setpoint_to_speed, Disturbance, DisturbanceKind, DisturbanceProfile, Scenario,
};

pub type MotorParamsF64 = MotorParams<f64>;
pub type MotorStateF64 = MotorState<f64>;
pub type StateMatricesF64 = StateMatrices<f64>;
pub type SlidingSurfaceF64 = SlidingSurface<f64>;
pub type PidConfigF64 = PidConfig<f64>;
pub type ControllerF64 = Controller<f64>;
pub type SimConfigF64 = SimConfig<f64>;
pub type ScenarioF64 = Scenario<f64>;
pub type SimulationTraceF64 = SimulationTrace<f64>;
pub type MetricsF64 = Metrics<f64>;

pub type MotorParamsF32 = MotorParams<f32>;
pub type MotorStateF32 = MotorState<f32>;
pub type SimConfigF32 = SimConfig<f32>;
pub type ScenarioF32 = Scenario<f32>;
