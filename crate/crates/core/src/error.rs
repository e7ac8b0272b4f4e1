use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite input `{name}` = {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("integration blowup at t = {t} s (i = {current} A, omega = {omega} rad/s)")]
    IntegrationBlowup { t: f64, current: f64, omega: f64 },

    #[error("controller fault at t = {t} s: non-finite output {u}")]
    ControllerFault { t: f64, u: f64 },

    #[error("singular sliding surface: c·B = c1/L = 0, c1 must be non-zero")]
    SingularSurface,

    #[error("reaching condition violated: kappa·(c·B) = {product} must be > 0")]
    UnstableSwitchingGain { product: f64 },

    #[error("trace too short: {len} rows, need at least {min}")]
    TraceTooShort { len: usize, min: usize },

    #[error("speed not settled before the disturbance at t_on = {t_on} s")]
    DisturbanceBeforeSettling { t_on: f64 },

    #[error("disturbance onset t_on = {t_on} s is outside the trace [{t_start}, {t_end}] s")]
    OnsetOutsideTrace { t_on: f64, t_start: f64, t_end: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
