//! Experiment configuration in a line-oriented `section.key = value` format.
//!
//! ```text
//! # comments start with '#'
//! motor.R = 5.5
//! sim.controller = smc
//! scenario.disturbance = load_pulse
//! ```
//!
//! Sections: `motor`, `sim`, `pid`, `surface`, `scenario`, `output`. Omitted
//! keys take their defaults; unknown or repeated keys are errors.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use dcmotor_core::{
    Controller, DisturbanceKind, Method, MotorParamsF64, PidConfigF64, ScenarioF64, SimConfigF64,
    SlidingSurfaceF64,
};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControllerKind {
    Pid,
    Smc,
}

impl ControllerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ControllerKind::Pid => "pid",
            ControllerKind::Smc => "smc",
        }
    }
}

impl std::str::FromStr for ControllerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pid" => Ok(ControllerKind::Pid),
            "smc" => Ok(ControllerKind::Smc),
            other => Err(format!(
                "unknown controller `{other}` (expected pid or smc)"
            )),
        }
    }
}

/// Sliding-surface gains as written in the config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceConfig {
    pub c1: f64,
    pub c2: f64,
    pub kappa: f64,
    pub phi: f64,
    /// Skip the `kappa·(c·B) > 0` check.
    pub unchecked: bool,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self {
            c1: 0.1,
            c2: 1.0,
            kappa: 16.0,
            phi: 2.0,
            unchecked: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub name: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            name: "run".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub motor: MotorParamsF64,
    pub sim: SimConfigF64,
    pub controller: ControllerKind,
    pub pid: PidConfigF64,
    pub surface: SurfaceConfig,
    pub scenario: ScenarioF64,
    pub output: OutputConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            motor: MotorParamsF64::default(),
            sim: SimConfigF64::default(),
            controller: ControllerKind::Smc,
            pid: PidConfigF64::default(),
            surface: SurfaceConfig::default(),
            scenario: ScenarioF64::default(),
            output: OutputConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn with_controller(mut self, kind: ControllerKind) -> Self {
        self.controller = kind;
        self
    }

    pub fn surface(&self) -> dcmotor_core::Result<SlidingSurfaceF64> {
        let s = &self.surface;
        if s.unchecked {
            SlidingSurfaceF64::new_unchecked(s.c1, s.c2, s.kappa, s.phi)
        } else {
            SlidingSurfaceF64::new(s.c1, s.c2, s.kappa, s.phi)
        }
    }

    /// Controller selected by `sim.controller`, designed on `motor`.
    pub fn build_controller(&self) -> dcmotor_core::Result<Controller<f64>> {
        match self.controller {
            ControllerKind::Pid => Controller::pid(self.pid),
            ControllerKind::Smc if self.surface.unchecked => {
                Controller::smc_unchecked(self.surface()?, &self.motor)
            }
            ControllerKind::Smc => Controller::smc(self.surface()?, &self.motor),
        }
    }

    /// Runs every invariant check the simulation would.
    pub fn validate(&self) -> dcmotor_core::Result<()> {
        self.motor.validate()?;
        self.sim.validate()?;
        self.scenario.validate()?;
        self.pid.validate()?;
        // the surface is validated whatever the selected controller, so a
        // config file never hides a broken block
        let surface = self.surface()?;
        if !self.surface.unchecked {
            surface.check_reaching_gain(&dcmotor_core::state_matrices(&self.motor)?)?;
        }
        Ok(())
    }

    /// Whether two configs describe the same plant, timing and scenario.
    pub fn same_experiment(&self, other: &Self) -> bool {
        self.motor == other.motor && self.sim == other.sim && self.scenario == other.scenario
    }
}

/// Every key in emission order.
const KEYS: &[&str] = &[
    "motor.R",
    "motor.L",
    "motor.J",
    "motor.f",
    "motor.k",
    "motor.u_max",
    "sim.dt_plant",
    "sim.dt_control",
    "sim.t_end",
    "sim.method",
    "sim.controller",
    "pid.kp",
    "pid.ki",
    "pid.kd",
    "pid.u_limit",
    "pid.tf_d",
    "surface.c1",
    "surface.c2",
    "surface.kappa",
    "surface.phi",
    "surface.unchecked",
    "scenario.setpoint_volts",
    "scenario.disturbance",
    "scenario.magnitude",
    "scenario.t_on",
    "scenario.t_off",
    "scenario.i0",
    "scenario.omega0",
    "output.dir",
    "output.name",
];

fn parse_num(key: &str, value: &str, line: usize) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError::type_mismatch(line, key, "a number", value))
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::type_mismatch(
            line,
            key,
            "true or false",
            value,
        )),
    }
}

fn parse_enum<E: std::str::FromStr<Err = String>>(
    value: &str,
    line: usize,
) -> Result<E, ConfigError> {
    value
        .parse::<E>()
        .map_err(|msg| ConfigError::invalid_value(line, msg))
}

fn set(cfg: &mut ExperimentConfig, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
    let num = || parse_num(key, value, line);
    match key {
        "motor.R" => cfg.motor.resistance = num()?,
        "motor.L" => cfg.motor.inductance = num()?,
        "motor.J" => cfg.motor.inertia = num()?,
        "motor.f" => cfg.motor.friction = num()?,
        "motor.k" => cfg.motor.torque_constant = num()?,
        "motor.u_max" => cfg.motor.voltage_limit = num()?,
        "sim.dt_plant" => cfg.sim.dt_plant = num()?,
        "sim.dt_control" => cfg.sim.dt_control = num()?,
        "sim.t_end" => {
            cfg.sim.t_end = num()?;
            cfg.scenario.t_end = cfg.sim.t_end;
        }
        "sim.method" => cfg.sim.method = parse_enum::<Method>(value, line)?,
        "sim.controller" => cfg.controller = parse_enum::<ControllerKind>(value, line)?,
        "pid.kp" => cfg.pid.kp = num()?,
        "pid.ki" => cfg.pid.ki = num()?,
        "pid.kd" => cfg.pid.kd = num()?,
        "pid.u_limit" => cfg.pid.u_limit = num()?,
        "pid.tf_d" => cfg.pid.tf_d = num()?,
        "surface.c1" => cfg.surface.c1 = num()?,
        "surface.c2" => cfg.surface.c2 = num()?,
        "surface.kappa" => cfg.surface.kappa = num()?,
        "surface.phi" => cfg.surface.phi = num()?,
        "surface.unchecked" => cfg.surface.unchecked = parse_bool(key, value, line)?,
        "scenario.setpoint_volts" => cfg.scenario.setpoint_volts = num()?,
        "scenario.disturbance" => {
            cfg.scenario.disturbance.kind = parse_enum::<DisturbanceKind>(value, line)?
        }
        "scenario.magnitude" => cfg.scenario.disturbance.magnitude = num()?,
        "scenario.t_on" => cfg.scenario.disturbance.t_on = num()?,
        "scenario.t_off" => cfg.scenario.disturbance.t_off = num()?,
        "scenario.i0" => cfg.scenario.initial_state.current = num()?,
        "scenario.omega0" => cfg.scenario.initial_state.omega = num()?,
        "output.dir" => cfg.output.dir = PathBuf::from(value),
        "output.name" => {
            if value.is_empty() || value.contains(['/', '\\']) {
                return Err(ConfigError::invalid_value(
                    line,
                    format!("output.name `{value}` must be a plain file stem"),
                ));
            }
            cfg.output.name = value.to_string();
        }
        _ => return Err(ConfigError::unknown_key(line, key)),
    }
    Ok(())
}

/// Config key responsible for a core validation failure, for line lookup.
fn key_for_parameter(name: &str) -> &'static [&'static str] {
    match name {
        "R" => &["motor.R"],
        "L" => &["motor.L"],
        "J" => &["motor.J"],
        "f" => &["motor.f"],
        "k" => &["motor.k"],
        "u_max" => &["motor.u_max"],
        "dt_plant" => &["sim.dt_plant"],
        "dt_control" => &["sim.dt_control"],
        "t_end" => &["sim.t_end"],
        "kp" => &["pid.kp"],
        "ki" => &["pid.ki"],
        "kd" => &["pid.kd"],
        "u_limit" => &["pid.u_limit"],
        "tf_d" => &["pid.tf_d"],
        "c1" => &["surface.c1"],
        "c2" => &["surface.c2"],
        "kappa" => &["surface.kappa", "surface.c1"],
        "phi" => &["surface.phi"],
        "setpoint_volts" => &["scenario.setpoint_volts"],
        "magnitude" => &["scenario.magnitude"],
        "t_on" => &["scenario.t_on"],
        "t_off" => &["scenario.t_off"],
        "initial_state" => &["scenario.i0", "scenario.omega0"],
        _ => &[],
    }
}

fn offending_keys(err: &dcmotor_core::Error) -> &'static [&'static str] {
    use dcmotor_core::Error;
    match err {
        Error::InvalidParameter { name, .. } | Error::NonFinite { name, .. } => {
            key_for_parameter(name)
        }
        Error::SingularSurface => &["surface.c1"],
        Error::UnstableSwitchingGain { .. } => &["surface.kappa", "surface.c1"],
        _ => &[],
    }
}

/// Parses and validates a config document. Omitted keys keep their defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    parse_config_with(text, false)
}

/// As [`parse_config`]; `allow_unstable` forces `surface.unchecked = true`
/// before validation, whatever the document says.
pub fn parse_config_with(
    text: &str,
    allow_unstable: bool,
) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::syntax(line, raw.trim()))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::unknown_key(line, key));
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(ConfigError::duplicate_key(line, key, first));
        }
        set(&mut cfg, key, value, line)?;
    }
    cfg.surface.unchecked |= allow_unstable;

    cfg.validate().map_err(|e| {
        let line = offending_keys(&e)
            .iter()
            .find_map(|k| seen.get(*k).copied());
        ConfigError::invariant(line, e)
    })?;
    Ok(cfg)
}

/// Writes every key, in a fixed order, so that `parse_config` reproduces `cfg`.
pub fn serialize_config(cfg: &ExperimentConfig) -> String {
    let mut out = String::new();
    let mut section = "";
    for key in KEYS {
        let this = key.split_once('.').map(|(s, _)| s).unwrap_or(key);
        if this != section {
            if !section.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "# {this}");
            section = this;
        }
        let _ = writeln!(out, "{key} = {}", value_of(cfg, key));
    }
    out
}

fn value_of(cfg: &ExperimentConfig, key: &str) -> String {
    let d = &cfg.scenario.disturbance;
    match key {
        "motor.R" => cfg.motor.resistance.to_string(),
        "motor.L" => cfg.motor.inductance.to_string(),
        "motor.J" => cfg.motor.inertia.to_string(),
        "motor.f" => cfg.motor.friction.to_string(),
        "motor.k" => cfg.motor.torque_constant.to_string(),
        "motor.u_max" => cfg.motor.voltage_limit.to_string(),
        "sim.dt_plant" => cfg.sim.dt_plant.to_string(),
        "sim.dt_control" => cfg.sim.dt_control.to_string(),
        "sim.t_end" => cfg.sim.t_end.to_string(),
        "sim.method" => cfg.sim.method.as_str().to_string(),
        "sim.controller" => cfg.controller.as_str().to_string(),
        "pid.kp" => cfg.pid.kp.to_string(),
        "pid.ki" => cfg.pid.ki.to_string(),
        "pid.kd" => cfg.pid.kd.to_string(),
        "pid.u_limit" => cfg.pid.u_limit.to_string(),
        "pid.tf_d" => cfg.pid.tf_d.to_string(),
        "surface.c1" => cfg.surface.c1.to_string(),
        "surface.c2" => cfg.surface.c2.to_string(),
        "surface.kappa" => cfg.surface.kappa.to_string(),
        "surface.phi" => cfg.surface.phi.to_string(),
        "surface.unchecked" => cfg.surface.unchecked.to_string(),
        "scenario.setpoint_volts" => cfg.scenario.setpoint_volts.to_string(),
        "scenario.disturbance" => d.kind.as_str().to_string(),
        "scenario.magnitude" => d.magnitude.to_string(),
        "scenario.t_on" => d.t_on.to_string(),
        "scenario.t_off" => d.t_off.to_string(),
        "scenario.i0" => cfg.scenario.initial_state.current.to_string(),
        "scenario.omega0" => cfg.scenario.initial_state.omega.to_string(),
        "output.dir" => cfg.output.dir.display().to_string(),
        "output.name" => cfg.output.name.clone(),
        _ => unreachable!("key list and serializer out of sync: {key}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ConfigErrorKind;

    #[test]
    fn empty_document_is_all_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.motor.resistance, 5.5);
        assert_eq!(cfg.controller, ControllerKind::Smc);
        assert_eq!(parse_config("# only a comment\n\n   \n").unwrap(), cfg);
    }

    #[test]
    fn reads_values_and_comments() {
        let cfg = parse_config(
            "motor.R = 6.0  # ohm\nsim.method = euler\nsim.controller=pid\nscenario.disturbance = friction_step\noutput.name = a_run\n",
        )
        .unwrap();
        assert_eq!(cfg.motor.resistance, 6.0);
        assert_eq!(cfg.sim.method, Method::Euler);
        assert_eq!(cfg.controller, ControllerKind::Pid);
        assert_eq!(cfg.scenario.disturbance.kind, DisturbanceKind::FrictionStep);
        assert_eq!(cfg.output.name, "a_run");
    }

    #[test]
    fn t_end_drives_scenario_horizon() {
        let cfg = parse_config("sim.t_end = 15\n").unwrap();
        assert_eq!(cfg.scenario.t_end, 15.0);
    }

    #[test]
    fn singular_surface_rejected_with_line() {
        let err = parse_config("# header\nsurface.c1 = 0\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(matches!(
            err.kind,
            ConfigErrorKind::Invariant(dcmotor_core::Error::SingularSurface)
        ));
        assert!(
            err.to_string().contains("singular sliding surface"),
            "{err}"
        );
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config("motor.R = 5.5\nmotor.Q = 1\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(matches!(err.kind, ConfigErrorKind::UnknownKey(_)));
        assert!(matches!(
            parse_config("gains.kp = 1").unwrap_err().kind,
            ConfigErrorKind::UnknownKey(_)
        ));
    }

    #[test]
    fn type_mismatch_rejected() {
        let err = parse_config("\n\nmotor.L = lots\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(matches!(err.kind, ConfigErrorKind::TypeMismatch { .. }));
        assert!(parse_config("surface.unchecked = yes").is_err());
        assert!(parse_config("sim.method = rk45").is_err());
    }

    #[test]
    fn syntax_and_duplicates() {
        assert!(matches!(
            parse_config("motor.R 5.5").unwrap_err().kind,
            ConfigErrorKind::Syntax(_)
        ));
        let err = parse_config("motor.R = 5\nmotor.R = 6\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(matches!(
            err.kind,
            ConfigErrorKind::DuplicateKey { first: 1, .. }
        ));
    }

    #[test]
    fn invariant_violations_name_the_line() {
        let err = parse_config("motor.J = -1\n").unwrap_err();
        assert_eq!(err.line, Some(1));
        let err = parse_config("sim.t_end = 20\nscenario.t_on = 25\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_config("surface.kappa = -16\n").unwrap_err();
        assert!(matches!(
            err.kind,
            ConfigErrorKind::Invariant(dcmotor_core::Error::UnstableSwitchingGain { .. })
        ));
        assert!(parse_config("surface.kappa = -16\nsurface.unchecked = true\n").is_ok());
    }

    #[test]
    fn round_trip_single_key() {
        let cfg = parse_config("motor.R = 5.5").unwrap();
        let again = parse_config(&serialize_config(&cfg)).unwrap();
        assert_eq!(again.motor.resistance, 5.5);
        assert_eq!(again, cfg);
    }

    #[test]
    fn serialized_defaults_cover_every_key() {
        let text = serialize_config(&ExperimentConfig::default());
        let lines: Vec<_> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.is_empty())
            .collect();
        assert_eq!(lines.len(), KEYS.len());
        assert!(text.contains("motor.R = 5.5\n"));
        assert!(text.contains("sim.controller = smc\n"));
    }
}
