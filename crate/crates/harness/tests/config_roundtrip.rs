use dcmotor_core::{DisturbanceKind, Method};
use dcmotor_harness::{parse_config, serialize_config, ControllerKind, ExperimentConfig};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = ExperimentConfig> {
    let motor = (
        0.1..20.0f64,
        1e-4..0.1f64,
        1e-3..1.0f64,
        0.0..2.0f64,
        0.05..5.0f64,
        1.0..500.0f64,
    );
    let sim = (
        prop::sample::select(vec![1e-5, 5e-5, 1e-4, 2e-4]),
        1usize..20,
        0.5..40.0f64,
        any::<bool>(),
        any::<bool>(),
    );
    let pid = (
        0.0..1.0f64,
        0.0..5.0f64,
        0.0..0.1f64,
        1.0..300.0f64,
        1e-4..0.1f64,
    );
    let surface = (1e-3..1.0f64, -2.0..2.0f64, 0.1..50.0f64, 0.0..5.0f64);
    let scenario = (
        0.0..2.0f64,
        prop::sample::select(vec![
            DisturbanceKind::None,
            DisturbanceKind::LoadStep,
            DisturbanceKind::LoadPulse,
            DisturbanceKind::FrictionStep,
        ]),
        0.0..10.0f64,
        0.0..0.5f64,
        0.5..1.0f64,
        -1.0..1.0f64,
        -50.0..50.0f64,
    );
    (motor, sim, pid, surface, scenario, "[a-z][a-z0-9_]{0,8}").prop_map(
        |(
            (r, l, j, f, k, u_max),
            (dtp, m, t_end, euler, pid_sel),
            (kp, ki, kd, ul, tf),
            (c1, c2, kappa, phi),
            sc,
            name,
        )| {
            let mut cfg = ExperimentConfig::default();
            cfg.motor.resistance = r;
            cfg.motor.inductance = l;
            cfg.motor.inertia = j;
            cfg.motor.friction = f;
            cfg.motor.torque_constant = k;
            cfg.motor.voltage_limit = u_max;
            cfg.sim.dt_plant = dtp;
            cfg.sim.dt_control = dtp * m as f64;
            cfg.sim.t_end = t_end;
            cfg.sim.method = if euler { Method::Euler } else { Method::Rk4 };
            cfg.controller = if pid_sel {
                ControllerKind::Pid
            } else {
                ControllerKind::Smc
            };
            cfg.pid.kp = kp;
            cfg.pid.ki = ki;
            cfg.pid.kd = kd;
            cfg.pid.u_limit = ul;
            cfg.pid.tf_d = tf;
            cfg.surface.c1 = c1;
            cfg.surface.c2 = c2;
            cfg.surface.kappa = kappa;
            cfg.surface.phi = phi;
            let (sp, kind, mag, on, off, i0, w0) = sc;
            cfg.scenario.t_end = t_end;
            cfg.scenario.setpoint_volts = sp;
            cfg.scenario.disturbance.kind = kind;
            cfg.scenario.disturbance.magnitude = mag;
            cfg.scenario.disturbance.t_on = on * t_end;
            cfg.scenario.disturbance.t_off = off * t_end;
            cfg.scenario.initial_state.current = i0;
            cfg.scenario.initial_state.omega = w0;
            cfg.output.name = name;
            cfg
        },
    )
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(cfg in config()) {
        prop_assert!(cfg.validate().is_ok());
        let text = serialize_config(&cfg);
        let back = parse_config(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &cfg);
        // and the text itself is a fixed point
        prop_assert_eq!(serialize_config(&back), text);
    }
}

#[test]
fn partial_documents_fill_defaults() {
    let cfg = parse_config("pid.kp = 0.2\nscenario.disturbance = load_step\n").unwrap();
    let mut expected = ExperimentConfig::default();
    expected.pid.kp = 0.2;
    expected.scenario.disturbance.kind = DisturbanceKind::LoadStep;
    assert_eq!(cfg, expected);
}

#[test]
fn error_messages_carry_line_numbers() {
    let err = parse_config("# c\n\nmotor.L = -1\n").unwrap_err();
    assert!(err.to_string().starts_with("line 3:"), "{err}");
    let err = parse_config("sim.dt_plant = 0.0003\n").unwrap_err();
    assert!(err.to_string().contains("integer multiple"), "{err}");
    assert_eq!(err.line, None);
}
