use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dcmotor_harness::plot::gnuplot_script;
use dcmotor_harness::{
    compare, emit_csv, load_config, load_config_with, run_experiment, serialize_config, summarize,
    write_comparison, ControllerKind, ExperimentConfig, HarnessError,
};

/// DC motor speed control experiments: PID vs sliding mode.
#[derive(Debug, Parser)]
#[command(name = "dcmotor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one config and write `<name>.csv` plus a metric summary.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override `sim.controller`.
        #[arg(long)]
        controller: Option<ControllerKind>,
        /// Override `output.dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        plot_script: bool,
        /// Accept a switching gain of the wrong sign.
        #[arg(long)]
        allow_unstable: bool,
    },
    /// Run a PID config and an SMC config on the same scenario and report.
    Compare {
        #[arg(long)]
        pid: PathBuf,
        #[arg(long)]
        smc: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the default configuration.
    Defaults {
        /// Emit it in config-file syntax (the only format for now).
        #[arg(long)]
        emit: bool,
    },
}

fn run(
    config: &Path,
    controller: Option<ControllerKind>,
    out: Option<PathBuf>,
    plot_script: bool,
    allow_unstable: bool,
) -> Result<ExitCode, HarnessError> {
    let mut cfg = load_config_with(config, allow_unstable)?;
    if let Some(kind) = controller {
        cfg.controller = kind;
    }
    if let Some(dir) = out {
        cfg.output.dir = dir;
    }
    let outcome = run_experiment(&cfg)?;
    let csv = cfg.output.dir.join(format!("{}.csv", cfg.output.name));
    emit_csv(&outcome.trace, &csv)?;
    if plot_script {
        let gp = cfg.output.dir.join(format!("{}.gp", cfg.output.name));
        let script = gnuplot_script(&format!("{}.csv", cfg.output.name), &cfg.output.name);
        std::fs::write(&gp, script).map_err(|e| HarnessError::Io {
            path: gp.clone(),
            source: e,
        })?;
    }
    print!("{}", summarize(&outcome));
    println!("trace             {}", csv.display());
    if outcome.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: reaching condition violated outside the boundary layer");
        Ok(ExitCode::from(2))
    }
}

fn compare_cmd(pid: &Path, smc: &Path, out: &Path) -> Result<ExitCode, HarnessError> {
    let cfg_pid = load_config(pid)?.with_controller(ControllerKind::Pid);
    let cfg_smc = load_config(smc)?.with_controller(ControllerKind::Smc);
    let report = compare(&cfg_pid, &cfg_smc)?;
    let files = write_comparison(&report, out, "compare")?;
    print!("{}", report.render());
    println!("report            {}", files.report.display());
    Ok(if report.is_complete() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    // usage errors are validation errors (exit 1); --help / --version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            controller,
            out,
            plot_script,
            allow_unstable,
        } => run(&config, controller, out, plot_script, allow_unstable),
        Command::Compare { pid, smc, out } => compare_cmd(&pid, &smc, &out),
        Command::Defaults { emit: _ } => {
            print!("{}", serialize_config(&ExperimentConfig::default()));
            Ok(ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code() as u8)
    })
}
