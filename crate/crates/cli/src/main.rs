use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdeform_cli::config::{load_config_file, merge, Format, Layer, RunConfig, TOL_ENV};
use qdeform_cli::emit::{emit_check, emit_sweep};
use qdeform_cli::run::{load_presentation, run_check, run_sweep, sweep_passes};
use qdeform_cli::{CliError, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
use qdeform_core::exotic::Preset;

#[derive(Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Residual checks for deformed oscillator algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every relation of a preset or .qdl file at one ν.
    Check(RunArgs),
    /// Evaluate over a ν grid `start:stop:step` (inclusive stop).
    Sweep(RunArgs),
    /// List the built-in presets.
    Presets,
    /// Parse a .qdl file and summarize it.
    Validate { file: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file with defaults for any flag below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    dsl: Option<String>,
    /// Levels per mode.
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// A value for `check`; a value or `start:stop:step` for `sweep`.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    mu_omega: Option<String>,
    /// Comma-separated structure-function alphas, one per grade.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// default | cos_squared | unit
    #[arg(long)]
    f_choice: Option<String>,
    /// inversion | fock_action
    #[arg(long)]
    momentum: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// `auto` or a level count.
    #[arg(long)]
    mask: Option<String>,
    /// Report cross-mode relations as measured instead of pass/fail.
    #[arg(long)]
    measure_only: bool,
    #[arg(long)]
    out: Option<String>,
    /// json | csv | text
    #[arg(long)]
    format: Option<String>,
}

impl RunArgs {
    fn flag_layer(&self) -> Layer {
        let mut l = Layer::new();
        let pairs = [
            ("preset", &self.preset),
            ("dsl", &self.dsl),
            ("dim", &self.dim),
            ("lambda", &self.lambda),
            ("nu", &self.nu),
            ("sign", &self.sign),
            ("mu_omega", &self.mu_omega),
            ("alphas", &self.alphas),
            ("f_choice", &self.f_choice),
            ("momentum", &self.momentum),
            ("tol", &self.tol),
            ("mask", &self.mask),
            ("out", &self.out),
            ("format", &self.format),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                l.insert(k.to_string(), v.clone());
            }
        }
        if self.measure_only {
            l.insert("measure_only".into(), "true".into());
        }
        l
    }

    fn resolve(&self, sweep: bool) -> Result<RunConfig, CliError> {
        let mut env = Layer::new();
        if let Ok(tol) = std::env::var(TOL_ENV) {
            env.insert("tol".into(), tol);
        }
        let file = match &self.config {
            Some(p) => load_config_file(p)?,
            None => Layer::new(),
        };
        RunConfig::from_layer(&merge(&[env, file, self.flag_layer()]), sweep)
    }
}

fn write_output(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Check(args) => {
            let cfg = args.resolve(false)?;
            let eval = run_check(&cfg)?;
            let body = emit_check(&eval, cfg.output_format(Format::Json))?;
            write_output(cfg.out.as_deref(), &body)?;
            let pass = eval.report.overall_pass();
            if cfg.out.is_some() {
                let failed = eval
                    .report
                    .records
                    .iter()
                    .filter(|r| r.pass() == Some(false))
                    .count();
                println!(
                    "{}: {} relations, {failed} failed",
                    if pass { "pass" } else { "fail" },
                    eval.report.records.len()
                );
            }
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Sweep(args) => {
            let cfg = args.resolve(true)?;
            let points = run_sweep(&cfg)?;
            let body = emit_sweep(&points, cfg.output_format(Format::Csv))?;
            write_output(cfg.out.as_deref(), &body)?;
            let pass = sweep_passes(&points);
            if cfg.out.is_some() {
                println!(
                    "{}: {} nu points",
                    if pass { "pass" } else { "fail" },
                    points.len()
                );
            }
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Presets => {
            for p in Preset::ALL {
                println!("{:<18} {}", p.name(), p.description());
            }
            Ok(EXIT_PASS)
        }
        Command::Validate { file } => {
            let p = load_presentation(&file)?;
            println!(
                "{}: algebra {}, {} generators, {} parameters, {} relations",
                file.display(),
                p.name,
                p.generators.len(),
                p.parameters.len(),
                p.relations.len()
            );
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match std::panic::catch_unwind(|| execute(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
        Err(_) => {
            eprintln!("error: internal failure");
            EXIT_ERROR
        }
    };
    ExitCode::from(code)
}
