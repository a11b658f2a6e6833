//! Argument, config-file and environment handling. Precedence per field:
//! command-line flag > config file > environment > built-in default.

use casimir_graphene::lifshitz::SolverConfig;
use casimir_graphene::params::PhysicalSetup;
use casimir_graphene::sweep::{Mode, Quantity, SweepVar};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;

/// Environment variable holding the default relative tolerance.
pub const TOL_ENV: &str = "CASIMIR_GRAPHENE_TOL";

#[derive(Parser, Debug)]
#[command(
    name = "casimir-graphene",
    version,
    about = "Thermal Casimir free energy, entropy and pressure of two parallel graphene sheets",
    long_about = None
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,

    /// Sheet separation in nanometers.
    #[arg(long = "a-nm", global = true)]
    pub a_nm: Option<f64>,

    /// Temperature in kelvin.
    #[arg(long = "T-K", global = true)]
    pub t_k: Option<f64>,

    /// Quantity to compute.
    #[arg(long, global = true, value_enum)]
    pub quantity: Option<QuantityArg>,

    /// Full numerics, closed-form low-T expressions, or both.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,

    /// Variable swept by the `sweep` command.
    #[arg(long = "sweep-var", global = true, value_enum)]
    pub sweep_var: Option<SweepVarArg>,

    /// Sweep lower bound (kelvin or nanometers, per --sweep-var).
    #[arg(long, global = true)]
    pub min: Option<f64>,

    /// Sweep upper bound.
    #[arg(long, global = true)]
    pub max: Option<f64>,

    /// Number of sweep points.
    #[arg(long, global = true)]
    pub points: Option<usize>,

    /// Logarithmic sweep spacing.
    #[arg(long, global = true)]
    pub log: bool,

    /// Relative tolerance for quadratures and summations.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Drop vt^2 against 1 in the zero-temperature dispersive root.
    #[arg(long = "paper-approx", global = true)]
    pub paper_approx: bool,

    /// TOML config file; flags take precedence over its keys.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandArg {
    /// One (a, T) point.
    Compute,
    /// A sweep over T or a.
    Sweep,
    /// Static amplitudes, tail coefficients and effective temperatures.
    Constants,
    /// The decomposition of F into E plus the thermal-correction parts.
    Decompose,
    /// Run the acceptance checks and report pass/fail per check.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityArg {
    #[value(name = "free-energy")]
    FreeEnergy,
    Entropy,
    Pressure,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Full,
    Asym,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVarArg {
    #[value(name = "T")]
    T,
    #[value(name = "a")]
    A,
}

/// Keys accepted in the TOML config file. Unknown keys are rejected.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub a_nm: Option<f64>,
    pub t_k: Option<f64>,
    pub quantity: Option<String>,
    pub mode: Option<String>,
    pub format: Option<String>,
    pub sweep_var: Option<String>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
    pub log: Option<bool>,
    pub tol: Option<f64>,
    pub paper_approx: Option<bool>,
    pub workers: Option<usize>,
    pub alpha: Option<f64>,
    pub v_tilde: Option<f64>,
    pub l_max_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

/// Fully resolved run request.
#[derive(Debug, Clone)]
pub struct RunRequest {
    pub command: CommandArg,
    pub setup: PhysicalSetup,
    pub sweep: Option<SweepSpec>,
    pub quantity: Quantity,
    pub mode: Mode,
    pub format: FormatArg,
    pub cfg: SolverConfig,
    pub workers: usize,
}

/// Usage-level failure: maps to exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parse_named<T: Copy>(value: &str, table: &[(&str, T)], what: &str) -> Result<T, UsageError> {
    table
        .iter()
        .find(|(name, _)| *name == value)
        .map(|(_, v)| *v)
        .ok_or_else(|| {
            let allowed: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
            UsageError(format!("invalid {what} `{value}` (expected one of {allowed:?})"))
        })
}

/// Builds the request with full precedence handling.
// the negated comparison doubles as NaN rejection
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn build_request(cli: &Cli) -> Result<RunRequest, UsageError> {
    let file: ConfigFile = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
            toml::from_str(&text)
                .map_err(|e| UsageError(format!("malformed config {}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };

    let env_tol = match std::env::var(TOL_ENV) {
        Ok(s) => Some(
            s.parse::<f64>()
                .map_err(|_| UsageError(format!("{TOL_ENV} must be a float, got `{s}`")))?,
        ),
        Err(_) => None,
    };

    let a_nm = cli.a_nm.or(file.a_nm).unwrap_or(100.0);
    let t_k = cli.t_k.or(file.t_k).unwrap_or(10.0);

    let quantity = match cli.quantity {
        Some(QuantityArg::FreeEnergy) => Quantity::FreeEnergy,
        Some(QuantityArg::Entropy) => Quantity::Entropy,
        Some(QuantityArg::Pressure) => Quantity::Pressure,
        Some(QuantityArg::All) => Quantity::All,
        None => match file.quantity.as_deref() {
            Some(s) => parse_named(
                s,
                &[
                    ("free-energy", Quantity::FreeEnergy),
                    ("entropy", Quantity::Entropy),
                    ("pressure", Quantity::Pressure),
                    ("all", Quantity::All),
                ],
                "quantity",
            )?,
            None => Quantity::FreeEnergy,
        },
    };

    let mode = match cli.mode {
        Some(ModeArg::Full) => Mode::Full,
        Some(ModeArg::Asym) => Mode::Asym,
        Some(ModeArg::Both) => Mode::Both,
        None => match file.mode.as_deref() {
            Some(s) => parse_named(
                s,
                &[("full", Mode::Full), ("asym", Mode::Asym), ("both", Mode::Both)],
                "mode",
            )?,
            None => Mode::Full,
        },
    };

    let format = match cli.format {
        Some(f) => f,
        None => match file.format.as_deref() {
            Some(s) => parse_named(s, &[("csv", FormatArg::Csv), ("json", FormatArg::Json)], "format")?,
            None => FormatArg::Csv,
        },
    };

    let sweep_var = match cli.sweep_var {
        Some(SweepVarArg::T) => Some(SweepVar::Temperature),
        Some(SweepVarArg::A) => Some(SweepVar::Separation),
        None => match file.sweep_var.as_deref() {
            Some(s) => Some(parse_named(
                s,
                &[("T", SweepVar::Temperature), ("a", SweepVar::Separation)],
                "sweep_var",
            )?),
            None => None,
        },
    };

    let tol = cli.tol.or(file.tol).or(env_tol).unwrap_or(1e-9);
    let paper_approx = cli.paper_approx || file.paper_approx.unwrap_or(false);
    let log = cli.log || file.log.unwrap_or(false);
    let workers = cli
        .workers
        .or(file.workers)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));

    let mut setup = PhysicalSetup::new(a_nm * 1e-9, t_k);
    if let Some(alpha) = file.alpha {
        setup = setup.with_alpha(alpha);
    }
    if let Some(v_tilde) = file.v_tilde {
        setup = setup.with_v_tilde(v_tilde);
    }
    setup
        .validate()
        .map_err(|e| UsageError(format!("invalid physical inputs: {e}")))?;

    let cfg = SolverConfig {
        rel_tol: tol,
        l_max_cap: file.l_max_cap.unwrap_or(100_000),
        paper_approx,
        ..SolverConfig::default()
    };
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;

    let sweep = if cli.command == CommandArg::Sweep {
        let var = sweep_var.unwrap_or(SweepVar::Temperature);
        let min = cli
            .min
            .or(file.min)
            .ok_or_else(|| UsageError("sweep requires --min".into()))?;
        let max = cli
            .max
            .or(file.max)
            .ok_or_else(|| UsageError("sweep requires --max".into()))?;
        let points = cli.points.or(file.points).unwrap_or(10);
        if !(min < max) {
            return Err(UsageError(format!("sweep requires min < max (got {min} >= {max})")));
        }
        if points < 2 {
            return Err(UsageError(format!("sweep requires points >= 2 (got {points})")));
        }
        if min <= 0.0 {
            return Err(UsageError("sweep bounds must be positive".into()));
        }
        Some(SweepSpec {
            var,
            min,
            max,
            points,
            log,
        })
    } else {
        None
    };

    if workers == 0 {
        return Err(UsageError("workers must be >= 1".into()));
    }

    Ok(RunRequest {
        command: cli.command,
        setup,
        sweep,
        quantity,
        mode,
        format,
        cfg,
        workers,
    })
}
