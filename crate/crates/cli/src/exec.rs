//! Command execution and the determinism acceptance check.

use crate::output;
use crate::request::{CommandArg, FormatArg, RunRequest};
use casimir_graphene::asymptotics;
use casimir_graphene::lifshitz;
use casimir_graphene::params::reduced_scales;
use casimir_graphene::reflection::static_amplitudes;
use casimir_graphene::sweep::{self, Mode, Quantity, SweepVar};
use casimir_graphene::verify::{self, CheckReport};
use casimir_graphene::CasimirError;

/// Failure modes mapped to process exit codes by `main`.
#[derive(Debug)]
pub enum RunError {
    /// Exit 2: an integral or sum failed with a diagnostic.
    Numerical(CasimirError),
    /// Exit 3: at least one verification check failed.
    Verification(usize),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Numerical(e) => write!(f, "numerical failure: {e}"),
            RunError::Verification(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<CasimirError> for RunError {
    fn from(e: CasimirError) -> Self {
        RunError::Numerical(e)
    }
}

/// Runs the request and returns what should be printed to stdout.
pub fn run(request: &RunRequest) -> Result<String, RunError> {
    match request.command {
        CommandArg::Compute => {
            let row = sweep::compute_row(&request.setup, request.quantity, request.mode, &request.cfg)?;
            Ok(output::render_rows(request, "compute", &[row]))
        }
        CommandArg::Sweep => {
            let spec = request.sweep.expect("validated by build_request");
            let scale = match spec.var {
                SweepVar::Temperature => 1.0,
                SweepVar::Separation => 1e-9, // sweep bounds in nm
            };
            let values: Vec<f64> = sweep::sweep_values(spec.min, spec.max, spec.points, spec.log)
                .into_iter()
                .map(|v| v * scale)
                .collect();
            let rows = sweep::run_sweep(
                &request.setup,
                spec.var,
                &values,
                request.quantity,
                request.mode,
                &request.cfg,
                request.workers,
            )?;
            Ok(output::render_rows(request, "sweep", &rows))
        }
        CommandArg::Constants => {
            let scales = reduced_scales(&request.setup)?;
            let c = request.setup.couplings();
            let (rho_tm, rho_te) = static_amplitudes(&c);
            let coeffs = asymptotics::coefficients(&c, request.cfg.rel_tol.min(1e-9))?;
            Ok(output::render_constants(
                request,
                scales.tau,
                scales.t_eff,
                scales.t_eff_g,
                rho_tm * rho_tm,
                rho_te * rho_te,
                coeffs.c_tm,
                coeffs.c_te,
            ))
        }
        CommandArg::Decompose => {
            let b = lifshitz::decompose(&request.setup, &request.cfg)?;
            Ok(output::render_breakdown(request, &b))
        }
        CommandArg::Verify => {
            let mut reports = verify::run_core_checks();
            reports.push(determinism_check());
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.line());
                out.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            out.push_str(&format!(
                "{} of {} checks passed\n",
                reports.len() - failed,
                reports.len()
            ));
            if failed > 0 {
                // the summary still goes to stdout before the nonzero exit
                print!("{out}");
                return Err(RunError::Verification(failed));
            }
            Ok(out)
        }
    }
}

/// 12. Identical sweeps must render byte-identical CSV for any worker count.
pub fn determinism_check() -> CheckReport {
    let base = casimir_graphene::params::PhysicalSetup::new(1e-7, 20.0);
    let cfg = casimir_graphene::lifshitz::SolverConfig::default().with_rel_tol(1e-6);
    let values = sweep::sweep_values(15.0, 30.0, 4, false);
    let request = RunRequest {
        command: CommandArg::Sweep,
        setup: base,
        sweep: None,
        quantity: Quantity::FreeEnergy,
        mode: Mode::Full,
        format: FormatArg::Csv,
        cfg,
        workers: 1,
    };
    let render = |workers: usize| -> Result<String, CasimirError> {
        let rows = sweep::run_sweep(
            &base,
            SweepVar::Temperature,
            &values,
            Quantity::FreeEnergy,
            Mode::Full,
            &cfg,
            workers,
        )?;
        Ok(output::render_rows(&request, "sweep", &rows))
    };
    match (render(1), render(4), render(8)) {
        (Ok(a), Ok(b), Ok(c)) => {
            let identical = a == b && b == c;
            CheckReport {
                id: 12,
                name: "output determinism",
                passed: identical,
                detail: if identical {
                    format!("byte-identical CSV across 1/4/8 workers ({} bytes)", a.len())
                } else {
                    "worker counts produced differing CSV bytes".to_string()
                },
            }
        }
        (a, b, c) => CheckReport {
            id: 12,
            name: "output determinism",
            passed: false,
            detail: format!("sweep failed: {a:?} / {b:?} / {c:?}"),
        },
    }
}
