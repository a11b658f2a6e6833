//! Full numerical evaluation of the Casimir free energy between two graphene
//! sheets: the zero-temperature energy, the prime-weighted Matsubara sum with
//! the exact (non-expanded) reflection coefficients, the decomposition of the
//! thermal correction into its summation part and its two tensor-correction
//! parts, and entropy/pressure by Richardson-extrapolated differentiation.
//!
//! Internally everything is accumulated in "Phi units", i.e. divided by the
//! prefactor k_B T/(8 pi a^2); SI values are restored at the end.

use crate::asymptotics;
use crate::error::{CasimirError, Result};
use crate::numerics::{self, pairwise_sum, QuadResult, SumMinusIntegralOpts};
use crate::params::{reduced_scales, Couplings, PhysicalSetup};
use crate::polarization::{
    delta_pi_ratio_asym, delta_pi_ratio_pair, delta_pi_ratio_static, g_tilde, pi_zero_pair,
    MatsubaraPoint, PolarizationPair, ThermalRatios,
};
use crate::reflection::{fresnel_full, fresnel_zero, static_amplitudes};

use rayon::prelude::*;
use std::f64::consts::PI;

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
}

impl Estimate {
    pub fn new(value: f64, abs_err: f64) -> Self {
        Self { value, abs_err }
    }

    fn scaled(self, s: f64) -> Self {
        Self::new(self.value * s, self.abs_err * s.abs())
    }
}

/// Tolerances and switches shared by all solver entry points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative tolerance for quadratures and Matsubara summation.
    pub rel_tol: f64,
    /// Hard cap on the Matsubara index.
    pub l_max_cap: usize,
    /// Smallest absolute finite-difference step (K or m).
    pub diff_step_floor: f64,
    /// Use the approximate dispersive root (vt^2 dropped against 1) in the
    /// zero-temperature coefficient paths.
    pub paper_approx: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            l_max_cap: 100_000,
            diff_step_floor: 1e-12,
            paper_approx: false,
        }
    }
}

impl SolverConfig {
    // negated comparisons double as NaN rejection
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 1e-14 && self.rel_tol < 1e-2) {
            return Err(CasimirError::Config(format!(
                "rel_tol = {} must lie in (1e-14, 1e-2)",
                self.rel_tol
            )));
        }
        if self.l_max_cap < 10 {
            return Err(CasimirError::Config(format!(
                "l_max_cap = {} must be >= 10",
                self.l_max_cap
            )));
        }
        if !(self.diff_step_floor > 0.0) {
            return Err(CasimirError::Config("diff_step_floor must be positive".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, t: f64) -> Self {
        self.rel_tol = t;
        self
    }

    pub fn with_l_max_cap(mut self, cap: usize) -> Self {
        self.l_max_cap = cap;
        self
    }
}

// Relative finite-difference steps. The temperature step favors noise
// robustness; the separation step must push the Richardson truncation on the
// a^-3 zero-temperature term below the 1e-6 level of the P0 = 3E/a identity.
const FD_REL_STEP_T: f64 = 1.0 / 16.0;
const FD_REL_STEP_A: f64 = 1.0 / 128.0;
// Above this Fermi scale the asymptotic thermal ratios are accurate to
// better than ~1e-5 relative on the (already tiny) correction.
const B_ASYM_SWITCH: f64 = 1e3;

fn ratios_at(point: &MatsubaraPoint, c: &Couplings, tol: f64) -> Result<ThermalRatios> {
    if PI * g_tilde(point, c, false) / point.tau >= B_ASYM_SWITCH {
        delta_pi_ratio_asym(point, c)
    } else {
        delta_pi_ratio_pair(point, c, tol)
    }
}

/// Phi(zeta) split into its TM and TE parts:
/// Phi_X(zeta) = int_zeta^inf y ln(1 - r_X^2 e^-y) dy with the
/// zero-temperature coefficients. Both parts are <= 0.
pub fn phi_parts(zeta: f64, c: &Couplings, paper_approx: bool, tol: f64) -> Result<(QuadResult, QuadResult)> {
    if zeta < 0.0 {
        return Err(CasimirError::Domain {
            context: "phi",
            message: format!("zeta = {zeta} must be >= 0"),
        });
    }
    let part = |tm: bool| {
        let mut f = |y: f64| {
            let point = MatsubaraPoint {
                zeta,
                y,
                tau: 0.0,
                l: 0,
            };
            let r = fresnel_zero(&point, c, paper_approx).expect("y > zeta >= 0 inside the integral");
            let amp = if tm { r.r_tm } else { r.r_te };
            y * (-amp * amp * (-y).exp()).ln_1p()
        };
        let r = numerics::integrate_decay(&mut f, zeta, tol);
        if r.converged {
            Ok(r)
        } else {
            Err(CasimirError::Quadrature {
                context: "phi",
                requested: tol,
                achieved: r.abs_err,
                evaluations: r.evaluations,
            })
        }
    };
    Ok((part(true)?, part(false)?))
}

/// Phi(zeta) = Phi_TM + Phi_TE.
pub fn phi(zeta: f64, c: &Couplings, paper_approx: bool, tol: f64) -> Result<QuadResult> {
    let (tm, te) = phi_parts(zeta, c, paper_approx, tol)?;
    Ok(QuadResult {
        value: tm.value + te.value,
        abs_err: tm.abs_err + te.abs_err,
        evaluations: tm.evaluations + te.evaluations,
        converged: true,
    })
}

/// Casimir energy per unit area at T = 0:
/// E(a) = hbar c/(32 pi^2 a^3) * int_0^inf Phi(zeta) d zeta  (J/m^2, < 0).
///
/// The zeta-integral is separation-independent, so E a^3 is an exact
/// constant of the implementation.
pub fn energy_t0(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<Estimate> {
    setup.validate()?;
    cfg.validate()?;
    let c = setup.couplings();
    let inner_tol = (cfg.rel_tol * 0.1).max(1e-13);
    let mut f = |zeta: f64| phi(zeta, &c, cfg.paper_approx, inner_tol).map(|q| q.value).unwrap_or(f64::NAN);
    let r = numerics::integrate_decay(&mut f, 0.0, cfg.rel_tol);
    if !r.converged || !r.value.is_finite() {
        return Err(CasimirError::Quadrature {
            context: "energy_t0",
            requested: cfg.rel_tol,
            achieved: r.abs_err,
            evaluations: r.evaluations,
        });
    }
    let pref = setup.hbar_c / (32.0 * PI * PI * setup.a.powi(3));
    Ok(Estimate::new(pref * r.value, pref * r.abs_err))
}

// One Matsubara term of the full free energy, in Phi units.
fn full_term(l: u64, setup: &PhysicalSetup, cfg: &SolverConfig, tau: f64) -> Result<(f64, f64)> {
    let c = setup.couplings();
    let zeta = tau * l as f64;
    let ratio_tol = (cfg.rel_tol * 1e-2).clamp(1e-13, 1e-6);

    let mut f = |y: f64| -> f64 {
        if l == 0 {
            let ratios = delta_pi_ratio_static(y, tau, &c, ratio_tol)
                .expect("static ratios converge for y > 0");
            let p00 = (PI * c.alpha * y / c.v_tilde) * (1.0 + ratios.r00);
            let p = (PI * c.alpha * c.v_tilde * y.powi(3)) * (1.0 + ratios.rp);
            let r_tm = p00 / (p00 + 2.0 * y);
            let r_te = -p / (p + 2.0 * y.powi(3));
            y * ((-r_tm * r_tm * (-y).exp()).ln_1p() + (-r_te * r_te * (-y).exp()).ln_1p())
        } else {
            let point = MatsubaraPoint { zeta, y, tau, l };
            let ratios = ratios_at(&point, &c, ratio_tol).expect("thermal ratios converge");
            let zero = pi_zero_pair(&point, &c).expect("y > zeta inside the integral");
            let pol = PolarizationPair {
                p00: zero.p00 * (1.0 + ratios.r00),
                p: zero.p * (1.0 + ratios.rp),
            };
            let r = fresnel_full(&point, &c, &pol);
            y * ((-r.r_tm * r.r_tm * (-y).exp()).ln_1p() + (-r.r_te * r.r_te * (-y).exp()).ln_1p())
        }
    };
    let r = numerics::integrate_decay(&mut f, zeta, cfg.rel_tol);
    if !r.converged || !r.value.is_finite() {
        return Err(CasimirError::Quadrature {
            context: "free_energy_full term",
            requested: cfg.rel_tol,
            achieved: r.abs_err,
            evaluations: r.evaluations,
        });
    }
    Ok((r.value, r.abs_err))
}

// Prime-weighted (or l >= 1) Matsubara summation with chunked data-parallel
// term evaluation and a fixed-order pairwise reduction, so results are
// bit-reproducible across worker counts.
fn matsubara_sum<F>(
    term: F,
    prime: bool,
    tau: f64,
    cfg: &SolverConfig,
    context: &'static str,
) -> Result<(f64, f64, usize)>
where
    F: Fn(u64) -> Result<(f64, f64)> + Sync,
{
    const CHUNK: u64 = 64;
    let mut values: Vec<f64> = Vec::new();
    let mut err_sum = 0.0;
    let mut running = 0.0;
    let mut small_streak = 0usize;
    // terms with sign structure in l can pass through zero; require the
    // negligible streak to persist across half a unit of zeta = tau l
    let streak_needed = 3usize.max((0.5 / tau).ceil() as usize);
    let mut l_next: u64 = if prime { 0 } else { 1 };

    loop {
        let hi = l_next + CHUNK;
        let chunk: Vec<(f64, f64)> = (l_next..hi)
            .into_par_iter()
            .map(&term)
            .collect::<Result<Vec<_>>>()?;
        for (i, (mut v, e)) in chunk.into_iter().enumerate() {
            let l = l_next + i as u64;
            if prime && l == 0 {
                v *= 0.5;
            }
            values.push(v);
            err_sum += e;
            running += v;
            let scale = running.abs().max(f64::MIN_POSITIVE);
            if l >= 1 && v.abs() < cfg.rel_tol * scale {
                small_streak += 1;
            } else if l >= 1 {
                small_streak = 0;
            }
            if small_streak >= streak_needed && values.len() >= 6 {
                let n = values.len();
                let last = values[n - 1].abs();
                let prev = values[n - 2].abs();
                if prev > 0.0 && last < prev {
                    let r = last / prev;
                    let tail = last * r / (1.0 - r);
                    if tail < cfg.rel_tol * scale {
                        return Ok((pairwise_sum(&values), err_sum + tail, n));
                    }
                } else if last == 0.0 {
                    return Ok((pairwise_sum(&values), err_sum, n));
                }
            }
            if values.len() >= cfg.l_max_cap {
                return Err(CasimirError::SeriesCap {
                    context,
                    cap: cfg.l_max_cap,
                    partial: running,
                    tail: values.last().copied().unwrap_or(0.0).abs(),
                });
            }
        }
        l_next = hi;
    }
}

/// Full Casimir free energy per unit area from the Lifshitz formula with the
/// exact coefficients built on the total polarization tensor (J/m^2, < 0).
/// The zero-frequency tensor correction always comes from the static
/// (logarithmic) representation.
pub fn free_energy_full(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<Estimate> {
    setup.validate()?;
    cfg.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "free_energy_full",
            message: "requires T > 0; use energy_t0 at T = 0".into(),
        });
    }
    let scales = reduced_scales(setup)?;
    let (sum, err, _l) = matsubara_sum(
        |l| full_term(l, setup, cfg, scales.tau),
        true,
        scales.tau,
        cfg,
        "free_energy_full",
    )?;
    let pref = setup.k_b * setup.t / (8.0 * PI * setup.a * setup.a);
    Ok(Estimate::new(pref * sum, pref * err))
}

/// TM/TE split of the summation part of the thermal correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta1 {
    pub tm: Estimate,
    pub te: Estimate,
}

impl Delta1 {
    pub fn total(&self) -> f64 {
        self.tm.value + self.te.value
    }
}

/// First part of the thermal correction, from replacing the frequency
/// integral by the Matsubara sum of the zero-temperature coefficients:
/// (k_B T/(8 pi a^2)) [ sum'_l Phi(tau l) - int_0^inf Phi(tau t) dt ],
/// evaluated per polarization by the cell-paired difference kernel so the
/// result retains significance even though it is O(tau^2) of either term.
pub fn delta1(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<Delta1> {
    setup.validate()?;
    cfg.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta1",
            message: "requires T > 0".into(),
        });
    }
    let scales = reduced_scales(setup)?;
    let c = setup.couplings();
    let pref = setup.k_b * setup.t / (8.0 * PI * setup.a * setup.a);

    // anchor the stopping scale on the closed-form low-T estimate
    let est = asymptotics::thermal_asymptotes(setup)?;
    let scale_tm = (est.d1_tm / pref).abs();
    let scale_te = (est.d1_te / pref).abs();

    let phi_tol = 1e-12;
    let diff_tol = cfg.rel_tol.max(1e-5);
    let run = |tm: bool, scale_hint: f64| -> Result<QuadResult> {
        let mut f = |zeta: f64| {
            let (ptm, pte) = phi_parts(zeta, &c, cfg.paper_approx, phi_tol).expect("phi converges");
            if tm {
                ptm.value
            } else {
                pte.value
            }
        };
        numerics::sum_minus_integral(
            &mut f,
            scales.tau,
            SumMinusIntegralOpts {
                rel_tol: diff_tol,
                cap: cfg.l_max_cap,
                scale_hint,
            },
        )
    };
    let tm = run(true, scale_tm)?;
    let te = run(false, scale_te)?;
    for (label, r) in [("TM", &tm), ("TE", &te)] {
        if r.value != 0.0 && r.abs_err > r.value.abs() {
            return Err(CasimirError::PrecisionLoss {
                context: if label == "TM" { "delta1 TM" } else { "delta1 TE" },
                value: r.value,
                resolution: r.abs_err,
            });
        }
    }
    Ok(Delta1 {
        tm: Estimate::new(tm.value, tm.abs_err).scaled(pref),
        te: Estimate::new(te.value, te.abs_err).scaled(pref),
    })
}

/// TM/TE split of the tensor-correction part of the thermal correction,
/// separated into the zero-frequency term and the sum over l >= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta2 {
    pub l0_tm: Estimate,
    pub l0_te: Estimate,
    pub tail_tm: Estimate,
    pub tail_te: Estimate,
}

impl Delta2 {
    pub fn total(&self) -> f64 {
        self.l0_tm.value + self.l0_te.value + self.tail_tm.value + self.tail_te.value
    }
}

/// Second part of the thermal correction (first order in the thermal tensor
/// ratios): zero-frequency integrals plus the sum over nonzero Matsubara
/// frequencies.
pub fn delta2(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<Delta2> {
    setup.validate()?;
    cfg.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta2",
            message: "requires T > 0".into(),
        });
    }
    let scales = reduced_scales(setup)?;
    let tau = scales.tau;
    let c = setup.couplings();
    let apt = c.alpha * PI;
    let (rho_tm, rho_te) = static_amplitudes(&c);
    let (rho_tm2, rho_te2) = (rho_tm * rho_tm, rho_te * rho_te);
    let ratio_tol = (cfg.rel_tol * 1e-2).clamp(1e-13, 1e-6);

    // l = 0 integrals; the 1/y of the static ratio cancels against the measure
    let mut f_tm = |y: f64| {
        let r = delta_pi_ratio_static(y, tau, &c, ratio_tol).expect("static ratios converge");
        y * rho_tm2 / (y.exp() - rho_tm2) * r.r00
    };
    let q_tm = numerics::integrate_decay(&mut f_tm, 0.0, cfg.rel_tol);
    let mut f_te = |y: f64| {
        let r = delta_pi_ratio_static(y, tau, &c, ratio_tol).expect("static ratios converge");
        y * rho_te2 / (y.exp() - rho_te2) * r.rp
    };
    let q_te = numerics::integrate_decay(&mut f_te, 0.0, cfg.rel_tol);
    if !q_tm.converged || !q_te.converged {
        return Err(CasimirError::Quadrature {
            context: "delta2 l=0",
            requested: cfg.rel_tol,
            achieved: q_tm.abs_err.max(q_te.abs_err),
            evaluations: q_tm.evaluations + q_te.evaluations,
        });
    }
    let pref = setup.k_b * setup.t / (8.0 * PI * setup.a * setup.a);
    let l0_tm = Estimate::new(q_tm.value, q_tm.abs_err)
        .scaled(-2.0 * c.v_tilde / (apt + 2.0 * c.v_tilde))
        .scaled(pref);
    let l0_te = Estimate::new(q_te.value, q_te.abs_err)
        .scaled(-2.0 / (apt * c.v_tilde + 2.0))
        .scaled(pref);

    // l >= 1 sums, one per polarization
    let tail = |tm: bool| -> Result<(f64, f64, usize)> {
        matsubara_sum(
            |l| {
                let zeta = tau * l as f64;
                let mut f = |y: f64| {
                    let point = MatsubaraPoint { zeta, y, tau, l };
                    let ratios = ratios_at(&point, &c, ratio_tol).expect("thermal ratios converge");
                    let g = g_tilde(&point, &c, false);
                    let r0 = fresnel_zero(&point, &c, cfg.paper_approx).expect("y > 0");
                    if tm {
                        let w = g / (apt * point.y + 2.0 * g);
                        let r2 = r0.r_tm * r0.r_tm;
                        point.y * w * r2 / (point.y.exp() - r2) * ratios.r00
                    } else {
                        let w = point.y / (apt * g + 2.0 * point.y);
                        let r2 = r0.r_te * r0.r_te;
                        point.y * w * r2 / (point.y.exp() - r2) * ratios.rp
                    }
                };
                let r = numerics::integrate_decay(&mut f, zeta, cfg.rel_tol);
                if r.converged && r.value.is_finite() {
                    Ok((r.value, r.abs_err))
                } else {
                    Err(CasimirError::Quadrature {
                        context: "delta2 tail term",
                        requested: cfg.rel_tol,
                        achieved: r.abs_err,
                        evaluations: r.evaluations,
                    })
                }
            },
            false,
            tau,
            cfg,
            "delta2 tail",
        )
    };
    let (t_tm, e_tm, _) = tail(true)?;
    let (t_te, e_te, _) = tail(false)?;
    let tail_pref = -setup.k_b * setup.t / (2.0 * PI * setup.a * setup.a);
    Ok(Delta2 {
        l0_tm,
        l0_te,
        tail_tm: Estimate::new(t_tm, e_tm).scaled(tail_pref),
        tail_te: Estimate::new(t_te, e_te).scaled(tail_pref),
    })
}

/// All pieces of the decomposition F = E + Delta1 + Delta2 next to the
/// independently computed full F (J/m^2 each, with error estimates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub e0: Estimate,
    pub d1_tm: Estimate,
    pub d1_te: Estimate,
    pub d2_l0_tm: Estimate,
    pub d2_l0_te: Estimate,
    pub d2_tail_tm: Estimate,
    pub d2_tail_te: Estimate,
    pub f_total: Estimate,
}

impl EnergyBreakdown {
    /// Sum of all thermal-correction pieces.
    pub fn thermal_sum(&self) -> f64 {
        self.d1_tm.value
            + self.d1_te.value
            + self.d2_l0_tm.value
            + self.d2_l0_te.value
            + self.d2_tail_tm.value
            + self.d2_tail_te.value
    }

    /// f_total - (e0 + all parts): second-order small in the thermal ratios.
    pub fn residual(&self) -> f64 {
        self.f_total.value - self.e0.value - self.thermal_sum()
    }
}

/// Computes every piece of the decomposition plus the exact-coefficient F.
pub fn decompose(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<EnergyBreakdown> {
    let e0 = energy_t0(setup, cfg)?;
    let d1 = delta1(setup, cfg)?;
    let d2 = delta2(setup, cfg)?;
    let f_total = free_energy_full(setup, cfg)?;
    Ok(EnergyBreakdown {
        e0,
        d1_tm: d1.tm,
        d1_te: d1.te,
        d2_l0_tm: d2.l0_tm,
        d2_l0_te: d2.l0_te,
        d2_tail_tm: d2.tail_tm,
        d2_tail_te: d2.tail_te,
        f_total,
    })
}

/// Casimir entropy S = -dF/dT (J/(K m^2)) by Richardson-extrapolated central
/// differences of the full free energy.
pub fn entropy(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<Estimate> {
    setup.validate()?;
    cfg.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "entropy",
            message: "requires T > 0".into(),
        });
    }
    let mut failure: Option<CasimirError> = None;
    let (d, err) = {
        let mut f = |t: f64| {
            let mut s = *setup;
            s.t = t;
            match free_energy_full(&s, cfg) {
                Ok(e) => e.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        numerics::derivative_richardson(&mut f, setup.t, FD_REL_STEP_T, cfg.diff_step_floor)?
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let s = -d;
    if !s.is_finite() || (s != 0.0 && err > s.abs()) {
        return Err(CasimirError::PrecisionLoss {
            context: "entropy",
            value: s,
            resolution: err,
        });
    }
    Ok(Estimate::new(s, err))
}

/// Pressure split into the zero-temperature part and the thermal part.
/// Attraction convention: negative values pull the sheets together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureParts {
    pub total: Estimate,
    pub zero_t: Estimate,
    pub thermal: Estimate,
}

/// Casimir pressure P = -dF/da (Pa) by Richardson-extrapolated central
/// differences. The zero-temperature part and the thermal part
/// d(F - E)/da are differentiated separately: the thermal part is orders of
/// magnitude below P_0 at low T and would drown in the P_0 truncation error
/// otherwise. At T = 0 only the zero-temperature part exists.
pub fn pressure(setup: &PhysicalSetup, cfg: &SolverConfig) -> Result<PressureParts> {
    setup.validate()?;
    cfg.validate()?;

    let mut failure: Option<CasimirError> = None;
    let zero_t = {
        let mut f = |a: f64| {
            let mut s = *setup;
            s.a = a;
            match energy_t0(&s, cfg) {
                Ok(e) => e.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let (d, err) = numerics::derivative_richardson(&mut f, setup.a, FD_REL_STEP_A, cfg.diff_step_floor)?;
        Estimate::new(-d, err)
    };
    if let Some(e) = failure {
        return Err(e);
    }

    if setup.t == 0.0 {
        return Ok(PressureParts {
            total: zero_t,
            zero_t,
            thermal: Estimate::new(0.0, 0.0),
        });
    }

    let thermal = {
        let mut f = |a: f64| {
            let mut s = *setup;
            s.a = a;
            let r = free_energy_full(&s, cfg).and_then(|f| energy_t0(&s, cfg).map(|e| f.value - e.value));
            match r {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let (d, err) = numerics::derivative_richardson(&mut f, setup.a, FD_REL_STEP_A, cfg.diff_step_floor)?;
        Estimate::new(-d, err)
    };
    if let Some(e) = failure {
        return Err(e);
    }

    Ok(PressureParts {
        total: Estimate::new(zero_t.value + thermal.value, zero_t.abs_err + thermal.abs_err),
        zero_t,
        thermal,
    })
}
