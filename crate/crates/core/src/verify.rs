//! The acceptance checks behind the `verify` command and the acceptance
//! test suite. Each check pins its thresholds in code and reports one
//! pass/fail line with the measured numbers.

use crate::asymptotics;
use crate::lifshitz::{self, SolverConfig};
use crate::params::{reduced_scales, Couplings, PhysicalSetup, HBAR_C, K_B, ZETA3};
use crate::polarization::{
    delta_pi_pair, delta_pi_ratio_asym, delta_pi_ratio_pair, delta_pi_ratio_static,
    delta_pi_static_pair, delta_pi_static_pair_alt, g_tilde, MatsubaraPoint,
};
use crate::reflection::static_amplitudes;

use rayon::prelude::*;
use std::f64::consts::PI;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    /// One `PASS`/`FAIL` line for terminal output.
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:2} {:<28} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn default_setup(t: f64) -> PhysicalSetup {
    PhysicalSetup::new(1e-7, t)
}

fn rel_dev(x: f64, target: f64) -> f64 {
    (x / target - 1.0).abs()
}

/// 1. Static amplitudes against their quoted squares.
pub fn criterion_static_amplitudes() -> CheckReport {
    let (rho_tm, rho_te) = static_amplitudes(&default_setup(1.0).couplings());
    let (sq_tm, sq_te) = (rho_tm * rho_tm, rho_te * rho_te);
    let d_tm = rel_dev(sq_tm, 0.600);
    let d_te = rel_dev(sq_te, 1.46e-9);
    CheckReport {
        id: 1,
        name: "static amplitudes",
        passed: d_tm <= 0.01 && d_te <= 0.05,
        detail: format!(
            "rho_tm^2 = {sq_tm:.6} (target 0.600 +-1%: dev {:.2e}), rho_te^2 = {sq_te:.4e} (target 1.46e-9 +-5%: dev {:.2e})",
            d_tm, d_te
        ),
    }
}

/// 2. Tail coefficients against their quoted two-figure values.
pub fn criterion_tail_coefficients() -> CheckReport {
    let c = default_setup(1.0).couplings();
    let (c_tm, c_te) = match (asymptotics::coeff_c_tm(&c, 1e-9), asymptotics::coeff_c_te(&c, 1e-9)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            return CheckReport {
                id: 2,
                name: "tail coefficients",
                passed: false,
                detail: format!("quadrature failure: {a:?} / {b:?}"),
            }
        }
    };
    let ratio = 2.0 * c_te / c_tm;
    let d1 = rel_dev(c_tm, 1.3e4);
    let d2 = rel_dev(c_te, 1.1e-4);
    let d3 = rel_dev(ratio, 1.7e-8);
    CheckReport {
        id: 2,
        name: "tail coefficients",
        passed: d1 <= 0.05 && d2 <= 0.10 && d3 <= 0.15,
        detail: format!(
            "C_TM = {c_tm:.4e} (dev {d1:.3}), C_TE = {c_te:.4e} (dev {d2:.3}), 2C_TE/C_TM = {ratio:.3e} (dev {d3:.3})"
        ),
    }
}

/// 3. The two static-correction representations agree to 1e-8.
pub fn criterion_static_identity() -> CheckReport {
    let c = default_setup(1.0).couplings();
    let mut worst = 0.0_f64;
    for &y in &[0.1, 1.0, 10.0] {
        for &tau in &[1e-3, 1e-2, 1e-1] {
            let a = delta_pi_static_pair(y, tau, &c, 1e-12).unwrap();
            let b = delta_pi_static_pair_alt(y, tau, &c, 1e-12).unwrap();
            worst = worst
                .max(rel_dev(a.pair.p00, b.pair.p00))
                .max(rel_dev(a.pair.p, b.pair.p));
        }
    }
    CheckReport {
        id: 3,
        name: "static form identity",
        passed: worst <= 1e-8,
        detail: format!("worst relative disagreement over the 3x3 grid: {worst:.2e} (<= 1e-8)"),
    }
}

/// 4. Thermal-correction quadrature approaches its low-T form as B grows.
pub fn criterion_thermal_asymptote() -> CheckReport {
    let c = default_setup(1.0).couplings();
    let mut devs = Vec::new();
    for &b_target in &[10.0, 30.0, 100.0] {
        let probe = MatsubaraPoint {
            zeta: 1.0,
            y: 2.0,
            tau: 0.1,
            l: 1,
        };
        let g = g_tilde(&probe, &c, false);
        let tau = PI * g / b_target;
        let point = MatsubaraPoint {
            zeta: 1.0,
            y: 2.0,
            tau,
            l: 1,
        };
        let exact = delta_pi_pair(&point, &c, 1e-10).unwrap();
        let asym = crate::polarization::delta_pi_asym_pair(&point, &c).unwrap();
        let dev = rel_dev(exact.pair.p00, asym.p00).max(rel_dev(exact.pair.p, asym.p));
        devs.push(dev);
    }
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    let last_ok = devs[2] <= 1e-2;
    CheckReport {
        id: 4,
        name: "low-T tensor asymptote",
        passed: monotone && last_ok,
        detail: format!(
            "deviations at B = 10/30/100: {:.3e}/{:.3e}/{:.3e} (monotone: {monotone}, last <= 1%: {last_ok})",
            devs[0], devs[1], devs[2]
        ),
    }
}

/// 5. Zero-temperature scale invariance and the ideal-metal bound.
pub fn criterion_scale_invariance() -> CheckReport {
    let cfg = SolverConfig::default();
    let mut products = Vec::new();
    let mut bound_ok = true;
    for &a in &[1e-8, 1e-7, 1e-6] {
        let setup = PhysicalSetup::new(a, 0.0);
        let e = lifshitz::energy_t0(&setup, &cfg).unwrap();
        bound_ok &= e.value.abs() <= PI * PI * HBAR_C / (720.0 * a.powi(3));
        products.push(e.value * a.powi(3));
    }
    let spread = products
        .windows(2)
        .map(|w| rel_dev(w[1], w[0]))
        .fold(0.0_f64, f64::max);
    let setup = PhysicalSetup::new(1e-7, 0.0);
    let p = lifshitz::pressure(&setup, &cfg).unwrap();
    let e = lifshitz::energy_t0(&setup, &cfg).unwrap();
    let p_dev = rel_dev(p.zero_t.value, 3.0 * e.value / setup.a);
    CheckReport {
        id: 5,
        name: "T = 0 scale invariance",
        passed: spread <= 1e-9 && p_dev <= 1e-6 && bound_ok,
        detail: format!(
            "E a^3 spread {spread:.2e} (<= 1e-9), P0 vs 3E/a dev {p_dev:.2e} (<= 1e-6), ideal-metal bound {}",
            if bound_ok { "holds" } else { "violated" }
        ),
    }
}

/// 6. The summation part of the thermal correction against its T^3 form.
pub fn criterion_delta1_asymptote() -> CheckReport {
    // the TE difference channel needs ~1.1e5 grid terms at the lowest point
    let cfg = SolverConfig::default().with_l_max_cap(400_000);
    let mut ratios = Vec::new();
    for &t in &[4.0, 2.0, 1.0, 0.5] {
        let setup = default_setup(t);
        let d1 = lifshitz::delta1(&setup, &cfg).unwrap();
        let asym = asymptotics::thermal_asymptotes(&setup).unwrap();
        ratios.push(d1.tm.value / asym.d1_tm);
    }
    let final_dev = (ratios[3] - 1.0).abs();
    let approaching = (ratios[3] - 1.0).abs() <= (ratios[0] - 1.0).abs();

    // log-log slope over the window [0.01, 0.05] T_eff^(g)
    let slope_ts = [0.4, 0.8, 1.6];
    let pts: Vec<(f64, f64)> = slope_ts
        .iter()
        .map(|&t| {
            let d1 = lifshitz::delta1(&default_setup(t), &cfg).unwrap();
            (t.ln(), (d1.tm.value + d1.te.value).abs().ln())
        })
        .collect();
    let xm = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - xm) * (p.0 - xm)).sum::<f64>();

    let slope_ok = (slope - 3.0).abs() <= 0.05;
    CheckReport {
        id: 6,
        name: "summation-part asymptote",
        passed: final_dev <= 0.05 && approaching && slope_ok,
        detail: format!(
            "ratio to the T^3 form over T = 4/2/1/0.5 K: {:.4}/{:.4}/{:.4}/{:.4} (final dev {final_dev:.3} <= 0.05), log-log slope {slope:.3} (3.0 +- 0.05)",
            ratios[0], ratios[1], ratios[2], ratios[3]
        ),
    }
}

/// 7. Zero-frequency tensor part against its closed T^3 form.
pub fn criterion_delta2_l0_asymptote() -> CheckReport {
    let cfg = SolverConfig::default();
    let mut details = Vec::new();
    let mut bound_ok = true;
    let mut te_ratio_meas = 0.0;
    for &a_ratio in &[20.0, 50.0, 100.0] {
        let scales = reduced_scales(&default_setup(1.0)).unwrap();
        let t = scales.t_eff_g / a_ratio;
        let setup = default_setup(t);
        let d2 = lifshitz::delta2(&setup, &cfg).unwrap();
        let asym = asymptotics::thermal_asymptotes(&setup).unwrap();
        let dev = rel_dev(d2.l0_tm.value, asym.d2_l0_tm);
        bound_ok &= dev <= 3.0 / a_ratio;
        details.push(format!("A={a_ratio}: dev {dev:.3} (bound {:.3})", 3.0 / a_ratio));
        te_ratio_meas = d2.l0_te.value / d2.l0_tm.value.abs();
    }
    let te_target = 8.6e-9;
    let te_dev = rel_dev(te_ratio_meas, te_target);
    let te_ok = te_dev <= 0.20;
    CheckReport {
        id: 7,
        name: "zero-frequency asymptote",
        passed: bound_ok && te_ok,
        detail: format!(
            "{}; TE/TM = {te_ratio_meas:.3e} vs {te_target:.1e} +-20% (dev {te_dev:.2}); \
             measured approach is ~3 ln(A)/A and the TE/TM value from the first-order \
             decomposition is half the quoted target",
            details.join(", ")
        ),
    }
}

/// 8. Leading-term convergence of the full thermal correction.
pub fn criterion_leading_term() -> CheckReport {
    let cfg = SolverConfig::default().with_l_max_cap(200_000);
    let scales = reduced_scales(&default_setup(1.0)).unwrap();
    let c = default_setup(1.0).couplings();
    let coeffs = asymptotics::coefficients(&c, 1e-10).unwrap();
    let c89 = 48.0 * ZETA3 * coeffs.c_tm * K_B.powi(3) / (PI.powi(3) * HBAR_C * HBAR_C);

    let mut dist = Vec::new();
    let mut thermal_at_star = 0.0;
    let mut residual_frac = 0.0;
    for &frac in &[0.2, 0.1, 0.05] {
        let t = frac * scales.t_eff_g;
        let setup = default_setup(t);
        let f = lifshitz::free_energy_full(&setup, &cfg).unwrap();
        let e = lifshitz::energy_t0(&setup, &cfg).unwrap();
        let thermal = f.value - e.value;
        let lnarg = (setup.a * K_B * t / HBAR_C).ln();
        let ratio = thermal / (t.powi(3) * lnarg) / c89;
        dist.push((ratio - 1.0).abs());
        if frac == 0.05 {
            thermal_at_star = thermal;
            let asym_total = asymptotics::free_energy_asym(&setup, &cfg, true).unwrap().value - e.value;
            residual_frac = ((thermal - asym_total) / thermal).abs();
        }
    }
    let converging = dist.windows(2).all(|w| w[1] < w[0]);
    let residual_ok = residual_frac <= 0.15;
    CheckReport {
        id: 8,
        name: "leading-term convergence",
        passed: converging && residual_ok,
        detail: format!(
            "|ratio-1| over T/T_eff^g = 0.2/0.1/0.05: {:.4}/{:.4}/{:.4} (decreasing: {converging}); \
             NLO-subtracted residual at T* = {residual_frac:.2} of thermal part {thermal_at_star:.3e} (<= 0.15: {residual_ok}); \
             the approach to the leading form is logarithmic with a large ln(1/vt)-scale offset",
            dist[0], dist[1], dist[2]
        ),
    }
}

/// 9. Entropy positivity, decrease toward zero, and the leading form.
pub fn criterion_nernst() -> CheckReport {
    let cfg = SolverConfig::default().with_l_max_cap(400_000);
    let ts = [8.0, 4.0, 2.0, 1.0, 0.5];
    let entropies: Vec<f64> = ts
        .par_iter()
        .map(|&t| lifshitz::entropy(&default_setup(t), &cfg).unwrap().value)
        .collect();
    let all_positive = entropies.iter().all(|&s| s > 0.0);
    let decreasing = entropies.windows(2).all(|w| w[1] < w[0]);
    let s_low = entropies[ts.len() - 1];
    let s_form = asymptotics::entropy_asym(&default_setup(0.5)).unwrap();
    let ratio = s_low / s_form;
    let ratio_ok = (ratio - 1.0).abs() <= 0.25;
    CheckReport {
        id: 9,
        name: "Nernst heat theorem",
        passed: all_positive && decreasing && ratio_ok,
        detail: format!(
            "S at T = 8/4/2/1/0.5 K: {} (positive: {all_positive}, decreasing toward 0: {decreasing}); \
             S(0.5 K)/leading-form = {ratio:.3} (|ratio-1| <= 0.25: {ratio_ok}); \
             the leading entropy form carries the same logarithmic offset as the free energy",
            entropies
                .iter()
                .map(|s| format!("{s:.3e}"))
                .collect::<Vec<_>>()
                .join("/")
        ),
    }
}

/// 10. Thermal pressure scales inversely with separation.
pub fn criterion_pressure_scaling() -> CheckReport {
    let cfg = SolverConfig {
        rel_tol: 1e-10,
        l_max_cap: 200_000,
        ..SolverConfig::default()
    };
    let p1 = lifshitz::pressure(&PhysicalSetup::new(1e-7, 1.0), &cfg).unwrap();
    let p2 = lifshitz::pressure(&PhysicalSetup::new(2e-7, 1.0), &cfg).unwrap();
    let ratio = p2.thermal.value / p1.thermal.value;
    let ok = (ratio - 0.5).abs() <= 0.05 && p1.thermal.value < 0.0;
    CheckReport {
        id: 10,
        name: "pressure 1/a scaling",
        passed: ok,
        detail: format!(
            "Delta P(2a)/Delta P(a) = {ratio:.4} (0.5 +- 10%); Delta P(a) = {:.3e} Pa (< 0)",
            p1.thermal.value
        ),
    }
}

// ---------- criterion 11: independent brute-force evaluator ----------

// Cubic Hermite interpolation of the thermal ratios on a graded grid in
// u = ln(1 + (y - zeta)); slopes from centered differences.
struct RatioTable {
    zeta: f64,
    u: Vec<f64>,
    r00: Vec<f64>,
    rp: Vec<f64>,
    d00: Vec<f64>,
    dp: Vec<f64>,
}

impl RatioTable {
    fn build(l: u64, tau: f64, c: &Couplings, span: f64, n: usize) -> Self {
        let zeta = tau * l as f64;
        let u_max = (1.0 + span).ln();
        let u: Vec<f64> = (0..n).map(|i| u_max * i as f64 / (n - 1) as f64).collect();
        let vals: Vec<(f64, f64)> = u
            .par_iter()
            .map(|&ui| {
                let y = zeta + (ui.exp() - 1.0);
                if l == 0 {
                    let y = y.max(1e-12);
                    let r = delta_pi_ratio_static(y, tau, c, 1e-10).unwrap();
                    (r.r00, r.rp)
                } else {
                    let point = MatsubaraPoint { zeta, y, tau, l };
                    if point.b_l(c) >= 1e3 {
                        let r = delta_pi_ratio_asym(&point, c).unwrap();
                        (r.r00, r.rp)
                    } else {
                        let r = delta_pi_ratio_pair(&point, c, 1e-10).unwrap();
                        (r.r00, r.rp)
                    }
                }
            })
            .collect();
        let r00: Vec<f64> = vals.iter().map(|v| v.0).collect();
        let rp: Vec<f64> = vals.iter().map(|v| v.1).collect();
        let slope = |ys: &[f64]| -> Vec<f64> {
            let h = u[1] - u[0];
            (0..n)
                .map(|i| {
                    if i == 0 {
                        (ys[1] - ys[0]) / h
                    } else if i == n - 1 {
                        (ys[n - 1] - ys[n - 2]) / h
                    } else {
                        (ys[i + 1] - ys[i - 1]) / (2.0 * h)
                    }
                })
                .collect()
        };
        let d00 = slope(&r00);
        let dp = slope(&rp);
        RatioTable {
            zeta,
            u,
            r00,
            rp,
            d00,
            dp,
        }
    }

    fn eval(&self, y: f64) -> (f64, f64) {
        let u = (1.0 + (y - self.zeta)).ln();
        let h = self.u[1] - self.u[0];
        let i = ((u / h) as usize).min(self.u.len() - 2);
        let t = (u - self.u[i]) / h;
        let hermite = |y0: f64, y1: f64, m0: f64, m1: f64| {
            let t2 = t * t;
            let t3 = t2 * t;
            (2.0 * t3 - 3.0 * t2 + 1.0) * y0
                + (t3 - 2.0 * t2 + t) * h * m0
                + (-2.0 * t3 + 3.0 * t2) * y1
                + (t3 - t2) * h * m1
        };
        (
            hermite(self.r00[i], self.r00[i + 1], self.d00[i], self.d00[i + 1]),
            hermite(self.rp[i], self.rp[i + 1], self.dp[i], self.dp[i + 1]),
        )
    }
}

/// Brute-force free energy: explicit summation to `l_max` with a fixed
/// fine trapezoid in y. Independent of the adaptive quadrature and of the
/// Matsubara stopping machinery of the production path; the polarization
/// ratios are shared (their correctness is covered by criteria 3 and 4)
/// but tabulated and interpolated rather than evaluated through the
/// production integrator.
pub fn free_energy_brute_force(setup: &PhysicalSetup, l_max: u64) -> f64 {
    let scales = reduced_scales(setup).unwrap();
    let tau = scales.tau;
    let c = setup.couplings();
    let span = 60.0;
    // fine grid while terms matter; terms with e^-zeta below 1e-26 of the
    // total use a coarse grid (they are far below the 1e-6 comparison level)
    let fine_cut = (60.0 / tau) as u64;

    let term = |l: u64| -> f64 {
        let zeta = tau * l as f64;
        let n_grid: usize = if l <= fine_cut { 240_000 } else { 2_000 };
        let table = if l <= fine_cut {
            Some(RatioTable::build(l, tau, &c, span, 1600))
        } else {
            None
        };
        let h = span / n_grid as f64;
        let integrand = |y: f64| -> f64 {
            if y <= zeta {
                return 0.0;
            }
            let (r00, rp) = match &table {
                Some(t) => t.eval(y),
                None => (0.0, 0.0),
            };
            let (r_tm, r_te) = if l == 0 {
                let p00 = (PI * c.alpha * y / c.v_tilde) * (1.0 + r00);
                let p = (PI * c.alpha * c.v_tilde * y.powi(3)) * (1.0 + rp);
                (p00 / (p00 + 2.0 * y), -p / (p + 2.0 * y.powi(3)))
            } else {
                let point = MatsubaraPoint { zeta, y, tau, l };
                let g = g_tilde(&point, &c, false);
                let yps = point.y_perp_sq();
                let p00 = (PI * c.alpha * yps / g) * (1.0 + r00);
                let p = (PI * c.alpha * yps * g) * (1.0 + rp);
                (
                    point.y * p00 / (point.y * p00 + 2.0 * yps),
                    -p / (p + 2.0 * yps * point.y),
                )
            };
            y * ((-r_tm * r_tm * (-y).exp()).ln_1p() + (-r_te * r_te * (-y).exp()).ln_1p())
        };
        // trapezoid on [zeta + h, zeta + span] plus a triangle for the first
        // cell (the l = 0 integrand has an integrable log endpoint at y = 0)
        let mut acc = 0.5 * integrand(zeta + h);
        for i in 2..n_grid {
            acc += integrand(zeta + i as f64 * h);
        }
        acc += 0.5 * integrand(zeta + span);
        let mut val = acc * h;
        val += 0.5 * h * integrand(zeta + h);
        if l == 0 {
            val * 0.5
        } else {
            val
        }
    };

    let sum: f64 = (0..=l_max).map(term).sum();
    setup.k_b * setup.t / (8.0 * PI * setup.a * setup.a) * sum
}

/// 11. Full free energy against the brute-force evaluator at 300 K.
pub fn criterion_oracle_equivalence() -> CheckReport {
    let setup = default_setup(300.0);
    let cfg = SolverConfig::default();
    let f = lifshitz::free_energy_full(&setup, &cfg).unwrap();
    let oracle = free_energy_brute_force(&setup, 10_000);
    let dev = rel_dev(f.value, oracle);
    CheckReport {
        id: 11,
        name: "oracle equivalence",
        passed: dev <= 1e-6,
        detail: format!(
            "F_full = {:.9e}, brute force = {oracle:.9e}, rel dev {dev:.2e} (<= 1e-6)",
            f.value
        ),
    }
}

/// Runs criteria 1 through 11 (12, output determinism, lives with the CLI).
pub fn run_core_checks() -> Vec<CheckReport> {
    vec![
        criterion_static_amplitudes(),
        criterion_tail_coefficients(),
        criterion_static_identity(),
        criterion_thermal_asymptote(),
        criterion_scale_invariance(),
        criterion_delta1_asymptote(),
        criterion_delta2_l0_asymptote(),
        criterion_leading_term(),
        criterion_nernst(),
        criterion_pressure_scaling(),
        criterion_oracle_equivalence(),
    ]
}
