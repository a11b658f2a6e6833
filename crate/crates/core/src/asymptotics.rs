//! Closed-form low-temperature expressions: the TM/TE tail coefficients by
//! quadrature, and the asymptotic free energy, entropy, pressure and
//! individual correction pieces.
//!
//! The TE zero-frequency piece is implemented with the prefactor that
//! follows from the first-order decomposition together with the static
//! tensor correction (a factor 1/2 relative to the commonly quoted form);
//! the full numerics in this crate reproduce that value to high accuracy.

use crate::error::{CasimirError, Result};
use crate::lifshitz::{energy_t0, Estimate, SolverConfig};
use crate::numerics::{self, Mapping};
use crate::params::{reduced_scales, Couplings, PhysicalSetup, ZETA3};

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// Cached tail coefficients for one (alpha, v_tilde) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    pub c_tm: f64,
    pub c_te: f64,
    /// Tolerance the quadratures were run at.
    pub tol: f64,
}

fn dispersive_root(c: &Couplings, x: f64) -> f64 {
    (c.v_tilde * c.v_tilde * x * x + 1.0).sqrt()
}

/// TM tail coefficient:
/// (alpha^2 pi^2/4) int_1^inf x^3 dx / [ s^3 (alpha pi x + s)(alpha pi x + 2s) ],
/// s = sqrt(vt^2 x^2 + 1). About 1.34e4 at the default couplings.
pub fn coeff_c_tm(c: &Couplings, tol: f64) -> Result<f64> {
    coeff_c_tm_mapped(c, tol, Mapping::Rational)
}

/// Same integral under a selectable semi-infinite mapping (stability checks).
pub fn coeff_c_tm_mapped(c: &Couplings, tol: f64, mapping: Mapping) -> Result<f64> {
    let apt = c.alpha * PI;
    let mut f = |x: f64| {
        let s = dispersive_root(c, x);
        x.powi(3) / (s.powi(3) * (apt * x + s) * (apt * x + 2.0 * s))
    };
    let r = numerics::integrate_semi_infinite(&mut f, 1.0, tol, mapping)?;
    Ok(c.alpha * c.alpha * PI * PI / 4.0 * r.value)
}

/// TE tail coefficient:
/// (alpha^2 pi^2/4) int_1^inf x dx / [ s (alpha pi s + x)(alpha pi s + 2x) ]
///   * [ 3/(2 s^2) - 1 ].
///
/// The integrand changes sign where vt^2 x^2 + 1 = 3/2; the domain is split
/// there so the adaptive error estimates stay sharp. About 1.1e-4 at the
/// default couplings.
pub fn coeff_c_te(c: &Couplings, tol: f64) -> Result<f64> {
    coeff_c_te_mapped(c, tol, Mapping::Rational)
}

/// Same integral under a selectable semi-infinite mapping.
pub fn coeff_c_te_mapped(c: &Couplings, tol: f64, mapping: Mapping) -> Result<f64> {
    let apt = c.alpha * PI;
    let mut f = |x: f64| {
        let s = dispersive_root(c, x);
        x / (s * (apt * s + x) * (apt * s + 2.0 * x)) * (1.5 / (s * s) - 1.0)
    };
    let root = integrand_sign_change(c);
    let below = numerics::integrate_adaptive(&mut f, 1.0, root, 0.0, tol, 400);
    if !below.converged {
        return Err(CasimirError::Quadrature {
            context: "coeff_c_te",
            requested: tol,
            achieved: below.abs_err,
            evaluations: below.evaluations,
        });
    }
    let above = numerics::integrate_semi_infinite(&mut f, root, tol, mapping)?;
    Ok(c.alpha * c.alpha * PI * PI / 4.0 * (below.value + above.value))
}

/// Root of 3/(2 (vt^2 x^2 + 1)) = 1: x = sqrt(1/2)/vt.
pub fn integrand_sign_change(c: &Couplings) -> f64 {
    (0.5_f64).sqrt() / c.v_tilde
}

// key: (alpha, v_tilde, tol) as bit patterns; value: (C_TM, C_TE)
type CoeffCache = Mutex<HashMap<(u64, u64, u64), (f64, f64)>>;

fn coeff_cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Both coefficients, computed once per (alpha, v_tilde, tol) and cached.
/// Safe for concurrent first use.
pub fn coefficients(c: &Couplings, tol: f64) -> Result<AsymptoticCoefficients> {
    let key = (c.alpha.to_bits(), c.v_tilde.to_bits(), tol.to_bits());
    let cache = coeff_cache();
    {
        let guard = cache.lock().expect("coefficient cache poisoned");
        if let Some(&(c_tm, c_te)) = guard.get(&key) {
            return Ok(AsymptoticCoefficients { c_tm, c_te, tol });
        }
    }
    let c_tm = coeff_c_tm(c, tol)?;
    let c_te = coeff_c_te(c, tol)?;
    let mut guard = cache.lock().expect("coefficient cache poisoned");
    guard.entry(key).or_insert((c_tm, c_te));
    Ok(AsymptoticCoefficients { c_tm, c_te, tol })
}

/// The five closed-form thermal-correction pieces (J/m^2) plus a validity
/// flag set when T exceeds 20% of the graphene effective temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAsymptotes {
    /// Summation part, TM: -(k_B T)^3/(hbar v_F)^2 * zeta(3)/4
    ///   * pi alpha^2/((alpha pi + 2 vt)(alpha pi + vt)).
    pub d1_tm: f64,
    /// Summation part, TE: +(k_B T)^3/(hbar c)^2 * zeta(3) pi alpha^2/8.
    pub d1_te: f64,
    /// Zero-frequency tensor part, TM:
    /// -(k_B T)^3/(hbar v_F)^2 * pi^3 alpha^2/(3 (pi alpha + 2 vt)(pi alpha + vt)).
    pub d2_l0_tm: f64,
    /// Zero-frequency tensor part, TE: +(k_B T)^3/(hbar c)^2 * pi^3 alpha^2/6.
    pub d2_l0_te: f64,
    /// Nonzero-frequency tensor part, TM + TE:
    /// (k_B T)^3/(hbar c)^2 * ln(a k_B T/(hbar c))
    ///   * (48 C_TM + 96 C_TE) zeta(3)/pi^3.
    pub d2_tail: f64,
    /// T > 0.2 T_eff^(g): outside the regime the expansion was derived in.
    pub validity_warning: bool,
}

impl ThermalAsymptotes {
    pub fn total(&self) -> f64 {
        self.d1_tm + self.d1_te + self.d2_l0_tm + self.d2_l0_te + self.d2_tail
    }
}

/// Whether `setup` violates the low-temperature condition of the expansion.
pub fn outside_validity(setup: &PhysicalSetup) -> bool {
    match reduced_scales(setup) {
        Ok(s) => setup.t > 0.2 * s.t_eff_g,
        Err(_) => true,
    }
}

/// Evaluates the five thermal-correction pieces at `setup`.
pub fn thermal_asymptotes(setup: &PhysicalSetup) -> Result<ThermalAsymptotes> {
    setup.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "thermal_asymptotes",
            message: "requires T > 0".into(),
        });
    }
    let c = setup.couplings();
    let apt = c.alpha * PI;
    let kt = setup.k_b * setup.t;
    let u3_c = kt.powi(3) / (setup.hbar_c * setup.hbar_c);
    let hbar_vf = setup.hbar_c * c.v_tilde;
    let u3_vf = kt.powi(3) / (hbar_vf * hbar_vf);
    let denom = (apt + 2.0 * c.v_tilde) * (apt + c.v_tilde);

    let coeffs = coefficients(&c, 1e-10)?;
    let lnarg = (setup.a * kt / setup.hbar_c).ln();

    Ok(ThermalAsymptotes {
        d1_tm: -u3_vf * (ZETA3 / 4.0) * PI * c.alpha * c.alpha / denom,
        d1_te: u3_c * (ZETA3 / 8.0) * PI * c.alpha * c.alpha,
        d2_l0_tm: -u3_vf * PI.powi(3) * c.alpha * c.alpha / (3.0 * denom),
        d2_l0_te: u3_c * PI.powi(3) * c.alpha * c.alpha / 6.0,
        d2_tail: u3_c * lnarg * ZETA3 * (48.0 * coeffs.c_tm + 96.0 * coeffs.c_te) / PI.powi(3),
        validity_warning: outside_validity(setup),
    })
}

/// Leading-term low-temperature free energy (J/m^2):
/// E(a) + (k_B T)^3/(hbar c)^2 ln(a k_B T/(hbar c)) 48 zeta(3) C_TM/pi^3.
/// With `with_nlo` the four next-to-leading T^3 pieces and the TE tail are
/// added, after which the omitted terms are of higher order.
pub fn free_energy_asym(setup: &PhysicalSetup, cfg: &SolverConfig, with_nlo: bool) -> Result<Estimate> {
    setup.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "free_energy_asym",
            message: "requires T > 0".into(),
        });
    }
    let e0 = energy_t0(setup, cfg)?;
    let c = setup.couplings();
    let coeffs = coefficients(&c, 1e-10)?;
    let kt = setup.k_b * setup.t;
    let u3_c = kt.powi(3) / (setup.hbar_c * setup.hbar_c);
    let lnarg = (setup.a * kt / setup.hbar_c).ln();
    let leading = u3_c * lnarg * 48.0 * ZETA3 * coeffs.c_tm / PI.powi(3);
    let mut value = e0.value + leading;
    if with_nlo {
        let t = thermal_asymptotes(setup)?;
        // everything except the TM tail, which is the leading term above
        let te_tail = u3_c * lnarg * 96.0 * ZETA3 * coeffs.c_te / PI.powi(3);
        value += t.d1_tm + t.d1_te + t.d2_l0_tm + t.d2_l0_te + te_tail;
    }
    Ok(Estimate::new(value, e0.abs_err))
}

/// Leading low-temperature entropy (J/(K m^2)):
/// S = -(k_B T/(hbar c))^2 ln(a k_B T/(hbar c)) 144 zeta(3) k_B C_TM/pi^3.
/// Positive whenever a k_B T/(hbar c) < 1, and -> 0 as T -> 0.
pub fn entropy_asym(setup: &PhysicalSetup) -> Result<f64> {
    setup.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "entropy_asym",
            message: "requires T > 0".into(),
        });
    }
    let c = setup.couplings();
    let coeffs = coefficients(&c, 1e-10)?;
    let kt = setup.k_b * setup.t;
    let x = kt / setup.hbar_c;
    let lnarg = (setup.a * x).ln();
    Ok(-x * x * lnarg * 144.0 * ZETA3 * setup.k_b * coeffs.c_tm / PI.powi(3))
}

/// Leading low-temperature thermal pressure correction (Pa):
/// Delta P = -(k_B T)^3/(hbar c)^2 48 zeta(3) C_TM/(pi^3 a). Negative (the
/// correction deepens the attraction) and proportional to 1/a.
pub fn pressure_asym(setup: &PhysicalSetup) -> Result<f64> {
    setup.validate()?;
    if setup.t <= 0.0 {
        return Err(CasimirError::Domain {
            context: "pressure_asym",
            message: "requires T > 0".into(),
        });
    }
    let c = setup.couplings();
    let coeffs = coefficients(&c, 1e-10)?;
    let kt = setup.k_b * setup.t;
    let u3_c = kt.powi(3) / (setup.hbar_c * setup.hbar_c);
    Ok(-u3_c * 48.0 * ZETA3 * coeffs.c_tm / (PI.powi(3) * setup.a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{ALPHA, V_TILDE};

    fn cpl() -> Couplings {
        Couplings {
            alpha: ALPHA,
            v_tilde: V_TILDE,
        }
    }

    #[test]
    fn c_tm_matches_frozen_quadrature_value() {
        let v = coeff_c_tm(&cpl(), 1e-10).unwrap();
        assert!((v / 13_408.050_826_676 - 1.0).abs() < 1e-8, "C_TM = {v}");
        // within 5% of the two-significant-figure 1.3e4
        assert!((v / 1.3e4 - 1.0).abs() < 0.05);
    }

    #[test]
    fn c_te_matches_frozen_quadrature_value() {
        let v = coeff_c_te(&cpl(), 1e-10).unwrap();
        assert!((v / 1.104_863_504_968e-4 - 1.0).abs() < 1e-7, "C_TE = {v}");
        assert!((v / 1.1e-4 - 1.0).abs() < 0.10);
        let c_tm = coeff_c_tm(&cpl(), 1e-10).unwrap();
        let ratio = 2.0 * v / c_tm;
        assert!((ratio / 1.7e-8 - 1.0).abs() < 0.15, "2 C_TE/C_TM = {ratio}");
    }

    #[test]
    fn c_tm_vanishes_like_alpha_squared() {
        // in the alpha -> 0 limit the denominators lose their alpha terms and
        // C_TM/alpha^2 approaches a constant
        let mk = |alpha: f64| Couplings {
            alpha,
            v_tilde: V_TILDE,
        };
        let a1 = ALPHA * 1e-3;
        let a2 = ALPHA * 1e-4;
        let v1 = coeff_c_tm(&mk(a1), 1e-9).unwrap() / (a1 * a1);
        let v2 = coeff_c_tm(&mk(a2), 1e-9).unwrap() / (a2 * a2);
        assert!((v1 / v2 - 1.0).abs() < 1e-2, "normalized: {v1} vs {v2}");
    }

    #[test]
    fn coefficients_stable_under_tol_halving_and_mapping_switch() {
        let c = cpl();
        let a = coeff_c_tm(&c, 1e-8).unwrap();
        let b = coeff_c_tm(&c, 5e-9).unwrap();
        assert!((a / b - 1.0).abs() < 1e-8);
        let m1 = coeff_c_tm_mapped(&c, 1e-10, Mapping::Rational).unwrap();
        let m2 = coeff_c_tm_mapped(&c, 1e-10, Mapping::ExpPanels).unwrap();
        assert!((m1 / m2 - 1.0).abs() < 1e-9, "{m1} vs {m2}");
        let t1 = coeff_c_te_mapped(&c, 1e-10, Mapping::Rational).unwrap();
        let t2 = coeff_c_te_mapped(&c, 1e-10, Mapping::ExpPanels).unwrap();
        assert!((t1 / t2 - 1.0).abs() < 1e-8, "{t1} vs {t2}");
    }

    #[test]
    fn sign_change_location() {
        let x = integrand_sign_change(&cpl());
        assert!((x - 212.132_034_355_964).abs() < 1e-9);
        // integrand positive below, negative above
        let c = cpl();
        let apt = ALPHA * PI;
        let f = |x: f64| {
            let s = dispersive_root(&c, x);
            x / (s * (apt * s + x) * (apt * s + 2.0 * x)) * (1.5 / (s * s) - 1.0)
        };
        assert!(f(x - 1.0) > 0.0 && f(x + 1.0) < 0.0);
    }

    #[test]
    fn cache_returns_identical_values() {
        let c = cpl();
        let a = coefficients(&c, 1e-9).unwrap();
        let b = coefficients(&c, 1e-9).unwrap();
        assert_eq!(a.c_tm.to_bits(), b.c_tm.to_bits());
        assert_eq!(a.c_te.to_bits(), b.c_te.to_bits());
    }

    #[test]
    fn asymptote_signs_and_separation_independence() {
        let setup = PhysicalSetup::new(1e-7, 2.0);
        let t = thermal_asymptotes(&setup).unwrap();
        assert!(t.d1_tm < 0.0);
        assert!(t.d1_te > 0.0);
        assert!(t.d2_l0_tm < 0.0);
        assert!(t.d2_l0_te > 0.0);
        assert!(t.d2_tail < 0.0, "negative logarithm regime");
        assert!(!t.validity_warning);
        // summation and zero-frequency pieces do not depend on a
        let other = thermal_asymptotes(&PhysicalSetup::new(3e-7, 2.0)).unwrap();
        assert_eq!(t.d1_tm, other.d1_tm);
        assert_eq!(t.d2_l0_tm, other.d2_l0_tm);
        assert_ne!(t.d2_tail, other.d2_tail);
    }

    #[test]
    fn tail_dominates_t3_pieces_as_t_drops() {
        let mut prev = 0.0;
        for &t in &[2.0, 0.5, 0.125] {
            let asym = thermal_asymptotes(&PhysicalSetup::new(1e-7, t)).unwrap();
            let frac = asym.d2_tail.abs() / (asym.d1_tm.abs() + asym.d2_l0_tm.abs());
            assert!(frac > prev, "log piece must grow relatively: {frac}");
            prev = frac;
        }
    }

    #[test]
    fn validity_warning_threshold() {
        let setup = PhysicalSetup::new(1e-7, 10.0); // T_eff_g ~ 38.2 K, threshold 7.63 K
        assert!(outside_validity(&setup));
        assert!(thermal_asymptotes(&setup).unwrap().validity_warning);
        let setup = PhysicalSetup::new(1e-7, 5.0);
        assert!(!outside_validity(&setup));
    }

    #[test]
    fn entropy_asym_is_positive_and_vanishes_at_zero() {
        let mut prev = f64::INFINITY;
        for &t in &[4.0, 2.0, 1.0, 0.5] {
            let s = entropy_asym(&PhysicalSetup::new(1e-7, t)).unwrap();
            assert!(s > 0.0);
            assert!(s < prev, "S must decrease on the halving sequence");
            prev = s;
        }
    }

    #[test]
    fn entropy_asym_consistent_with_t_derivative_of_leading_term() {
        // finite-difference -dF_asym/dT approaches entropy_asym like 1/|ln T|
        let cfg = SolverConfig::default();
        let mut prev = f64::INFINITY;
        for &t in &[2.0, 1.0, 0.5, 0.25] {
            let setup = PhysicalSetup::new(1e-7, t);
            let h = 1e-3 * t;
            let fp = free_energy_asym(&PhysicalSetup::new(1e-7, t + h), &cfg, false).unwrap();
            let fm = free_energy_asym(&PhysicalSetup::new(1e-7, t - h), &cfg, false).unwrap();
            let s_fd = -(fp.value - fm.value) / (2.0 * h);
            let s = entropy_asym(&setup).unwrap();
            let dev = (s_fd / s - 1.0).abs();
            assert!(dev < prev, "deviation must shrink: {dev}");
            // the neglected piece is the T^2-without-log term: ~1/(3 |ln|)
            let lnarg = (setup.a * setup.k_b * t / setup.hbar_c).ln().abs();
            assert!(dev < 1.5 / (3.0 * lnarg), "dev = {dev} at T = {t}");
            prev = dev;
        }
    }

    #[test]
    fn pressure_asym_structure() {
        let setup = PhysicalSetup::new(1e-7, 1.0);
        let dp = pressure_asym(&setup).unwrap();
        assert!(dp < 0.0, "thermal correction deepens attraction");
        // Delta P * a independent of a
        let dp2 = pressure_asym(&PhysicalSetup::new(2e-7, 1.0)).unwrap();
        assert!((dp * 1e-7 / (dp2 * 2e-7) - 1.0).abs() < 1e-12);
        // finite-difference -d/da of the leading thermal term matches exactly
        // (the log contributes the 1/a)
        let cfg = SolverConfig::default();
        let a = 1e-7;
        let h = 1e-9;
        let thermal = |a: f64| {
            let s = PhysicalSetup::new(a, 1.0);
            let f = free_energy_asym(&s, &cfg, false).unwrap().value;
            let e = energy_t0(&s, &cfg).unwrap().value;
            f - e
        };
        let mut f = |a: f64| thermal(a);
        let (d, _) = numerics::derivative_richardson(&mut f, a, h / a, 1e-12).unwrap();
        assert!((-d / dp - 1.0).abs() < 1e-8, "FD = {} vs {}", -d, dp);
    }
}
