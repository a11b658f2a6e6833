//! Physical constants, input validation, and conversion from SI inputs to the
//! dimensionless internal variables used by every other module.
//!
//! All physics beyond this module is done in the reduced variables
//! y = 2aq, zeta = 2a xi/c and tau = 4 pi a k_B T /(hbar c); SI units appear
//! only at the API boundary and in final reports.

use crate::error::{CasimirError, Result};

/// Speed of light (m/s), exact.
pub const C: f64 = 299_792_458.0;
/// Reduced Planck constant (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K), exact since the 2019 SI redefinition.
pub const K_B: f64 = 1.380_649e-23;
/// hbar·c (J·m).
pub const HBAR_C: f64 = HBAR * C;
/// Fine-structure constant, CODATA 2018.
pub const ALPHA: f64 = 7.297_352_569_3e-3;
/// Reduced Fermi velocity of graphene, v_F/c.
pub const V_TILDE: f64 = 1.0 / 300.0;
/// Riemann zeta(3) (Apery's constant).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Separation, temperature and the material/fundamental constants of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalSetup {
    /// Sheet separation a (m), > 0.
    pub a: f64,
    /// Temperature T (K), >= 0.
    pub t: f64,
    /// Fine-structure constant.
    pub alpha: f64,
    /// Reduced Fermi velocity v_F/c.
    pub v_tilde: f64,
    /// hbar·c (J·m).
    pub hbar_c: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
}

impl PhysicalSetup {
    /// Setup with default constants at separation `a` (m) and temperature `t` (K).
    pub fn new(a: f64, t: f64) -> Self {
        Self {
            a,
            t,
            alpha: ALPHA,
            v_tilde: V_TILDE,
            hbar_c: HBAR_C,
            k_b: K_B,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_v_tilde(mut self, v_tilde: f64) -> Self {
        self.v_tilde = v_tilde;
        self
    }

    // negated comparisons double as NaN rejection
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let fail = |message: String| {
            Err(CasimirError::Domain {
                context: "PhysicalSetup",
                message,
            })
        };
        if !(self.a > 0.0) || !self.a.is_finite() {
            return fail(format!("separation a = {} must be positive and finite", self.a));
        }
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return fail(format!("temperature T = {} must be >= 0 and finite", self.t));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail(format!("alpha = {} must lie in (0, 1)", self.alpha));
        }
        if !(self.v_tilde > 0.0 && self.v_tilde < 1.0) {
            return fail(format!("v_tilde = {} must lie in (0, 1)", self.v_tilde));
        }
        if !(self.hbar_c > 0.0) || !(self.k_b > 0.0) {
            return fail("hbar_c and k_B must be positive".to_string());
        }
        Ok(())
    }

    /// The two dimensionless coupling constants the reduced physics depends on.
    pub fn couplings(&self) -> Couplings {
        Couplings {
            alpha: self.alpha,
            v_tilde: self.v_tilde,
        }
    }
}

/// (alpha, v_tilde): everything in the reduced formulation depends only on these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub alpha: f64,
    pub v_tilde: f64,
}

/// Dimensionless temperature bundle derived from a `PhysicalSetup`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    /// tau = 4 pi a k_B T/(hbar c) = 2 pi T/T_eff.
    pub tau: f64,
    /// Effective temperature T_eff = hbar c/(2 a k_B) (K).
    pub t_eff: f64,
    /// Graphene effective temperature T_eff^(g) = hbar v_F/(2 a k_B) (K).
    pub t_eff_g: f64,
    /// T_eff^(g)/T; +inf at T = 0.
    pub a_ratio: f64,
}

/// Reduced scales; tau = 0 and a_ratio = +inf at T = 0.
pub fn reduced_scales(setup: &PhysicalSetup) -> Result<Scales> {
    setup.validate()?;
    let tau = 4.0 * std::f64::consts::PI * setup.a * setup.k_b * setup.t / setup.hbar_c;
    let t_eff = setup.hbar_c / (2.0 * setup.a * setup.k_b);
    let t_eff_g = setup.v_tilde * t_eff;
    let a_ratio = if setup.t == 0.0 { f64::INFINITY } else { t_eff_g / setup.t };
    Ok(Scales {
        tau,
        t_eff,
        t_eff_g,
        a_ratio,
    })
}

/// Dimensionless Matsubara frequency zeta_l = tau * l.
pub fn matsubara_zeta(l: u64, scales: &Scales) -> f64 {
    scales.tau * l as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tau_at_100nm_300k() {
        let s = reduced_scales(&PhysicalSetup::new(1e-7, 300.0)).unwrap();
        // direct evaluation of tau = 4 pi a k_B T/(hbar c)
        assert!((s.tau - 0.164_633_244_719_789_5).abs() < 1e-12, "tau = {}", s.tau);
    }

    #[test]
    fn graphene_effective_temperature_at_100nm() {
        let s = reduced_scales(&PhysicalSetup::new(1e-7, 300.0)).unwrap();
        assert!((s.t_eff_g - 38.164_741_986_794_6).abs() < 1e-9, "T_eff_g = {}", s.t_eff_g);
        // consistent with the working bound T << 30 K at a = 100 nm
        assert!(s.t_eff_g > 30.0 && s.t_eff_g < 40.0);
    }

    #[test]
    fn zero_temperature_is_distinguished() {
        let s = reduced_scales(&PhysicalSetup::new(1e-7, 0.0)).unwrap();
        assert_eq!(s.tau, 0.0);
        assert!(s.a_ratio.is_infinite() && s.a_ratio > 0.0);
    }

    #[test]
    fn matsubara_zeta_is_linear_in_l() {
        let s = Scales {
            tau: 0.1,
            t_eff: 1.0,
            t_eff_g: 1.0,
            a_ratio: 1.0,
        };
        assert_eq!(matsubara_zeta(0, &s), 0.0);
        assert!((matsubara_zeta(3, &s) - 0.3).abs() < 1e-15);
        let s300 = reduced_scales(&PhysicalSetup::new(1e-7, 300.0)).unwrap();
        assert!((matsubara_zeta(1, &s300) - s300.tau).abs() == 0.0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(reduced_scales(&PhysicalSetup::new(-1e-7, 300.0)).is_err());
        assert!(reduced_scales(&PhysicalSetup::new(0.0, 300.0)).is_err());
        assert!(reduced_scales(&PhysicalSetup::new(1e-7, -1.0)).is_err());
    }

    proptest! {
        #[test]
        fn tau_linear_in_a_and_t(a in 1e-9..1e-5f64, t in 1e-3..1e3f64) {
            let s = reduced_scales(&PhysicalSetup::new(a, t)).unwrap();
            let s2a = reduced_scales(&PhysicalSetup::new(2.0 * a, t)).unwrap();
            let s2t = reduced_scales(&PhysicalSetup::new(a, 2.0 * t)).unwrap();
            prop_assert!((s2a.tau / s.tau - 2.0).abs() < 1e-14);
            prop_assert!((s2t.tau / s.tau - 2.0).abs() < 1e-14);
        }

        #[test]
        fn effective_temperature_ratio_is_v_tilde(a in 1e-9..1e-5f64, t in 0.0..1e3f64) {
            let setup = PhysicalSetup::new(a, t);
            let s = reduced_scales(&setup).unwrap();
            prop_assert!((s.t_eff_g / s.t_eff - setup.v_tilde).abs() < 1e-14 * setup.v_tilde);
            if t > 0.0 {
                prop_assert!((s.a_ratio * t - s.t_eff_g).abs() <= 1e-14 * s.t_eff_g);
            }
        }
    }
}
