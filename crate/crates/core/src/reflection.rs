//! TM/TE reflection coefficients of a single graphene sheet, built from
//! reduced polarization-tensor components.

use crate::error::{CasimirError, Result};
use crate::params::Couplings;
use crate::polarization::{g_tilde, MatsubaraPoint, PolarizationPair};

use std::f64::consts::PI;

/// Reflection amplitudes at one Matsubara point. r_tm lies in [0, 1); r_te
/// carries the conventional minus sign and lies in (-1, 0]. Only the squares
/// enter the free energy, so the sign is physically inert.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
}

/// Coefficients from the full (zero-T + thermal) tensor pair:
/// r_tm = y p00/(y p00 + 2 y_perp^2), r_te = -p/(p + 2 y_perp^2 y).
///
/// At y_perp = 0 both numerator and denominator vanish quadratically; the
/// removable limit has equal magnitudes alpha pi/(alpha pi + 2) (normal
/// incidence is polarization-blind). The thermal shift of that limit is
/// O(tau^3) and the point has zero measure in every integral.
pub fn fresnel_full(point: &MatsubaraPoint, c: &Couplings, pol_total: &PolarizationPair) -> ReflectionPair {
    let yps = point.y_perp_sq();
    if yps <= 0.0 {
        let m = c.alpha * PI / (c.alpha * PI + 2.0);
        return ReflectionPair { r_tm: m, r_te: -m };
    }
    ReflectionPair {
        r_tm: point.y * pol_total.p00 / (point.y * pol_total.p00 + 2.0 * yps),
        r_te: -pol_total.p / (pol_total.p + 2.0 * yps * point.y),
    }
}

/// Zero-temperature coefficients:
/// r_tm = alpha pi y/(alpha pi y + 2 g), r_te = -alpha pi g/(alpha pi g + 2 y),
/// with g per the `paper_approx` flag.
pub fn fresnel_zero(point: &MatsubaraPoint, c: &Couplings, paper_approx: bool) -> Result<ReflectionPair> {
    if point.y <= 0.0 {
        return Err(CasimirError::Domain {
            context: "fresnel_zero",
            message: "requires y > 0".into(),
        });
    }
    let g = g_tilde(point, c, paper_approx);
    let apt = c.alpha * PI;
    Ok(ReflectionPair {
        r_tm: apt * point.y / (apt * point.y + 2.0 * g),
        r_te: -apt * g / (apt * g + 2.0 * point.y),
    })
}

/// Static amplitudes (the l = 0 values of the zero-T coefficients):
/// rho_tm = alpha pi/(alpha pi + 2 vt), rho_te = alpha pi vt/(2 + alpha pi vt).
pub fn static_amplitudes(c: &Couplings) -> (f64, f64) {
    let apt = c.alpha * PI;
    (apt / (apt + 2.0 * c.v_tilde), apt * c.v_tilde / (2.0 + apt * c.v_tilde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{ALPHA, V_TILDE};
    use crate::polarization::pi_zero_pair;
    use proptest::prelude::*;

    fn cpl() -> Couplings {
        Couplings {
            alpha: ALPHA,
            v_tilde: V_TILDE,
        }
    }

    fn point(zeta: f64, y: f64) -> MatsubaraPoint {
        MatsubaraPoint {
            zeta,
            y,
            tau: 0.1,
            l: if zeta == 0.0 { 0 } else { 1 },
        }
    }

    #[test]
    fn full_reduces_to_zero_t_on_zero_t_input() {
        let c = cpl();
        for &(zeta, y) in &[(0.0, 0.5), (0.2, 1.0), (1.0, 3.0)] {
            let p = point(zeta, y);
            let pol = pi_zero_pair(&p, &c).unwrap();
            let full = fresnel_full(&p, &c, &pol);
            let zero = fresnel_zero(&p, &c, false).unwrap();
            assert!((full.r_tm - zero.r_tm).abs() < 1e-14, "zeta={zeta} y={y}");
            assert!((full.r_te - zero.r_te).abs() < 1e-14, "zeta={zeta} y={y}");
        }
    }

    #[test]
    fn transparent_sheet() {
        let c = cpl();
        let r = fresnel_full(&point(0.2, 1.0), &c, &PolarizationPair { p00: 0.0, p: 0.0 });
        assert_eq!((r.r_tm, r.r_te), (0.0, 0.0));
    }

    #[test]
    fn normal_incidence_magnitudes_coincide() {
        let c = cpl();
        let apt = ALPHA * PI;
        let expect = apt / (apt + 2.0);
        // k_perp = 0 limit of the full coefficients (removable 0/0)
        let p = point(1.0, 1.0);
        let pol = pi_zero_pair(&p, &c).unwrap();
        let r = fresnel_full(&p, &c, &pol);
        assert!((r.r_tm - expect).abs() < 1e-13);
        assert!((r.r_te + expect).abs() < 1e-13);
        // exact-mode fresnel_zero reaches the same limit by direct evaluation
        let z = fresnel_zero(&p, &c, false).unwrap();
        assert!((z.r_tm - expect).abs() < 1e-13);
        assert!((z.r_te + expect).abs() < 1e-13);
    }

    #[test]
    fn static_amplitudes_match_reported_squares() {
        let (rho_tm, rho_te) = static_amplitudes(&cpl());
        assert!((rho_tm * rho_tm - 0.600_181_321_735_725).abs() < 1e-12);
        assert!((rho_te * rho_te - 1.459_804_562_246_5e-9).abs() < 1e-19);
        // alpha -> 0: no coupling
        let (a, b) = static_amplitudes(&Couplings {
            alpha: 0.0,
            v_tilde: V_TILDE,
        });
        assert_eq!((a, b), (0.0, 0.0));
    }

    #[test]
    fn zero_t_l0_is_y_independent() {
        let c = cpl();
        let (rho_tm, rho_te) = static_amplitudes(&c);
        for &y in &[0.01, 0.5, 7.0] {
            let r = fresnel_zero(&point(0.0, y), &c, false).unwrap();
            assert!((r.r_tm - rho_tm).abs() < 1e-14);
            assert!((r.r_te + rho_te).abs() < 1e-14);
        }
    }

    #[test]
    fn monotonicity_in_y_at_fixed_zeta() {
        let c = cpl();
        let zeta = 0.5;
        let mut prev_tm = -1.0;
        let mut prev_te_mag = 2.0;
        for i in 0..40 {
            let y = zeta + 0.05 * (i + 1) as f64;
            let r = fresnel_zero(&point(zeta, y), &c, false).unwrap();
            assert!(r.r_tm > prev_tm, "r_tm not increasing at y={y}");
            assert!(r.r_te.abs() < prev_te_mag, "|r_te| not decreasing at y={y}");
            prev_tm = r.r_tm;
            prev_te_mag = r.r_te.abs();
        }
    }

    #[test]
    fn first_order_expansion_residual_is_second_order() {
        // (full - zero) minus the explicit first-order form scales like the
        // square of the thermal ratio under tau-halving
        let c = cpl();
        let mut devs = Vec::new();
        for &tau in &[0.4, 0.2, 0.1] {
            let p = MatsubaraPoint {
                zeta: tau,
                y: 1.0,
                tau,
                l: 1,
            };
            let zero = pi_zero_pair(&p, &c).unwrap();
            let ratios = crate::polarization::delta_pi_ratio_pair(&p, &c, 1e-12).unwrap();
            let total = PolarizationPair {
                p00: zero.p00 * (1.0 + ratios.r00),
                p: zero.p * (1.0 + ratios.rp),
            };
            let full = fresnel_full(&p, &c, &total);
            let z = fresnel_zero(&p, &c, false).unwrap();
            let g = g_tilde(&p, &c, false);
            // first-order: delta r_tm = (2 y_perp^2 r0)/(y p00_0 + 2 y_perp^2) * ratio00
            let yps = p.y_perp_sq();
            let first = 2.0 * yps * z.r_tm / (p.y * zero.p00 + 2.0 * yps) * ratios.r00;
            let dev = ((full.r_tm - z.r_tm) - first).abs();
            let _ = g;
            devs.push((dev, ratios.r00));
        }
        // ratio halves roughly like tau^3; residual must fall much faster than ratio
        for w in devs.windows(2) {
            let (d0, r0) = w[0];
            let (d1, r1) = w[1];
            let ratio_drop = r1 / r0;
            assert!(
                d1 <= d0 * ratio_drop * ratio_drop * 4.0,
                "residual not second-order small: {d0:.3e} -> {d1:.3e} while ratio {r0:.3e} -> {r1:.3e}"
            );
        }
    }

    proptest! {
        #[test]
        fn bounds_hold_for_physical_inputs(zeta in 0.0..3.0f64, dy in 1e-6..5.0f64, scale in 0.0..0.2f64) {
            let c = cpl();
            let y = zeta + dy;
            let p = MatsubaraPoint { zeta, y, tau: 0.1, l: if zeta == 0.0 { 0 } else { 1 } };
            let zero = pi_zero_pair(&p, &c).unwrap();
            // physical totals: p00 >= 0 always; p can dip negative at zeta ~ 0
            // but stays above -2 y_perp^2 y for |thermal| << zero-T part
            let pol = PolarizationPair { p00: zero.p00 * (1.0 + scale), p: zero.p * (1.0 - scale) };
            let r = fresnel_full(&p, &c, &pol);
            prop_assert!((0.0..1.0).contains(&r.r_tm));
            prop_assert!(r.r_te <= 0.0 && r.r_te > -1.0);
            prop_assert!(r.r_tm * r.r_tm < 1.0 && r.r_te * r.r_te < 1.0);
            let z = fresnel_zero(&p, &c, false).unwrap();
            prop_assert!((0.0..1.0).contains(&z.r_tm));
            prop_assert!(z.r_te <= 0.0 && z.r_te > -1.0);
        }
    }
}
