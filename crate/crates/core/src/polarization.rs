//! Reduced graphene polarization-tensor components at imaginary Matsubara
//! frequencies: the zero-temperature parts, the exact thermal corrections
//! (Fermi-factor integrals), the static (zero-frequency) forms, and the
//! low-temperature asymptote valid at nonzero Matsubara indices.
//!
//! Everything here is dimensionless. The reduced components are
//! p00 = (2a/hbar) Pi_00 and p = ((2a)^3/hbar) Pi, functions of the
//! dimensionless frequency zeta, total momentum y = 2aq >= zeta and
//! temperature tau. The thermal-correction integrals always use the exact
//! dispersive root g = sqrt(vt^2 y^2 + (1 - vt^2) zeta^2); the `paper_approx`
//! flag (dropping vt^2 against 1) only enters the zero-temperature
//! coefficient path used by the free-energy kernel.

use crate::error::{CasimirError, Result};
use crate::numerics::{self, QuadResult};
use crate::params::{Couplings, Scales, ZETA3};

use std::f64::consts::PI;

/// A point of the reduced Matsubara grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraPoint {
    /// Dimensionless frequency zeta_l >= 0.
    pub zeta: f64,
    /// Dimensionless total momentum y >= zeta.
    pub y: f64,
    /// Dimensionless temperature tau >= 0.
    pub tau: f64,
    /// Matsubara index; 0 exactly when zeta = 0.
    pub l: u64,
}

impl MatsubaraPoint {
    pub fn new(l: u64, y: f64, scales: &Scales) -> Self {
        Self {
            zeta: scales.tau * l as f64,
            y,
            tau: scales.tau,
            l,
        }
    }

    /// y_perp^2 = y^2 - zeta^2, computed in factored form.
    pub fn y_perp_sq(&self) -> f64 {
        (self.y - self.zeta) * (self.y + self.zeta)
    }

    /// B_l = pi g / tau, the exact identity relating the Fermi-factor scale
    /// to the reduced variables. Requires tau > 0.
    pub fn b_l(&self, c: &Couplings) -> f64 {
        PI * g_tilde(self, c, false) / self.tau
    }
}

/// Reduced tensor components (p00, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationPair {
    pub p00: f64,
    pub p: f64,
}

/// A quadrature-based pair with per-component absolute error estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationEstimate {
    pub pair: PolarizationPair,
    pub p00_err: f64,
    pub p_err: f64,
}

/// Thermal-to-zero-temperature component ratios Delta p00/p00^(0) and
/// Delta p/p^(0); finite even at y_perp = 0 where both pairs vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalRatios {
    pub r00: f64,
    pub rp: f64,
    pub r00_err: f64,
    pub rp_err: f64,
}

/// Dispersive root g_l = 2a q_l. Exact mode keeps the (1 - vt^2) factor on
/// the frequency term; `paper_approx` drops vt^2 against unity.
pub fn g_tilde(point: &MatsubaraPoint, c: &Couplings, paper_approx: bool) -> f64 {
    let vt2 = c.v_tilde * c.v_tilde;
    let z2 = point.zeta * point.zeta;
    if paper_approx {
        (vt2 * point.y * point.y + z2).sqrt()
    } else {
        (vt2 * point.y * point.y + (1.0 - vt2) * z2).sqrt()
    }
}

/// Zero-temperature reduced pair: p00 = pi alpha y_perp^2/g, p = pi alpha y_perp^2 g.
pub fn pi_zero_pair(point: &MatsubaraPoint, c: &Couplings) -> Result<PolarizationPair> {
    let g = g_tilde(point, c, false);
    if g == 0.0 {
        return Err(CasimirError::Domain {
            context: "pi_zero_pair",
            message: "singular at y = zeta = 0".into(),
        });
    }
    let yps = point.y_perp_sq();
    Ok(PolarizationPair {
        p00: PI * c.alpha * yps / g,
        p: PI * c.alpha * yps * g,
    })
}

// Stable kernel pieces for the thermal-correction integrand.
//
// With r = vt^2 y_perp^2 / g^2 and X(u) = (1+u^2)^2 - 4 r u^2, the bracket of
// the p00 integrand is 1 - sqrt(Z00/2) with Z00 = sqrt(X) + 1 - u^2. Both
// 2 - Z00 = 4 r u^2/(1 + u^2 + sqrt(X)) and 1 - sqrt(1-c) = c/(1 + sqrt(1-c))
// are exact conjugate rewrites, so the kernel never suffers the u >> 1
// cancellation of the raw bracket.
struct Kernel {
    c_over_r: f64,
    c: f64,
    sqrt_x: f64,
}

fn kernel(u: f64, r: f64) -> Kernel {
    let u2 = u * u;
    let x = (1.0 + u2) * (1.0 + u2) - 4.0 * r * u2;
    let sqrt_x = x.sqrt();
    let c_over_r = 2.0 * u2 / (1.0 + u2 + sqrt_x);
    Kernel {
        c_over_r,
        c: r * c_over_r,
        sqrt_x,
    }
}

// p00 integrand divided by r: [1 - sqrt(Z00/2)]/r.
fn q00_over_r(u: f64, r: f64) -> f64 {
    let k = kernel(u, r);
    k.c_over_r / (1.0 + (1.0 - k.c).max(0.0).sqrt())
}

// p integrand divided by (r g^2):
// [ -zeta^2 + g^2 sqrt(Z00/2) (1 - r/sqrt(X)) ] / (r g^2)
//   = (1 - s/sqrt(X)) - (c/r)/(1 + s),   s = sqrt(1 - c),
// using the exact-mode identity g^2 (1 - r) = zeta^2.
fn qp_over_r(u: f64, r: f64) -> f64 {
    let k = kernel(u, r);
    let s = (1.0 - k.c).max(0.0).sqrt();
    (1.0 - s / k.sqrt_x) - k.c_over_r / (1.0 + s)
}

/// Exact thermal-correction ratios at l >= 1 by adaptive quadrature of the
/// Fermi-factor integrals after the substitution w = B_l u.
pub fn delta_pi_ratio_pair(point: &MatsubaraPoint, c: &Couplings, tol: f64) -> Result<ThermalRatios> {
    if point.tau <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta_pi_ratio_pair",
            message: "requires tau > 0".into(),
        });
    }
    if point.zeta <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta_pi_ratio_pair",
            message: "zeta = 0 must go through the static form".into(),
        });
    }
    let g = g_tilde(point, c, false);
    let vt2 = c.v_tilde * c.v_tilde;
    let r = (vt2 * point.y_perp_sq() / (g * g)).min(1.0);
    let b = PI * g / point.tau;
    // Fermi weight decays exactly exponentially in w; beyond w_max the
    // integrand is below tol * e^-50
    let w_max = 50.0 + tol.ln().abs();

    let mut f00 = |w: f64| q00_over_r(w / b, r) / (w.exp() + 1.0);
    let i00 = integrate_fermi(&mut f00, w_max, tol, 0.0)?;
    // the p-component integrand changes sign at 3 zeta^2 = 2 g^2 and is an
    // eps-level subtractive cancellation near that surface, leaving an
    // irreducible absolute noise of order eps per evaluation; the floor sits
    // above that noise and far below every physical use of the ratio
    let floor_p = (tol * i00.value).max(1e-14);
    let mut fp = |w: f64| qp_over_r(w / b, r) / (w.exp() + 1.0);
    let ip = integrate_fermi(&mut fp, w_max, tol, floor_p)?;

    // ratio00 = 8 I00 / (pi r) with I00 the u-integral of the raw bracket;
    // the 1/r is already folded into the kernel, and 1/B from du = dw/B.
    let scale = 8.0 / (PI * b);
    Ok(ThermalRatios {
        r00: scale * i00.value,
        rp: scale * ip.value,
        r00_err: scale * i00.abs_err,
        rp_err: scale * ip.abs_err,
    })
}

fn integrate_fermi<F: FnMut(f64) -> f64>(f: &mut F, w_max: f64, tol: f64, abs_floor: f64) -> Result<QuadResult> {
    // geometric panels resolve both the w ~ 1 Fermi knee and the decay tail
    let mut total = 0.0;
    let mut err = 0.0_f64;
    let mut evals = 0;
    let mut left = 0.0;
    let mut width = 1.0;
    while left < w_max {
        let right = (left + width).min(w_max);
        let r = numerics::integrate_adaptive(f, left, right, err.max(abs_floor).max(1e-300), tol * 0.25, 120);
        if !r.converged {
            return Err(CasimirError::Quadrature {
                context: "delta_pi fermi integral",
                requested: tol,
                achieved: r.abs_err,
                evaluations: evals + r.evaluations,
            });
        }
        total += r.value;
        err += r.abs_err;
        evals += r.evaluations;
        left = right;
        width *= 2.0;
    }
    Ok(QuadResult {
        value: total,
        abs_err: err,
        evaluations: evals,
        converged: true,
    })
}

/// Exact thermal corrections (Delta p00, Delta p) at l >= 1.
pub fn delta_pi_pair(point: &MatsubaraPoint, c: &Couplings, tol: f64) -> Result<PolarizationEstimate> {
    let ratios = delta_pi_ratio_pair(point, c, tol)?;
    let zero = pi_zero_pair(point, c)?;
    Ok(PolarizationEstimate {
        pair: PolarizationPair {
            p00: ratios.r00 * zero.p00,
            p: ratios.rp * zero.p,
        },
        p00_err: ratios.r00_err * zero.p00.abs(),
        p_err: ratios.rp_err * zero.p.abs(),
    })
}

/// Static (zeta = 0) thermal-correction ratios from the logarithmic /
/// Fermi-factor x-integral forms, with x = sin^2(theta) removing the
/// sqrt(x(1-x)) endpoint structure. r00 > 0 and rp < 0 always.
pub fn delta_pi_ratio_static(y: f64, tau: f64, c: &Couplings, tol: f64) -> Result<ThermalRatios> {
    if y <= 0.0 || tau <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta_pi_ratio_static",
            message: format!("requires y > 0 and tau > 0 (y = {y}, tau = {tau})"),
        });
    }
    let b0 = PI * c.v_tilde * y / tau;
    // at large B0 both x-integrals collapse into ~1/B0-wide corner regions;
    // an absolute floor keeps the quadrature from chasing relative accuracy
    // on values that are far below every use of the ratios
    let floor = 1e-15;
    // 2 B0 sqrt(x(1-x)) = B0 sin(2 theta)
    let mut f1 = |x: f64| {
        let arg = 2.0 * b0 * (x * (1.0 - x)).sqrt();
        (-arg).exp().ln_1p()
    };
    let j1 = numerics::integrate_endpoint_singular_abs(&mut f1, tol, floor)?;
    let mut f2 = |x: f64| {
        let s = (x * (1.0 - x)).sqrt();
        s / ((2.0 * b0 * s).exp() + 1.0)
    };
    let j2 = numerics::integrate_endpoint_singular_abs(&mut f2, tol, floor)?;

    // Delta p00 = 8 alpha tau J1/(pi vt^2), p00^0(0,y) = pi alpha y / vt
    // Delta p   = -16 alpha vt y^3 J2,     p^0(0,y)   = pi alpha vt y^3
    let s00 = 8.0 * tau / (PI * PI * c.v_tilde * y);
    let sp = -16.0 / PI;
    Ok(ThermalRatios {
        r00: s00 * j1.value,
        rp: sp * j2.value,
        r00_err: s00 * j1.abs_err,
        rp_err: sp.abs() * j2.abs_err,
    })
}

/// Static thermal corrections (Delta p00, Delta p) at zeta = 0 (log form).
pub fn delta_pi_static_pair(y: f64, tau: f64, c: &Couplings, tol: f64) -> Result<PolarizationEstimate> {
    let ratios = delta_pi_ratio_static(y, tau, c, tol)?;
    let p00_zero = PI * c.alpha * y / c.v_tilde;
    let p_zero = PI * c.alpha * c.v_tilde * y.powi(3);
    Ok(PolarizationEstimate {
        pair: PolarizationPair {
            p00: ratios.r00 * p00_zero,
            p: ratios.rp * p_zero,
        },
        p00_err: ratios.r00_err * p00_zero,
        p_err: ratios.rp_err * p_zero,
    })
}

/// Static thermal corrections in the equivalent Fermi-factor u-integral
/// representation, kept as an independent cross-check route. The difference
/// of the two u-integrals in the p00 component is regrouped exactly as
/// int_0^1 (1 - sqrt(1-u^2)) n_F du + int_1^inf n_F du so that no
/// large-term cancellation occurs; u = sin(phi) removes the endpoint root.
pub fn delta_pi_static_pair_alt(y: f64, tau: f64, c: &Couplings, tol: f64) -> Result<PolarizationEstimate> {
    if y <= 0.0 || tau <= 0.0 {
        return Err(CasimirError::Domain {
            context: "delta_pi_static_pair_alt",
            message: format!("requires y > 0 and tau > 0 (y = {y}, tau = {tau})"),
        });
    }
    let b0 = PI * c.v_tilde * y / tau;
    let half_pi = std::f64::consts::FRAC_PI_2;

    // (1 - cos phi) cos phi / (e^{B0 sin phi} + 1)
    let mut fa = |phi: f64| {
        let (s, co) = phi.sin_cos();
        (1.0 - co) * co / ((b0 * s).exp() + 1.0)
    };
    let ja = numerics::integrate_adaptive(&mut fa, 0.0, half_pi, 0.0, tol, 200);
    // tail int_1^inf du/(e^{B0 u}+1) = ln(1 + e^-B0)/B0
    let tail = (-b0).exp().ln_1p() / b0;

    // sin^2 phi / (e^{B0 sin phi} + 1)
    let mut fb = |phi: f64| {
        let s = phi.sin();
        s * s / ((b0 * s).exp() + 1.0)
    };
    let jb = numerics::integrate_adaptive(&mut fb, 0.0, half_pi, 0.0, tol, 200);
    if !ja.converged || !jb.converged {
        return Err(CasimirError::Quadrature {
            context: "delta_pi_static_pair_alt",
            requested: tol,
            achieved: ja.abs_err.max(jb.abs_err),
            evaluations: ja.evaluations + jb.evaluations,
        });
    }

    let s00 = 8.0 * c.alpha * y / c.v_tilde;
    let sp = -8.0 * c.alpha * c.v_tilde * y.powi(3);
    Ok(PolarizationEstimate {
        pair: PolarizationPair {
            p00: s00 * (ja.value + tail),
            p: sp * jb.value,
        },
        p00_err: s00 * ja.abs_err,
        p_err: sp.abs() * jb.abs_err,
    })
}

/// Low-temperature asymptotic ratios at l >= 1:
/// r00 = 6 zeta(3)/(pi B^3), rp = 12 zeta(3) (3 zeta^2/(2 g^2) - 1)/(pi B^3).
pub fn delta_pi_ratio_asym(point: &MatsubaraPoint, c: &Couplings) -> Result<ThermalRatios> {
    if point.l == 0 {
        return Err(CasimirError::Domain {
            context: "delta_pi_ratio_asym",
            message: "valid only for nonzero Matsubara indices".into(),
        });
    }
    let g = g_tilde(point, c, false);
    let b3 = (PI * g / point.tau).powi(3);
    let z_over_g = point.zeta / g;
    Ok(ThermalRatios {
        r00: 6.0 * ZETA3 / (PI * b3),
        rp: 12.0 * ZETA3 * (1.5 * z_over_g * z_over_g - 1.0) / (PI * b3),
        r00_err: 0.0,
        rp_err: 0.0,
    })
}

/// Low-temperature asymptote of the thermal corrections at l >= 1:
/// Delta p00 = 6 zeta(3) alpha y_perp^2/(g B^3),
/// Delta p   = 12 zeta(3) alpha y_perp^2 g (3 zeta^2/(2 g^2) - 1)/B^3.
pub fn delta_pi_asym_pair(point: &MatsubaraPoint, c: &Couplings) -> Result<PolarizationPair> {
    let ratios = delta_pi_ratio_asym(point, c)?;
    let zero = pi_zero_pair(point, c)?;
    Ok(PolarizationPair {
        p00: ratios.r00 * zero.p00,
        p: ratios.rp * zero.p,
    })
}

/// Nonlocal dielectric permittivities (eps_parallel, eps_perp) from a reduced
/// tensor pair: eps_par = 1 + p00/(2 y_perp), eps_perp = 1 + p/(2 y_perp zeta^2).
pub fn permittivity_pair(point: &MatsubaraPoint, pol: &PolarizationPair) -> Result<(f64, f64)> {
    let yps = point.y_perp_sq();
    if yps <= 0.0 {
        return Err(CasimirError::Domain {
            context: "permittivity_pair",
            message: "requires y_perp > 0".into(),
        });
    }
    if point.zeta <= 0.0 {
        return Err(CasimirError::Domain {
            context: "permittivity_pair",
            message: "eps_perp is singular at zeta = 0".into(),
        });
    }
    let y_perp = yps.sqrt();
    Ok((
        1.0 + pol.p00 / (2.0 * y_perp),
        1.0 + pol.p / (2.0 * y_perp * point.zeta * point.zeta),
    ))
}
