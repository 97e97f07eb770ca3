//! Shell window profile and its squared-profile moment integrals.
//!
//! The smearing kernel is a uniform ball of radius 1 from which a concentric
//! ball of radius `b = 1 + delta` is subtracted with the weight that keeps
//! the net volume integral zero and the central value of the Fourier profile
//! at one.  [`window_ft`] evaluates that profile `W(z)` as a function of the
//! dimensionless radial wavenumber `z` (wavenumber times ball radius).
//!
//! Physical observables reduce to two families of moments of the squared
//! profile:
//!
//! * [`radial_moment`] — `∫_β^∞ z^µ W(z)² dz`, with an infrared cutoff `β`
//!   (cutoff wavenumber times ball radius);
//! * [`overlap_moment`] — the same integrand times `sin(αz)/(αz)`, where `α`
//!   is the separation of two smearing centres in units of the ball radius.
//!
//! Both are evaluated by an analytic route that is fast enough for dense
//! parameter sweeps: the integrand's trigonometric numerator is expanded
//! into pure `z^j·{1, cos(wz), sin(wz)}` terms, integrated in closed form on
//! `[z₀, ∞)` through power-law trigonometric tails, and bridged on `[β, z₀)`
//! by the Taylor series of the squared profile.  A structurally independent
//! quadrature route ([`radial_moment_quadrature`],
//! [`overlap_moment_quadrature`]) based on adaptive Gauss–Legendre panels
//! plus averaged oscillatory tails serves as a cross-check.
//!
//! Accuracy: the analytic route matches 50-digit reference evaluations to
//! better than 1e-11 relative for `delta ≥ 0.05`; for thinner shells the
//! attainable accuracy degrades like `delta⁻²·ε` because the profile is a
//! difference of two nearly equal ball profiles.

use std::f64::consts::PI;

use crate::error::{CoreError, Result};
use crate::numeric::gauss::{gl16, integrate_adaptive, oscillatory_power_tail, TrigKind};
use crate::numeric::{cos_power_tail, si, sin_power_tail};

/// Smallest supported moment exponent µ.
pub const MIN_MOMENT: i32 = -1;
/// Largest supported moment exponent µ.
pub const MAX_MOMENT: i32 = 3;

/// Truncation order of the small-z series of the squared profile.
const KMAX: usize = 28;
/// The small-z series of the profile is used below `z = SERIES_CUTOFF / b`.
const SERIES_CUTOFF: f64 = 0.5;
/// The quadrature route switches from panels to oscillatory tails here.
const TAIL_START: f64 = 30.0;

/// Outer radius of the shell window, in units of the inner ball radius.
pub fn shell_outer_radius(delta: f64) -> f64 {
    1.0 + delta
}

/// Centre separation beyond which the two smearing shells are disjoint.
///
/// For separations `alpha ≥ support_diameter(delta)` every moment carrying
/// the overlap factor vanishes for even µ in exact arithmetic.
pub fn support_diameter(delta: f64) -> f64 {
    2.0 * (1.0 + delta)
}

/// Volume normalization of the shell window.
///
/// `f_norm(delta) = (delta+2)(delta²+2delta+2)/4` is the factor that keeps
/// `window_ft(0) = 1` for every shell width.
pub fn f_norm(delta: f64) -> f64 {
    (delta + 2.0) * (delta * delta + 2.0 * delta + 2.0) / 4.0
}

/// Normalized quadratic moment of the squared profile.
///
/// `g_norm` is defined so that `∫_0^∞ z² W(z)² dz = (3π/2)·g_norm(delta)`;
/// it controls the mixed-quadrature variance of a smeared field pair and
/// therefore the purity normalization.  `g_norm(0) = 1`.
pub fn g_norm(delta: f64) -> f64 {
    let d = delta;
    let num = 8.0 * (d * d * d + 5.0 * d * d + 10.0 * d + 10.0);
    let den = 5.0 * (d + 2.0).powi(2) * (d * d + 2.0 * d + 2.0).powi(2);
    num / den
}

/// Real-space smearing profile at radius `r` (in units of the inner radius).
///
/// The window is a plateau of height `3/(4π·f_norm)` on `[0, 1]`, falls
/// linearly to zero across the shell `(1, 1+delta]`, and vanishes beyond;
/// the plateau height makes the full-space integral exactly one, so smearing
/// leaves a uniform field unchanged.  `window_ft` is its radial Fourier
/// transform (verified against direct quadrature of this profile in the
/// tests).
pub fn window_real(r: f64, delta: f64) -> f64 {
    debug_assert!(r >= 0.0 && delta >= 0.0);
    let plateau = 3.0 / (4.0 * PI * f_norm(delta));
    if r <= 1.0 {
        plateau
    } else if r < 1.0 + delta {
        plateau * (1.0 + delta - r) / delta
    } else {
        0.0
    }
}

/// n! as a float (exact for the small n used by the series coefficients).
fn factorial(n: u32) -> f64 {
    (2..=n).map(f64::from).product()
}

/// Coefficient of `z^{2k+1}` in the series of `sin z − z·cos z`.
fn ball_series_coeff(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * (2 * k) as f64 / factorial(2 * k as u32 + 1)
}

/// Coefficient of `z^{2k}` in the series of the shell numerator `N(z)`.
///
/// `N(z) = z·sin z − b·z·sin(bz) + 2·cos z − 2·cos(bz)` is even and starts
/// at `z⁴`, so the coefficient vanishes for `k ≤ 1`.
fn shell_series_coeff(k: usize, b: f64) -> f64 {
    if k <= 1 {
        return 0.0;
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * (b.powi(2 * k as i32) - 1.0) * (2.0 * k as f64 - 2.0) / factorial(2 * k as u32)
}

/// Coefficients η_k of `z^{2k}` in the series of `N(z)²`, up to `k = KMAX`.
fn shell_squared_coeffs(b: f64) -> Vec<f64> {
    let nu: Vec<f64> = (0..=KMAX - 2).map(|k| shell_series_coeff(k, b)).collect();
    let mut eta = vec![0.0; KMAX + 1];
    for k1 in 2..=KMAX - 2 {
        for k2 in 2..=KMAX - k1 {
            eta[k1 + k2] += nu[k1] * nu[k2];
        }
    }
    eta
}

/// Numerator `N(z)` of the closed-form shell profile.
fn shell_numerator(z: f64, b: f64) -> f64 {
    z * z.sin() - b * z * (b * z).sin() + 2.0 * z.cos() - 2.0 * (b * z).cos()
}

/// Fourier profile of the normalized window at dimensionless wavenumber z.
///
/// Even in z, equal to 1 at z = 0, and `O(z⁻²)` (shell) or `O(z⁻¹)` (zero
/// width) at large z.  Small arguments are evaluated through the Taylor
/// series of the numerator to avoid the `z⁻⁴` cancellation.
pub fn window_ft(z: f64, delta: f64) -> f64 {
    let z = z.abs();
    if delta == 0.0 {
        // Zero-width limit: profile of the plain unit ball.
        if z < SERIES_CUTOFF {
            let mut sum = 0.0;
            for k in (1..=KMAX).rev() {
                sum += ball_series_coeff(k) * z.powi(2 * k as i32 - 2);
            }
            3.0 * sum
        } else {
            3.0 * (z.sin() - z * z.cos()) / (z * z * z)
        }
    } else {
        let b = 1.0 + delta;
        let pref = 3.0 / (delta * f_norm(delta));
        if z < SERIES_CUTOFF / b {
            let mut sum = 0.0;
            for k in (2..=KMAX).rev() {
                sum += shell_series_coeff(k, b) * z.powi(2 * k as i32 - 4);
            }
            pref * sum
        } else {
            pref * shell_numerator(z, b) / z.powi(4)
        }
    }
}

/// Which trigonometric factor a numerator term carries.
#[derive(Debug, Clone, Copy)]
enum Osc {
    Const,
    Cos(f64),
    Sin(f64),
}

/// One `coeff · z^zpow · {1, cos(w z), sin(w z)}` term of a squared numerator.
#[derive(Debug, Clone, Copy)]
struct Term {
    coeff: f64,
    zpow: i32,
    osc: Osc,
}

impl Term {
    const fn new(coeff: f64, zpow: i32, osc: Osc) -> Self {
        Self { coeff, zpow, osc }
    }
}

/// Exact expansion of `N(z)²` into pure trigonometric terms (shell case).
fn shell_terms(delta: f64) -> Vec<Term> {
    let b = 1.0 + delta;
    let s = delta; // difference frequency b − 1
    let t = 2.0 + delta; // sum frequency b + 1
    vec![
        Term::new(0.5 * (1.0 + b * b), 2, Osc::Const),
        Term::new(4.0, 0, Osc::Const),
        Term::new(-0.5, 2, Osc::Cos(2.0)),
        Term::new(2.0, 0, Osc::Cos(2.0)),
        Term::new(-0.5 * b * b, 2, Osc::Cos(2.0 * b)),
        Term::new(2.0, 0, Osc::Cos(2.0 * b)),
        Term::new(-b, 2, Osc::Cos(s)),
        Term::new(-4.0, 0, Osc::Cos(s)),
        Term::new(b, 2, Osc::Cos(t)),
        Term::new(-4.0, 0, Osc::Cos(t)),
        Term::new(2.0, 1, Osc::Sin(2.0)),
        Term::new(2.0 * b, 1, Osc::Sin(2.0 * b)),
        Term::new(-2.0 * delta, 1, Osc::Sin(s)),
        Term::new(-2.0 * t, 1, Osc::Sin(t)),
    ]
}

/// Exact expansion of `(sin z − z·cos z)²` (zero-width case).
fn ball_terms() -> Vec<Term> {
    vec![
        Term::new(0.5, 0, Osc::Const),
        Term::new(0.5, 2, Osc::Const),
        Term::new(-0.5, 0, Osc::Cos(2.0)),
        Term::new(0.5, 2, Osc::Cos(2.0)),
        Term::new(-1.0, 1, Osc::Sin(2.0)),
    ]
}

/// ∫_{x0}^{x1} z^q dz with the logarithmic branch at q = −1.
fn bridge_power(q: i32, x0: f64, x1: f64) -> f64 {
    if q == -1 {
        (x1 / x0).ln()
    } else {
        let e = q + 1;
        (x1.powi(e) - x0.powi(e)) / f64::from(e)
    }
}

/// ∫_{x1}^{x2} z^q sin(a z) dz for q ≥ −2 (x1 > 0 required when q = −2).
fn sin_segment(q: i32, a: f64, x1: f64, x2: f64) -> Result<f64> {
    debug_assert!(a > 0.0 && x2 >= x1 && x1 >= 0.0);
    if q >= 0 {
        if a * x2 <= 6.0 {
            // Alternating Taylor series of sin(az); converges fast for small
            // phases and avoids the cancellation of the recurrence there.
            let mut term_a = a;
            let mut total = 0.0;
            let mut m = 0;
            loop {
                let e = q + 2 * m + 2;
                total += term_a * (x2.powi(e) - x1.powi(e)) / f64::from(e);
                m += 1;
                term_a *= -a * a / f64::from(2 * m * (2 * m + 1));
                let e_next = q + 2 * m + 2;
                let bound = term_a.abs() * x2.powi(e_next) / f64::from(e_next);
                if bound < 1e-18 * total.abs().max(1e-30) || m > 60 {
                    return Ok(total);
                }
            }
        }
        if a >= f64::from(q) {
            // Integration by parts, raising the power from 0 to q.  Each
            // step multiplies accumulated error by r/a, so this is only
            // stable while the frequency dominates the power.
            let (c1, c2) = ((a * x1).cos(), (a * x2).cos());
            let (s1, s2) = ((a * x1).sin(), (a * x2).sin());
            let mut sin_int = (c1 - c2) / a;
            let mut cos_int = (s2 - s1) / a;
            for r in 1..=q {
                let rf = f64::from(r);
                let sin_next = (x1.powi(r) * c1 - x2.powi(r) * c2) / a + rf / a * cos_int;
                let cos_next = (x2.powi(r) * s2 - x1.powi(r) * s1) / a - rf / a * sin_int;
                sin_int = sin_next;
                cos_int = cos_next;
            }
            return Ok(sin_int);
        }
        // Large power at moderate frequency: neither the Taylor series
        // (cancellation ~e^{a·x2}) nor the by-parts recurrence (error
        // growth ~q!/a^q) is stable, but the integrand is smooth and
        // mildly oscillatory, so panelled fixed-order quadrature is exact
        // to machine precision.  The local variation rate of z^q·sin(az)
        // is about a + q/z, which sets the panel length.
        let rate = a + 2.0 * f64::from(q) / x2;
        let panels = (((x2 - x1) * rate / PI).ceil() as usize).clamp(1, 512);
        let rule = gl16();
        let step = (x2 - x1) / panels as f64;
        let mut total = 0.0;
        for i in 0..panels {
            let lo = x1 + i as f64 * step;
            total += rule.integrate(|z| z.powi(q) * (a * z).sin(), lo, lo + step);
        }
        return Ok(total);
    }
    match q {
        -1 => Ok(si(a * x2) - si(a * x1)),
        -2 => {
            if x1 <= 0.0 {
                return Err(CoreError::Domain(
                    "sin segment with q = -2 needs a positive lower limit".into(),
                ));
            }
            let ci_diff = crate::numeric::ci(a * x2)? - crate::numeric::ci(a * x1)?;
            Ok((a * x1).sin() / x1 - (a * x2).sin() / x2 + a * ci_diff)
        }
        _ => Err(CoreError::Domain(format!(
            "sin segment exponent q = {q} out of range"
        ))),
    }
}

/// Closed tail `pref·Σ terms ∫_x^∞ z^{µ+j-pbase}·osc dz` of a radial moment.
fn tail_radial(terms: &[Term], pref: f64, pbase: i32, mu: i32, x: f64) -> Result<f64> {
    debug_assert!(x > 0.0);
    let mut total = 0.0;
    for t in terms {
        let p = pbase - mu - t.zpow;
        debug_assert!(p >= 1);
        total += match t.osc {
            Osc::Const => {
                debug_assert!(p > 1);
                t.coeff * x.powi(1 - p) / f64::from(p - 1)
            }
            Osc::Cos(w) => t.coeff * cos_power_tail(p as usize, w, x)?,
            Osc::Sin(w) => t.coeff * sin_power_tail(p as usize, w, x)?,
        };
    }
    Ok(pref * total)
}

/// Closed tail of an overlap moment: each term is multiplied by
/// `sin(αz)/(αz)` and split into shifted pure-frequency tails.
fn tail_overlap(terms: &[Term], pref: f64, pbase: i32, mu: i32, alpha: f64, x: f64) -> Result<f64> {
    debug_assert!(x > 0.0 && alpha > 0.0);
    let mut total = 0.0;
    for t in terms {
        let p = pbase - mu - t.zpow;
        debug_assert!(p >= 1);
        let c = t.coeff;
        total += match t.osc {
            Osc::Const => c * sin_power_tail(p as usize, alpha, x)?,
            Osc::Cos(w) => {
                // cos(wz)·sin(αz) = ½[sin((α+w)z) + sin((α−w)z)]
                let sum_freq = 0.5 * c * sin_power_tail(p as usize, alpha + w, x)?;
                let u = alpha - w;
                let diff_freq = if u > 0.0 {
                    0.5 * c * sin_power_tail(p as usize, u, x)?
                } else if u < 0.0 {
                    -0.5 * c * sin_power_tail(p as usize, -u, x)?
                } else {
                    0.0
                };
                sum_freq + diff_freq
            }
            Osc::Sin(w) => {
                // sin(wz)·sin(αz) = ½[cos((α−w)z) − cos((α+w)z)]
                let u = alpha - w;
                let diff_freq = if u == 0.0 {
                    debug_assert!(p > 1);
                    0.5 * c * x.powi(1 - p) / f64::from(p - 1)
                } else {
                    0.5 * c * cos_power_tail(p as usize, u.abs(), x)?
                };
                diff_freq - 0.5 * c * cos_power_tail(p as usize, alpha + w, x)?
            }
        };
    }
    Ok(pref * total)
}

/// Series bridge of a radial moment over `[x0, x1]` (shell case).
fn bridge_radial_shell(mu: i32, x0: f64, x1: f64, delta: f64) -> f64 {
    let b = 1.0 + delta;
    let eta = shell_squared_coeffs(b);
    let f = f_norm(delta);
    let pref = 9.0 / (delta * delta * f * f);
    let mut total = 0.0;
    for (k, &e) in eta.iter().enumerate().take(KMAX + 1).skip(4) {
        total += e * bridge_power(mu - 8 + 2 * k as i32, x0, x1);
    }
    pref * total
}

/// Series bridge of a radial moment over `[x0, x1]` (zero-width case).
fn bridge_radial_ball(mu: i32, x0: f64, x1: f64) -> f64 {
    let mut total = 0.0;
    for k1 in 1..KMAX {
        let m1 = ball_series_coeff(k1);
        for k2 in 1..=KMAX - k1 {
            let q = mu - 4 + 2 * (k1 + k2) as i32;
            total += m1 * ball_series_coeff(k2) * bridge_power(q, x0, x1);
        }
    }
    9.0 * total
}

/// Series bridge of an overlap moment over `[x0, x1]` (shell case).
fn bridge_overlap_shell(mu: i32, alpha: f64, x0: f64, x1: f64, delta: f64) -> Result<f64> {
    let b = 1.0 + delta;
    let eta = shell_squared_coeffs(b);
    let f = f_norm(delta);
    let pref = 9.0 / (delta * delta * f * f * alpha);
    let mut total = 0.0;
    for (k, &e) in eta.iter().enumerate().take(KMAX + 1).skip(4) {
        if e != 0.0 {
            total += e * sin_segment(mu - 9 + 2 * k as i32, alpha, x0, x1)?;
        }
    }
    Ok(pref * total)
}

/// Series bridge of an overlap moment over `[x0, x1]` (zero-width case).
fn bridge_overlap_ball(mu: i32, alpha: f64, x0: f64, x1: f64) -> Result<f64> {
    let mut total = 0.0;
    for k1 in 1..KMAX {
        let m1 = ball_series_coeff(k1);
        for k2 in 1..=KMAX - k1 {
            let q = mu - 5 + 2 * (k1 + k2) as i32;
            total += m1 * ball_series_coeff(k2) * sin_segment(q, alpha, x0, x1)?;
        }
    }
    Ok(9.0 / alpha * total)
}

/// Validation shared by all four moment entry points.
fn check_moment_domain(mu: i32, beta: f64, delta: f64, alpha: Option<f64>) -> Result<()> {
    if !(MIN_MOMENT..=MAX_MOMENT).contains(&mu) {
        return Err(CoreError::Domain(format!(
            "moment exponent µ = {mu} outside supported range [{MIN_MOMENT}, {MAX_MOMENT}]"
        )));
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(CoreError::Domain(format!(
            "infrared cutoff must be finite and non-negative, got {beta}"
        )));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(CoreError::Domain(format!(
            "shell width must be finite and non-negative, got {delta}"
        )));
    }
    if let Some(a) = alpha {
        if !a.is_finite() || a <= 0.0 {
            return Err(CoreError::Domain(format!(
                "centre separation must be finite and positive, got {a}"
            )));
        }
    }
    if beta == 0.0 && mu <= -1 {
        return Err(CoreError::Domain(format!(
            "µ = {mu} moment diverges logarithmically without an infrared cutoff"
        )));
    }
    Ok(())
}

/// Where the series bridge hands over to the closed tail.
///
/// The squared-numerator series converges like `((1+δ)z)^{2k}/(2k)!`, so the
/// bridge is safe (and keeps the closed tail short, which is what controls
/// the f64 cancellation budget) up to phase `(1+δ)·z = 3`.
fn bridge_end(delta: f64) -> f64 {
    3.0 / (1.0 + delta)
}

/// `∫_β^∞ z^µ W(z)² dz` by the analytic route.
///
/// Supported exponents are µ ∈ [−1, 3]; µ ≤ −1 requires `beta > 0` and
/// µ ≥ 3 requires `delta > 0`, otherwise the integral diverges.
pub fn radial_moment(mu: i32, beta: f64, delta: f64) -> Result<f64> {
    check_moment_domain(mu, beta, delta, None)?;
    if delta == 0.0 && mu >= 3 {
        return Err(CoreError::Domain(
            "µ ≥ 3 moment of the zero-width window diverges logarithmically".into(),
        ));
    }
    let z0 = bridge_end(delta);
    if delta == 0.0 {
        let terms = ball_terms();
        if beta >= z0 {
            return tail_radial(&terms, 9.0, 6, mu, beta);
        }
        return Ok(tail_radial(&terms, 9.0, 6, mu, z0)? + bridge_radial_ball(mu, beta, z0));
    }
    let f = f_norm(delta);
    let pref = 9.0 / (delta * delta * f * f);
    let terms = shell_terms(delta);
    if beta >= z0 {
        return tail_radial(&terms, pref, 8, mu, beta);
    }
    Ok(tail_radial(&terms, pref, 8, mu, z0)? + bridge_radial_shell(mu, beta, z0, delta))
}

/// `∫_β^∞ z^µ W(z)²·sin(αz)/(αz) dz` by the analytic route.
///
/// Supported exponents are µ ∈ [−1, 3]; µ ≤ −1 requires `beta > 0`.
pub fn overlap_moment(mu: i32, alpha: f64, beta: f64, delta: f64) -> Result<f64> {
    check_moment_domain(mu, beta, delta, Some(alpha))?;
    let z0 = bridge_end(delta);
    if delta == 0.0 {
        let terms = ball_terms();
        if beta >= z0 {
            return tail_overlap(&terms, 9.0 / alpha, 7, mu, alpha, beta);
        }
        return Ok(tail_overlap(&terms, 9.0 / alpha, 7, mu, alpha, z0)?
            + bridge_overlap_ball(mu, alpha, beta, z0)?);
    }
    let f = f_norm(delta);
    let pref = 9.0 / (delta * delta * f * f * alpha);
    let terms = shell_terms(delta);
    if beta >= z0 {
        return tail_overlap(&terms, pref, 9, mu, alpha, beta);
    }
    Ok(tail_overlap(&terms, pref, 9, mu, alpha, z0)?
        + bridge_overlap_shell(mu, alpha, beta, z0, delta)?)
}

/// Tail of the quadrature route: term-by-term averaged oscillatory tails.
fn quadrature_tail_radial(terms: &[Term], pref: f64, pbase: i32, mu: i32, x: f64) -> f64 {
    let mut total = 0.0;
    for t in terms {
        let p = f64::from(pbase - mu - t.zpow);
        total += match t.osc {
            Osc::Const => t.coeff * x.powf(1.0 - p) / (p - 1.0),
            Osc::Cos(w) => t.coeff * oscillatory_power_tail(p, w, TrigKind::Cos, x),
            Osc::Sin(w) => t.coeff * oscillatory_power_tail(p, w, TrigKind::Sin, x),
        };
    }
    pref * total
}

/// Overlap analogue of [`quadrature_tail_radial`].
fn quadrature_tail_overlap(
    terms: &[Term],
    pref: f64,
    pbase: i32,
    mu: i32,
    alpha: f64,
    x: f64,
) -> f64 {
    let mut total = 0.0;
    for t in terms {
        let p = f64::from(pbase - mu - t.zpow);
        let c = t.coeff;
        total += match t.osc {
            Osc::Const => c * oscillatory_power_tail(p, alpha, TrigKind::Sin, x),
            Osc::Cos(w) => {
                let u = alpha - w;
                let mut v = 0.5 * c * oscillatory_power_tail(p, alpha + w, TrigKind::Sin, x);
                if u > 0.0 {
                    v += 0.5 * c * oscillatory_power_tail(p, u, TrigKind::Sin, x);
                } else if u < 0.0 {
                    v -= 0.5 * c * oscillatory_power_tail(p, -u, TrigKind::Sin, x);
                }
                v
            }
            Osc::Sin(w) => {
                let u = alpha - w;
                let diff = if u == 0.0 {
                    0.5 * c * x.powf(1.0 - p) / (p - 1.0)
                } else {
                    0.5 * c * oscillatory_power_tail(p, u.abs(), TrigKind::Cos, x)
                };
                diff - 0.5 * c * oscillatory_power_tail(p, alpha + w, TrigKind::Cos, x)
            }
        };
    }
    pref * total
}

/// `∫_β^∞ z^µ W(z)² dz` by adaptive panels plus averaged oscillatory tails.
///
/// Structurally independent of the analytic route (no closed-form tails, no
/// series bridge); used as its cross-check.  Slower but still sub-second.
pub fn radial_moment_quadrature(mu: i32, beta: f64, delta: f64) -> Result<f64> {
    check_moment_domain(mu, beta, delta, None)?;
    if delta == 0.0 && mu >= 3 {
        return Err(CoreError::Domain(
            "µ ≥ 3 moment of the zero-width window diverges logarithmically".into(),
        ));
    }
    let z0 = TAIL_START.max(beta);
    let mut total = 0.0;
    if beta < z0 {
        let f = |z: f64| {
            let w = window_ft(z, delta);
            z.powi(mu) * w * w
        };
        total += integrate_adaptive(f, beta, z0, 1e-11, 1e-14)?;
    }
    if delta == 0.0 {
        total += quadrature_tail_radial(&ball_terms(), 9.0, 6, mu, z0);
    } else {
        let fnorm = f_norm(delta);
        let pref = 9.0 / (delta * delta * fnorm * fnorm);
        total += quadrature_tail_radial(&shell_terms(delta), pref, 8, mu, z0);
    }
    Ok(total)
}

/// `∫_β^∞ z^µ W(z)²·sin(αz)/(αz) dz` by the quadrature route.
pub fn overlap_moment_quadrature(mu: i32, alpha: f64, beta: f64, delta: f64) -> Result<f64> {
    check_moment_domain(mu, beta, delta, Some(alpha))?;
    let z0 = TAIL_START.max(beta);
    let mut total = 0.0;
    if beta < z0 {
        let f = |z: f64| {
            let w = window_ft(z, delta);
            let phase = alpha * z;
            let sinc = if phase == 0.0 { 1.0 } else { phase.sin() / phase };
            z.powi(mu) * w * w * sinc
        };
        total += integrate_adaptive(f, beta, z0, 1e-11, 1e-14)?;
    }
    if delta == 0.0 {
        total += quadrature_tail_overlap(&ball_terms(), 9.0 / alpha, 7, mu, alpha, z0);
    } else {
        let fnorm = f_norm(delta);
        let pref = 9.0 / (delta * delta * fnorm * fnorm * alpha);
        total += quadrature_tail_overlap(&shell_terms(delta), pref, 9, mu, alpha, z0);
    }
    Ok(total)
}
