//! Sine and cosine integrals.
//!
//! Definitions (NIST DLMF §6.2):
//!
//! ```text
//! Si(x) = ∫_0^x sin t / t dt
//! Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt,   x > 0
//! ```
//!
//! For x ≤ 8 the Maclaurin series (DLMF 6.6.5–6.6.6) converge quickly and
//! lose at most ~2 digits to cancellation. For x > 8 both functions are
//! recovered from the complex tail integral `∫_x^∞ e^{iu}/u du`, evaluated
//! by the continued fraction in [`crate::numeric::expint`]:
//!
//! ```text
//! Ci(x) = −Re ∫_x^∞ e^{iu}/u du,     Si(x) = π/2 − Im ∫_x^∞ e^{iu}/u du.
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{CoreError, Result};
use crate::numeric::expint::exp_integral_tail;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Threshold between the Maclaurin series and the continued-fraction route.
const SERIES_CUTOFF: f64 = 8.0;

/// Sine integral Si(x) for any finite real x (odd in x).
pub fn si(x: f64) -> f64 {
    if x < 0.0 {
        return -si(-x);
    }
    if x <= SERIES_CUTOFF {
        // Si(x) = Σ_{k≥0} (−1)^k x^{2k+1} / ((2k+1)·(2k+1)!)
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 1u32;
        loop {
            let tk = 2.0 * k as f64;
            term *= -x2 / (tk * (tk + 1.0));
            sum += term / (tk + 1.0);
            if term.abs() <= 1e-18 * sum.abs().max(1.0) || k > 60 {
                return sum;
            }
            k += 1;
        }
    } else {
        FRAC_PI_2 - exp_integral_tail(1, x).im
    }
}

/// Cosine integral Ci(x), defined for x > 0.
pub fn ci(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(CoreError::Domain(format!(
            "Ci(x) requires x > 0, got {x}"
        )));
    }
    if x <= SERIES_CUTOFF {
        // Ci(x) = γ + ln x + Σ_{k≥1} (−1)^k x^{2k} / (2k·(2k)!)
        let x2 = x * x;
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 1u32;
        loop {
            let tk = 2.0 * k as f64;
            term *= -x2 / (tk * (tk - 1.0));
            sum += term / tk;
            if term.abs() <= 1e-18 * sum.abs().max(1.0) || k > 60 {
                break;
            }
            k += 1;
        }
        Ok(EULER_GAMMA + x.ln() + sum)
    } else {
        Ok(-exp_integral_tail(1, x).re)
    }
}

/// π/2, re-exported for callers assembling `∫_x^∞ sin(u)/u du = π/2 − Si(x)`.
pub const HALF_PI: f64 = PI / 2.0;
