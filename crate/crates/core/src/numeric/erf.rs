//! Error functions, real and complex.
//!
//! * [`erf`]/[`erfc`] — real error functions: Maclaurin series for |x| ≤ 1
//!   (A&S 7.1.5), otherwise `erfc(x) = e^{−x²}·Re w(ix)` through the
//!   Faddeeva function.
//! * [`faddeeva_w`] — the scaled complex complementary error function
//!   `w(z) = e^{−z²} erfc(−iz)`, evaluated for Im z ≥ 0 by the pole-sum
//!   sampling formula (Chiarella & Reichel 1968; Hunter & Regan 1972):
//!
//!   ```text
//!   w(z) = 2e^{−z²}/(1 − e^{−2πiz/h}) + (ih/π) Σ_{n=−N}^{N} e^{−n²h²}/(z − nh)
//!   ```
//!
//!   with h = 1/2, N = 14; the discretization error is O(e^{−π²/h²}) ≈ 7e-18.
//!   Arguments close to a sampling node on the real axis (where the pole term
//!   and one summand nearly cancel) are handled by a short Taylor expansion
//!   from a base point shifted into the upper half-plane, using the
//!   derivative recurrence w′ = −2z·w + 2i/√π. Im z < 0 uses the reflection
//!   `w(z) = 2e^{−z²} − w(−z)` (which grows like e^{|Im z|²} — callers that
//!   need damped products should use [`damped_erf_diff`] instead).
//! * [`damped_erf_diff`] — `e^{−c²}·(erf(u₁ − ic) − erf(u₀ − ic))` for real
//!   u₀, u₁, c, evaluated without overflow by folding the damping factor
//!   into the Faddeeva function analytically.

use std::f64::consts::PI;

use num_complex::Complex64;

/// 2/√π.
const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;

/// Sampling step of the pole-sum formula.
const H: f64 = 0.5;
/// Number of sampling nodes on each side of the origin.
const NPOLE: i32 = 14;

/// Real error function.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 1.0 {
        // erf(x) = (2/√π) Σ_k (−1)^k x^{2k+1} / (k! (2k+1))
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for k in 1..40 {
            let kf = k as f64;
            term *= -x2 / kf;
            let inc = term / (2.0 * kf + 1.0);
            sum += inc;
            if inc.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        TWO_OVER_SQRT_PI * sum
    } else {
        1.0 - erfc(x)
    }
}

/// Real complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x <= 1.0 {
        1.0 - erf(x)
    } else {
        // erfc(x) = e^{−x²}·w(ix) for x ≥ 0 (w is real on the imaginary axis).
        (-x * x).exp() * faddeeva_w(Complex64::new(0.0, x)).re
    }
}

/// Faddeeva function w(z) = e^{−z²}·erfc(−iz).
pub fn faddeeva_w(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        // Reflection into the upper half-plane; may overflow for large |Im z|.
        let expz = (-z * z).exp();
        return 2.0 * expz - faddeeva_w(-z);
    }
    // Near a real-axis sampling node the pole term and one summand nearly
    // cancel; switch to a Taylor expansion around a safely elevated point.
    let nearest = (z.re / H).round() * H;
    if z.im < 0.1 && (z.re - nearest).abs() < 0.1 {
        return taylor_from_above(z);
    }
    w_sampling(z)
}

/// Pole-sum evaluation, valid for Im z ≥ 0 away from real-axis nodes.
fn w_sampling(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -NPOLE..=NPOLE {
        let t = n as f64 * H;
        sum += (-t * t).exp() / (z - t);
    }
    let series = Complex64::new(0.0, H / PI) * sum;
    // The residue correction applies only below the shifted contour
    // Im z < π/H; above it the term is ≤ e^{−2π²/H²} relative (far under
    // the formula's own discretization error) and its naive evaluation
    // overflows for large Im z, so it is dropped there.
    if z.im < PI / H {
        let pole = 2.0 * (-z * z).exp() / (1.0 - (-Complex64::i() * 2.0 * PI * z / H).exp());
        series + pole
    } else {
        series
    }
}

/// Taylor expansion of w around z₀ = z + i/4 using w′ = −2z·w + 2i/√π.
fn taylor_from_above(z: Complex64) -> Complex64 {
    let shift = Complex64::new(0.0, 0.25);
    let z0 = z + shift;
    let w0 = w_sampling(z0);
    let w1 = -2.0 * z0 * w0 + Complex64::new(0.0, TWO_OVER_SQRT_PI);
    // w^{(k+1)}(z₀) = −2 z₀ w^{(k)} − 2k w^{(k−1)}
    let dz = -shift;
    let mut acc = w0;
    let mut fact = 1.0;
    let mut dzk = Complex64::new(1.0, 0.0);
    let (mut prev, mut cur) = (w0, w1);
    for k in 1..=22 {
        fact *= k as f64;
        dzk *= dz;
        acc += cur * dzk / fact;
        let next = -2.0 * (z0 * cur + k as f64 * prev);
        prev = cur;
        cur = next;
    }
    acc
}

/// Stable `e^{−c²}·(erf(u₁ − ic) − erf(u₀ − ic))` for real u₀, u₁, c.
///
/// Both `erf(u − ic)` and `e^{−c²}` individually overflow/underflow for
/// large `c`; their product is O(1). Using `erf(z) = 1 − e^{−z²} w(iz)`,
///
/// ```text
/// e^{−c²} erf(u − ic) = e^{−c²} − P(u, c),
/// P(u, c) = e^{−u² + 2icu} · w(c + iu)
/// ```
///
/// and the difference of the two P-terms is bounded. For u < 0 the Faddeeva
/// argument falls in the lower half-plane; the reflection
/// `w(ζ) = 2e^{−ζ²} − conj(w(conj(ζ)))`-combination below cancels the
/// exponential growth analytically.
pub fn damped_erf_diff(u0: f64, u1: f64, c: f64) -> Complex64 {
    if c < 0.0 {
        return damped_erf_diff(u0, u1, -c).conj();
    }
    p_term(u0, c) - p_term(u1, c)
}

/// P(u, c) = e^{−u² + 2icu}·w(c + iu), computed without overflow.
fn p_term(u: f64, c: f64) -> Complex64 {
    if u >= 0.0 {
        let w = faddeeva_w(Complex64::new(c, u));
        let scale = (-u * u).exp();
        let phase = Complex64::new(0.0, 2.0 * c * u).exp();
        scale * phase * w
    } else {
        // P(u,c) = 2e^{−c²} − e^{−u² + 2icu}·conj(w(c + i|u|))
        let a = -u;
        let w = faddeeva_w(Complex64::new(c, a)).conj();
        let scale = (-u * u).exp();
        let phase = Complex64::new(0.0, 2.0 * c * u).exp();
        2.0 * (-c * c).exp() - scale * phase * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // mpmath references at 20 significant digits.
    const ERF_REF: &[(f64, f64)] = &[
        (0.1, 0.1124629160182848984),
        (0.77, 0.72382161396485930033),
        (2.5, 0.99959304798255504106),
        (5.0, 0.99999999999846254021),
    ];

    #[rustfmt::skip]
    const W_REF: &[(f64, f64, f64, f64)] = &[
        // (re z, im z, re w, im w)
        (0.5, 0.0, 0.77880078307140486825, 0.47892517290104347254),
        (3.7, 0.0, 1.1337271387479641617e-6, 0.15882069261606790368),
        (0.25, 0.0, 0.93941306281347578612, 0.27062951561798749281),
        (1.0, 1.0, 0.30474420525691259246, 0.20821893820283162729),
        (0.3, 2.7, 0.19502820545276174319, 0.019409080021529229932),
        (5.5, 0.2, 0.0039266104349453830086, 0.10421659175868454246),
        (0.01, 8.0, 0.069985060890719951073, 0.000086164951025904827123),
        (12.0, 0.001, 3.9595218447507479399e-6, 0.047180778373535076592),
        (2.0, -1.5, 0.18328971531931703676, 0.073260876796080792095),
        (0.7, -3.0, -4867.6408478216600868, -8653.2519792535189157),
        (25.0, 4.0, 0.0035286774936840268134, 0.022019752830788570444),
        (0.0, 0.6, 0.56780471738658696439, 0.0),
        (0.0, -0.4, 1.6762339566888590015, 0.0),
        (9.3, 6.1, 0.028024404163596075897, 0.042379550362812165725),
        (1.5001, 1e-7, 0.10536764061361399493, 0.4831951682335310043),
        (4.0, 1e-12, 1.1253521396881122022e-7, 0.14595358990015278236),
    ];

    #[rustfmt::skip]
    const DIFF_REF: &[(f64, f64, f64, f64, f64)] = &[
        // (u0, u1, c, re, im)
        (-1.2, 0.7, 3.0, -0.0638915741661197714236, 0.120065486604621332975),
        (0.5, 2.5, 0.0, 0.479093170169508503378, 0.0),
        (-4.0, -2.0, 10.0, -0.00087778265220147922989, 0.00051525134607422568217),
        (0.0, 1.0, 0.5, 0.740413480888406423593, 0.332531289430825491321),
        (-0.3, 0.3, 25.0, 0.0272191888416334642699, 0.0),
    ];

    #[test]
    fn real_erf_matches_reference() {
        for &(x, want) in ERF_REF {
            assert_relative_eq!(erf(x), want, max_relative = 2e-15);
            assert_relative_eq!(erf(-x), -want, max_relative = 2e-15);
            assert_relative_eq!(erfc(x), 1.0 - want, max_relative = 4e-13);
        }
        assert_eq!(erf(0.0), 0.0);
        assert_relative_eq!(erfc(-2.5), 2.0 - erfc(2.5), max_relative = 1e-15);
    }

    #[test]
    fn faddeeva_matches_reference_everywhere() {
        for &(re, im, wre, wim) in W_REF {
            let w = faddeeva_w(Complex64::new(re, im));
            assert_relative_eq!(w.re, wre, max_relative = 2e-13, epsilon = 1e-16);
            if wim == 0.0 {
                assert!(w.im.abs() < 1e-15, "w({re}+{im}i).im = {}", w.im);
            } else {
                assert_relative_eq!(w.im, wim, max_relative = 2e-13, epsilon = 1e-16);
            }
        }
    }

    #[test]
    fn damped_erf_diff_matches_reference() {
        for &(u0, u1, c, re, im) in DIFF_REF {
            let v = damped_erf_diff(u0, u1, c);
            assert_relative_eq!(v.re, re, max_relative = 5e-13, epsilon = 1e-17);
            if im == 0.0 {
                assert!(v.im.abs() < 1e-15);
            } else {
                assert_relative_eq!(v.im, im, max_relative = 5e-13, epsilon = 1e-17);
            }
        }
    }

    #[test]
    fn damped_diff_reduces_to_real_erf_at_zero_damping() {
        let v = damped_erf_diff(-0.8, 1.3, 0.0);
        assert_relative_eq!(v.re, erf(1.3) - erf(-0.8), max_relative = 1e-14);
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn conjugate_symmetry_in_the_damping_parameter() {
        let plus = damped_erf_diff(-0.4, 2.0, 1.7);
        let minus = damped_erf_diff(-0.4, 2.0, -1.7);
        assert_relative_eq!(plus.re, minus.re, max_relative = 1e-15);
        assert_relative_eq!(plus.im, -minus.im, max_relative = 1e-15);
    }

    #[test]
    fn large_arguments_saturate_cleanly() {
        // Saturation: erf rounds to ±1 far before the internal exp scales
        // underflow, and nothing may overflow on the way there.
        for &x in &[8.0, 26.0, 27.0, 30.0, 400.0, 415.0] {
            assert_eq!(erf(x), 1.0, "erf({x})");
            assert_eq!(erf(-x), -1.0, "erf(-{x})");
            assert!(erfc(x).is_finite() && erfc(x) >= 0.0, "erfc({x})");
        }
        // w(iy) ~ 1/(sqrt(pi) y) on the imaginary axis.
        for &y in &[10.0, 40.0, 400.0] {
            let w = faddeeva_w(Complex64::new(0.0, y));
            let asymptotic = 1.0 / (PI.sqrt() * y);
            assert_relative_eq!(w.re, asymptotic, max_relative = 1e-2);
            assert!(w.im.abs() < 1e-15 * asymptotic.abs().max(1.0));
        }
        // Bin-sum callers reach arguments of this size at very wide bins.
        let v = damped_erf_diff(-400.0, 400.0, 0.0);
        assert_relative_eq!(v.re, 2.0, max_relative = 1e-14);
        assert!(v.im.abs() < 1e-15);
        let d = damped_erf_diff(35.0, 90.0, 3.0);
        assert!(d.re.is_finite() && d.im.is_finite());
        assert!(d.norm() < 1e-200);
    }
}
