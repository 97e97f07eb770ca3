//! Sign/parity binary observables on unbinned quadratures.
//!
//! Each patch is assigned two dichotomic observables: the sign of the
//! smeared field amplitude (`S_x`, Weyl symbol `sign(φ)`), and a parity
//! observable whose symbol is a delta function at the phase-space origin
//! (`S_z`).  For a zero-mean Gaussian state both correlators reduce to
//! closed forms in the covariance matrix:
//!
//! * `⟨S_z S_z⟩` equals the purity of the state;
//! * `⟨S_x S_x⟩` is an arcsine law in the reduced field-field precision
//!   matrix (the Schur complement of the momentum block of `γ⁻¹`);
//! * `⟨S_x S_z⟩` vanishes identically because the state is even.
//!
//! [`correlators`] evaluates the general route for any background.
//! [`minkowski_correlators`] substitutes the static-background covariance
//! directly into the closed forms, giving an algebraically independent
//! cross-check, and the `*_expansion_correlators` functions provide the
//! leading asymptotics in the expansion rate used as figure overlays.

use crate::error::{CoreError, Result};
use crate::model::{purity, SpinCorrelators};
use crate::numeric::linalg::{det2, inv2, inv4, Mat2, Mat4};
use crate::numeric::trig_integrals::EULER_GAMMA;
use crate::window::{g_norm, overlap_moment, radial_moment};
use std::f64::consts::PI;

/// Reduced field–field precision matrix.
///
/// The Schur complement `a = P_φφ − P_φπ·P_ππ⁻¹·P_πφ` of the momentum block
/// of the precision matrix `P = γ⁻¹`; its inverse is the field marginal
/// covariance, an identity used as an internal consistency check.
pub fn reduced_field_precision(gamma: &Mat4) -> Result<Mat2> {
    let p = inv4(gamma)?;
    let pff: Mat2 = [[p[0][0], p[0][2]], [p[2][0], p[2][2]]];
    let pfm: Mat2 = [[p[0][1], p[0][3]], [p[2][1], p[2][3]]];
    let pmm: Mat2 = [[p[1][1], p[1][3]], [p[3][1], p[3][3]]];
    let pmm_inv = inv2(&pmm)?;
    let mut a = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = 0.0;
            for k in 0..2 {
                for l in 0..2 {
                    s += pfm[i][k] * pmm_inv[k][l] * pfm[j][l];
                }
            }
            a[i][j] = pff[i][j] - s;
        }
    }
    Ok(a)
}

/// Sign and parity correlators of the state with covariance `gamma`.
pub fn correlators(gamma: &Mat4) -> Result<SpinCorrelators> {
    let szsz = purity(gamma)?;
    let a = reduced_field_precision(gamma)?;
    let det_a = det2(&a);
    if !(det_a > 0.0) {
        return Err(CoreError::Linalg(format!(
            "reduced precision matrix must be positive definite, det = {det_a}"
        )));
    }
    let sxsx = -(2.0 / PI) * (a[0][1] / det_a.sqrt()).atan();
    Ok(SpinCorrelators {
        szsz,
        sxsx,
        sxsz: 0.0,
    })
}

/// Static-background correlators substituted directly into closed forms.
///
/// Uses only the four moment integrals, bypassing the 4×4 linear algebra of
/// [`correlators`]; the two routes agree to near machine precision and are
/// kept separate deliberately.
pub fn minkowski_correlators(alpha: f64, beta: f64, delta: f64) -> Result<SpinCorrelators> {
    let k1 = radial_moment(1, beta, delta)?;
    let k3 = radial_moment(3, beta, delta)?;
    let l1 = overlap_moment(1, alpha, beta, delta)?;
    let l3 = overlap_moment(3, alpha, beta, delta)?;
    let g = g_norm(delta);
    let var_x = (k1 * k1 - l1 * l1) * (k3 * k3 - l3 * l3);
    if !(var_x > 0.0) {
        return Err(CoreError::Domain(
            "closed-form correlators need |L| < K, i.e. disjoint patches".into(),
        ));
    }
    let sxsx = (2.0 / PI) * (l1 / (k1 * k1 - l1 * l1).sqrt()).atan();
    let szsz = 9.0 * PI * PI * g * g / (4.0 * var_x.sqrt());
    Ok(SpinCorrelators {
        szsz,
        sxsx,
        sxsz: 0.0,
    })
}

/// Large-separation plateau of the static-background Bell combination.
///
/// The sign–sign correlator decays with separation, so the combination
/// saturates at twice the coincidence purity; this is its small-width
/// logarithmic approximation.
pub fn bell_plateau(delta: f64) -> f64 {
    8.0 * PI * PI / (9.0 * (1.0 - 2.0 * (delta / 2.0).ln()).abs())
}

/// Exact large-separation plateau `2·⟨SzSz⟩` at zero cutoff.
pub fn bell_plateau_exact(delta: f64) -> Result<f64> {
    let k1 = radial_moment(1, 0.0, delta)?;
    let k3 = radial_moment(3, 0.0, delta)?;
    let g = g_norm(delta);
    Ok(2.0 * 9.0 * PI * PI * g * g / (4.0 * k1 * k3))
}

/// Large-separation, small-width approximation of the static Bell value.
///
/// The `delta = 0` branch is the separate singular limit in which the
/// parity correlator vanishes and only the sign term survives.
pub fn bell_minkowski_approx(alpha: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        return 16.0 / (9.0 * PI * alpha * alpha);
    }
    let led = 1.0 - 2.0 * (delta / 2.0).ln();
    (8.0 * PI * PI / (9.0 * led.abs()))
        * (1.0 + (2.0 / alpha.powi(4)) * (4.0 / 81.0 + (led / PI.powi(3)).powi(2)))
}

/// Leading corrections to the correlators for a slowly expanding background.
///
/// Valid for `hr ≪ 1` at moderate separations; the quadratic coefficients
/// carry the infrared-cutoff logarithms generated by the `µ = −1` moment.
pub fn small_expansion_correlators(hr: f64, alpha: f64, beta: f64, delta: f64) -> SpinCorrelators {
    let g = EULER_GAMMA;
    let sxsx = 8.0 / (9.0 * PI * alpha * alpha)
        + hr * hr
            * ((8.0 / (9.0 * PI)) * (g + (alpha * beta).ln() - 1.0)
                + 32.0 * (5.0 * g - 11.0 + 5.0 * (2.0 * beta).ln())
                    / (405.0 * alpha * alpha * PI));
    let led = 1.0 - 2.0 * (delta / 2.0).ln();
    let ln2 = std::f64::consts::LN_2;
    let num = 1.0 + 2.0 * g * (1.0 + 2.0 * ln2) - 5.0 * ln2 + 4.0 * ln2 * ln2
        + beta.ln() * (2.0 - 4.0 * (delta / 2.0).ln())
        + (7.0 - 4.0 * g - 4.0 * ln2) * delta.ln();
    let szsz = 4.0 * PI * PI / (9.0 * led.abs())
        + (8.0 * PI * PI / 81.0) * hr * hr * num / (led * led.abs());
    SpinCorrelators {
        szsz,
        sxsx,
        sxsz: 0.0,
    }
}

/// Leading behaviour of the correlators for a rapidly expanding background.
///
/// The parity correlator is suppressed as `hr⁻²` while the sign correlator
/// saturates at a cutoff-dependent arctangent plateau.
pub fn large_expansion_correlators(hr: f64, alpha: f64, beta: f64, delta: f64) -> SpinCorrelators {
    let g = EULER_GAMMA;
    let ln2 = std::f64::consts::LN_2;
    let sxsx = (2.0 / PI)
        * (4.0 * (1.0 - g - (alpha * beta).ln())
            / ((3.0 + 4.0 * (alpha / 2.0).ln())
                * (11.0 - 8.0 * g - 4.0 * (2.0 * alpha * beta * beta).ln()))
            .sqrt())
        .atan();
    let b1 = 4.0 * g * (1.0 + 2.0 * ln2) - 1.0 - 9.0 * ln2 + 4.0 * ln2 * ln2
        + 2.0 * (alpha * beta * beta).ln() * (1.0 - 2.0 * (delta / 2.0).ln())
        + delta.ln() * (11.0 - 8.0 * g - 4.0 * ln2);
    let b2 = 3.0 - ln2 + 4.0 * ln2 * ln2 - alpha.ln() * (2.0 - 4.0 * (delta / 2.0).ln())
        + (3.0 - 4.0 * ln2) * delta.ln();
    let szsz = (2.0 * PI * PI / (hr * hr)) / (b1 * b2).sqrt();
    SpinCorrelators {
        szsz,
        sxsx,
        sxsz: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{covariance, Params};
    use approx::assert_relative_eq;

    /// Frozen pipeline values (independently validated implementation).
    const PIPELINE_REF: [(f64, f64, f64, f64, f64, f64, f64); 7] = [
        // (hr, alpha, beta, delta, szsz, sxsx, bell)
        (0.0, 3.0, 0.0, 0.1, 0.566050581066147, 0.0369418979334247, 1.13450952247788),
        (0.0, 50.0, 0.0, 0.01, 0.374221028195515, 0.000114343865506829, 0.748442091328989),
        (0.0, 2.02, 0.0, 0.01, 0.377266481150752, 0.0803038879296815, 0.771436872897566),
        (0.01, 3.0, 1e-4, 0.01, 0.374584380837422, 0.0336262891732481, 0.752181323062246),
        (1e3, 3.0, 1e-4, 0.01, 1.96609512409046e-7, 0.683373097452421, 1.3667461949049),
        (1.0, 3.0, 1e-4, 0.1, 0.154275241669252, 0.529988402944515, 1.10397202400746),
        (0.0, 202.0, 0.0, 100.0, 0.792852550845089, 0.0510701387382355, 1.58899128563036),
    ];

    fn params(hr: f64, alpha: f64, beta: f64, delta: f64) -> Params {
        if hr > 0.0 {
            Params::de_sitter(hr, alpha, beta, delta)
        } else {
            Params::minkowski(alpha, beta, delta)
        }
    }

    #[test]
    fn correlators_match_frozen_pipeline() {
        for &(hr, alpha, beta, delta, szsz, sxsx, bell) in &PIPELINE_REF {
            let g = covariance(&params(hr, alpha, beta, delta)).unwrap();
            let c = correlators(&g).unwrap();
            assert_relative_eq!(c.szsz, szsz, max_relative = 1e-9);
            assert_relative_eq!(c.sxsx, sxsx, max_relative = 1e-9);
            assert_relative_eq!(c.bell(), bell, max_relative = 1e-9);
            assert_eq!(c.sxsz, 0.0);
        }
    }

    #[test]
    fn closed_form_route_agrees_with_covariance_route() {
        for &(alpha, beta, delta) in
            &[(3.0, 0.0, 0.1), (50.0, 0.0, 0.01), (2.02, 0.0, 0.01), (7.0, 1e-3, 1.0)]
        {
            let g = covariance(&Params::minkowski(alpha, beta, delta)).unwrap();
            let via_cov = correlators(&g).unwrap();
            let direct = minkowski_correlators(alpha, beta, delta).unwrap();
            assert_relative_eq!(via_cov.szsz, direct.szsz, max_relative = 1e-12);
            assert_relative_eq!(via_cov.sxsx, direct.sxsx, max_relative = 1e-12);
        }
    }

    #[test]
    fn reduced_precision_inverts_to_field_marginal() {
        for &(hr, alpha, beta, delta) in
            &[(0.0, 3.0, 1e-4, 0.01), (1.0, 2.7, 1e-3, 0.3), (0.1, 7.0, 0.05, 1.0)]
        {
            let g = covariance(&params(hr, alpha, beta, delta)).unwrap();
            let a = reduced_field_precision(&g).unwrap();
            let a_inv = inv2(&a).unwrap();
            let marg = crate::model::field_marginal(&g);
            for i in 0..2 {
                for j in 0..2 {
                    assert_relative_eq!(a_inv[i][j], marg[i][j], max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn schur_determinant_identity_holds() {
        // det(γ⁻¹) = det((γ⁻¹)_ππ)·det(a): factorization of the precision
        // determinant through the reduced field block.
        for &(hr, alpha, beta, delta) in &[(0.0, 3.0, 0.0, 0.1), (1e3, 3.0, 1e-4, 0.01)] {
            let g = covariance(&params(hr, alpha, beta, delta)).unwrap();
            let p = inv4(&g).unwrap();
            let pmm: Mat2 = [[p[1][1], p[1][3]], [p[3][1], p[3][3]]];
            let a = reduced_field_precision(&g).unwrap();
            let lhs = crate::numeric::linalg::det4(&p);
            let rhs = det2(&pmm) * det2(&a);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
        }
    }

    #[test]
    fn plateau_approximation_has_frozen_value_at_small_width() {
        assert_relative_eq!(bell_plateau(0.01), 0.756510995799468, max_relative = 1e-12);
        // Exact plateau from the moments sits ~1% below the logarithmic one.
        let exact = bell_plateau_exact(0.01).unwrap();
        assert_relative_eq!(exact, 0.748442044319536, max_relative = 1e-10);
    }

    #[test]
    fn large_separation_approximation_tracks_the_pipeline() {
        let g = covariance(&Params::minkowski(50.0, 0.0, 0.01)).unwrap();
        let b = correlators(&g).unwrap().bell();
        let approx = bell_minkowski_approx(50.0, 0.01);
        assert!(
            ((b - approx) / approx).abs() < 0.02,
            "approximation off by more than 2%: pipeline {b}, approx {approx}"
        );
    }

    #[test]
    fn expansion_rate_asymptotics_bracket_the_exact_correlators() {
        // Slow expansion: combination accurate to a few percent.
        let g = covariance(&Params::de_sitter(1e-2, 3.0, 1e-4, 0.01)).unwrap();
        let exact = correlators(&g).unwrap();
        let approx = small_expansion_correlators(1e-2, 3.0, 1e-4, 0.01);
        assert!(((exact.bell() - approx.bell()) / exact.bell()).abs() < 0.05);
        // Fast expansion: parity suppressed as hr⁻², sign saturates.
        let g = covariance(&Params::de_sitter(1e3, 3.0, 1e-4, 0.01)).unwrap();
        let exact = correlators(&g).unwrap();
        let approx = large_expansion_correlators(1e3, 3.0, 1e-4, 0.01);
        assert!(((exact.bell() - approx.bell()) / exact.bell()).abs() < 0.10);
    }
}
