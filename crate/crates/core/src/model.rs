//! Two-patch Gaussian state: parameters, covariance matrix, purity.
//!
//! A massless scalar field in its vacuum state is smeared against two shell
//! windows whose centres sit a distance `alpha` apart (in units of the shell
//! radius).  The resulting pair of canonical observables per patch,
//! `(φ₁, π₁, φ₂, π₂)`, is Gaussian with zero mean; everything observable
//! about it is encoded in the 4×4 covariance matrix built here from the
//! moment integrals of [`crate::window`].
//!
//! Two backgrounds are supported:
//!
//! * [`Background::Minkowski`] — static spacetime; the `φπ` cross blocks
//!   vanish and the matrix is block-diagonal in field/momentum space.
//! * [`Background::DeSitter`] — exponentially expanding spacetime with
//!   dimensionless expansion rate `hr` (expansion rate × shell radius).
//!   The expansion feeds the `µ = −1` moment into the field variances and
//!   generates field–momentum correlations proportional to `hr`; this
//!   requires a strictly positive infrared cutoff `beta`.
//!
//! Physical validity of the two-patch construction requires the patches to
//! be disjoint, `alpha ≥ 2(1 + delta)`; inside that bound the state is a
//! genuine reduced Gaussian state (covariance determinant ≥ 1/16, purity in
//! `(0, 1]`), which [`Params::validate`] enforces up front.

use crate::error::{CoreError, Result};
use crate::numeric::linalg::{det4, Mat2, Mat4};
use crate::window::{overlap_moment, radial_moment, support_diameter};

/// Spacetime background for the vacuum two-point function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Background {
    /// Static flat spacetime.
    Minkowski,
    /// Exponentially expanding spacetime; `hr` is the expansion rate in
    /// units of the inverse shell radius.  `hr = 0` reproduces Minkowski.
    DeSitter { hr: f64 },
}

impl Background {
    /// Dimensionless expansion rate (0 on Minkowski).
    pub fn expansion_rate(&self) -> f64 {
        match self {
            Background::Minkowski => 0.0,
            Background::DeSitter { hr } => *hr,
        }
    }
}

/// Full parameter set of a two-patch configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub background: Background,
    /// Centre separation in units of the shell radius.
    pub alpha: f64,
    /// Infrared cutoff: smallest wavenumber kept, times the shell radius.
    pub beta: f64,
    /// Relative width of the smearing shell.
    pub delta: f64,
}

impl Params {
    /// Minkowski configuration.
    pub fn minkowski(alpha: f64, beta: f64, delta: f64) -> Self {
        Self {
            background: Background::Minkowski,
            alpha,
            beta,
            delta,
        }
    }

    /// Expanding-background configuration.
    pub fn de_sitter(hr: f64, alpha: f64, beta: f64, delta: f64) -> Self {
        Self {
            background: Background::DeSitter { hr },
            alpha,
            beta,
            delta,
        }
    }

    /// Smallest separation at which the two patches are disjoint.
    pub fn alpha_min(&self) -> f64 {
        support_diameter(self.delta)
    }

    /// Check that the configuration defines a physical two-patch state.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("delta", self.delta),
            ("hr", self.background.expansion_rate()),
        ] {
            if !v.is_finite() {
                return Err(CoreError::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.delta <= 0.0 {
            return Err(CoreError::Domain(format!(
                "shell width must be positive (the µ = 3 moment diverges as the \
                 width tends to zero), got {}",
                self.delta
            )));
        }
        if self.beta < 0.0 {
            return Err(CoreError::Domain(format!(
                "infrared cutoff must be non-negative, got {}",
                self.beta
            )));
        }
        let hr = self.background.expansion_rate();
        if hr < 0.0 {
            return Err(CoreError::Domain(format!(
                "expansion rate must be non-negative, got {hr}"
            )));
        }
        if hr > 0.0 && self.beta == 0.0 {
            return Err(CoreError::Domain(
                "an expanding background requires a positive infrared cutoff".into(),
            ));
        }
        if self.alpha < self.alpha_min() {
            return Err(CoreError::Domain(format!(
                "patches overlap: separation {} is below the support diameter {}",
                self.alpha,
                self.alpha_min()
            )));
        }
        Ok(())
    }
}

/// Purity of the Gaussian state with covariance `gamma`.
///
/// Equal to `1/(4·√det γ)`; a physical two-patch reduced state satisfies
/// `det γ ≥ 1/16`, i.e. purity ≤ 1, with equality only for a pure state.
pub fn purity(gamma: &Mat4) -> Result<f64> {
    let det = det4(gamma);
    if !(det > 0.0) {
        return Err(CoreError::Linalg(format!(
            "covariance determinant must be positive, got {det}"
        )));
    }
    Ok(1.0 / (4.0 * det.sqrt()))
}

/// 2×2 covariance of the two smeared field amplitudes `(φ₁, φ₂)`.
pub fn field_marginal(gamma: &Mat4) -> Mat2 {
    [
        [gamma[0][0], gamma[0][2]],
        [gamma[0][2], gamma[2][2]],
    ]
}

/// Covariance matrix of `(φ₁, π₁, φ₂, π₂)` for a validated configuration.
///
/// The normalization `1/(3π·g_norm)` makes the momentum variance of each
/// patch carry the pure-state value in the coincidence limit; purity and
/// all spin correlators are invariant under the common rescaling.
pub fn covariance(params: &Params) -> Result<Mat4> {
    params.validate()?;
    let Params {
        alpha,
        beta,
        delta,
        ..
    } = *params;
    let pref = 1.0 / (3.0 * std::f64::consts::PI * crate::window::g_norm(delta));
    let k1 = radial_moment(1, beta, delta)?;
    let k3 = radial_moment(3, beta, delta)?;
    let l1 = overlap_moment(1, alpha, beta, delta)?;
    let l3 = overlap_moment(3, alpha, beta, delta)?;
    let hr = params.background.expansion_rate();
    let (g11, g12, g13, g14) = if hr > 0.0 {
        let km1 = radial_moment(-1, beta, delta)?;
        let lm1 = overlap_moment(-1, alpha, beta, delta)?;
        (
            pref * (hr * hr * km1 + k1),
            -pref * hr * k1,
            pref * (hr * hr * lm1 + l1),
            -pref * hr * l1,
        )
    } else {
        (pref * k1, 0.0, pref * l1, 0.0)
    };
    let g22 = pref * k3;
    let g24 = pref * l3;
    Ok([
        [g11, g12, g13, g14],
        [g12, g22, g14, g24],
        [g13, g14, g11, g12],
        [g14, g24, g12, g22],
    ])
}

/// The three binary-observable correlators of a two-patch measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCorrelators {
    /// Parity–parity correlator ⟨S_z S_z⟩.
    pub szsz: f64,
    /// Sign–sign correlator ⟨S_x S_x⟩.
    pub sxsx: f64,
    /// Mixed correlator ⟨S_x S_z⟩.
    pub sxsz: f64,
}

impl SpinCorrelators {
    /// Largest CHSH combination reachable with rotated settings,
    /// `2·√(⟨SzSz⟩² + ⟨SxSx⟩²)`; values above 2 would witness nonlocality.
    pub fn bell(&self) -> f64 {
        2.0 * self.szsz.hypot(self.sxsx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn minkowski_covariance_matches_frozen_reference() {
        // Values frozen from an independently validated implementation of
        // the same pipeline (agreeing with 50-digit quadrature to ~1e-11).
        // The α=50 fourth entry is oscillation-suppressed to ~10⁻⁸ absolute;
        // its double-precision floor is ~10⁻⁹ relative (both independent
        // moment routes agree there), hence the looser bound on that column.
        let cases: [(Params, [f64; 6]); 3] = [
            (
                Params::minkowski(3.0, 0.0, 0.1),
                [
                    0.26173825851692177,
                    1.6902493182098459,
                    0.015179677015068923,
                    -0.0045957087265335018,
                    1e-10,
                    1e-10,
                ],
            ),
            (
                Params::minkowski(50.0, 0.0, 0.01),
                [
                    0.2411022615637246,
                    2.7708342283010605,
                    4.3304599728155303e-5,
                    -3.467170226748712e-8,
                    1e-9,
                    3e-9,
                ],
            ),
            (
                Params::minkowski(202.0, 0.0, 100.0),
                [
                    22.65138481924518,
                    0.013966150421319754,
                    1.815163562934432,
                    -0.00014975242489337406,
                    1e-10,
                    1e-10,
                ],
            ),
        ];
        for (params, [g11, g22, g13, g24, tol_l1, tol_l3]) in cases {
            let g = covariance(&params).unwrap();
            assert_relative_eq!(g[0][0], g11, max_relative = 1e-10);
            assert_relative_eq!(g[1][1], g22, max_relative = 1e-10);
            assert_relative_eq!(g[0][2], g13, max_relative = tol_l1);
            assert_relative_eq!(g[1][3], g24, max_relative = tol_l3);
            assert_abs_diff_eq!(g[0][1], 0.0, epsilon = 1e-300);
            assert_abs_diff_eq!(g[0][3], 0.0, epsilon = 1e-300);
        }
    }

    #[test]
    fn covariance_has_patch_exchange_symmetry() {
        let params = Params::de_sitter(1.0, 3.0, 1e-4, 0.1);
        let g = covariance(&params).unwrap();
        // Swapping (φ₁,π₁) ↔ (φ₂,π₂) is the index permutation (0↔2, 1↔3).
        let p = [2usize, 3, 0, 1];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], g[p[i]][p[j]], "asymmetry at ({i},{j})");
                assert_eq!(g[i][j], g[j][i], "matrix not symmetric at ({i},{j})");
            }
        }
    }

    #[test]
    fn purity_is_physical_on_valid_configurations() {
        let configs = [
            Params::minkowski(2.02, 0.0, 0.01),
            Params::minkowski(3.0, 1e-4, 0.01),
            Params::de_sitter(0.01, 3.0, 1e-4, 0.01),
            Params::de_sitter(1e3, 3.0, 1e-4, 0.01),
            Params::minkowski(202.0, 0.0, 100.0),
        ];
        for params in configs {
            let g = covariance(&params).unwrap();
            let det = det4(&g);
            assert!(
                det >= 1.0 / 16.0 - 1e-9,
                "determinant {det} below physical floor for {params:?}"
            );
            let p = purity(&g).unwrap();
            assert!(p > 0.0 && p <= 1.0 + 1e-12, "purity {p} for {params:?}");
        }
    }

    #[test]
    fn zero_expansion_rate_reduces_to_minkowski() {
        let mink = covariance(&Params::minkowski(3.0, 1e-4, 0.1)).unwrap();
        let ds0 = covariance(&Params::de_sitter(0.0, 3.0, 1e-4, 0.1)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(mink[i][j], ds0[i][j]);
            }
        }
    }

    #[test]
    fn slow_expansion_approaches_minkowski() {
        // The expanding-background route must reduce continuously to the
        // static one, not just at the exact zero-rate branch.
        let mink = covariance(&Params::minkowski(3.0, 1e-3, 0.1)).unwrap();
        let slow = covariance(&Params::de_sitter(1e-6, 3.0, 1e-3, 0.1)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let tol = 1e-6 * mink[i][j].abs().max(1.0);
                assert!(
                    (slow[i][j] - mink[i][j]).abs() <= tol,
                    "entry ({i},{j}): {} vs {}",
                    slow[i][j],
                    mink[i][j]
                );
            }
        }
    }

    #[test]
    fn invalid_configurations_are_rejected() {
        // Overlapping patches.
        assert!(Params::minkowski(2.0, 0.0, 0.01).validate().is_err());
        assert!(Params::minkowski(2.02, 0.0, 100.0).validate().is_err());
        // Zero-width shell.
        assert!(Params::minkowski(3.0, 0.0, 0.0).validate().is_err());
        // Expansion without infrared cutoff.
        assert!(Params::de_sitter(0.1, 3.0, 0.0, 0.01).validate().is_err());
        // Negative and non-finite parameters.
        assert!(Params::minkowski(3.0, -1e-3, 0.01).validate().is_err());
        assert!(Params::de_sitter(-1.0, 3.0, 1e-4, 0.01).validate().is_err());
        assert!(Params::minkowski(f64::NAN, 0.0, 0.01).validate().is_err());
        // Valid ones pass.
        assert!(Params::minkowski(2.02, 0.0, 0.01).validate().is_ok());
        assert!(Params::de_sitter(1.0, 3.0, 1e-4, 0.1).validate().is_ok());
    }

    #[test]
    fn bell_combination_is_the_quadrature_sum() {
        let c = SpinCorrelators {
            szsz: 0.3,
            sxsx: -0.4,
            sxsz: 0.0,
        };
        assert_relative_eq!(c.bell(), 1.0, max_relative = 1e-15);
    }
}
