//! Randomized structural invariants of the covariance builder, the
//! correlator engines, and the supporting numerics.
//!
//! Every property here is a statement that must hold on the whole valid
//! parameter domain, not just at frozen reference points: physicality of
//! the two-patch Gaussian state, exchange symmetry, determinant identities
//! relating the reduced precision matrix to the field marginal, bounds on
//! every correlator, and internal consistency of the integration toolbox.

use bellfield_core::gkmr;
use bellfield_core::larsson;
use bellfield_core::mc;
use bellfield_core::numeric::linalg::{det2, det4, inv2, inv4, Mat2};
use bellfield_core::numeric::{cholesky4, damped_erf_diff, erf, integrate_adaptive};
use bellfield_core::{
    covariance, field_marginal, overlap_moment, purity, radial_moment, Params,
};
use proptest::prelude::*;

/// Static-background parameters spanning the supported domain
/// (log-uniform in the shell width and in the separation margin).
fn minkowski_params() -> impl Strategy<Value = Params> {
    (
        -2.0f64..0.69,                              // log10 delta in [0.01, ~4.9]
        prop_oneof![Just(f64::NEG_INFINITY), -4.0f64..-0.6], // log10 beta, or none
        -3.0f64..1.4,                               // log10 of (alpha/alpha_min - 1)
    )
        .prop_map(|(ld, lb, ls)| {
            let delta = 10f64.powf(ld);
            let beta = if lb.is_finite() { 10f64.powf(lb) } else { 0.0 };
            let alpha = 2.0 * (1.0 + delta) * (1.0 + 10f64.powf(ls));
            Params::minkowski(alpha, beta, delta)
        })
}

/// Expanding-background parameters (the infrared cutoff is mandatory there).
fn de_sitter_params() -> impl Strategy<Value = Params> {
    (
        -3.0f64..3.0,   // log10 HR
        -2.0f64..0.69,  // log10 delta
        -4.0f64..-0.6,  // log10 beta
        -3.0f64..1.4,   // log10 of (alpha/alpha_min - 1)
    )
        .prop_map(|(lh, ld, lb, ls)| {
            let delta = 10f64.powf(ld);
            let alpha = 2.0 * (1.0 + delta) * (1.0 + 10f64.powf(ls));
            Params::de_sitter(10f64.powf(lh), alpha, 10f64.powf(lb), delta)
        })
}

fn any_params() -> impl Strategy<Value = Params> {
    prop_oneof![minkowski_params(), de_sitter_params()]
}

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The state is a physical Gaussian state everywhere on the domain:
    /// symmetric positive-definite covariance, exchange-symmetric patches,
    /// determinant at or above the uncertainty floor, purity in (0, 1].
    #[test]
    fn covariance_is_a_physical_exchange_symmetric_state(params in any_params()) {
        let g = covariance(&params).unwrap();
        let swap = [2usize, 3, 0, 1];
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(g[i][j], g[j][i]);
                prop_assert_eq!(g[i][j], g[swap[i]][swap[j]]);
            }
        }
        prop_assert!(cholesky4(&g).is_ok(), "covariance not positive definite");
        prop_assert!(det4(&g) >= 1.0 / 16.0 - 1e-9);
        let p = purity(&g).unwrap();
        prop_assert!(p > 0.0 && p <= 1.0 + 1e-12);
    }

    /// The reduced field precision equals the Schur complement of the
    /// momentum block of γ⁻¹, whose determinant identity and whose inverse
    /// (the plain field marginal) are both checked independently here.
    #[test]
    fn reduced_precision_satisfies_schur_identities(params in any_params()) {
        let g = covariance(&params).unwrap();
        let a = gkmr::reduced_field_precision(&g).unwrap();

        // det a · det P_ππ = det P, with P = γ⁻¹.
        let p = inv4(&g).unwrap();
        let pmm: Mat2 = [[p[1][1], p[1][3]], [p[3][1], p[3][3]]];
        let lhs = det2(&a) * det2(&pmm);
        let rhs = det4(&p);
        prop_assert!(
            (lhs - rhs).abs() <= 1e-10 * rhs.abs(),
            "determinant identity violated: {} vs {}",
            lhs,
            rhs
        );

        // a⁻¹ is the field marginal of γ.
        let marg = field_marginal(&g);
        let inv_a = inv2(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let scale = marg[i][i].abs().max(marg[j][j].abs());
                prop_assert!(
                    (inv_a[i][j] - marg[i][j]).abs() <= 1e-9 * scale,
                    "marginal mismatch at ({},{}): {} vs {}",
                    i, j, inv_a[i][j], marg[i][j]
                );
            }
        }

        // Patch exchange symmetry descends to the reduced matrix.
        prop_assert!((a[0][0] - a[1][1]).abs() <= 1e-12 * a[0][0].abs());

        // Product sanity: a · marg = identity within round-off.
        let prod = mat2_mul(&a, &marg);
        prop_assert!((prod[0][0] - 1.0).abs() < 1e-8 && (prod[1][1] - 1.0).abs() < 1e-8);
    }

    /// Sign/parity correlators are bounded, share the purity definition,
    /// and have no cross term.
    #[test]
    fn sharp_correlators_are_bounded_and_consistent(params in any_params()) {
        let g = covariance(&params).unwrap();
        let c = gkmr::correlators(&g).unwrap();
        prop_assert_eq!(c.szsz, purity(&g).unwrap());
        prop_assert!(c.szsz > 0.0 && c.szsz <= 1.0 + 1e-12);
        prop_assert!(c.sxsx.abs() <= 1.0);
        prop_assert_eq!(c.sxsz, 0.0);
        prop_assert!(c.bell() <= 2.0 * std::f64::consts::SQRT_2);
    }

    /// The Bell combination stays below the classical bound across the
    /// expansion-rate × separation sweep plane.
    #[test]
    fn bell_stays_classical_on_the_sweep_plane(
        lh in -3.0f64..3.0,
        ls in -3.0f64..1.69,
    ) {
        let delta = 0.01;
        let alpha_min = 2.0 * (1.0 + delta);
        let alpha = (alpha_min * (1.0 + 10f64.powf(ls))).min(100.0);
        let params = Params::de_sitter(10f64.powf(lh), alpha, 1e-4, delta);
        let c = gkmr::correlators(&covariance(&params).unwrap()).unwrap();
        prop_assert!(c.bell() < 2.0, "bell = {} at HR=1e{}, alpha={}", c.bell(), lh, alpha);
    }

    /// In the static background the Bell combination decreases with the
    /// patch separation.
    #[test]
    fn static_bell_decreases_with_separation(
        ls1 in -3.0f64..0.95,
        ratio in 1.01f64..3.0,
    ) {
        let delta = 0.01;
        let alpha_min = 2.0 * (1.0 + delta);
        let a1 = alpha_min * (1.0 + 10f64.powf(ls1));
        let a2 = (a1 * ratio).min(20.0);
        prop_assume!(a2 > a1 * 1.005);
        let b = |alpha: f64| {
            gkmr::correlators(&covariance(&Params::minkowski(alpha, 1e-4, delta)).unwrap())
                .unwrap()
                .bell()
        };
        prop_assert!(b(a1) > b(a2), "bell({}) = {} <= bell({}) = {}", a1, b(a1), a2, b(a2));
    }

    /// Where the first overlap moment is non-negative, so is the static
    /// x-correlator.
    #[test]
    fn static_x_correlator_sign_follows_first_overlap_moment(params in minkowski_params()) {
        let (alpha, beta, delta) = (params.alpha, params.beta, params.delta);
        let l1 = overlap_moment(1, alpha, beta, delta).unwrap();
        if l1 >= 0.0 {
            let c = gkmr::correlators(&covariance(&params).unwrap()).unwrap();
            prop_assert!(c.sxsx >= -1e-15, "sxsx = {} with L1 = {}", c.sxsx, l1);
        }
    }

    /// Binned correlators are expectation values of operators squaring to
    /// the identity, so they live in [−1, 1] for every bin width.  The
    /// width is sampled relative to the field spread so the bin lattices
    /// stay a bounded multiple of the Gaussian scale (the absolute-width
    /// regimes of the production grids are pinned by the unit tests).
    #[test]
    fn binned_correlators_are_bounded(params in any_params(), lr in -1.0f64..1.2) {
        let g = covariance(&params).unwrap();
        let ell = 10f64.powf(lr) * g[0][0].sqrt();
        let c = larsson::correlators(&g, ell).unwrap();
        prop_assert!(c.szsz.abs() <= 1.0 + 1e-12, "szsz = {}", c.szsz);
        prop_assert!(c.sxsx.abs() <= 1.0 + 1e-12, "sxsx = {}", c.sxsx);
        prop_assert!(c.sxsz.abs() <= 1.0 + 1e-12, "sxsz = {}", c.sxsz);
        prop_assert!(c.bell() <= 2.0 * std::f64::consts::SQRT_2);
    }

    /// The overlap moment is a sinc-damped version of the radial moment.
    #[test]
    fn overlap_moment_is_dominated_by_radial_moment(
        mu in prop_oneof![Just(-1), Just(1), Just(3)],
        la in -1.0f64..2.3,
        lb in -4.0f64..-0.6,
        ld in -2.0f64..0.69,
        no_cutoff in proptest::bool::ANY,
    ) {
        let delta = 10f64.powf(ld);
        let beta = if no_cutoff && mu != -1 { 0.0 } else { 10f64.powf(lb) };
        let alpha = 10f64.powf(la);
        let k = radial_moment(mu, beta, delta).unwrap();
        let l = overlap_moment(mu, alpha, beta, delta).unwrap();
        prop_assert!(
            l.abs() <= k * (1.0 + 1e-11) + 1e-14,
            "|L| = {} exceeds K = {}",
            l.abs(),
            k
        );
    }

    /// The overlap moment converges to the radial moment quadratically as
    /// the separation closes (sinc(x) = 1 − x²/6 + …).  Asserting the rate
    /// instead of a flat band keeps the check meaningful for the cubic
    /// moment, whose sinc correction carries a 1/δ²·log(1/α) prefactor.
    /// The additive floor covers 1/α round-off amplification in the
    /// sinc-split terms.
    #[test]
    fn overlap_moment_is_continuous_at_zero_separation(
        mu in prop_oneof![Just(-1), Just(1), Just(3)],
        lb in -4.0f64..-0.6,
        ld in -1.3f64..0.69,
    ) {
        let delta = 10f64.powf(ld);
        let beta = 10f64.powf(lb);
        let k = radial_moment(mu, beta, delta).unwrap();
        let e_big = (overlap_moment(mu, 4e-4, beta, delta).unwrap() - k).abs();
        let e_small = (overlap_moment(mu, 1e-4, beta, delta).unwrap() - k).abs();
        prop_assert!(e_big <= 1e-2 * k.abs(), "L(4e-4) far from K: {} vs {}", e_big, k);
        prop_assert!(
            e_small <= 0.375 * e_big + 5e-8 * k.abs(),
            "no quadratic approach: |L−K| {} -> {} (K = {})",
            e_big,
            e_small,
            k
        );
    }

    /// Splitting an integration interval cannot change the adaptive result
    /// beyond its own tolerance budget.
    #[test]
    fn adaptive_integration_is_stable_under_interval_splitting(
        mut pts in proptest::array::uniform3(-3.0f64..3.0),
        freq in 0.5f64..6.0,
    ) {
        pts.sort_by(f64::total_cmp);
        let [a, c, b] = pts;
        prop_assume!(b - a > 1e-3 && c - a > 1e-4 && b - c > 1e-4);
        let f = |x: f64| (freq * x).sin() * (-0.5 * x * x).exp() + 0.25 * x * x;
        let whole = integrate_adaptive(f, a, b, 1e-11, 1e-12).unwrap();
        let parts = integrate_adaptive(f, a, c, 1e-11, 1e-12).unwrap()
            + integrate_adaptive(f, c, b, 1e-11, 1e-12).unwrap();
        prop_assert!(
            (whole - parts).abs() <= 5e-12 * whole.abs().max(1.0),
            "{} vs {}",
            whole,
            parts
        );
    }

    /// The complex-plane error-function machinery restricted to the real
    /// axis reproduces the real error function.
    #[test]
    fn complex_route_matches_real_error_function_on_axis(x in -6.0f64..6.0) {
        let v = damped_erf_diff(0.0, x, 0.0);
        prop_assert!((v.re - (erf(x) - erf(0.0))).abs() <= 1e-13);
        prop_assert!(v.im.abs() <= 1e-15);
    }
}

/// Two independent seeds must agree within combined statistical error.
#[test]
fn mc_estimates_agree_across_seeds() {
    let configs = [
        Params::minkowski(2.8, 0.0, 0.3),
        Params::de_sitter(1.0, 3.0, 1e-3, 0.1),
    ];
    for params in configs {
        let g = covariance(&params).unwrap();
        let e1 = mc::sign_parity_mc(&g, 80_000, 17).unwrap();
        let e2 = mc::sign_parity_mc(&g, 80_000, 4242).unwrap();
        for (a, b, name) in [
            (&e1.szsz, &e2.szsz, "szsz"),
            (&e1.sxsx, &e2.sxsx, "sxsx"),
            (&e1.sxsz, &e2.sxsz, "sxsz"),
        ] {
            let combined = (a.std_err * a.std_err + b.std_err * b.std_err).sqrt();
            let dev = (a.mean - b.mean).abs();
            assert!(
                dev <= 5.0 * combined,
                "{name}: seeds differ by {dev} vs combined SE {combined}"
            );
        }
    }
}
