//! Phase-space Monte Carlo oracles for the correlator engines.
//!
//! The state is Gaussian, so expectation values of products of local
//! observables are integrals of their phase-space symbols against a
//! four-dimensional normal density.  This module estimates them by direct
//! sampling — no quadrature, no series, no special functions beyond the
//! density itself — which makes it a fair independent referee for the
//! closed-form engines:
//!
//! * [`sign_parity_mc`] — sharp observables: the sign–sign correlator is a
//!   plain sign product, the parity–parity correlator uses the identity
//!   ⟨parity·parity⟩ = purity estimated as the mean sampled density (an
//!   unbiased estimator with finite variance), and the mixed correlator
//!   uses the conditional density of one patch at its phase-space origin.
//! * [`binned_mc`] — interval-binned observables with bin width `ell`,
//!   sampling the alternating-interval parities and the displaced
//!   indicator observables directly.
//!
//! Sampling is a Cholesky transform of `ChaCha8`-generated standard
//! normals; given the same seed the estimates are bit-reproducible.

use crate::error::Result;
use crate::model::Params;
use crate::numeric::linalg::{cholesky4, det2, det4, inv2, inv4, mat4_vec, quad_form4, Mat2, Mat4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
}

impl McEstimate {
    /// Distance from `value` in units of the standard error.
    pub fn sigmas_from(&self, value: f64) -> f64 {
        if self.std_err == 0.0 {
            if self.mean == value {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - value).abs() / self.std_err
        }
    }
}

/// The three correlator estimates of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSpinEstimates {
    pub szsz: McEstimate,
    pub sxsx: McEstimate,
    pub sxsz: McEstimate,
}

/// Streaming accumulator for mean and standard error.
#[derive(Default, Clone, Copy)]
struct Accumulator {
    n: f64,
    sum: f64,
    sum_sq: f64,
}

impl Accumulator {
    fn push(&mut self, v: f64) {
        self.n += 1.0;
        self.sum += v;
        self.sum_sq += v * v;
    }

    fn finish(self) -> McEstimate {
        let mean = self.sum / self.n;
        let var = ((self.sum_sq / self.n) - mean * mean).max(0.0);
        McEstimate {
            mean,
            std_err: (var / (self.n - 1.0)).sqrt(),
        }
    }
}

/// Draw one sample of `(φ₁, π₁, φ₂, π₂)` through the Cholesky factor.
fn draw(rng: &mut ChaCha8Rng, chol: &Mat4) -> [f64; 4] {
    let z: [f64; 4] = [
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    ];
    mat4_vec(chol, &z)
}

/// Monte Carlo estimates of the sharp sign/parity correlators.
pub fn sign_parity_mc(gamma: &Mat4, samples: usize, seed: u64) -> Result<McSpinEstimates> {
    let chol = cholesky4(gamma)?;
    let precision = inv4(gamma)?;
    let inv_sqrt_det = 1.0 / det4(gamma).sqrt();
    // Conditional law of patch 2 given patch 1: mean map and covariance.
    let block_a: Mat2 = [[gamma[0][0], gamma[0][1]], [gamma[1][0], gamma[1][1]]];
    let block_c = [[gamma[0][2], gamma[0][3]], [gamma[1][2], gamma[1][3]]];
    let block_d: Mat2 = [[gamma[2][2], gamma[2][3]], [gamma[3][2], gamma[3][3]]];
    let a_inv = inv2(&block_a)?;
    // mean_map = Cᵀ·A⁻¹ (2×2), cond_cov = D − Cᵀ·A⁻¹·C.
    let mut mean_map = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            mean_map[i][j] = block_c[0][i] * a_inv[0][j] + block_c[1][i] * a_inv[1][j];
        }
    }
    let mut cond_cov = block_d;
    for i in 0..2 {
        for j in 0..2 {
            cond_cov[i][j] -= mean_map[i][0] * block_c[0][j] + mean_map[i][1] * block_c[1][j];
        }
    }
    let cond_prec = inv2(&cond_cov)?;
    let cond_norm = 1.0 / (2.0 * PI * det2(&cond_cov).sqrt());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut acc_zz, mut acc_xx, mut acc_xz) =
        (Accumulator::default(), Accumulator::default(), Accumulator::default());
    for _ in 0..samples {
        let x = draw(&mut rng, &chol);
        // ⟨parity·parity⟩ = (2π)²·E[density] = E[e^{−q/2}]/√det γ.
        acc_zz.push((-0.5 * quad_form4(&precision, &x)).exp() * inv_sqrt_det);
        acc_xx.push(x[0].signum() * x[2].signum());
        // Conditional density of patch 2 at its phase-space origin.
        let mu = [
            mean_map[0][0] * x[0] + mean_map[0][1] * x[1],
            mean_map[1][0] * x[0] + mean_map[1][1] * x[1],
        ];
        let q = cond_prec[0][0] * mu[0] * mu[0]
            + 2.0 * cond_prec[0][1] * mu[0] * mu[1]
            + cond_prec[1][1] * mu[1] * mu[1];
        acc_xz.push(-PI * x[0].signum() * cond_norm * (-0.5 * q).exp());
    }
    Ok(McSpinEstimates {
        szsz: acc_zz.finish(),
        sxsx: acc_xx.finish(),
        sxsz: acc_xz.finish(),
    })
}

/// `(−1)^⌊φ/ℓ⌋`, the alternating-interval parity.
fn interval_parity(phi: f64, ell: f64) -> f64 {
    let cell = (phi / ell).floor() as i64;
    if cell.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Indicator of the displaced-observable support
/// `A = ∪ₙ [ℓ/2 + 2nℓ, ℓ/2 + (2n+1)ℓ]`.
fn in_alternate_interval(phi: f64, ell: f64) -> bool {
    let t = phi - ell / 2.0;
    t - 2.0 * ell * (t / (2.0 * ell)).floor() < ell
}

/// Monte Carlo estimates of the interval-binned correlators.
pub fn binned_mc(gamma: &Mat4, ell: f64, samples: usize, seed: u64) -> Result<McSpinEstimates> {
    let chol = cholesky4(gamma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut acc_zz, mut acc_xx, mut acc_xz) =
        (Accumulator::default(), Accumulator::default(), Accumulator::default());
    for _ in 0..samples {
        let x = draw(&mut rng, &chol);
        let (q1, p1, q2, p2) = (x[0], x[1], x[2], x[3]);
        let s1 = interval_parity(q1, ell);
        let s2 = interval_parity(q2, ell);
        acc_zz.push(s1 * s2);
        let i1 = if in_alternate_interval(q1, ell) { 1.0 } else { 0.0 };
        let i2 = if in_alternate_interval(q2, ell) { 1.0 } else { 0.0 };
        acc_xx.push(4.0 * (ell * p1).cos() * i1 * (ell * p2).cos() * i2);
        acc_xz.push(2.0 * (ell * p1).cos() * i1 * s2);
    }
    Ok(McSpinEstimates {
        szsz: acc_zz.finish(),
        sxsx: acc_xx.finish(),
        sxsz: acc_xz.finish(),
    })
}

/// Deterministic pseudo-random tour of the valid parameter domain.
///
/// Alternates static and expanding backgrounds, draws the shell width and
/// separation log-uniformly (keeping the patches disjoint with 5% margin),
/// and uses a positive infrared cutoff whenever the background expands plus
/// on a quarter of the static points.
pub fn sample_points(count: usize, seed: u64) -> Vec<Params> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_uniform = |lo: f64, hi: f64, rng: &mut ChaCha8Rng| -> f64 {
        let u: f64 = rng.gen();
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    };
    (0..count)
        .map(|i| {
            let delta = log_uniform(0.05, 5.0, &mut rng);
            let expanding = i % 2 == 1;
            let hr = if expanding {
                log_uniform(1e-2, 10.0, &mut rng)
            } else {
                0.0
            };
            let beta = if expanding || i % 4 == 2 {
                log_uniform(1e-4, 1e-2, &mut rng)
            } else {
                0.0
            };
            let alpha_lo = 2.0 * (1.0 + delta) * 1.05;
            let alpha = log_uniform(alpha_lo, (2.0 * alpha_lo).max(20.0), &mut rng);
            if expanding {
                Params::de_sitter(hr, alpha, beta, delta)
            } else {
                Params::minkowski(alpha, beta, delta)
            }
        })
        .collect()
}
