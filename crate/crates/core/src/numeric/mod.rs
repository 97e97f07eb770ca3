//! Special functions and quadrature primitives.
//!
//! Everything here is background-independent numerical machinery:
//!
//! * [`gauss`] — Gauss–Legendre rules (nodes computed at runtime by Newton
//!   iteration, no transcribed tables), an adaptive bisection integrator,
//!   and an accelerated evaluator for oscillatory power-law tails.
//! * [`trig_integrals`] — the sine and cosine integrals Si(x), Ci(x).
//! * [`expint`] — tails `∫_x^∞ cos(wz)·z^{-p} dz` and the matching sine
//!   form, via upward recurrences seeded by Si/Ci for small phase and a
//!   complex exponential-integral continued fraction for large phase.
//! * [`erf`] — real error functions, the complex Faddeeva function `w(z)`,
//!   and a numerically stable damped difference of complex error functions.
//! * [`linalg`] — 2×2/4×4 determinants, inverses and Cholesky factors.
//!
//! All routines are pure `f64` and deterministic.

pub mod erf;
pub mod expint;
pub mod gauss;
pub mod linalg;
pub mod trig_integrals;

pub use erf::{damped_erf_diff, erf, erfc, faddeeva_w};
pub use expint::{cos_power_tail, exp_integral_tail, sin_power_tail, trig_power_tails};
pub use gauss::{integrate_adaptive, oscillatory_power_tail, GaussLegendre, TrigKind};
pub use linalg::{cholesky4, det2, det4, inv2, inv4, mat4_vec, quad_form4, Mat2, Mat4};
pub use trig_integrals::{ci, si};
