//! Core engines for Bell-type correlations between local patches of a
//! massless scalar field vacuum.
//!
//! The crate computes the joint Gaussian state of two smeared field/momentum
//! patches — static or exponentially expanding background — and evaluates
//! dichotomic-observable correlators on it through several independent
//! routes:
//!
//! * [`window`] — radial moments `∫ zᵘ W̃(z)² dz` and overlap moments
//!   `∫ zᵘ W̃(z)² sinc(αz) dz` of the smearing profile's Fourier transform,
//!   via a series/closed-form hybrid with an independent quadrature
//!   cross-check route.
//! * [`model`] — the 4×4 covariance matrix over `(φ₁, π₁, φ₂, π₂)`, its
//!   validity domain, and the purity of the two-patch state.
//! * [`gkmr`] — sign/parity correlators of the sharp (unbinned)
//!   observables, with closed-form static-background routes, the
//!   long-separation approximation, and slow/fast expansion asymptotics.
//! * [`larsson`] — interval-binned observables of adjustable bin width
//!   `ell`, interpolating between the parity pair at small width and the
//!   sign pair at large width, plus the matching asymptotic limits.
//! * [`mc`] — phase-space Monte Carlo estimators that referee every other
//!   route without sharing any code path with them.
//! * [`numeric`] — the special-function and quadrature toolbox
//!   (error functions of complex argument, trigonometric integrals,
//!   oscillatory tails, Gauss–Legendre rules, small dense linear algebra).
//!
//! The headline quantity everywhere is the Bell combination
//! `B = 2·√(⟨zz⟩² + ⟨xx⟩²)`; a value above 2 would violate the classical
//! bound (the vacuum stays below it, approaching 2 in limiting regimes).

pub mod error;
pub mod gkmr;
pub mod larsson;
pub mod mc;
pub mod model;
pub mod numeric;
pub mod window;

pub use error::{CoreError, Result};
pub use model::{covariance, field_marginal, purity, Background, Params, SpinCorrelators};
pub use numeric::linalg::{Mat2, Mat4};
pub use window::{overlap_moment, radial_moment, support_diameter, window_ft, window_real};
