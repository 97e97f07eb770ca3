//! Command-line front end for the two-patch Bell-correlation library:
//! configurable parameter sweeps, a catalog of built-in figure recipes,
//! and an oracle validation suite.
//!
//! All numerical work lives in `bellfield-core`; this crate owns the I/O:
//! JSON sweep configuration with dotted-path overrides, deterministic CSV
//! and JSON datasets with provenance headers, and self-contained SVG
//! plots.

pub mod config;
pub mod error;
pub mod figures;
pub mod svg;
pub mod sweep;
pub mod validate;

pub use config::SweepConfig;
pub use error::{CliError, Result};
