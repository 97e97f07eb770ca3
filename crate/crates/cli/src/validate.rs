//! The `validate` subcommand: cross-checks the analytic pipeline against
//! its structurally independent routes (adaptive quadrature of the moment
//! integrals, Monte-Carlo sampling of the phase-space expectations, limit
//! stitching between operator families, background-reduction limits) and
//! renders a deterministic pass/fail report.
//!
//! The report body contains no timing or machine information: repeated
//! runs with the same seed and mode are byte-identical.

use bellfield_core::window::support_diameter;
use bellfield_core::{
    covariance, gkmr, larsson,
    mc::{binned_mc, sample_points, sign_parity_mc},
    window::{overlap_moment, overlap_moment_quadrature, radial_moment, radial_moment_quadrature},
    Params,
};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(name: &'static str, measured: f64, bound: f64, detail: String) -> Self {
        Check {
            name,
            passed: measured <= bound,
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub fast: bool,
    /// Test hook: perturbs one covariance before the closed-form route of
    /// the first sampling comparison, which must make exactly that check
    /// fail.
    pub inject_fault: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub options: Options,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("oracle validation report\n");
        out.push_str(&format!("tool: bellfield {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("seed: {}\n", self.options.seed));
        out.push_str(&format!(
            "mode: {}\n",
            if self.options.fast { "fast" } else { "full" }
        ));
        if self.options.inject_fault {
            out.push_str("fault-injection: enabled\n");
        }
        out.push('\n');
        for check in &self.checks {
            out.push_str(&format!(
                "{} {}: {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            ));
        }
        let n_pass = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "\nresult: {n_pass}/{} checks passed\n",
            self.checks.len()
        ));
        out
    }
}

/// Moment exponents exercised by the quadrature cross-checks; the
/// logarithmically divergent µ=−1 case needs a positive infrared cutoff.
const MOMENT_EXPONENTS: [i32; 3] = [-1, 1, 3];

/// (shell widths, infrared cutoffs, separation multiples of the support
/// diameter) for the quadrature cross-checks.
///
/// Widths stop at 3: for very wide shells at unit cutoff the overlap
/// moments are oscillation-suppressed ~10⁴ below their radial scale, so
/// the double-precision cancellation floor of both routes exceeds the
/// plain-relative bound no matter how either side is computed; that
/// regime is covered by the frozen high-precision references instead.
fn quadrature_grids(fast: bool) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    if fast {
        (
            vec![0.1, 1.0],
            vec![0.0, 0.3],
            vec![1.1, 3.0],
        )
    } else {
        (
            vec![0.05, 0.15, 0.5, 1.5, 3.0],
            vec![0.0, 1e-3, 0.02, 0.3, 1.0],
            vec![1.001, 1.4, 2.2, 4.0, 8.5],
        )
    }
}

/// Analytic radial moments against adaptive quadrature of the defining
/// integral, over a (β, δ) grid for µ ∈ {−1, 1, 3}.
pub fn radial_quadrature_check(fast: bool) -> Check {
    const NAME: &str = "radial-moment quadrature agreement";
    const BOUND: f64 = 1e-8;
    let (deltas, betas, _) = quadrature_grids(fast);
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    let mut cases = 0usize;
    for &delta in &deltas {
        for &beta in &betas {
            for &mu in &MOMENT_EXPONENTS {
                if mu == -1 && beta == 0.0 {
                    continue;
                }
                let pair = radial_moment(mu, beta, delta)
                    .and_then(|a| radial_moment_quadrature(mu, beta, delta).map(|q| (a, q)));
                let (a, q) = match pair {
                    Ok(v) => v,
                    Err(e) => {
                        return Check {
                            name: NAME,
                            passed: false,
                            detail: format!("evaluation failed at mu={mu} beta={beta} delta={delta}: {e}"),
                        }
                    }
                };
                let rel = (a - q).abs() / q.abs();
                cases += 1;
                if rel > worst {
                    worst = rel;
                    worst_label = format!("mu={mu} beta={beta} delta={delta}");
                }
            }
        }
    }
    Check::bound(
        NAME,
        worst,
        BOUND,
        format!("max rel dev {worst:.3e} over {cases} cases (bound {BOUND:.1e}), worst at {worst_label}"),
    )
}

/// Analytic overlap moments against adaptive quadrature over an
/// (α, β, δ) grid for µ ∈ {−1, 1, 3}.
pub fn overlap_quadrature_check(fast: bool) -> Check {
    const NAME: &str = "overlap-moment quadrature agreement";
    const BOUND: f64 = 1e-8;
    let (deltas, betas, alpha_mults) = quadrature_grids(fast);
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    let mut cases = 0usize;
    for &delta in &deltas {
        for &beta in &betas {
            for &mult in &alpha_mults {
                let alpha = mult * support_diameter(delta);
                for &mu in &MOMENT_EXPONENTS {
                    if mu == -1 && beta == 0.0 {
                        continue;
                    }
                    let pair = overlap_moment(mu, alpha, beta, delta).and_then(|a| {
                        overlap_moment_quadrature(mu, alpha, beta, delta).map(|q| (a, q))
                    });
                    let (a, q) = match pair {
                        Ok(v) => v,
                        Err(e) => {
                            return Check {
                                name: NAME,
                                passed: false,
                                detail: format!(
                                    "evaluation failed at mu={mu} alpha={alpha} beta={beta} delta={delta}: {e}"
                                ),
                            }
                        }
                    };
                    let rel = (a - q).abs() / q.abs();
                    cases += 1;
                    if rel > worst {
                        worst = rel;
                        worst_label = format!("mu={mu} alpha={alpha:.6} beta={beta} delta={delta}");
                    }
                }
            }
        }
    }
    Check::bound(
        NAME,
        worst,
        BOUND,
        format!("max rel dev {worst:.3e} over {cases} cases (bound {BOUND:.1e}), worst at {worst_label}"),
    )
}

fn describe(params: &Params) -> String {
    format!(
        "alpha={:.4}, beta={:.2e}, delta={:.4}, hr={:.4}",
        params.alpha,
        params.beta,
        params.delta,
        params.background.expansion_rate()
    )
}

/// Closed-form sharp correlators against the sampling estimator on a
/// deterministic tour of the parameter domain.
pub fn sharp_mc_check(seed: u64, samples: usize, count: usize, inject_fault: bool) -> Check {
    const NAME: &str = "sharp-correlator sampling agreement";
    const BOUND_SE: f64 = 3.0;
    let points = sample_points(count, seed);
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    for (k, params) in points.iter().enumerate() {
        let outcome = (|| -> bellfield_core::Result<[(f64, &'static str); 3]> {
            let gamma = covariance(params)?;
            let closed = if inject_fault && k == 0 {
                let mut perturbed = gamma;
                perturbed[0][0] *= 1.05;
                gkmr::correlators(&perturbed)?
            } else {
                gkmr::correlators(&gamma)?
            };
            let mc = sign_parity_mc(&gamma, samples, seed.wrapping_add(k as u64))?;
            Ok([
                (mc.szsz.sigmas_from(closed.szsz), "szsz"),
                (mc.sxsx.sigmas_from(closed.sxsx), "sxsx"),
                (mc.sxsz.sigmas_from(0.0), "sxsz"),
            ])
        })();
        let distances = match outcome {
            Ok(d) => d,
            Err(e) => {
                return Check {
                    name: NAME,
                    passed: false,
                    detail: format!("evaluation failed at point {k} ({}): {e}", describe(params)),
                }
            }
        };
        for (se, label) in distances {
            if se > worst {
                worst = se;
                worst_label = format!("{label} at point {k} ({})", describe(params));
            }
        }
    }
    Check::bound(
        NAME,
        worst,
        BOUND_SE,
        format!(
            "max deviation {worst:.2} standard errors over {count} points x 3 correlators \
             (bound {BOUND_SE}), worst: {worst_label}"
        ),
    )
}

/// Binned-correlator engines against the sampling estimator.
pub fn binned_mc_check(seed: u64, samples: usize, fast: bool) -> Check {
    const NAME: &str = "binned-correlator sampling agreement";
    const BOUND_SE: f64 = 3.0;
    let mut cases: Vec<(Params, f64)> = vec![(Params::minkowski(3.0, 0.0, 0.1), 1.0)];
    if !fast {
        cases.push((Params::de_sitter(1.0, 3.0, 1e-3, 0.1), 0.7));
        cases.push((Params::minkowski(2.5, 1e-3, 0.2), 2.5));
    }
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    for (k, (params, ell)) in cases.iter().enumerate() {
        let outcome = (|| -> bellfield_core::Result<[(f64, &'static str); 3]> {
            let gamma = covariance(params)?;
            let closed = larsson::correlators(&gamma, *ell)?;
            let mc = binned_mc(&gamma, *ell, samples, seed.wrapping_add(1000 + k as u64))?;
            Ok([
                (mc.szsz.sigmas_from(closed.szsz), "szsz"),
                (mc.sxsx.sigmas_from(closed.sxsx), "sxsx"),
                (mc.sxsz.sigmas_from(0.0), "sxsz"),
            ])
        })();
        let distances = match outcome {
            Ok(d) => d,
            Err(e) => {
                return Check {
                    name: NAME,
                    passed: false,
                    detail: format!(
                        "evaluation failed at point {k} ({}, ell={ell}): {e}",
                        describe(params)
                    ),
                }
            }
        };
        for (se, label) in distances {
            if se > worst {
                worst = se;
                worst_label = format!("{label} at point {k} ({}, ell={ell})", describe(params));
            }
        }
    }
    Check::bound(
        NAME,
        worst,
        BOUND_SE,
        format!(
            "max deviation {worst:.2} standard errors over {} points x 3 correlators \
             (bound {BOUND_SE}), worst: {worst_label}",
            cases.len()
        ),
    )
}

/// The binned family must approach its two closed-form limits: the parity
/// ceiling for narrow bins and the sharp-parity correlator for wide bins.
pub fn stitching_checks() -> Vec<Check> {
    let params = Params::minkowski(3.0, 0.0, 0.1);
    let run = || -> bellfield_core::Result<(f64, f64)> {
        let gamma = covariance(&params)?;
        let narrow = larsson::correlators_budgeted(&gamma, 1e-2, larsson::DEFAULT_CELL_BUDGET)?;
        let narrow_dev = (narrow.correlators.bell() - 2.0).abs();
        let wide_zz = larsson::szsz_binned(&gamma, 1e2)?;
        let sharp = gkmr::correlators(&gamma)?;
        let wide_dev = (wide_zz - sharp.sxsx).abs();
        Ok((narrow_dev, wide_dev))
    };
    match run() {
        Ok((narrow_dev, wide_dev)) => vec![
            Check::bound(
                "narrow-bin limit",
                narrow_dev,
                1e-2,
                format!("|B(ell=0.01) - 2| = {narrow_dev:.3e} (bound 1.0e-2)"),
            ),
            Check::bound(
                "wide-bin limit",
                wide_dev,
                1e-2,
                format!("|szsz(ell=100) - sharp sxsx| = {wide_dev:.3e} (bound 1.0e-2)"),
            ),
        ],
        Err(e) => vec![Check {
            name: "limit stitching",
            passed: false,
            detail: format!("evaluation failed: {e}"),
        }],
    }
}

/// Background-reduction limits of the expanding-background pipeline: the
/// slow-expansion covariance must reduce to the static one, and the
/// slow/fast closed-form expansions must track the full pipeline.
pub fn reduction_checks() -> Vec<Check> {
    let (alpha, beta, delta) = (3.0, 1e-4, 1e-2);
    let run = || -> bellfield_core::Result<(f64, f64, f64)> {
        let slow = covariance(&Params::de_sitter(1e-6, alpha, beta, delta))?;
        let flat = covariance(&Params::minkowski(alpha, beta, delta))?;
        let mut entry_dev = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let dev = (slow[i][j] - flat[i][j]).abs() / flat[i][j].abs().max(1.0);
                entry_dev = entry_dev.max(dev);
            }
        }
        // The expansions approximate the Bell combination (their leading
        // sign-correlator term keeps an O(1/alpha²) truncation error of
        // its own, several percent at alpha = 3, while B is dominated by
        // the accurately expanded parity part).
        let bell_dev = |got: bellfield_core::SpinCorrelators,
                        want: bellfield_core::SpinCorrelators| {
            (got.bell() - want.bell()).abs() / want.bell()
        };
        let small_full =
            gkmr::correlators(&covariance(&Params::de_sitter(1e-2, alpha, beta, delta))?)?;
        let small_dev = bell_dev(
            gkmr::small_expansion_correlators(1e-2, alpha, beta, delta),
            small_full,
        );
        let large_full =
            gkmr::correlators(&covariance(&Params::de_sitter(1e3, alpha, beta, delta))?)?;
        let large_dev = bell_dev(
            gkmr::large_expansion_correlators(1e3, alpha, beta, delta),
            large_full,
        );
        Ok((entry_dev, small_dev, large_dev))
    };
    match run() {
        Ok((entry_dev, small_dev, large_dev)) => vec![
            Check::bound(
                "slow-expansion covariance reduction",
                entry_dev,
                1e-6,
                format!("max entrywise rel dev {entry_dev:.3e} at hr=1e-6 (bound 1.0e-6)"),
            ),
            Check::bound(
                "slow-expansion correlator approximation",
                small_dev,
                0.05,
                format!("bell-combination rel dev {small_dev:.3e} at hr=0.01 (bound 5.0e-2)"),
            ),
            Check::bound(
                "fast-expansion correlator approximation",
                large_dev,
                0.10,
                format!("bell-combination rel dev {large_dev:.3e} at hr=1000 (bound 1.0e-1)"),
            ),
        ],
        Err(e) => vec![Check {
            name: "background reduction",
            passed: false,
            detail: format!("evaluation failed: {e}"),
        }],
    }
}

pub fn run(options: &Options) -> Report {
    let (mc_samples, mc_points) = if options.fast { (100_000, 4) } else { (1_000_000, 20) };
    let binned_samples = if options.fast { 50_000 } else { 400_000 };
    let mut checks = vec![
        radial_quadrature_check(options.fast),
        overlap_quadrature_check(options.fast),
        sharp_mc_check(options.seed, mc_samples, mc_points, options.inject_fault),
        binned_mc_check(options.seed, binned_samples, options.fast),
    ];
    checks.extend(stitching_checks());
    checks.extend(reduction_checks());
    Report {
        options: *options,
        checks,
    }
}
