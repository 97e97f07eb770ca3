//! Grid evaluation and output serialization for parameter sweeps.
//!
//! Every grid point is evaluated independently (in parallel, but collected
//! in deterministic grid order); a point whose parameters are rejected or
//! whose evaluation fails produces a row with an error status instead of
//! aborting the sweep.

use crate::config::{AlphaSpec, BackgroundKind, Family, OutputFormat, ParamName, SweepConfig};
use crate::error::{CliError, Result};
use bellfield_core::{covariance, larsson, purity, Params};
use rayon::prelude::*;
use std::io::Write;
use std::path::Path;

/// Fully resolved parameters of one grid point (after the `"min"`
/// separation keyword and endpoint rounding dust have been applied).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedPoint {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub ell: Option<f64>,
    pub hr: Option<f64>,
}

/// Observables of one successfully evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowValues {
    pub sxsx: f64,
    pub szsz: f64,
    pub bell: f64,
    pub purity: f64,
    /// Binned-family diagnostics; absent for sharp-parity rows.
    pub lattice_cells: Option<u64>,
    pub approximated: Option<bool>,
    pub tail_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: ResolvedPoint,
    pub values: std::result::Result<RowValues, String>,
}

impl SweepRow {
    pub fn status(&self) -> String {
        match &self.values {
            Ok(_) => "ok".to_string(),
            Err(msg) => sanitize_field(msg),
        }
    }
}

/// Replace CSV-breaking characters so a status message stays one field.
fn sanitize_field(msg: &str) -> String {
    msg.replace([',', '\n', '\r'], ";")
}

/// Resolve the parameters of grid point `idx`.
fn resolve_point(config: &SweepConfig, idx: usize) -> ResolvedPoint {
    let mut alpha = config.fixed.alpha;
    let mut beta = config.fixed.beta;
    let mut delta = config.fixed.delta;
    let mut ell = config.fixed.ell;
    let mut hr = config.fixed.hr;
    for (name, value) in config.grid_point(idx) {
        match name {
            ParamName::Alpha => alpha = Some(AlphaSpec::Value(value)),
            ParamName::Beta => beta = Some(value),
            ParamName::Delta => delta = Some(value),
            ParamName::Ell => ell = Some(value),
            ParamName::Hr => hr = Some(value),
        }
    }
    let delta = delta.expect("validated: delta present");
    let floor = bellfield_core::window::support_diameter(delta);
    // Separations below the non-overlap threshold are clamped to it (and
    // the clamped value is what the output row records): no emitted row
    // carries a separation the model would reject as overlapping.
    let alpha = match alpha.expect("validated: alpha present") {
        AlphaSpec::Min => floor,
        AlphaSpec::Value(a) => a.max(floor),
    };
    ResolvedPoint {
        alpha,
        beta: beta.expect("validated: beta present"),
        delta,
        ell,
        hr,
    }
}

fn evaluate_point(config: &SweepConfig, point: ResolvedPoint) -> SweepRow {
    let params = match config.background {
        BackgroundKind::Minkowski => Params::minkowski(point.alpha, point.beta, point.delta),
        BackgroundKind::DeSitter => Params::de_sitter(
            point.hr.expect("validated: hr present"),
            point.alpha,
            point.beta,
            point.delta,
        ),
    };
    let values = (|| -> bellfield_core::Result<RowValues> {
        let gamma = covariance(&params)?;
        let p = purity(&gamma)?;
        match config.family {
            Family::Gkmr => {
                let c = bellfield_core::gkmr::correlators(&gamma)?;
                Ok(RowValues {
                    sxsx: c.sxsx,
                    szsz: c.szsz,
                    bell: c.bell(),
                    purity: p,
                    lattice_cells: None,
                    approximated: None,
                    tail_bound: None,
                })
            }
            Family::Larsson => {
                let ell = point.ell.expect("validated: ell present");
                let b = larsson::correlators_budgeted(&gamma, ell, config.larsson.cell_budget)?;
                Ok(RowValues {
                    sxsx: b.correlators.sxsx,
                    szsz: b.correlators.szsz,
                    bell: b.correlators.bell(),
                    purity: p,
                    lattice_cells: Some(b.lattice_cells),
                    approximated: Some(b.approximated),
                    tail_bound: Some(b.tail_bound),
                })
            }
        }
    })();
    SweepRow {
        point,
        values: values.map_err(|e| e.to_string()),
    }
}

/// Evaluate the whole grid. Rows come back in row-major grid order
/// regardless of how the parallel scheduler interleaved the work.
pub fn run_sweep(config: &SweepConfig) -> Vec<SweepRow> {
    (0..config.grid_len())
        .into_par_iter()
        .map(|idx| evaluate_point(config, resolve_point(config, idx)))
        .collect()
}

pub const CSV_HEADER: &str =
    "alpha,beta,delta,ell,hr,sxsx,szsz,bell,purity,status,lattice_cells,approximated,tail_bound";

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn fmt_opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn fmt_opt_bool(v: Option<bool>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Provenance comment lines placed ahead of the CSV header.
pub fn provenance_lines(config_sha: &str) -> [String; 2] {
    [
        format!("# tool: bellfield {}", env!("CARGO_PKG_VERSION")),
        format!("# config-sha256: {config_sha}"),
    ]
}

/// The base column values of one row, aligned with [`CSV_HEADER`].
pub(crate) fn csv_fields(row: &SweepRow) -> Vec<String> {
    let p = row.point;
    let (sxsx, szsz, bell, pur, cells, approx, tail) = match &row.values {
        Ok(v) => (
            v.sxsx.to_string(),
            v.szsz.to_string(),
            v.bell.to_string(),
            v.purity.to_string(),
            fmt_opt_u64(v.lattice_cells),
            fmt_opt_bool(v.approximated),
            fmt_opt_f64(v.tail_bound),
        ),
        Err(_) => Default::default(),
    };
    vec![
        p.alpha.to_string(),
        p.beta.to_string(),
        p.delta.to_string(),
        fmt_opt_f64(p.ell),
        fmt_opt_f64(p.hr),
        sxsx,
        szsz,
        bell,
        pur,
        row.status(),
        cells,
        approx,
        tail,
    ]
}

pub fn write_csv(w: &mut impl Write, config_sha: &str, rows: &[SweepRow]) -> std::io::Result<()> {
    for line in provenance_lines(config_sha) {
        writeln!(w, "{line}")?;
    }
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", csv_fields(row).join(","))?;
    }
    Ok(())
}

pub fn write_json(w: &mut impl Write, config_sha: &str, rows: &[SweepRow]) -> std::io::Result<()> {
    let rows_json: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let p = row.point;
            let mut obj = serde_json::json!({
                "alpha": p.alpha,
                "beta": p.beta,
                "delta": p.delta,
                "ell": p.ell,
                "hr": p.hr,
                "status": row.status(),
            });
            if let Ok(v) = &row.values {
                obj["sxsx"] = v.sxsx.into();
                obj["szsz"] = v.szsz.into();
                obj["bell"] = v.bell.into();
                obj["purity"] = v.purity.into();
                if let Some(c) = v.lattice_cells {
                    obj["lattice_cells"] = c.into();
                }
                if let Some(a) = v.approximated {
                    obj["approximated"] = a.into();
                }
                if let Some(t) = v.tail_bound {
                    obj["tail_bound"] = t.into();
                }
            }
            obj
        })
        .collect();
    let doc = serde_json::json!({
        "tool": format!("bellfield {}", env!("CARGO_PKG_VERSION")),
        "config_sha256": config_sha,
        "rows": rows_json,
    });
    writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
}

/// Evaluate the sweep and write its output file (plus an adjacent SVG
/// plot when requested). Returns the rows for further inspection.
pub fn execute(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let rows = run_sweep(config);
    let sha = config.sha256();
    if let Some(dir) = config.output.path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        }
    }
    let mut buf: Vec<u8> = Vec::new();
    match config.output.format {
        OutputFormat::Csv => write_csv(&mut buf, &sha, &rows),
        OutputFormat::Json => write_json(&mut buf, &sha, &rows),
    }
    .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_atomic(&config.output.path, &buf)?;
    if config.output.plot {
        let svg = render_sweep_plot(config, &rows)?;
        let svg_path = config.output.path.with_extension("svg");
        write_atomic(&svg_path, svg.as_bytes())?;
    }
    Ok(rows)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Default plot for a sweep: the Bell combination against one varying
/// axis (line plot) or two (heatmap with the classical-bound contour).
fn render_sweep_plot(config: &SweepConfig, rows: &[SweepRow]) -> Result<String> {
    let varying: Vec<_> = config.axes.iter().filter(|a| a.count > 1).collect();
    let axis_values = |axis: &crate::config::Axis| -> Vec<f64> {
        (0..axis.count).map(|i| axis.value(i)).collect()
    };
    let coord = |point: &ResolvedPoint, name: ParamName| -> f64 {
        match name {
            ParamName::Alpha => point.alpha,
            ParamName::Beta => point.beta,
            ParamName::Delta => point.delta,
            ParamName::Ell => point.ell.unwrap_or(f64::NAN),
            ParamName::Hr => point.hr.unwrap_or(f64::NAN),
        }
    };
    match varying.as_slice() {
        [axis] => {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| {
                    r.values
                        .as_ref()
                        .ok()
                        .map(|v| (coord(&r.point, axis.name), v.bell))
                })
                .collect();
            if pts.is_empty() {
                return Err(CliError::Validation(
                    "no successful rows to plot".to_string(),
                ));
            }
            let plot = crate::svg::LinePlot {
                title: "bell combination".to_string(),
                x_label: axis.name.as_str().to_string(),
                y_label: "B".to_string(),
                x_log: axis.scale == crate::config::Scale::Log,
                y_log: false,
                series: vec![crate::svg::Series {
                    label: "B".to_string(),
                    style: crate::svg::LineStyle::Solid,
                    points: pts,
                }],
            };
            Ok(plot.render())
        }
        [ax, ay] => {
            // Row-major grid order: the later axis varies fastest. Map the
            // first varying axis to y and the second to x so the nested
            // loop below can read rows off sequentially.
            let (ya, xa) = (ax, ay);
            let xs = axis_values(xa);
            let ys = axis_values(ya);
            let mut values = vec![vec![f64::NAN; xs.len()]; ys.len()];
            for row in rows {
                let v = match &row.values {
                    Ok(v) => v.bell,
                    Err(_) => f64::NAN,
                };
                let xi = nearest_index(&xs, coord(&row.point, xa.name));
                let yi = nearest_index(&ys, coord(&row.point, ya.name));
                values[yi][xi] = v;
            }
            let map = crate::svg::Heatmap {
                title: "bell combination".to_string(),
                x_label: xa.name.as_str().to_string(),
                y_label: ya.name.as_str().to_string(),
                x_log: xa.scale == crate::config::Scale::Log,
                y_log: ya.scale == crate::config::Scale::Log,
                xs,
                ys,
                values,
                contours: vec![2.0],
            };
            Ok(map.render())
        }
        _ => Err(CliError::Usage(format!(
            "plotting needs one or two varying axes, found {}",
            varying.len()
        ))),
    }
}

fn nearest_index(grid: &[f64], v: f64) -> usize {
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for (i, g) in grid.iter().enumerate() {
        let d = (g - v).abs();
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gkmr_config(extra: &[&str]) -> SweepConfig {
        let base = r#"{
            "background": "minkowski",
            "family": "gkmr",
            "fixed": {"alpha": 3.0, "beta": 0.0, "delta": 0.1},
            "output": {"path": "out.csv", "format": "csv"}
        }"#;
        let overrides: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        SweepConfig::from_json(base, &overrides).unwrap()
    }

    #[test]
    fn single_point_sweep_matches_direct_evaluation() {
        let rows = run_sweep(&gkmr_config(&[]));
        assert_eq!(rows.len(), 1);
        let v = rows[0].values.as_ref().unwrap();
        let gamma = covariance(&Params::minkowski(3.0, 0.0, 0.1)).unwrap();
        let c = bellfield_core::gkmr::correlators(&gamma).unwrap();
        assert_eq!(v.sxsx, c.sxsx);
        assert_eq!(v.szsz, c.szsz);
        assert_eq!(v.bell, c.bell());
        assert!(v.bell > 0.0 && v.bell < 2.0);
        assert_eq!(rows[0].status(), "ok");
    }

    #[test]
    fn min_keyword_resolves_to_the_support_diameter_per_point() {
        let cfg = gkmr_config(&[
            "fixed={\"alpha\": \"min\", \"beta\": 0.0}",
            "axes=[{\"name\":\"delta\",\"min\":0.01,\"max\":1.0,\"count\":3,\"scale\":\"log\"}]",
        ]);
        let rows = run_sweep(&cfg);
        assert_eq!(rows.len(), 3);
        for row in &rows {
            let want = 2.0 * (1.0 + row.point.delta);
            assert_eq!(row.point.alpha, want);
            assert_eq!(row.status(), "ok");
        }
    }

    #[test]
    fn bad_points_become_error_rows_without_aborting() {
        // An expanding background with a vanishing infrared cutoff has a
        // divergent low-frequency variance: that grid point must come back
        // flagged while its neighbors evaluate normally.
        let cfg = gkmr_config(&[
            "background=de_sitter",
            "fixed={\"alpha\": 3.0, \"delta\": 0.1, \"hr\": 1.0}",
            "axes=[{\"name\":\"beta\",\"min\":0.0,\"max\":0.001,\"count\":2,\"scale\":\"linear\"}]",
        ]);
        let rows = run_sweep(&cfg);
        assert_eq!(rows.len(), 2);
        assert!(rows[0].values.is_err());
        assert_ne!(rows[0].status(), "ok");
        assert!(!rows[0].status().contains(','));
        assert!(rows[1].values.is_ok());
    }

    #[test]
    fn separations_below_the_overlap_threshold_are_clamped() {
        let cfg = gkmr_config(&[
            "fixed={\"beta\": 0.0, \"delta\": 0.1}",
            "axes=[{\"name\":\"alpha\",\"min\":1.0,\"max\":4.0,\"count\":2,\"scale\":\"linear\"}]",
        ]);
        let rows = run_sweep(&cfg);
        assert_eq!(rows[0].point.alpha, 2.2);
        assert_eq!(rows[0].status(), "ok");
        assert_eq!(rows[1].point.alpha, 4.0);
    }

    #[test]
    fn larsson_rows_carry_budget_diagnostics() {
        let cfg = gkmr_config(&["family=larsson", "fixed.ell=1.0"]);
        let rows = run_sweep(&cfg);
        let v = rows[0].values.as_ref().unwrap();
        assert_eq!(v.approximated, Some(false));
        assert!(v.lattice_cells.unwrap() > 0);
        assert!(v.tail_bound.unwrap() < 1e-8);
        assert!(v.bell <= 2.0 * 2.0f64.sqrt());
    }

    #[test]
    fn csv_output_is_deterministic_and_carries_provenance() {
        let cfg = gkmr_config(&[
            "axes=[{\"name\":\"alpha\",\"min\":2.5,\"max\":9.0,\"count\":4,\"scale\":\"log\"}]",
            "fixed={\"beta\": 0.0001, \"delta\": 0.1}",
        ]);
        let sha = cfg.sha256();
        let mut a = Vec::new();
        write_csv(&mut a, &sha, &run_sweep(&cfg)).unwrap();
        let mut b = Vec::new();
        write_csv(&mut b, &sha, &run_sweep(&cfg)).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("# tool: bellfield "));
        assert!(text.contains(&format!("# config-sha256: {sha}")));
        assert!(text.lines().nth(2).unwrap().starts_with("alpha,beta,delta"));
        assert_eq!(text.lines().count(), 3 + 4);
    }

    #[test]
    fn json_output_mirrors_the_rows() {
        let cfg = gkmr_config(&["output.format=json"]);
        let rows = run_sweep(&cfg);
        let mut buf = Vec::new();
        write_json(&mut buf, &cfg.sha256(), &rows).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
        assert_eq!(doc["rows"][0]["status"], "ok");
        assert!(doc["rows"][0]["bell"].as_f64().unwrap() < 2.0);
        assert_eq!(doc["config_sha256"], cfg.sha256());
    }
}
