//! Built-in figure recipes. Each id evaluates a pinned parameter grid and
//! writes a CSV dataset plus one or two SVG plots into the chosen
//! directory. The CSV carries the full numeric content; the plots are the
//! qualitative view (log axes, overlay curves, contour lines).

use crate::config::{
    sha256_hex, AlphaSpec, Axis, BackgroundKind, Family, FixedParams, LarssonConfig, OutputConfig,
    OutputFormat, ParamName, Scale, SweepConfig,
};
use crate::error::{CliError, Result};
use crate::svg::{Heatmap, LinePlot, LineStyle, Series};
use crate::sweep::{self, SweepRow};
use bellfield_core::{covariance, gkmr, larsson, window::support_diameter, Params};
use std::path::{Path, PathBuf};

pub const FIGURE_IDS: [&str; 10] = [
    "fig2L", "fig2R", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10",
];

/// Evaluate one figure recipe and write its files; returns the paths.
pub fn reproduce(id: &str, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    match id.to_ascii_lowercase().as_str() {
        "fig2l" => fig2_left(out_dir),
        "fig2r" => fig2_right(out_dir),
        "fig3" => fig3(out_dir),
        "fig4" => fig4(out_dir),
        "fig5" => fig5(out_dir),
        "fig6" => fig6(out_dir),
        "fig7" => fig7(out_dir),
        "fig8" => fig8(out_dir),
        "fig9" => fig9(out_dir),
        "fig10" => fig10(out_dir),
        _ => Err(CliError::Usage(format!(
            "unknown figure id {id:?} (known: {})",
            FIGURE_IDS.join(", ")
        ))),
    }
}

fn base_config(background: BackgroundKind, family: Family) -> SweepConfig {
    SweepConfig {
        background,
        family,
        fixed: FixedParams::default(),
        axes: Vec::new(),
        larsson: LarssonConfig::default(),
        // The path is unused: figure outputs are written explicitly below.
        output: OutputConfig {
            path: PathBuf::from("unused"),
            format: OutputFormat::Csv,
            plot: false,
        },
    }
}

fn log_axis(name: ParamName, min: f64, max: f64, count: usize) -> Axis {
    Axis {
        name,
        min,
        max,
        count,
        scale: Scale::Log,
    }
}

fn checked_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    Ok(sweep::run_sweep(cfg))
}

fn descriptor_sha(id: &str, configs: &[&SweepConfig]) -> String {
    let doc = serde_json::json!({ "figure": id, "configs": configs });
    sha256_hex(serde_json::to_string(&doc).expect("descriptor serializes").as_bytes())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Figure CSV: the standard sweep columns plus figure-specific overlay
/// columns (one `Vec<String>` per extra column, aligned with `rows`).
fn write_figure_csv(
    path: &Path,
    sha: &str,
    rows: &[SweepRow],
    extra_names: &[&str],
    extras: &[Vec<String>],
) -> Result<()> {
    for col in extras {
        assert_eq!(col.len(), rows.len(), "overlay column length");
    }
    let mut buf = String::new();
    for line in sweep::provenance_lines(sha) {
        buf.push_str(&line);
        buf.push('\n');
    }
    buf.push_str(sweep::CSV_HEADER);
    for name in extra_names {
        buf.push(',');
        buf.push_str(name);
    }
    buf.push('\n');
    for (i, row) in rows.iter().enumerate() {
        let mut fields = sweep::csv_fields(row);
        for col in extras {
            fields.push(col[i].clone());
        }
        buf.push_str(&fields.join(","));
        buf.push('\n');
    }
    write_text(path, &buf)
}

fn bell_points(rows: &[SweepRow], x: impl Fn(&SweepRow) -> f64) -> Vec<(f64, f64)> {
    rows.iter()
        .filter_map(|r| r.values.as_ref().ok().map(|v| (x(r), v.bell)))
        .collect()
}

fn line_figure(
    out_dir: &Path,
    id: &str,
    plot: &LinePlot,
    sha: &str,
    rows: &[SweepRow],
    extra_names: &[&str],
    extras: &[Vec<String>],
) -> Result<Vec<PathBuf>> {
    let csv_path = out_dir.join(format!("{id}.csv"));
    write_figure_csv(&csv_path, sha, rows, extra_names, extras)?;
    let svg_path = out_dir.join(format!("{id}.svg"));
    write_text(&svg_path, &plot.render())?;
    Ok(vec![csv_path, svg_path])
}

/// Static background: Bell combination against patch separation at fixed
/// shell width 0.01, with the closed-form approximation and its
/// large-separation plateau overlaid.
fn fig2_left(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let delta = 0.01;
    let mut cfg = base_config(BackgroundKind::Minkowski, Family::Gkmr);
    cfg.fixed.beta = Some(0.0);
    cfg.fixed.delta = Some(delta);
    cfg.axes
        .push(log_axis(ParamName::Alpha, support_diameter(delta), 100.0, 200));
    let rows = checked_sweep(&cfg)?;
    let approx: Vec<f64> = rows
        .iter()
        .map(|r| gkmr::bell_minkowski_approx(r.point.alpha, delta))
        .collect();
    let plateau = gkmr::bell_plateau(delta);
    let extras = [
        approx.iter().map(f64::to_string).collect::<Vec<_>>(),
        vec![plateau.to_string(); rows.len()],
    ];
    let (a_lo, a_hi) = (rows[0].point.alpha, rows[rows.len() - 1].point.alpha);
    let plot = LinePlot {
        title: "fig2L: Bell combination vs separation (static)".into(),
        x_label: "alpha".into(),
        y_label: "B".into(),
        x_log: true,
        y_log: false,
        series: vec![
            Series {
                label: "B".into(),
                style: LineStyle::Solid,
                points: bell_points(&rows, |r| r.point.alpha),
            },
            Series {
                label: "closed-form approximation".into(),
                style: LineStyle::Dashed,
                points: rows
                    .iter()
                    .zip(&approx)
                    .map(|(r, &a)| (r.point.alpha, a))
                    .collect(),
            },
            Series {
                label: "large-separation plateau".into(),
                style: LineStyle::Dotted,
                points: vec![(a_lo, plateau), (a_hi, plateau)],
            },
        ],
    };
    line_figure(
        out_dir,
        "fig2L",
        &plot,
        &descriptor_sha("fig2L", &[&cfg]),
        &rows,
        &["bell_approx", "bell_plateau"],
        &extras,
    )
}

/// Static background: Bell combination at the minimal separation as a
/// function of the shell width, with the closed-form approximation.
fn fig2_right(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::Minkowski, Family::Gkmr);
    cfg.fixed.alpha = Some(AlphaSpec::Min);
    cfg.fixed.beta = Some(0.0);
    cfg.axes.push(log_axis(ParamName::Delta, 1e-2, 1e2, 200));
    let rows = checked_sweep(&cfg)?;
    let approx: Vec<f64> = rows
        .iter()
        .map(|r| gkmr::bell_minkowski_approx(r.point.alpha, r.point.delta))
        .collect();
    let extras = [approx.iter().map(f64::to_string).collect::<Vec<_>>()];
    let plot = LinePlot {
        title: "fig2R: Bell combination vs shell width (minimal separation)".into(),
        x_label: "delta".into(),
        y_label: "B".into(),
        x_log: true,
        y_log: false,
        series: vec![
            Series {
                label: "B".into(),
                style: LineStyle::Solid,
                points: bell_points(&rows, |r| r.point.delta),
            },
            Series {
                label: "closed-form approximation".into(),
                style: LineStyle::Dashed,
                points: rows
                    .iter()
                    .zip(&approx)
                    .map(|(r, &a)| (r.point.delta, a))
                    .collect(),
            },
        ],
    };
    line_figure(
        out_dir,
        "fig2R",
        &plot,
        &descriptor_sha("fig2R", &[&cfg]),
        &rows,
        &["bell_approx"],
        &extras,
    )
}

/// Shared implementation for the heatmap figures: axes[0] is the y axis
/// (outer grid loop), axes[1] the x axis (inner loop).
fn heatmap_figure(out_dir: &Path, id: &str, title: &str, cfg: &SweepConfig) -> Result<Vec<PathBuf>> {
    let rows = checked_sweep(cfg)?;
    let sha = descriptor_sha(id, &[cfg]);
    let csv_path = out_dir.join(format!("{id}.csv"));
    write_figure_csv(&csv_path, &sha, &rows, &[], &[])?;
    let (ya, xa) = (&cfg.axes[0], &cfg.axes[1]);
    let mut values = vec![vec![f64::NAN; xa.count]; ya.count];
    for (i, row) in rows.iter().enumerate() {
        if let Ok(v) = &row.values {
            values[i / xa.count][i % xa.count] = v.bell;
        }
    }
    let map = Heatmap {
        title: title.into(),
        x_label: xa.name.as_str().into(),
        y_label: ya.name.as_str().into(),
        x_log: xa.scale == Scale::Log,
        y_log: ya.scale == Scale::Log,
        xs: (0..xa.count).map(|i| xa.value(i)).collect(),
        ys: (0..ya.count).map(|i| ya.value(i)).collect(),
        values,
        contours: vec![0.5, 1.0, 1.5],
    };
    let svg_path = out_dir.join(format!("{id}.svg"));
    write_text(&svg_path, &map.render())?;
    Ok(vec![csv_path, svg_path])
}

/// Expanding background: Bell combination over expansion rate and
/// separation at fixed shell width and infrared cutoff.
fn fig3(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let delta = 0.01;
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.beta = Some(1e-4);
    cfg.fixed.delta = Some(delta);
    cfg.axes
        .push(log_axis(ParamName::Alpha, support_diameter(delta), 1e2, 40));
    cfg.axes.push(log_axis(ParamName::Hr, 1e-3, 1e3, 40));
    heatmap_figure(
        out_dir,
        "fig3",
        "fig3: Bell combination over expansion rate and separation",
        &cfg,
    )
}

/// Expanding background: Bell combination against separation at a slow
/// expansion rate.
fn fig4(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let delta = 0.01;
    let beta = 1e-4;
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.beta = Some(beta);
    cfg.fixed.delta = Some(delta);
    cfg.fixed.hr = Some(1e-2);
    // Separations beyond the inverse infrared cutoff are not meaningful
    // for this view, so the axis stops at 1/beta.
    cfg.axes.push(log_axis(
        ParamName::Alpha,
        support_diameter(delta),
        1.0 / beta,
        200,
    ));
    let rows = checked_sweep(&cfg)?;
    let plot = LinePlot {
        title: "fig4: Bell combination vs separation (slow expansion)".into(),
        x_label: "alpha".into(),
        y_label: "B".into(),
        x_log: true,
        y_log: false,
        series: vec![Series {
            label: "B".into(),
            style: LineStyle::Solid,
            points: bell_points(&rows, |r| r.point.alpha),
        }],
    };
    line_figure(
        out_dir,
        "fig4",
        &plot,
        &descriptor_sha("fig4", &[&cfg]),
        &rows,
        &[],
        &[],
    )
}

/// Expanding background: Bell combination and twice the purity against
/// the expansion rate at the minimal separation.
fn fig5(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.alpha = Some(AlphaSpec::Min);
    cfg.fixed.beta = Some(1e-4);
    cfg.fixed.delta = Some(1e-2);
    cfg.axes.push(log_axis(ParamName::Hr, 1e-3, 1e3, 200));
    let rows = checked_sweep(&cfg)?;
    let purity_pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| {
            r.values
                .as_ref()
                .ok()
                .map(|v| (r.point.hr.unwrap(), 2.0 * v.purity))
        })
        .collect();
    let plot = LinePlot {
        title: "fig5: Bell combination and purity vs expansion rate".into(),
        x_label: "hr".into(),
        y_label: "B, 2*purity".into(),
        x_log: true,
        y_log: false,
        series: vec![
            Series {
                label: "B".into(),
                style: LineStyle::Solid,
                points: bell_points(&rows, |r| r.point.hr.unwrap()),
            },
            Series {
                label: "2*purity".into(),
                style: LineStyle::Dashed,
                points: purity_pts,
            },
        ],
    };
    line_figure(
        out_dir,
        "fig5",
        &plot,
        &descriptor_sha("fig5", &[&cfg]),
        &rows,
        &[],
        &[],
    )
}

/// Overlay columns shared by the binned-family figures: the narrow-bin
/// closed form and the wide-bin limit, evaluated from the same state.
fn binned_overlays(gamma: &bellfield_core::Mat4, rows: &[SweepRow]) -> (Vec<f64>, f64) {
    let low: Vec<f64> = rows
        .iter()
        .map(|r| larsson::small_bin_correlators(gamma, r.point.ell.unwrap()).bell())
        .collect();
    let high = 2.0 * larsson::wide_bin_parity_limit(gamma).abs();
    (low, high)
}

/// Static background, binned operators: Bell combination against bin
/// width, with the narrow-bin closed form and the wide-bin limit.
fn fig6(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::Minkowski, Family::Larsson);
    cfg.fixed.alpha = Some(AlphaSpec::Value(3.0));
    cfg.fixed.beta = Some(0.0);
    cfg.fixed.delta = Some(0.1);
    cfg.axes.push(log_axis(ParamName::Ell, 1e-2, 1e2, 20));
    let rows = checked_sweep(&cfg)?;
    let gamma = covariance(&Params::minkowski(3.0, 0.0, 0.1))
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let (low, high) = binned_overlays(&gamma, &rows);
    let extras = [
        low.iter().map(f64::to_string).collect::<Vec<_>>(),
        vec![high.to_string(); rows.len()],
    ];
    let (l_lo, l_hi) = (rows[0].point.ell.unwrap(), rows[rows.len() - 1].point.ell.unwrap());
    let plot = LinePlot {
        title: "fig6: binned Bell combination vs bin width (static)".into(),
        x_label: "ell".into(),
        y_label: "B".into(),
        x_log: true,
        y_log: false,
        series: vec![
            Series {
                label: "B (binned)".into(),
                style: LineStyle::Solid,
                points: bell_points(&rows, |r| r.point.ell.unwrap()),
            },
            Series {
                label: "narrow-bin closed form".into(),
                style: LineStyle::Dashed,
                points: rows
                    .iter()
                    .zip(&low)
                    .map(|(r, &b)| (r.point.ell.unwrap(), b))
                    .collect(),
            },
            Series {
                label: "wide-bin limit".into(),
                style: LineStyle::Dotted,
                points: vec![(l_lo, high), (l_hi, high)],
            },
        ],
    };
    line_figure(
        out_dir,
        "fig6",
        &plot,
        &descriptor_sha("fig6", &[&cfg]),
        &rows,
        &["bell_low_approx", "bell_high_limit"],
        &extras,
    )
}

/// Expanding background, binned operators: Bell combination against bin
/// width for several expansion rates. One CSV; two SVG panels (rates at
/// or below one, rates at or above one), both carrying the narrow-bin
/// and wide-bin overlays of the unit-rate curve.
fn fig7(out_dir: &Path) -> Result<Vec<PathBuf>> {
    const HRS: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
    let mut configs = Vec::new();
    let mut all_rows: Vec<SweepRow> = Vec::new();
    let mut low_col: Vec<f64> = Vec::new();
    let mut high_col: Vec<f64> = Vec::new();
    for &hr in &HRS {
        let mut cfg = base_config(BackgroundKind::DeSitter, Family::Larsson);
        cfg.fixed.alpha = Some(AlphaSpec::Value(3.0));
        cfg.fixed.beta = Some(1e-4);
        cfg.fixed.delta = Some(0.1);
        cfg.fixed.hr = Some(hr);
        cfg.axes.push(log_axis(ParamName::Ell, 1e-2, 1e2, 20));
        let rows = checked_sweep(&cfg)?;
        let gamma = covariance(&Params::de_sitter(hr, 3.0, 1e-4, 0.1))
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let (low, high) = binned_overlays(&gamma, &rows);
        low_col.extend(low);
        high_col.extend(std::iter::repeat(high).take(rows.len()));
        all_rows.extend(rows);
        configs.push(cfg);
    }
    let sha = descriptor_sha("fig7", &configs.iter().collect::<Vec<_>>());
    let extras = [
        low_col.iter().map(f64::to_string).collect::<Vec<_>>(),
        high_col.iter().map(f64::to_string).collect::<Vec<_>>(),
    ];
    let csv_path = out_dir.join("fig7.csv");
    write_figure_csv(
        &csv_path,
        &sha,
        &all_rows,
        &["bell_low_approx", "bell_high_limit"],
        &extras,
    )?;

    let curve = |hr: f64| -> Vec<(f64, f64)> {
        all_rows
            .iter()
            .filter(|r| r.point.hr == Some(hr))
            .filter_map(|r| r.values.as_ref().ok().map(|v| (r.point.ell.unwrap(), v.bell)))
            .collect()
    };
    let unit_overlays = {
        let idx: Vec<usize> = all_rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.point.hr == Some(1.0))
            .map(|(i, _)| i)
            .collect();
        let low: Vec<(f64, f64)> = idx
            .iter()
            .map(|&i| (all_rows[i].point.ell.unwrap(), low_col[i]))
            .collect();
        let high = high_col[idx[0]];
        let (l_lo, l_hi) = (low[0].0, low[low.len() - 1].0);
        vec![
            Series {
                label: "narrow-bin closed form (hr = 1)".into(),
                style: LineStyle::Dashed,
                points: low,
            },
            Series {
                label: "wide-bin limit (hr = 1)".into(),
                style: LineStyle::Dotted,
                points: vec![(l_lo, high), (l_hi, high)],
            },
        ]
    };
    let mut paths = vec![csv_path];
    for (panel, rates) in [("left", &HRS[..3]), ("right", &HRS[2..])] {
        let mut series: Vec<Series> = rates
            .iter()
            .map(|&hr| Series {
                label: format!("hr = {hr}"),
                style: LineStyle::Solid,
                points: curve(hr),
            })
            .collect();
        series.extend(unit_overlays.iter().cloned());
        let plot = LinePlot {
            title: format!("fig7 ({panel}): binned Bell combination vs bin width"),
            x_label: "ell".into(),
            y_label: "B".into(),
            x_log: true,
            y_log: false,
            series,
        };
        let svg_path = out_dir.join(format!("fig7_{panel}.svg"));
        write_text(&svg_path, &plot.render())?;
        paths.push(svg_path);
    }
    Ok(paths)
}

/// Expanding background: Bell combination over infrared cutoff and
/// expansion rate at the minimal separation.
fn fig8(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.alpha = Some(AlphaSpec::Min);
    cfg.fixed.delta = Some(0.01);
    cfg.axes.push(log_axis(ParamName::Beta, 1e-5, 1e-1, 40));
    cfg.axes.push(log_axis(ParamName::Hr, 1e-3, 1e3, 40));
    heatmap_figure(
        out_dir,
        "fig8",
        "fig8: Bell combination over infrared cutoff and expansion rate",
        &cfg,
    )
}

/// Expanding background: Bell combination over shell width and expansion
/// rate at the minimal separation.
fn fig9(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.alpha = Some(AlphaSpec::Min);
    cfg.fixed.beta = Some(1e-3);
    cfg.axes.push(log_axis(ParamName::Delta, 1e-2, 1e2, 40));
    cfg.axes.push(log_axis(ParamName::Hr, 1e-3, 1e3, 40));
    heatmap_figure(
        out_dir,
        "fig9",
        "fig9: Bell combination over shell width and expansion rate",
        &cfg,
    )
}

/// Expanding background: Bell combination over infrared cutoff and shell
/// width at a fast expansion rate and the minimal separation.
fn fig10(out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut cfg = base_config(BackgroundKind::DeSitter, Family::Gkmr);
    cfg.fixed.alpha = Some(AlphaSpec::Min);
    cfg.fixed.hr = Some(1e3);
    cfg.axes.push(log_axis(ParamName::Beta, 1e-5, 1e-1, 40));
    cfg.axes.push(log_axis(ParamName::Delta, 1e-2, 1e2, 40));
    heatmap_figure(
        out_dir,
        "fig10",
        "fig10: Bell combination over infrared cutoff and shell width",
        &cfg,
    )
}
