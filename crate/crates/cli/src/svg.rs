//! Minimal self-contained SVG 1.1 rendering: multi-series line plots and
//! heatmaps with contour overlays. No external plotting dependency; the
//! output is deterministic for identical inputs.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 58.0;
const COLORBAR_WIDTH: f64 = 76.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

impl LineStyle {
    fn dash_attr(self) -> &'static str {
        match self {
            LineStyle::Solid => "",
            LineStyle::Dashed => " stroke-dasharray=\"7,5\"",
            LineStyle::Dotted => " stroke-dasharray=\"2,4\"",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub style: LineStyle,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_log: bool,
    pub y_log: bool,
    pub series: Vec<Series>,
}

/// One plot axis: data range plus the log/linear pixel mapping.
struct AxisMap {
    lo: f64,
    hi: f64,
    log: bool,
    px_lo: f64,
    px_hi: f64,
}

impl AxisMap {
    fn new(lo: f64, hi: f64, log: bool, px_lo: f64, px_hi: f64) -> Self {
        // Pad degenerate ranges so single-valued data still renders.
        let (lo, hi) = if lo < hi {
            (lo, hi)
        } else if log {
            (lo / 2.0, lo * 2.0)
        } else if lo == 0.0 {
            (-1.0, 1.0)
        } else {
            (lo - lo.abs() * 0.5, hi + hi.abs() * 0.5)
        };
        Self {
            lo,
            hi,
            log,
            px_lo,
            px_hi,
        }
    }

    fn tx(&self, v: f64) -> f64 {
        if self.log {
            v.ln()
        } else {
            v
        }
    }

    fn px(&self, v: f64) -> f64 {
        let t = (self.tx(v) - self.tx(self.lo)) / (self.tx(self.hi) - self.tx(self.lo));
        self.px_lo + t * (self.px_hi - self.px_lo)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let k_lo = self.lo.log10().ceil() as i32;
            let k_hi = self.hi.log10().floor() as i32;
            if k_hi >= k_lo + 1 {
                let span = (k_hi - k_lo) as usize;
                let stride = span / 8 + 1;
                return (k_lo..=k_hi)
                    .step_by(stride)
                    .map(|k| 10f64.powi(k))
                    .collect();
            }
            // Less than two decades: fall back to linear spacing.
        }
        linear_ticks(self.lo, self.hi)
    }
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let range = hi - lo;
    if !(range > 0.0) || !range.is_finite() {
        return vec![lo];
    }
    let raw = range / 4.5;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| range / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil();
    let last = (hi / step).floor();
    (first as i64..=last as i64).map(|k| k as f64 * step).collect()
}

/// Short human label for a tick value.
fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        // Trim float dust from nice-step arithmetic.
        let s = format!("{:.6}", v);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        let exp = a.log10().floor();
        let mant = v / 10f64.powf(exp);
        let mant_s = format!("{:.2}", mant);
        let mant_s = mant_s.trim_end_matches('0').trim_end_matches('.');
        format!("{mant_s}e{}", exp as i32)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
}

fn draw_frame_and_axes(
    out: &mut String,
    x: &AxisMap,
    y: &AxisMap,
    title: &str,
    x_label: &str,
    y_label: &str,
    plot_right: f64,
) {
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>",
        (MARGIN_LEFT + plot_right) / 2.0,
        xml_escape(title)
    );
    for tick in x.ticks() {
        let px = x.px(tick);
        if !(MARGIN_LEFT - 0.5..=plot_right + 0.5).contains(&px) {
            continue;
        }
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#cccccc\" stroke-width=\"0.6\"/>",
            MARGIN_TOP,
            HEIGHT - MARGIN_BOTTOM
        );
        let _ = writeln!(
            out,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>",
            HEIGHT - MARGIN_BOTTOM + 18.0,
            fmt_tick(tick)
        );
    }
    for tick in y.ticks() {
        let py = y.px(tick);
        if !(MARGIN_TOP - 0.5..=HEIGHT - MARGIN_BOTTOM + 0.5).contains(&py) {
            continue;
        }
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#cccccc\" stroke-width=\"0.6\"/>",
            MARGIN_LEFT, plot_right
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 8.0,
            py + 4.0,
            fmt_tick(tick)
        );
    }
    let _ = writeln!(
        out,
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
        MARGIN_LEFT,
        MARGIN_TOP,
        plot_right - MARGIN_LEFT,
        HEIGHT - MARGIN_BOTTOM - MARGIN_TOP
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{}</text>",
        (MARGIN_LEFT + plot_right) / 2.0,
        HEIGHT - 14.0,
        xml_escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"20\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1})\">{}</text>",
        (MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2.0,
        (MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2.0,
        xml_escape(y_label)
    );
}

impl LinePlot {
    pub fn render(&self) -> String {
        let finite: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(x, y)| {
                x.is_finite() && y.is_finite() && (!self.x_log || *x > 0.0) && (!self.y_log || *y > 0.0)
            })
            .copied()
            .collect();
        let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in &finite {
            x_lo = x_lo.min(*x);
            x_hi = x_hi.max(*x);
            y_lo = y_lo.min(*y);
            y_hi = y_hi.max(*y);
        }
        if finite.is_empty() {
            (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
        }
        // Headroom on the value axis so curves do not hug the frame.
        if !self.y_log {
            let pad = 0.06 * (y_hi - y_lo).max(1e-12 * y_hi.abs().max(1.0));
            y_lo -= pad;
            y_hi += pad;
        }
        let plot_right = WIDTH - MARGIN_RIGHT;
        let x = AxisMap::new(x_lo, x_hi, self.x_log, MARGIN_LEFT, plot_right);
        let y = AxisMap::new(y_lo, y_hi, self.y_log, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
        let mut out = String::new();
        svg_open(&mut out);
        draw_frame_and_axes(
            &mut out,
            &x,
            &y,
            &self.title,
            &self.x_label,
            &self.y_label,
            plot_right,
        );
        for (si, series) in self.series.iter().enumerate() {
            let color = PALETTE[si % PALETTE.len()];
            // Split at non-finite samples so gaps stay gaps.
            let mut segment: Vec<(f64, f64)> = Vec::new();
            let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
            for &(px, py) in &series.points {
                let ok = px.is_finite()
                    && py.is_finite()
                    && (!self.x_log || px > 0.0)
                    && (!self.y_log || py > 0.0);
                if ok {
                    segment.push((x.px(px), y.px(py)));
                } else if !segment.is_empty() {
                    segments.push(std::mem::take(&mut segment));
                }
            }
            if !segment.is_empty() {
                segments.push(segment);
            }
            for seg in segments {
                if seg.len() == 1 {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>",
                        seg[0].0, seg[0].1
                    );
                    continue;
                }
                let pts: Vec<String> = seg
                    .iter()
                    .map(|(a, b)| format!("{a:.2},{b:.2}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"{} \
                     points=\"{}\"/>",
                    series.style.dash_attr(),
                    pts.join(" ")
                );
            }
        }
        // Legend, top-right inside the frame.
        if self.series.len() > 1 || self.series.first().is_some_and(|s| !s.label.is_empty()) {
            for (si, series) in self.series.iter().enumerate() {
                let color = PALETTE[si % PALETTE.len()];
                let ly = MARGIN_TOP + 16.0 + 18.0 * si as f64;
                let lx = plot_right - 150.0;
                let _ = writeln!(
                    out,
                    "<line x1=\"{lx:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" \
                     stroke=\"{color}\" stroke-width=\"1.8\"{}/>",
                    lx + 26.0,
                    series.style.dash_attr()
                );
                let _ = writeln!(
                    out,
                    "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" \
                     font-size=\"12\">{}</text>",
                    lx + 32.0,
                    ly + 4.0,
                    xml_escape(&series.label)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Debug, Clone)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_log: bool,
    pub y_log: bool,
    /// Grid coordinates, ascending.
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `values[yi][xi]`; NaN cells render gray.
    pub values: Vec<Vec<f64>>,
    /// Levels traced as white contour lines.
    pub contours: Vec<f64>,
}

/// Piecewise-linear colormap (dark violet to yellow).
fn colormap(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 9] = [
        (0.267, 0.005, 0.329),
        (0.278, 0.180, 0.486),
        (0.231, 0.318, 0.545),
        (0.173, 0.443, 0.557),
        (0.129, 0.565, 0.551),
        (0.157, 0.682, 0.502),
        (0.369, 0.788, 0.384),
        (0.678, 0.863, 0.190),
        (0.992, 0.906, 0.145),
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let ch = |a: f64, b: f64| ((a + (b - a) * f) * 255.0).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        ch(STOPS[i].0, STOPS[i + 1].0),
        ch(STOPS[i].1, STOPS[i + 1].1),
        ch(STOPS[i].2, STOPS[i + 1].2)
    )
}

impl Heatmap {
    pub fn render(&self) -> String {
        assert_eq!(self.values.len(), self.ys.len(), "one value row per y");
        for row in &self.values {
            assert_eq!(row.len(), self.xs.len(), "one value per x");
        }
        let plot_right = WIDTH - MARGIN_RIGHT - COLORBAR_WIDTH;
        let x = AxisMap::new(
            *self.xs.first().unwrap(),
            *self.xs.last().unwrap(),
            self.x_log,
            MARGIN_LEFT,
            plot_right,
        );
        let y = AxisMap::new(
            *self.ys.first().unwrap(),
            *self.ys.last().unwrap(),
            self.y_log,
            HEIGHT - MARGIN_BOTTOM,
            MARGIN_TOP,
        );
        let finite: Vec<f64> = self
            .values
            .iter()
            .flatten()
            .copied()
            .filter(|v| v.is_finite())
            .collect();
        let v_lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let v_hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (v_lo, v_hi) = if finite.is_empty() || v_lo == v_hi {
            (v_lo.min(0.0), v_hi.max(1.0))
        } else {
            (v_lo, v_hi)
        };
        let norm = |v: f64| (v - v_lo) / (v_hi - v_lo);

        let mut out = String::new();
        svg_open(&mut out);

        // Cell rectangles span midpoints between neighboring grid nodes
        // (in pixel space, so log axes get equal-looking decades).
        let edges = |grid: &[f64], map: &AxisMap| -> Vec<f64> {
            let n = grid.len();
            let px: Vec<f64> = grid.iter().map(|&g| map.px(g)).collect();
            if n == 1 {
                return vec![px[0] - 5.0, px[0] + 5.0];
            }
            let mut e = Vec::with_capacity(n + 1);
            e.push(px[0] - (px[1] - px[0]) / 2.0);
            for i in 1..n {
                e.push((px[i - 1] + px[i]) / 2.0);
            }
            e.push(px[n - 1] + (px[n - 1] - px[n - 2]) / 2.0);
            // Clamp to the frame so edge cells do not bleed outside.
            for v in e.iter_mut() {
                *v = v.clamp(
                    map.px_lo.min(map.px_hi) - 0.01,
                    map.px_lo.max(map.px_hi) + 0.01,
                );
            }
            e
        };
        let xe = edges(&self.xs, &x);
        let ye = edges(&self.ys, &y);
        for (yi, row) in self.values.iter().enumerate() {
            for (xi, &v) in row.iter().enumerate() {
                let fill = if v.is_finite() {
                    colormap(norm(v))
                } else {
                    "#dddddd".to_string()
                };
                let (x0, x1) = (xe[xi].min(xe[xi + 1]), xe[xi].max(xe[xi + 1]));
                let (y0, y1) = (ye[yi].min(ye[yi + 1]), ye[yi].max(ye[yi + 1]));
                let _ = writeln!(
                    out,
                    "<rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
                     fill=\"{fill}\"/>",
                    x1 - x0,
                    y1 - y0
                );
            }
        }

        // Contours by marching squares on the grid nodes, interpolated in
        // pixel space.
        for &level in &self.contours {
            let path = self.contour_path(level, &x, &y);
            if !path.is_empty() {
                let _ = writeln!(
                    out,
                    "<path d=\"{path}\" fill=\"none\" stroke=\"white\" stroke-width=\"1.6\"/>"
                );
            }
        }

        draw_frame_and_axes(
            &mut out,
            &x,
            &y,
            &self.title,
            &self.x_label,
            &self.y_label,
            plot_right,
        );

        // Colorbar.
        let bar_x = plot_right + 18.0;
        let bar_w = 16.0;
        let bar_top = MARGIN_TOP;
        let bar_h = HEIGHT - MARGIN_BOTTOM - MARGIN_TOP;
        let steps = 32;
        for i in 0..steps {
            let t0 = i as f64 / steps as f64;
            let t1 = (i + 1) as f64 / steps as f64;
            let y1 = bar_top + bar_h * (1.0 - t0);
            let y0 = bar_top + bar_h * (1.0 - t1);
            let _ = writeln!(
                out,
                "<rect x=\"{bar_x:.1}\" y=\"{y0:.2}\" width=\"{bar_w:.1}\" \
                 height=\"{:.2}\" fill=\"{}\"/>",
                y1 - y0 + 0.5,
                colormap((t0 + t1) / 2.0)
            );
        }
        let _ = writeln!(
            out,
            "<rect x=\"{bar_x:.1}\" y=\"{bar_top:.1}\" width=\"{bar_w:.1}\" height=\"{bar_h:.1}\" \
             fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>"
        );
        for (t, v) in [(0.0, v_lo), (0.5, (v_lo + v_hi) / 2.0), (1.0, v_hi)] {
            let py = bar_top + bar_h * (1.0 - t);
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
                bar_x + bar_w + 5.0,
                py + 4.0,
                fmt_tick(v)
            );
        }
        out.push_str("</svg>\n");
        out
    }

    fn contour_path(&self, level: f64, x: &AxisMap, y: &AxisMap) -> String {
        let nx = self.xs.len();
        let ny = self.ys.len();
        let mut path = String::new();
        if nx < 2 || ny < 2 {
            return path;
        }
        let node = |yi: usize, xi: usize| (x.px(self.xs[xi]), y.px(self.ys[yi]));
        // Crossing point on the edge between two nodes.
        let cross = |a: (f64, f64), va: f64, b: (f64, f64), vb: f64| -> (f64, f64) {
            let t = ((level - va) / (vb - va)).clamp(0.0, 1.0);
            (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
        };
        for yi in 0..ny - 1 {
            for xi in 0..nx - 1 {
                let v = [
                    self.values[yi][xi],
                    self.values[yi][xi + 1],
                    self.values[yi + 1][xi + 1],
                    self.values[yi + 1][xi],
                ];
                if v.iter().any(|w| !w.is_finite()) {
                    continue;
                }
                let p = [
                    node(yi, xi),
                    node(yi, xi + 1),
                    node(yi + 1, xi + 1),
                    node(yi + 1, xi),
                ];
                let mut mask = 0usize;
                for (i, &w) in v.iter().enumerate() {
                    if w >= level {
                        mask |= 1 << i;
                    }
                }
                if mask == 0 || mask == 15 {
                    continue;
                }
                // Crossing on square edge i: between corners i and (i+1)%4.
                let edge =
                    |i: usize| cross(p[i], v[i], p[(i + 1) % 4], v[(i + 1) % 4]);
                let mut segs: Vec<((f64, f64), (f64, f64))> = Vec::new();
                match mask {
                    1 | 14 => segs.push((edge(3), edge(0))),
                    2 | 13 => segs.push((edge(0), edge(1))),
                    4 | 11 => segs.push((edge(1), edge(2))),
                    8 | 7 => segs.push((edge(2), edge(3))),
                    3 | 12 => segs.push((edge(3), edge(1))),
                    6 | 9 => segs.push((edge(0), edge(2))),
                    5 | 10 => {
                        // Saddle: split by the cell-center value.
                        let center = (v[0] + v[1] + v[2] + v[3]) / 4.0;
                        if (center >= level) == (mask == 5) {
                            segs.push((edge(3), edge(0)));
                            segs.push((edge(1), edge(2)));
                        } else {
                            segs.push((edge(0), edge(1)));
                            segs.push((edge(2), edge(3)));
                        }
                    }
                    _ => unreachable!(),
                }
                for (a, b) in segs {
                    let _ = write!(
                        path,
                        "M {:.2} {:.2} L {:.2} {:.2} ",
                        a.0, a.1, b.0, b.1
                    );
                }
            }
        }
        path.trim_end().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_renders_series_and_skips_gaps() {
        let plot = LinePlot {
            title: "demo".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            x_log: true,
            y_log: false,
            series: vec![
                Series {
                    label: "solid".into(),
                    style: LineStyle::Solid,
                    points: vec![(0.1, 1.0), (1.0, 2.0), (f64::NAN, 3.0), (10.0, 0.5)],
                },
                Series {
                    label: "dashed".into(),
                    style: LineStyle::Dashed,
                    points: vec![(0.1, 0.4), (10.0, 1.9)],
                },
            ],
        };
        let svg = plot.render();
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        // The NaN sample splits the first series: a two-point polyline and
        // an isolated sample drawn as a marker; the second series is one
        // more polyline.
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
        assert!(!svg.contains("NaN"));
        assert!(svg.contains(">demo</text>"));
    }

    #[test]
    fn log_axis_uses_decade_ticks() {
        let plot = LinePlot {
            title: String::new(),
            x_label: "x".into(),
            y_label: "y".into(),
            x_log: true,
            y_log: false,
            series: vec![Series {
                label: String::new(),
                style: LineStyle::Solid,
                points: vec![(1e-3, 0.0), (1e3, 1.0)],
            }],
        };
        let svg = plot.render();
        for label in ["0.001", "1000"] {
            assert!(svg.contains(&format!(">{label}</text>")), "missing {label}");
        }
    }

    #[test]
    fn heatmap_draws_cells_and_contour() {
        let map = Heatmap {
            title: "grid".into(),
            x_label: "a".into(),
            y_label: "b".into(),
            x_log: false,
            y_log: false,
            xs: vec![0.0, 1.0, 2.0],
            ys: vec![0.0, 1.0],
            values: vec![vec![0.0, 1.0, 2.0], vec![1.0, 2.0, 3.0]],
            contours: vec![1.5, 100.0],
        };
        let svg = map.render();
        // 6 data cells + 32 colorbar fills + frame/background rects.
        assert!(svg.matches("<rect").count() >= 6 + 32);
        // The 1.5 level crosses the grid; the 100 level does not.
        assert_eq!(svg.matches("stroke=\"white\"").count(), 1);
        assert!(svg.contains("<path d=\"M"));
    }

    #[test]
    fn tick_formatting_is_compact() {
        assert_eq!(fmt_tick(0.0), "0");
        assert_eq!(fmt_tick(2.5), "2.5");
        assert_eq!(fmt_tick(1000.0), "1000");
        assert_eq!(fmt_tick(1e-4), "1e-4");
        assert_eq!(fmt_tick(3.0e7), "3e7");
        assert_eq!(fmt_tick(-0.25), "-0.25");
    }
}
