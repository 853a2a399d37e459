//! Minimal standalone SVG charts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::analysis::{fit_tail_exponent, Ccdf, DegreeReport, ExponentFit};
use crate::error::{Error, Result};
use crate::graph::VertexType;

use super::output::header_comments;
use super::runner::SweepResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Line,
    LogLog,
    Scatter,
}

impl std::str::FromStr for PlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(PlotKind::Line),
            "loglog" => Ok(PlotKind::LogLog),
            "scatter" => Ok(PlotKind::Scatter),
            _ => Err(Error::param(
                "kind",
                format!("expected line, loglog or scatter, got `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub kind: PlotKind,
    pub series: Vec<PlotSeries>,
    /// Free text drawn in the top-right corner, one line each.
    pub annotations: Vec<String>,
    /// Emitted as XML comments ahead of the drawing.
    pub comments: Vec<String>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 7] = [
    "#1f5fbf", "#d62728", "#2ca02c", "#e6b800", "#8c564b", "#9467bd", "#17becf",
];

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Axis> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return None;
        }
        if log {
            lo = lo.floor();
            hi = hi.ceil().max(lo + 1.0);
        } else if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        } else {
            let pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
        Some(Axis { lo, hi, log })
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            (self.lo as i32..=self.hi as i32)
                .map(|e| (10f64.powi(e), format!("1e{e}")))
                .collect()
        } else {
            let raw = (self.hi - self.lo) / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .iter()
                .map(|m| m * mag)
                .find(|s| *s >= raw)
                .unwrap_or(raw);
            let mut out = Vec::new();
            let mut t = (self.lo / step).ceil() * step;
            while t <= self.hi + 1e-12 {
                let t0 = if t.abs() < step * 1e-9 { 0.0 } else { t };
                out.push((t0, format!("{}", (t0 * 1e6).round() / 1e6)));
                t += step;
            }
            out
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Plot {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        kind: PlotKind,
    ) -> Self {
        Plot {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            kind,
            series: Vec::new(),
            annotations: Vec::new(),
            comments: Vec::new(),
        }
    }

    /// Log-log CCDF curves, annotated with the fitted slopes.
    pub fn ccdf(title: &str, curves: &[(&str, &Ccdf, Option<ExponentFit>)]) -> Self {
        let mut plot = Plot::new(title, "k", "fraction with degree >= k", PlotKind::LogLog);
        for (label, ccdf, fit) in curves {
            plot.series.push(PlotSeries {
                label: label.to_string(),
                points: ccdf.points().iter().map(|p| (p.k as f64, p.fraction)).collect(),
            });
            if let Some(f) = fit {
                plot.annotations.push(format!("{label}: slope {:.2}", -f.gamma_hat));
            }
        }
        plot
    }

    /// Per-vertex `(type 1 degree, type 2 degree)` of the vertices of each type.
    pub fn degree_scatter(title: &str, report: &DegreeReport) -> Self {
        let mut plot = Plot::new(title, "type 1 degree", "type 2 degree", PlotKind::Scatter);
        for t in VertexType::BOTH {
            plot.series.push(PlotSeries {
                label: format!("type {t} vertices"),
                points: report.joint[t.index()]
                    .keys()
                    .map(|&(a, b)| (a as f64, b as f64))
                    .collect(),
            });
        }
        plot
    }

    pub fn render(&self) -> Result<String> {
        let log = self.kind == PlotKind::LogLog;
        let keep = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!log || (x > 0.0 && y > 0.0));
        let all: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(keep)
            .collect();
        let (Some(xa), Some(ya)) = (
            Axis::fit(all.iter().map(|p| p.0), log),
            Axis::fit(all.iter().map(|p| p.1), log),
        ) else {
            return Err(Error::InsufficientData("nothing to plot".into()));
        };
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |x: f64| LEFT + xa.unit(x) * pw;
        let py = |y: f64| TOP + (1.0 - ya.unit(y)) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
        );
        for c in &self.comments {
            let _ = writeln!(s, "<!-- {} -->", c.replace("--", "- -"));
        }
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        );
        let (x0, y0, x1, y1) = (LEFT, TOP + ph, LEFT + pw, TOP);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
        for (v, label) in xa.ticks() {
            let x = px(v);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                y0 + 4.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{}" text-anchor="middle">{label}</text>"#,
                y0 + 16.0
            );
        }
        for (v, label) in ya.ticks() {
            let y = py(v);
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
                x0 - 4.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#,
                x0 - 6.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );

        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<(f64, f64)> = series.points.iter().copied().filter(keep).collect();
            match self.kind {
                PlotKind::Scatter => {
                    for (x, y) in &pts {
                        let _ = writeln!(
                            s,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}" fill-opacity="0.6"/>"#,
                            px(*x),
                            py(*y)
                        );
                    }
                }
                PlotKind::Line | PlotKind::LogLog => {
                    if !pts.is_empty() {
                        let coords: Vec<String> = pts
                            .iter()
                            .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
                            .collect();
                        let _ = writeln!(
                            s,
                            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                            coords.join(" ")
                        );
                    }
                }
            }
            let ly = TOP + 14.0 * i as f64 + 6.0;
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="10" height="10" fill="{color}"/>"#,
                x1 + 10.0,
                ly - 8.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{ly}">{}</text>"#,
                x1 + 24.0,
                escape(&series.label)
            );
        }
        for (i, note) in self.annotations.iter().enumerate() {
            let y = TOP + 14.0 * (self.series.len() + 1 + i) as f64 + 6.0;
            let _ = writeln!(s, r#"<text x="{}" y="{y}">{}</text>"#, x1 + 10.0, escape(note));
        }
        s.push_str("</svg>\n");
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let svg = self.render()?;
        fs::write(path, svg).map_err(|e| Error::io(path, e))
    }
}

/// One curve per series of `metric` against the swept parameter.
pub fn sweep_plot(result: &SweepResult, metric: &str, kind: PlotKind) -> Result<Plot> {
    if result.rows.is_empty() {
        return Err(Error::InsufficientData("sweep result has no points".into()));
    }
    if !result.has_metric(metric) {
        return Err(Error::param(
            "metric",
            format!("`{metric}` is not produced by this sweep"),
        ));
    }
    let mut plot = Plot::new(&result.spec.name, &result.spec.sweep.param, metric, kind);
    plot.comments = header_comments(result);
    for label in result.series_labels() {
        plot.series.push(PlotSeries {
            label: if label.is_empty() {
                metric.to_string()
            } else {
                label.to_string()
            },
            points: result
                .series(label)
                .iter()
                .filter_map(|r| result.value(r, metric).map(|v| (r.x, v)))
                .collect(),
        });
    }
    Ok(plot)
}

pub fn emit_plot(result: &SweepResult, metric: &str, kind: PlotKind, path: &Path) -> Result<()> {
    sweep_plot(result, metric, kind)?.write(path)
}

/// Log-log CCDF of both vertex types with fitted slopes, fitting over `range`
/// or the default window.
pub fn degree_ccdf_plot(title: &str, report: &DegreeReport, range: Option<(u64, u64)>) -> Plot {
    let ccdfs: Vec<(String, Ccdf)> = VertexType::BOTH
        .iter()
        .map(|t| (format!("type {t}"), report.ccdf(*t)))
        .collect();
    let fits: Vec<Option<ExponentFit>> = ccdfs
        .iter()
        .map(|(_, c)| match range {
            Some((lo, hi)) => fit_tail_exponent(c, lo, hi).ok(),
            None => crate::analysis::fit_tail_exponent_default(c).ok(),
        })
        .collect();
    let curves: Vec<(&str, &Ccdf, Option<ExponentFit>)> =
        ccdfs.iter().zip(fits).map(|((l, c), f)| (l.as_str(), c, f)).collect();
    Plot::ccdf(title, &curves)
}
