//! Hand-written SVG line plots on a fixed 800×600 canvas.

use std::fmt::Write;

use crate::error::{CliError, Result};
use crate::output::Meta;
use crate::table::{PlotSpec, Table};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 630.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 540.0;
const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Splits the table into labelled series, dropping undefined points.
pub fn collect_series(table: &Table, plot: &PlotSpec) -> Result<Vec<Series>> {
    let col = |name: &str| table.column(name).ok_or(CliError::Plot("plot refers to a missing column"));
    let x = col(&plot.x)?;
    let groups: Vec<(Option<f64>, Vec<usize>)> = match &plot.group_by {
        None => vec![(None, (0..table.rows.len()).collect())],
        Some(g) => {
            let keys = col(g)?;
            let mut out: Vec<(Option<f64>, Vec<usize>)> = Vec::new();
            for (i, k) in keys.iter().enumerate() {
                match out.iter_mut().find(|(key, _)| key.map(f64::to_bits) == Some(k.to_bits())) {
                    Some((_, rows)) => rows.push(i),
                    None => out.push((Some(*k), vec![i])),
                }
            }
            out
        }
    };
    let mut series = Vec::new();
    for name in &plot.ys {
        let y = col(name)?;
        for (key, rows) in &groups {
            let points: Vec<(f64, f64)> =
                rows.iter().map(|&i| (x[i], y[i])).filter(|(a, b)| a.is_finite() && b.is_finite()).collect();
            if points.is_empty() {
                continue;
            }
            let label = match (key, &plot.group_by) {
                (Some(k), Some(g)) => format!("{name} {g}={}", trim(*k)),
                _ => name.clone(),
            };
            series.push(Series { label, points });
        }
    }
    Ok(series)
}

fn trim(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_owned()
}

/// Evenly spaced "nice" tick values covering [lo, hi].
pub fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo > 1e-12 * hi.abs().max(lo.abs()).max(1e-300) {
        let pad = 0.02 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let half = 0.5 * lo.abs().max(1.0);
        (lo - half, hi + half)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders one plot of `table`. Byte-identical for identical inputs.
pub fn emit_svg(meta: &Meta, table: &Table, plot: &PlotSpec) -> Result<String> {
    if table.is_empty() {
        return Err(CliError::Plot("empty table"));
    }
    let series = collect_series(table, plot)?;
    if series.is_empty() {
        return Err(CliError::Plot("no finite points to draw"));
    }
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x_lo, x_hi) = range(all().map(|p| p.0));
    let (y_lo, y_hi) = range(all().map(|p| p.1));
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (RIGHT - LEFT);
    let sy = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);

    let mut s = String::new();
    s.push_str("<!--\n");
    for (k, v) in meta.iter().chain(&table.meta) {
        let _ = writeln!(s, "{k}: {}", v.replace("--", "- -"));
    }
    let _ = writeln!(s, "table: {}\nplot: {}\n-->", table.name, plot.name);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#, (LEFT + RIGHT) / 2.0, escape(&plot.title));
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );

    let (xt, xd) = ticks(x_lo, x_hi);
    for t in xt {
        let x = sx(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{BOTTOM}" x2="{x:.2}" y2="{}" stroke="black"/>"#, BOTTOM + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{t:.xd$}</text>"#, BOTTOM + 20.0);
    }
    let (yt, yd) = ticks(y_lo, y_hi);
    for t in yt {
        let y = sy(t);
        let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{t:.yd$}</text>"#, LEFT - 8.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (LEFT + RIGHT) / 2.0, BOTTOM + 45.0, escape(&plot.x));

    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, RIGHT + 15.0, RIGHT + 40.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, RIGHT + 45.0, ly + 4.0, escape(&ser.label));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
