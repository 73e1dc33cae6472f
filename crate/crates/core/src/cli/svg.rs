//! Standalone SVG line plots of sweep results.

use std::fmt::Write as _;

use super::table::format_sig;
use crate::mediadb::MediumDatabase;
use crate::sweep::{SweepAxis, SweepResult};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;

/// Series colors, assigned by medium position in the request.
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn axis_scale(axis: SweepAxis) -> (f64, &'static str) {
    match axis {
        SweepAxis::Frequency => (1e-12, "Frequency (THz)"),
        SweepAxis::Distance => (1e3, "Distance d (mm)"),
        SweepAxis::BeamWidth => (1.0, "Gaussian beam width (rad)"),
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Tick positions covering `[lo, hi]` with a 1-2-5 step.
fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| span / s <= target as f64)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Renders total loss against the sweep axis, one polyline per medium.
pub fn render(result: &SweepResult, db: &MediumDatabase, title: &str, digits: usize) -> String {
    let (scale, x_label) = axis_scale(result.request.axis);
    let xs: Vec<f64> = result.request.grid.iter().map(|v| v * scale).collect();
    let (x_lo, x_hi) = (xs[0], xs[xs.len() - 1]);
    let (mut y_lo, mut y_hi) = result
        .rows
        .iter()
        .map(|r| r.loss.total_db)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    if !(y_hi > y_lo) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo);
    let (y_lo, y_hi) = (y_lo - pad, y_hi + pad);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;
    let label = |v: f64| format_sig(v, digits.min(6));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600" font-family="sans-serif" font-size="13">
<rect x="0" y="0" width="800" height="600" fill="white"/>
<text x="400" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        escape(title)
    );

    let _ = writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##);
    let x_ticks = ticks(x_lo, x_hi, 8);
    let y_ticks = ticks(y_lo, y_hi, 8);
    for &t in &x_ticks {
        let _ = writeln!(s, r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#, px(t), TOP, TOP + plot_h);
    }
    for &t in &y_ticks {
        let _ = writeln!(s, r#"<line x1="{1:.2}" y1="{0:.2}" x2="{2:.2}" y2="{0:.2}"/>"#, py(t), LEFT, LEFT + plot_w);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    for &t in &x_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(t),
            TOP + plot_h + 20.0,
            label(t)
        );
    }
    for &t in &y_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            py(t) + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 22.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="22" y="{0:.2}" text-anchor="middle" transform="rotate(-90 22 {0:.2})">Total path loss (dB)</text>"#,
        TOP + plot_h / 2.0
    );

    for (i, id) in result.request.medium_ids.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = result
            .rows
            .iter()
            .filter(|r| &r.medium == id)
            .map(|r| format!("{:.2},{:.2}", px(r.axis_value * scale), py(r.loss.total_db)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        let name = db.get_medium(id).map(|m| m.display_name.as_str()).unwrap_or(id);
        let ly = TOP + 20.0 + 20.0 * i as f64;
        let lx = LEFT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="3"/>"#,
            lx + 25.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 32.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    s
}
