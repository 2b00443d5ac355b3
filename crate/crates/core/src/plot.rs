//! Self-contained SVG line charts of fidelity against noise probability.
//!
//! Output depends only on the rows passed in, and every coordinate is
//! printed with a fixed precision, so identical sweeps give identical bytes.

use std::fmt::Write as _;

use crate::channels::NoiseKind;
use crate::error::Result;
use crate::sweep::{run_sweep, SweepConfig, SweepRow};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

struct Frame {
    p_min: f64,
    p_max: f64,
    f_min: f64,
    f_max: f64,
}

impl Frame {
    fn x(&self, p: f64) -> f64 {
        let span = (self.p_max - self.p_min).max(f64::EPSILON);
        LEFT + (p - self.p_min) / span * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, f: f64) -> f64 {
        let span = (self.f_max - self.f_min).max(f64::EPSILON);
        HEIGHT - BOTTOM - (f - self.f_min) / span * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Groups rows by state label, keeping first-seen order.
fn series(rows: &[SweepRow]) -> Vec<(&str, Vec<(f64, f64)>)> {
    let mut out: Vec<(&str, Vec<(f64, f64)>)> = Vec::new();
    for row in rows {
        let point = (row.p, row.primary());
        match out.iter_mut().find(|(label, _)| *label == row.state_label) {
            Some((_, pts)) => pts.push(point),
            None => out.push((&row.state_label, vec![point])),
        }
    }
    out
}

/// One polyline per state, with axes, ticks and a legend.
pub fn render_svg(kind: NoiseKind, rows: &[SweepRow]) -> String {
    let curves = series(rows);
    let (p_min, p_max) = rows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.p), hi.max(r.p))
        });
    let lowest = rows.iter().map(SweepRow::primary).fold(1.0, f64::min);
    let frame = Frame {
        p_min: if p_min.is_finite() { p_min } else { 0.0 },
        p_max: if p_max.is_finite() { p_max } else { 1.0 },
        f_min: ((lowest.min(0.5) * 10.0).floor() / 10.0).max(0.0),
        f_max: 1.0,
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">Teleportation fidelity, {kind} noise</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0
    );

    let (x0, x1) = (frame.x(frame.p_min), frame.x(frame.p_max));
    let (y0, y1) = (frame.y(frame.f_min), frame.y(frame.f_max));
    for k in 0..=5 {
        let p = frame.p_min + (frame.p_max - frame.p_min) * k as f64 / 5.0;
        let x = frame.x(p);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="#e5e5e5"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{p:.2}</text>"#,
            y0 + 18.0
        );
    }
    let f_ticks = ((frame.f_max - frame.f_min) * 10.0).round() as usize;
    for k in 0..=f_ticks {
        let f = frame.f_min + k as f64 / 10.0;
        let y = frame.y(f);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#e5e5e5"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{f:.1}</text>"#,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">noise probability p</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">fidelity F</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (i, (label, pts)) in curves.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = pts
            .iter()
            .map(|&(p, f)| format!("{:.2},{:.2}", frame.x(p), frame.y(f)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        let ly = TOP + 10.0 + 22.0 * i as f64;
        let lx = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn curves_svg(config: &SweepConfig) -> Result<String> {
    Ok(render_svg(config.kind, &run_sweep(config)?))
}
