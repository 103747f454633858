//! Self-contained SVG line plots. Output depends only on the data, so equal
//! inputs give byte-identical files.

use std::fmt::Write;

use anyhow::Result;
use ifoi_core::cases::{CaseId, CaseSpec, Method, SolveReport};
use ifoi_core::ifoi::IfoiTrace;
use ifoi_core::GridFunction;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

struct Series {
    label: String,
    color: String,
    points: Vec<(f64, f64)>,
    dashed: bool,
}

fn from_grid(label: impl Into<String>, color: impl Into<String>, g: &GridFunction) -> Series {
    Series {
        label: label.into(),
        color: color.into(),
        points: g.nodes().zip(g.values().iter().copied()).collect(),
        dashed: false,
    }
}

/// Blue at the first stage through red at the last.
fn graded_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (40.0 + 200.0 * t).round() as u8;
    let b = (220.0 - 180.0 * t).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

/// Forcing, one curve per stage coloured by cumulative order, and the final
/// solution.
pub fn evolution_plot(case: CaseId, trace: &IfoiTrace) -> String {
    let mut series = vec![Series {
        dashed: true,
        ..from_grid("forcing", "#555555", &trace.forcing)
    }];
    for (s, stage) in &trace.stages {
        series.push(from_grid(
            format!("S = {s:.3}"),
            graded_color(s / 2.0),
            stage,
        ));
    }
    series.push(Series {
        dashed: true,
        ..from_grid("solution", "#000000", trace.final_stage())
    });
    render(&format!("{case}: IFOI stage evolution"), &series)
}

/// Oracle, FDM and IFOI solutions overlaid.
pub fn comparison_plot(case: &CaseSpec, reports: &[SolveReport]) -> Result<String> {
    let oracle = case.oracle_grid(400)?;
    let mut series = vec![from_grid("oracle", "#000000", &oracle)];
    for r in reports {
        if let Some(sol) = &r.solution {
            let (label, color) = match r.method {
                Method::Fdm => ("FDM", "#1f77b4"),
                Method::Ifoi => ("IFOI", "#d62728"),
            };
            series.push(Series {
                dashed: true,
                ..from_grid(label, color, sol)
            });
        }
    }
    Ok(render(
        &format!("{}: solution comparison", case.id),
        &series,
    ))
}

fn bounds(series: &[Series]) -> (f64, f64) {
    let (lo, hi) = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
            (lo.min(y), hi.max(y))
        });
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn render(title: &str, series: &[Series]) -> String {
    let (ylo, yhi) = bounds(series);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x * pw;
    let sy = |y: f64| TOP + (yhi - y) / (yhi - ylo) * ph;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    );

    // Axes box, ticks and labels.
    let _ = writeln!(
        out,
        r##"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333333"/>"##
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let x = sx(t);
        let y = sy(ylo + t * (yhi - ylo));
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333333"/><text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{t:.1}</text>"##,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 18.0
        );
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="#333333"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3e}</text>"##,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            ylo + t * (yhi - ylo)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13" text-anchor="middle">x</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0
    );

    for s in series {
        let mut pts = String::new();
        for (i, &(x, y)) in s.points.iter().enumerate() {
            if i > 0 {
                pts.push(' ');
            }
            let _ = write!(pts, "{:.2},{:.2}", sx(x), sy(y));
        }
        let dash = if s.dashed {
            r#" stroke-dasharray="6 3""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{pts}"/>"#,
            s.color
        );
    }

    // Legend.
    let lx = WIDTH - RIGHT + 15.0;
    for (i, s) in series.iter().enumerate() {
        let y = TOP + 10.0 + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{}" stroke-width="2"/><text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11">{}</text>"#,
            lx + 20.0,
            s.color,
            lx + 26.0,
            y + 4.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
