//! SVG plots of result files: one panel per instance with axes, region
//! polygons, a legend and the witness scatter.

use std::fmt::Write;

use super::output::{InstanceResult, ResultFile};
use super::CliError;

const PANEL: f64 = 480.0;
const MARGIN: f64 = 48.0;
const LEGEND: f64 = 140.0;
/// Witness points drawn per panel; larger clouds are thinned evenly.
const MAX_WITNESSES: usize = 2000;

fn color(name: &str) -> &'static str {
    match name {
        "lhs" => "#1f77b4",
        "rhs" => "#d62728",
        "oracle" => "#2ca02c",
        _ => "#9467bd",
    }
}

/// Maps the complex plane (y up) to panel pixels.
struct Frame {
    cx: f64,
    cy: f64,
    half: f64,
    top: f64,
}

impl Frame {
    fn x(&self, re: f64) -> f64 {
        MARGIN + (re - self.cx + self.half) / (2.0 * self.half) * PANEL
    }

    fn y(&self, im: f64) -> f64 {
        self.top + MARGIN + (self.cy + self.half - im) / (2.0 * self.half) * PANEL
    }
}

fn bounds(inst: &InstanceResult) -> Option<(f64, f64, f64, f64)> {
    let pts = inst.regions.iter().flat_map(|r| r.vertices.iter()).chain(inst.witnesses.iter());
    pts.fold(None, |acc, [x, y]| {
        let (a, b, c, d) = acc.unwrap_or((*x, *x, *y, *y));
        Some((a.min(*x), b.max(*x), c.min(*y), d.max(*y)))
    })
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

fn panel(out: &mut String, inst: &InstanceResult, top: f64) {
    let (x0, x1, y0, y1) = bounds(inst).expect("panel has at least one region");
    let span = (x1 - x0).max(y1 - y0);
    let half = 0.5 * span * 1.15 + if span > 0.0 { 0.0 } else { 1.0 };
    let f = Frame { cx: 0.5 * (x0 + x1), cy: 0.5 * (y0 + y1), half, top };

    let _ = writeln!(out, r#"<g class="panel" data-label="{}">"#, escape(&inst.label));
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#999"/>"##,
        fmt(MARGIN),
        fmt(top + MARGIN)
    );
    // axes through the origin when it is in view
    let (lo, hi) = (f.cx - f.half, f.cx + f.half);
    if (lo..=hi).contains(&0.0) {
        let x = f.x(0.0);
        let _ = writeln!(out, r##"<line class="axis" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#555"/>"##, fmt(x), fmt(top + MARGIN), fmt(top + MARGIN + PANEL));
    }
    if (f.cy - f.half..=f.cy + f.half).contains(&0.0) {
        let y = f.y(0.0);
        let _ = writeln!(out, r##"<line class="axis" x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="#555"/>"##, fmt(y), fmt(MARGIN), fmt(MARGIN + PANEL));
    }
    for (t, anchor) in [(lo, "start"), (hi, "end")] {
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="{anchor}">{}</text>"#, fmt(f.x(t)), fmt(top + MARGIN + PANEL + 16.0), fmt(t));
    }
    for t in [f.cy - f.half, f.cy + f.half] {
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#, fmt(MARGIN - 4.0), fmt(f.y(t) + 4.0), fmt(t));
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="13">{}</text>"#, fmt(MARGIN), fmt(top + MARGIN - 10.0), escape(&inst.label));

    let step = inst.witnesses.len().div_ceil(MAX_WITNESSES).max(1);
    let _ = writeln!(out, r##"<g class="witnesses" fill="#444" fill-opacity="0.35">"##);
    for [x, y] in inst.witnesses.iter().step_by(step) {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="1.2"/>"#, fmt(f.x(*x)), fmt(f.y(*y)));
    }
    let _ = writeln!(out, "</g>");

    for r in &inst.regions {
        let c = color(&r.name);
        let raw: Vec<String> = r.vertices.iter().map(|[x, y]| format!("{x},{y}")).collect();
        let px: Vec<String> = r.vertices.iter().map(|[x, y]| format!("{},{}", fmt(f.x(*x)), fmt(f.y(*y)))).collect();
        let _ = writeln!(
            out,
            r#"<polygon class="region" data-region="{}" data-vertices="{}" points="{}" fill="{c}" fill-opacity="0.12" stroke="{c}" stroke-width="1.5"/>"#,
            escape(&r.name),
            raw.join(" "),
            px.join(" ")
        );
        let diam = r
            .vertices
            .iter()
            .flat_map(|a| r.vertices.iter().map(move |b| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()))
            .fold(0.0, f64::max);
        if diam <= 1e-9 * f.half {
            let [x, y] = r.vertices[0];
            let _ = writeln!(
                out,
                r#"<circle class="point" data-region="{}" data-point="{x},{y}" cx="{}" cy="{}" r="4" fill="{c}"/>"#,
                escape(&r.name),
                fmt(f.x(x)),
                fmt(f.y(y))
            );
        }
    }

    let lx = MARGIN + PANEL + 16.0;
    for (i, r) in inst.regions.iter().enumerate() {
        let y = top + MARGIN + 14.0 + 18.0 * i as f64;
        let _ = writeln!(out, r#"<rect x="{}" y="{}" width="12" height="12" fill="{}"/>"#, fmt(lx), fmt(y - 10.0), color(&r.name));
        let _ = writeln!(out, r#"<text class="legend" x="{}" y="{}" font-size="12">{}</text>"#, fmt(lx + 18.0), fmt(y), escape(&r.name));
    }
    if !inst.witnesses.is_empty() {
        let y = top + MARGIN + 14.0 + 18.0 * inst.regions.len() as f64;
        let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="3" fill="#444"/>"##, fmt(lx + 6.0), fmt(y - 4.0));
        let _ = writeln!(out, r#"<text class="legend" x="{}" y="{}" font-size="12">witnesses</text>"#, fmt(lx + 18.0), fmt(y));
    }
    let _ = writeln!(out, "</g>");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_svg(result: &ResultFile) -> Result<String, CliError> {
    let panels: Vec<&InstanceResult> = result.instances.iter().filter(|i| !i.regions.is_empty()).collect();
    if panels.is_empty() {
        return Err(CliError::Usage("nothing to plot: the result contains no regions".into()));
    }
    let height = panels.len() as f64 * (PANEL + 2.0 * MARGIN);
    let width = PANEL + 2.0 * MARGIN + LEGEND;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
        w = fmt(width),
        h = fmt(height)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, inst) in panels.iter().enumerate() {
        panel(&mut out, inst, i as f64 * (PANEL + 2.0 * MARGIN));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
