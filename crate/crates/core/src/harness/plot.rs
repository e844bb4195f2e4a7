//! SVG scatter plot of a record's final archive in raw objective space.
//!
//! The output is self-contained and byte-deterministic for a given record.
//! Every plotted value is also embedded as an XML comment so plots can be
//! diffed as text.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::indicator::ObjectivePair;

use super::record::{write_atomic, RunRecord};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const TICKS: usize = 5;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn covering(values: impl Iterator<Item = f64>) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
        Axis { lo: lo - pad, hi: hi + pad }
    }

    fn frac(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

/// Renders the archive of `record`; an empty archive is an error.
pub fn plot_front(record: &RunRecord) -> Result<String> {
    if record.archive.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let pts: Vec<ObjectivePair> = record.archive.iter().map(|e| e.y).collect();
    let all = || pts.iter().chain([&record.ideal, &record.nadir]);
    let xa = Axis::covering(all().map(|p| p.a));
    let ya = Axis::covering(all().map(|p| p.b));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + xa.frac(v) * plot_w;
    let sy = |v: f64| TOP + (1.0 - ya.frac(v)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        "<!-- record problem={} optimizer={} seed={} budget={} final_hv={} -->",
        record.problem, record.optimizer, record.seed, record.budget, record.final_hv
    );
    let _ = writeln!(s, "<!-- ideal {} {} -->", record.ideal.a, record.ideal.b);
    let _ = writeln!(s, "<!-- nadir {} {} -->", record.nadir.a, record.nadir.b);
    for p in &pts {
        let _ = writeln!(s, "<!-- point {} {} -->", p.a, p.b);
    }
    let _ = writeln!(
        s,
        "<style>.point{{fill:#1f77b4;fill-opacity:0.8}}.ideal{{fill:#d62728}}.nadir{{fill:none;stroke:#d62728;stroke-width:2}}text{{font-family:sans-serif;font-size:12px}}</style>"
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    let title = format!(
        "f{} {}/{}, D={}, instance {} ({}, seed {})",
        record.problem.pair_index,
        record.function_names.0,
        record.function_names.1,
        record.problem.dim,
        record.problem.instance,
        record.optimizer,
        record.seed
    );
    let _ = writeln!(s, r#"<text x="{}" y="28" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(&title));

    // frame and ticks
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let vx = xa.lo + t * (xa.hi - xa.lo);
        let px = LEFT + t * plot_w;
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, TOP + plot_h, TOP + plot_h + 5.0);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + plot_h + 20.0, fmt_tick(vx));
        let vy = ya.lo + t * (ya.hi - ya.lo);
        let py = TOP + (1.0 - t) * plot_h;
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, py + 4.0, fmt_tick(vy));
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">first objective: {}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0,
        escape(&record.function_names.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">second objective: {}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&record.function_names.1)
    );

    for p in &pts {
        let _ = writeln!(s, r#"<circle class="point" cx="{:.2}" cy="{:.2}" r="3"/>"#, sx(p.a), sy(p.b));
    }
    let (ix, iy) = (sx(record.ideal.a), sy(record.ideal.b));
    let _ = writeln!(s, r#"<rect class="ideal" x="{:.2}" y="{:.2}" width="8" height="8"><title>ideal</title></rect>"#, ix - 4.0, iy - 4.0);
    let (nx, ny) = (sx(record.nadir.a), sy(record.nadir.b));
    let _ = writeln!(
        s,
        r#"<path class="nadir" d="M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}"><title>nadir</title></path>"#,
        nx - 5.0,
        ny - 5.0,
        nx + 5.0,
        ny + 5.0,
        nx - 5.0,
        ny + 5.0,
        nx + 5.0,
        ny - 5.0
    );
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn write_plot(record: &RunRecord, path: &Path) -> Result<()> {
    let svg = plot_front(record)?;
    write_atomic(path, svg.as_bytes())
}
