//! CSV, SVG and manifest writers. All output is built in memory and written
//! once per file.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use pulseforge::analysis::{Fwhm, TableCell};
use serde::Serialize;

/// `path` with `suffix` appended to its file name (`out` → `out.csv`).
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

pub fn sweep_csv(values: &[f64], populations: &[f64]) -> String {
    let mut out = String::from("error,population\n");
    for (x, p) in values.iter().zip(populations) {
        writeln!(out, "{x},{p}").unwrap();
    }
    out
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn table_csv(cells: &[TableCell]) -> String {
    let mut out = String::from("scheme,N,computed,paper,abs_dev,rel_dev\n");
    for c in cells {
        let computed = match c.fwhm {
            Fwhm::Width(w) => w.to_string(),
            Fwhm::Absent => "absent".into(),
            Fwhm::Degenerate { .. } => "degenerate".into(),
        };
        writeln!(out, "{},{},{},{},{},{}", c.scheme, c.n, computed, c.reference, opt(c.abs_dev()), opt(c.rel_dev()))
            .unwrap();
    }
    out
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line chart of population against error, one curve per labelled series.
pub fn sweep_svg(x_label: &str, y_label: &str, series: &[(String, Vec<f64>, Vec<f64>)]) -> String {
    let (w, h) = (640.0, 420.0);
    let (left, right, top, bottom) = (70.0, 20.0, 20.0, 55.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let xs = series.iter().flat_map(|s| s.1.iter().copied());
    let (mut x0, mut x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !(x1 > x0) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + (1.0 - y) * ph;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    for k in 0..=4 {
        let fx = x0 + (x1 - x0) * k as f64 / 4.0;
        let px = sx(fx);
        let base = top + ph;
        writeln!(s, r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, base + 5.0).unwrap();
        writeln!(s, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{fx:.3}</text>"#, base + 19.0).unwrap();
        let fy = k as f64 / 4.0;
        let py = sy(fy);
        writeln!(s, r#"<line x1="{:.2}" y1="{py:.2}" x2="{left}" y2="{py:.2}" stroke="black"/>"#, left - 5.0).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{fy:.2}</text>"#, left - 8.0, py + 4.0).unwrap();
    }
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#, left + pw / 2.0, h - 12.0)
        .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0
    )
    .unwrap();
    for (i, (label, xv, yv)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = xv.iter().zip(yv).map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y))).collect();
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, points.join(" "))
            .unwrap();
        let ly = top + 16.0 + 16.0 * i as f64;
        let lx = left + pw - 90.0;
        writeln!(
            s,
            r#"<line x1="{lx}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
            ly - 4.0,
            lx + 20.0,
            ly - 4.0
        )
        .unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{ly:.2}">{label}</text>"#, lx + 26.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegratorEcho {
    pub steps_per_t: usize,
    pub unitarity_tolerance: f64,
    pub steps_overridden: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub version: &'static str,
    pub integrator: IntegratorEcho,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// Writes every file after all content is ready.
pub fn write_all(files: &[(PathBuf, String)]) -> io::Result<()> {
    for (path, content) in files {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, content)?;
    }
    Ok(())
}
