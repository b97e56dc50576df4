//! Minimal SVG line plot for `figure`.

use std::fmt::Write;

use yamabe_flag::FibrationFamily;

use crate::FigureData;

const W: f64 = 720.0;
const H: f64 = 440.0;
const PAD: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        PAD + (t - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn y(&self, v: f64) -> f64 {
        H - PAD - v / self.y1 * (H - 2.0 * PAD)
    }

    fn inside(&self, v: f64) -> bool {
        v.is_finite() && (0.0..=self.y1).contains(&v)
    }
}

/// Polylines for the in-range runs of `(t, v)`.
fn polylines(s: &mut String, f: &Frame, t: &[f64], v: &[f64], style: &str) {
    let mut run: Vec<String> = Vec::new();
    let flush = |run: &mut Vec<String>, s: &mut String| {
        if run.len() > 1 {
            let _ = writeln!(s, r#"<polyline fill="none" {style} points="{}"/>"#, run.join(" "));
        }
        run.clear();
    };
    for (&a, &b) in t.iter().zip(v) {
        if f.inside(b) {
            run.push(format!("{:.2},{:.2}", f.x(a), f.y(b)));
        } else {
            flush(&mut run, s);
        }
    }
    flush(&mut run, s);
}

pub fn render(family: FibrationFamily, d: &FigureData) -> String {
    let x0 = d.t.first().copied().unwrap_or(0.0);
    let x1 = d.t.last().copied().unwrap_or(1.0);
    let top = d
        .constants
        .iter()
        .map(|c| c.1)
        .chain(d.scal.iter().copied())
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let f = Frame { x0, x1, y1: top * 1.05 };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, family.total_id());
    // Axes.
    let (bx, by) = (f.x(x0), f.y(0.0));
    let _ = writeln!(s, r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{:.2}" y2="{by:.2}" stroke="black"/>"#, f.x(x1));
    let _ = writeln!(s, r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{bx:.2}" y2="{:.2}" stroke="black"/>"#, f.y(f.y1));
    for k in 0..=4 {
        let t = x0 + (x1 - x0) * k as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t:.3}</text>"#, f.x(t), by + 16.0);
        let v = f.y1 * k as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.2}</text>"#, bx - 6.0, f.y(v) + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#, W / 2.0, H - 12.0);
    for (label, v) in &d.constants {
        if f.inside(*v) {
            let y = f.y(*v);
            let _ = writeln!(
                s,
                r#"<line x1="{bx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="steelblue" stroke-width="1"/>"#,
                f.x(x1)
            );
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" fill="steelblue">{label}</text>"#, f.x(x1) + 4.0, y + 4.0);
        }
    }
    for (_, v) in &d.curves {
        polylines(&mut s, &f, &d.t, v, r#"stroke="seagreen" stroke-width="1.2""#);
    }
    polylines(&mut s, &f, &d.t, &d.scal, r#"stroke="firebrick" stroke-width="1.8""#);
    for i in &d.instants {
        let x = f.x(i.t);
        let _ = writeln!(
            s,
            r#"<line class="instant" x1="{x:.2}" y1="{by:.2}" x2="{x:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            f.y(f.y1)
        );
    }
    s.push_str("</svg>\n");
    s
}
