//! Static SVG drawings of planar configurations.

use std::fmt::Write as _;

use crate::apollonius::{
    apollonius_pairs, compute_p, inscribed_sphere, line_through_centers, p_x_point, Configuration,
    Line,
};
use crate::cycles::Cycle;
use crate::document::ConfigDocument;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Extra elements drawn on top of a configuration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overlay {
    pub solutions: Vec<Cycle>,
    /// Drawn dashed.
    pub lines: Vec<(String, Line)>,
    pub points: Vec<(String, Vec<f64>)>,
    pub inscribed: Option<Cycle>,
}

impl Overlay {
    /// Apollonius solutions, first-level center lines, `P_X` and the
    /// inscribed sphere of a configuration.
    pub fn theorem(config: &Configuration, tol: &Tolerances) -> Result<Overlay> {
        let p = compute_p(config, tol)?;
        let point = p_x_point(&p, tol)?;
        let mut overlay = Overlay::default();
        for pair in apollonius_pairs(config, tol)? {
            let k = pair.omitted_index + 1;
            if let (Some(a), Some(b)) = (&pair.a.cycle, &pair.a_prime.cycle) {
                if let Ok(line) = line_through_centers(a, b, tol) {
                    overlay.lines.push((format!("A{k}A{k}'"), line));
                }
            }
            for s in [pair.a, pair.a_prime] {
                if let Some(c @ Cycle::Sphere { .. }) = s.cycle {
                    overlay.solutions.push(c);
                }
            }
        }
        overlay.inscribed = inscribed_sphere(config, tol).ok();
        overlay.points.push(("P".into(), point));
        Ok(overlay)
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: [f64; 2],
    max: [f64; 2],
}

impl Bounds {
    fn empty() -> Bounds {
        Bounds {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    fn add(&mut self, c: &[f64], r: f64) {
        for (k, x) in c.iter().take(2).enumerate() {
            self.min[k] = self.min[k].min(x - r);
            self.max[k] = self.max[k].max(x + r);
        }
    }

    fn add_cycle(&mut self, c: &Cycle) {
        match c {
            Cycle::Sphere { center, radius } => self.add(center, radius.abs()),
            Cycle::PointSphere { coords } => self.add(coords, 0.0),
            Cycle::Hyperplane { .. } => {}
        }
    }

    /// Square-ish box with a 10% margin; a unit box around the origin if
    /// nothing bounded was added.
    fn padded(self) -> Bounds {
        if !self.min[0].is_finite() {
            return Bounds {
                min: [-1.0, -1.0],
                max: [1.0, 1.0],
            };
        }
        let w = (self.max[0] - self.min[0]).max(1e-9);
        let h = (self.max[1] - self.min[1]).max(1e-9);
        let side = w.max(h);
        let (w, h) = (w.max(side * 0.25), h.max(side * 0.25));
        let cx = (self.min[0] + self.max[0]) / 2.0;
        let cy = (self.min[1] + self.max[1]) / 2.0;
        let (hw, hh) = (0.6 * w, 0.6 * h);
        Bounds {
            min: [cx - hw, cy - hh],
            max: [cx + hw, cy + hh],
        }
    }
}

/// Clips the infinite line `base + t dir` to the box.
fn clip(base: &[f64], dir: &[f64], b: &Bounds) -> Option<([f64; 2], [f64; 2])> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..2 {
        if dir[k].abs() < 1e-15 {
            if base[k] < b.min[k] || base[k] > b.max[k] {
                return None;
            }
            continue;
        }
        let a = (b.min[k] - base[k]) / dir[k];
        let c = (b.max[k] - base[k]) / dir[k];
        t0 = t0.max(a.min(c));
        t1 = t1.min(a.max(c));
    }
    if t0 >= t1 {
        return None;
    }
    let at = |t: f64| [base[0] + t * dir[0], base[1] + t * dir[1]];
    Some((at(t0), at(t1)))
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Canvas {
    out: String,
    stroke: f64,
}

impl Canvas {
    fn circle(&mut self, class: &str, c: &[f64], r: f64, extra: &str) {
        let _ = writeln!(
            self.out,
            r#"    <circle class="{class}" cx="{}" cy="{}" r="{}" fill="none" stroke-width="{}"{extra}/>"#,
            num(c[0]),
            num(-c[1]),
            num(r),
            num(self.stroke)
        );
    }

    fn dot(&mut self, class: &str, c: &[f64], label: Option<&str>) {
        let _ = writeln!(
            self.out,
            r#"    <circle class="{class}" cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(c[0]),
            num(-c[1]),
            num(self.stroke * 2.5)
        );
        if let Some(label) = label {
            let _ = writeln!(
                self.out,
                r#"    <text x="{}" y="{}" font-size="{}">{}</text>"#,
                num(c[0] + self.stroke * 4.0),
                num(-c[1] - self.stroke * 4.0),
                num(self.stroke * 12.0),
                escape(label)
            );
        }
    }

    fn segment(&mut self, class: &str, (p, q): ([f64; 2], [f64; 2]), extra: &str) {
        let _ = writeln!(
            self.out,
            r#"    <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"{extra}/>"#,
            num(p[0]),
            num(-p[1]),
            num(q[0]),
            num(-q[1]),
            num(self.stroke)
        );
    }
}

/// Renders a planar configuration document. Output depends only on the
/// inputs, so identical calls give identical bytes.
pub fn render_svg(doc: &ConfigDocument, overlay: &Overlay, width: u32) -> Result<String> {
    if doc.dimension != 2 {
        return Err(Error::UnsupportedDimension(doc.dimension));
    }
    let cycles = doc.to_cycles()?;
    let mut bounds = Bounds::empty();
    for c in cycles
        .iter()
        .chain(&overlay.solutions)
        .chain(&overlay.inscribed)
    {
        bounds.add_cycle(c);
    }
    for (_, p) in &overlay.points {
        bounds.add(p, 0.0);
    }
    let b = bounds.padded();
    let (w, h) = (b.max[0] - b.min[0], b.max[1] - b.min[1]);
    let width = width.max(1);
    let height = ((width as f64) * h / w).round().max(1.0) as u32;

    let mut canvas = Canvas {
        out: String::new(),
        stroke: w.max(h) / 400.0,
    };
    let _ = writeln!(
        canvas.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="{} {} {} {}">"#,
        num(b.min[0]),
        num(-b.max[1]),
        num(w),
        num(h)
    );
    if let Some(label) = &doc.label {
        let _ = writeln!(
            canvas.out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
            num(b.min[0] + canvas.stroke * 4.0),
            num(-b.max[1] + canvas.stroke * 14.0),
            num(canvas.stroke * 12.0),
            escape(label)
        );
    }

    canvas
        .out
        .push_str("  <g class=\"configuration\" stroke=\"black\">\n");
    for (i, c) in cycles.iter().enumerate() {
        let label = format!("X{}", i + 1);
        match c {
            Cycle::Sphere { center, radius } => {
                let class = if *radius > 0.0 {
                    "cycle positive"
                } else {
                    "cycle negative"
                };
                canvas.circle(class, center, radius.abs(), "");
                canvas.dot("center", center, Some(&label));
            }
            Cycle::PointSphere { coords } => canvas.dot("cycle point", coords, Some(&label)),
            Cycle::Hyperplane {
                unit_normal,
                offset,
                ..
            } => {
                let base = [unit_normal[0] * offset, unit_normal[1] * offset];
                let dir = [-unit_normal[1], unit_normal[0]];
                if let Some(seg) = clip(&base, &dir, &b) {
                    canvas.segment("cycle hyperplane", seg, "");
                }
            }
        }
    }
    canvas.out.push_str("  </g>\n");

    if overlay != &Overlay::default() {
        canvas
            .out
            .push_str("  <g class=\"overlay\" stroke=\"gray\">\n");
        for s in &overlay.solutions {
            if let Cycle::Sphere { center, radius } = s {
                canvas.circle("solution", center, radius.abs(), "");
            }
        }
        if let Some(Cycle::Sphere { center, radius }) = &overlay.inscribed {
            canvas.circle("inscribed", center, radius.abs(), r#" stroke="black""#);
        }
        let dash = format!(
            r#" stroke-dasharray="{} {}""#,
            num(canvas.stroke * 6.0),
            num(canvas.stroke * 4.0)
        );
        for (_, line) in &overlay.lines {
            if let Some(seg) = clip(&line.base, &line.direction, &b) {
                canvas.segment("theorem-line", seg, &dash);
            }
        }
        for (label, p) in &overlay.points {
            canvas.dot("point-px", p, Some(label));
        }
        canvas.out.push_str("  </g>\n");
    }
    canvas.out.push_str("</svg>\n");
    Ok(canvas.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(2.5), "2.5");
        assert_eq!(num(-1.25), "-1.25");
    }

    #[test]
    fn clipping() {
        let b = Bounds {
            min: [0.0, 0.0],
            max: [2.0, 1.0],
        };
        let (p, q) = clip(&[0.0, 0.5], &[1.0, 0.0], &b).unwrap();
        assert_eq!((p, q), ([0.0, 0.5], [2.0, 0.5]));
        assert!(clip(&[0.0, 5.0], &[1.0, 0.0], &b).is_none());
    }

    #[test]
    fn three_dimensions_rejected() {
        let doc = ConfigDocument {
            dimension: 3,
            cycles: vec![],
            label: None,
        };
        assert_eq!(
            render_svg(&doc, &Overlay::default(), 400),
            Err(Error::UnsupportedDimension(3))
        );
    }
}
