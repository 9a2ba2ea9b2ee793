//! Horizontal cross-sections of a polyhedron in upper half-space.
//!
//! At fixed boundary height `z` and hyperbolic height `t`, a sphere side
//! `|p − c|² = r²` cuts the plane in the circle of radius²
//! `r² − t² − (z − c₃)²` and a vertical plane side cuts it in a line.
//! Geometry stays exact; only the rendered numbers are decimals.

use std::fmt::Write as _;

use serde_json::{json, Value};

use hyperpoly::document::{Compiled, Shape, SpecDocument};
use hyperpoly::{ExactField, QSqrt2};

use crate::InputError;

const DIGITS: u32 = 12;

pub struct Circle {
    pub side: String,
    pub center: [QSqrt2; 2],
    pub radius_sq: QSqrt2,
}

/// `a·x + b·y = d`.
pub struct Line {
    pub side: String,
    pub a: QSqrt2,
    pub b: QSqrt2,
    pub d: QSqrt2,
}

pub struct Mark {
    pub at: [QSqrt2; 2],
    pub sides: Vec<String>,
}

pub struct Section {
    pub z: QSqrt2,
    pub t: QSqrt2,
    pub circles: Vec<Circle>,
    pub lines: Vec<Line>,
    /// Finite vertices lying in the section.
    pub vertices: Vec<Mark>,
}

fn dec(x: &QSqrt2) -> String {
    x.to_decimal(DIGITS)
}

impl Section {
    pub fn new(
        document: &SpecDocument,
        compiled: &Compiled,
        z: &QSqrt2,
        t: &QSqrt2,
    ) -> Result<Self, InputError> {
        if document.dimension != 4 {
            return Err(InputError("sections need a 4-dimensional polyhedron".into()));
        }
        let t2 = t * t;
        let mut circles = Vec::new();
        let mut lines = Vec::new();
        for h in &document.hyperplanes {
            match &h.shape {
                Shape::Sphere {
                    center, radius_sq, ..
                } => {
                    let dz = z - &center[2];
                    let r2 = radius_sq - &t2 - &dz * &dz;
                    if r2.gt_zero() {
                        circles.push(Circle {
                            side: h.name.clone(),
                            center: [center[0].clone(), center[1].clone()],
                            radius_sq: r2,
                        });
                    }
                }
                Shape::Plane { normal, offset, .. } if normal[2] == QSqrt2::from(0) => {
                    lines.push(Line {
                        side: h.name.clone(),
                        a: normal[0].clone(),
                        b: normal[1].clone(),
                        d: offset.clone(),
                    });
                }
                Shape::Plane { .. } => {}
            }
        }

        let lattice = compiled.polyhedron.face_lattice()?;
        let sides = compiled.polyhedron.sides();
        let mut vertices = Vec::new();
        for v in lattice.vertices.iter().filter(|v| !v.is_ideal()) {
            let x = v.point.x.coords();
            let w = &x[4] - &x[3];
            let Some(winv) = w.inv() else { continue };
            let p: Vec<QSqrt2> = x[..3].iter().map(|c| c * &winv).collect();
            let vt2 = -v.point.x.form(&v.point.x) * &winv * &winv;
            if &p[2] == z && vt2 == t2 {
                vertices.push(Mark {
                    at: [p[0].clone(), p[1].clone()],
                    sides: v.incident_sides.iter().map(|&i| sides[i].name.clone()).collect(),
                });
            }
        }
        Ok(Section {
            z: z.clone(),
            t: t.clone(),
            circles,
            lines,
            vertices,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z": dec(&self.z),
            "t": dec(&self.t),
            "circles": self.circles.iter().map(|c| json!({
                "side": c.side,
                "center": [dec(&c.center[0]), dec(&c.center[1])],
                "radius": c.radius_sq.sqrt_decimal(DIGITS),
            })).collect::<Vec<_>>(),
            "lines": self.lines.iter().map(|l| json!({
                "side": l.side,
                "normal": [dec(&l.a), dec(&l.b)],
                "offset": dec(&l.d),
            })).collect::<Vec<_>>(),
            "vertex_count": self.vertices.len(),
            "vertices": self.vertices.iter().map(|m| json!({
                "at": [dec(&m.at[0]), dec(&m.at[1])],
                "sides": m.sides,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "section z = {}, t = {}", dec(&self.z), dec(&self.t));
        for c in &self.circles {
            let _ = writeln!(
                s,
                "  circle {:<6} center ({}, {}) radius {}",
                c.side,
                dec(&c.center[0]),
                dec(&c.center[1]),
                c.radius_sq.sqrt_decimal(DIGITS).unwrap_or_default()
            );
        }
        for l in &self.lines {
            let _ = writeln!(
                s,
                "  line   {:<6} {}·x + {}·y = {}",
                l.side,
                dec(&l.a),
                dec(&l.b),
                dec(&l.d)
            );
        }
        let _ = writeln!(s, "  {} finite vertices in the section", self.vertices.len());
        for m in &self.vertices {
            let _ = writeln!(
                s,
                "    ({}, {}) on {}",
                dec(&m.at[0]),
                dec(&m.at[1]),
                m.sides.join(", ")
            );
        }
        s
    }

    pub fn to_svg(&self) -> String {
        let f = QSqrt2::to_f64;
        let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
        let mut grow = |x: f64, y: f64, r: f64| {
            lo[0] = lo[0].min(x - r);
            lo[1] = lo[1].min(y - r);
            hi[0] = hi[0].max(x + r);
            hi[1] = hi[1].max(y + r);
        };
        for c in &self.circles {
            grow(f(&c.center[0]), f(&c.center[1]), f(&c.radius_sq).sqrt());
        }
        for m in &self.vertices {
            grow(f(&m.at[0]), f(&m.at[1]), 0.0);
        }
        if lo[0] > hi[0] {
            (lo, hi) = ([-1.0; 2], [1.0; 2]);
        }
        let pad = 0.25;
        let (x0, y0) = (lo[0] - pad, lo[1] - pad);
        let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
        let stroke = w.max(h) / 400.0;

        let mut s = String::new();
        // y grows upward in the model, downward in SVG
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {} {w} {h}" width="600" height="{}">"#,
            -(y0 + h),
            (600.0 * h / w).round()
        );
        let _ = writeln!(s, r#"<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{stroke}">"#);
        for c in &self.circles {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}"><title>{}</title></circle>"#,
                f(&c.center[0]),
                f(&c.center[1]),
                f(&c.radius_sq).sqrt(),
                c.side
            );
        }
        for l in &self.lines {
            let (a, b, d) = (f(&l.a), f(&l.b), f(&l.d));
            let (p, q) = if b.abs() > a.abs() {
                let y = |x: f64| (d - a * x) / b;
                ((x0, y(x0)), (x0 + w, y(x0 + w)))
            } else {
                let x = |y: f64| (d - b * y) / a;
                ((x(y0), y0), (x(y0 + h), y0 + h))
            };
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-dasharray="{}"><title>{}</title></line>"#,
                p.0,
                p.1,
                q.0,
                q.1,
                4.0 * stroke,
                l.side
            );
        }
        for m in &self.vertices {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}" fill="red" stroke="none"><title>{}</title></circle>"#,
                f(&m.at[0]),
                f(&m.at[1]),
                3.0 * stroke,
                m.sides.join(" ")
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}
