//! SVG output for evaluated scripts.
//!
//! Model coordinates map to the view box `[−1.1, 1.1]²` with the y axis
//! flipped; every number is written with six decimals, so the same report
//! always renders to the same bytes.

use std::fmt::Write;

use num_complex::Complex64;
use thiserror::Error;

use super::ast::Model;
use super::eval::{Report, Value};
use crate::euclid::{Circle, Line};
use crate::inversive::Cline;
use crate::klein::{klein_to_poincare, poincare_to_klein};
use crate::numerics::Tolerances;
use crate::poincare::{classify_cycle, HLine};
use crate::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("no binding named `{0}`")]
    UnknownName(String),
}

const VIEW: f64 = 1.1;
const POINT_RADIUS: f64 = 0.012;

const STYLE: &str = "path{fill:none;stroke:#1f3a5f;stroke-width:0.006}\
.absolute{stroke:#000;stroke-width:0.008}\
.hline{stroke:#b03a2e}\
.h_circle,.hcircle{stroke:#1e8449}\
.horocycle{stroke:#7d3c98}\
.equidistant{stroke:#b9770e}\
.point{fill:#000}\
.label{font:0.06px sans-serif;fill:#333}";

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Model point to view coordinates.
fn xy(z: Point) -> (String, String) {
    (num(z.re), num(-z.im))
}

fn circle_path(c: &Circle) -> String {
    let r = num(c.radius);
    let (x0, y) = xy(c.center + c.radius);
    let (x1, _) = xy(c.center - c.radius);
    format!("M {x0} {y} A {r} {r} 0 1 0 {x1} {y} A {r} {r} 0 1 0 {x0} {y} Z")
}

fn segment_path(a: Point, b: Point) -> String {
    let ((ax, ay), (bx, by)) = (xy(a), xy(b));
    format!("M {ax} {ay} L {bx} {by}")
}

/// The part of `l` inside the view box, if any.
fn clip_line(l: &Line) -> Option<(Point, Point)> {
    let (p, d) = (l.anchor(), l.direction());
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (start, step) in [(p.re, d.re), (p.im, d.im)] {
        if step.abs() < 1e-15 {
            if start.abs() > VIEW {
                return None;
            }
            continue;
        }
        let (a, b) = ((-VIEW - start) / step, (VIEW - start) / step);
        t0 = t0.max(a.min(b));
        t1 = t1.min(a.max(b));
    }
    (t0 < t1).then(|| (p + d * t0, p + d * t1))
}

fn hline_path(l: &HLine, model: Model) -> String {
    match (&l.carrier, model) {
        (Cline::Circle(c), Model::Poincare) => {
            // In view coordinates (y down) sweep-flag 1 runs toward increasing angle.
            let flip = |z: Complex64| Complex64::new(z.re, -z.im);
            let (a, b, m) = (flip(l.ideal_a), flip(l.ideal_b), flip(c.center));
            let cross = ((a - m).conj() * (b - m)).im;
            let sweep = if cross > 0.0 { 1 } else { 0 };
            let r = num(c.radius);
            let ((ax, ay), (bx, by)) = (xy(l.ideal_a), xy(l.ideal_b));
            format!("M {ax} {ay} A {r} {r} 0 0 {sweep} {bx} {by}")
        }
        _ => segment_path(l.ideal_a, l.ideal_b),
    }
}

fn element(out: &mut String, name: &str, value: &Value, model: Model, tol: &Tolerances) {
    let path = |out: &mut String, class: &str, d: String| {
        let _ = writeln!(out, "<path class=\"{class}\" data-name=\"{name}\" d=\"{d}\"/>");
    };
    let point = |out: &mut String, z: Point| {
        let (x, y) = xy(z);
        let (lx, ly) = xy(z + Complex64::new(0.02, 0.02));
        let _ = writeln!(
            out,
            "<circle class=\"point\" data-name=\"{name}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>",
            num(POINT_RADIUS)
        );
        let _ = writeln!(out, "<text class=\"label\" x=\"{lx}\" y=\"{ly}\">{name}</text>");
    };
    let round = |out: &mut String, c: &Circle| {
        let class = match model {
            Model::Poincare => classify_cycle(c, tol).as_str(),
            Model::Klein => "circle",
        };
        path(out, class, circle_path(c));
    };
    match value {
        Value::Point(z) => point(out, *z),
        Value::HPoint(p) => point(
            out,
            match model {
                Model::Poincare => p.z(),
                Model::Klein => poincare_to_klein(*p).z(),
            },
        ),
        Value::KPoint(k) => point(
            out,
            match model {
                Model::Poincare => klein_to_poincare(*k).z(),
                Model::Klein => k.z(),
            },
        ),
        Value::Line(l) | Value::Cline(Cline::Line(l)) => {
            if let Some((a, b)) = clip_line(l) {
                path(out, "line", segment_path(a, b));
            }
        }
        Value::Circle(c) | Value::Cline(Cline::Circle(c)) => round(out, c),
        Value::HLine(l) => path(out, "hline", hline_path(l, model)),
        // Klein-model h-circles are ellipses and are not drawn.
        Value::HCircle(c) if model == Model::Poincare => path(out, "hcircle", circle_path(&c.euclid)),
        Value::HCircle(_) | Value::SPoint(_) | Value::Bolyai(_) | Value::Number(_) | Value::Label(_) => {}
    }
}

/// Renders the selected bindings (all bindings when `selection` is empty)
/// over the absolute.
pub fn render_svg(
    report: &Report,
    selection: &[String],
    model: Model,
    width: u32,
) -> Result<String, RenderError> {
    let tol = Tolerances::default();
    let chosen: Vec<(&str, &Value)> = if selection.is_empty() {
        report.bindings().iter().map(|(n, v)| (n.as_str(), v)).collect()
    } else {
        selection
            .iter()
            .map(|n| {
                report
                    .get(n)
                    .map(|v| (n.as_str(), v))
                    .ok_or_else(|| RenderError::UnknownName(n.clone()))
            })
            .collect::<Result<_, _>>()?
    };
    let corner = num(-VIEW);
    let side = num(2.0 * VIEW);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{width}\" viewBox=\"{corner} {corner} {side} {side}\">"
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let absolute = Circle { center: Complex64::new(0.0, 0.0), radius: 1.0 };
    let _ = writeln!(out, "<path class=\"absolute\" d=\"{}\"/>", circle_path(&absolute));
    for (name, value) in chosen {
        element(&mut out, name, value, model, &tol);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
