use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;
use std::fmt;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Serialize;

use super::ast::{Arg, BinOp, Binding, Directive, Expr, Model, Script, StmtKind};
use super::registry::BOLYAI_PARTS;
use crate::error::GeoError;
use crate::euclid::{
    bisector_foot, centroid, circumcenter, foot_point, incenter, orthocenter, reflect_line,
    same_side, signed_angle, tangency_classify, tangent_length, Circle, Line, Triangle,
};
use crate::inversive::{
    cline_through, clines_perpendicular, inscribed_check, intersect_clines, invert_cline,
    invert_point, ptolemy_residual, real_cross_ratio, Cline, ExtPoint, InversionCircle,
};
use crate::klein::{klein_dist, klein_to_poincare, poincare_to_klein, bolyai_construct, BolyaiConstruction, KPoint};
use crate::moebius::{complex_cross_ratio, three_point_apply};
use crate::numerics::{plane_metric, PlaneMetric, Tolerances};
use crate::poincare::{
    angle_of_parallelism, asymptotic_parallels, classify_cycle, conformal_factor, equidistant_axis,
    equidistant_distance, h_angle, h_circle_realize, h_circumference, h_defect, h_dist,
    h_dist_from_center, h_dist_to_line, h_foot, h_intersection, h_line_through, h_perpendicular,
    h_pythagoras_residual, h_reflect, ideal_triangle_incircle, parallelism_distance,
    shared_ideal_residual, HCircle, HLine, HPoint,
};
use crate::spherical::{
    central_project, great_circle_image, s_angle, s_dist, s_excess, s_midpoint,
    s_pythagoras_residual, sphere_to_plane, stereo_conformal_factor, stereographic_to_sphere,
    GreatCircle, SPoint,
};
use crate::Point;

/// A bound value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
pub enum Value {
    Point(Complex64),
    HPoint(HPoint),
    KPoint(KPoint),
    SPoint(SPoint),
    Line(Line),
    Circle(Circle),
    Cline(Cline),
    HLine(HLine),
    HCircle(HCircle),
    Bolyai(Box<BolyaiConstruction>),
    Number(f64),
    Label(String),
}

fn pt(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    write!(f, "({}, {})", z.re, z.im)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(z) => {
                f.write_str("point ")?;
                pt(f, *z)
            }
            Value::HPoint(p) => {
                f.write_str("hpoint ")?;
                pt(f, p.z())
            }
            Value::KPoint(k) => {
                f.write_str("kpoint ")?;
                pt(f, k.z())
            }
            Value::SPoint(s) => {
                let v = s.v();
                write!(f, "spoint ({}, {}, {})", v.x, v.y, v.z)
            }
            Value::Line(l) => {
                f.write_str("line through ")?;
                pt(f, l.anchor())?;
                f.write_str(" direction ")?;
                pt(f, l.direction())
            }
            Value::Circle(c) | Value::Cline(Cline::Circle(c)) => {
                f.write_str("circle center ")?;
                pt(f, c.center)?;
                write!(f, " radius {}", c.radius)
            }
            Value::Cline(Cline::Line(l)) => write!(f, "{}", Value::Line(*l)),
            Value::HLine(l) => {
                f.write_str("hline ideal ")?;
                pt(f, l.ideal_a)?;
                f.write_str(" to ")?;
                pt(f, l.ideal_b)
            }
            Value::HCircle(c) => {
                f.write_str("hcircle center ")?;
                pt(f, c.hcenter.z())?;
                write!(f, " h-radius {}", c.hradius)
            }
            Value::Bolyai(b) => {
                f.write_str("bolyai Q ")?;
                pt(f, b.q.z())?;
                f.write_str(" R ")?;
                pt(f, b.r.z())
            }
            Value::Number(x) => write!(f, "{x}"),
            Value::Label(s) => write!(f, "\"{s}\""),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Label(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Number(x) => write!(f, "{x}"),
            Scalar::Label(s) => write!(f, "\"{s}\""),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Bound {
        name: String,
        value: Value,
    },
    Assertion {
        passed: bool,
        lhs: Scalar,
        rhs: Scalar,
        /// `|lhs − rhs|` for numbers.
        delta: Option<f64>,
        tol: f64,
    },
    Directive,
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub line: usize,
    pub source: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderRequest {
    pub path: String,
    pub width: u32,
    pub model: Model,
    /// Names bound when the request was made, in binding order.
    pub selection: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    AssertionFailure,
    GeometricError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::AssertionFailure => 2,
            Status::GeometricError => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub entries: Vec<Entry>,
    pub renders: Vec<RenderRequest>,
    /// Model in effect at the end of the script.
    pub model: Model,
    #[serde(skip)]
    bindings: Vec<(String, Value)>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Report {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.index.get(name).map(|&i| &self.bindings[i].1)
    }

    /// All bindings in the order they were made.
    pub fn bindings(&self) -> &[(String, Value)] {
        &self.bindings
    }

    pub fn assertions(&self) -> (usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        for e in &self.entries {
            if let Outcome::Assertion { passed, .. } = e.outcome {
                if passed {
                    pass += 1;
                } else {
                    fail += 1;
                }
            }
        }
        (pass, fail)
    }

    pub fn errors(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Error { .. }))
            .count()
    }

    fn bind(&mut self, name: String, value: Value) {
        self.index.insert(name.clone(), self.bindings.len());
        self.bindings.push((name, value));
    }
}

/// Human-readable report, one line per statement plus a summary.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{:>4}  ", e.line)?;
            match &e.outcome {
                Outcome::Bound { name, value } => writeln!(f, "{name} = {value}")?,
                Outcome::Assertion { passed, lhs, rhs, delta, tol } => {
                    let verdict = if *passed { "PASS" } else { "FAIL" };
                    write!(f, "{verdict}  {}  [{lhs} vs {rhs}", e.source)?;
                    if let Some(d) = delta {
                        write!(f, ", delta {d:e}, tol {tol:e}")?;
                    }
                    writeln!(f, "]")?;
                }
                Outcome::Directive => writeln!(f, "{}", e.source)?,
                Outcome::Error { message } => writeln!(f, "ERROR  {}: {message}", e.source)?,
            }
        }
        let (pass, fail) = self.assertions();
        writeln!(
            f,
            "{} statements, {} assertions ({pass} passed, {fail} failed), {} errors: {}",
            self.entries.len(),
            pass + fail,
            self.errors(),
            match self.status {
                Status::Pass => "pass",
                Status::AssertionFailure => "assertion failure",
                Status::GeometricError => "geometric error",
            }
        )
    }
}

type EvalResult<T> = Result<T, String>;

fn geo(e: GeoError) -> String {
    e.to_string()
}

const DEFAULT_WIDTH: u32 = 600;

/// Runs the statements in order. Failures stay local to their statement;
/// later statements that use a failed binding fail as well.
pub fn evaluate(script: &Script, tol: &Tolerances) -> Report {
    let mut tol = *tol;
    let mut report = Report {
        status: Status::Pass,
        entries: Vec::new(),
        renders: Vec::new(),
        model: Model::Poincare,
        bindings: Vec::new(),
        index: HashMap::new(),
    };
    let mut failed: HashSet<String> = HashSet::new();

    for stmt in &script.statements {
        let outcome = match &stmt.kind {
            StmtKind::Binding(b) => {
                let result = match b.args.iter().find_map(|a| match a {
                    Arg::Name(n) if failed.contains(n) => Some(n),
                    _ => None,
                }) {
                    Some(n) => Err(format!("depends on `{n}`, which failed")),
                    None => eval_binding(b, &report, &tol),
                };
                match result {
                    Ok(value) => {
                        if let Value::Bolyai(c) = &value {
                            for (name, v) in bolyai_parts(&b.name, c) {
                                report.bind(name, v);
                            }
                        }
                        report.bind(b.name.clone(), value.clone());
                        Outcome::Bound { name: b.name.clone(), value }
                    }
                    Err(message) => {
                        failed.insert(b.name.clone());
                        if b.op == "bolyai.construct" {
                            for (suffix, _) in BOLYAI_PARTS {
                                failed.insert(format!("{}.{suffix}", b.name));
                            }
                        }
                        Outcome::Error { message }
                    }
                }
            }
            StmtKind::Assert { lhs, rhs, tol: eps } => {
                match (eval_expr(lhs, &report, &failed), eval_expr(rhs, &report, &failed)) {
                    (Ok(l), Ok(r)) => {
                        let (passed, delta) = match (&l, &r) {
                            (Scalar::Number(a), Scalar::Number(b)) => {
                                let d = (a - b).abs();
                                (d <= *eps, Some(d))
                            }
                            (Scalar::Label(a), Scalar::Label(b)) => (a == b, None),
                            _ => (false, None),
                        };
                        Outcome::Assertion { passed, lhs: l, rhs: r, delta, tol: *eps }
                    }
                    (Err(message), _) | (_, Err(message)) => Outcome::Error { message },
                }
            }
            StmtKind::Directive(d) => match d {
                Directive::Tol { key, value } => {
                    let mut next = tol;
                    match next.set(key, *value).and_then(|_| next.validate()) {
                        Ok(()) => {
                            tol = next;
                            Outcome::Directive
                        }
                        Err(e) => Outcome::Error { message: e.to_string() },
                    }
                }
                Directive::Model(m) => {
                    report.model = *m;
                    Outcome::Directive
                }
                Directive::Render { path, width } => {
                    report.renders.push(RenderRequest {
                        path: path.clone(),
                        width: width.unwrap_or(DEFAULT_WIDTH),
                        model: report.model,
                        selection: report.bindings.iter().map(|(n, _)| n.clone()).collect(),
                    });
                    Outcome::Directive
                }
            },
        };
        report.entries.push(Entry {
            line: stmt.line,
            source: stmt.source.clone(),
            outcome,
        });
    }

    report.status = if report.errors() > 0 {
        Status::GeometricError
    } else if report.assertions().1 > 0 {
        Status::AssertionFailure
    } else {
        Status::Pass
    };
    report
}

fn bolyai_parts(name: &str, c: &BolyaiConstruction) -> Vec<(String, Value)> {
    let v = |suffix: &str| -> Value {
        match suffix {
            "q" => Value::HPoint(c.q),
            "r" => Value::HPoint(c.r),
            "t1" => Value::HPoint(c.t[0]),
            "t2" => Value::HPoint(c.t[1]),
            "m" => Value::HLine(c.m),
            "n" => Value::HLine(c.n),
            "k" => Value::HLine(c.k),
            "l1" => Value::HLine(c.lines[0]),
            "l2" => Value::HLine(c.lines[1]),
            "gamma1" => Value::HCircle(c.gamma1),
            "gamma2" => Value::HCircle(c.gamma2),
            _ => unreachable!(),
        }
    };
    BOLYAI_PARTS
        .iter()
        .map(|(suffix, _)| (format!("{name}.{suffix}"), v(suffix)))
        .collect()
}

fn eval_expr(e: &Expr, report: &Report, failed: &HashSet<String>) -> EvalResult<Scalar> {
    fn num(e: &Expr, report: &Report, failed: &HashSet<String>) -> EvalResult<f64> {
        match eval_expr(e, report, failed)? {
            Scalar::Number(x) => Ok(x),
            Scalar::Label(_) => Err("labels cannot take part in arithmetic".into()),
        }
    }
    Ok(match e {
        Expr::Num(x) => Scalar::Number(*x),
        Expr::Str(s) => Scalar::Label(s.clone()),
        Expr::Pi => Scalar::Number(PI),
        Expr::Name(n) => {
            if failed.contains(n) {
                return Err(format!("depends on `{n}`, which failed"));
            }
            match report.get(n) {
                Some(Value::Number(x)) => Scalar::Number(*x),
                Some(Value::Label(s)) => Scalar::Label(s.clone()),
                _ => return Err(format!("`{n}` is not a number or label")),
            }
        }
        Expr::Neg(a) => Scalar::Number(-num(a, report, failed)?),
        Expr::Call(f, a) => Scalar::Number(f.apply(num(a, report, failed)?)),
        Expr::Bin(op, a, b) => {
            let (x, y) = (num(a, report, failed)?, num(b, report, failed)?);
            Scalar::Number(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
                BinOp::Pow => x.powf(y),
            })
        }
    })
}

struct Args<'a> {
    args: &'a [Arg],
    report: &'a Report,
}

impl<'a> Args<'a> {
    fn value(&self, i: usize) -> &'a Value {
        match &self.args[i] {
            Arg::Name(n) => self.report.get(n).expect("names are resolved by the parser"),
            other => panic!("argument {i} is not a name: {other:?}"),
        }
    }

    fn num(&self, i: usize) -> f64 {
        match &self.args[i] {
            Arg::Num(x) => *x,
            Arg::Name(_) => match self.value(i) {
                Value::Number(x) => *x,
                other => panic!("expected a number, got {other:?}"),
            },
            other => panic!("expected a number, got {other:?}"),
        }
    }

    fn tuple(&self, i: usize) -> &'a [f64] {
        match &self.args[i] {
            Arg::Tuple(v) => v,
            other => panic!("expected a tuple, got {other:?}"),
        }
    }

    fn word(&self, i: usize) -> &'a str {
        match &self.args[i] {
            Arg::Word(w) => w,
            other => panic!("expected a word, got {other:?}"),
        }
    }

    fn point(&self, i: usize) -> Point {
        match self.value(i) {
            Value::Point(z) => *z,
            other => panic!("expected a point, got {other:?}"),
        }
    }

    fn hpoint(&self, i: usize) -> HPoint {
        match self.value(i) {
            Value::HPoint(p) => *p,
            other => panic!("expected an h-point, got {other:?}"),
        }
    }

    fn kpoint(&self, i: usize) -> KPoint {
        match self.value(i) {
            Value::KPoint(p) => *p,
            other => panic!("expected a Klein point, got {other:?}"),
        }
    }

    fn spoint(&self, i: usize) -> SPoint {
        match self.value(i) {
            Value::SPoint(p) => *p,
            other => panic!("expected a sphere point, got {other:?}"),
        }
    }

    fn line(&self, i: usize) -> Line {
        match self.value(i) {
            Value::Line(l) => *l,
            other => panic!("expected a line, got {other:?}"),
        }
    }

    fn circle(&self, i: usize) -> Circle {
        match self.value(i) {
            Value::Circle(c) => *c,
            other => panic!("expected a circle, got {other:?}"),
        }
    }

    fn curve(&self, i: usize) -> Cline {
        match self.value(i) {
            Value::Line(l) => Cline::Line(*l),
            Value::Circle(c) => Cline::Circle(*c),
            Value::Cline(g) => *g,
            other => panic!("expected a curve, got {other:?}"),
        }
    }

    fn hline(&self, i: usize) -> HLine {
        match self.value(i) {
            Value::HLine(l) => *l,
            other => panic!("expected an h-line, got {other:?}"),
        }
    }

    fn hcircle(&self, i: usize) -> HCircle {
        match self.value(i) {
            Value::HCircle(c) => *c,
            other => panic!("expected an h-circle, got {other:?}"),
        }
    }

    fn triangle(&self, tol: &Tolerances) -> EvalResult<Triangle> {
        Triangle::new(self.point(0), self.point(1), self.point(2), tol).map_err(geo)
    }
}

fn finite(p: ExtPoint, what: &str) -> EvalResult<Point> {
    p.finite().ok_or_else(|| format!("{what} is the point at infinity"))
}

fn truth(b: bool) -> Value {
    Value::Label(if b { "true" } else { "false" }.into())
}

fn eval_binding(b: &Binding, report: &Report, tol: &Tolerances) -> EvalResult<Value> {
    let a = Args { args: &b.args, report };
    Ok(match b.op {
        "point.literal" => {
            let t = a.tuple(0);
            let z = Complex64::new(t[0], t[1]);
            if !z.is_finite() {
                return Err(geo(GeoError::NonFinite("point")));
            }
            Value::Point(z)
        }
        "point.coords" => match a.value(0) {
            Value::HPoint(p) => Value::Point(p.z()),
            Value::KPoint(k) => Value::Point(k.z()),
            other => panic!("expected a model point, got {other:?}"),
        },
        "point.foot" => Value::Point(foot_point(a.point(0), &a.line(1))),
        "point.reflect" => Value::Point(reflect_line(a.point(0), &a.line(1))),
        "point.midpoint" => Value::Point((a.point(0) + a.point(1)) / 2.0),
        "point.circumcenter" => Value::Point(circumcenter(&a.triangle(tol)?).map_err(geo)?.0),
        "point.orthocenter" => Value::Point(orthocenter(&a.triangle(tol)?).map_err(geo)?),
        "point.centroid" => Value::Point(centroid(&a.triangle(tol)?).map_err(geo)?),
        "point.incenter" => Value::Point(incenter(&a.triangle(tol)?).map_err(geo)?.0),
        "point.bisector_foot" => Value::Point(bisector_foot(&a.triangle(tol)?).map_err(geo)?),
        "point.intersect" => {
            let mut pts = intersect_clines(&a.curve(0), &a.curve(1), tol);
            pts.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
            let k = a.num(2) as usize;
            let p = pts.get(k).ok_or_else(|| {
                format!("intersection {k} requested, the curves meet in {} point(s)", pts.len())
            })?;
            Value::Point(*p)
        }
        "point.mobius" => {
            let w = three_point_apply(a.point(0), a.point(1), a.point(2), a.point(3).into()).map_err(geo)?;
            Value::Point(finite(w, "the image")?)
        }
        "point.central" => Value::Point(central_project(a.spoint(0), tol).map_err(geo)?),
        "point.stereo" => Value::Point(finite(sphere_to_plane(a.spoint(0)), "the projection")?),
        "point.ideal" => {
            let l = a.hline(0);
            Value::Point(if a.word(1) == "a" { l.ideal_a } else { l.ideal_b })
        }
        "hpoint.literal" => {
            let t = a.tuple(0);
            Value::HPoint(HPoint::from_xy(t[0], t[1]).map_err(geo)?)
        }
        "hpoint.foot" => Value::HPoint(h_foot(a.hpoint(0), &a.hline(1))),
        "hpoint.intersect" => Value::HPoint(
            h_intersection(&a.hline(0), &a.hline(1), tol).ok_or_else(|| geo(GeoError::NoIntersection))?,
        ),
        "kpoint.literal" => {
            let t = a.tuple(0);
            Value::KPoint(KPoint::from_xy(t[0], t[1]).map_err(geo)?)
        }
        "spoint.literal" => {
            let t = a.tuple(0);
            Value::SPoint(SPoint::from_xyz(t[0], t[1], t[2]).map_err(geo)?)
        }
        "spoint.dir" => {
            let t = a.tuple(0);
            Value::SPoint(SPoint::normalized(Vector3::new(t[0], t[1], t[2])).map_err(geo)?)
        }
        "spoint.stereo" => Value::SPoint(stereographic_to_sphere(a.point(0).into())),
        "spoint.midpoint" => Value::SPoint(s_midpoint(a.spoint(0), a.spoint(1)).map_err(geo)?),
        "line.through" => Value::Line(Line::through(a.point(0), a.point(1)).map_err(geo)?),
        "line.bisector" => {
            let (p, q) = (a.point(0), a.point(1));
            Value::Line(Line::new((p + q) / 2.0, Complex64::i() * (q - p)).map_err(geo)?)
        }
        "line.perp" => {
            let l = a.line(1);
            Value::Line(Line::new(a.point(0), Complex64::i() * l.direction()).map_err(geo)?)
        }
        "circle.center_radius" => Value::Circle(Circle::new(a.point(0), a.num(1)).map_err(geo)?),
        "circle.incircle" => {
            let (c, r) = incenter(&a.triangle(tol)?).map_err(geo)?;
            Value::Circle(Circle::new(c, r).map_err(geo)?)
        }
        "circle.great" => {
            let g = GreatCircle::through(a.spoint(0), a.spoint(1)).map_err(geo)?;
            Value::Cline(great_circle_image(&g, tol))
        }
        "circle.euclid" => Value::Circle(a.hcircle(0).euclid),
        "cline3.through" => Value::Cline(
            cline_through(a.point(0).into(), a.point(1).into(), a.point(2).into(), tol).map_err(geo)?,
        ),
        "invert.point" => {
            let w = InversionCircle::from(a.circle(1));
            Value::Point(finite(invert_point(&w, a.point(0).into()), "the inverse")?)
        }
        "invert.cline" => {
            let w = InversionCircle::from(a.circle(1));
            Value::Cline(invert_cline(&w, &a.curve(0), tol))
        }
        "hline.through" => Value::HLine(h_line_through(a.hpoint(0), a.hpoint(1)).map_err(geo)?),
        "hline.ideal" => Value::HLine(
            HLine::from_ideal(Complex64::from_polar(1.0, a.num(0)), Complex64::from_polar(1.0, a.num(1)))
                .map_err(geo)?,
        ),
        "hline.perp" => Value::HLine(h_perpendicular(a.hpoint(0), &a.hline(1)).map_err(geo)?),
        "hline.parallel" => {
            let (first, second) = asymptotic_parallels(a.hpoint(0), &a.hline(1), tol).map_err(geo)?;
            Value::HLine(if a.word(2) == "a" { first } else { second })
        }
        "hline.axis" => Value::HLine(equidistant_axis(&a.circle(0), tol).map_err(geo)?),
        "hreflect.point" => Value::HPoint(h_reflect(&a.hline(1), a.hpoint(0))),
        "hcircle.center_radius" => Value::HCircle(h_circle_realize(a.hpoint(0), a.num(1)).map_err(geo)?),
        "hcircle.ideal_incircle" => {
            let w = |i: usize| Complex64::from_polar(1.0, a.num(i));
            Value::HCircle(ideal_triangle_incircle(w(0), w(1), w(2)).map_err(geo)?)
        }
        "klein.from_poincare" => Value::KPoint(poincare_to_klein(a.hpoint(0))),
        "poincare.from_klein" => Value::HPoint(klein_to_poincare(a.kpoint(0))),
        "bolyai.construct" => {
            Value::Bolyai(Box::new(bolyai_construct(&a.hline(0), a.hpoint(1), tol).map_err(geo)?))
        }
        "measure.dist" => Value::Number(plane_metric(PlaneMetric::D2, a.point(0), a.point(1))),
        "measure.d1" => Value::Number(plane_metric(PlaneMetric::D1, a.point(0), a.point(1))),
        "measure.dinf" => Value::Number(plane_metric(PlaneMetric::DInf, a.point(0), a.point(1))),
        "measure.angle" => Value::Number(
            signed_angle(a.point(0), a.point(1), a.point(2)).map_err(geo)?.radians(),
        ),
        "measure.xcoord" => Value::Number(a.point(0).re),
        "measure.ycoord" => Value::Number(a.point(0).im),
        "measure.radius" => Value::Number(match a.value(0) {
            Value::Circle(c) | Value::Cline(Cline::Circle(c)) => c.radius,
            Value::HCircle(c) => c.euclid.radius,
            Value::Cline(Cline::Line(_)) => return Err("the cline is a line and has no radius".into()),
            other => panic!("expected a round curve, got {other:?}"),
        }),
        "measure.tangent_length" => Value::Number(tangent_length(&a.triangle(tol)?).map_err(geo)?),
        "measure.cross_ratio" => Value::Number(
            real_cross_ratio(a.point(0), a.point(1), a.point(2), a.point(3)).map_err(geo)?,
        ),
        "measure.cratio_re" | "measure.cratio_im" => {
            let z = complex_cross_ratio(
                a.point(0).into(),
                a.point(1).into(),
                a.point(2).into(),
                a.point(3).into(),
            )
            .map_err(geo)?;
            Value::Number(if b.op == "measure.cratio_re" { z.re } else { z.im })
        }
        "measure.ptolemy" => Value::Number(ptolemy_residual(a.point(0), a.point(1), a.point(2), a.point(3))),
        "measure.hdist" => Value::Number(h_dist(a.hpoint(0), a.hpoint(1))),
        "measure.hdist0" => Value::Number(h_dist_from_center(a.num(0)).map_err(geo)?),
        "measure.hangle" => Value::Number(
            h_angle(a.hpoint(0), a.hpoint(1), a.hpoint(2)).map_err(geo)?.radians(),
        ),
        "measure.hline_dist" => Value::Number(h_dist_to_line(a.hpoint(0), &a.hline(1))),
        "measure.hradius" => Value::Number(a.hcircle(0).hradius),
        "measure.defect" => Value::Number(h_defect(a.hpoint(0), a.hpoint(1), a.hpoint(2), tol).map_err(geo)?),
        "measure.hpyth" => Value::Number(
            h_pythagoras_residual(a.hpoint(0), a.hpoint(1), a.hpoint(2), tol).map_err(geo)?,
        ),
        "measure.conformal" => Value::Number(conformal_factor(a.hpoint(0))),
        "measure.circumference" => Value::Number(h_circumference(a.num(0)).map_err(geo)?),
        "measure.parallelism" => Value::Number(angle_of_parallelism(a.num(0)).map_err(geo)?.radians()),
        "measure.parallel_dist" => Value::Number(parallelism_distance(a.num(0)).map_err(geo)?),
        "measure.equidistance" => Value::Number(equidistant_distance(&a.circle(0), tol).map_err(geo)?),
        "measure.idealgap" => Value::Number(shared_ideal_residual(&a.hline(0), &a.hline(1))),
        "measure.kdist" => Value::Number(klein_dist(a.kpoint(0), a.kpoint(1))),
        "measure.sdist" => Value::Number(s_dist(a.spoint(0), a.spoint(1))),
        "measure.sangle" => Value::Number(s_angle(a.spoint(0), a.spoint(1), a.spoint(2)).map_err(geo)?),
        "measure.excess" => Value::Number(s_excess(a.spoint(0), a.spoint(1), a.spoint(2), tol).map_err(geo)?),
        "measure.spyth" => Value::Number(
            s_pythagoras_residual(a.spoint(0), a.spoint(1), a.spoint(2), tol).map_err(geo)?,
        ),
        "measure.sconformal" => Value::Number(stereo_conformal_factor(a.point(0))),
        "measure.classify" => Value::Label(classify_cycle(&a.circle(0), tol).as_str().into()),
        "measure.tangency" => Value::Label(
            tangency_classify(&a.circle(0), &a.circle(1), tol).map_err(geo)?.as_str().into(),
        ),
        "measure.inscribed" => truth(
            inscribed_check(a.point(0), a.point(1), a.point(2), a.point(3), tol).map_err(geo)?,
        ),
        "measure.perpendicular" => truth(clines_perpendicular(&a.curve(0), &a.curve(1), tol).map_err(geo)?),
        "measure.same_side" => truth(same_side(&a.line(0), a.point(1), a.point(2), tol).map_err(geo)?),
        other => unreachable!("operation `{other}` has no evaluator"),
    })
}
