//! The inversive plane: the Euclidean plane completed by one point at infinity,
//! clines (circles and lines), inversion in a circle, and the cross-ratio
//! criteria built on top of them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::euclid::{circumcenter_raw, cross, dot, foot_point, Circle, Line};
use crate::numerics::{bbox_diameter, Tolerances};
use crate::Point;

/// A point of the inversive plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtPoint {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtPoint::Finite(z) => Some(z),
            ExtPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }

    /// Equality with `eps` applied to finite coordinates.
    pub fn approx_eq(self, other: ExtPoint, eps: f64) -> bool {
        match (self, other) {
            (ExtPoint::Infinity, ExtPoint::Infinity) => true,
            (ExtPoint::Finite(a), ExtPoint::Finite(b)) => (a - b).norm() <= eps,
            _ => false,
        }
    }
}

impl From<Complex64> for ExtPoint {
    fn from(z: Complex64) -> Self {
        ExtPoint::Finite(z)
    }
}

/// Generalized circle: a circle, or a line (a circle through infinity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Cline {
    Circle(Circle),
    Line(Line),
}

impl Cline {
    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        Ok(Cline::Circle(Circle::new(center, radius)?))
    }

    pub fn line_through(a: Point, b: Point) -> Result<Self> {
        Ok(Cline::Line(Line::through(a, b)?))
    }

    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            Cline::Circle(c) => Some(c),
            Cline::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&Line> {
        match self {
            Cline::Line(l) => Some(l),
            Cline::Circle(_) => None,
        }
    }

    /// Euclidean distance from `p` to the cline.
    pub fn distance(&self, p: Point) -> f64 {
        match self {
            Cline::Circle(c) => ((p - c.center).norm() - c.radius).abs(),
            Cline::Line(l) => l.distance(p),
        }
    }

    /// Membership; infinity lies on every line and on no circle.
    pub fn contains(&self, p: ExtPoint, eps: f64) -> bool {
        match p {
            ExtPoint::Infinity => matches!(self, Cline::Line(_)),
            ExtPoint::Finite(z) => self.distance(z) <= eps,
        }
    }

    /// `n` points spread along the cline: evenly spaced around a circle, or at
    /// unit steps centered on the anchor of a line.
    pub fn sample(&self, n: usize) -> Vec<Point> {
        match self {
            Cline::Circle(c) => (0..n)
                .map(|k| c.at_angle(std::f64::consts::TAU * (k as f64 + 0.5) / n as f64))
                .collect(),
            Cline::Line(l) => (0..n)
                .map(|k| l.at(k as f64 - (n as f64 - 1.0) / 2.0))
                .collect(),
        }
    }

    /// Unit tangent at `at` (assumed on the cline): counterclockwise on circles,
    /// along the direction on lines.
    pub fn tangent_at(&self, at: Point) -> Complex64 {
        match self {
            Cline::Circle(c) => {
                let r = at - c.center;
                Complex64::i() * r / r.norm()
            }
            Cline::Line(l) => l.direction(),
        }
    }

    /// Unit tangent at `at` oriented toward the nearby point `toward` on the cline.
    pub fn tangent_toward(&self, at: Point, toward: Point) -> Complex64 {
        let t = self.tangent_at(at);
        if dot(t, toward - at) >= 0.0 {
            t
        } else {
            -t
        }
    }

    /// Bounding scale used for tolerance bands.
    fn scale(&self) -> f64 {
        match self {
            Cline::Circle(c) => c.center.norm() + c.radius,
            Cline::Line(l) => l.anchor().norm() + 1.0,
        }
    }
}

/// Circle of inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionCircle {
    pub center: Point,
    pub radius: f64,
}

impl InversionCircle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        let c = Circle::new(center, radius)?;
        Ok(InversionCircle {
            center: c.center,
            radius: c.radius,
        })
    }

    pub fn unit() -> Self {
        InversionCircle {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn as_cline(&self) -> Cline {
        Cline::Circle(Circle {
            center: self.center,
            radius: self.radius,
        })
    }

    pub fn as_circle(&self) -> Circle {
        Circle {
            center: self.center,
            radius: self.radius,
        }
    }
}

impl From<Circle> for InversionCircle {
    fn from(c: Circle) -> Self {
        InversionCircle {
            center: c.center,
            radius: c.radius,
        }
    }
}

/// Inversion `P ↦ P'` with `P'` on the ray `[OP)` and `OP·OP' = r²`; the
/// center and infinity are exchanged.
pub fn invert_point(w: &InversionCircle, p: ExtPoint) -> ExtPoint {
    match p {
        ExtPoint::Infinity => ExtPoint::Finite(w.center),
        ExtPoint::Finite(z) => {
            let d = z - w.center;
            if d.norm_sqr() == 0.0 {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(w.center + w.radius * w.radius / d.conj())
            }
        }
    }
}

/// Inversion of a finite point known to differ from the center.
pub(crate) fn invert_finite(w: &InversionCircle, z: Point) -> Point {
    let d = z - w.center;
    w.center + w.radius * w.radius / d.conj()
}

/// The unique cline through three distinct points of the inversive plane.
pub fn cline_through(a: ExtPoint, b: ExtPoint, c: ExtPoint, tol: &Tolerances) -> Result<Cline> {
    let pts = [a, b, c];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if pts[i].approx_eq(pts[j], 0.0) {
                return Err(GeoError::Coincident("cline needs three distinct points"));
            }
        }
    }
    let finite: Vec<Point> = pts.iter().filter_map(|p| p.finite()).collect();
    if finite.len() < 3 {
        // One point is infinity: the cline is the line through the other two.
        return Cline::line_through(finite[0], finite[1]);
    }
    let (a, b, c) = (finite[0], finite[1], finite[2]);
    let scale = bbox_diameter(&finite);
    if scale == 0.0 || (a - b).norm() <= tol.eps_eq * scale || (b - c).norm() <= tol.eps_eq * scale
        || (a - c).norm() <= tol.eps_eq * scale
    {
        return Err(GeoError::Coincident("cline needs three distinct points"));
    }
    if cross(b - a, c - a).abs() < tol.eps_degenerate * scale * scale {
        let (p, q) = farthest_pair(&finite);
        return Cline::line_through(p, q);
    }
    Ok(fit_circle(a, b, c))
}

fn fit_circle(a: Point, b: Point, c: Point) -> Cline {
    let center = circumcenter_raw(a, b, c);
    let radius = ((a - center).norm() + (b - center).norm() + (c - center).norm()) / 3.0;
    Cline::Circle(Circle { center, radius })
}

fn farthest_pair(pts: &[Point]) -> (Point, Point) {
    let mut best = (pts[0], pts[1]);
    let mut dist = -1.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = (pts[i] - pts[j]).norm();
            if d > dist {
                dist = d;
                best = (pts[i], pts[j]);
            }
        }
    }
    best
}

/// Image of a cline under inversion.
///
/// Three well-spread points of `g` are inverted and refitted. Whether the image
/// is a line or a circle is decided beforehand: exactly the clines passing
/// within `eps_degenerate·scale` of the center change variant.
pub fn invert_cline(w: &InversionCircle, g: &Cline, tol: &Tolerances) -> Cline {
    let o = w.center;
    let scale = w.radius + g.scale() + o.norm();
    let near = tol.eps_degenerate * scale;
    match g {
        Cline::Line(l) => {
            let f = foot_point(o, l);
            let h = (f - o).norm();
            if h <= near {
                return Cline::Line(*l);
            }
            let dir = l.direction();
            let imgs = [f - dir * h, f, f + dir * h].map(|p| invert_finite(w, p));
            fit_circle(imgs[0], imgs[1], imgs[2])
        }
        Cline::Circle(c) => {
            let rel = o - c.center;
            let through_center = (rel.norm() - c.radius).abs() <= near;
            // Sample away from the direction of the inversion center.
            let phi = if rel.norm_sqr() > 0.0 { rel.arg() } else { 0.0 };
            let third = std::f64::consts::TAU / 3.0;
            let samples = [phi + third / 2.0, phi + third * 1.5, phi + third * 2.5].map(|t| c.at_angle(t));
            let imgs = samples.map(|p| invert_finite(w, p));
            if through_center {
                let (p, q) = farthest_pair(&imgs);
                Cline::Line(Line::through(p, q).expect("distinct inverted samples"))
            } else {
                fit_circle(imgs[0], imgs[1], imgs[2])
            }
        }
    }
}

/// `AB·CD / (BC·DA)` in Euclidean distances.
pub fn real_cross_ratio(a: Point, b: Point, c: Point, d: Point) -> Result<f64> {
    let den = (b - c).norm() * (d - a).norm();
    if den == 0.0 {
        return Err(GeoError::Coincident("cross-ratio denominator vanishes"));
    }
    Ok((a - b).norm() * (c - d).norm() / den)
}

/// Intersection points of two clines (zero, one or two). Tangency within the
/// assertion band yields a single point; coincident clines yield none.
pub fn intersect_clines(g: &Cline, h: &Cline, tol: &Tolerances) -> Vec<Point> {
    match (g, h) {
        (Cline::Circle(a), Cline::Circle(b)) => intersect_circles(a, b, tol),
        (Cline::Circle(c), Cline::Line(l)) | (Cline::Line(l), Cline::Circle(c)) => {
            intersect_circle_line(c, l, tol)
        }
        (Cline::Line(l1), Cline::Line(l2)) => {
            let den = cross(l1.direction(), l2.direction());
            if den.abs() <= tol.eps_degenerate {
                return vec![];
            }
            let t = cross(l2.anchor() - l1.anchor(), l2.direction()) / den;
            vec![l1.at(t)]
        }
    }
}

fn intersect_circles(a: &Circle, b: &Circle, tol: &Tolerances) -> Vec<Point> {
    let delta = b.center - a.center;
    let d = delta.norm();
    let band = tol.assert_band(d + a.radius + b.radius);
    if d <= band {
        return vec![];
    }
    if d > a.radius + b.radius + band || d < (a.radius - b.radius).abs() - band {
        return vec![];
    }
    let u = delta / d;
    let x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - x * x;
    let base = a.center + u * x;
    let tangent = (d - a.radius - b.radius).abs() <= band || (d - (a.radius - b.radius).abs()).abs() <= band;
    if tangent || h2 <= 0.0 {
        return vec![base];
    }
    let h = h2.sqrt();
    let n = Complex64::i() * u;
    vec![base + n * h, base - n * h]
}

fn intersect_circle_line(c: &Circle, l: &Line, tol: &Tolerances) -> Vec<Point> {
    let t0 = l.project(c.center);
    let s = l.signed_distance(c.center);
    let band = tol.assert_band(c.center.norm() + c.radius);
    let h = s.abs();
    if h > c.radius + band {
        return vec![];
    }
    let half2 = c.radius * c.radius - h * h;
    if half2 <= 0.0 || (h - c.radius).abs() <= band {
        return vec![l.at(t0)];
    }
    let half = half2.sqrt();
    vec![l.at(t0 - half), l.at(t0 + half)]
}

/// Perpendicularity of two intersecting clines.
///
/// Circle/circle: `d² = r₁² + r₂²`; circle/line: the line passes through the
/// center; line/line: orthogonal directions.
pub fn clines_perpendicular(g: &Cline, d: &Cline, tol: &Tolerances) -> Result<bool> {
    let scale = g.scale().max(d.scale());
    let band = tol.assert_band(scale);
    match (g, d) {
        (Cline::Circle(a), Cline::Circle(b)) => {
            let dist = (a.center - b.center).norm();
            if dist > a.radius + b.radius + band || dist < (a.radius - b.radius).abs() - band {
                return Err(GeoError::NoIntersection);
            }
            let lhs = dist * dist;
            let rhs = a.radius * a.radius + b.radius * b.radius;
            Ok((lhs - rhs).abs() <= tol.eps_assert * scale * scale)
        }
        (Cline::Circle(c), Cline::Line(l)) | (Cline::Line(l), Cline::Circle(c)) => {
            let h = l.distance(c.center);
            if h > c.radius + band {
                return Err(GeoError::NoIntersection);
            }
            Ok(h <= band)
        }
        (Cline::Line(a), Cline::Line(b)) => {
            if cross(a.direction(), b.direction()).abs() <= tol.eps_degenerate {
                return Err(GeoError::NoIntersection);
            }
            Ok(dot(a.direction(), b.direction()).abs() <= tol.eps_assert)
        }
    }
}

/// The unique cline through `p` and `q` perpendicular to `w`, fitted through
/// `p`, `q` and the inverse of `p` in `w`.
pub fn perpendicular_cline_through(
    w: &InversionCircle,
    p: Point,
    q: Point,
    tol: &Tolerances,
) -> Result<Cline> {
    if p == q {
        return Err(GeoError::Coincident("perpendicular cline needs two distinct points"));
    }
    for z in [p, q] {
        let r = (z - w.center).norm();
        if r >= w.radius {
            return Err(GeoError::OutsideAbsolute(r / w.radius));
        }
    }
    cline_through(p.into(), q.into(), invert_point(w, p.into()), tol)
}

/// Concyclicity (or collinearity) test: the quadrilateral `UVWZ` is inscribed
/// iff `(v−u)(w−z) / ((v−w)(z−u))` is real.
pub fn inscribed_check(u: Point, v: Point, w: Point, z: Point, tol: &Tolerances) -> Result<bool> {
    let pts = [u, v, w, z];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(GeoError::Coincident("inscribed check needs four distinct points"));
            }
        }
    }
    let value = (v - u) * (w - z) / ((v - w) * (z - u));
    Ok(value.im.abs() <= tol.eps_assert * value.norm())
}

/// `AB·CD + BC·DA − AC·BD`; vanishes exactly for concyclic points in cyclic order.
pub fn ptolemy_residual(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let n = |p: Point, q: Point| (p - q).norm();
    n(a, b) * n(c, d) + n(b, c) * n(d, a) - n(a, c) * n(b, d)
}

/// Signed angle at `at` between `g1` (toward `x1`) and `g2` (toward `x2`).
pub fn cline_angle(g1: &Cline, x1: Point, g2: &Cline, x2: Point, at: Point) -> Result<crate::numerics::AngleValue> {
    let t1 = g1.tangent_toward(at, x1);
    let t2 = g2.tangent_toward(at, x2);
    crate::numerics::normalize_angle((t2 / t1).arg())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Point {
        Complex64::new(x, y)
    }
    fn fin(x: f64, y: f64) -> ExtPoint {
        ExtPoint::Finite(c(x, y))
    }

    #[test]
    fn invert_point_examples() {
        let w = InversionCircle::unit();
        assert!(invert_point(&w, fin(2.0, 0.0)).approx_eq(fin(0.5, 0.0), 1e-15));
        let on = fin(0.6, 0.8);
        assert!(invert_point(&w, on).approx_eq(on, 1e-15));
        assert_eq!(invert_point(&w, fin(0.0, 0.0)), ExtPoint::Infinity);
        assert_eq!(invert_point(&w, ExtPoint::Infinity), fin(0.0, 0.0));
    }

    #[test]
    fn invert_cline_examples() {
        let tol = Tolerances::default();
        let w = InversionCircle::unit();
        let x2 = Cline::line_through(c(2.0, 0.0), c(2.0, 1.0)).unwrap();
        let img = invert_cline(&w, &x2, &tol);
        let circ = img.as_circle().expect("line avoiding center maps to a circle");
        assert!((circ.center - c(0.25, 0.0)).norm() < 1e-15);
        assert!((circ.radius - 0.25).abs() < 1e-15);

        let diameter = Cline::line_through(c(-1.0, -1.0), c(1.0, 1.0)).unwrap();
        let img = invert_cline(&w, &diameter, &tol);
        let l = img.as_line().expect("diameter maps to itself");
        assert!(l.distance(c(0.0, 0.0)) < 1e-15 && l.distance(c(3.0, 3.0)) < 1e-14);

        let through_o = Cline::circle(c(0.5, 0.0), 0.5).unwrap();
        let img = invert_cline(&w, &through_o, &tol);
        let l = img.as_line().expect("circle through center maps to a line");
        assert!(l.distance(c(1.0, 7.0)) < 1e-12, "image is the line x = 1");
    }

    #[test]
    fn cline_through_examples() {
        let tol = Tolerances::default();
        let g = cline_through(fin(1.0, 0.0), fin(0.0, 1.0), fin(-1.0, 0.0), &tol).unwrap();
        let circ = g.as_circle().unwrap();
        assert!(circ.center.norm() < 1e-15 && (circ.radius - 1.0).abs() < 1e-15);
        let g = cline_through(fin(0.0, 0.0), fin(1.0, 1.0), fin(3.0, 3.0), &tol).unwrap();
        assert!(g.as_line().is_some());
        let g = cline_through(fin(0.0, 0.0), fin(1.0, 0.0), ExtPoint::Infinity, &tol).unwrap();
        let l = g.as_line().unwrap();
        assert!(l.distance(c(17.0, 0.0)) == 0.0);
        assert!(cline_through(fin(0.0, 0.0), fin(0.0, 0.0), fin(1.0, 0.0), &tol).is_err());
    }

    #[test]
    fn real_cross_ratio_examples() {
        let r = real_cross_ratio(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
        // Unit square corners in order: all four sides are 1.
        let sq = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)];
        assert!((real_cross_ratio(sq[0], sq[1], sq[2], sq[3]).unwrap() - 1.0).abs() < 1e-15);
        // Diagonal pairing A,C,B,D: AC·BD / (CB·DA) = √2·√2 / 1.
        assert!((real_cross_ratio(sq[0], sq[2], sq[1], sq[3]).unwrap() - 2.0).abs() < 1e-15);
        assert!(real_cross_ratio(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn perpendicular_examples() {
        let tol = Tolerances::default();
        let unit = InversionCircle::unit().as_cline();
        let diag = Cline::line_through(c(-0.3, 0.4), c(0.3, -0.4)).unwrap();
        assert_eq!(clines_perpendicular(&unit, &diag, &tol), Ok(true));
        let s2 = Cline::circle(c(2f64.sqrt(), 0.0), 1.0).unwrap();
        assert_eq!(clines_perpendicular(&unit, &s2, &tol), Ok(true));
        let s19 = Cline::circle(c(1.9, 0.0), 1.0).unwrap();
        assert_eq!(clines_perpendicular(&unit, &s19, &tol), Ok(false));
        let far = Cline::circle(c(5.0, 0.0), 1.0).unwrap();
        assert_eq!(clines_perpendicular(&unit, &far, &tol), Err(GeoError::NoIntersection));
    }

    #[test]
    fn perpendicular_cline_through_examples() {
        let tol = Tolerances::default();
        let w = InversionCircle::unit();
        let g = perpendicular_cline_through(&w, c(0.3, 0.0), c(-0.5, 0.0), &tol).unwrap();
        assert!(g.as_line().is_some());
        let g = perpendicular_cline_through(&w, c(0.3, 0.0), c(0.0, 0.3), &tol).unwrap();
        // Fit independently through 0.3, 0.3i and 10/3.
        let expect = circumcenter_raw(c(0.3, 0.0), c(0.0, 0.3), c(10.0 / 3.0, 0.0));
        let circ = g.as_circle().unwrap();
        assert!((circ.center - expect).norm() < 1e-13);
        assert!(g.contains(fin(10.0 / 3.0, 0.0), 1e-13));
        assert_eq!(clines_perpendicular(&g, &w.as_cline(), &tol), Ok(true));
        assert!(perpendicular_cline_through(&w, c(0.3, 0.0), c(0.3, 0.0), &tol).is_err());
        assert!(perpendicular_cline_through(&w, c(1.3, 0.0), c(0.3, 0.0), &tol).is_err());
    }

    #[test]
    fn inscribed_examples() {
        let tol = Tolerances::default();
        let on = |t: f64| Complex64::from_polar(1.0, t);
        assert_eq!(inscribed_check(on(0.1), on(1.3), on(2.9), on(-1.0), &tol), Ok(true));
        assert_eq!(
            inscribed_check(c(0.0, 0.0), c(1.0, 0.0), c(2.5, 0.0), c(-3.0, 0.0), &tol),
            Ok(true)
        );
        assert_eq!(
            inscribed_check(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(5.0, 5.0), &tol),
            Ok(false)
        );
        assert!(inscribed_check(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(5.0, 5.0), &tol).is_err());
    }

    #[test]
    fn ptolemy_examples() {
        let r = ptolemy_residual(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0));
        assert!(r.abs() < 1e-15);
        let r = ptolemy_residual(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0));
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn intersections() {
        let tol = Tolerances::default();
        let unit = Cline::circle(c(0.0, 0.0), 1.0).unwrap();
        let xaxis = Cline::line_through(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let pts = intersect_clines(&unit, &xaxis, &tol);
        assert_eq!(pts.len(), 2);
        assert!((pts[0] - c(-1.0, 0.0)).norm() < 1e-15);
        let tangent = Cline::line_through(c(1.0, 0.0), c(1.0, 1.0)).unwrap();
        assert_eq!(intersect_clines(&unit, &tangent, &tol).len(), 1);
        let other = Cline::circle(c(1.0, 1.0), 1.0).unwrap();
        let mut pts = intersect_clines(&unit, &other, &tol);
        pts.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((pts[0] - c(0.0, 1.0)).norm() < 1e-15 && (pts[1] - c(1.0, 0.0)).norm() < 1e-15);
    }
}
