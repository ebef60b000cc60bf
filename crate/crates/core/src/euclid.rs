//! Euclidean plane primitives over complex coordinates.
//!
//! Points are identified with their complex coordinate `x + i·y`; angles are
//! oriented counterclockwise, so the angle from `1` to `i` at the origin is `π/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::numerics::{bbox_diameter, normalize_angle, AngleValue, Tolerances};
use crate::Point;

/// Signed angle `∠AOB = arg((b − o)/(a − o))`.
pub fn signed_angle(a: Point, o: Point, b: Point) -> Result<AngleValue> {
    let (u, v) = (a - o, b - o);
    if u.norm_sqr() == 0.0 || v.norm_sqr() == 0.0 {
        return Err(GeoError::DegenerateAngle);
    }
    normalize_angle((v / u).arg())
}

/// A line in parametric form `anchor + t·direction`, with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    anchor: Point,
    direction: Complex64,
}

impl Line {
    pub fn new(anchor: Point, direction: Complex64) -> Result<Self> {
        let n = direction.norm();
        if !(n.is_finite() && n > 0.0) || !anchor.is_finite() {
            return Err(GeoError::NonFinite("line direction"));
        }
        Ok(Line {
            anchor,
            direction: direction / n,
        })
    }

    pub fn through(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(GeoError::Coincident("line needs two distinct points"));
        }
        Line::new(a, b - a)
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn direction(&self) -> Complex64 {
        self.direction
    }

    pub fn at(&self, t: f64) -> Point {
        self.anchor + self.direction * t
    }

    /// Signed distance; positive on the left of the direction.
    pub fn signed_distance(&self, p: Point) -> f64 {
        cross(self.direction, p - self.anchor)
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Parameter of the orthogonal projection of `p`.
    pub fn project(&self, p: Point) -> f64 {
        dot(self.direction, p - self.anchor)
    }
}

/// A Euclidean circle with positive radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(GeoError::NonFinite("circle"));
        }
        if radius <= 0.0 {
            return Err(GeoError::OutOfRange(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Circle { center, radius })
    }

    pub fn at_angle(&self, theta: f64) -> Point {
        self.center + Complex64::from_polar(self.radius, theta)
    }
}

pub(crate) fn cross(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).im
}

pub(crate) fn dot(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).re
}

pub fn foot_point(p: Point, l: &Line) -> Point {
    l.at(l.project(p))
}

pub fn reflect_line(p: Point, l: &Line) -> Point {
    2.0 * foot_point(p, l) - p
}

pub fn same_side(l: &Line, x: Point, y: Point, tol: &Tolerances) -> Result<bool> {
    let (sx, sy) = (l.signed_distance(x), l.signed_distance(y));
    let band = tol.eps_degenerate * bbox_diameter(&[l.anchor, x, y]).max(1.0);
    if sx.abs() <= band || sy.abs() <= band {
        return Err(GeoError::OnBoundary);
    }
    Ok(sx.signum() == sy.signum())
}

/// An ordered triangle. Construction refuses coincident vertices; collinear
/// vertices produce a triangle flagged as degenerate, which the center
/// operations reject.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    degenerate: bool,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeoError::NonFinite("triangle vertex"));
        }
        let scale = bbox_diameter(&[a, b, c]);
        let eq = tol.eps_eq * scale.max(1.0);
        if (a - b).norm() <= eq || (b - c).norm() <= eq || (c - a).norm() <= eq {
            return Err(GeoError::Coincident("triangle vertices"));
        }
        let disc = cross(b - a, c - a).abs();
        let degenerate = disc < tol.eps_degenerate * scale * scale;
        Ok(Triangle { a, b, c, degenerate })
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn scale(&self) -> f64 {
        bbox_diameter(&self.vertices())
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.degenerate {
            Err(GeoError::DegenerateTriangle)
        } else {
            Ok(())
        }
    }
}

/// Center and radius of the circle through the three vertices.
pub fn circumcenter(t: &Triangle) -> Result<(Point, f64)> {
    t.require_nondegenerate()?;
    let center = circumcenter_raw(t.a, t.b, t.c);
    Ok((center, (t.a - center).norm()))
}

/// Circumcenter without the degeneracy gate; callers check collinearity.
pub(crate) fn circumcenter_raw(a: Point, b: Point, c: Point) -> Point {
    let (b, c) = (b - a, c - a);
    let d = 2.0 * cross(b, c);
    let (bb, cc) = (b.norm_sqr(), c.norm_sqr());
    let x = (c.im * bb - b.im * cc) / d;
    let y = (b.re * cc - c.re * bb) / d;
    a + Complex64::new(x, y)
}

/// Meeting point of the altitudes, through the identity `H = A + B + C − 2·O`
/// with `O` the circumcenter.
pub fn orthocenter(t: &Triangle) -> Result<Point> {
    let (o, _) = circumcenter(t)?;
    Ok(t.a + t.b + t.c - 2.0 * o)
}

pub fn centroid(t: &Triangle) -> Result<Point> {
    t.require_nondegenerate()?;
    Ok((t.a + t.b + t.c) / 3.0)
}

/// Incenter as the side-length weighted mean of the vertices, and the inradius
/// `2·area / perimeter`.
pub fn incenter(t: &Triangle) -> Result<(Point, f64)> {
    t.require_nondegenerate()?;
    let la = (t.b - t.c).norm();
    let lb = (t.c - t.a).norm();
    let lc = (t.a - t.b).norm();
    let p = la + lb + lc;
    let center = (t.a * la + t.b * lb + t.c * lc) / p;
    let area2 = cross(t.b - t.a, t.c - t.a).abs();
    Ok((center, area2 / p))
}

/// Foot `D` on `[BC]` of the bisector from `A`; splits `BC` so that `DB/DC = AB/AC`.
pub fn bisector_foot(t: &Triangle) -> Result<Point> {
    t.require_nondegenerate()?;
    let ab = (t.b - t.a).norm();
    let ac = (t.c - t.a).norm();
    Ok((t.b * ac + t.c * ab) / (ab + ac))
}

/// Tangent length from `A` to the incircle: `½·(AB + AC − BC)`.
pub fn tangent_length(t: &Triangle) -> Result<f64> {
    t.require_nondegenerate()?;
    Ok(0.5 * ((t.b - t.a).norm() + (t.c - t.a).norm() - (t.c - t.b).norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tangency {
    Disjoint,
    ExtTangent,
    Intersecting,
    IntTangent,
    Nested,
}

impl Tangency {
    pub fn as_str(self) -> &'static str {
        match self {
            Tangency::Disjoint => "disjoint",
            Tangency::ExtTangent => "ext_tangent",
            Tangency::Intersecting => "intersecting",
            Tangency::IntTangent => "int_tangent",
            Tangency::Nested => "nested",
        }
    }
}

/// Mutual position of two circles from the center distance `d` against
/// `r + r'` and `|r − r'|`.
pub fn tangency_classify(c1: &Circle, c2: &Circle, tol: &Tolerances) -> Result<Tangency> {
    let d = (c1.center - c2.center).norm();
    let (sum, diff) = (c1.radius + c2.radius, (c1.radius - c2.radius).abs());
    let band = tol.assert_band(d + sum);
    if d <= band && diff <= band {
        return Err(GeoError::IdenticalCircles);
    }
    Ok(if (d - sum).abs() <= band {
        Tangency::ExtTangent
    } else if d > sum {
        Tangency::Disjoint
    } else if (d - diff).abs() <= band {
        Tangency::IntTangent
    } else if d < diff {
        Tangency::Nested
    } else {
        Tangency::Intersecting
    })
}
