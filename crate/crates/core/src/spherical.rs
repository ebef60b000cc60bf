//! Geometry on the unit sphere: distance, right triangles, excess, and the
//! stereographic and central projections to the plane `z = 0` / `z = 1`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::euclid::Line;
use crate::inversive::{Cline, ExtPoint};
use crate::numerics::Tolerances;
use crate::Point;

const UNIT_EPS: f64 = 1e-12;

fn check_unit(v: &Vector3<f64>) -> Result<()> {
    if !v.iter().all(|x| x.is_finite()) {
        return Err(GeoError::NonFinite("sphere point"));
    }
    let n = v.norm();
    if (n - 1.0).abs() > UNIT_EPS {
        return Err(GeoError::NotUnit(n));
    }
    Ok(())
}

/// A point of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SPoint(Vector3<f64>);

impl SPoint {
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        check_unit(&v)?;
        Ok(SPoint(v))
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalized(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(GeoError::NonFinite("sphere point"));
        }
        Ok(SPoint(v / n))
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        SPoint::new(Vector3::new(x, y, z))
    }

    pub fn north() -> Self {
        SPoint(Vector3::z())
    }

    pub fn south() -> Self {
        SPoint(-Vector3::z())
    }

    pub fn v(&self) -> Vector3<f64> {
        self.0
    }
}

/// Intersection of the sphere with a plane through its center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreatCircle {
    normal: Vector3<f64>,
}

impl GreatCircle {
    pub fn new(normal: Vector3<f64>) -> Result<Self> {
        check_unit(&normal)?;
        Ok(GreatCircle { normal })
    }

    /// The great circle through two distinct, non-antipodal points.
    pub fn through(a: SPoint, b: SPoint) -> Result<Self> {
        let n = a.0.cross(&b.0);
        if n.norm() <= UNIT_EPS {
            return Err(GeoError::Coincident("great circle needs two non-antipodal points"));
        }
        Ok(GreatCircle { normal: n.normalize() })
    }

    pub fn normal(&self) -> Vector3<f64> {
        self.normal
    }

    /// Point at angle `t` along the circle.
    pub fn at(&self, t: f64) -> SPoint {
        let n = self.normal;
        let seed = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let e1 = n.cross(&seed).normalize();
        let e2 = n.cross(&e1);
        SPoint(e1 * t.cos() + e2 * t.sin())
    }
}

/// `AB_s = |∠AOB|`, evaluated as `atan2(|a × b|, ⟨a, b⟩)`.
pub fn s_dist(a: SPoint, b: SPoint) -> f64 {
    a.0.cross(&b.0).norm().atan2(a.0.dot(&b.0))
}

/// Component of `v` orthogonal to the unit vector `at` (a tangent direction at `at`).
fn tangent(at: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
    v - at * at.dot(v)
}

/// Unsigned angle of the spherical triangle at `b`, measured between the
/// tangent directions toward `a` and `c`.
pub fn s_angle(a: SPoint, b: SPoint, c: SPoint) -> Result<f64> {
    let (ta, tc) = (tangent(&b.0, &a.0), tangent(&b.0, &c.0));
    if ta.norm() <= UNIT_EPS || tc.norm() <= UNIT_EPS {
        return Err(GeoError::DegenerateAngle);
    }
    Ok(ta.cross(&tc).norm().atan2(ta.dot(&tc)))
}

/// `cos(AB_s) − cos(BC_s)·cos(CA_s)` for a triangle with a right angle at `c`.
///
/// A zero leg skips the right-angle check.
pub fn s_pythagoras_residual(a: SPoint, b: SPoint, c: SPoint, tol: &Tolerances) -> Result<f64> {
    let (ta, tb) = (tangent(&c.0, &a.0), tangent(&c.0, &b.0));
    let (na, nb) = (ta.norm(), tb.norm());
    if na > UNIT_EPS && nb > UNIT_EPS {
        let cosine = ta.dot(&tb) / (na * nb);
        if cosine.abs() > tol.eps_assert {
            return Err(GeoError::NotRightAngle(cosine.clamp(-1.0, 1.0).acos()));
        }
    }
    Ok(s_dist(a, b).cos() - s_dist(b, c).cos() * s_dist(c, a).cos())
}

/// `α + β + γ − π`.
pub fn s_excess(a: SPoint, b: SPoint, c: SPoint, tol: &Tolerances) -> Result<f64> {
    let det = a.0.dot(&b.0.cross(&c.0));
    if det.abs() <= tol.eps_degenerate {
        return Err(GeoError::DegenerateTriangle);
    }
    Ok(s_angle(c, a, b)? + s_angle(a, b, c)? + s_angle(b, c, a)? - PI)
}

/// Midpoint of the shorter arc between non-antipodal points.
pub fn s_midpoint(a: SPoint, b: SPoint) -> Result<SPoint> {
    SPoint::normalized(a.0 + b.0).map_err(|_| GeoError::Coincident("antipodal points"))
}

/// Stereographic projection from the South Pole, plane to sphere:
/// `(u, v) ↦ (2u, 2v, 1 − u² − v²)/(1 + u² + v²)`, `∞ ↦ S`.
pub fn stereographic_to_sphere(p: ExtPoint) -> SPoint {
    match p {
        ExtPoint::Infinity => SPoint::south(),
        ExtPoint::Finite(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return SPoint::south();
            }
            let s = 1.0 + r2;
            SPoint(Vector3::new(2.0 * z.re / s, 2.0 * z.im / s, (1.0 - r2) / s))
        }
    }
}

/// Inverse of [`stereographic_to_sphere`]: `(x, y, z) ↦ (x, y)/(1 + z)`, `S ↦ ∞`.
pub fn sphere_to_plane(p: SPoint) -> ExtPoint {
    let v = p.0;
    let d = 1.0 + v.z;
    if d <= 0.0 {
        return ExtPoint::Infinity;
    }
    // (x, y)/(1 + z) = (1 − z)/(x, y)‾ in conjugate form; use whichever is better conditioned.
    if v.z >= 0.0 {
        ExtPoint::Finite(Complex64::new(v.x, v.y) / d)
    } else {
        let w = Complex64::new(v.x, v.y);
        let n2 = w.norm_sqr();
        if n2 == 0.0 {
            return ExtPoint::Infinity;
        }
        // 1 + z = (x² + y²)/(1 − z) on the sphere.
        ExtPoint::Finite(w * ((1.0 - v.z) / n2))
    }
}

/// Stereographic projection from the North Pole: `(x, y, z) ↦ (x, y)/(1 − z)`.
pub fn sphere_to_plane_from_north(p: SPoint) -> ExtPoint {
    let v = p.0;
    let mirrored = SPoint(Vector3::new(v.x, v.y, -v.z));
    sphere_to_plane(mirrored)
}

/// `P ↦ (x/z, y/z)` on the plane `z = 1`; north hemisphere only.
pub fn central_project(p: SPoint, tol: &Tolerances) -> Result<Point> {
    let v = p.0;
    if v.z <= tol.eps_degenerate {
        return Err(GeoError::OutOfRange(format!(
            "central projection needs a point of the open north hemisphere, got z = {}",
            v.z
        )));
    }
    Ok(Complex64::new(v.x / v.z, v.y / v.z))
}

/// Stereographic image (from the South Pole) of a great circle.
///
/// For the normal `n`, the image is the circle centered at `(n_x, n_y)/n_z`
/// with radius² `1 + (n_x² + n_y²)/n_z²`, or the line through the origin
/// along `(−n_y, n_x)` when `n_z = 0`.
pub fn great_circle_image(g: &GreatCircle, tol: &Tolerances) -> Cline {
    let n = g.normal;
    if n.z.abs() <= tol.eps_degenerate {
        let dir = Complex64::new(-n.y, n.x);
        return Cline::Line(Line::new(Complex64::new(0.0, 0.0), dir).expect("unit normal"));
    }
    let center = Complex64::new(n.x / n.z, n.y / n.z);
    let radius = (1.0 + center.norm_sqr()).sqrt();
    Cline::circle(center, radius).expect("finite circle")
}

/// Scale of the stereographic projection at `p`: `2/(1 + |p|²)`.
pub fn stereo_conformal_factor(p: Point) -> f64 {
    2.0 / (1.0 + p.norm_sqr())
}
