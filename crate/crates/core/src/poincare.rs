//! The Poincaré disk model with the unit circle as the absolute.
//!
//! h-lines are the arcs of clines perpendicular to the absolute; the distance
//! is `ln δ(P,Q)` with `δ(P,Q) = AQ·BP / (QB·PA)` for the ideal points `A`, `B`
//! of `(PQ)_h` ordered so that `δ ≥ 1`.
//!
//! Circles perpendicular to the absolute can be enormous when an h-line is
//! close to a diameter, so reflections and motions here use the closed forms
//! `z ↦ (c·z̄ − 1)/(z̄ − c̄)` (inversion in the perpendicular circle centered
//! at `c`) instead of the generic inversion formula, which cancels badly for
//! large `|c|`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::euclid::{cross, Circle, Line};
use crate::inversive::{intersect_clines, Cline, InversionCircle};
use crate::moebius::Moebius;
use crate::numerics::{normalize_angle, AngleValue, Tolerances};

/// Points closer than this to the absolute are rejected.
pub const ABSOLUTE_MARGIN: f64 = 1e-12;

/// A point strictly inside the absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint(Complex64);

impl HPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !z.is_finite() {
            return Err(GeoError::NonFinite("h-point"));
        }
        let r = z.norm();
        if r >= 1.0 - ABSOLUTE_MARGIN {
            return Err(GeoError::OutsideAbsolute(r));
        }
        Ok(HPoint(z))
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        HPoint::new(Complex64::new(x, y))
    }

    pub fn origin() -> Self {
        HPoint(Complex64::new(0.0, 0.0))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }
}

/// An h-line: its carrier cline (perpendicular to the absolute) and its two
/// ideal points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HLine {
    pub carrier: Cline,
    pub ideal_a: Complex64,
    pub ideal_b: Complex64,
}

impl HLine {
    /// The h-line with the given ideal points (unit complex numbers).
    pub fn from_ideal(a: Complex64, b: Complex64) -> Result<Self> {
        for p in [a, b] {
            if !p.is_finite() || (p.norm() - 1.0).abs() > 1e-9 {
                return Err(GeoError::NotUnit(p.norm()));
            }
        }
        let (a, b) = (a / a.norm(), b / b.norm());
        if (a - b).norm() <= 1e-12 {
            return Err(GeoError::Coincident("ideal points"));
        }
        let s = a + b;
        let carrier = if s.norm() <= 1e-12 {
            Cline::Line(Line::new(Complex64::new(0.0, 0.0), a)?)
        } else {
            // Intersection of the tangents to the absolute at a and b.
            let center = s * (2.0 / s.norm_sqr());
            Cline::Circle(Circle {
                center,
                radius: (center.norm_sqr() - 1.0).sqrt(),
            })
        };
        Ok(HLine {
            carrier,
            ideal_a: a,
            ideal_b: b,
        })
    }

    /// Points on the h-line satisfy this to within `eps` (Euclidean).
    pub fn contains(&self, p: HPoint, eps: f64) -> bool {
        match &self.carrier {
            Cline::Line(l) => l.distance(p.0) <= eps,
            Cline::Circle(c) => {
                // |p − c|² − ρ² = |p|² + 1 − 2 Re(p c̄), written without the large terms.
                let v = p.0.norm_sqr() + 1.0 - 2.0 * (p.0 * c.center.conj()).re;
                (v / (2.0 * c.radius)).abs() <= eps
            }
        }
    }

    /// Reflection of the h-plane in this h-line (inversion in the carrier).
    pub fn reflect(&self, z: Complex64) -> Complex64 {
        match &self.carrier {
            Cline::Line(l) => {
                let d = l.direction();
                let rel = z - l.anchor();
                l.anchor() + d * d * rel.conj()
            }
            Cline::Circle(c) => {
                let zb = z.conj();
                (c.center * zb - 1.0) / (zb - c.center.conj())
            }
        }
    }

    /// Unit tangent of the carrier at `at` pointing toward `toward`.
    fn tangent_toward(&self, at: Complex64, toward: Complex64) -> Complex64 {
        let t = match &self.carrier {
            Cline::Line(l) => l.direction(),
            Cline::Circle(c) => {
                let r = at - c.center;
                Complex64::i() * r / r.norm()
            }
        };
        if (t.conj() * (toward - at)).re >= 0.0 {
            t
        } else {
            -t
        }
    }

    /// Same h-line with the ideal points swapped.
    pub fn reversed(&self) -> HLine {
        HLine {
            carrier: self.carrier,
            ideal_a: self.ideal_b,
            ideal_b: self.ideal_a,
        }
    }
}

/// A realized h-circle: h-center, h-radius, and the Euclidean circle formed by
/// its points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HCircle {
    pub hcenter: HPoint,
    pub hradius: f64,
    pub euclid: Circle,
}

/// `AQ·BP / (QB·PA)`.
pub fn delta(p: Complex64, q: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a - q).norm() * (b - p).norm() / ((q - b).norm() * (p - a).norm())
}

/// Center of the circle through `p` and `q` perpendicular to the absolute,
/// or `None` when `p`, `q` and the origin are collinear (a diameter).
///
/// The center `c` solves `Re(c·p̄) = (1 + |p|²)/2` and the same for `q`.
fn perpendicular_center(p: Complex64, q: Complex64) -> Option<Complex64> {
    let det = cross(p, q);
    if det.abs() <= 1e-15 * p.norm() * q.norm() {
        return None;
    }
    let (rp, rq) = ((1.0 + p.norm_sqr()) / 2.0, (1.0 + q.norm_sqr()) / 2.0);
    // [px py; qx qy]·c = [rp; rq]
    let x = (rp * q.im - rq * p.im) / det;
    let y = (rq * p.re - rp * q.re) / det;
    Some(Complex64::new(x, y))
}

fn ideal_points_of_center(c: Complex64) -> (Complex64, Complex64) {
    let m = c.norm();
    let u = c / m;
    let theta = (1.0 / m).acos();
    (u * Complex64::from_polar(1.0, theta), u * Complex64::from_polar(1.0, -theta))
}

/// The h-line through two distinct h-points, with ideal points ordered so
/// that `A, P, Q, B` follow each other along the carrier.
pub fn h_line_through(p: HPoint, q: HPoint) -> Result<HLine> {
    if p == q {
        return Err(GeoError::Coincident("h-line needs two distinct points"));
    }
    let line = match perpendicular_center(p.0, q.0) {
        Some(c) => {
            let (a, b) = ideal_points_of_center(c);
            HLine {
                carrier: Cline::Circle(Circle {
                    center: c,
                    radius: (c.norm_sqr() - 1.0).sqrt(),
                }),
                ideal_a: a,
                ideal_b: b,
            }
        }
        None => {
            let far = if p.0.norm() >= q.0.norm() { p.0 } else { q.0 };
            let d = if far.norm() > 0.0 { far / far.norm() } else { (q.0 - p.0) / (q.0 - p.0).norm() };
            HLine {
                carrier: Cline::Line(Line::new(Complex64::new(0.0, 0.0), d)?),
                ideal_a: -d,
                ideal_b: d,
            }
        }
    };
    if delta(p.0, q.0, line.ideal_a, line.ideal_b) < 1.0 {
        Ok(line.reversed())
    } else {
        Ok(line)
    }
}

/// h-distance `PQ_h = ln δ(P, Q)`.
pub fn h_dist(p: HPoint, q: HPoint) -> f64 {
    if p == q {
        return 0.0;
    }
    let line = h_line_through(p, q).expect("distinct points");
    delta(p.0, q.0, line.ideal_a, line.ideal_b).ln()
}

/// `OP_h = ln((1 + x)/(1 − x))` for `x = OP`.
pub fn h_dist_from_center(x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(GeoError::OutOfRange(format!("Euclidean radius must lie in [0, 1), got {x}")));
    }
    Ok(((1.0 + x) / (1.0 - x)).ln())
}

/// Inverse of [`h_dist_from_center`]: `x = (e^y − 1)/(e^y + 1)`.
pub fn center_radius_for_h_dist(y: f64) -> Result<f64> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(GeoError::OutOfRange(format!("h-distance must be finite and nonnegative, got {y}")));
    }
    let e = y.exp_m1();
    Ok(e / (e + 2.0))
}

/// h-angle `∠_h PQR`: the signed angle at `Q` between the tangent half-lines
/// of `[QP]_h` and `[QR]_h`.
pub fn h_angle(p: HPoint, q: HPoint, r: HPoint) -> Result<AngleValue> {
    if p == q || r == q {
        return Err(GeoError::DegenerateAngle);
    }
    let tp = h_line_through(q, p)?.tangent_toward(q.0, p.0);
    let tr = h_line_through(q, r)?.tangent_toward(q.0, r.0);
    normalize_angle((tr / tp).arg())
}

/// Reflection of `p` in the h-line `l`.
pub fn h_reflect(l: &HLine, p: HPoint) -> HPoint {
    let z = l.reflect(p.0);
    // Reflection maps the disk onto itself; clamp round-off at the margin.
    HPoint::new(z).unwrap_or(p)
}

/// A motion of the h-plane sending a chosen point to the center of the absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CenteringMotion {
    /// The point already is the center.
    Identity,
    /// Inversion in a circle perpendicular to the absolute.
    Inversion { circle: InversionCircle, point: Complex64 },
}

impl CenteringMotion {
    pub fn circle(&self) -> Option<InversionCircle> {
        match self {
            CenteringMotion::Identity => None,
            CenteringMotion::Inversion { circle, .. } => Some(*circle),
        }
    }

    /// Applies the motion; it is an involution. Ideal points go to ideal points.
    ///
    /// With `P` the moved point, `z ↦ (P/P̄)·(z̄ − P̄)/(P·z̄ − 1)`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match self {
            CenteringMotion::Identity => z,
            CenteringMotion::Inversion { point: p, .. } => {
                let zb = z.conj();
                (p / p.conj()) * (zb - p.conj()) / (p * zb - 1.0)
            }
        }
    }

    pub fn apply_h(&self, p: HPoint) -> HPoint {
        HPoint::new(self.apply(p.0)).unwrap_or(p)
    }

    pub fn apply_line(&self, l: &HLine) -> HLine {
        let (a, b) = (self.apply(l.ideal_a), self.apply(l.ideal_b));
        HLine::from_ideal(a / a.norm(), b / b.norm()).expect("motions keep ideal points distinct")
    }
}

/// The motion sending `p` to the center: inversion in the circle centered at
/// the inverse `p* = p/|p|²` of `p` in the absolute, with radius `√(1 − |p|²)/|p|`.
///
/// That radius is forced by perpendicularity to the absolute
/// (`|p*|² = 1 + ρ²`); the value `1/√(1 − |p|²)` sometimes quoted for this
/// lemma fails that identity.
pub fn move_to_center(p: HPoint) -> CenteringMotion {
    let x = p.0.norm();
    if x == 0.0 {
        return CenteringMotion::Identity;
    }
    CenteringMotion::Inversion {
        circle: InversionCircle {
            center: p.0 / (x * x),
            radius: (1.0 - x * x).sqrt() / x,
        },
        point: p.0,
    }
}

/// Realizes the h-circle of h-radius `rho` about `c` as a Euclidean circle,
/// from its two diametral points on the ray from the origin through `c`.
pub fn h_circle_realize(c: HPoint, rho: f64) -> Result<HCircle> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(GeoError::OutOfRange(format!("h-radius must be positive, got {rho}")));
    }
    let x = c.0.norm();
    let u = if x > 0.0 { c.0 / x } else { Complex64::new(1.0, 0.0) };
    let d0 = h_dist_from_center(x)?;
    let far = center_radius_for_h_dist(d0 + rho)?;
    let near_signed = d0 - rho;
    let near = center_radius_for_h_dist(near_signed.abs())?.copysign(near_signed);
    let euclid = Circle::new(u * (far + near) / 2.0, (far - near) / 2.0)?;
    Ok(HCircle {
        hcenter: c,
        hradius: rho,
        euclid,
    })
}

/// Circumference `2π·sinh ρ` of an h-circle of h-radius `ρ`.
pub fn h_circumference(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(GeoError::OutOfRange(format!("h-radius must be positive, got {rho}")));
    }
    Ok(TAU * rho.sinh())
}

/// Angle of parallelism `φ(h)` at h-distance `h` from a line: the solution of
/// `h = ½·ln((1 + cos φ)/(1 − cos φ))`, evaluated as `φ = 2·atan(e^{−h})`.
pub fn angle_of_parallelism(h: f64) -> Result<AngleValue> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeoError::OutOfRange(format!("distance must be positive, got {h}")));
    }
    normalize_angle(2.0 * (-h).exp().atan())
}

/// Inverse of [`angle_of_parallelism`]: `h = ½·ln((1 + cos φ)/(1 − cos φ))`,
/// evaluated as `−ln tan(φ/2)`.
pub fn parallelism_distance(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(GeoError::OutOfRange(format!("angle must lie in (0, π/2), got {phi}")));
    }
    Ok(-(phi / 2.0).tan().ln())
}

/// Defect `π − (|∠_h QPR| + |∠_h PQR| + |∠_h QRP|)`.
pub fn h_defect(p: HPoint, q: HPoint, r: HPoint, tol: &Tolerances) -> Result<f64> {
    let angles = [h_angle(q, p, r)?, h_angle(p, q, r)?, h_angle(q, r, p)?];
    if angles
        .iter()
        .any(|a| a.abs() <= tol.eps_assert || a.abs() >= PI - tol.eps_assert)
    {
        return Err(GeoError::DegenerateTriangle);
    }
    Ok(PI - angles.iter().map(|a| a.abs()).sum::<f64>())
}

/// Conformal factor `2/(1 − |z|²)` of the h-metric.
pub fn conformal_factor(p: HPoint) -> f64 {
    2.0 / (1.0 - p.0.norm_sqr())
}

/// Foot point of `p` on `l`, computed after moving `p` to the center.
pub fn h_foot(p: HPoint, l: &HLine) -> HPoint {
    let motion = move_to_center(p);
    let moved = motion.apply_line(l);
    match moved.carrier {
        // p lies on l.
        Cline::Line(_) => p,
        Cline::Circle(c) => {
            let m = c.center.norm();
            let x = 1.0 / (m + (m * m - 1.0).sqrt());
            motion.apply_h(HPoint(c.center / m * x))
        }
    }
}

/// h-distance from `p` to the h-line `l`.
pub fn h_dist_to_line(p: HPoint, l: &HLine) -> f64 {
    h_dist(p, h_foot(p, l))
}

/// The h-line through `p` perpendicular to `l`.
pub fn h_perpendicular(p: HPoint, l: &HLine) -> Result<HLine> {
    let motion = move_to_center(p);
    let moved = motion.apply_line(l);
    let (a, b) = match moved.carrier {
        Cline::Line(line) => {
            let d = Complex64::i() * line.direction();
            (d, -d)
        }
        Cline::Circle(c) => {
            let u = c.center / c.center.norm();
            (u, -u)
        }
    };
    let (a, b) = (motion.apply(a), motion.apply(b));
    HLine::from_ideal(a / a.norm(), b / b.norm())
}

/// The h-line through `p` with ideal point `ideal`.
pub fn h_line_to_ideal(p: HPoint, ideal: Complex64) -> Result<HLine> {
    let motion = move_to_center(p);
    let moved = motion.apply(ideal);
    let other = motion.apply(-moved);
    HLine::from_ideal(ideal, other / other.norm())
}

/// The two h-lines through `p` asymptotically parallel to `l` (sharing one
/// ideal point with it): toward `l.ideal_a`, then toward `l.ideal_b`.
pub fn asymptotic_parallels(p: HPoint, l: &HLine, tol: &Tolerances) -> Result<(HLine, HLine)> {
    if l.contains(p, tol.eps_assert) {
        return Err(GeoError::OutOfRange("point lies on the line".into()));
    }
    Ok((h_line_to_ideal(p, l.ideal_a)?, h_line_to_ideal(p, l.ideal_b)?))
}

/// Intersection of two h-lines inside the absolute, if any.
pub fn h_intersection(l: &HLine, m: &HLine, tol: &Tolerances) -> Option<HPoint> {
    intersect_clines(&l.carrier, &m.carrier, tol)
        .into_iter()
        .find_map(|z| HPoint::new(z).ok())
}

/// Smallest distance between an ideal point of `l` and one of `m`.
pub fn shared_ideal_residual(l: &HLine, m: &HLine) -> f64 {
    [
        (l.ideal_a - m.ideal_a).norm(),
        (l.ideal_a - m.ideal_b).norm(),
        (l.ideal_b - m.ideal_a).norm(),
        (l.ideal_b - m.ideal_b).norm(),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    HCircle,
    Horocycle,
    Equidistant,
    HLine,
    Outside,
}

impl CycleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CycleKind::HCircle => "h_circle",
            CycleKind::Horocycle => "horocycle",
            CycleKind::Equidistant => "equidistant",
            CycleKind::HLine => "h_line",
            CycleKind::Outside => "outside",
        }
    }
}

/// What a Euclidean circle looks like from inside the h-plane.
pub fn classify_cycle(g: &Circle, tol: &Tolerances) -> CycleKind {
    let (d, r) = (g.center.norm(), g.radius);
    let s = d + r + 1.0;
    let band = tol.eps_assert * s;
    let crossing = d + r > 1.0 + band && (d - r).abs() < 1.0 - band;
    if crossing {
        if (d * d - 1.0 - r * r).abs() <= tol.eps_assert * s * s {
            CycleKind::HLine
        } else {
            CycleKind::Equidistant
        }
    } else if (d + r - 1.0).abs() <= band {
        CycleKind::Horocycle
    } else if d + r < 1.0 {
        CycleKind::HCircle
    } else {
        CycleKind::Outside
    }
}

/// The h-line sharing its ideal points with an equidistant.
pub fn equidistant_axis(g: &Circle, tol: &Tolerances) -> Result<HLine> {
    if classify_cycle(g, tol) != CycleKind::Equidistant {
        return Err(GeoError::OutOfRange("circle is not an equidistant".into()));
    }
    let pts = intersect_clines(&Cline::Circle(*g), &InversionCircle::unit().as_cline(), tol);
    match pts.as_slice() {
        [a, b] => HLine::from_ideal(*a / a.norm(), *b / b.norm()),
        _ => Err(GeoError::NoIntersection),
    }
}

/// The constant h-distance from an equidistant to its axis.
pub fn equidistant_distance(g: &Circle, tol: &Tolerances) -> Result<f64> {
    let axis = equidistant_axis(g, tol)?;
    let d = g.center.norm();
    let probe = if d > 0.0 { g.center - g.center / d * g.radius } else { g.at_angle(0.0) };
    Ok(h_dist_to_line(HPoint::new(probe)?, &axis))
}

/// `cosh c − cosh a·cosh b` for a triangle with a right angle at `r`, where
/// `c = PQ_h`, `a = QR_h`, `b = RP_h`.
pub fn h_pythagoras_residual(p: HPoint, q: HPoint, r: HPoint, tol: &Tolerances) -> Result<f64> {
    let angle = h_angle(p, r, q)?;
    let off = (angle.abs() - FRAC_PI_2).abs();
    if off > tol.eps_assert {
        return Err(GeoError::NotRightAngle(angle.abs()));
    }
    Ok(h_dist(p, q).cosh() - h_dist(q, r).cosh() * h_dist(r, p).cosh())
}

/// Incircle of the ideal triangle with vertices `a`, `b`, `c` on the absolute.
///
/// A motion takes the vertices to the cube roots of unity; the incenter is the
/// preimage of the center and the radius is its h-distance to a side.
pub fn ideal_triangle_incircle(a: Complex64, b: Complex64, c: Complex64) -> Result<HCircle> {
    let side = HLine::from_ideal(a, b)?;
    HLine::from_ideal(b, c)?;
    HLine::from_ideal(c, a)?;
    let (a, b, c) = (side.ideal_a, side.ideal_b, c / c.norm());
    let w = Complex64::from_polar(1.0, TAU / 3.0);
    let (w1, w2) = if cross(b - a, c - a) > 0.0 { (w, w.conj()) } else { (w.conj(), w) };
    let f = Moebius::from_three_points(a.into(), b.into(), c.into())?;
    let g = Moebius::from_three_points(Complex64::new(1.0, 0.0).into(), w1.into(), w2.into())?;
    let center = f
        .inverse()
        .apply(g.apply(Complex64::new(0.0, 0.0).into()))
        .finite()
        .ok_or(GeoError::Singular)?;
    let center = HPoint::new(center)?;
    h_circle_realize(center, h_dist_to_line(center, &side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::signed_angle;
    use crate::inversive::{clines_perpendicular, invert_point, perpendicular_cline_through, ExtPoint};

    fn hp(x: f64, y: f64) -> HPoint {
        HPoint::from_xy(x, y).unwrap()
    }

    /// Independent closed form: tanh(d/2) = |p − q| / |1 − p̄q|.
    fn oracle_dist(p: HPoint, q: HPoint) -> f64 {
        let t = (p.z() - q.z()).norm() / (Complex64::new(1.0, 0.0) - p.z().conj() * q.z()).norm();
        2.0 * t.atanh()
    }

    #[test]
    fn rejects_points_outside() {
        assert!(matches!(HPoint::from_xy(1.5, 0.0), Err(GeoError::OutsideAbsolute(_))));
        assert!(HPoint::from_xy(1.0, 0.0).is_err());
        assert!(HPoint::from_xy(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn h_line_examples() {
        let l = h_line_through(hp(0.3, 0.0), hp(-0.3, 0.0)).unwrap();
        assert!(l.carrier.as_line().is_some());
        assert!((l.ideal_a - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((l.ideal_b + Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let q = hp(0.2, -0.5);
        let l = h_line_through(HPoint::origin(), q).unwrap();
        let line = l.carrier.as_line().unwrap();
        assert!(line.distance(q.z()) < 1e-15);

        let tol = Tolerances::default();
        let l = h_line_through(hp(0.3, 0.0), hp(0.0, 0.3)).unwrap();
        let oracle = perpendicular_cline_through(
            &InversionCircle::unit(),
            Complex64::new(0.3, 0.0),
            Complex64::new(0.0, 0.3),
            &tol,
        )
        .unwrap();
        let (a, b) = (l.carrier.as_circle().unwrap(), oracle.as_circle().unwrap());
        assert!((a.center - b.center).norm() < 1e-13 && (a.radius - b.radius).abs() < 1e-13);
        assert!(l.carrier.contains(ExtPoint::Finite(Complex64::new(10.0 / 3.0, 0.0)), 1e-13));
        assert!(h_line_through(hp(0.1, 0.1), hp(0.1, 0.1)).is_err());
    }

    #[test]
    fn ideal_points_ordered() {
        let (p, q) = (hp(0.1, 0.4), hp(-0.5, 0.2));
        let l = h_line_through(p, q).unwrap();
        assert!(delta(p.z(), q.z(), l.ideal_a, l.ideal_b) >= 1.0);
        assert!((l.ideal_a - p.z()).norm() < (l.ideal_a - q.z()).norm());
        for z in [l.ideal_a, l.ideal_b] {
            assert!((z.norm() - 1.0).abs() < 1e-15);
            assert!(l.carrier.distance(z) < 1e-14);
        }
    }

    #[test]
    fn h_dist_examples() {
        let p = hp(0.2, 0.3);
        assert_eq!(h_dist(p, p), 0.0);
        assert!((h_dist(HPoint::origin(), hp(0.5, 0.0)) - 3f64.ln()).abs() < 1e-15);
        let q = hp(-0.6, 0.1);
        assert!((h_dist(p, q) - h_dist(q, p)).abs() < 1e-14);
        assert!((h_dist(p, q) - oracle_dist(p, q)).abs() < 1e-12);
    }

    #[test]
    fn center_distance_examples() {
        assert_eq!(h_dist_from_center(0.0).unwrap(), 0.0);
        assert!((h_dist_from_center(0.5).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((center_radius_for_h_dist(3f64.ln()).unwrap() - 0.5).abs() < 1e-15);
        assert!(h_dist_from_center(1.0).is_err());
        assert!(h_dist_from_center(-0.1).is_err());
        assert!(center_radius_for_h_dist(-1.0).is_err());
    }

    #[test]
    fn h_angle_examples() {
        let (p, r) = (hp(0.4, 0.1), hp(-0.2, 0.5));
        let h = h_angle(p, HPoint::origin(), r).unwrap();
        let e = signed_angle(p.z(), Complex64::new(0.0, 0.0), r.z()).unwrap();
        assert!((h.radians() - e.radians()).abs() < 1e-15);

        // Straight angle along an h-line.
        let l = h_line_through(hp(0.3, 0.2), hp(-0.1, 0.6)).unwrap();
        let c = *l.carrier.as_circle().unwrap();
        let on = |t: f64| HPoint::new(c.center + Complex64::from_polar(c.radius, t)).unwrap();
        let base = (l.ideal_a - c.center).arg();
        let end = (l.ideal_b - c.center).arg();
        let span = normalize_angle(end - base).unwrap().radians();
        let (a, b, d) = (on(base + 0.2 * span), on(base + 0.5 * span), on(base + 0.8 * span));
        assert!((h_angle(a, b, d).unwrap().radians().abs() - PI).abs() < 1e-9);

        let q = hp(0.1, -0.3);
        let m = h_line_through(hp(-0.7, 0.2), hp(0.5, 0.6)).unwrap();
        let before = h_angle(p, q, r).unwrap();
        let after = h_angle(h_reflect(&m, p), h_reflect(&m, q), h_reflect(&m, r)).unwrap();
        assert!(before.approx_eq(-after, 1e-12));
        assert!(h_angle(p, p, r).is_err());
    }

    #[test]
    fn reflection_examples() {
        let l = h_line_through(hp(0.3, 0.2), hp(-0.1, 0.6)).unwrap();
        let c = *l.carrier.as_circle().unwrap();
        let on_l = h_foot(HPoint::origin(), &l);
        assert!((h_reflect(&l, on_l).z() - on_l.z()).norm() < 1e-13);

        let real = h_line_through(hp(-0.5, 0.0), hp(0.5, 0.0)).unwrap();
        let p = hp(0.3, 0.4);
        assert!((h_reflect(&real, p).z() - p.z().conj()).norm() < 1e-15);

        let q = hp(-0.2, -0.7);
        let (p2, q2) = (h_reflect(&l, p), h_reflect(&l, q));
        assert!((h_dist(p, q) - h_dist(p2, q2)).abs() < 1e-10);
        assert!((h_reflect(&l, p2).z() - p.z()).norm() < 1e-13);
        // Agrees with plain inversion in the carrier.
        let inv = invert_point(&InversionCircle::from(c), p.z().into()).finite().unwrap();
        assert!((inv - p2.z()).norm() < 1e-13);
    }

    #[test]
    fn move_to_center_examples() {
        let tol = Tolerances::default();
        let m = move_to_center(hp(0.5, 0.0));
        let g = m.circle().unwrap();
        assert!((g.center - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((g.radius - 3f64.sqrt()).abs() < 1e-15);
        assert!((g.center.norm_sqr() - 1.0 - g.radius * g.radius).abs() < 1e-14);
        assert_eq!(
            clines_perpendicular(&g.as_cline(), &InversionCircle::unit().as_cline(), &tol),
            Ok(true)
        );
        let p = hp(-0.3, 0.6);
        let m = move_to_center(p);
        let img = invert_point(&m.circle().unwrap(), p.z().into()).finite().unwrap();
        assert!(img.norm() < 1e-12);
        assert!(m.apply(p.z()).norm() < 1e-15);
        let (a, b) = (hp(0.1, 0.2), hp(-0.4, -0.1));
        assert!((h_dist(a, b) - h_dist(m.apply_h(a), m.apply_h(b))).abs() < 1e-10);
        assert_eq!(move_to_center(HPoint::origin()), CenteringMotion::Identity);
    }

    #[test]
    fn h_circle_examples() {
        let c = h_circle_realize(HPoint::origin(), 3f64.ln()).unwrap();
        assert!(c.euclid.center.norm() < 1e-15);
        assert!((c.euclid.radius - 0.5).abs() < 1e-15);

        let center = hp(0.3, -0.4);
        let rho = 0.8;
        let c = h_circle_realize(center, rho).unwrap();
        // Euclidean center lies on the ray from the origin through the h-center.
        assert!(cross(c.euclid.center, center.z()).abs() < 1e-15);
        assert!((c.euclid.center.conj() * center.z()).re > 0.0);
        for k in 0..50 {
            let q = HPoint::new(c.euclid.at_angle(TAU * k as f64 / 50.0)).unwrap();
            assert!((h_dist(center, q) - rho).abs() < 1e-9);
        }
        assert!(h_circle_realize(center, 0.0).is_err());
        // A radius larger than the distance to the center puts the origin inside.
        let c = h_circle_realize(hp(0.1, 0.0), 2.0).unwrap();
        assert!(c.euclid.center.norm() < c.euclid.radius);
    }

    #[test]
    fn circumference_examples() {
        assert!((h_circumference(3f64.ln()).unwrap() - 8.0 * PI / 3.0).abs() < 1e-14);
        let r = 1e-6;
        assert!((h_circumference(r).unwrap() / (TAU * r) - 1.0).abs() < 1e-10);
        for k in 1..=50 {
            let r = 0.1 * k as f64;
            assert!(h_circumference(r + 1.0).unwrap() > 2.0 * h_circumference(r).unwrap());
        }
        assert!(h_circumference(0.0).is_err());
    }

    #[test]
    fn parallelism_examples() {
        let h = parallelism_distance(PI / 3.0).unwrap();
        assert!((h - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert!((angle_of_parallelism(1e-9).unwrap().radians() - FRAC_PI_2).abs() < 1e-8);
        // Literal half-log form agrees at moderate angles.
        for phi in [0.2, 0.7, 1.2, 1.5] {
            let lit = 0.5 * ((1.0 + f64::cos(phi)) / (1.0 - f64::cos(phi))).ln();
            assert!((parallelism_distance(phi).unwrap() - lit).abs() < 1e-13);
        }
        assert!(angle_of_parallelism(0.0).is_err());
        assert!(parallelism_distance(FRAC_PI_2).is_err());
        assert!(parallelism_distance(0.0).is_err());
    }

    #[test]
    fn defect_examples() {
        let tol = Tolerances::default();
        let (p, q, r) = (hp(0.1, 0.2), hp(-0.5, 0.1), hp(0.3, -0.6));
        assert!(h_defect(p, q, r, &tol).unwrap() > 0.0);
        let g = (p.z() + q.z() + r.z()) / 3.0;
        let s = |z: HPoint| HPoint::new(g + (z.z() - g) * 1e-3).unwrap();
        let tiny = h_defect(s(p), s(q), s(r), &tol).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-4);
        // Collinear triple.
        let l = h_line_through(p, q).unwrap();
        let mid = h_foot(hp(0.0, 0.0), &l);
        assert!(h_defect(p, q, mid, &tol).is_err());
    }

    #[test]
    fn classify_examples() {
        let tol = Tolerances::default();
        let circ = |x: f64, y: f64, r: f64| Circle::new(Complex64::new(x, y), r).unwrap();
        assert_eq!(classify_cycle(&circ(0.0, 0.0, 0.3), &tol), CycleKind::HCircle);
        assert_eq!(classify_cycle(&circ(0.5, 0.0, 0.5), &tol), CycleKind::Horocycle);
        let l = h_line_through(hp(0.3, 0.0), hp(0.0, 0.3)).unwrap();
        assert_eq!(classify_cycle(l.carrier.as_circle().unwrap(), &tol), CycleKind::HLine);
        assert_eq!(classify_cycle(&circ(1.0, 0.0, 0.5), &tol), CycleKind::Equidistant);
        assert_eq!(classify_cycle(&circ(3.0, 0.0, 0.5), &tol), CycleKind::Outside);
        assert_eq!(classify_cycle(&circ(0.0, 0.0, 2.0), &tol), CycleKind::Outside);
        assert_eq!(classify_cycle(&circ(1.5, 0.0, 0.5), &tol), CycleKind::Outside);
    }

    #[test]
    fn conformal_examples() {
        assert_eq!(conformal_factor(HPoint::origin()), 2.0);
        assert!((conformal_factor(hp(0.3, 0.4)) - 8.0 / 3.0).abs() < 1e-15);
        let p = hp(0.3, -0.2);
        let eps = 1e-6;
        let q = HPoint::new(p.z() + Complex64::new(eps * 0.6, eps * 0.8)).unwrap();
        let fd = h_dist(p, q) / eps;
        assert!((fd / conformal_factor(p) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn foot_and_perpendicular() {
        let tol = Tolerances::default();
        let l = h_line_through(hp(0.3, 0.2), hp(-0.1, 0.6)).unwrap();
        let p = hp(-0.4, -0.3);
        let f = h_foot(p, &l);
        assert!(l.contains(f, 1e-12));
        // Foot is the h-midpoint of p and its reflection.
        let p2 = h_reflect(&l, p);
        assert!((h_dist(p, f) - h_dist(p2, f)).abs() < 1e-12);
        // The foot minimizes distance to points of l.
        let d = h_dist(p, f);
        for z in [l.ideal_a * 0.9, l.ideal_b * 0.5] {
            let q = h_foot(HPoint::new(z).unwrap(), &l);
            assert!(h_dist(p, q) >= d - 1e-12);
        }
        let n = h_perpendicular(p, &l).unwrap();
        assert!(n.contains(p, 1e-12) && n.contains(f, 1e-12));
        let hit = h_intersection(&n, &l, &tol).unwrap();
        assert!((hit.z() - f.z()).norm() < 1e-12);
        let ang = h_angle(p, f, h_foot(HPoint::new(l.ideal_a * 0.99).unwrap(), &l)).unwrap();
        assert!((ang.abs() - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn equidistant_distance_constant() {
        let tol = Tolerances::default();
        let g = Circle::new(Complex64::new(0.9, 0.3), 0.7).unwrap();
        assert_eq!(classify_cycle(&g, &tol), CycleKind::Equidistant);
        let axis = equidistant_axis(&g, &tol).unwrap();
        let d0 = equidistant_distance(&g, &tol).unwrap();
        let inside: Vec<HPoint> = (0..400)
            .filter_map(|k| HPoint::new(g.at_angle(TAU * k as f64 / 400.0)).ok())
            .filter(|p| p.z().norm() < 0.99)
            .collect();
        assert!(inside.len() > 10);
        for p in inside {
            assert!((h_dist_to_line(p, &axis) - d0).abs() < 1e-8);
        }
    }

    #[test]
    fn ideal_incircle_radius() {
        let w = |t: f64| Complex64::from_polar(1.0, t);
        for (a, b, c) in [(0.0, TAU / 3.0, 2.0 * TAU / 3.0), (0.3, 1.1, 4.0), (2.0, 0.5, -1.0)] {
            let inc = ideal_triangle_incircle(w(a), w(b), w(c)).unwrap();
            assert!((inc.hradius - 0.5 * 3f64.ln()).abs() < 1e-12, "{a} {b} {c}");
            for (x, y) in [(a, b), (b, c), (c, a)] {
                let side = HLine::from_ideal(w(x), w(y)).unwrap();
                assert!((h_dist_to_line(inc.hcenter, &side) - inc.hradius).abs() < 1e-12);
            }
        }
        let sym = ideal_triangle_incircle(w(0.0), w(TAU / 3.0), w(2.0 * TAU / 3.0)).unwrap();
        assert!(sym.hcenter.z().norm() < 1e-14);
        assert!(ideal_triangle_incircle(w(1.0), w(1.0), w(2.0)).is_err());
    }

    #[test]
    fn pythagoras_example() {
        let tol = Tolerances::default();
        let (p, r) = (hp(0.4, 0.0), HPoint::origin());
        let q = hp(0.0, -0.55);
        assert!(h_pythagoras_residual(p, q, r, &tol).unwrap().abs() < 1e-12);
        assert!(h_pythagoras_residual(p, hp(0.2, 0.3), r, &tol).is_err());
    }
}
