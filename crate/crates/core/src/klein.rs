//! The Klein model and Bolyai's construction of asymptotic parallels.
//!
//! A Poincaré point at Euclidean distance `x` from the center corresponds to
//! the Klein point at distance `2x/(1 + x²)` in the same direction: lift the
//! point to the sphere stereographically from the South Pole, then drop it
//! vertically back to the plane. (The form `2x/(1 − x²)` exceeds 1 for
//! `x > √2 − 1` and does not preserve the disk.)

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::euclid::{foot_point, Circle, Line};
use crate::inversive::{intersect_clines, Cline};
use crate::numerics::Tolerances;
use crate::poincare::{
    h_circle_realize, h_dist, h_foot, h_line_through, h_perpendicular, move_to_center, HCircle,
    HLine, HPoint, ABSOLUTE_MARGIN,
};
use crate::Point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KPoint(Complex64);

impl KPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !z.is_finite() {
            return Err(GeoError::NonFinite("Klein point"));
        }
        let r = z.norm();
        if r >= 1.0 - ABSOLUTE_MARGIN {
            return Err(GeoError::OutsideAbsolute(r));
        }
        Ok(KPoint(z))
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        KPoint::new(Complex64::new(x, y))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }
}

/// `P ↦ P̂`: `z ↦ 2z/(1 + |z|²)`.
pub fn poincare_to_klein(p: HPoint) -> KPoint {
    let z = p.z();
    KPoint(z * (2.0 / (1.0 + z.norm_sqr())))
}

/// Inverse of [`poincare_to_klein`]: `k ↦ k/(1 + √(1 − |k|²))`.
pub fn klein_to_poincare(k: KPoint) -> HPoint {
    let z = k.0;
    HPoint::new(z / (1.0 + (1.0 - z.norm_sqr()).sqrt())).expect("image of the open disk")
}

/// `½·|ln(AQ·BP/(QB·PA))|` where `A`, `B` are the ends of the chord through `P`, `Q`.
pub fn klein_dist(p: KPoint, q: KPoint) -> f64 {
    if p == q {
        return 0.0;
    }
    let (a, b) = chord_ends(p.0, q.0);
    let ratio = (a - q.0).norm() * (b - p.0).norm() / ((q.0 - b).norm() * (p.0 - a).norm());
    0.5 * ratio.ln().abs()
}

/// Ends of the chord of the unit circle along the line through `p` and `q`.
fn chord_ends(p: Point, q: Point) -> (Point, Point) {
    let d = (q - p) / (q - p).norm();
    // |p + t·d|² = 1  ⇒  t² + 2·t·Re(p·d̄) + |p|² − 1 = 0.
    let h = (p * d.conj()).re;
    let c = p.norm_sqr() - 1.0;
    let s = (h * h - c).sqrt();
    // Roots without cancellation: t₁ = −h − sign(h)·s, t₂ = c / t₁.
    let t1 = if h >= 0.0 { -h - s } else { -h + s };
    let t2 = c / t1;
    let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
    (p + d * lo, p + d * hi)
}

/// Every intermediate object of Bolyai's construction, in the Poincaré model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BolyaiConstruction {
    /// Foot of `P` on `l`.
    pub q: HPoint,
    /// `(PQ)_h`.
    pub m: HLine,
    /// Perpendicular to `m` at `P`.
    pub n: HLine,
    /// h-circle about `Q` through `P`.
    pub gamma1: HCircle,
    /// A point of `gamma1 ∩ l`.
    pub r: HPoint,
    /// Perpendicular to `n` through `R`.
    pub k: HLine,
    /// h-circle about `P` with h-radius `PQ_h`.
    pub gamma2: HCircle,
    /// The two points of `gamma2 ∩ k`.
    pub t: [HPoint; 2],
    /// `(PT₁)_h` and `(PT₂)_h`.
    pub lines: [HLine; 2],
}

impl BolyaiConstruction {
    pub fn qr(&self) -> f64 {
        h_dist(self.q, self.r)
    }

    /// `PT_h` for both intersection points.
    pub fn pt(&self) -> [f64; 2] {
        let p = self.gamma2.hcenter;
        [h_dist(p, self.t[0]), h_dist(p, self.t[1])]
    }
}

/// Runs the six steps of Bolyai's construction for the line `l` and the
/// point `p ∉ l`.
///
/// The steps run after moving `p` to the center, where `gamma2` is a circle
/// about the origin; results are moved back.
pub fn bolyai_construct(l: &HLine, p: HPoint, tol: &Tolerances) -> Result<BolyaiConstruction> {
    if l.contains(p, tol.eps_assert) {
        return Err(GeoError::OutOfRange("point lies on the line".into()));
    }
    let motion = move_to_center(p);
    let l0 = motion.apply_line(l);
    let p0 = HPoint::origin();

    let q0 = h_foot(p0, &l0);
    let m0 = h_line_through(p0, q0)?;
    let n0 = h_perpendicular(p0, &m0)?;
    let rho = h_dist(p0, q0);

    let g1 = h_circle_realize(q0, rho)?;
    let mut on_l = inside(intersect_clines(&Cline::Circle(g1.euclid), &l0.carrier, tol));
    on_l.sort_by(|a, b| {
        (a.z() - l0.ideal_a)
            .norm()
            .total_cmp(&(b.z() - l0.ideal_a).norm())
    });
    let r0 = *on_l.first().ok_or(GeoError::NoIntersection)?;

    let k0 = h_perpendicular(r0, &n0)?;
    let g2 = h_circle_realize(p0, rho)?;
    let on_k = inside(intersect_clines(&Cline::Circle(g2.euclid), &k0.carrier, tol));
    let [t1, t2] = on_k[..] else {
        return Err(GeoError::NoIntersection);
    };

    let back = |h: HPoint| motion.apply_h(h);
    let (q, r, t1, t2) = (back(q0), back(r0), back(t1), back(t2));
    Ok(BolyaiConstruction {
        q,
        m: motion.apply_line(&m0),
        n: motion.apply_line(&n0),
        gamma1: h_circle_realize(q, rho)?,
        r,
        k: motion.apply_line(&k0),
        gamma2: h_circle_realize(p, rho)?,
        t: [t1, t2],
        lines: [h_line_through(p, t1)?, h_line_through(p, t2)?],
    })
}

fn inside(pts: Vec<Point>) -> Vec<HPoint> {
    pts.into_iter().filter_map(|z| HPoint::new(z).ok()).collect()
}

/// The same six steps in the Euclidean plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EuclidBolyai {
    pub q: Point,
    pub r: Point,
    pub k: Line,
    pub gamma2: Circle,
    /// `gamma2 ∩ k`; a single point since `gamma2` touches `k`.
    pub t: Vec<Point>,
}

pub fn bolyai_euclidean(l: &Line, p: Point, tol: &Tolerances) -> Result<EuclidBolyai> {
    let q = foot_point(p, l);
    let rho = (p - q).norm();
    if rho <= tol.eps_degenerate * p.norm().max(1.0) {
        return Err(GeoError::OutOfRange("point lies on the line".into()));
    }
    // Γ1 about Q through P meets l at Q ± ρ·dir; take the forward one.
    let r = q + l.direction() * rho;
    // n ⟂ (PQ) at P, so k ⟂ n through R is parallel to (PQ).
    let k = Line::new(r, q - p)?;
    let gamma2 = Circle::new(p, rho)?;
    let t = intersect_clines(&Cline::Circle(gamma2), &Cline::Line(k), tol);
    Ok(EuclidBolyai { q, r, k, gamma2, t })
}
