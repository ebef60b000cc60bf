//! Fractional-linear transformations `z ↦ (a·z + b)/(c·z + d)` of the extended
//! complex plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::inversive::ExtPoint;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficients are kept unnormalized; two transformations are the same map
/// when their coefficient vectors are proportional (see [`Moebius::projectively_eq`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

/// Elementary transformations: every Möbius map is a composition of these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Elementary {
    /// `z ↦ z + w`
    Shift(Complex64),
    /// `z ↦ w·z`, `w ≠ 0`
    Scale(Complex64),
    /// `z ↦ 1/z`
    Reciprocal,
}

impl Elementary {
    pub fn to_moebius(self) -> Moebius {
        match self {
            Elementary::Shift(w) => Moebius::raw(ONE, w, ZERO, ONE),
            Elementary::Scale(w) => Moebius::raw(w, ZERO, ZERO, ONE),
            Elementary::Reciprocal => Moebius::raw(ZERO, ONE, ONE, ZERO),
        }
    }

    pub fn apply(self, z: ExtPoint) -> ExtPoint {
        self.to_moebius().apply(z)
    }
}

impl Moebius {
    /// Validates `|ad − bc| > eps_degenerate·max(|a|,|b|,|c|,|d|)²`.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|z| z.is_finite()) {
            return Err(GeoError::NonFinite("Möbius coefficient"));
        }
        let m = Moebius::raw(a, b, c, d);
        let big = [a, b, c, d].iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m.det().norm() <= 1e-12 * big * big {
            return Err(GeoError::Singular);
        }
        Ok(m)
    }

    fn raw(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Moebius { a, b, c, d }
    }

    pub fn identity() -> Self {
        Moebius::raw(ONE, ZERO, ZERO, ONE)
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Evaluates with `f(−d/c) = ∞`, `f(∞) = a/c`, and `f(∞) = ∞` when `c = 0`.
    pub fn apply(&self, z: ExtPoint) -> ExtPoint {
        match z {
            ExtPoint::Infinity => {
                if self.c == ZERO {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(self.a / self.c)
                }
            }
            ExtPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == ZERO {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (u, v) = (self, other);
        Moebius::raw(
            u.a * v.a + u.b * v.c,
            u.a * v.b + u.b * v.d,
            u.c * v.a + u.d * v.c,
            u.c * v.b + u.d * v.d,
        )
    }

    pub fn inverse(&self) -> Moebius {
        Moebius::raw(self.d, -self.b, -self.c, self.a)
    }

    /// Splits the map into elementary steps, first step first.
    ///
    /// For `c ≠ 0`: shift by `d/c`, reciprocal, scale by `−(ad − bc)/c²`,
    /// shift by `a/c`. For `c = 0`: scale by `a/d`, shift by `b/d`.
    pub fn decompose_elementary(&self) -> Vec<Elementary> {
        let Moebius { a, b, c, d } = *self;
        if c == ZERO {
            vec![Elementary::Scale(a / d), Elementary::Shift(b / d)]
        } else {
            vec![
                Elementary::Shift(d / c),
                Elementary::Reciprocal,
                Elementary::Scale(-self.det() / (c * c)),
                Elementary::Shift(a / c),
            ]
        }
    }

    /// Composes a chain of elementary steps given first-step-first.
    pub fn from_elementary(chain: &[Elementary]) -> Moebius {
        chain
            .iter()
            .fold(Moebius::identity(), |acc, e| e.to_moebius().compose(&acc))
    }

    /// The unique map sending `z0 ↦ 0`, `z1 ↦ 1`, `zinf ↦ ∞`:
    /// `f(z) = ((z1 − z∞)(z − z0)) / ((z1 − z0)(z − z∞))`, with the limit
    /// taken algebraically when one argument is infinity.
    pub fn from_three_points(z0: ExtPoint, z1: ExtPoint, zinf: ExtPoint) -> Result<Moebius> {
        let pts = [z0, z1, zinf];
        for i in 0..3 {
            for j in (i + 1)..3 {
                if pts[i] == pts[j] {
                    return Err(GeoError::Coincident("three-point map needs distinct points"));
                }
            }
        }
        let m = match (z0, z1, zinf) {
            (ExtPoint::Infinity, ExtPoint::Finite(z1), ExtPoint::Finite(zi)) => {
                Moebius::raw(ZERO, z1 - zi, ONE, -zi)
            }
            (ExtPoint::Finite(z0), ExtPoint::Infinity, ExtPoint::Finite(zi)) => {
                Moebius::raw(ONE, -z0, ONE, -zi)
            }
            (ExtPoint::Finite(z0), ExtPoint::Finite(z1), ExtPoint::Infinity) => {
                Moebius::raw(ONE, -z0, ZERO, z1 - z0)
            }
            (ExtPoint::Finite(z0), ExtPoint::Finite(z1), ExtPoint::Finite(zi)) => {
                let (k, l) = (z1 - zi, z1 - z0);
                Moebius::raw(k, -(k * z0), l, -(l * zi))
            }
            _ => unreachable!("at most one argument can be infinity"),
        };
        Ok(m)
    }

    /// Same map up to a common nonzero factor of the coefficients.
    pub fn projectively_eq(&self, other: &Moebius, eps: f64) -> bool {
        let u = self.coefficients();
        let v = other.coefficients();
        let k = (0..4)
            .max_by(|&i, &j| u[i].norm().total_cmp(&u[j].norm()))
            .unwrap_or(0);
        if v[k] == ZERO {
            return false;
        }
        let lambda = v[k] / u[k];
        let big = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        (0..4).all(|i| (v[i] - lambda * u[i]).norm() <= eps * big)
    }
}

/// Image of `z` under the map of [`Moebius::from_three_points`] for finite
/// anchors, evaluated in the factored form so that `z0`, `z1` and `zinf` land
/// on exactly `0`, `1` and `∞`.
pub fn three_point_apply(z0: Complex64, z1: Complex64, zinf: Complex64, z: ExtPoint) -> Result<ExtPoint> {
    Moebius::from_three_points(z0.into(), z1.into(), zinf.into())?;
    let (k, l) = (z1 - zinf, z1 - z0);
    let z = match z {
        ExtPoint::Infinity => return Ok(ExtPoint::Finite(k / l)),
        ExtPoint::Finite(z) => z,
    };
    // At z = z1 both products are (z1 − z∞)(z1 − z0) up to operand order.
    let (num, den) = (k * (z - z0), l * (z - zinf));
    if den == ZERO {
        return Ok(ExtPoint::Infinity);
    }
    Ok(ExtPoint::Finite(num / den))
}

/// `(u, v; w, z) = (u−w)(v−z) / ((v−w)(u−z))`.
///
/// A factor containing infinity cancels against its partner (`∞/∞ = 1`), e.g.
/// `(u, v; w, ∞) = (u−w)/(v−w)`.
pub fn complex_cross_ratio(u: ExtPoint, v: ExtPoint, w: ExtPoint, z: ExtPoint) -> Result<Complex64> {
    let pts = [u, v, w, z];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(GeoError::Coincident("cross-ratio needs four distinct points"));
            }
        }
    }
    use ExtPoint::{Finite as F, Infinity as I};
    Ok(match (u, v, w, z) {
        (I, F(v), F(w), F(z)) => (v - z) / (v - w),
        (F(u), I, F(w), F(z)) => (u - w) / (u - z),
        (F(u), F(v), I, F(z)) => (v - z) / (u - z),
        (F(u), F(v), F(w), I) => (u - w) / (v - w),
        (F(u), F(v), F(w), F(z)) => (u - w) * (v - z) / ((v - w) * (u - z)),
        _ => unreachable!("at most one argument can be infinity"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }
    fn f(x: f64, y: f64) -> ExtPoint {
        ExtPoint::Finite(c(x, y))
    }

    #[test]
    fn apply_examples() {
        let id = Moebius::identity();
        assert_eq!(id.apply(f(0.3, -2.0)), f(0.3, -2.0));
        let recip = Elementary::Reciprocal.to_moebius();
        assert_eq!(recip.apply(f(0.0, 0.0)), ExtPoint::Infinity);
        assert_eq!(recip.apply(ExtPoint::Infinity), f(0.0, 0.0));
        let m = Moebius::new(ONE, ZERO, ONE, -ONE).unwrap();
        assert_eq!(m.apply(f(1.0, 0.0)), ExtPoint::Infinity);
        assert_eq!(m.apply(ExtPoint::Infinity), f(1.0, 0.0));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(Moebius::new(ONE, ONE, ONE, ONE), Err(GeoError::Singular));
        assert!(Moebius::new(c(f64::NAN, 0.0), ONE, ZERO, ONE).is_err());
    }

    #[test]
    fn inverse_examples() {
        let w = c(0.7, -1.2);
        let t = Elementary::Shift(w).to_moebius();
        assert!(t.inverse().projectively_eq(&Elementary::Shift(-w).to_moebius(), 1e-15));
        let r = Elementary::Reciprocal.to_moebius();
        let z = f(0.4, 0.9);
        assert!(r.apply(r.apply(z)).approx_eq(z, 1e-15));
        assert!(r.inverse().projectively_eq(&r, 0.0));
        assert!(Moebius::identity().inverse().projectively_eq(&Moebius::identity(), 0.0));
    }

    #[test]
    fn compose_with_identity() {
        let m = Moebius::new(c(1.0, 2.0), c(-0.5, 0.0), c(0.3, 0.3), c(2.0, -1.0)).unwrap();
        assert!(Moebius::identity().compose(&m).projectively_eq(&m, 1e-15));
        assert!(m.compose(&Moebius::identity()).projectively_eq(&m, 1e-15));
    }

    #[test]
    fn decompose_translation() {
        let m = Moebius::new(ONE, c(2.0, 0.0), ZERO, ONE).unwrap();
        assert_eq!(
            m.decompose_elementary(),
            vec![Elementary::Scale(ONE), Elementary::Shift(c(2.0, 0.0))]
        );
        let r = Moebius::new(ZERO, ONE, ONE, ZERO).unwrap();
        let chain = r.decompose_elementary();
        assert_eq!(chain.len(), 4);
        assert!(Moebius::from_elementary(&chain).projectively_eq(&r, 1e-15));
    }

    #[test]
    fn three_points_identity() {
        let m = Moebius::from_three_points(f(0.0, 0.0), f(1.0, 0.0), ExtPoint::Infinity).unwrap();
        assert!(m.projectively_eq(&Moebius::identity(), 0.0));
        assert!(Moebius::from_three_points(f(0.0, 0.0), f(0.0, 0.0), ExtPoint::Infinity).is_err());
    }

    #[test]
    fn three_points_with_infinity_anywhere() {
        let (a, b) = (f(0.5, 0.5), f(-1.0, 2.0));
        for (z0, z1, zi) in [
            (ExtPoint::Infinity, a, b),
            (a, ExtPoint::Infinity, b),
            (a, b, ExtPoint::Infinity),
        ] {
            let m = Moebius::from_three_points(z0, z1, zi).unwrap();
            assert_eq!(m.apply(z0), f(0.0, 0.0));
            assert!(m.apply(z1).approx_eq(f(1.0, 0.0), 1e-15));
            assert_eq!(m.apply(zi), ExtPoint::Infinity);
        }
    }

    #[test]
    fn three_point_apply_is_exact() {
        use ExtPoint::Finite as F;
        let pts = [c(0.2, 0.3), c(1.0, -1.0), c(-0.5, 2.0), c(1e-3, 7.25), c(-3.1, -0.9)];
        for &z0 in &pts {
            for &z1 in &pts {
                for &zi in &pts {
                    if z0 == z1 || z1 == zi || z0 == zi {
                        continue;
                    }
                    assert_eq!(three_point_apply(z0, z1, zi, F(z0)).unwrap(), F(ZERO));
                    assert_eq!(three_point_apply(z0, z1, zi, F(z1)).unwrap(), F(ONE));
                    assert_eq!(three_point_apply(z0, z1, zi, F(zi)).unwrap(), ExtPoint::Infinity);
                    let m = Moebius::from_three_points(F(z0), F(z1), F(zi)).unwrap();
                    let probe = c(0.4, -0.6);
                    assert!(three_point_apply(z0, z1, zi, F(probe)).unwrap().approx_eq(m.apply(F(probe)), 1e-12));
                }
            }
        }
    }

    #[test]
    fn cross_ratio_examples() {
        let (u, v, w) = (c(0.3, 1.0), c(-2.0, 0.5), c(1.0, -1.0));
        let r = complex_cross_ratio(u.into(), v.into(), w.into(), ExtPoint::Infinity).unwrap();
        assert!((r - (u - w) / (v - w)).norm() < 1e-15);
        let r = complex_cross_ratio(f(0.0, 0.0), f(2.0, 0.0), f(1.0, 0.0), ExtPoint::Infinity).unwrap();
        assert_eq!(r, c(-1.0, 0.0));
        assert!(complex_cross_ratio(f(0.0, 0.0), f(0.0, 0.0), f(1.0, 0.0), f(2.0, 0.0)).is_err());
    }

    #[test]
    fn cross_ratio_infinity_is_a_limit() {
        // Each infinite slot agrees with a far-away finite surrogate.
        let pts = [c(0.3, 1.0), c(-2.0, 0.5), c(1.0, -1.0), c(0.1, 0.2)];
        let far = c(3e7, 4e7);
        for slot in 0..4 {
            let mut exact = pts.map(ExtPoint::Finite);
            let mut approx = pts;
            exact[slot] = ExtPoint::Infinity;
            approx[slot] = far;
            let e = complex_cross_ratio(exact[0], exact[1], exact[2], exact[3]).unwrap();
            let a = complex_cross_ratio(approx[0].into(), approx[1].into(), approx[2].into(), approx[3].into())
                .unwrap();
            assert!((e - a).norm() < 1e-6 * e.norm().max(1.0), "slot {slot}");
        }
    }
}
