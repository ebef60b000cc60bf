//! Angle values modulo 2π, the three coordinate metrics of the plane, and the
//! tolerance policy used by every predicate in the crate.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::Point;

/// An angle measure reduced to the half-open interval (−π, π].
///
/// The straight angle is represented by `π`, never by `−π`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AngleValue(f64);

impl AngleValue {
    pub const ZERO: AngleValue = AngleValue(0.0);
    pub const STRAIGHT: AngleValue = AngleValue(PI);

    pub fn new(radians: f64) -> Result<Self> {
        normalize_angle(radians)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn abs(self) -> f64 {
        self.0.abs()
    }

    /// Equality modulo 2π within `eps`.
    pub fn approx_eq(self, other: AngleValue, eps: f64) -> bool {
        reduce(self.0 - other.0).0.abs() <= eps
    }
}

/// Sum modulo 2π.
impl std::ops::Add for AngleValue {
    type Output = AngleValue;

    fn add(self, other: AngleValue) -> AngleValue {
        reduce(self.0 + other.0)
    }
}

impl std::ops::Neg for AngleValue {
    type Output = AngleValue;

    fn neg(self) -> AngleValue {
        reduce(-self.0)
    }
}

impl fmt::Display for AngleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<AngleValue> for f64 {
    fn from(a: AngleValue) -> f64 {
        a.0
    }
}

fn reduce(x: f64) -> AngleValue {
    let r = x.rem_euclid(TAU);
    // Round-off in the reduction of odd multiples of π must not flip the
    // straight angle over to −π.
    let snap = 4.0 * f64::EPSILON * x.abs().max(1.0);
    if (r - PI).abs() <= snap {
        AngleValue(PI)
    } else if r > PI {
        AngleValue(r - TAU)
    } else {
        AngleValue(r)
    }
}

/// Reduces `x` modulo 2π into (−π, π].
pub fn normalize_angle(x: f64) -> Result<AngleValue> {
    if !x.is_finite() {
        return Err(GeoError::NonFinite("angle"));
    }
    Ok(reduce(x))
}

/// `2·α ≡ 0` holds exactly for the zero and straight angles.
pub fn angle_double_is_zero(alpha: AngleValue, tol: &Tolerances) -> bool {
    reduce(2.0 * alpha.0).0.abs() <= tol.eps_assert
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaneMetric {
    /// Manhattan metric, `|Δx| + |Δy|`.
    D1,
    /// Euclidean metric.
    D2,
    /// Maximum metric, `max(|Δx|, |Δy|)`.
    DInf,
}

pub fn plane_metric(kind: PlaneMetric, a: Point, b: Point) -> f64 {
    let d = b - a;
    match kind {
        PlaneMetric::D1 => d.re.abs() + d.im.abs(),
        PlaneMetric::D2 => d.re.hypot(d.im),
        PlaneMetric::DInf => d.re.abs().max(d.im.abs()),
    }
}

/// Tolerance policy.
///
/// * `eps_eq` — coordinate equality.
/// * `eps_assert` — comparisons of derived measures (angles, distances, residuals).
/// * `eps_degenerate` — collinearity / coincidence discriminants.
///
/// Comparisons against lengths are scaled by the diameter of the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_eq: f64,
    pub eps_assert: f64,
    pub eps_degenerate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_eq: 1e-12,
            eps_assert: 1e-9,
            eps_degenerate: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn new(eps_eq: f64, eps_assert: f64, eps_degenerate: f64) -> Result<Self> {
        let t = Tolerances {
            eps_eq,
            eps_assert,
            eps_degenerate,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_eq, self.eps_assert, self.eps_degenerate];
        if all.iter().any(|e| !e.is_finite() || *e <= 0.0) {
            return Err(GeoError::InvalidTolerance(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if !(self.eps_degenerate <= self.eps_eq && self.eps_eq <= self.eps_assert) {
            return Err(GeoError::InvalidTolerance(format!(
                "expected eps_degenerate <= eps_eq <= eps_assert, got {} / {} / {}",
                self.eps_degenerate, self.eps_eq, self.eps_assert
            )));
        }
        Ok(())
    }

    /// Sets one field by its short or long key (`eq`/`eps_eq`, `assert`/`eps_assert`,
    /// `degenerate`/`eps_degenerate`) without validating the ordering.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "eq" | "eps_eq" => self.eps_eq = value,
            "assert" | "eps_assert" => self.eps_assert = value,
            "degenerate" | "eps_degenerate" => self.eps_degenerate = value,
            other => {
                return Err(GeoError::InvalidTolerance(format!(
                    "unknown tolerance key `{other}`"
                )))
            }
        }
        Ok(())
    }

    /// Parses a `key = value` config, one entry per line, `#` comments allowed.
    /// Keys not present keep their default.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut tol = Tolerances::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                GeoError::InvalidTolerance(format!("line {}: expected key=value", idx + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                GeoError::InvalidTolerance(format!("line {}: bad number `{}`", idx + 1, value.trim()))
            })?;
            tol.set(key.trim(), value)?;
        }
        tol.validate()?;
        Ok(tol)
    }

    /// Length band for inputs whose bounding box has diameter `scale`.
    pub fn assert_band(&self, scale: f64) -> f64 {
        if scale > 0.0 {
            self.eps_assert * scale
        } else {
            self.eps_assert
        }
    }
}

/// Diameter of the axis-aligned bounding box of `pts`.
pub fn bbox_diameter(pts: &[Point]) -> f64 {
    if pts.is_empty() {
        return 0.0;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    (x1 - x0).hypot(y1 - y0)
}
