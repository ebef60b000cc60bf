//! Plane geometry kernel: Euclidean, inversive, hyperbolic (Poincaré disk and
//! Klein models) and spherical constructions, plus a small construction-script
//! language with an evaluator and SVG renderer.
//!
//! Points of the plane are complex numbers ([`Point`]). The hyperbolic models
//! use the unit circle as the absolute.

pub mod error;
pub mod euclid;
pub mod inversive;
pub mod klein;
pub mod moebius;
pub mod numerics;
pub mod poincare;
pub mod script;
pub mod spherical;

pub use num_complex::Complex64;

/// A point of the Euclidean plane, identified with its complex coordinate.
pub type Point = Complex64;

pub use error::{GeoError, Result};
pub use euclid::{Circle, Line, Tangency, Triangle};
pub use inversive::{Cline, ExtPoint, InversionCircle};
pub use klein::KPoint;
pub use moebius::{Elementary, Moebius};
pub use numerics::{AngleValue, PlaneMetric, Tolerances};
pub use poincare::{HCircle, HLine, HPoint};
pub use spherical::{GreatCircle, SPoint};
