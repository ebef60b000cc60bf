use thiserror::Error;

/// Failure modes shared by every geometric operation in the kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("degenerate angle: vertex coincides with an endpoint")]
    DegenerateAngle,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("coincident points: {0}")]
    Coincident(&'static str),
    #[error("point lies on the boundary line")]
    OnBoundary,
    #[error("identical circles")]
    IdenticalCircles,
    #[error("no intersection")]
    NoIntersection,
    #[error("point outside the absolute: |z| = {0}")]
    OutsideAbsolute(f64),
    #[error("not a unit vector: |v| = {0}")]
    NotUnit(f64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("singular transformation: ad - bc vanishes")]
    Singular,
    #[error("angle at C is not right (cos = {0})")]
    NotRightAngle(f64),
    #[error("invalid tolerances: {0}")]
    InvalidTolerance(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
