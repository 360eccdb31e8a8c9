use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("quaternion is not unit length (|q| deviates by {0:.3e})")]
    NotUnit(f64),
    #[error("quaternion is not purely imaginary (real part {0:.3e})")]
    NotImaginary(f64),
    #[error("projective point is not isotropic (relative defect {0:.3e})")]
    NotIsotropic(f64),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("tangents are not cotangent (|omega| = {0:.3e})")]
    NotCotangent(f64),
    #[error("matrix does not preserve the indefinite form (defect {0:.3e})")]
    NotConformal(f64),
    #[error("circle is degenerate (a point circle)")]
    DegenerateCircle,
    #[error("bivector is not in the 5-space W (pairing defect {0:.3e})")]
    NotInW(f64),
    #[error("bivector is not null (self-pairing {0:.3e})")]
    NonNull(f64),
    #[error("curve has all-zero coefficients")]
    ZeroCurve,
    #[error("curve does not have degree one (degree {0})")]
    NotDegreeOne(usize),
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("root finding failed: {0}")]
    RootFindingFailed(String),
    #[error("distribution is multi-valued at [{0:.6}, {1:.6}, {2:.6}, {3:.6}] ({4} roots)")]
    MultiValued(f64, f64, f64, f64, usize),
    #[error("tangent field is undefined along the trajectory: {0}")]
    FieldUndefined(String),
    #[error("empty input")]
    EmptyInput,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
