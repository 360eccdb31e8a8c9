//! Polynomial curves of circles, fibration analysis, the normal-form
//! algorithm, and foliation synthesis from algebraic surfaces.

mod curve;
mod fit;
mod flow;
mod normalize;
mod surface;

pub use curve::{
    curve_degree, hopf_curve, incidence_polynomial, pushforward, reparametrize,
    validate_fibration, FailureKind, FibrationCurve, SampleFailure, ValidationReport,
};
pub use fit::fit_curve_from_circles;
pub use flow::{circle_for_leaf, integrate_leaf, leaf_is_circle, Leaf};
pub use normalize::{normalize_curve, MoebiusCP1, Normalization};
pub use surface::{surface_distribution, SurfaceField, SurfaceSpec};
