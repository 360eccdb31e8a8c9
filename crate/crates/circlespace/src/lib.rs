//! Oriented circles in the 3-sphere.
//!
//! This crate models the conformal geometry of circles in the unit 3-sphere
//! through two quadrics:
//!
//! * the real quadric `Q` in complex projective 3-space, canonically the
//!   bundle of oriented tangent directions of the 3-sphere, and
//! * the complex 3-quadric of null lines in a 5-space `W` of symplectically
//!   null bivectors, whose points are the oriented circles (real points being
//!   the degenerate "point circles").
//!
//! On top of the two models sit: incidence and tangency predicates, circle
//! construction and parametrization, the conformal group action on both
//! quadrics, polynomial curves of circles with degree and fibration-validity
//! analysis, a normal-form algorithm carrying any degree-one fibration curve
//! to the standard one, and foliation synthesis from algebraic surfaces with
//! a leaf integrator and a numerical conformality test.
//!
//! Bulk sweeps (validation sampling, leaf integration, batch normalization)
//! run data-parallel under the `parallel` feature (on by default); disabling
//! it yields a dependency-light sequential build.

pub mod circle;
pub mod error;
pub mod fibration;
pub mod json;
pub mod linalg;
pub mod moebius;
pub mod par;
pub mod poly;
pub mod proj;
pub mod quat;
pub mod rng;
pub mod tangent;
pub mod tol;

pub use circle::{
    canonical_real_basis, circle_from_tangents, circle_point_at, circle_through_points,
    is_incident, parametrize_circle, point_circle, sigma, Bivector, CircleRep, RealBasis, G,
};
pub use error::{Error, Result};
pub use fibration::{
    curve_degree, fit_curve_from_circles, hopf_curve, incidence_polynomial, integrate_leaf,
    leaf_is_circle, normalize_curve, surface_distribution, validate_fibration, FibrationCurve,
    Leaf, MoebiusCP1, Normalization, SurfaceSpec, ValidationReport,
};
pub use moebius::{
    act_on_line, act_on_point, act_on_tangent, check_conformal, induced_on_w, random_conformal,
    ConformalMap, WIsometry,
};
pub use proj::{
    fiber_basis, hpoint_to_s3, is_in_q, is_in_s3, twistor_project, HPoint, ProjPoint, S3Point,
};
pub use quat::{eval_forms, from_c4, to_c4, CVector4, FormValues, QVector2, Quaternion};
pub use tangent::{
    conformality_residual, cross, line_to_tangent, tangent_to_line, FieldFn, HopfField,
    TangentField, UnitTangent,
};
pub use tol::Tolerances;
