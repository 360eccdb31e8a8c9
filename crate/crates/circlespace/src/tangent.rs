//! The bijection between unit tangent vectors of the 3-sphere and points of
//! the quadric Q, the oriented cross product on tangent spaces, and a
//! finite-difference conformality test for unit tangent fields.

use crate::error::{Error, Result};
use crate::proj::{is_in_q, ProjPoint, S3Point};
use crate::quat::{from_c4, sphere_rep, to_c4, Quaternion, Q_I, Q_J};
use crate::tol::Tolerances;

/// A unit tangent vector of the 3-sphere in left-translated form: the actual
/// tangent vector at `x` is `x·mu` with `mu` purely imaginary of length one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTangent {
    pub x: S3Point,
    pub mu: Quaternion,
}

impl UnitTangent {
    pub fn new(x: S3Point, mu: Quaternion) -> Result<Self> {
        crate::quat::check_imaginary(mu)?;
        crate::quat::check_unit(mu)?;
        Ok(UnitTangent { x, mu })
    }

    /// The tangent vector in the ambient 4-space.
    pub fn vector(&self) -> Quaternion {
        self.x.quaternion() * self.mu
    }
}

/// A unit tangent field on the 3-sphere; evaluation may fail where the field
/// is undefined. Implementations must be re-entrant.
pub trait TangentField: Sync {
    fn eval(&self, x: &S3Point) -> Result<UnitTangent>;
}

/// Wraps a closure as a field.
pub struct FieldFn<F>(pub F);

impl<F> TangentField for FieldFn<F>
where
    F: Fn(&S3Point) -> Result<UnitTangent> + Sync,
{
    fn eval(&self, x: &S3Point) -> Result<UnitTangent> {
        (self.0)(x)
    }
}

/// The field of the standard circle fibration: `T(x) = x·i`.
pub struct HopfField;

impl TangentField for HopfField {
    fn eval(&self, x: &S3Point) -> Result<UnitTangent> {
        UnitTangent::new(*x, Q_I)
    }
}

/// Solves `mu·lambda = lambda·i` for the complex line through `(x,1)·lambda`.
///
/// `lambda = mu + i` is a solution away from `mu = -i`, but the sum cancels
/// catastrophically near the branch point. There the equation is conjugated
/// by `j` (which negates the `i` and `k` parts of `mu`) and solved in the
/// well-conditioned hemisphere: `lambda = j·(mu' + i)`. At `mu = -i` this is
/// the line of `j` itself; the two branches agree exactly where they meet.
fn lambda_for(mu: Quaternion) -> Quaternion {
    if mu.x > 0.0 {
        mu + Q_I
    } else {
        let mu_conj = Quaternion::new(0.0, -mu.x, mu.y, -mu.z);
        Q_J * (mu_conj + Q_I)
    }
}

/// The point of Q corresponding to a unit tangent vector.
pub fn tangent_to_line(t: &UnitTangent) -> Result<ProjPoint> {
    let lambda = lambda_for(t.mu);
    let rep = to_c4(sphere_rep(t.x.quaternion()).scale(lambda));
    ProjPoint::new(rep)
}

/// Inverse of [`tangent_to_line`]: recovers base point and direction from a
/// point of Q.
pub fn line_to_tangent(e: &ProjPoint) -> Result<UnitTangent> {
    let rep = e.rep();
    let h = rep.herm(rep).norm() / rep.norm_sqr();
    if !is_in_q(e) {
        return Err(Error::NotIsotropic(h));
    }
    let u = from_c4(rep);
    // u = (x,1)·lambda with lambda = u2; both slots have equal norm on Q
    let lambda = u.q2;
    let lambda_inv = lambda.inverse()?;
    let x = S3Point::project(u.q1 * lambda_inv)?;
    let mu = lambda * Q_I * lambda_inv;
    UnitTangent::new(x, mu.im().normalized()?)
}

/// Oriented cross product on the tangent space at `x`: left-translate to the
/// imaginary quaternions, take the imaginary part of the product, translate
/// back.
pub fn cross(x: &S3Point, a: Quaternion, b: Quaternion) -> Result<Quaternion> {
    let tol = Tolerances::global().unit.sqrt();
    let xq = x.quaternion();
    if a.dot(xq).abs() > tol * (1.0 + a.norm()) || b.dot(xq).abs() > tol * (1.0 + b.norm()) {
        return Err(Error::DegenerateInput(
            "cross product arguments must be tangent at the base point".into(),
        ));
    }
    let xi = xq.conj(); // inverse of a unit quaternion
    let alpha = xi * a;
    let beta = xi * b;
    Ok(xq * (alpha * beta).im())
}

/// Geodesic step `x·exp(s·x^{-1}·v)` for a tangent vector `v` at `x`.
fn geodesic(x: &S3Point, v: Quaternion, s: f64) -> S3Point {
    let xq = x.quaternion();
    let alpha = (xq.conj() * v).im();
    S3Point::project(xq * (alpha * s).exp_imaginary()).expect("unit by construction")
}

/// Levi-Civita derivative of the field along direction `v` at `x` by central
/// differences with tangential projection.
fn covariant_derivative<T: TangentField + ?Sized>(
    field: &T,
    x: &S3Point,
    v: Quaternion,
    h: f64,
) -> Result<Quaternion> {
    let xp = geodesic(x, v, h);
    let xm = geodesic(x, v, -h);
    let tp = field.eval(&xp)?.vector();
    let tm = field.eval(&xm)?.vector();
    let d = (tp - tm) / (2.0 * h);
    let xq = x.quaternion();
    Ok(d - xq * d.dot(xq))
}

/// Conformality defect of a unit tangent field at `x`.
///
/// Measures `max ‖T×∇_X T − ∇_{T×X} T‖` over an orthonormal pair `X, T×X`
/// perpendicular to the field; the value is O(h²) plus the conformality
/// defect of the underlying foliation.
pub fn conformality_residual<T: TangentField + ?Sized>(
    field: &T,
    x: &S3Point,
    h: f64,
) -> Result<f64> {
    let t0 = field.eval(x)?;
    if t0.x.distance(x) > 1e-9 {
        return Err(Error::DegenerateInput(
            "field evaluation returned a different base point".into(),
        ));
    }
    let tv = t0.vector();
    let xq = x.quaternion();

    // pick X unit, tangent at x, orthogonal to T
    let mut xdir = None;
    for cand in [xq * Q_I, xq * Q_J, xq * crate::quat::Q_K] {
        let mut c = cand - xq * cand.dot(xq) - tv * cand.dot(tv);
        let n = c.norm();
        if n > 0.3 {
            c = c / n;
            xdir = Some(c);
            break;
        }
    }
    let xdir = xdir.ok_or_else(|| {
        Error::DegenerateInput("could not build a tangent frame orthogonal to the field".into())
    })?;
    let jx = cross(x, tv, xdir)?;

    let mut worst = 0.0f64;
    for (a, ja) in [(xdir, jx), (jx, cross(x, tv, jx)?)] {
        let da = covariant_derivative(field, x, a, h)?;
        let dja = covariant_derivative(field, x, ja, h)?;
        let lhs = cross(x, tv, da)?;
        let defect = (lhs - dja).norm();
        worst = worst.max(defect);
    }
    Ok(worst)
}
