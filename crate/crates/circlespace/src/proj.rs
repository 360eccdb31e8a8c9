//! Projective points, the twistor projection to quaternionic projective
//! 1-space, and membership in the 3-sphere and in the real quadric Q.
//!
//! Q is the set of isotropic complex lines for the signature-(2,2) Hermitian
//! form; it fibers over the 3-sphere under the twistor projection, with fiber
//! over `x` the projectivized complex span of `(x,1)` and `(x,1)·j`.


use crate::error::{Error, Result};
use crate::quat::{from_c4, sphere_rep, to_c4, CVector4, QVector2, Quaternion};
use crate::tol::Tolerances;

/// A point of complex projective 3-space, held as a representative normalized
/// so the largest-modulus coordinate is exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    rep: CVector4,
}

impl ProjPoint {
    pub fn new(rep: CVector4) -> Result<Self> {
        let n = rep.norm();
        if !(n > 1e-150) {
            return Err(Error::DegenerateInput("zero projective representative".into()));
        }
        Ok(ProjPoint {
            rep: normalize_rep(rep),
        })
    }

    pub fn rep(&self) -> CVector4 {
        self.rep
    }

    /// Angle-criterion equality: `|<u,v>|^2 >= (1 - tol)·|u|^2·|v|^2`.
    pub fn approx_eq(&self, other: &ProjPoint) -> bool {
        let tol = Tolerances::global().proj;
        let q = self.rep.dot_std(other.rep).norm_sqr();
        q >= (1.0 - tol) * self.rep.norm_sqr() * other.rep.norm_sqr()
    }

    /// Projective chord distance to another point.
    pub fn distance(&self, other: &ProjPoint) -> f64 {
        proj_distance4(self.rep, other.rep)
    }
}

/// Projective distance between nonzero representatives: the chordal metric
/// `min over phase of |û - e^{iθ}·v̂|`, which is numerically exact near zero
/// (unlike the sine of the angle, which loses half the digits there).
pub fn proj_distance4(u: CVector4, v: CVector4) -> f64 {
    let un = u.scale(num_complex::Complex64::new(1.0 / u.norm(), 0.0));
    let vn = v.scale(num_complex::Complex64::new(1.0 / v.norm(), 0.0));
    let ip = un.dot_std(vn);
    let aligned = if ip.norm() > 1e-150 {
        vn.scale(ip.conj() / ip.norm())
    } else {
        vn
    };
    un.sub(aligned).norm()
}

fn normalize_rep(rep: CVector4) -> CVector4 {
    let mut best = 0usize;
    let mut best_n = 0.0f64;
    for (k, z) in rep.0.iter().enumerate() {
        let n = z.norm_sqr();
        if n > best_n {
            best_n = n;
            best = k;
        }
    }
    let pivot = rep.0[best];
    CVector4(rep.0.map(|z| z / pivot))
}

/// A point of quaternionic projective 1-space, normalized so the
/// larger-modulus coordinate is 1 (by right multiplication).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

impl HPoint {
    pub fn new(q1: Quaternion, q2: Quaternion) -> Result<Self> {
        let n1 = q1.norm();
        let n2 = q2.norm();
        if n1.max(n2) < 1e-150 {
            return Err(Error::DegenerateInput("zero quaternionic line".into()));
        }
        let pivot = if n1 >= n2 { q1 } else { q2 };
        let pinv = pivot.inverse()?;
        Ok(HPoint {
            q1: q1 * pinv,
            q2: q2 * pinv,
        })
    }

    pub fn as_qvector(&self) -> QVector2 {
        QVector2::new(self.q1, self.q2)
    }

    /// Projective distance via the standard pairing on complex coordinates.
    pub fn distance(&self, other: &HPoint) -> f64 {
        // quaternionic lines seen as complex 2-planes: compare the planes
        let a1 = to_c4(self.as_qvector());
        let a2 = a1.mul_j();
        let b1 = to_c4(other.as_qvector());
        let b2 = b1.mul_j();
        // principal angle between span(a1,a2) and span(b1,b2)
        let g = |u: CVector4, v: CVector4| u.dot_std(v);
        // orthonormalize each pair (a1 ⊥ a2 automatically, same norms)
        let na = a1.norm();
        let nb = b1.norm();
        let m00 = g(a1, b1) / (na * nb);
        let m01 = g(a1, b2) / (na * nb);
        let m10 = g(a2, b1) / (na * nb);
        let m11 = g(a2, b2) / (na * nb);
        // largest singular value of the 2x2 overlap matrix
        let t = m00.norm_sqr() + m01.norm_sqr() + m10.norm_sqr() + m11.norm_sqr();
        let d = (m00 * m11 - m01 * m10).norm_sqr();
        let disc = (t * t - 4.0 * d).max(0.0).sqrt();
        let smax_sq = ((t + disc) / 2.0).min(1.0);
        (1.0 - smax_sq).max(0.0).sqrt()
    }
}

/// A point of the unit 3-sphere in the quaternions, embedded projectively as
/// the line spanned by `(x, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S3Point {
    x: Quaternion,
}

impl S3Point {
    pub fn new(x: Quaternion) -> Result<Self> {
        crate::quat::check_unit(x)?;
        Ok(S3Point { x })
    }

    /// Renormalizes, for callers assembling points from raw coordinates.
    pub fn project(x: Quaternion) -> Result<Self> {
        Ok(S3Point {
            x: x.normalized()?,
        })
    }

    pub fn quaternion(&self) -> Quaternion {
        self.x
    }

    pub fn to_hpoint(&self) -> HPoint {
        HPoint {
            q1: self.x,
            q2: Quaternion::one(),
        }
    }

    pub fn distance(&self, other: &S3Point) -> f64 {
        (self.x - other.x).norm()
    }
}

/// The twistor projection: a complex line to the quaternionic line it spans.
pub fn twistor_project(e: &ProjPoint) -> Result<HPoint> {
    let v = from_c4(e.rep());
    HPoint::new(v.q1, v.q2)
}

/// Membership in the quadric Q: isotropy for the signature-(2,2) form.
pub fn is_in_q(e: &ProjPoint) -> bool {
    let tol = Tolerances::global().null;
    let rep = e.rep();
    rep.herm(rep).norm() < tol * rep.norm_sqr()
}

/// Membership of a quaternionic line in the 3-sphere: isotropy of `<,>`.
pub fn is_in_s3(l: &HPoint) -> bool {
    let tol = Tolerances::global().null;
    let v = l.as_qvector();
    let h = crate::quat::eval_forms(v, v).h;
    h.norm() < tol * (v.q1.norm_sqr() + v.q2.norm_sqr())
}

/// Extracts the sphere point from an isotropic quaternionic line.
pub fn hpoint_to_s3(l: &HPoint) -> Result<S3Point> {
    let v = l.as_qvector();
    let h = crate::quat::eval_forms(v, v).h;
    let scale = v.q1.norm_sqr() + v.q2.norm_sqr();
    if h.norm() >= Tolerances::global().null.sqrt() * scale {
        return Err(Error::NotIsotropic(h.norm() / scale));
    }
    let x = v.q1 * v.q2.inverse()?;
    S3Point::project(x)
}

/// A complex basis of the twistor fiber over `x`: the pair
/// `(v, v·j)` with `v` the image of `(x, 1)`.
///
/// The restriction of the Hermitian (2,2)-form to the span is identically
/// zero: both vectors are isotropic and their pairing vanishes, so the fiber
/// line lies inside Q.
pub fn fiber_basis(x: &S3Point) -> (CVector4, CVector4) {
    let v = to_c4(sphere_rep(x.quaternion()));
    (v, v.mul_j())
}
