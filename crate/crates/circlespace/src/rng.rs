//! Seeded sampling helpers for spheres and tangents.

use num_complex::Complex64;
use rand::Rng;

use crate::proj::{ProjPoint, S3Point};
use crate::quat::{CVector4, Quaternion};
use crate::tangent::UnitTangent;

/// Standard normal via Box-Muller; keeps the crate free of distribution deps.
pub fn normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        if u > f64::MIN_POSITIVE {
            return (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos();
        }
    }
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Gaussian quaternion (not normalized).
pub fn quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

/// Uniform point of the unit 3-sphere.
pub fn unit_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let q = quaternion(rng);
        if q.norm() > 1e-6 {
            return q / q.norm();
        }
    }
}

/// Uniform purely imaginary unit quaternion.
pub fn unit_imaginary<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(0.0, normal(rng), normal(rng), normal(rng));
        if q.norm() > 1e-6 {
            return q / q.norm();
        }
    }
}

pub fn s3_point<R: Rng>(rng: &mut R) -> S3Point {
    S3Point::new(unit_quaternion(rng)).expect("unit by construction")
}

pub fn unit_tangent<R: Rng>(rng: &mut R) -> UnitTangent {
    UnitTangent::new(s3_point(rng), unit_imaginary(rng)).expect("valid by construction")
}

/// Gaussian complex 4-vector, rejecting near-zero draws.
pub fn cvector4<R: Rng>(rng: &mut R) -> CVector4 {
    loop {
        let v = CVector4([complex(rng), complex(rng), complex(rng), complex(rng)]);
        if v.norm() > 1e-6 {
            return v;
        }
    }
}

/// Uniform point of complex projective 3-space.
pub fn proj_point<R: Rng>(rng: &mut R) -> ProjPoint {
    ProjPoint::new(cvector4(rng)).expect("nonzero by construction")
}
