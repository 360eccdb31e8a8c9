//! On-disk and on-wire encodings.
//!
//! Conventions: quaternions as `[w, x, y, z]`, complex numbers as
//! `[re, im]`, projective points and bivectors as coordinate arrays (the
//! bivector order is `c12, c13, c14, c23, c24, c34`), 5x5 isometries as 25
//! row-major reals, curves as lists of 5-component complex coefficient
//! vectors.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::circle::{Bivector, CircleRep};
use crate::error::{Error, Result};
use crate::fibration::{FibrationCurve, MoebiusCP1};
use crate::moebius::{ConformalMap, WIsometry};
use crate::proj::S3Point;
use crate::quat::{CVector4, Quaternion};

pub fn complex_to_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_from_json(v: &Value) -> Result<Complex64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("expected [re, im]".into()))?;
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| Error::Parse("bad real part".into()))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| Error::Parse("bad imaginary part".into()))?;
    Ok(Complex64::new(re, im))
}

pub fn quaternion_to_json(q: Quaternion) -> Value {
    json!([q.w, q.x, q.y, q.z])
}

pub fn quaternion_from_json(v: &Value) -> Result<Quaternion> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse("expected [w, x, y, z]".into()))?;
    let mut out = [0.0f64; 4];
    for (slot, item) in out.iter_mut().zip(arr.iter()) {
        *slot = item
            .as_f64()
            .ok_or_else(|| Error::Parse("bad quaternion component".into()))?;
    }
    Ok(Quaternion::from_array(out))
}

pub fn s3_point_to_json(p: &S3Point) -> Value {
    quaternion_to_json(p.quaternion())
}

pub fn s3_point_from_json(v: &Value) -> Result<S3Point> {
    S3Point::project(quaternion_from_json(v)?)
}

pub fn cvector4_to_json(v: &CVector4) -> Value {
    Value::Array(v.0.iter().map(|z| complex_to_json(*z)).collect())
}

pub fn cvector4_from_json(v: &Value) -> Result<CVector4> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse("expected 4 complex coordinates".into()))?;
    let mut out = [Complex64::ZERO; 4];
    for (slot, item) in out.iter_mut().zip(arr.iter()) {
        *slot = complex_from_json(item)?;
    }
    Ok(CVector4(out))
}

pub fn bivector_to_json(b: &Bivector) -> Value {
    Value::Array(b.coeffs().iter().map(|z| complex_to_json(*z)).collect())
}

pub fn bivector_from_json(v: &Value) -> Result<Bivector> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 6)
        .ok_or_else(|| Error::Parse("expected 6 complex bivector coefficients".into()))?;
    let mut out = [Complex64::ZERO; 6];
    for (slot, item) in out.iter_mut().zip(arr.iter()) {
        *slot = complex_from_json(item)?;
    }
    Ok(Bivector::from_coeffs(out))
}

pub fn circle_to_json(k: &CircleRep) -> Value {
    bivector_to_json(k.bivector())
}

pub fn circle_from_json(v: &Value) -> Result<CircleRep> {
    CircleRep::new(bivector_from_json(v)?)
}

pub fn conformal_to_json(m: &ConformalMap) -> Value {
    json!([
        quaternion_to_json(m.a),
        quaternion_to_json(m.b),
        quaternion_to_json(m.c),
        quaternion_to_json(m.d)
    ])
}

pub fn conformal_from_json(v: &Value) -> Result<ConformalMap> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse("expected 4 quaternions (row-major 2x2)".into()))?;
    Ok(ConformalMap {
        a: quaternion_from_json(&arr[0])?,
        b: quaternion_from_json(&arr[1])?,
        c: quaternion_from_json(&arr[2])?,
        d: quaternion_from_json(&arr[3])?,
    })
}

pub fn isometry_to_json(g: &WIsometry) -> Value {
    Value::Array(g.to_flat().iter().map(|x| json!(x)).collect())
}

pub fn isometry_from_json(v: &Value) -> Result<WIsometry> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 25)
        .ok_or_else(|| Error::Parse("expected 25 row-major reals".into()))?;
    let mut flat = [0.0f64; 25];
    for (slot, item) in flat.iter_mut().zip(arr.iter()) {
        *slot = item
            .as_f64()
            .ok_or_else(|| Error::Parse("bad matrix entry".into()))?;
    }
    Ok(WIsometry::from_flat(&flat))
}

pub fn moebius_to_json(m: &MoebiusCP1) -> Value {
    json!([
        complex_to_json(m.a),
        complex_to_json(m.b),
        complex_to_json(m.c),
        complex_to_json(m.d)
    ])
}

pub fn moebius_from_json(v: &Value) -> Result<MoebiusCP1> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse("expected 4 complex Moebius coefficients".into()))?;
    Ok(MoebiusCP1 {
        a: complex_from_json(&arr[0])?,
        b: complex_from_json(&arr[1])?,
        c: complex_from_json(&arr[2])?,
        d: complex_from_json(&arr[3])?,
    })
}

pub fn curve_to_json(c: &FibrationCurve) -> Value {
    Value::Array(
        c.coeffs()
            .iter()
            .map(|v| Value::Array(v.iter().map(|z| complex_to_json(*z)).collect()))
            .collect(),
    )
}

pub fn curve_from_json(v: &Value) -> Result<FibrationCurve> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a list of coefficient vectors".into()))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for item in arr {
        let row = item
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| Error::Parse("each coefficient needs 5 complex entries".into()))?;
        let mut out = [Complex64::ZERO; 5];
        for (slot, entry) in out.iter_mut().zip(row.iter()) {
            *slot = complex_from_json(entry)?;
        }
        coeffs.push(out);
    }
    FibrationCurve::new(coeffs)
}
