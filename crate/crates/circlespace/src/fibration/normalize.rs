//! Normal form of degree-one fibration curves.
//!
//! A degree-one curve spans a G-null complex 2-plane N in the
//! complexification of W. When the curve comes from a circle fibration, N
//! meets its conjugate trivially, the real orthogonal complement of N + N̄
//! is a timelike line, and N induces an orthogonal complex structure J on
//! the spacelike 4-space. Mapping an adapted frame of J onto the canonical
//! basis produces a real G-isometry carrying the curve into the standard
//! null plane; a Moebius change of the base coordinate then matches the
//! standard parametrization exactly. The determinant of the frame records
//! whether an orientation-reversing reflection was needed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::moebius::WIsometry;
use crate::poly::CP1;

use super::curve::{curve_degree, FibrationCurve};

/// A Moebius transformation of the projective line, `z -> (a·z+b)/(c·z+d)`.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusCP1 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MoebiusCP1 {
    pub fn identity() -> Self {
        MoebiusCP1 {
            a: Complex64::ONE,
            b: Complex64::ZERO,
            c: Complex64::ZERO,
            d: Complex64::ONE,
        }
    }

    pub fn apply(&self, p: &CP1) -> CP1 {
        CP1 {
            z: self.a * p.z + self.b * p.w,
            w: self.c * p.z + self.d * p.w,
        }
    }
}

/// Result of the normal-form construction.
#[derive(Debug, Clone)]
pub struct Normalization {
    /// Real G-isometry of W (orthochronous, so induced by a conformal map).
    pub isometry: WIsometry,
    /// Base reparametrization: the standard curve parameter maps through
    /// this to the original one.
    pub moebius: MoebiusCP1,
    /// `+1` when the curve is carried to the standard form by an
    /// orientation-preserving isometry, `-1` when a reflection of one
    /// spacelike axis is required.
    pub sign: i8,
    /// Projective gap between the transformed coefficient pair and the
    /// standard one.
    pub residual: f64,
}

const ETA: [f64; 5] = [-1.0, 1.0, 1.0, 1.0, 1.0];

fn g5(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    (0..5).map(|k| ETA[k] * a[k] * b[k]).sum()
}

fn re5(v: &[Complex64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| v[k].re)
}

fn im5(v: &[Complex64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| v[k].im)
}

fn scale5(v: &[f64; 5], s: f64) -> [f64; 5] {
    v.map(|x| x * s)
}

fn sub5(a: &[f64; 5], b: &[f64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| a[k] - b[k])
}

/// Carries a degree-one fibration curve to the standard one.
pub fn normalize_curve(curve: &FibrationCurve) -> Result<Normalization> {
    let deg = curve_degree(curve)?;
    if deg != 1 {
        return Err(Error::NotDegreeOne(deg));
    }
    if curve.nominal_degree() != 1 {
        return Err(Error::NormalizationFailed(
            "curve carries a common polynomial factor; reduce it first".into(),
        ));
    }
    let v0 = curve.coeffs()[0];
    let v1 = curve.coeffs()[1];

    // real span of the null plane and its conjugate
    let spanners = [re5(&v1), im5(&v1), re5(&v0), im5(&v0)];
    let rows: Vec<Vec<f64>> = spanners
        .iter()
        .map(|w| (0..5).map(|k| ETA[k] * w[k]).collect())
        .collect();
    let kernel = linalg::real_nullspace(&rows, 1e-9);
    if kernel.len() != 1 {
        return Err(Error::NormalizationFailed(format!(
            "coefficients span a degenerate real space (complement dimension {})",
            kernel.len()
        )));
    }
    let mut u0: [f64; 5] = std::array::from_fn(|k| kernel[0][k]);
    let norm_sq = g5(&u0, &u0);
    if norm_sq >= -1e-12 {
        return Err(Error::NormalizationFailed(
            "complement axis is not timelike; the family is not a conformal fibration".into(),
        ));
    }
    u0 = scale5(&u0, 1.0 / (-norm_sq).sqrt());
    if u0[0] < 0.0 {
        u0 = scale5(&u0, -1.0);
    }

    // complex structure on the spacelike 4-space: maps the real part of any
    // element of the null plane to its imaginary part
    let basis_cols = [u0, spanners[0], spanners[1], spanners[2], spanners[3]];
    let image_cols = [
        [0.0; 5],
        spanners[1],
        scale5(&spanners[0], -1.0),
        spanners[3],
        scale5(&spanners[2], -1.0),
    ];
    let bmat: Vec<Vec<f64>> = (0..5)
        .map(|r| (0..5).map(|c| basis_cols[c][r]).collect())
        .collect();
    let cmat: Vec<Vec<f64>> = (0..5)
        .map(|r| (0..5).map(|c| image_cols[c][r]).collect())
        .collect();
    let jmat = match linalg::real_solve(&bmat, &identity5()) {
        Some(binv) => mat_mul(&cmat, &binv),
        None => {
            return Err(Error::NormalizationFailed(
                "coefficient real parts are linearly dependent".into(),
            ))
        }
    };
    let apply_j = |v: &[f64; 5]| -> [f64; 5] {
        std::array::from_fn(|r| (0..5).map(|c| jmat[r][c] * v[c]).sum())
    };

    // adapted frame: orthonormal (a1, J·a1, a2, J·a2)
    let pick = |cands: &[[f64; 5]], taken: &[[f64; 5]]| -> Result<[f64; 5]> {
        let mut best: Option<[f64; 5]> = None;
        let mut best_n = 1e-8;
        for cand in cands {
            let mut v = *cand;
            for t in taken {
                let c = g5(&v, t);
                v = sub5(&v, &scale5(t, c));
            }
            let n = g5(&v, &v);
            if n > best_n {
                best_n = n;
                best = Some(scale5(&v, 1.0 / n.sqrt()));
            }
        }
        best.ok_or_else(|| {
            Error::NormalizationFailed("could not build an adapted orthonormal frame".into())
        })
    };
    let a1 = pick(&[spanners[0], spanners[1], spanners[2], spanners[3]], &[])?;
    let b1 = apply_j(&a1);
    let a2 = pick(&[spanners[2], spanners[3], spanners[0], spanners[1]], &[a1, b1])?;
    let b2 = apply_j(&a2);

    // frame matrix and the isometry sending it to the canonical basis
    let frame = [u0, a1, b1, a2, b2];
    let mut g = [[0.0f64; 5]; 5];
    for (col, f) in frame.iter().enumerate() {
        for (row, val) in f.iter().enumerate() {
            // g = eta·F^T·eta
            g[col][row] = ETA[col] * val * ETA[row];
        }
    }
    let isometry = WIsometry { m: g };
    let defect = isometry.orthogonality_defect();
    if defect > 1e-8 {
        return Err(Error::NormalizationFailed(format!(
            "frame is not orthonormal (defect {defect:.3e})"
        )));
    }
    let frame_rows: Vec<Vec<f64>> = (0..5)
        .map(|r| (0..5).map(|c| frame[c][r]).collect())
        .collect();
    let det = linalg::real_det(&frame_rows);
    let sign: i8 = if det > 0.0 { 1 } else { -1 };

    // transformed coefficients live in the standard null plane
    let v0t = isometry.apply(&v0);
    let v1t = isometry.apply(&v1);
    let (alpha0, beta0) = (v0t[3], v0t[1]);
    let (alpha1, beta1) = (v1t[3], v1t[1]);
    let det_m = alpha0 * beta1 - beta0 * alpha1;
    if det_m.norm() < 1e-12 {
        return Err(Error::NormalizationFailed(
            "transformed coefficients are projectively dependent".into(),
        ));
    }
    let moebius = MoebiusCP1 {
        a: alpha0,
        b: -beta0,
        c: -alpha1,
        d: beta1,
    };

    // residual: the reparametrized pushforward against the standard pair
    let u0c: [Complex64; 5] = std::array::from_fn(|k| moebius.d * v0t[k] + moebius.b * v1t[k]);
    let u1c: [Complex64; 5] = std::array::from_fn(|k| moebius.c * v0t[k] + moebius.a * v1t[k]);
    let i = Complex64::I;
    let s0: [Complex64; 5] = [0.0.into(), 0.0.into(), 0.0.into(), 1.0.into(), i];
    let s1: [Complex64; 5] = [0.0.into(), 1.0.into(), i, 0.0.into(), 0.0.into()];
    let residual = stacked_distance(&[u0c, u1c], &[s0, s1]);

    Ok(Normalization {
        isometry,
        moebius,
        sign,
        residual,
    })
}

fn identity5() -> Vec<Vec<f64>> {
    (0..5)
        .map(|r| (0..5).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

/// Phase-aligned chord distance between stacked coefficient vectors.
fn stacked_distance(a: &[[Complex64; 5]; 2], b: &[[Complex64; 5]; 2]) -> f64 {
    let flat = |v: &[[Complex64; 5]; 2]| -> Vec<Complex64> {
        v.iter().flat_map(|x| x.iter().copied()).collect()
    };
    let mut u = flat(a);
    let mut w = flat(b);
    let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nw: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in u.iter_mut() {
        *z /= nu;
    }
    for z in w.iter_mut() {
        *z /= nw;
    }
    let ip: Complex64 = u.iter().zip(w.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if ip.norm() > 1e-150 {
        ip.conj() / ip.norm()
    } else {
        Complex64::ONE
    };
    u.iter()
        .zip(w.iter())
        .map(|(x, y)| (x - y * phase).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::canonical_real_basis;
    use crate::fibration::curve::{hopf_curve, pushforward, reparametrize};
    use crate::moebius::{induced_on_w, random_conformal};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standard_curve_normalizes_to_identity() {
        let h = hopf_curve(&canonical_real_basis());
        let n = normalize_curve(&h).unwrap();
        assert!(n.residual < 1e-12);
        assert_eq!(n.sign, 1);
        let id = WIsometry::identity();
        for r in 0..5 {
            for cc in 0..5 {
                assert!((n.isometry.m[r][cc] - id.m[r][cc]).abs() < 1e-12);
            }
        }
        assert!((n.moebius.a - Complex64::ONE).norm() < 1e-12);
        assert!(n.moebius.b.norm() < 1e-12);
        assert!(n.moebius.c.norm() < 1e-12);
        assert!((n.moebius.d - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn conformal_pushforwards_recover() {
        let h = hopf_curve(&canonical_real_basis());
        for seed in 0..25u64 {
            let g = induced_on_w(&random_conformal(seed));
            let pushed = pushforward(&g, &h);
            let n = normalize_curve(&pushed).unwrap();
            assert!(n.residual < 1e-10, "seed {seed}: residual {:.3e}", n.residual);
            assert!(n.isometry.is_orthochronous());
            assert_eq!(n.sign, 1, "isometry pushforwards preserve orientation");
            // the returned transforms actually carry the curve to standard
            let carried = reparametrize(&pushforward(&n.isometry, &pushed), &n.moebius);
            let std_curve = hopf_curve(&canonical_real_basis());
            let d = stacked_distance(
                &[carried.coeffs()[0], carried.coeffs()[1]],
                &[std_curve.coeffs()[0], std_curve.coeffs()[1]],
            );
            assert!(d < 1e-9, "seed {seed}: transported gap {d:.3e}");
        }
    }

    #[test]
    fn conjugate_curve_needs_reflection() {
        // the family { [z·(e1 - i·e2) - (e3 + i·e4)] } is the fibration by
        // right translates of the complex unit circle; it normalizes with a
        // reflection
        let v0: [Complex64; 5] = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let v1: [Complex64; 5] = [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)];
        let curve = FibrationCurve::new(vec![v0, v1]).unwrap();
        let n = normalize_curve(&curve).unwrap();
        assert!(n.residual < 1e-12);
        assert_eq!(n.sign, -1);
        assert!(n.isometry.is_orthochronous());
    }

    #[test]
    fn pencil_through_a_point_is_rejected() {
        // v0 = e0 + e3 is a real null vector: all fibers share a point
        let v0: [Complex64; 5] = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let v1: [Complex64; 5] = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)];
        let curve = FibrationCurve::new(vec![v0, v1]).unwrap();
        assert!(matches!(
            normalize_curve(&curve),
            Err(Error::NormalizationFailed(_))
        ));
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let h = hopf_curve(&canonical_real_basis());
        let constant = FibrationCurve::new(vec![h.coeffs()[0]]).unwrap();
        assert!(matches!(
            normalize_curve(&constant),
            Err(Error::NotDegreeOne(0))
        ));
    }
}
