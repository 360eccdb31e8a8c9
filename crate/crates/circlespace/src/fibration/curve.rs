//! Polynomial curves in the circle quadric and their fibration analysis.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{g_w, point_circle, CircleRep, RealBasis};
use crate::error::{Error, Result};
use crate::moebius::WIsometry;
use crate::poly::{self, CP1};
use crate::proj::S3Point;
use crate::tol::Tolerances;

use super::normalize::MoebiusCP1;

/// A polynomial map from the projective line into the circle quadric, held
/// as coefficient vectors in canonical coordinates on W: the curve is the
/// projectivization of `z -> v0 + z·v1 + ... + z^n·vn`.
///
/// Construction trims trailing zero coefficients and demands that the
/// self-pairing `G(curve(z), curve(z))` vanish identically.
#[derive(Debug, Clone, PartialEq)]
pub struct FibrationCurve {
    coeffs: Vec<[Complex64; 5]>,
}

impl FibrationCurve {
    pub fn new(coeffs: Vec<[Complex64; 5]>) -> Result<Self> {
        let scale = coeffs
            .iter()
            .flat_map(|v| v.iter())
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        if scale < 1e-150 {
            return Err(Error::ZeroCurve);
        }
        let mut trimmed = coeffs;
        while let Some(last) = trimmed.last() {
            let n: f64 = last.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if n <= 1e-12 * scale && trimmed.len() > 1 {
                trimmed.pop();
            } else {
                break;
            }
        }
        // null identity: every z-coefficient of G(curve, curve) vanishes
        let n = trimmed.len();
        for m in 0..(2 * n - 1) {
            let mut s = Complex64::ZERO;
            for j in 0..n {
                if m >= j && m - j < n {
                    s += g_w(&trimmed[j], &trimmed[m - j]);
                }
            }
            if s.norm() > 1e-9 * scale * scale {
                return Err(Error::NonNull(s.norm() / (scale * scale)));
            }
        }
        Ok(FibrationCurve { coeffs: trimmed })
    }

    pub fn coeffs(&self) -> &[[Complex64; 5]] {
        &self.coeffs
    }

    /// Nominal degree: the index of the last retained coefficient.
    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value of the lift at an affine parameter.
    pub fn eval(&self, z: Complex64) -> [Complex64; 5] {
        let mut acc = [Complex64::ZERO; 5];
        for v in self.coeffs.iter().rev() {
            for k in 0..5 {
                acc[k] = acc[k] * z + v[k];
            }
        }
        acc
    }

    /// Value at a point of the projective line (homogeneous).
    pub fn eval_cp1(&self, p: &CP1) -> [Complex64; 5] {
        let n = self.nominal_degree();
        let mut acc = [Complex64::ZERO; 5];
        let mut zp = Complex64::ONE;
        // sum v_k z^k w^(n-k)
        let wpows: Vec<Complex64> = {
            let mut ws = vec![Complex64::ONE; n + 1];
            for k in (0..n).rev() {
                ws[k] = ws[k + 1] * p.w;
            }
            ws
        };
        for (k, v) in self.coeffs.iter().enumerate() {
            for (a, c) in acc.iter_mut().zip(v.iter()) {
                *a += c * zp * wpows[k];
            }
            zp *= p.z;
        }
        acc
    }

    /// The fiber circle at a parameter value.
    pub fn fiber_at(&self, p: &CP1) -> Result<CircleRep> {
        CircleRep::from_w_coords(self.eval_cp1(p))
    }
}

/// The standard degree-one fibration curve `z -> [z(e1+ie2) + (e3+ie4)]`
/// over a real basis.
pub fn hopf_curve(basis: &RealBasis) -> FibrationCurve {
    let i = Complex64::I;
    let v0 = basis.vectors[3].add(&basis.vectors[4].scale(i));
    let v1 = basis.vectors[1].add(&basis.vectors[2].scale(i));
    FibrationCurve::new(vec![v0.w_coords(), v1.w_coords()])
        .expect("the standard curve is null by construction")
}

/// Map degree of the curve: the nominal degree minus the degree of the
/// numerical gcd of the five coordinate polynomials, found by root matching.
pub fn curve_degree(c: &FibrationCurve) -> Result<usize> {
    let n = c.nominal_degree();
    if n == 0 {
        return Ok(0);
    }
    let tol = Tolerances::global().root_cluster;
    let scale = c
        .coeffs
        .iter()
        .flat_map(|v| v.iter())
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);

    let coord_polys: Vec<Vec<Complex64>> = (0..5)
        .map(|k| c.coeffs.iter().map(|v| v[k]).collect())
        .collect();
    let nonzero: Vec<&Vec<Complex64>> = coord_polys
        .iter()
        .filter(|p| p.iter().any(|z| z.norm() > 1e-10 * scale))
        .collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroCurve);
    }
    let all_roots: Vec<Vec<CP1>> = nonzero
        .iter()
        .map(|p| poly::roots_cp1(p, n, 1e-10))
        .collect::<Result<_>>()?;

    // reference polynomial: the coordinate with the largest norm
    let ref_idx = {
        let norms: Vec<f64> = nonzero
            .iter()
            .map(|p| p.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .collect();
        norms
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap()
    };

    let mut gcd_degree = 0usize;
    for (root, ref_mult) in poly::cluster_cp1(&all_roots[ref_idx], tol) {
        let mut mult = ref_mult;
        for (idx, roots) in all_roots.iter().enumerate() {
            if idx == ref_idx {
                continue;
            }
            let count = roots.iter().filter(|r| r.chordal(&root) < tol).count();
            mult = mult.min(count);
            if mult == 0 {
                break;
            }
        }
        gcd_degree += mult;
    }
    Ok(n - gcd_degree)
}

/// The incidence polynomial of a point against the curve: its roots are the
/// parameters of the fibers through the point. Coefficients are ascending in
/// the affine parameter; the nominal degree is the curve's.
pub fn incidence_polynomial(p: &S3Point, c: &FibrationCurve) -> Vec<Complex64> {
    let pc = point_circle(p).w_coords();
    c.coeffs.iter().map(|v| g_w(&pc, v)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum FailureKind {
    /// The incidence polynomial vanished identically.
    OnEveryFiber,
    /// No root on the projective line (degree-zero curve off the point).
    NoFiber,
    /// More than one distinct fiber parameter through the point.
    MultipleFibers { distinct: usize },
    /// The fiber through the point is a point circle.
    DegenerateFiber,
    /// Root finding failed for the incidence polynomial.
    RootFinding { message: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleFailure {
    pub index: usize,
    pub point: [f64; 4],
    pub kind: FailureKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub samples: usize,
    pub failures: Vec<SampleFailure>,
}

/// Samples pseudo-random points of the 3-sphere and checks that each lies on
/// exactly one fiber and that the fiber is an honest circle.
pub fn validate_fibration(c: &FibrationCurve, samples: usize, seed: u64) -> ValidationReport {
    let tol = Tolerances::global();
    let n = c.nominal_degree();
    let curve_scale = c
        .coeffs
        .iter()
        .flat_map(|v| v.iter())
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);

    let check_one = |index: usize| -> Option<SampleFailure> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)));
        let x = crate::rng::s3_point(&mut rng);
        let fail = |kind: FailureKind| {
            Some(SampleFailure {
                index,
                point: x.quaternion().to_array(),
                kind,
            })
        };
        let poly_coeffs = incidence_polynomial(&x, c);
        let scale = poly_coeffs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if scale < 1e-10 * curve_scale * 2.0 {
            return fail(FailureKind::OnEveryFiber);
        }
        if n == 0 {
            return fail(FailureKind::NoFiber);
        }
        let roots = match poly::roots_cp1(&poly_coeffs, n, 1e-10) {
            Ok(r) => r,
            Err(e) => {
                return fail(FailureKind::RootFinding {
                    message: e.to_string(),
                })
            }
        };
        let clusters = poly::cluster_cp1(&roots, tol.root_cluster);
        if clusters.len() != 1 {
            return fail(FailureKind::MultipleFibers {
                distinct: clusters.len(),
            });
        }
        match c.fiber_at(&clusters[0].0) {
            Ok(k) if !k.is_point_circle() => None,
            _ => fail(FailureKind::DegenerateFiber),
        }
    };

    let failures: Vec<SampleFailure> = crate::par::map_range(samples, check_one)
        .into_iter()
        .flatten()
        .collect();
    ValidationReport {
        passed: failures.is_empty(),
        samples,
        failures,
    }
}

/// Applies a W-isometry to every coefficient of the curve.
pub fn pushforward(g: &WIsometry, c: &FibrationCurve) -> FibrationCurve {
    let coeffs = c.coeffs.iter().map(|v| g.apply(v)).collect();
    FibrationCurve::new(coeffs).expect("isometries preserve the null identity")
}

/// Precomposes the curve with a Moebius change of the base coordinate,
/// clearing denominators: the result is `(c·z + d)^n · curve((a·z+b)/(c·z+d))`.
pub fn reparametrize(curve: &FibrationCurve, m: &MoebiusCP1) -> FibrationCurve {
    let n = curve.nominal_degree();
    let num = [m.b, m.a]; // a·z + b, ascending
    let den = [m.d, m.c];
    let mut acc: Vec<[Complex64; 5]> = vec![[Complex64::ZERO; 5]; n + 1];
    for (k, v) in curve.coeffs.iter().enumerate() {
        // (az+b)^k (cz+d)^(n-k)
        let mut factor = vec![Complex64::ONE];
        for _ in 0..k {
            factor = poly::mul(&factor, &num);
        }
        for _ in k..n {
            factor = poly::mul(&factor, &den);
        }
        for (deg, f) in factor.iter().enumerate() {
            for c5 in 0..5 {
                acc[deg][c5] += f * v[c5];
            }
        }
    }
    FibrationCurve::new(acc).expect("reparametrization preserves the null identity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::canonical_real_basis;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w5(vals: [(f64, f64); 5]) -> [Complex64; 5] {
        vals.map(|(re, im)| c(re, im))
    }

    #[test]
    fn hopf_coefficients() {
        let h = hopf_curve(&canonical_real_basis());
        assert_eq!(h.nominal_degree(), 1);
        let v0 = h.coeffs()[0];
        let v1 = h.coeffs()[1];
        let want0 = w5([(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let want1 = w5([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]);
        for k in 0..5 {
            assert!((v0[k] - want0[k]).norm() < 1e-15);
            assert!((v1[k] - want1[k]).norm() < 1e-15);
        }
        // as bivectors: v0 = -sqrt(2)·E23, v1 = sqrt(2)·E24
        let b0 = crate::circle::Bivector::from_w_coords(v0);
        assert!((b0.c23 - c(-std::f64::consts::SQRT_2, 0.0)).norm() < 1e-15);
        assert!(b0.c12.norm() + b0.c13.norm() + b0.c14.norm() + b0.c24.norm() + b0.c34.norm() < 1e-15);
        let b1 = crate::circle::Bivector::from_w_coords(v1);
        assert!((b1.c24 - c(std::f64::consts::SQRT_2, 0.0)).norm() < 1e-15);

        // null identities
        assert!(g_w(&v0, &v0).norm() < 1e-15);
        assert!(g_w(&v1, &v1).norm() < 1e-15);
        assert!(g_w(&v0, &v1).norm() < 1e-15);
    }

    #[test]
    fn degree_examples() {
        let h = hopf_curve(&canonical_real_basis());
        assert_eq!(curve_degree(&h).unwrap(), 1);

        // constant curve
        let constant = FibrationCurve::new(vec![h.coeffs()[0]]).unwrap();
        assert_eq!(curve_degree(&constant).unwrap(), 0);

        // common factor 1 + 2z: coefficients (v0, 2·v0)
        let v0 = h.coeffs()[0];
        let doubled = v0.map(|z| z * 2.0);
        let reducible = FibrationCurve::new(vec![v0, doubled]).unwrap();
        assert_eq!(curve_degree(&reducible).unwrap(), 0);
    }

    #[test]
    fn incidence_polynomial_examples() {
        let h = hopf_curve(&canonical_real_basis());
        // p = 1: the polynomial is the constant sqrt(2)·w, root at infinity
        let p = S3Point::new(crate::quat::Q_ONE).unwrap();
        let poly_coeffs = incidence_polynomial(&p, &h);
        assert!((poly_coeffs[0] - c(std::f64::consts::SQRT_2, 0.0)).norm() < 1e-12);
        assert!(poly_coeffs[1].norm() < 1e-12);

        // p = j·e^{i·theta} lies on the fiber at z = 0
        let theta = 0.7f64;
        let q = crate::quat::Q_J
            * (crate::quat::Quaternion::new(theta.cos(), theta.sin(), 0.0, 0.0));
        let p = S3Point::new(q).unwrap();
        let poly_coeffs = incidence_polynomial(&p, &h);
        assert!(poly_coeffs[0].norm() < 1e-12, "constant term {:?}", poly_coeffs[0]);
        assert!(poly_coeffs[1].norm() > 0.1);
    }

    #[test]
    fn validation_examples() {
        let h = hopf_curve(&canonical_real_basis());
        let report = validate_fibration(&h, 300, 7);
        assert!(report.passed, "failures: {:?}", &report.failures[..report.failures.len().min(3)]);

        let constant = FibrationCurve::new(vec![h.coeffs()[0]]).unwrap();
        let report = validate_fibration(&constant, 50, 7);
        assert!(!report.passed);
        assert!(report
            .failures
            .iter()
            .all(|f| matches!(f.kind, FailureKind::NoFiber)));

        // an honest degree-2 null curve: the conic (1+z^2)e0 + (1-z^2)e1 + 2z·e2
        let conic = FibrationCurve::new(vec![
            w5([(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            w5([(0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            w5([(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
        ])
        .unwrap();
        assert_eq!(curve_degree(&conic).unwrap(), 2);
        let report = validate_fibration(&conic, 50, 7);
        assert!(!report.passed);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f.kind, FailureKind::MultipleFibers { .. })));
    }

    #[test]
    fn degree_invariance() {
        let h = hopf_curve(&canonical_real_basis());
        for seed in 0..10u64 {
            let g = crate::moebius::induced_on_w(&crate::moebius::random_conformal(seed));
            let pushed = pushforward(&g, &h);
            assert_eq!(curve_degree(&pushed).unwrap(), 1);
        }
        let m = MoebiusCP1 {
            a: c(0.3, 1.0),
            b: c(-1.0, 0.2),
            c: c(0.5, -0.4),
            d: c(1.1, 0.0),
        };
        let re = reparametrize(&h, &m);
        assert_eq!(curve_degree(&re).unwrap(), 1);
    }

    #[test]
    fn fibration_partition() {
        // distinct parameters of the standard curve give distinct circles
        let h = hopf_curve(&canonical_real_basis());
        let k1 = h.fiber_at(&CP1::finite(c(0.3, 0.2))).unwrap();
        let k2 = h.fiber_at(&CP1::finite(c(-1.0, 0.8))).unwrap();
        assert!(k1.distance(&k2) > 1e-3);
        assert!(!k1.is_point_circle());
        assert!(!k2.is_point_circle());
    }
}
