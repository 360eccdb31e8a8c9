//! The conformal group of the 3-sphere as quaternionic 2x2 matrices
//! preserving the indefinite Hermitian form, its action on projective
//! 3-space and the quadric Q, and the induced real orthogonal action on the
//! circle space W.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{Bivector, CircleRep};
use crate::error::{Error, Result};
use crate::proj::{hpoint_to_s3, HPoint, ProjPoint, S3Point};
use crate::quat::{CVector4, QVector2, Quaternion, Q_ONE};
use crate::tangent::{line_to_tangent, tangent_to_line, UnitTangent};
use crate::tol::Tolerances;

/// A quaternionic linear map preserving the indefinite form; acts as a
/// conformal transformation of the 3-sphere.
#[derive(Debug, Clone, Copy)]
pub struct ConformalMap {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl ConformalMap {
    pub fn identity() -> Self {
        ConformalMap {
            a: Q_ONE,
            b: Quaternion::zero(),
            c: Quaternion::zero(),
            d: Q_ONE,
        }
    }

    pub fn compose(&self, other: &ConformalMap) -> ConformalMap {
        ConformalMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Inverse through the form identity `M^{-1} = S·M*·S`.
    pub fn inverse(&self) -> ConformalMap {
        ConformalMap {
            a: self.a.conj(),
            b: -self.c.conj(),
            c: -self.b.conj(),
            d: self.d.conj(),
        }
    }

    pub fn apply(&self, v: QVector2) -> QVector2 {
        QVector2::new(
            self.a * v.q1 + self.b * v.q2,
            self.c * v.q1 + self.d * v.q2,
        )
    }

    /// The complex 4x4 matrix of the map under the fixed identification.
    pub fn complex_matrix(&self) -> [[Complex64; 4]; 4] {
        // left multiplication by q = z + j·w acts on a split pair as
        // [[z, -w̄],[w, z̄]]
        let block = |q: Quaternion| {
            let (z, w) = q.complex_split();
            [[z, -w.conj()], [w, z.conj()]]
        };
        let (ba, bb, bc, bd) = (block(self.a), block(self.b), block(self.c), block(self.d));
        let mut m = [[Complex64::ZERO; 4]; 4];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = ba[r][c];
                m[r][c + 2] = bb[r][c];
                m[r + 2][c] = bc[r][c];
                m[r + 2][c + 2] = bd[r][c];
            }
        }
        m
    }

    /// Form-preservation defect on the quaternionic basis.
    pub fn conformal_defect(&self) -> f64 {
        // N = M* diag(1,-1) M must equal diag(1,-1)
        let n11 = self.a.conj() * self.a - self.c.conj() * self.c;
        let n12 = self.a.conj() * self.b - self.c.conj() * self.d;
        let n21 = self.b.conj() * self.a - self.d.conj() * self.c;
        let n22 = self.b.conj() * self.b - self.d.conj() * self.d;
        let mut defect = (n11 - Q_ONE).norm();
        defect = defect.max(n12.norm()).max(n21.norm());
        defect.max((n22 + Q_ONE).norm())
    }
}

/// Validates and wraps a quaternionic matrix as a conformal map.
pub fn check_conformal(
    a: Quaternion,
    b: Quaternion,
    c: Quaternion,
    d: Quaternion,
) -> Result<ConformalMap> {
    let m = ConformalMap { a, b, c, d };
    let defect = m.conformal_defect();
    if defect >= Tolerances::global().group {
        return Err(Error::NotConformal(defect));
    }
    Ok(m)
}

/// Action on the 3-sphere through the quaternionic projective line.
pub fn act_on_point(m: &ConformalMap, x: &S3Point) -> Result<S3Point> {
    let v = m.apply(crate::quat::sphere_rep(x.quaternion()));
    let l = HPoint::new(v.q1, v.q2)?;
    hpoint_to_s3(&l)
}

/// Complex-linear action on projective 3-space.
pub fn act_on_line(m: &ConformalMap, e: &ProjPoint) -> Result<ProjPoint> {
    let mat = m.complex_matrix();
    let rep = e.rep();
    let out = CVector4(std::array::from_fn(|r| {
        (0..4).map(|c| mat[r][c] * rep.0[c]).sum()
    }));
    ProjPoint::new(out)
}

/// Differential action on unit tangents, computed through the quadric.
pub fn act_on_tangent(m: &ConformalMap, t: &UnitTangent) -> Result<UnitTangent> {
    line_to_tangent(&act_on_line(m, &tangent_to_line(t)?)?)
}

/// A real G-orthogonal transformation of W in canonical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct WIsometry {
    /// Row-major 5x5 matrix.
    pub m: [[f64; 5]; 5],
}

impl WIsometry {
    pub fn identity() -> Self {
        let mut m = [[0.0; 5]; 5];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        WIsometry { m }
    }

    pub fn apply(&self, coords: &[Complex64; 5]) -> [Complex64; 5] {
        std::array::from_fn(|r| (0..5).map(|c| self.m[r][c] * coords[c]).sum())
    }

    pub fn apply_circle(&self, k: &CircleRep) -> Result<CircleRep> {
        CircleRep::from_w_coords(self.apply(&k.w_coords()))
    }

    pub fn compose(&self, other: &WIsometry) -> WIsometry {
        let mut m = [[0.0; 5]; 5];
        for r in 0..5 {
            for c in 0..5 {
                m[r][c] = (0..5).map(|k| self.m[r][k] * other.m[k][c]).sum();
            }
        }
        WIsometry { m }
    }

    /// Deviation from G-orthogonality, `max |gᵀ·η·g − η|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let eta = [-1.0, 1.0, 1.0, 1.0, 1.0];
        let mut worst = 0.0f64;
        for a in 0..5 {
            for b in 0..5 {
                let mut s = 0.0;
                for k in 0..5 {
                    s += self.m[k][a] * eta[k] * self.m[k][b];
                }
                let want = if a == b { eta[a] } else { 0.0 };
                worst = worst.max((s - want).abs());
            }
        }
        worst
    }

    /// True when the transformation preserves the time orientation of the
    /// Lorentzian form, i.e. represents a conformal transformation.
    pub fn is_orthochronous(&self) -> bool {
        // (g e0, e0) = -m[0][0] must be negative
        self.m[0][0] > 0.0
    }

    pub fn det(&self) -> f64 {
        let rows: Vec<Vec<f64>> = self.m.iter().map(|r| r.to_vec()).collect();
        crate::linalg::real_det(&rows)
    }

    pub fn to_flat(&self) -> [f64; 25] {
        let mut out = [0.0; 25];
        for r in 0..5 {
            out[5 * r..5 * r + 5].copy_from_slice(&self.m[r]);
        }
        out
    }

    pub fn from_flat(flat: &[f64; 25]) -> Self {
        let mut m = [[0.0; 5]; 5];
        for (r, row) in m.iter_mut().enumerate() {
            row.copy_from_slice(&flat[5 * r..5 * r + 5]);
        }
        WIsometry { m }
    }
}

/// The push-forward of a conformal map to the circle space, expressed in the
/// canonical real basis. Real, G-orthogonal, and orthochronous.
pub fn induced_on_w(m: &ConformalMap) -> WIsometry {
    let mat = m.complex_matrix();
    let apply_vec = |v: CVector4| -> CVector4 {
        CVector4(std::array::from_fn(|r| {
            (0..4).map(|c| mat[r][c] * v.0[c]).sum()
        }))
    };
    let basis = crate::circle::canonical_real_basis();
    let mut out = [[0.0f64; 5]; 5];
    for (col, e) in basis.vectors.iter().enumerate() {
        // push the bivector through the second exterior power
        let pushed = push_bivector(&apply_vec, e);
        let coords = pushed.w_coords();
        for (row, val) in coords.iter().enumerate() {
            // entries are real for quaternionic-linear maps
            out[row][col] = val.re;
        }
    }
    WIsometry { m: out }
}

fn push_bivector<F: Fn(CVector4) -> CVector4>(f: &F, b: &Bivector) -> Bivector {
    let e = |k: usize| CVector4::basis(k);
    let fe: [CVector4; 4] = std::array::from_fn(|k| f(e(k)));
    let mut out = Bivector::zero();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (idx, &(a, bb)) in pairs.iter().enumerate() {
        let coeff = b.coeffs()[idx];
        if coeff.norm() == 0.0 {
            continue;
        }
        out = out.add(&Bivector::wedge(fe[a], fe[bb]).scale(coeff));
    }
    out
}

/// Deterministic pseudo-random conformal map built from unit-quaternion
/// rotations and hyperbolic boosts.
pub fn random_conformal(seed: u64) -> ConformalMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rotation = |rng: &mut ChaCha8Rng| ConformalMap {
        a: crate::rng::unit_quaternion(rng),
        b: Quaternion::zero(),
        c: Quaternion::zero(),
        d: crate::rng::unit_quaternion(rng),
    };
    let boost = |rng: &mut ChaCha8Rng| {
        let t: f64 = rng.random::<f64>() * 2.0 - 1.0;
        ConformalMap {
            a: Quaternion::real(t.cosh()),
            b: Quaternion::real(t.sinh()),
            c: Quaternion::real(t.sinh()),
            d: Quaternion::real(t.cosh()),
        }
    };
    let mut m = rotation(&mut rng);
    for _ in 0..2 {
        m = m.compose(&boost(&mut rng));
        m = m.compose(&rotation(&mut rng));
    }
    m
}
