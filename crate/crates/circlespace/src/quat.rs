//! Quaternion arithmetic, the identification of quaternionic 2-space with
//! complex 4-space, and the three fundamental forms.
//!
//! Quaternionic 2-space is treated as a *right* module, so right
//! multiplication by `i` is complex linear. Each quaternionic coordinate
//! splits as `q = z + j·w` with complex `z`, `w` (note: `j` on the left of
//! the second slot). Under this split the indefinite quaternionic Hermitian
//! form decomposes as
//!
//! ```text
//! <v,w> = (v,w) + j·Ω(v,w)
//! ```
//!
//! with `(,)` a complex Hermitian form of signature (2,2) and `Ω` a complex
//! symplectic form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// A quaternion `w + x·i + y·j + z·k` with `f64` coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const Q_ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const Q_I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const Q_J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const Q_K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn zero() -> Self {
        Quaternion::new(0.0, 0.0, 0.0, 0.0)
    }

    pub const fn one() -> Self {
        Q_ONE
    }

    /// Real scalar as a quaternion.
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number in the (1, i) plane.
    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// The split `q = z + j·w` into complex components.
    pub fn complex_split(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, -self.z),
        )
    }

    /// Inverse of [`complex_split`](Self::complex_split).
    pub fn from_complex_split(z: Complex64, w: Complex64) -> Self {
        Quaternion::new(z.re, z.im, w.re, -w.im)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::DegenerateInput("inverse of zero quaternion".into()));
        }
        Ok(self.conj() / n)
    }

    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion.
    pub fn im(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// Euclidean inner product on R^4.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn normalized(self) -> Result<Self> {
        let n = self.norm();
        if n < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::DegenerateInput("normalizing zero quaternion".into()));
        }
        Ok(self / n)
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() < tol
    }

    pub fn is_imaginary(self, tol: f64) -> bool {
        self.w.abs() < tol
    }

    /// `exp(q)` for purely imaginary `q` (a unit quaternion).
    pub fn exp_imaginary(self) -> Self {
        let theta = self.im().norm();
        if theta < 1e-300 {
            return Q_ONE;
        }
        let u = self.im() / theta;
        Quaternion::real(theta.cos()) + u * theta.sin()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Self) -> Self {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Self {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

/// An element of quaternionic 2-space (a right module).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QVector2 {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

impl QVector2 {
    pub const fn new(q1: Quaternion, q2: Quaternion) -> Self {
        QVector2 { q1, q2 }
    }

    /// Right scalar multiplication.
    pub fn scale(self, lambda: Quaternion) -> Self {
        QVector2::new(self.q1 * lambda, self.q2 * lambda)
    }

    pub fn add(self, o: Self) -> Self {
        QVector2::new(self.q1 + o.q1, self.q2 + o.q2)
    }
}

/// An element of complex 4-space, the fixed identification of quaternionic
/// 2-space under `q = z + j·w` per coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVector4(pub [Complex64; 4]);

impl CVector4 {
    pub fn zero() -> Self {
        CVector4([Complex64::ZERO; 4])
    }

    pub fn basis(k: usize) -> Self {
        let mut v = CVector4::zero();
        v.0[k] = Complex64::ONE;
        v
    }

    /// Right multiplication by `j`, the conjugate-linear map
    /// `(z1,z2,z3,z4) -> (-z̄2, z̄1, -z̄4, z̄3)`.
    pub fn mul_j(self) -> Self {
        let [z1, z2, z3, z4] = self.0;
        CVector4([-z2.conj(), z1.conj(), -z4.conj(), z3.conj()])
    }

    pub fn scale(self, c: Complex64) -> Self {
        CVector4(self.0.map(|z| z * c))
    }

    pub fn add(self, o: Self) -> Self {
        CVector4([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.scale(-Complex64::ONE))
    }

    /// Positive-definite norm squared of the representative.
    pub fn norm_sqr(self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Standard positive-definite Hermitian pairing (conjugate-linear in the
    /// first slot).
    pub fn dot_std(self, o: Self) -> Complex64 {
        self.0
            .iter()
            .zip(o.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// The indefinite Hermitian form of signature (2,2):
    /// `z̄1w1 + z̄2w2 - z̄3w3 - z̄4w4`.
    pub fn herm(self, o: Self) -> Complex64 {
        self.0[0].conj() * o.0[0] + self.0[1].conj() * o.0[1]
            - self.0[2].conj() * o.0[2]
            - self.0[3].conj() * o.0[3]
    }

    /// The complex symplectic form `z1w2 - z2w1 - z3w4 + z4w3`.
    pub fn omega(self, o: Self) -> Complex64 {
        self.0[0] * o.0[1] - self.0[1] * o.0[0] - self.0[2] * o.0[3] + self.0[3] * o.0[2]
    }
}

/// Values of the three fundamental forms on a pair of vectors.
///
/// The decomposition `h = herm + j·omega` holds in the quaternion algebra.
#[derive(Debug, Clone, Copy)]
pub struct FormValues {
    pub h: Quaternion,
    pub herm: Complex64,
    pub omega: Complex64,
}

/// The identification of quaternionic 2-space with complex 4-space.
pub fn to_c4(v: QVector2) -> CVector4 {
    let (z1, z2) = v.q1.complex_split();
    let (z3, z4) = v.q2.complex_split();
    CVector4([z1, z2, z3, z4])
}

/// Inverse of [`to_c4`]; a pure coordinate shuffle.
pub fn from_c4(z: CVector4) -> QVector2 {
    QVector2::new(
        Quaternion::from_complex_split(z.0[0], z.0[1]),
        Quaternion::from_complex_split(z.0[2], z.0[3]),
    )
}

/// Evaluates the quaternionic Hermitian form `<v,w> = v̄1·w1 - v̄2·w2`
/// together with its complex Hermitian and symplectic parts.
pub fn eval_forms(v: QVector2, w: QVector2) -> FormValues {
    let h = v.q1.conj() * w.q1 - v.q2.conj() * w.q2;
    let a = to_c4(v);
    let b = to_c4(w);
    FormValues {
        h,
        herm: a.herm(b),
        omega: a.omega(b),
    }
}

/// `<v,v>` is real for the indefinite form; convenience accessor.
pub fn h_norm(v: QVector2) -> f64 {
    eval_forms(v, v).h.w
}

/// Embeds a point of the 3-sphere as the isotropic line spanned by `(x, 1)`.
pub fn sphere_rep(x: Quaternion) -> QVector2 {
    QVector2::new(x, Q_ONE)
}

pub(crate) fn check_unit(q: Quaternion) -> Result<()> {
    let tol = Tolerances::global().unit;
    let defect = (q.norm() - 1.0).abs();
    if defect >= tol {
        return Err(Error::NotUnit(defect));
    }
    Ok(())
}

pub(crate) fn check_imaginary(q: Quaternion) -> Result<()> {
    let tol = Tolerances::global().unit;
    if q.w.abs() >= tol {
        return Err(Error::NotImaginary(q.w.abs()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Independent multiplication oracle through the left-regular 4x4 matrix
    /// built from the structure constants, kept separate from the inline
    /// component formula in `Mul`.
    fn mul_oracle(p: Quaternion, q: Quaternion) -> Quaternion {
        // rows/cols ordered (1, i, j, k); entry = coefficient table of p·e_c
        let pm = [
            [p.w, -p.x, -p.y, -p.z],
            [p.x, p.w, -p.z, p.y],
            [p.y, p.z, p.w, -p.x],
            [p.z, -p.y, p.x, p.w],
        ];
        let qv = [q.w, q.x, q.y, q.z];
        let mut out = [0.0; 4];
        for (r, row) in pm.iter().enumerate() {
            out[r] = row.iter().zip(qv.iter()).map(|(a, b)| a * b).sum();
        }
        Quaternion::from_array(out)
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(Q_I * Q_I, -Q_ONE);
        assert_eq!(Q_J * Q_J, -Q_ONE);
        assert_eq!(Q_K * Q_K, -Q_ONE);
        assert_eq!(Q_I * Q_J, Q_K);
        assert_eq!(Q_J * Q_I, -Q_K);
        assert_eq!(Q_J * Q_K, Q_I);
        assert_eq!(Q_K * Q_J, -Q_I);
        assert_eq!(Q_K * Q_I, Q_J);
        assert_eq!(Q_I * Q_K, -Q_J);
        assert_eq!(Q_I * Q_J * Q_K, -Q_ONE);
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        let c = -10.0..10.0f64;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    proptest! {
        #[test]
        fn mul_matches_oracle(p in arb_quat(), q in arb_quat()) {
            let a = p * q;
            let b = mul_oracle(p, q);
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }

        #[test]
        fn norm_is_multiplicative(p in arb_quat(), q in arb_quat()) {
            prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs()
                <= 1e-10 * (1.0 + p.norm() * q.norm()));
        }

        #[test]
        fn complex_split_roundtrip(q in arb_quat()) {
            let (z, w) = q.complex_split();
            prop_assert_eq!(Quaternion::from_complex_split(z, w), q);
            // q = z + j·w as quaternions
            let rebuilt = Quaternion::from_complex(z) + Q_J * Quaternion::from_complex(w);
            prop_assert!((rebuilt - q).norm() < 1e-14);
        }

        #[test]
        fn omega_is_skew(p in arb_quat(), q in arb_quat(), r in arb_quat(), s in arb_quat()) {
            let v = QVector2::new(p, q);
            let w = QVector2::new(r, s);
            let a = eval_forms(v, w).omega;
            let b = eval_forms(w, v).omega;
            prop_assert!((a + b).norm() < 1e-10);
        }

        #[test]
        fn herm_is_hermitian(p in arb_quat(), q in arb_quat(), r in arb_quat(), s in arb_quat()) {
            let v = QVector2::new(p, q);
            let w = QVector2::new(r, s);
            let a = eval_forms(v, w).herm;
            let b = eval_forms(w, v).herm;
            prop_assert!((a - b.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn c4_identification_examples() {
        // (1, 1) -> (1, 0, 1, 0)
        let v = QVector2::new(Q_ONE, Q_ONE);
        assert_eq!(to_c4(v).0, [
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ZERO
        ]);
        // (j, 0) -> (0, 1, 0, 0)
        let v = QVector2::new(Q_J, Quaternion::zero());
        assert_eq!(to_c4(v).0, [
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO
        ]);
        // zero maps to zero
        let v = QVector2::new(Quaternion::zero(), Quaternion::zero());
        assert_eq!(to_c4(v), CVector4::zero());
    }

    #[test]
    fn c4_complex_linearity_and_j() {
        let v = QVector2::new(Quaternion::new(0.3, -1.2, 0.7, 2.0), Quaternion::new(1.0, 0.5, -0.25, 0.125));
        let lam = Complex64::new(0.6, -1.7);
        let scaled = v.scale(Quaternion::from_complex(lam));
        assert!((to_c4(scaled).sub(to_c4(v).scale(lam))).norm() < 1e-14);
        let vj = v.scale(Q_J);
        assert!((to_c4(vj).sub(to_c4(v).mul_j())).norm() < 1e-14);
    }

    #[test]
    fn forms_example_j_slot() {
        // v = (1,0), w = (j,0): h = j, herm = 0, omega = 1
        let v = QVector2::new(Q_ONE, Quaternion::zero());
        let w = QVector2::new(Q_J, Quaternion::zero());
        let f = eval_forms(v, w);
        assert!((f.h - Q_J).norm() < 1e-15);
        assert!(f.herm.norm() < 1e-15);
        assert!((f.omega - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn forms_isotropic_diagonal() {
        // v = (1,1)/sqrt(2) is isotropic
        let s = 1.0 / 2.0f64.sqrt();
        let v = QVector2::new(Q_ONE * s, Q_ONE * s);
        let f = eval_forms(v, v);
        assert!(f.h.norm() < 1e-15);
        assert!(f.herm.norm() < 1e-15);
    }

    #[test]
    fn decomposition_identity_random() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let v = QVector2::new(crate::rng::quaternion(&mut rng), crate::rng::quaternion(&mut rng));
            let w = QVector2::new(crate::rng::quaternion(&mut rng), crate::rng::quaternion(&mut rng));
            let f = eval_forms(v, w);
            let rebuilt =
                Quaternion::from_complex(f.herm) + Q_J * Quaternion::from_complex(f.omega);
            assert!((f.h - rebuilt).norm() < 1e-12 * (1.0 + f.h.norm()));
        }
    }

    fn det4(m: &[[Complex64; 4]; 4]) -> Complex64 {
        // Laplace expansion along the first row
        let minor = |r: usize, c: usize| {
            let mut sub = [[Complex64::ZERO; 3]; 3];
            let (mut i, mut j);
            i = 0;
            for rr in 0..4 {
                if rr == r {
                    continue;
                }
                j = 0;
                for cc in 0..4 {
                    if cc == c {
                        continue;
                    }
                    sub[i][j] = m[rr][cc];
                    j += 1;
                }
                i += 1;
            }
            sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
                - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
                + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0])
        };
        (0..4)
            .map(|c| {
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                m[0][c] * minor(0, c) * sign
            })
            .sum()
    }

    #[test]
    fn omega_matrix_is_unimodular() {
        // coordinate matrix of omega on the standard basis
        let mut m = [[Complex64::ZERO; 4]; 4];
        for (a, row) in m.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = CVector4::basis(a).omega(CVector4::basis(b));
            }
        }
        assert_abs_diff_eq!(det4(&m).norm(), 1.0, epsilon = 1e-15);
    }
}
