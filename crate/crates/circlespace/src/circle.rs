//! The five-dimensional space W of symplectically null bivectors, its
//! nondegenerate symmetric form G, the real structure, and oriented circles.
//!
//! A bivector is null for G exactly when it is decomposable, `v∧w`; if it
//! also lies in W the projective plane spanned by `v, w` is a contact line
//! and its intersection with the quadric Q is the set of positively oriented
//! tangents of a circle. Real points (fixed by the conjugate-linear structure
//! `sigma`) are the degenerate point circles, one for each point of the
//! 3-sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::proj::{fiber_basis, S3Point};
use crate::quat::CVector4;
use crate::tangent::{line_to_tangent, tangent_to_line, UnitTangent};
use crate::tol::Tolerances;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// An element of the second exterior power of complex 4-space, stored by its
/// coefficients on the standard wedge basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bivector {
    pub c12: Complex64,
    pub c13: Complex64,
    pub c14: Complex64,
    pub c23: Complex64,
    pub c24: Complex64,
    pub c34: Complex64,
}

impl Bivector {
    pub fn zero() -> Self {
        Bivector {
            c12: Complex64::ZERO,
            c13: Complex64::ZERO,
            c14: Complex64::ZERO,
            c23: Complex64::ZERO,
            c24: Complex64::ZERO,
            c34: Complex64::ZERO,
        }
    }

    /// Wedge product of two vectors.
    pub fn wedge(v: CVector4, w: CVector4) -> Self {
        let c = |a: usize, b: usize| v.0[a] * w.0[b] - v.0[b] * w.0[a];
        Bivector {
            c12: c(0, 1),
            c13: c(0, 2),
            c14: c(0, 3),
            c23: c(1, 2),
            c24: c(1, 3),
            c34: c(2, 3),
        }
    }

    pub fn coeffs(&self) -> [Complex64; 6] {
        [self.c12, self.c13, self.c14, self.c23, self.c24, self.c34]
    }

    pub fn from_coeffs(c: [Complex64; 6]) -> Self {
        Bivector {
            c12: c[0],
            c13: c[1],
            c14: c[2],
            c23: c[3],
            c24: c[4],
            c34: c[5],
        }
    }

    pub fn add(&self, o: &Bivector) -> Bivector {
        let a = self.coeffs();
        let b = o.coeffs();
        Bivector::from_coeffs([
            a[0] + b[0],
            a[1] + b[1],
            a[2] + b[2],
            a[3] + b[3],
            a[4] + b[4],
            a[5] + b[5],
        ])
    }

    pub fn scale(&self, s: Complex64) -> Bivector {
        Bivector::from_coeffs(self.coeffs().map(|c| c * s))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Value of the symplectic functional: zero exactly on W.
    pub fn omega_pairing(&self) -> Complex64 {
        self.c12 - self.c34
    }

    /// Coordinates on the canonical real basis of W. Only meaningful for
    /// bivectors in W (the 12/34 slots are averaged).
    pub fn w_coords(&self) -> [Complex64; 5] {
        let i = Complex64::I;
        [
            (self.c12 + self.c34) / SQRT2,
            (self.c13 + self.c24) / SQRT2,
            i * (self.c24 - self.c13) / SQRT2,
            (self.c14 - self.c23) / SQRT2,
            -i * (self.c14 + self.c23) / SQRT2,
        ]
    }

    /// Rebuilds a bivector in W from canonical coordinates.
    pub fn from_w_coords(w: [Complex64; 5]) -> Self {
        let i = Complex64::I;
        Bivector {
            c12: w[0] / SQRT2,
            c34: w[0] / SQRT2,
            c13: (w[1] + i * w[2]) / SQRT2,
            c24: (w[1] - i * w[2]) / SQRT2,
            c14: (w[3] + i * w[4]) / SQRT2,
            c23: (-w[3] + i * w[4]) / SQRT2,
        }
    }
}

/// The symmetric bilinear form on bivectors: the negative coefficient of the
/// top wedge in `a ∧ b`. On decomposables this is `-det[v w v' w']`.
#[allow(non_snake_case)]
pub fn G(a: &Bivector, b: &Bivector) -> Complex64 {
    -(a.c12 * b.c34 + a.c34 * b.c12 - a.c13 * b.c24 - a.c24 * b.c13
        + a.c14 * b.c23
        + a.c23 * b.c14)
}

/// Same form in canonical coordinates: `-w0·u0 + w1·u1 + ... + w4·u4`
/// (complex bilinear).
pub fn g_w(a: &[Complex64; 5], b: &[Complex64; 5]) -> Complex64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4]
}

/// The conjugate-linear real structure `v∧w -> (vj)∧(wj)`.
pub fn sigma(a: &Bivector) -> Bivector {
    // action on the wedge basis: E12, E34 fixed; E13 <-> E24; E14 <-> -E23
    Bivector {
        c12: a.c12.conj(),
        c34: a.c34.conj(),
        c13: a.c24.conj(),
        c24: a.c13.conj(),
        c14: -a.c23.conj(),
        c23: -a.c14.conj(),
    }
}

/// Wedge of a vector with a bivector; components on the basis
/// `(E234, E134, E124, E123)` of the third exterior power.
pub fn wedge_vector_bivector(v: CVector4, b: &Bivector) -> [Complex64; 4] {
    // (v ∧ b)_{abc} with a<b<c; coefficient order E123, E124, E134, E234
    let e123 = v.0[0] * b.c23 - v.0[1] * b.c13 + v.0[2] * b.c12;
    let e124 = v.0[0] * b.c24 - v.0[1] * b.c14 + v.0[3] * b.c12;
    let e134 = v.0[0] * b.c34 - v.0[2] * b.c14 + v.0[3] * b.c13;
    let e234 = v.0[1] * b.c34 - v.0[2] * b.c24 + v.0[3] * b.c23;
    [e123, e124, e134, e234]
}

/// A projective point of the circle quadric: a null bivector in W,
/// normalized so the largest-modulus coefficient is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRep {
    w: Bivector,
}

impl CircleRep {
    /// Validates membership in W and nullity, then normalizes.
    pub fn new(w: Bivector) -> Result<Self> {
        let tol = Tolerances::global().null;
        let scale = w.norm();
        if scale < 1e-150 {
            return Err(Error::DegenerateInput("zero bivector".into()));
        }
        let pairing = w.omega_pairing().norm() / scale;
        if pairing >= tol.max(1e-12) * 10.0 {
            return Err(Error::NotInW(pairing));
        }
        let null = G(&w, &w).norm() / (scale * scale);
        if null >= tol.max(1e-12) * 10.0 {
            return Err(Error::NonNull(null));
        }
        Ok(CircleRep {
            w: normalize_bivector(w),
        })
    }

    pub fn bivector(&self) -> &Bivector {
        &self.w
    }

    pub fn w_coords(&self) -> [Complex64; 5] {
        self.w.w_coords()
    }

    pub fn from_w_coords(w: [Complex64; 5]) -> Result<Self> {
        CircleRep::new(Bivector::from_w_coords(w))
    }

    /// Projective distance to another circle.
    pub fn distance(&self, other: &CircleRep) -> f64 {
        proj_distance6(&self.w, &other.w)
    }

    /// A circle is real (a point circle) when it coincides with its
    /// conjugate projectively.
    pub fn is_point_circle(&self) -> bool {
        let s = sigma(&self.w);
        proj_distance6(&self.w, &s) < Tolerances::global().point_circle
    }

    pub fn approx_eq(&self, other: &CircleRep) -> bool {
        self.distance(other) < Tolerances::global().proj.sqrt()
    }
}

fn normalize_bivector(w: Bivector) -> Bivector {
    let cs = w.coeffs();
    let mut best = 0usize;
    let mut best_n = 0.0f64;
    for (k, c) in cs.iter().enumerate() {
        if c.norm_sqr() > best_n {
            best_n = c.norm_sqr();
            best = k;
        }
    }
    w.scale(Complex64::ONE / cs[best])
}

/// Projective chord distance between bivectors: the phase-aligned gap
/// between normalized representatives (exact near zero).
pub fn proj_distance6(a: &Bivector, b: &Bivector) -> f64 {
    let an = a.scale(Complex64::new(1.0 / a.norm(), 0.0));
    let bn = b.scale(Complex64::new(1.0 / b.norm(), 0.0));
    let dot: Complex64 = an
        .coeffs()
        .iter()
        .zip(bn.coeffs().iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    let aligned = if dot.norm() > 1e-150 {
        bn.scale(dot.conj() / dot.norm())
    } else {
        bn
    };
    an.add(&aligned.scale(-Complex64::ONE)).norm()
}

/// The degenerate circle at a point: the wedge of a fiber basis.
pub fn point_circle(x: &S3Point) -> CircleRep {
    let (v, vj) = fiber_basis(x);
    CircleRep::new(Bivector::wedge(v, vj)).expect("point circles are null by construction")
}

/// Five real basis bivectors with Gram matrix `diag(-1, 1, 1, 1, 1)`.
#[derive(Debug, Clone)]
pub struct RealBasis {
    pub vectors: [Bivector; 5],
}

impl RealBasis {
    /// Checks sigma-fixedness and the Gram matrix.
    pub fn verify(&self) -> Result<()> {
        let expected = [-1.0, 1.0, 1.0, 1.0, 1.0];
        for (i, e) in self.vectors.iter().enumerate() {
            let s = sigma(e);
            if proj_distance6(e, &s) > 1e-12 || (s.add(&e.scale(-Complex64::ONE))).norm() > 1e-12 {
                return Err(Error::DegenerateInput(format!("basis vector {i} is not real")));
            }
            for (j, f) in self.vectors.iter().enumerate() {
                let g = G(e, f);
                let want = if i == j { expected[i] } else { 0.0 };
                if (g - Complex64::new(want, 0.0)).norm() > 1e-12 {
                    return Err(Error::DegenerateInput(format!(
                        "Gram deviation at ({i},{j}): {g}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The canonical real basis used throughout for coordinates on W.
pub fn canonical_real_basis() -> RealBasis {
    let mut vectors = [Bivector::zero(); 5];
    for (k, v) in vectors.iter_mut().enumerate() {
        let mut coords = [Complex64::ZERO; 5];
        coords[k] = Complex64::ONE;
        *v = Bivector::from_w_coords(coords);
    }
    RealBasis { vectors }
}

/// The oriented circle positively tangent to two cotangent unit tangents.
pub fn circle_from_tangents(t1: &UnitTangent, t2: &UnitTangent) -> Result<CircleRep> {
    if t1.x.distance(&t2.x) < 1e-9 {
        return Err(Error::DegenerateInput(
            "tangents share their base point".into(),
        ));
    }
    let e1 = tangent_to_line(t1)?;
    let e2 = tangent_to_line(t2)?;
    let r1 = e1.rep();
    let r2 = e2.rep();
    let omega = r1.omega(r2).norm() / (r1.norm() * r2.norm());
    if omega >= Tolerances::global().null.max(1e-12) * 10.0 {
        return Err(Error::NotCotangent(omega));
    }
    CircleRep::new(Bivector::wedge(r1, r2))
}

/// Incidence of a point with a circle: vanishing of G against the point
/// circle, relative to the representative norms.
pub fn is_incident(p: &S3Point, k: &CircleRep) -> bool {
    incidence_defect(p, k) < Tolerances::global().incidence
}

/// The normalized incidence value `|G(point_circle(p), k)| / (|·|·|·|)`.
pub fn incidence_defect(p: &S3Point, k: &CircleRep) -> f64 {
    let pc = point_circle(p);
    let g = G(pc.bivector(), k.bivector());
    g.norm() / (pc.bivector().norm() * k.bivector().norm())
}

/// Both orientations of the circle through three pairwise distinct points.
///
/// Solves for the two-dimensional G-orthogonal complement of the three point
/// circles inside W and intersects it with the null cone. The result order is
/// fixed by a coordinate functional so the call is deterministic.
pub fn circle_through_points(
    p1: &S3Point,
    p2: &S3Point,
    p3: &S3Point,
) -> Result<(CircleRep, CircleRep)> {
    let pts = [p1, p2, p3];
    for i in 0..3 {
        for j in i + 1..3 {
            if pts[i].distance(pts[j]) < 1e-9 {
                return Err(Error::DegenerateInput(format!(
                    "points {i} and {j} coincide"
                )));
            }
        }
    }
    // rows: G(point_circle(p_i), ·) as functionals in canonical coordinates
    let eta = [-1.0, 1.0, 1.0, 1.0, 1.0];
    let rows: Vec<Vec<Complex64>> = pts
        .iter()
        .map(|p| {
            let w = point_circle(p).w_coords();
            (0..5).map(|k| w[k] * eta[k]).collect()
        })
        .collect();
    let m = CMatrix::from_rows(&rows);
    let ns = linalg::nullspace(&m, 1e-10);
    if ns.len() != 2 {
        return Err(Error::DegenerateInput(format!(
            "orthogonal complement has dimension {} (expected 2)",
            ns.len()
        )));
    }
    let u1: [Complex64; 5] = std::array::from_fn(|k| ns[0][k]);
    let u2: [Complex64; 5] = std::array::from_fn(|k| ns[1][k]);
    let a = g_w(&u1, &u1);
    let b = g_w(&u1, &u2);
    let c = g_w(&u2, &u2);

    // alpha^2 a + 2 alpha beta b + beta^2 c = 0
    let scale = a.norm().max(b.norm()).max(c.norm());
    let (s1, s2): ((Complex64, Complex64), (Complex64, Complex64)) = if scale < 1e-14 {
        return Err(Error::DegenerateInput("null-cone intersection degenerate".into()));
    } else if a.norm() < 1e-12 * scale {
        ((Complex64::ONE, Complex64::ZERO), (c, -2.0 * b))
    } else {
        let disc = (b * b - a * c).sqrt();
        (((-b + disc) / a, Complex64::ONE), ((-b - disc) / a, Complex64::ONE))
    };

    let build = |(alpha, beta): (Complex64, Complex64)| -> Result<CircleRep> {
        let coords: [Complex64; 5] = std::array::from_fn(|k| alpha * u1[k] + beta * u2[k]);
        CircleRep::from_w_coords(coords)
    };
    let k1 = build(s1)?;
    let k2 = build(s2)?;

    // deterministic order via a fixed functional on normalized coefficients
    let key = |k: &CircleRep| {
        let cs = k.bivector().coeffs();
        let mut f = Complex64::ZERO;
        for (m, c) in cs.iter().enumerate() {
            f += c * Complex64::new(1.0 + m as f64, 0.3 * (m as f64 + 0.5));
        }
        (f.im, f.re)
    };
    let (a1, a2) = (key(&k1), key(&k2));
    if a1 > a2 {
        Ok((k1, k2))
    } else {
        Ok((k2, k1))
    }
}

/// Factors a non-degenerate circle representative into `v ∧ w` and returns a
/// basis `(p, q)` of the contact plane with `(p,p) = 1`, `(q,q) = -1`,
/// `(p,q) = 0` for the Hermitian (2,2)-form.
fn signature_frame(k: &CircleRep) -> Result<(CVector4, CVector4)> {
    if k.is_point_circle() {
        return Err(Error::DegenerateCircle);
    }
    let b = k.bivector();
    // the antisymmetric coefficient matrix maps onto the contact plane
    let col = |u: CVector4| -> CVector4 {
        let m = [
            [Complex64::ZERO, b.c12, b.c13, b.c14],
            [-b.c12, Complex64::ZERO, b.c23, b.c24],
            [-b.c13, -b.c23, Complex64::ZERO, b.c34],
            [-b.c14, -b.c24, -b.c34, Complex64::ZERO],
        ];
        CVector4(std::array::from_fn(|r| {
            (0..4).map(|c| m[r][c] * u.0[c]).sum()
        }))
    };
    let mut v = CVector4::zero();
    for cand in 0..4 {
        let c = col(CVector4::basis(cand));
        if c.norm() > v.norm() {
            v = c;
        }
    }
    if v.norm() < 1e-12 {
        return Err(Error::DegenerateInput("bivector has rank zero".into()));
    }
    let v = v.scale(Complex64::new(1.0 / v.norm(), 0.0));
    let mut w = CVector4::zero();
    for cand in 0..4 {
        let mut c = col(CVector4::basis(cand));
        // remove the v component (standard pairing)
        c = c.sub(v.scale(v.dot_std(c)));
        if c.norm() > w.norm() {
            w = c;
        }
    }
    if w.norm() < 1e-10 {
        return Err(Error::DegenerateInput("bivector is not rank two".into()));
    }
    let w = w.scale(Complex64::new(1.0 / w.norm(), 0.0));

    // consistency: v ∧ w reproduces the circle
    let recon = Bivector::wedge(v, w);
    if proj_distance6(&recon, b) > 1e-7 {
        return Err(Error::NonNull(proj_distance6(&recon, b)));
    }

    // diagonalize the restricted Hermitian form on span(v, w)
    let h = CMatrix::from_rows(&[
        vec![v.herm(v), v.herm(w)],
        vec![w.herm(v), w.herm(w)],
    ]);
    let (vals, vecs) = linalg::hermitian_eigen(&h);
    // ascending: vals[0] < 0 < vals[1] for an honest circle
    if vals[0] > -1e-9 || vals[1] < 1e-9 {
        return Err(Error::DegenerateCircle);
    }
    let comb = |col: usize| -> CVector4 {
        v.scale(vecs.at(0, col)).add(w.scale(vecs.at(1, col)))
    };
    let q = comb(0).scale(Complex64::new(1.0 / (-vals[0]).sqrt(), 0.0));
    let p = comb(1).scale(Complex64::new(1.0 / vals[1].sqrt(), 0.0));
    Ok((p, q))
}

/// A diagonalized contact frame of a non-degenerate circle, caching the
/// factorization so many points can be sampled cheaply.
#[derive(Debug, Clone)]
pub struct CircleFrame {
    p: CVector4,
    q: CVector4,
}

impl CircleFrame {
    pub fn new(k: &CircleRep) -> Result<Self> {
        let (p, q) = signature_frame(k)?;
        Ok(CircleFrame { p, q })
    }

    /// The point of the circle at angle `theta`, with its positively
    /// oriented tangent.
    pub fn point_at(&self, theta: f64) -> Result<(S3Point, UnitTangent)> {
        let phase = Complex64::from_polar(1.0, theta);
        let rep = self.p.scale(phase).add(self.q);
        let e = crate::proj::ProjPoint::new(rep)?;
        let t = line_to_tangent(&e)?;
        Ok((t.x, t))
    }
}

/// The point of the circle at angle `theta` in its signature frame, with its
/// positively oriented tangent. Use [`CircleFrame`] to sample many angles.
pub fn circle_point_at(k: &CircleRep, theta: f64) -> Result<(S3Point, UnitTangent)> {
    CircleFrame::new(k)?.point_at(theta)
}

/// Samples `n` points of the circle with their tangents; every base point is
/// incident with the circle.
pub fn parametrize_circle(k: &CircleRep, n: usize) -> Result<Vec<(S3Point, UnitTangent)>> {
    let frame = CircleFrame::new(k)?;
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let theta = std::f64::consts::TAU * (m as f64) / (n as f64);
        out.push(frame.point_at(theta)?);
    }
    Ok(out)
}

/// Picks whichever orientation of a circle has the given tangent on its
/// contact plane.
pub fn orient_circle_to_tangent(
    candidates: (CircleRep, CircleRep),
    t: &UnitTangent,
) -> Result<CircleRep> {
    let e = tangent_to_line(t)?.rep();
    let defect = |k: &CircleRep| -> f64 {
        let w = wedge_vector_bivector(e, k.bivector());
        let n: f64 = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        n / (e.norm() * k.bivector().norm())
    };
    let (d1, d2) = (defect(&candidates.0), defect(&candidates.1));
    Ok(if d1 <= d2 { candidates.0 } else { candidates.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{Quaternion, Q_I, Q_J, Q_K, Q_ONE};
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn e_basis(a: usize, b: usize) -> Bivector {
        let mut biv = Bivector::zero();
        let one = Complex64::ONE;
        match (a, b) {
            (1, 2) => biv.c12 = one,
            (1, 3) => biv.c13 = one,
            (1, 4) => biv.c14 = one,
            (2, 3) => biv.c23 = one,
            (2, 4) => biv.c24 = one,
            (3, 4) => biv.c34 = one,
            _ => panic!("bad index"),
        }
        biv
    }

    /// Full permutation-expansion oracle for the top-wedge coefficient of
    /// a ∧ b, independent of the six-term formula in `G`.
    fn g_oracle(a: &Bivector, b: &Bivector) -> Complex64 {
        let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let ac = a.coeffs();
        let bc = b.coeffs();
        let mut total = Complex64::ZERO;
        for (i, &(p1, p2)) in idx.iter().enumerate() {
            for (j, &(q1, q2)) in idx.iter().enumerate() {
                let quad = [p1, p2, q1, q2];
                // skip unless a permutation of 0..4
                let mut seen = [false; 4];
                let mut ok = true;
                for &v in &quad {
                    if seen[v] {
                        ok = false;
                        break;
                    }
                    seen[v] = true;
                }
                if !ok {
                    continue;
                }
                // parity of the permutation
                let mut perm = quad;
                let mut sign = 1.0;
                for x in 0..4 {
                    for y in x + 1..4 {
                        if perm[x] > perm[y] {
                            perm.swap(x, y);
                            sign = -sign;
                        }
                    }
                }
                total += ac[i] * bc[j] * sign;
            }
        }
        -total
    }

    #[test]
    fn g_examples() {
        let a = e_basis(1, 2).add(&e_basis(3, 4));
        assert!((G(&a, &a) - c(-2.0, 0.0)).norm() < 1e-15);
        let b = e_basis(1, 3);
        assert!(G(&b, &b).norm() < 1e-15);
        let d = e_basis(1, 3).add(&e_basis(2, 4));
        assert!((G(&d, &d) - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn g_matches_permutation_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let a = Bivector::from_coeffs(std::array::from_fn(|_| crate::rng::complex(&mut rng)));
            let b = Bivector::from_coeffs(std::array::from_fn(|_| crate::rng::complex(&mut rng)));
            assert!((G(&a, &b) - g_oracle(&a, &b)).norm() < 1e-10);
            assert!((G(&a, &b) - G(&b, &a)).norm() < 1e-10, "G symmetric");
        }
    }

    #[test]
    fn g_is_negative_det_on_decomposables() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(18);
        for _ in 0..100 {
            let v = crate::rng::cvector4(&mut rng);
            let w = crate::rng::cvector4(&mut rng);
            let vp = crate::rng::cvector4(&mut rng);
            let wp = crate::rng::cvector4(&mut rng);
            // det[v w v' w'] via the wedge coefficient identity
            let lhs = G(&Bivector::wedge(v, w), &Bivector::wedge(vp, wp));
            // independent 4x4 determinant (cofactor along first column)
            let m = [v, w, vp, wp];
            let det = det4_cols(&m);
            assert!((lhs + det).norm() < 1e-9 * (1.0 + det.norm()));
        }
    }

    fn det4_cols(cols: &[CVector4; 4]) -> Complex64 {
        let a = |r: usize, c: usize| cols[c].0[r];
        let det3 = |r: [usize; 3], c: [usize; 3]| {
            a(r[0], c[0]) * (a(r[1], c[1]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[1]))
                - a(r[0], c[1]) * (a(r[1], c[0]) * a(r[2], c[2]) - a(r[1], c[2]) * a(r[2], c[0]))
                + a(r[0], c[2]) * (a(r[1], c[0]) * a(r[2], c[1]) - a(r[1], c[1]) * a(r[2], c[0]))
        };
        let mut det = Complex64::ZERO;
        for r in 0..4 {
            let rows: [usize; 3] = {
                let mut v = [0; 3];
                let mut k = 0;
                for rr in 0..4 {
                    if rr != r {
                        v[k] = rr;
                        k += 1;
                    }
                }
                v
            };
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            det += a(r, 0) * det3(rows, [1, 2, 3]) * sign;
        }
        det
    }

    #[test]
    fn sigma_action_table() {
        // sigma(E13) = E24
        let s = sigma(&e_basis(1, 3));
        assert!((s.add(&e_basis(2, 4).scale(-Complex64::ONE))).norm() < 1e-15);
        // sigma(i·E12) = -i·E12
        let s = sigma(&e_basis(1, 2).scale(Complex64::I));
        assert!((s.add(&e_basis(1, 2).scale(Complex64::I))).norm() < 1e-15);
        // sigma(E14) = -E23
        let s = sigma(&e_basis(1, 4));
        assert!((s.add(&e_basis(2, 3))).norm() < 1e-15);
    }

    #[test]
    fn sigma_is_involution_and_matches_j_map() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let a = Bivector::from_coeffs(std::array::from_fn(|_| crate::rng::complex(&mut rng)));
            let ss = sigma(&sigma(&a));
            assert!((ss.add(&a.scale(-Complex64::ONE))).norm() < 1e-12);
            // on decomposables sigma is the j-map on both factors
            let v = crate::rng::cvector4(&mut rng);
            let w = crate::rng::cvector4(&mut rng);
            let lhs = sigma(&Bivector::wedge(v, w));
            let rhs = Bivector::wedge(v.mul_j(), w.mul_j());
            assert!((lhs.add(&rhs.scale(-Complex64::ONE))).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn w_is_five_dimensional() {
        // the kernel of the symplectic functional on the 6 basis bivectors
        let kernel = [
            e_basis(1, 2).add(&e_basis(3, 4)),
            e_basis(1, 3),
            e_basis(1, 4),
            e_basis(2, 3),
            e_basis(2, 4),
        ];
        for b in &kernel {
            assert!(b.omega_pairing().norm() < 1e-15);
        }
        assert!(e_basis(1, 2).omega_pairing().norm() > 0.5);
    }

    #[test]
    fn w_coords_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
        for _ in 0..100 {
            let coords: [Complex64; 5] = std::array::from_fn(|_| crate::rng::complex(&mut rng));
            let b = Bivector::from_w_coords(coords);
            assert!(b.omega_pairing().norm() < 1e-12);
            let back = b.w_coords();
            for k in 0..5 {
                assert!((back[k] - coords[k]).norm() < 1e-12);
            }
            // g_w agrees with G
            let c2: [Complex64; 5] = std::array::from_fn(|_| crate::rng::complex(&mut rng));
            let b2 = Bivector::from_w_coords(c2);
            assert!((G(&b, &b2) - g_w(&coords, &c2)).norm() < 1e-10);
        }
    }

    #[test]
    fn canonical_basis_gram_and_reality() {
        let basis = canonical_real_basis();
        basis.verify().unwrap();
        // explicit coefficient checks against the construction
        let e0 = &basis.vectors[0];
        assert!((e0.c12 - c(1.0 / SQRT2, 0.0)).norm() < 1e-15);
        assert!((e0.c34 - c(1.0 / SQRT2, 0.0)).norm() < 1e-15);
        let e2 = &basis.vectors[2];
        assert!((e2.c13 - c(0.0, 1.0 / SQRT2)).norm() < 1e-15);
        assert!((e2.c24 - c(0.0, -1.0 / SQRT2)).norm() < 1e-15);
        let e4 = &basis.vectors[4];
        assert!((e4.c14 - c(0.0, 1.0 / SQRT2)).norm() < 1e-15);
        assert!((e4.c23 - c(0.0, 1.0 / SQRT2)).norm() < 1e-15);
    }

    fn s3(q: Quaternion) -> S3Point {
        S3Point::new(q).unwrap()
    }

    #[test]
    fn point_circle_examples() {
        // x = 1: E12 + E34 + E14 - E23
        let pc = point_circle(&s3(Q_ONE));
        let expected = e_basis(1, 2)
            .add(&e_basis(3, 4))
            .add(&e_basis(1, 4))
            .add(&e_basis(2, 3).scale(-Complex64::ONE));
        assert!(proj_distance6(pc.bivector(), &expected) < 1e-12);
        // canonical coordinates: sqrt(2)·(e0 + e3)
        let w = pc.w_coords();
        let want = [c(SQRT2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(SQRT2, 0.0), c(0.0, 0.0)];
        // representative is normalized, so compare projectively
        let dot: Complex64 = w.iter().zip(want.iter()).map(|(a, b)| a.conj() * b).sum();
        let n1: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        let n2: f64 = want.iter().map(|z| z.norm_sqr()).sum();
        assert!(dot.norm_sqr() > (1.0 - 1e-12) * n1 * n2);

        // x = j: E12 + E34 + E13 + E24
        let pc = point_circle(&s3(Q_J));
        let expected = e_basis(1, 2)
            .add(&e_basis(3, 4))
            .add(&e_basis(1, 3))
            .add(&e_basis(2, 4));
        assert!(proj_distance6(pc.bivector(), &expected) < 1e-12);
    }

    #[test]
    fn point_circles_are_real_and_null() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let x = crate::rng::s3_point(&mut rng);
            let pc = point_circle(&x);
            assert!(pc.is_point_circle());
            assert!(G(pc.bivector(), pc.bivector()).norm() < 1e-12);
        }
    }

    fn ut(x: Quaternion, mu: Quaternion) -> UnitTangent {
        UnitTangent::new(s3(x), mu).unwrap()
    }

    #[test]
    fn circle_from_tangents_examples() {
        // tangents of the unit circle in the complex line
        let k = circle_from_tangents(&ut(Q_ONE, Q_I), &ut(Q_I, Q_I)).unwrap();
        assert!(proj_distance6(k.bivector(), &e_basis(1, 3)) < 1e-12);

        // non-cotangent pair
        let r = circle_from_tangents(&ut(Q_ONE, Q_I), &ut(Q_J, Q_K));
        assert!(matches!(r, Err(Error::NotCotangent(_))));

        // coincident base points
        let r = circle_from_tangents(&ut(Q_ONE, Q_I), &ut(Q_ONE, Q_J));
        assert!(matches!(r, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn incidence_examples() {
        let k = CircleRep::new(e_basis(1, 3)).unwrap();
        assert!(is_incident(&s3(Q_ONE), &k));
        assert!(!is_incident(&s3(Q_J), &k));
    }

    #[test]
    fn circle_through_points_unit_circle() {
        let (k1, k2) = circle_through_points(&s3(Q_ONE), &s3(Q_I), &s3(-Q_ONE)).unwrap();
        // the two orientations are [E13] and [E24] = sigma([E13])
        let e13 = e_basis(1, 3);
        let e24 = e_basis(2, 4);
        let matches_pair = (proj_distance6(k1.bivector(), &e13) < 1e-9
            && proj_distance6(k2.bivector(), &e24) < 1e-9)
            || (proj_distance6(k1.bivector(), &e24) < 1e-9
                && proj_distance6(k2.bivector(), &e13) < 1e-9);
        assert!(matches_pair, "got {:?} / {:?}", k1, k2);
        for k in [&k1, &k2] {
            assert!(is_incident(&s3(Q_ONE), k));
            assert!(is_incident(&s3(Q_I), k));
            assert!(is_incident(&s3(-Q_ONE), k));
        }

        // repeated point is rejected
        assert!(matches!(
            circle_through_points(&s3(Q_ONE), &s3(Q_ONE), &s3(Q_I)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn circle_through_points_great_circle() {
        let (k1, k2) = circle_through_points(&s3(Q_ONE), &s3(Q_J), &s3(-Q_ONE)).unwrap();
        for k in [&k1, &k2] {
            for q in [Q_ONE, Q_J, -Q_ONE, -Q_J] {
                assert!(is_incident(&s3(q), k));
            }
        }
        // the two orientations are conjugate to each other
        let s = sigma(k1.bivector());
        assert!(proj_distance6(&s, k2.bivector()) < 1e-9);
    }

    #[test]
    fn circle_orthogonality_rank() {
        // the result is G-orthogonal to exactly the 3-dim span of the inputs
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(27);
        for _ in 0..20 {
            let p1 = crate::rng::s3_point(&mut rng);
            let p2 = crate::rng::s3_point(&mut rng);
            let p3 = crate::rng::s3_point(&mut rng);
            let Ok((k, _)) = circle_through_points(&p1, &p2, &p3) else {
                continue;
            };
            let kw = k.w_coords();
            for p in [&p1, &p2, &p3] {
                let pw = point_circle(p).w_coords();
                assert!(g_w(&pw, &kw).norm() < 1e-8 * 10.0);
            }
        }
    }

    #[test]
    fn parametrize_unit_circle() {
        let k = CircleRep::new(e_basis(1, 3)).unwrap();
        let samples = parametrize_circle(&k, 4).unwrap();
        assert_eq!(samples.len(), 4);
        for (x, t) in &samples {
            // base points are unit complex numbers
            let q = x.quaternion();
            assert!(q.y.abs() < 1e-9 && q.z.abs() < 1e-9, "{q:?}");
            assert!(is_incident(x, &k));
            assert!((t.mu - Q_I).norm() < 1e-9 || (t.mu + Q_I).norm() < 1e-9);
        }
        // the four points are the fourth roots of unity in some rotation
        for (x, _) in &samples {
            let q = x.quaternion();
            let val = Complex64::new(q.w, q.x);
            assert!((val.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn parametrize_shifted_circle() {
        let k = CircleRep::new(e_basis(2, 3)).unwrap();
        let samples = parametrize_circle(&k, 8).unwrap();
        for (x, _) in &samples {
            // base points lie on { j·e^{i·theta} }: w = z = 0 in the split
            let (z, w) = x.quaternion().complex_split();
            assert!(z.norm() < 1e-9, "{:?}", x);
            assert!((w.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn parametrize_rejects_point_circles() {
        let pc = point_circle(&s3(Q_ONE));
        assert!(matches!(
            parametrize_circle(&pc, 4),
            Err(Error::DegenerateCircle)
        ));
    }

    #[test]
    fn sampled_tangents_are_cotangent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let (k, _) = circle_through_points(
                &crate::rng::s3_point(&mut rng),
                &crate::rng::s3_point(&mut rng),
                &crate::rng::s3_point(&mut rng),
            )
            .unwrap();
            let samples = parametrize_circle(&k, 6).unwrap();
            for i in 0..samples.len() {
                for j in i + 1..samples.len() {
                    let e1 = tangent_to_line(&samples[i].1).unwrap().rep();
                    let e2 = tangent_to_line(&samples[j].1).unwrap().rep();
                    let om = e1.omega(e2).norm() / (e1.norm() * e2.norm());
                    assert!(om < 1e-9, "omega = {om:.3e}");
                }
            }
        }
    }

    #[test]
    fn orientation_pick_matches_tangent() {
        let t = ut(Q_ONE, Q_I);
        let pair = circle_through_points(&s3(Q_ONE), &s3(Q_I), &s3(-Q_ONE)).unwrap();
        let k = orient_circle_to_tangent(pair, &t).unwrap();
        assert!(proj_distance6(k.bivector(), &e_basis(1, 3)) < 1e-9);
        // the opposite tangent picks the conjugate orientation
        let t2 = ut(Q_ONE, -Q_I);
        let pair = circle_through_points(&s3(Q_ONE), &s3(Q_I), &s3(-Q_ONE)).unwrap();
        let k2 = orient_circle_to_tangent(pair, &t2).unwrap();
        assert!(proj_distance6(k2.bivector(), &e_basis(2, 4)) < 1e-9);
    }
}
