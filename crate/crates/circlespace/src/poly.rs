//! Complex polynomial roots and binary forms on the projective line.
//!
//! Roots are found by Durand-Kerner iteration with Newton polishing, which is
//! entirely adequate for the low degrees appearing here. Binary forms carry a
//! nominal degree so that roots at infinity (vanishing leading coefficients)
//! are counted.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex projective line, `[z : w]`.
#[derive(Debug, Clone, Copy)]
pub struct CP1 {
    pub z: Complex64,
    pub w: Complex64,
}

impl CP1 {
    pub fn finite(z: Complex64) -> Self {
        CP1 {
            z,
            w: Complex64::ONE,
        }
    }

    pub fn infinity() -> Self {
        CP1 {
            z: Complex64::ONE,
            w: Complex64::ZERO,
        }
    }

    pub fn is_infinite(&self, tol: f64) -> bool {
        self.w.norm() <= tol * self.z.norm()
    }

    /// Chordal (Fubini-Study) distance, bounded by 1.
    pub fn chordal(&self, other: &CP1) -> f64 {
        let num = (self.z * other.w - other.z * self.w).norm();
        let den = ((self.z.norm_sqr() + self.w.norm_sqr())
            * (other.z.norm_sqr() + other.w.norm_sqr()))
        .sqrt();
        num / den
    }
}

/// Evaluates `sum c_k z^k` by Horner's rule.
pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (k, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * k as f64;
    }
    acc
}

/// Trims high-order coefficients that are negligible relative to the largest.
pub fn trim(coeffs: &[Complex64], rel_tol: f64) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].norm() <= rel_tol * scale {
        end -= 1;
    }
    coeffs[..end].to_vec()
}

/// All roots of a complex polynomial (coefficients ascending, leading
/// coefficient nonzero). Multiple roots come out as nearby copies.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() {
        return Err(Error::RootFindingFailed("zero polynomial".into()));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead.norm() == 0.0 {
        return Err(Error::RootFindingFailed("vanishing leading coefficient".into()));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);

    // classic staggered initial guesses
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|k| seed.powu(k as u32 + 1) * radius / seed.norm())
        .collect();

    let mut converged = false;
    for _ in 0..800 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let mut denom = Complex64::ONE;
            for j in 0..d {
                if j != k {
                    denom *= zs[k] - zs[j];
                }
            }
            if denom.norm() < 1e-290 {
                // nudge coincident iterates apart
                zs[k] += Complex64::new(1e-8, 1e-8) * (k as f64 + 1.0);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(&monic, zs[k]) / denom;
            zs[k] -= step;
            let rel = step.norm() / (1.0 + zs[k].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        // accept if residuals are already tiny (multiple-root stagnation)
        let ok = zs
            .iter()
            .all(|&z| eval(&monic, z).norm() < 1e-8 * (1.0 + z.norm().powi(d as i32)));
        if !ok {
            return Err(Error::RootFindingFailed(format!(
                "Durand-Kerner did not converge for degree {d}"
            )));
        }
    }
    // Newton polish (helps simple roots; harmless on multiple ones)
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let dp = eval_deriv(&monic, *z);
            if dp.norm() < 1e-200 {
                break;
            }
            let step = eval(&monic, *z) / dp;
            if step.norm() > 1.0 {
                break;
            }
            *z -= step;
        }
    }
    Ok(zs)
}

/// Roots on the projective line of a binary form of nominal degree `n`,
/// given as ascending coefficients of the affine polynomial (length at most
/// `n + 1`). Missing leading coefficients contribute roots at infinity.
pub fn roots_cp1(coeffs: &[Complex64], nominal_degree: usize, rel_tol: f64) -> Result<Vec<CP1>> {
    let trimmed = trim(coeffs, rel_tol);
    if trimmed.is_empty() {
        return Err(Error::RootFindingFailed("identically zero form".into()));
    }
    let d = trimmed.len() - 1;
    let mut out: Vec<CP1> = roots(&trimmed)?.into_iter().map(CP1::finite).collect();
    for _ in d..nominal_degree {
        out.push(CP1::infinity());
    }
    Ok(out)
}

/// Groups nearby projective roots; returns representatives with
/// multiplicities, in no particular order.
pub fn cluster_cp1(points: &[CP1], tol: f64) -> Vec<(CP1, usize)> {
    let mut clusters: Vec<(CP1, usize)> = Vec::new();
    for p in points {
        match clusters.iter_mut().find(|(c, _)| c.chordal(p) < tol) {
            Some((_, count)) => *count += 1,
            None => clusters.push((*p, 1)),
        }
    }
    clusters
}

/// Multiplies two polynomials with ascending coefficients.
pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
