//! Reconstruction of a fibration curve from a family of sampled circles.

use num_complex::Complex64;

use crate::circle::CircleRep;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

use super::curve::FibrationCurve;

/// Fits a degree-one fibration curve through a family of circles by
/// extracting the linear span of their representatives in W.
///
/// The span is found from the Hermitian Gram matrix of the normalized
/// representatives; a family of fibers of a degree-one curve spans a
/// two-dimensional totally null plane, and any basis of that plane is a
/// valid coefficient pair. The parametrization of the returned curve is an
/// arbitrary affine coordinate on the family (a normal-form pass absorbs
/// it). The second return value is the worst relative distance of a sample
/// from the fitted span.
pub fn fit_curve_from_circles(circles: &[CircleRep]) -> Result<(FibrationCurve, f64)> {
    if circles.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 circles to fit a family, got {}",
            circles.len()
        )));
    }
    let reps: Vec<[Complex64; 5]> = circles
        .iter()
        .map(|k| {
            let w = k.w_coords();
            let n: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            w.map(|z| z / n)
        })
        .collect();

    // Gram matrix of the family
    let mut gram = CMatrix::zeros(5, 5);
    for rep in &reps {
        for r in 0..5 {
            for c in 0..5 {
                let v = gram.at(r, c) + rep[r] * rep[c].conj();
                gram.set(r, c, v);
            }
        }
    }
    let (vals, vecs) = crate::linalg::hermitian_eigen(&gram);
    let m = circles.len() as f64;
    // eigenvalues ascending; the span of a degree-one family is 2-dim
    let threshold = 1e-7;
    let rank = vals.iter().filter(|&&v| (v.max(0.0) / m).sqrt() > threshold).count();
    if rank != 2 {
        return Err(Error::DegenerateInput(format!(
            "circle family spans {rank} dimensions; only degree-one families are fitted"
        )));
    }
    let fit_residual = (vals[2].max(0.0) / m).sqrt();

    let column = |c: usize| -> [Complex64; 5] { std::array::from_fn(|r| vecs.at(r, c)) };
    let v0 = column(4);
    let v1 = column(3);
    let curve = FibrationCurve::new(vec![v0, v1])?;
    Ok((curve, fit_residual))
}
