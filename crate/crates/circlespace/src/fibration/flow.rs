//! Integral curves of unit tangent fields on the 3-sphere.

use serde::{Deserialize, Serialize};

use crate::circle::{circle_through_points, incidence_defect, orient_circle_to_tangent, CircleRep};
use crate::error::{Error, Result};
use crate::proj::S3Point;
use crate::quat::Quaternion;
use crate::tangent::TangentField;
use crate::tol::Tolerances;

/// A numerically integrated leaf of a foliation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Leaf {
    /// Base points along the trajectory; for closed leaves the final entry
    /// is the refined return point.
    pub samples: Vec<SamplePoint>,
    pub closed: bool,
    /// Distance from the refined return point to the start (for open leaves,
    /// the closest approach seen after leaving the start).
    pub closure_error: f64,
}

/// A point of the 3-sphere in coordinate form, the on-disk sample format.
pub type SamplePoint = [f64; 4];

impl Leaf {
    pub fn points(&self) -> Result<Vec<S3Point>> {
        self.samples
            .iter()
            .map(|a| S3Point::project(Quaternion::from_array(*a)))
            .collect()
    }
}

fn field_vector<T: TangentField + ?Sized>(field: &T, x: &S3Point) -> Result<Quaternion> {
    let t = field.eval(x).map_err(|e| Error::FieldUndefined(e.to_string()))?;
    Ok(t.vector())
}

/// One classical fourth-order step of `x' = T(x)` with renormalization back
/// to the sphere.
fn rk4_step<T: TangentField + ?Sized>(field: &T, x: &S3Point, h: f64) -> Result<S3Point> {
    let xq = x.quaternion();
    let k1 = field_vector(field, x)?;
    let k2 = field_vector(field, &S3Point::project(xq + k1 * (h / 2.0))?)?;
    let k3 = field_vector(field, &S3Point::project(xq + k2 * (h / 2.0))?)?;
    let k4 = field_vector(field, &S3Point::project(xq + k3 * h)?)?;
    S3Point::project(xq + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

/// Integrates the field from `x0` until the trajectory closes up (within the
/// closure tolerance, with matching direction) or `max_t` is exhausted.
pub fn integrate_leaf<T: TangentField + ?Sized>(
    field: &T,
    x0: &S3Point,
    step: f64,
    max_t: f64,
) -> Result<Leaf> {
    let tol_close = Tolerances::global().close;
    let t0 = field_vector(field, x0)?;
    let x0q = x0.quaternion();

    let mut samples: Vec<SamplePoint> = vec![x0q.to_array()];
    let mut x = *x0;
    let mut t = 0.0f64;
    let mut armed = false;
    let mut best_approach = f64::MAX;
    let arm_radius = (10.0 * step).min(0.5);

    // signed section coordinate: the flow crosses zero when passing x0
    let section = |p: &S3Point| (p.quaternion() - x0q).dot(t0);

    while t < max_t {
        let x_prev = x;
        let f_prev = section(&x_prev);
        x = rk4_step(field, &x, step)?;
        t += step;
        samples.push(x.quaternion().to_array());

        let dist = x.distance(x0);
        if !armed {
            if dist > arm_radius {
                armed = true;
            }
            continue;
        }
        best_approach = best_approach.min(dist);
        if dist < arm_radius {
            let f_now = section(&x);
            if f_prev < 0.0 && f_now >= 0.0 {
                // refine the crossing point by bisection on the step fraction
                let mut lo = 0.0f64;
                let mut hi = step;
                let mut x_cross = x;
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let cand = rk4_step(field, &x_prev, mid)?;
                    if section(&cand) >= 0.0 {
                        hi = mid;
                        x_cross = cand;
                    } else {
                        lo = mid;
                    }
                    if hi - lo < 1e-16 {
                        break;
                    }
                }
                let err = x_cross.distance(x0);
                let dir_ok = field_vector(field, &x_cross)?.dot(t0) > 0.0;
                if err < tol_close && dir_ok {
                    *samples.last_mut().unwrap() = x_cross.quaternion().to_array();
                    return Ok(Leaf {
                        samples,
                        closed: true,
                        closure_error: err,
                    });
                }
                best_approach = best_approach.min(err);
            }
        }
    }

    Ok(Leaf {
        samples,
        closed: false,
        closure_error: if best_approach == f64::MAX {
            -1.0
        } else {
            best_approach
        },
    })
}

/// Fits a circle through three spread samples of the leaf and reports the
/// worst incidence defect of the remaining samples against it.
pub fn leaf_is_circle(leaf: &Leaf) -> Result<(bool, f64)> {
    let points = leaf.points()?;
    let n = points.len();
    if n < 8 {
        return Err(Error::DegenerateInput(format!(
            "need at least 8 samples to fit a circle, got {n}"
        )));
    }
    let fit = fit_leaf_circle(&points)?;
    let dev = points
        .iter()
        .map(|p| incidence_defect(p, &fit))
        .fold(0.0f64, f64::max);
    Ok((dev < 1e-6, dev))
}

fn fit_leaf_circle(points: &[S3Point]) -> Result<CircleRep> {
    let n = points.len();
    let mut last_err = Error::DegenerateInput("no usable sample triple".into());
    for attempt in 0..5 {
        let off = attempt * n / 15;
        let idx = [off % n, (off + n / 3) % n, (off + 2 * n / 3) % n];
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            continue;
        }
        match circle_through_points(&points[idx[0]], &points[idx[1]], &points[idx[2]]) {
            Ok((k, _)) => return Ok(k),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// The oriented circle traced by a closed leaf: fitted through sample
/// triples and oriented by the field direction at the start point.
pub fn circle_for_leaf<T: TangentField + ?Sized>(leaf: &Leaf, field: &T) -> Result<CircleRep> {
    let points = leaf.points()?;
    let n = points.len();
    if n < 8 {
        return Err(Error::DegenerateInput(format!(
            "need at least 8 samples to fit a circle, got {n}"
        )));
    }
    let t0 = field
        .eval(&points[0])
        .map_err(|e| Error::FieldUndefined(e.to_string()))?;
    let mut last_err = Error::DegenerateInput("no usable sample triple".into());
    for attempt in 0..5 {
        let off = attempt * n / 15;
        let idx = [off % n, (off + n / 3) % n, (off + 2 * n / 3) % n];
        match circle_through_points(&points[idx[0]], &points[idx[1]], &points[idx[2]]) {
            Ok(pair) => return orient_circle_to_tangent(pair, &t0),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}
