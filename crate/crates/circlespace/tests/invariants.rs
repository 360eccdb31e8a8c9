//! Cross-module invariants that need the whole public surface.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use circlespace::circle::incidence_defect;
use circlespace::tangent::{FieldFn, TangentField};
use circlespace::*;

/// The leaf of a pushed-forward field through the image point is the image
/// of the original leaf.
#[test]
fn leaf_equivariance_under_conformal_maps() {
    let surface = surface_distribution(SurfaceSpec::parse("z4").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for seed in [3u64, 11, 19] {
        let m = moebius::random_conformal(seed);
        let m_inv = m.inverse();
        let inner = surface_distribution(SurfaceSpec::parse("z4").unwrap());
        let pushed = FieldFn(move |y: &S3Point| {
            let x = moebius::act_on_point(&m_inv, y)?;
            let t = inner.eval(&x)?;
            moebius::act_on_tangent(&m, &t)
        });

        let x0 = rng::s3_point(&mut rng);
        let y0 = moebius::act_on_point(&m, &x0).unwrap();

        let original = integrate_leaf(&surface, &x0, 1e-3, 8.0 * std::f64::consts::PI).unwrap();
        let image = integrate_leaf(&pushed, &y0, 1e-3, 12.0 * std::f64::consts::PI).unwrap();
        assert!(original.closed && image.closed);

        let k_image = fibration::circle_for_leaf(&image, &pushed).unwrap();
        // every image of an original sample lies on the image leaf's circle
        for (i, s) in original.samples.iter().enumerate().step_by(97) {
            let p = S3Point::project(Quaternion::from_array(*s)).unwrap();
            let q = moebius::act_on_point(&m, &p).unwrap();
            let defect = incidence_defect(&q, &k_image);
            assert!(
                defect < 1e-6,
                "seed {seed}, sample {i}: defect {defect:.3e}"
            );
        }
    }
}

/// The projective equality criterion accepts rescalings and rejects
/// perturbations.
#[test]
fn projective_equality_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    for _ in 0..200 {
        let e = rng::proj_point(&mut rng);
        let lambda = loop {
            let l = rng::complex(&mut rng);
            if l.norm() > 1e-3 {
                break l;
            }
        };
        let scaled = ProjPoint::new(e.rep().scale(lambda)).unwrap();
        assert!(e.approx_eq(&scaled));

        let mut coords = e.rep().0;
        coords[1] += Complex64::new(1e-3, -2e-3);
        let perturbed = ProjPoint::new(CVector4(coords)).unwrap();
        assert!(!e.approx_eq(&perturbed));
    }
}

/// Boolean incidence is invariant under the conformal action on sampled
/// configurations.
#[test]
fn boolean_incidence_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for seed in 0..30u64 {
        let m = moebius::random_conformal(seed);
        let g = moebius::induced_on_w(&m);
        let (k, _) = loop {
            let r = circle_through_points(
                &rng::s3_point(&mut rng),
                &rng::s3_point(&mut rng),
                &rng::s3_point(&mut rng),
            );
            if let Ok(pair) = r {
                break pair;
            }
        };
        let gk = g.apply_circle(&k).unwrap();
        for (x, _) in parametrize_circle(&k, 3).unwrap() {
            let y = moebius::act_on_point(&m, &x).unwrap();
            assert!(is_incident(&y, &gk));
        }
        let p = rng::s3_point(&mut rng);
        if incidence_defect(&p, &k) > 1e-2 {
            let q = moebius::act_on_point(&m, &p).unwrap();
            assert!(!is_incident(&q, &gk));
        }
    }
}
