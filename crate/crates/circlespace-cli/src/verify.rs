//! The `verify` subcommand: the full invariant suite as a pass/fail table.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use circlespace::circle::incidence_defect;
use circlespace::fibration::pushforward;
use circlespace::quat::{Q_I, Q_J, Q_K};
use circlespace::*;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn scaled(n: usize, scale: f64) -> usize {
    ((n as f64 * scale) as usize).max(8)
}

pub fn run_suite(seed: u64, scale: f64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let mut check = |name: &'static str, f: &dyn Fn() -> Result<String>| {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        out.push(CheckOutcome {
            name,
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    };

    check("form-decomposition", &|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
        let n = scaled(10_000, scale);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let v = QVector2::new(rng::quaternion(&mut rng), rng::quaternion(&mut rng));
            let w = QVector2::new(rng::quaternion(&mut rng), rng::quaternion(&mut rng));
            let f = eval_forms(v, w);
            let rebuilt =
                Quaternion::from_complex(f.herm) + quat::Q_J * Quaternion::from_complex(f.omega);
            let scale_norm = 1.0 + f.h.norm();
            worst = worst.max((f.h - rebuilt).norm() / scale_norm);
        }
        if worst < 1e-12 {
            Ok(format!("n={n}, worst relative defect {worst:.2e}"))
        } else {
            Err(Error::DegenerateInput(format!("defect {worst:.2e}")))
        }
    });

    check("tangent-roundtrip", &|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
        let n = scaled(10_000, scale);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let t = rng::unit_tangent(&mut rng);
            let back = line_to_tangent(&tangent_to_line(&t)?)?;
            worst = worst
                .max(back.x.distance(&t.x))
                .max((back.mu - t.mu).norm());
        }
        for k in 0..32 {
            let eps = 10f64.powf(-12.0 + 10.0 * (k as f64) / 31.0);
            for m in 0..16 {
                let phi = std::f64::consts::TAU * (m as f64) / 16.0;
                let dir = Q_J * phi.cos() + Q_K * phi.sin();
                let mu = ((-Q_I) * (1.0 - eps * eps / 2.0) + dir * eps)
                    .normalized()
                    .unwrap();
                let t = UnitTangent::new(rng::s3_point(&mut rng), mu).unwrap();
                let back = line_to_tangent(&tangent_to_line(&t)?)?;
                worst = worst
                    .max(back.x.distance(&t.x))
                    .max((back.mu - t.mu).norm());
            }
        }
        if worst < 1e-9 {
            Ok(format!("n={n}+sweep, worst error {worst:.2e}"))
        } else {
            Err(Error::DegenerateInput(format!("round trip error {worst:.2e}")))
        }
    });

    check("cotangency-lemma", &|| {
        let n = scaled(1000, scale);
        let results: Vec<(f64, f64)> = par::map_range(n, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b9 + i as u64));
            let k = random_circle(&mut rng);
            let samples = parametrize_circle(&k, 6).expect("honest circle");
            let mut worst = 0.0f64;
            for a in 0..samples.len() {
                for b in a + 1..samples.len() {
                    let e1 = tangent_to_line(&samples[a].1).unwrap().rep();
                    let e2 = tangent_to_line(&samples[b].1).unwrap().rep();
                    worst = worst.max(e1.omega(e2).norm() / (e1.norm() * e2.norm()));
                }
            }
            let t1 = rng::unit_tangent(&mut rng);
            let t2 = rng::unit_tangent(&mut rng);
            let sep = if t1.x.distance(&t2.x) > 1e-3 {
                let e1 = tangent_to_line(&t1).unwrap().rep();
                let e2 = tangent_to_line(&t2).unwrap().rep();
                e1.omega(e2).norm() / (e1.norm() * e2.norm())
            } else {
                1.0
            };
            (worst, sep)
        });
        let worst = results.iter().map(|r| r.0).fold(0.0f64, f64::max);
        let separated = results.iter().filter(|r| r.1 > 1e-3).count();
        if worst < 1e-9 && separated * 100 >= results.len() * 99 {
            Ok(format!(
                "n={n}, cotangent worst {worst:.2e}, separated {separated}/{n}"
            ))
        } else {
            Err(Error::DegenerateInput(format!(
                "worst {worst:.2e}, separated {separated}/{n}"
            )))
        }
    });

    check("three-point-circles", &|| {
        let n = scaled(1000, scale);
        let worst: f64 = par::map_range(n, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xabcd + i as u64));
            let (pts, k) = loop {
                let p1 = rng::s3_point(&mut rng);
                let p2 = rng::s3_point(&mut rng);
                let p3 = rng::s3_point(&mut rng);
                if let Ok((k, _)) = circle_through_points(&p1, &p2, &p3) {
                    if !k.is_point_circle() {
                        break ([p1, p2, p3], k);
                    }
                }
            };
            pts.iter()
                .map(|p| incidence_defect(p, &k))
                .fold(0.0f64, f64::max)
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        if worst < 1e-8 {
            Ok(format!("n={n}, worst incidence {worst:.2e}"))
        } else {
            Err(Error::DegenerateInput(format!("incidence {worst:.2e}")))
        }
    });

    check("canonical-basis", &|| {
        canonical_real_basis().verify()?;
        Ok("Gram matrix diag(-1,1,1,1,1), sigma-fixed".into())
    });

    check("fibration-validity", &|| {
        let h = hopf_curve(&canonical_real_basis());
        if curve_degree(&h)? != 1 {
            return Err(Error::NotDegreeOne(curve_degree(&h)?));
        }
        let n = scaled(1000, scale);
        let report = validate_fibration(&h, n, seed ^ 0x06);
        if report.passed {
            Ok(format!("degree 1, {n} samples single-fiber"))
        } else {
            Err(Error::DegenerateInput(format!(
                "{} validation failures",
                report.failures.len()
            )))
        }
    });

    check("normal-form-roundtrip", &|| {
        let h = hopf_curve(&canonical_real_basis());
        let n = scaled(100, scale);
        let worst: f64 = par::map_range(n, |i| {
            let g = moebius::induced_on_w(&moebius::random_conformal(seed ^ (0x700 + i as u64)));
            let pushed = pushforward(&g, &h);
            normalize_curve(&pushed).map(|r| r.residual).unwrap_or(1.0)
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        if worst < 1e-8 {
            Ok(format!("n={n}, worst residual {worst:.2e}"))
        } else {
            Err(Error::NormalizationFailed(format!("residual {worst:.2e}")))
        }
    });

    check("plane-foliation-pipeline", &|| {
        let field = surface_distribution(SurfaceSpec::parse("z4")?);
        let n = scaled(64, scale);
        let leaves: Vec<Leaf> = par::map_range(n, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x800 + i as u64));
            let x0 = rng::s3_point(&mut rng);
            integrate_leaf(&field, &x0, 1e-3, 8.0 * std::f64::consts::PI)
                .expect("plane field is total")
        });
        let mut circles = Vec::new();
        for leaf in &leaves {
            if !leaf.closed || leaf.closure_error > 1e-6 {
                return Err(Error::DegenerateInput(format!(
                    "leaf failed to close ({:.2e})",
                    leaf.closure_error
                )));
            }
            let (ok, dev) = leaf_is_circle(leaf)?;
            if !ok {
                return Err(Error::DegenerateInput(format!("circle fit {dev:.2e}")));
            }
            circles.push(fibration::circle_for_leaf(leaf, &field)?);
        }
        let worst_conf: f64 = par::map_range(scaled(100, scale), |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x900 + i as u64));
            conformality_residual(&field, &rng::s3_point(&mut rng), 1e-3).unwrap_or(1.0)
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        if worst_conf > 1e-5 {
            return Err(Error::DegenerateInput(format!(
                "conformality residual {worst_conf:.2e}"
            )));
        }
        let (fitted, _) = fit_curve_from_circles(&circles)?;
        if curve_degree(&fitted)? != 1 {
            return Err(Error::NotDegreeOne(curve_degree(&fitted)?));
        }
        let norm = normalize_curve(&fitted)?;
        if norm.residual > 1e-8 {
            return Err(Error::NormalizationFailed(format!(
                "residual {:.2e}",
                norm.residual
            )));
        }
        Ok(format!(
            "{n} closed leaves, conformality {worst_conf:.2e}, sign {:+}",
            norm.sign
        ))
    });

    check("equivariance", &|| {
        let n = scaled(100, scale);
        let h = hopf_curve(&canonical_real_basis());
        let worst: f64 = par::map_range(n, |i| {
            let s = seed ^ (0x9000 + i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let m = moebius::random_conformal(s);
            let g = moebius::induced_on_w(&m);
            let k = random_circle(&mut rng);
            let gk = g.apply_circle(&k).expect("isometry image");
            let mut worst = 0.0f64;
            for (x, t) in parametrize_circle(&k, 3).expect("honest circle") {
                let y = moebius::act_on_point(&m, &x).unwrap();
                worst = worst.max(incidence_defect(&y, &gk));
                let lhs = moebius::act_on_line(&m, &tangent_to_line(&t).unwrap()).unwrap();
                let rhs = tangent_to_line(&moebius::act_on_tangent(&m, &t).unwrap()).unwrap();
                worst = worst.max(lhs.distance(&rhs));
            }
            if curve_degree(&pushforward(&g, &h)).unwrap_or(0) != 1 {
                worst = worst.max(1.0);
            }
            worst
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        if worst < 1e-8 {
            Ok(format!("n={n}, worst deviation {worst:.2e}"))
        } else {
            Err(Error::DegenerateInput(format!("deviation {worst:.2e}")))
        }
    });

    out
}

fn random_circle(rng: &mut ChaCha8Rng) -> circle::CircleRep {
    loop {
        let p1 = rng::s3_point(rng);
        let p2 = rng::s3_point(rng);
        let p3 = rng::s3_point(rng);
        if let Ok((k, _)) = circle_through_points(&p1, &p2, &p3) {
            if !k.is_point_circle() {
                return k;
            }
        }
    }
}
