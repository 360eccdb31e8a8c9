//! Tolerance bundle used by the whole crate.
//!
//! All checks are relative where a scale is available. The env var
//! `CIRCLESPACE_TOL` rescales the bundle: its value replaces the base
//! tolerance 1e-9 and every other threshold scales by the same factor.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Isotropy / null-form membership, relative.
    pub null: f64,
    /// Unit-length checks on quaternions.
    pub unit: f64,
    /// Projective equality (angle criterion).
    pub proj: f64,
    /// Point-on-circle incidence, on normalized representatives.
    pub incidence: f64,
    /// Form-preservation defect for conformal matrices.
    pub group: f64,
    /// A circle counts as a point circle below this projective distance to its
    /// conjugate.
    pub point_circle: f64,
    /// Leaf closure detection.
    pub close: f64,
    /// Root clustering for gcd removal and multiplicity counting (chordal).
    pub root_cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            null: 1e-9,
            unit: 1e-9,
            proj: 1e-9,
            incidence: 1e-8,
            group: 1e-10,
            point_circle: 1e-7,
            close: 1e-6,
            root_cluster: 1e-6,
        }
    }
}

impl Tolerances {
    /// Uniformly rescale the bundle (factor relative to the 1e-9 base).
    pub fn scaled(factor: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            null: d.null * factor,
            unit: d.unit * factor,
            proj: d.proj * factor,
            incidence: d.incidence * factor,
            group: d.group * factor,
            point_circle: d.point_circle * factor,
            close: d.close * factor,
            root_cluster: d.root_cluster * factor,
        }
    }

    /// Process-wide bundle, honoring `CIRCLESPACE_TOL` once at first use.
    pub fn global() -> &'static Tolerances {
        static TOL: OnceLock<Tolerances> = OnceLock::new();
        TOL.get_or_init(|| match std::env::var("CIRCLESPACE_TOL") {
            Ok(s) => match s.trim().parse::<f64>() {
                Ok(v) if v > 0.0 => Tolerances::scaled(v / 1e-9),
                _ => Tolerances::default(),
            },
            Err(_) => Tolerances::default(),
        })
    }
}
