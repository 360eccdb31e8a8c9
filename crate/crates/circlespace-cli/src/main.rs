//! Command-line surface for the circlespace library.

mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use circlespace::error::Error;
use circlespace::fibration::Leaf;
use circlespace::json as wire;
use circlespace::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "circlespace",
    version,
    about = "Oriented circles in the 3-sphere: invariant checks, circle construction, fibration analysis, surface foliations, rendering",
    after_help = "The environment variable CIRCLESPACE_TOL rescales the tolerance bundle \
                  (its value replaces the 1e-9 base tolerance)."
)]
struct Cli {
    /// Seed for all pseudo-random draws; runs are deterministic given a seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for output artifacts.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full invariant suite and print a pass/fail table.
    Verify {
        /// Scale factor on every sample count (1.0 = full sizes).
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Both oriented circles through three points of the 3-sphere.
    Circle {
        /// Three points as JSON quaternions, e.g. '[1,0,0,0]'.
        #[arg(long, num_args = 3, required = true)]
        points: Vec<String>,
    },
    /// Incidence of a point with a circle.
    Incidence {
        /// Point as a JSON quaternion.
        #[arg(long)]
        point: String,
        /// Circle as six complex coefficient pairs (order c12, c13, c14,
        /// c23, c24, c34), inline JSON or @file.
        #[arg(long)]
        circle: String,
    },
    /// Degree, validity, and (optionally) the normal form of a curve.
    Fibration {
        /// Curve file: a JSON list of 5-component complex coefficient
        /// vectors in canonical coordinates.
        #[arg(long, conflicts_with = "hopf")]
        curve: Option<PathBuf>,
        /// Use the standard curve instead of a file.
        #[arg(long)]
        hopf: bool,
        /// Also compute the normal-form transformation.
        #[arg(long)]
        normalize: bool,
        /// Validation sample count.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Integrate leaves of the distribution cut out by a surface and write
    /// leaves.json.
    Foliate {
        /// Homogeneous surface polynomial, e.g. "z4" or "z1^2*z4 - z2*z3^2".
        #[arg(long)]
        surface: String,
        /// Number of leaves (pseudo-random starting points).
        #[arg(long, default_value_t = 16)]
        seeds: usize,
        /// Integration step.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Integration horizon.
        #[arg(long, default_value_t = 8.0 * std::f64::consts::PI)]
        max_t: f64,
    },
    /// Render a leaves.json file to a static SVG figure.
    Render {
        #[arg(long)]
        leaves: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Orthographic view direction "x,y,z" after stereographic
        /// projection.
        #[arg(long, default_value = "0.35,0.85,0.4")]
        view: String,
        /// Square figure size in pixels.
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
}

fn emit_error(kind: &str, message: &str) {
    eprintln!(
        "{}",
        json!({ "error": { "kind": kind, "message": message } })
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep clap's human-readable help on help/version requests
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit_error("parse", &e.to_string());
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::Parse(_) => ("parse", 2),
                _ => ("runtime", 1),
            };
            emit_error(kind, &e.to_string());
            ExitCode::from(code)
        }
    }
}

fn parse_json_arg(raw: &str) -> Result<Value> {
    let text = if let Some(path) = raw.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?
    } else {
        raw.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { scale } => {
            let outcomes = verify::run_suite(cli.seed, scale);
            let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
            let mut all = true;
            for o in &outcomes {
                let status = if o.passed { "ok  " } else { "FAIL" };
                println!(
                    "{status}  {:width$}  {:>7.2}s  {}",
                    o.name,
                    o.seconds,
                    o.detail,
                    width = width
                );
                all &= o.passed;
            }
            println!(
                "{}: {}/{} checks passed",
                if all { "PASS" } else { "FAIL" },
                outcomes.iter().filter(|o| o.passed).count(),
                outcomes.len()
            );
            Ok(all)
        }

        Command::Circle { points } => {
            let pts: Vec<S3Point> = points
                .iter()
                .map(|raw| wire::s3_point_from_json(&parse_json_arg(raw)?))
                .collect::<Result<_>>()?;
            let (k1, k2) = circle_through_points(&pts[0], &pts[1], &pts[2])?;
            let out = json!({
                "orientations": [wire::circle_to_json(&k1), wire::circle_to_json(&k2)],
                "point_circles": pts.iter()
                    .map(|p| wire::circle_to_json(&point_circle(p)))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string(&out).unwrap());
            Ok(true)
        }

        Command::Incidence { point, circle } => {
            let p = wire::s3_point_from_json(&parse_json_arg(&point)?)?;
            let k = wire::circle_from_json(&parse_json_arg(&circle)?)?;
            let pc = point_circle(&p);
            let g = circle::G(pc.bivector(), k.bivector());
            let defect = circle::incidence_defect(&p, &k);
            let out = json!({
                "g_value": wire::complex_to_json(g),
                "normalized_defect": defect,
                "incident": is_incident(&p, &k),
            });
            println!("{}", serde_json::to_string(&out).unwrap());
            Ok(true)
        }

        Command::Fibration {
            curve,
            hopf,
            normalize,
            samples,
        } => {
            let c = if hopf {
                hopf_curve(&canonical_real_basis())
            } else {
                let path = curve.ok_or_else(|| {
                    Error::Parse("either --curve FILE or --hopf is required".into())
                })?;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
                wire::curve_from_json(&value)?
            };
            let degree = curve_degree(&c)?;
            let report = validate_fibration(&c, samples, cli.seed);
            let mut out = json!({
                "degree": degree,
                "validation": serde_json::to_value(&report).unwrap(),
            });
            let mut passed = report.passed;
            if normalize {
                match normalize_curve(&c) {
                    Ok(n) => {
                        out["normalization"] = json!({
                            "isometry": wire::isometry_to_json(&n.isometry),
                            "moebius": wire::moebius_to_json(&n.moebius),
                            "sign": n.sign,
                            "residual": n.residual,
                        });
                        passed &= n.residual < 1e-8;
                    }
                    Err(e) => {
                        out["normalization"] = json!({ "error": e.to_string() });
                        passed = false;
                    }
                }
            }
            println!("{}", serde_json::to_string(&out).unwrap());
            Ok(passed)
        }

        Command::Foliate {
            surface,
            seeds,
            step,
            max_t,
        } => {
            let spec = SurfaceSpec::parse(&surface)?;
            let field = surface_distribution(spec);
            let results: Vec<Result<Leaf>> = par::map_range(seeds, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed ^ (0x800 + i as u64));
                let x0 = rng::s3_point(&mut rng);
                integrate_leaf(&field, &x0, step, max_t)
            });
            let mut leaves = Vec::with_capacity(seeds);
            for r in results {
                leaves.push(r?);
            }
            let closed = leaves.iter().filter(|l| l.closed).count();
            let deviations: Vec<f64> = leaves
                .iter()
                .map(|l| leaf_is_circle(l).map(|r| r.1).unwrap_or(f64::NAN))
                .collect();
            let artifact = json!({
                "surface": surface,
                "seed": cli.seed,
                "step": step,
                "max_t": max_t,
                "leaves": serde_json::to_value(&leaves).unwrap(),
            });
            std::fs::create_dir_all(&cli.out_dir)
                .map_err(|e| Error::Parse(format!("cannot create out dir: {e}")))?;
            let path = cli.out_dir.join("leaves.json");
            std::fs::write(&path, serde_json::to_string_pretty(&artifact).unwrap())
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "leaves": seeds,
                    "closed": closed,
                    "max_circle_deviation": deviations.iter().cloned().fold(0.0f64, f64::max),
                    "artifact": path.display().to_string(),
                }))
                .unwrap()
            );
            Ok(true)
        }

        Command::Render {
            leaves,
            out,
            view,
            size,
        } => {
            let text = std::fs::read_to_string(&leaves)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", leaves.display())))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
            let leaf_list: Vec<Leaf> = serde_json::from_value(
                value
                    .get("leaves")
                    .cloned()
                    .ok_or_else(|| Error::Parse("missing 'leaves' field".into()))?,
            )
            .map_err(|e| Error::Parse(format!("bad leaves: {e}")))?;
            let axis: Vec<f64> = view
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad view component '{s}'")))
                })
                .collect::<Result<_>>()?;
            if axis.len() != 3 {
                return Err(Error::Parse("--view needs three components".into()));
            }
            let options = render::RenderOptions {
                view: [axis[0], axis[1], axis[2]],
                size,
                ..Default::default()
            };
            let svg = render::render_svg(&leaf_list, &options)?;
            let path = if out.is_absolute() {
                out
            } else {
                cli.out_dir.join(out)
            };
            std::fs::write(&path, svg)
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "figure": path.display().to_string(),
                    "leaves": leaf_list.len(),
                }))
                .unwrap()
            );
            Ok(true)
        }
    }
}
