//! Static SVG rendering of leaf families through stereographic projection.

use circlespace::error::{Error, Result};
use circlespace::fibration::Leaf;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Orthographic view direction in the stereographic 3-space.
    pub view: [f64; 3],
    /// Output square size in pixels.
    pub size: u32,
    /// Points projecting further than this radius are dropped (with a path
    /// split), keeping leaves through the projection pole drawable.
    pub clip_radius: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            view: [0.35, 0.85, 0.4],
            size: 800,
            clip_radius: 8.0,
        }
    }
}

const POLE_MARGIN: f64 = 0.05;

/// Stereographic projection from the pole at `w = -1`.
fn project(sample: &[f64; 4]) -> Option<[f64; 3]> {
    let denom = 1.0 + sample[0];
    if denom.abs() < POLE_MARGIN {
        return None;
    }
    Some([sample[1] / denom, sample[2] / denom, sample[3] / denom])
}

fn orthographic_frame(view: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let n = (view[0] * view[0] + view[1] * view[1] + view[2] * view[2]).sqrt();
    let v = [view[0] / n, view[1] / n, view[2] / n];
    // any vector not parallel to the view axis seeds the frame
    let seed = if v[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let dot = seed[0] * v[0] + seed[1] * v[1] + seed[2] * v[2];
    let mut u1 = [seed[0] - dot * v[0], seed[1] - dot * v[1], seed[2] - dot * v[2]];
    let n1 = (u1[0] * u1[0] + u1[1] * u1[1] + u1[2] * u1[2]).sqrt();
    for c in u1.iter_mut() {
        *c /= n1;
    }
    let u2 = [
        v[1] * u1[2] - v[2] * u1[1],
        v[2] * u1[0] - v[0] * u1[2],
        v[0] * u1[1] - v[1] * u1[0],
    ];
    (u1, u2)
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to8 = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to8(r1), to8(g1), to8(b1))
}

/// Renders the leaves as one polyline path per connected projected piece.
pub fn render_svg(leaves: &[Leaf], options: &RenderOptions) -> Result<String> {
    if leaves.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (u1, u2) = orthographic_frame(options.view);

    // project every leaf into 2d pieces, splitting at the pole and the clip
    // radius
    let mut pieces: Vec<(usize, Vec<[f64; 2]>)> = Vec::new();
    for (leaf_idx, leaf) in leaves.iter().enumerate() {
        let mut current: Vec<[f64; 2]> = Vec::new();
        for sample in &leaf.samples {
            let keep = project(sample).and_then(|p| {
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                if r > options.clip_radius {
                    None
                } else {
                    Some([
                        p[0] * u1[0] + p[1] * u1[1] + p[2] * u1[2],
                        p[0] * u2[0] + p[1] * u2[1] + p[2] * u2[2],
                    ])
                }
            });
            match keep {
                Some(q) => current.push(q),
                None => {
                    if current.len() > 1 {
                        pieces.push((leaf_idx, std::mem::take(&mut current)));
                    } else {
                        current.clear();
                    }
                }
            }
        }
        if current.len() > 1 {
            pieces.push((leaf_idx, current));
        }
    }
    if pieces.is_empty() {
        return Err(Error::DegenerateInput(
            "no drawable samples after projection".into(),
        ));
    }

    // bounding box with a margin
    let mut lo = [f64::MAX, f64::MAX];
    let mut hi = [f64::MIN, f64::MIN];
    for (_, piece) in &pieces {
        for p in piece {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.05 * span;
    let scale = options.size as f64 / (span + 2.0 * margin);
    let to_px = |p: [f64; 2]| {
        [
            (p[0] - lo[0] + margin) * scale,
            // flip the vertical axis into screen coordinates
            (hi[1] - p[1] + margin) * scale,
        ]
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s} {s}\" width=\"{s}\" height=\"{s}\">\n",
        s = options.size
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let n_leaves = leaves.len().max(1);
    for (leaf_idx, piece) in &pieces {
        let hue = 360.0 * (*leaf_idx as f64) / (n_leaves as f64);
        let color = hsl_to_hex(hue, 0.7, 0.45);
        let mut d = String::new();
        for (k, p) in piece.iter().enumerate() {
            let px = to_px(*p);
            let cmd = if k == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{}{:.3} {:.3} ", cmd, px[0], px[1]));
        }
        // close the path when the piece is an entire closed leaf
        if leaves[*leaf_idx].closed && piece.len() == leaves[*leaf_idx].samples.len() {
            d.push('Z');
        }
        svg.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\"/>\n",
            d.trim_end(),
            color
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
