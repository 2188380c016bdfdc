//! Minimal SVG 1.1 renderer for 2D scenes: target outline, translated
//! pieces, residual cells, marked points. Coordinates are rendered at a
//! fixed decimal precision for display only; nothing is ever read back.

use anyhow::{anyhow, Result};
use num_traits::Signed;

use oda_core::lattice::rat_int;
use oda_core::{Rat, RationalPolytope, RatVector};

const SCALE: i64 = 40;
const MARGIN: i64 = 20;
const PLACES: u32 = 4;

/// Fixed-point decimal rendering of an exact rational (round-half-up).
pub fn dec(r: &Rat) -> String {
    let pow = rat_int(10i64.pow(PLACES));
    let scaled = (r * &pow + oda_core::lattice::rat(1, 2)).floor().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs().to_string();
    let mag = if mag.len() <= PLACES as usize {
        format!("{}{}", "0".repeat(PLACES as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int, frac) = mag.split_at(mag.len() - PLACES as usize);
    let frac = frac.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

pub struct Scene {
    pub target: RationalPolytope,
    pub pieces: Vec<RationalPolytope>,
    pub residual: Vec<RationalPolytope>,
    /// `(point, label)`; the label lands in a `<title>` element.
    pub points: Vec<(RatVector, String)>,
}

struct Frame {
    min_x: Rat,
    max_y: Rat,
    width: Rat,
    height: Rat,
}

impl Frame {
    fn map(&self, p: &RatVector) -> (Rat, Rat) {
        let s = rat_int(SCALE);
        let m = rat_int(MARGIN);
        let x = (&p.coords()[0] - &self.min_x) * &s + &m;
        let y = (&self.max_y - &p.coords()[1]) * &s + &m;
        (x, y)
    }
}

fn polygon_path(p: &RationalPolytope, frame: &Frame) -> Result<String> {
    let cycle = if p.affine_dim() == 2 {
        p.boundary_cycle()?
    } else {
        p.vertices().to_vec()
    };
    let mut d = String::new();
    for (i, v) in cycle.iter().enumerate() {
        let (x, y) = frame.map(v);
        d.push_str(if i == 0 { "M " } else { "L " });
        d.push_str(&format!("{} {} ", dec(&x), dec(&y)));
    }
    d.push('Z');
    Ok(d)
}

pub fn render(scene: &Scene) -> Result<String> {
    if scene.target.ambient_dim() != 2 {
        return Err(anyhow!("SVG rendering is two-dimensional only"));
    }
    let mut min_x = scene.target.bounding_box().0.coords()[0].clone();
    let mut min_y = scene.target.bounding_box().0.coords()[1].clone();
    let mut max_x = scene.target.bounding_box().1.coords()[0].clone();
    let mut max_y = scene.target.bounding_box().1.coords()[1].clone();
    for p in scene
        .pieces
        .iter()
        .chain(scene.residual.iter())
    {
        let (lo, hi) = p.bounding_box();
        min_x = min_x.min(lo.coords()[0].clone());
        min_y = min_y.min(lo.coords()[1].clone());
        max_x = max_x.max(hi.coords()[0].clone());
        max_y = max_y.max(hi.coords()[1].clone());
    }
    for (pt, _) in &scene.points {
        min_x = min_x.min(pt.coords()[0].clone());
        min_y = min_y.min(pt.coords()[1].clone());
        max_x = max_x.max(pt.coords()[0].clone());
        max_y = max_y.max(pt.coords()[1].clone());
    }
    let frame = Frame {
        min_x: min_x.clone(),
        max_y: max_y.clone(),
        width: &max_x - &min_x,
        height: &max_y - &min_y,
    };
    let w = dec(&(&frame.width * rat_int(SCALE) + rat_int(2 * MARGIN)));
    let h = dec(&(&frame.height * rat_int(SCALE) + rat_int(2 * MARGIN)));
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    for p in &scene.pieces {
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"#4477aa\" fill-opacity=\"0.35\" \
             stroke=\"#4477aa\" stroke-width=\"1\"/>\n",
            polygon_path(p, &frame)?
        ));
    }
    for p in &scene.residual {
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"#cc3311\" fill-opacity=\"0.6\" \
             stroke=\"#cc3311\" stroke-width=\"1\"/>\n",
            polygon_path(p, &frame)?
        ));
    }
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
        polygon_path(&scene.target, &frame)?
    ));
    for (pt, label) in &scene.points {
        let (x, y) = frame.map(pt);
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#ee7733\" \
             stroke=\"#000000\" stroke-width=\"1\"><title>{}</title></circle>\n",
            dec(&x),
            dec(&y),
            label
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
