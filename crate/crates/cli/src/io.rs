//! JSON input/output helpers: every reader reports the file path and the
//! byte offset of the first malformed token.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use oda_core::lattice::rat_from_str;
use oda_core::polytope::Cone;
use oda_core::{
    Fan, IntVector, LatticePolytope, Polyhedron, Rat, RationalPolytope, RatVector,
    ToricLineBundle,
};

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    // serde_json reports 1-based line/column
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len() + 1;
    }
    offset
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "{}: parse error at line {} column {} (byte offset {}): {}",
            path.display(),
            e.line(),
            e.column(),
            byte_offset(&text, e.line(), e.column()),
            e
        )
    })
}

/// A polytope on the wire: either a bare vertex array or an object with a
/// `vertices` field. Coordinates are integers or `"p/q"` strings.
#[derive(Deserialize)]
#[serde(untagged)]
enum PolytopeWire {
    Bare(Vec<RatVector>),
    Object { vertices: Vec<RatVector> },
}

impl PolytopeWire {
    fn build(self) -> Result<RationalPolytope> {
        let vs = match self {
            PolytopeWire::Bare(v) | PolytopeWire::Object { vertices: v } => v,
        };
        RationalPolytope::hull(&vs).map_err(Into::into)
    }
}

pub fn load_polytope(path: &Path) -> Result<RationalPolytope> {
    read_json::<PolytopeWire>(path)?
        .build()
        .with_context(|| format!("building polytope from {}", path.display()))
}

pub fn load_lattice_polytope(path: &Path) -> Result<LatticePolytope> {
    let p = load_polytope(path)?;
    LatticePolytope::new(p)
        .with_context(|| format!("{}: vertices must be integral", path.display()))
}

pub fn load_pieces(path: &Path) -> Result<Vec<RationalPolytope>> {
    let wires: Vec<PolytopeWire> = read_json(path)?;
    wires
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.build()
                .with_context(|| format!("building piece {i} from {}", path.display()))
        })
        .collect()
}

pub fn load_fan(path: &Path) -> Result<Fan> {
    read_json(path)
}

pub fn load_bundle(path: &Path) -> Result<ToricLineBundle> {
    read_json(path)
}

#[derive(Deserialize)]
struct ConeWire {
    rays: Vec<IntVector>,
}

pub fn load_cone(path: &Path) -> Result<Cone> {
    let w: ConeWire = read_json(path)?;
    let dim = w
        .rays
        .first()
        .map(|r| r.dim())
        .ok_or_else(|| anyhow!("{}: cone needs at least one ray", path.display()))?;
    Cone::new(dim, w.rays).map_err(Into::into)
}

#[derive(Deserialize)]
struct PolyhedronWire {
    finite: PolytopeWire,
    #[serde(default)]
    rays: Vec<IntVector>,
}

pub fn load_polyhedron(path: &Path) -> Result<Polyhedron> {
    let w: PolyhedronWire = read_json(path)?;
    let finite = w.finite.build()?;
    let cone = if w.rays.is_empty() {
        Cone::zero(finite.ambient_dim())?
    } else {
        Cone::new(finite.ambient_dim(), w.rays)?
    };
    Polyhedron::sum(&finite, &cone).map_err(Into::into)
}

/// Parses a comma-separated integer vector flag such as `1,-1`.
pub fn parse_ivec(s: &str) -> Result<IntVector> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| anyhow!("bad coordinate {t:?}: {e}")))
        .collect::<Result<_>>()?;
    Ok(IntVector::from_i64(&coords))
}

/// Parses a rational flag such as `2/3` or `1`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    rat_from_str(s.trim()).map_err(Into::into)
}

pub fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

/// Integer slice as a JSON array: plain numbers when they fit in `i64`,
/// decimal strings otherwise.
pub fn ints_json(xs: &[oda_core::Int]) -> serde_json::Value {
    use num_traits::ToPrimitive;
    serde_json::Value::Array(
        xs.iter()
            .map(|x| match x.to_i64() {
                Some(n) => serde_json::Value::from(n),
                None => serde_json::Value::from(x.to_string()),
            })
            .collect(),
    )
}
