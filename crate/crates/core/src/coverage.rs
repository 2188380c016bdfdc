//! Exact coverage decisions: is a polytope covered by a finite union of
//! polytopes?
//!
//! The engine splits the target by the facet hyperplanes of each piece in
//! turn, discards the parts inside the piece, and keeps only residual cells
//! of the target's own (relative) dimension. A piece whose intersection with
//! a cell has measure zero cannot help cover it, so such cells pass through
//! unsplit; this keeps fragmentation proportional to the pieces that matter.
//!
//! Verdicts are exact: "covered" means every cell was discarded inside some
//! piece; "not covered" comes with a rational witness point that is
//! re-verified to lie in the target and strictly outside every piece.
//!
//! The total number of cells ever created is capped by the `ODA_MAX_CELLS`
//! environment variable (default one million); exceeding it is a hard error,
//! never a wrong answer.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{Rat, RatVector};
use crate::polytope::{polyhedron_halfspaces, HalfSpace, Polyhedron, RationalPolytope};
use crate::Result;

/// Default cap on the number of residual cells created by one coverage run.
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// Verdict of an exact coverage test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub covered: bool,
    /// Present exactly when `covered` is false: a point of the target lying
    /// in no piece.
    pub witness: Option<RatVector>,
    pub pieces_used: usize,
}

/// Residual description of a partial cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiCoverReport {
    /// Convex hulls of the connected components of the uncovered region.
    /// Their union together with the pieces contains the target.
    pub leftover_components: Vec<RationalPolytope>,
    /// Smallest sup-norm radius r such that every leftover component fits in
    /// the r-ball around some vertex of the target.
    #[serde(with = "crate::lattice::serde_rat")]
    pub max_vertex_distance: Rat,
}

fn cell_cap() -> usize {
    std::env::var("ODA_MAX_CELLS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

/// The cells of the target not covered by the pieces. Every returned cell
/// has the target's affine dimension, and its intersection with each piece
/// has measure zero relative to the cell.
fn residual_cells(
    target: &RationalPolytope,
    pieces: &[RationalPolytope],
    cap: usize,
) -> Result<Vec<RationalPolytope>> {
    let k = target.affine_dim();
    let mut cells = vec![target.clone()];
    let mut created = 1usize;
    for piece in pieces {
        let mut next: Vec<RationalPolytope> = Vec::new();
        for cell in cells {
            match cell.intersect(piece) {
                Some(inter) if inter.affine_dim() == k => {}
                _ => {
                    // measure-zero overlap: the piece cannot help cover this
                    // cell
                    next.push(cell);
                    continue;
                }
            }
            let mut current = Some(cell);
            for h in piece.halfspaces() {
                let Some(cur) = current.take() else { break };
                if let Some(part) = cur.clip(&h.flipped()) {
                    // keep the outside part only when it has positive
                    // relative measure and genuinely leaves the hyperplane
                    if part.affine_dim() == k
                        && part.vertices().iter().any(|v| h.eval(v).is_negative())
                    {
                        created += 1;
                        if created > cap {
                            return Err(Error::CellBudget { used: created, cap });
                        }
                        next.push(part);
                    }
                }
                let inside = cur.clip(h);
                current = match inside {
                    Some(p) if p.affine_dim() == k => Some(p),
                    _ => None,
                };
            }
            // whatever remains of `current` lies inside the piece: discarded
        }
        cells = next;
        if cells.is_empty() {
            break;
        }
    }
    Ok(cells)
}

/// Shrinks a surviving cell until it is strictly outside every piece, so its
/// barycenter is a sound witness.
fn isolate_witness(
    cell: RationalPolytope,
    pieces: &[RationalPolytope],
) -> Result<RationalPolytope> {
    let k = cell.affine_dim();
    let mut c = cell;
    'pieces: for piece in pieces {
        if c.intersect(piece).is_none() {
            continue;
        }
        for h in piece.halfspaces() {
            if let Some(part) = c.clip(&h.flipped()) {
                if part.affine_dim() == k
                    && part.vertices().iter().any(|v| h.eval(v).is_negative())
                {
                    c = part;
                    continue 'pieces;
                }
            }
        }
        // A surviving cell meets each piece in a measure-zero set, so a
        // full-measure part outside some facet must exist.
        return Err(Error::precondition("internal: witness isolation failed"));
    }
    Ok(c)
}

/// Exact decision: is `target` contained in the union of `pieces`?
pub fn covers(target: &RationalPolytope, pieces: &[RationalPolytope]) -> Result<CoverReport> {
    covers_with_cap(target, pieces, cell_cap())
}

pub(crate) fn covers_with_cap(
    target: &RationalPolytope,
    pieces: &[RationalPolytope],
    cap: usize,
) -> Result<CoverReport> {
    for p in pieces {
        if p.ambient_dim() != target.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                got: p.ambient_dim(),
            });
        }
    }
    if pieces.is_empty() {
        return Ok(CoverReport {
            covered: false,
            witness: Some(target.vertices()[0].clone()),
            pieces_used: 0,
        });
    }
    let cells = residual_cells(target, pieces, cap)?;
    if cells.is_empty() {
        return Ok(CoverReport {
            covered: true,
            witness: None,
            pieces_used: pieces.len(),
        });
    }
    let strict = isolate_witness(cells[0].clone(), pieces)?;
    let w = strict.barycenter();
    // exact re-verification of the witness
    if !target.contains(&w) || pieces.iter().any(|p| p.contains(&w)) {
        return Err(Error::precondition(
            "internal: witness failed exact re-verification",
        ));
    }
    Ok(CoverReport {
        covered: false,
        witness: Some(w),
        pieces_used: pieces.len(),
    })
}

/// Covers `P` by the dilated vertex translates `cP - cv + v`, one per vertex
/// `v`. Must succeed for every `c > d/(d+1)`; `c = 1` gives `|V|` copies of
/// `P` itself.
pub fn vertex_fit_cover(p: &RationalPolytope, c: &Rat) -> Result<CoverReport> {
    if !c.is_positive() || c > &Rat::from_integer(1.into()) {
        return Err(Error::precondition(
            "vertex-fit scaling factor must satisfy 0 < c <= 1",
        ));
    }
    let translates: Vec<RationalPolytope> = p
        .vertices()
        .iter()
        .map(|v| p.scale_about(v, c))
        .collect();
    covers(p, &translates)
}

/// Residual analysis of a partial cover by pieces inside the target.
pub fn quasi_cover_report(
    target: &RationalPolytope,
    pieces: &[RationalPolytope],
) -> Result<QuasiCoverReport> {
    for (i, p) in pieces.iter().enumerate() {
        if p.ambient_dim() != target.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_dim(),
                got: p.ambient_dim(),
            });
        }
        if !target.contains_polytope(p) {
            return Err(Error::precondition(format!(
                "piece {i} is not contained in the target"
            )));
        }
    }
    let k = target.affine_dim();
    let cells = residual_cells(target, pieces, cell_cap())?;
    if cells.is_empty() {
        return Ok(QuasiCoverReport {
            leftover_components: vec![],
            max_vertex_distance: Rat::zero(),
        });
    }
    // connected components via shared (k-1)-dimensional face adjacency
    let n = cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(common) = cells[i].intersect(&cells[j]) {
                if common.affine_dim() + 1 == k {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut components = Vec::new();
    let mut max_dist = Rat::zero();
    for idxs in groups.values() {
        let mut pts: Vec<RatVector> = Vec::new();
        for &i in idxs {
            pts.extend_from_slice(cells[i].vertices());
        }
        let hull = RationalPolytope::hull(&pts)?;
        // radius of the smallest vertex-centered sup-norm ball containing
        // the component
        let radius = target
            .vertices()
            .iter()
            .map(|v| {
                hull.vertices()
                    .iter()
                    .map(|x| x.sup_distance(v))
                    .max()
                    .expect("component has vertices")
            })
            .min()
            .expect("target has vertices");
        if radius > max_dist {
            max_dist = radius;
        }
        components.push(hull);
    }
    Ok(QuasiCoverReport {
        leftover_components: components,
        max_vertex_distance: max_dist,
    })
}

/// Verifies that a pointed polyhedron equals the union of its bounded faces
/// plus its recession cone, by exact set equality on a truncation box that
/// contains every vertex plus one recession step. Since both sides share the
/// recession cone, equality on the truncation certifies equality globally.
pub fn minkowski_weyl_check(q: &Polyhedron) -> Result<CoverReport> {
    let d = q.ambient_dim();
    let faces = q.finite_boundary()?;
    let cone = q.recession();
    if cone.is_trivial() {
        // Q is its own (single) bounded face.
        return Ok(CoverReport {
            covered: true,
            witness: None,
            pieces_used: 1,
        });
    }
    // truncation box
    let mut pts: Vec<RatVector> = q.finite_part().vertices().to_vec();
    for v in q.finite_part().vertices() {
        for g in cone.generators() {
            pts.push(v.add(&g.to_rat()));
        }
    }
    let reach = RationalPolytope::hull(&pts)?;
    let (lo, hi) = reach.bounding_box();
    let mut box_hs: Vec<HalfSpace> = Vec::new();
    for i in 0..d {
        let mut e = vec![crate::lattice::Int::zero(); d];
        e[i] = 1.into();
        let pos = crate::lattice::IntVector::new(e.clone())?;
        box_hs.push(HalfSpace {
            normal: pos.clone(),
            offset: -lo.coords()[i].clone(),
        });
        box_hs.push(HalfSpace {
            normal: pos.neg(),
            offset: hi.coords()[i].clone(),
        });
    }

    let mut target_hs = q.halfspaces().to_vec();
    target_hs.extend(box_hs.iter().cloned());
    let target = RationalPolytope::from_halfspaces(d, &target_hs)?
        .ok_or_else(|| Error::precondition("polyhedron truncation is empty"))?;

    let mut pieces: Vec<RationalPolytope> = Vec::new();
    for f in &faces {
        let mut hs = polyhedron_halfspaces(f, cone)?;
        hs.extend(box_hs.iter().cloned());
        if let Some(p) = RationalPolytope::from_halfspaces(d, &hs)? {
            pieces.push(p);
        }
    }

    // direction 1: truncated Q covered by the truncated face cylinders
    let rep = covers(&target, &pieces)?;
    if !rep.covered {
        return Ok(rep);
    }
    // direction 2: every face cylinder stays inside Q (checked per vertex of
    // the face; the recession directions are shared with Q by construction)
    for f in &faces {
        for v in f.vertices() {
            if !q.contains(v) {
                return Ok(CoverReport {
                    covered: false,
                    witness: Some(v.clone()),
                    pieces_used: pieces.len(),
                });
            }
        }
    }
    Ok(CoverReport {
        covered: true,
        witness: None,
        pieces_used: pieces.len(),
    })
}

/// Re-checks an existing report against target and pieces; used by callers
/// that persist or transport reports.
pub fn verify_witness(
    report: &CoverReport,
    target: &RationalPolytope,
    pieces: &[RationalPolytope],
) -> bool {
    match (&report.covered, &report.witness) {
        (true, None) => true,
        (false, Some(w)) => target.contains(w) && !pieces.iter().any(|p| p.contains(w)),
        _ => false,
    }
}
