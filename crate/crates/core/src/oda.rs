//! Decision procedures for multiplication-map questions on pairs of lattice
//! polytopes and toric line bundles.
//!
//! The two central objects are the lattice map sending
//! `(P1 ∩ M) x (P2 ∩ M)` into `(P1 + P2) ∩ M` by addition — whose failure
//! set is reported exactly — and its real strengthening: is the larger
//! polytope covered by the lattice translates of the smaller one that fit
//! inside it? Both admit truncated local variants on `P + C` for a strongly
//! convex cone `C`, reported as evidence (never as a proof) since only a
//! bounded slab is examined.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coverage::{covers, CoverReport};
use crate::error::Error;
use crate::lattice::{Int, IntVector, Rat};
use crate::polytope::{cone_halfspaces, Cone, HalfSpace, LatticePolytope, Polyhedron};
use crate::toric::ToricLineBundle;
use crate::Result;

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// Exact description of the cokernel of the addition map on lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelReport {
    /// Lattice points of the sum not expressible as `p1 + p2` with
    /// `p_i` a lattice point of `P_i`, sorted.
    pub missed: Vec<IntVector>,
    pub dim_coker: usize,
    /// True when only a bounded slab of an unbounded region was examined;
    /// the verdict is then evidence, not a complete answer.
    pub truncated: bool,
}

impl CokernelReport {
    pub fn is_surjective(&self) -> bool {
        self.dim_coker == 0
    }
}

/// Real-coverage verdict: is the target covered by the lattice translates
/// of the piece that fit inside it?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReport {
    pub inner: CoverReport,
    /// Number of lattice translates of the piece inside the target.
    pub translates: usize,
    pub note: Option<String>,
}

/// The three partial orders evaluated on one pair of bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    /// difference class is nef
    pub prec: bool,
    /// real coverage by lattice translates
    pub prec_c: bool,
    /// difference is nef and the addition map is onto
    pub prec_o: bool,
}

// ---------------------------------------------------------------------------
// Phi
// ---------------------------------------------------------------------------

/// Cokernel of `(P1 ∩ M) x (P2 ∩ M) -> (P1 + P2) ∩ M` by exact sum-set
/// enumeration.
pub fn phi_cokernel(p1: &LatticePolytope, p2: &LatticePolytope) -> Result<CokernelReport> {
    let a = p1.as_rational();
    let b = p2.as_rational();
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            got: b.ambient_dim(),
        });
    }
    let sum = a.minkowski_sum(b)?;
    let pts1 = a.lattice_points();
    let pts2 = b.lattice_points();
    let mut hit: BTreeSet<IntVector> = BTreeSet::new();
    for x in &pts1 {
        for y in &pts2 {
            hit.insert(x.add(y));
        }
    }
    let missed: Vec<IntVector> = sum
        .lattice_points()
        .into_iter()
        .filter(|z| !hit.contains(z))
        .collect();
    Ok(CokernelReport {
        dim_coker: missed.len(),
        missed,
        truncated: false,
    })
}

// ---------------------------------------------------------------------------
// Psi
// ---------------------------------------------------------------------------

/// Coverage of `P2` by the lattice translates of `P1` contained in it. The
/// translate index set is `(P2 ⊖ P1) ∩ M`; when that set is empty the report
/// is trivially uncovered with an explanatory note.
pub fn psi_check(p1: &LatticePolytope, p2: &LatticePolytope) -> Result<PsiReport> {
    let a = p1.as_rational();
    let b = p2.as_rational();
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            got: b.ambient_dim(),
        });
    }
    let translates: Vec<IntVector> = match b.minkowski_difference(a)? {
        Some(diff) => diff.lattice_points(),
        None => vec![],
    };
    let pieces: Vec<_> = translates
        .iter()
        .map(|m| a.translate(&m.to_rat()))
        .collect();
    let inner = covers(b, &pieces)?;
    let note = if translates.is_empty() {
        Some("no lattice translate of the piece fits inside the target".to_string())
    } else {
        None
    };
    Ok(PsiReport {
        inner,
        translates: translates.len(),
        note,
    })
}

// ---------------------------------------------------------------------------
// partial orders on bundles
// ---------------------------------------------------------------------------

fn difference_bundle(l1: &ToricLineBundle, l2: &ToricLineBundle) -> Result<ToricLineBundle> {
    if !l1.fan().is_same(l2.fan()) {
        return Err(Error::precondition("partial orders need bundles on one fan"));
    }
    let coeffs: Vec<Int> = l2
        .coeffs()
        .iter()
        .zip(l1.coeffs())
        .map(|(b, a)| b - a)
        .collect();
    ToricLineBundle::new(l1.fan().clone(), coeffs)
}

fn bundle_polytope(l: &ToricLineBundle) -> Result<LatticePolytope> {
    let p = l
        .polytope_of()?
        .ok_or_else(|| Error::precondition("bundle has no sections"))?;
    LatticePolytope::new(p)
}

/// `L1 ≼ L2`: the difference class is nef.
pub fn prec(l1: &ToricLineBundle, l2: &ToricLineBundle) -> Result<bool> {
    difference_bundle(l1, l2)?.is_nef()
}

/// `L1 ≼_c L2`: every point of `P_{L2}` lies in a lattice translate of
/// `P_{L1}`.
pub fn prec_c(l1: &ToricLineBundle, l2: &ToricLineBundle) -> Result<bool> {
    if !l1.fan().is_same(l2.fan()) {
        return Err(Error::precondition("partial orders need bundles on one fan"));
    }
    let p1 = bundle_polytope(l1)?;
    let p2 = bundle_polytope(l2)?;
    Ok(psi_check(&p1, &p2)?.inner.covered)
}

/// `L1 ≼_o L2`: the difference is nef and the addition map
/// `(P_{L1} ∩ M) x (P_diff ∩ M) -> P_{L2} ∩ M` is onto.
pub fn prec_o(l1: &ToricLineBundle, l2: &ToricLineBundle) -> Result<bool> {
    if !prec(l1, l2)? {
        return Ok(false);
    }
    let p1 = bundle_polytope(l1)?;
    let diff = bundle_polytope(&difference_bundle(l1, l2)?)?;
    Ok(phi_cokernel(&p1, &diff)?.is_surjective())
}

/// Evaluates all three orders on one pair and asserts the implication chain
/// (coverage implies surjectivity implies nef difference).
pub fn order_report(l1: &ToricLineBundle, l2: &ToricLineBundle) -> Result<OrderReport> {
    let r = OrderReport {
        prec: prec(l1, l2)?,
        prec_c: prec_c(l1, l2)?,
        prec_o: prec_o(l1, l2)?,
    };
    assert!(
        (!r.prec_c || r.prec_o) && (!r.prec_o || r.prec),
        "partial-order chain violated: {r:?}"
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// local (truncated) variant
// ---------------------------------------------------------------------------

/// Truncated cokernel of the addition map on `P1 x (P2 + C)` into
/// `(P1 + P2 + C)`, examined only inside the slab `<x, rho> <= depth` for a
/// fixed interior co-vector `rho` of the dual of `C`. Always reported as
/// truncated evidence.
pub fn local_oda_check(
    p1: &LatticePolytope,
    p2: &LatticePolytope,
    sigma_dual: &Cone,
    depth: usize,
) -> Result<CokernelReport> {
    if depth == 0 {
        return Err(Error::precondition("depth 0 leaves the region unbounded"));
    }
    let d = sigma_dual.dim();
    let a = p1.as_rational();
    let b = p2.as_rational();
    if a.ambient_dim() != d || b.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.ambient_dim().max(b.ambient_dim()),
        });
    }
    let normals = cone_halfspaces(sigma_dual)?;
    // interior co-vector of the dual cone: strictly positive on every
    // nonzero element of a strongly convex full-dimensional cone
    let rho = normals
        .iter()
        .fold(IntVector::zero(d)?, |acc, n| acc.add(n));
    if rho.is_zero() {
        return Err(Error::precondition(
            "cone is not strongly convex and full-dimensional",
        ));
    }
    let sum = a.minkowski_sum(b)?;
    let target = Polyhedron::sum(&sum, sigma_dual)?;
    let mut hs: Vec<HalfSpace> = target.halfspaces().to_vec();
    hs.push(HalfSpace::new(
        rho.neg(),
        Rat::from_integer(Int::from(depth as i64)),
    )?);
    let slab_points: Vec<IntVector> = match crate::polytope::RationalPolytope::from_halfspaces(
        d, &hs,
    )? {
        Some(p) => p.lattice_points(),
        None => vec![],
    };
    let pts1 = a.lattice_points();
    let region2 = Polyhedron::sum(b, sigma_dual)?;
    let missed: Vec<IntVector> = slab_points
        .into_iter()
        .filter(|x| {
            !pts1
                .iter()
                .any(|p| region2.contains(&x.sub(p).to_rat()))
        })
        .collect();
    Ok(CokernelReport {
        dim_coker: missed.len(),
        missed,
        truncated: true,
    })
}

// ---------------------------------------------------------------------------
// projective normality probe
// ---------------------------------------------------------------------------

/// Cokernels of the addition maps for `(P_L, j P_L)`, `1 <= j <= k_max`.
/// All-zero output is evidence (not proof) of projective normality.
pub fn projective_normality_probe(
    l: &ToricLineBundle,
    k_max: usize,
) -> Result<Vec<CokernelReport>> {
    if k_max == 0 {
        return Err(Error::precondition("k_max must be positive"));
    }
    if !l.is_ample()? {
        return Err(Error::precondition("normality probe needs an ample bundle"));
    }
    let p = bundle_polytope(l)?;
    (1..=k_max)
        .map(|j| phi_cokernel(&p, &p.dilate(&Int::from(j as i64))))
        .collect()
}
