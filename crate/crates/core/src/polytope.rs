//! Exact convex polytopes and pointed polyhedra in dimension one to three.
//!
//! Every polytope carries both a canonical V-representation (lexicographically
//! sorted, irredundant vertices) and an H-representation (halfspaces
//! `<x, normal> >= -offset` with primitive integer normals). The two are
//! derived from one another on construction, so structural equality of
//! vertex lists is set equality of the underlying bodies.
//!
//! Lower-dimensional bodies (points, segments, polygons inside 3-space) are
//! first-class: their H-representations contain opposite halfspace pairs that
//! pin the affine hull.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{
    self, check_dim, det_rat, primitive, rat_int, rank, solve, Int, IntVector, Rat, RatVector,
};
use crate::Result;

/// Closed halfspace `{ x : <x, normal> >= -offset }` with a primitive
/// integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: IntVector,
    #[serde(with = "crate::lattice::serde_rat")]
    pub offset: Rat,
}

impl HalfSpace {
    /// Canonicalizes the normal to its primitive representative, rescaling
    /// the offset accordingly.
    pub fn new(normal: IntVector, offset: Rat) -> Result<Self> {
        let p = primitive(&normal)?;
        // normal = g * p with g > 0, so <x, p> >= -offset / g
        let g = &normal.coords()[find_nonzero(&normal)] / &p.coords()[find_nonzero(&normal)];
        Ok(HalfSpace {
            normal: p,
            offset: offset / Rat::from_integer(g),
        })
    }

    /// `<x, normal> + offset`; nonnegative inside the halfspace.
    pub fn eval(&self, x: &RatVector) -> Rat {
        self.normal.dot_rat(x) + &self.offset
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        !self.eval(x).is_negative()
    }

    /// The opposite closed halfspace `{ x : <x, normal> <= -offset }`.
    pub fn flipped(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    /// Translates the halfspace by `t`: `<x - t, n> >= -a` becomes
    /// `<x, n> >= -(a - <n, t>)`.
    pub fn translate(&self, t: &RatVector) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: &self.offset - self.normal.dot_rat(t),
        }
    }
}

fn find_nonzero(v: &IntVector) -> usize {
    v.coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero vector")
}

/// A bounded convex body with exact dual representations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalPolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<RatVector>,
    halfspaces: Vec<HalfSpace>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}
impl Eq for RationalPolytope {}

/// A lattice polytope: all vertices integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    underlying: RationalPolytope,
}

/// One-dimensional face data. For lattice segments `lattice_length` counts
/// lattice steps; in general `endpoints.1 - endpoints.0 =
/// lattice_length * primitive_direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDescriptor {
    pub endpoints: (RatVector, RatVector),
    pub primitive_direction: IntVector,
    #[serde(with = "crate::lattice::serde_rat")]
    pub lattice_length: Rat,
}

/// Codimension-one face data of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDescriptor {
    pub halfspace: HalfSpace,
    pub vertices: Vec<RatVector>,
}

impl RationalPolytope {
    // -----------------------------------------------------------------
    // construction
    // -----------------------------------------------------------------

    /// Convex hull of finitely many points; canonical and idempotent.
    pub fn hull(points: &[RatVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("hull of no points"))?;
        let dim = first.dim();
        check_dim(dim)?;
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: points.iter().map(|p| p.dim()).find(|&d| d != dim).unwrap(),
            });
        }
        let mut pts: Vec<RatVector> = points.to_vec();
        pts.sort();
        pts.dedup();

        let diffs: Vec<RatVector> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
        let adim = rank(&diffs);

        let (vertices, halfspaces) = match (adim, dim) {
            (0, _) => point_rep(&pts[0]),
            (1, _) => segment_rep(&pts)?,
            (2, 2) => polygon_rep_2d(&pts)?,
            (2, 3) => polygon_rep_in_3d(&pts)?,
            (3, 3) => hull_3d(&pts)?,
            _ => unreachable!("affine dim bounded by ambient dim"),
        };
        Ok(RationalPolytope {
            dim,
            affine_dim: adim,
            vertices,
            halfspaces,
        })
    }

    /// Intersection of halfspaces. Returns `None` when empty; errors when
    /// unbounded.
    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Result<Option<Self>> {
        check_dim(dim)?;
        if halfspaces.is_empty() {
            return Err(Error::Unbounded);
        }
        let normals: Vec<RatVector> = halfspaces.iter().map(|h| h.normal.to_rat()).collect();
        if rank(&normals) < dim || has_recession_ray(dim, halfspaces) {
            return Err(Error::Unbounded);
        }
        let verts = basic_solutions(dim, halfspaces);
        if verts.is_empty() {
            return Ok(None);
        }
        Ok(Some(Self::hull(&verts)?))
    }

    // -----------------------------------------------------------------
    // accessors
    // -----------------------------------------------------------------

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Strict interior relative to the ambient space (false for
    /// lower-dimensional bodies).
    pub fn contains_interior(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|h| h.eval(x).is_positive())
    }

    /// True iff `other` is a subset (vertex containment suffices by
    /// convexity).
    pub fn contains_polytope(&self, other: &RationalPolytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn barycenter(&self) -> RatVector {
        let n = rat_int(self.vertices.len() as i64);
        let mut acc = RatVector::zero(self.dim).expect("valid dim");
        for v in &self.vertices {
            acc = acc.add(v);
        }
        acc.scale(&(Rat::one() / n))
    }

    /// Minimum of `<v, n>` over the polytope.
    pub fn support_min(&self, n: &IntVector) -> Rat {
        self.vertices
            .iter()
            .map(|v| n.dot_rat(v))
            .min()
            .expect("polytope has vertices")
    }

    pub fn support_max(&self, n: &IntVector) -> Rat {
        self.vertices
            .iter()
            .map(|v| n.dot_rat(v))
            .max()
            .expect("polytope has vertices")
    }

    pub fn bounding_box(&self) -> (RatVector, RatVector) {
        let d = self.dim;
        let lo: Vec<Rat> = (0..d)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v.coords()[i].clone())
                    .min()
                    .unwrap()
            })
            .collect();
        let hi: Vec<Rat> = (0..d)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v.coords()[i].clone())
                    .max()
                    .unwrap()
            })
            .collect();
        (
            RatVector::new(lo).expect("dim"),
            RatVector::new(hi).expect("dim"),
        )
    }

    // -----------------------------------------------------------------
    // affine maps
    // -----------------------------------------------------------------

    pub fn translate(&self, t: &RatVector) -> RationalPolytope {
        RationalPolytope {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: {
                let mut vs: Vec<RatVector> = self.vertices.iter().map(|v| v.add(t)).collect();
                vs.sort();
                vs
            },
            halfspaces: self.halfspaces.iter().map(|h| h.translate(t)).collect(),
        }
    }

    /// `c + f * (P - c)`: dilation about a center, `f > 0`.
    pub fn scale_about(&self, center: &RatVector, f: &Rat) -> RationalPolytope {
        assert!(f.is_positive(), "scaling factor must be positive");
        let verts: Vec<RatVector> = self
            .vertices
            .iter()
            .map(|v| center.add(&v.sub(center).scale(f)))
            .collect();
        Self::hull(&verts).expect("dilation of a polytope is a polytope")
    }

    // -----------------------------------------------------------------
    // faces
    // -----------------------------------------------------------------

    /// Normals of all halfspaces tight at `v` (rational copies, for rank
    /// computations).
    pub fn tight_normals_at(&self, v: &RatVector) -> Vec<RatVector> {
        self.halfspaces
            .iter()
            .filter(|h| h.eval(v).is_zero())
            .map(|h| h.normal.to_rat())
            .collect()
    }

    /// All one-dimensional faces with primitive directions and lattice
    /// lengths.
    pub fn edges(&self) -> Vec<EdgeDescriptor> {
        if self.affine_dim == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                let mut common: Vec<RatVector> = Vec::new();
                for h in &self.halfspaces {
                    if h.eval(&self.vertices[i]).is_zero() && h.eval(&self.vertices[j]).is_zero() {
                        common.push(h.normal.to_rat());
                    }
                }
                if rank(&common) == self.dim - 1 {
                    out.push(edge_descriptor(&self.vertices[i], &self.vertices[j]));
                }
            }
        }
        out
    }

    /// Facet data for a full-dimensional polytope: each halfspace with its
    /// tight vertices.
    pub fn facets(&self) -> Result<Vec<FacetDescriptor>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional("facets need a full-dimensional body"));
        }
        Ok(self
            .halfspaces
            .iter()
            .map(|h| FacetDescriptor {
                halfspace: h.clone(),
                vertices: self
                    .vertices
                    .iter()
                    .filter(|v| h.eval(v).is_zero())
                    .cloned()
                    .collect(),
            })
            .collect())
    }

    // -----------------------------------------------------------------
    // lattice points
    // -----------------------------------------------------------------

    /// Exactly the integer points in the body, found by per-coordinate
    /// interval propagation with a final exact membership check.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let (lo, hi) = self.bounding_box();
        let lo: Vec<Int> = lo.coords().iter().map(|c| c.ceil().to_integer()).collect();
        let hi: Vec<Int> = hi
            .coords()
            .iter()
            .map(|c| c.floor().to_integer())
            .collect();
        let mut out = Vec::new();
        let mut current = vec![Int::zero(); self.dim];
        self.enumerate_rec(0, &lo, &hi, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate_rec(
        &self,
        i: usize,
        lo: &[Int],
        hi: &[Int],
        current: &mut Vec<Int>,
        out: &mut Vec<IntVector>,
    ) {
        if i == self.dim {
            let p = RatVector::new(
                current
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect(),
            )
            .expect("dim");
            if self.contains(&p) {
                out.push(p.to_int().expect("integral by construction"));
            }
            return;
        }
        // Tighten [lo_i, hi_i] using every halfspace: fixed prefix exactly,
        // free suffix by its box interval.
        let mut lo_i = lo[i].clone();
        let mut hi_i = hi[i].clone();
        for h in &self.halfspaces {
            let n = h.normal.coords();
            if n[i].is_zero() {
                continue;
            }
            // <x, n> >= -offset  =>  n_i x_i >= -offset - prefix - worst(suffix)
            let mut rest = h.offset.clone();
            for j in 0..i {
                rest += Rat::from_integer(&n[j] * &current[j]);
            }
            for j in (i + 1)..self.dim {
                // maximize n_j x_j over the box
                let term = if n[j].is_positive() {
                    Rat::from_integer(&n[j] * &hi[j])
                } else {
                    Rat::from_integer(&n[j] * &lo[j])
                };
                rest += term;
            }
            // n_i x_i >= -rest
            let bound = -rest / Rat::from_integer(n[i].clone());
            if n[i].is_positive() {
                let b = bound.ceil().to_integer();
                if b > lo_i {
                    lo_i = b;
                }
            } else {
                let b = bound.floor().to_integer();
                if b < hi_i {
                    hi_i = b;
                }
            }
        }
        let mut x = lo_i.clone();
        while x <= hi_i {
            current[i] = x.clone();
            self.enumerate_rec(i + 1, lo, hi, current, out);
            x += 1;
        }
    }

    // -----------------------------------------------------------------
    // Minkowski algebra
    // -----------------------------------------------------------------

    /// Exact Minkowski sum via support-function H-representation; vertex
    /// candidates are screened by tightness rank rather than re-hulled.
    pub fn minkowski_sum(&self, other: &RationalPolytope) -> Result<RationalPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut sums: Vec<RatVector> = Vec::new();
        for u in &self.vertices {
            for w in &other.vertices {
                sums.push(u.add(w));
            }
        }
        sums.sort();
        sums.dedup();

        // Degenerate sums are canonicalized directly.
        let diffs: Vec<RatVector> = sums[1..].iter().map(|p| p.sub(&sums[0])).collect();
        if rank(&diffs) < self.dim {
            return Self::hull(&sums);
        }

        // Candidate facet normals: facets of both summands plus, in 3D,
        // cross products of edge directions (an edge-edge face of the sum is
        // a facet of neither summand).
        let mut normals: BTreeSet<IntVector> = BTreeSet::new();
        for h in self.halfspaces.iter().chain(&other.halfspaces) {
            normals.insert(h.normal.clone());
        }
        if self.dim == 3 {
            for e in self.edges() {
                for f in other.edges() {
                    let c = e.primitive_direction.cross3(&f.primitive_direction);
                    if !c.is_zero() {
                        let p = primitive(&c).expect("nonzero");
                        normals.insert(p.clone());
                        normals.insert(p.neg());
                    }
                }
            }
        }
        let halfspaces: Vec<HalfSpace> = normals
            .into_iter()
            .map(|n| {
                let off = -(self.support_min(&n) + other.support_min(&n));
                HalfSpace { normal: n, offset: off }
            })
            .collect();
        let verts: Vec<RatVector> = sums
            .into_iter()
            .filter(|p| {
                let tight: Vec<RatVector> = halfspaces
                    .iter()
                    .filter(|h| h.eval(p).is_zero())
                    .map(|h| h.normal.to_rat())
                    .collect();
                rank(&tight) == self.dim
            })
            .collect();
        Self::hull(&verts)
    }

    /// `{ x : x + other ⊆ self }`; `None` when empty.
    pub fn minkowski_difference(
        &self,
        other: &RationalPolytope,
    ) -> Result<Option<RationalPolytope>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let shifted: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: &h.offset + other.support_min(&h.normal),
            })
            .collect();
        // Bounded: the difference sits inside a translate of self.
        let verts = basic_solutions(self.dim, &shifted);
        if verts.is_empty() {
            return Ok(None);
        }
        Ok(Some(Self::hull(&verts)?))
    }

    /// Intersection with a halfspace; `None` when empty. The result is
    /// canonical.
    pub fn clip(&self, h: &HalfSpace) -> Option<RationalPolytope> {
        let mut inside: Vec<RatVector> = Vec::new();
        let mut outside = 0usize;
        let evals: Vec<Rat> = self.vertices.iter().map(|v| h.eval(v)).collect();
        for (v, e) in self.vertices.iter().zip(&evals) {
            if !e.is_negative() {
                inside.push(v.clone());
            } else {
                outside += 1;
            }
        }
        if inside.is_empty() {
            return None;
        }
        if outside == 0 {
            return Some(self.clone());
        }
        // crossing points along edges
        for ed in self.edges() {
            let (a, b) = (&ed.endpoints.0, &ed.endpoints.1);
            let (ea, eb) = (h.eval(a), h.eval(b));
            if ea.is_negative() != eb.is_negative() && !ea.is_zero() && !eb.is_zero() {
                let t = &ea / (&ea - &eb);
                inside.push(a.add(&b.sub(a).scale(&t)));
            }
        }
        Some(Self::hull(&inside).expect("clip input nonempty"))
    }

    /// Intersection of two polytopes; `None` when empty.
    pub fn intersect(&self, other: &RationalPolytope) -> Option<RationalPolytope> {
        let mut cur = self.clone();
        for h in &other.halfspaces {
            cur = cur.clip(h)?;
        }
        Some(cur)
    }

    /// Exact area of a 2D polytope (shoelace over the boundary cycle).
    pub fn area(&self) -> Result<Rat> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if self.affine_dim < 2 {
            return Ok(Rat::zero());
        }
        let ring = self.boundary_cycle()?;
        let mut acc = Rat::zero();
        for i in 0..ring.len() {
            let a = &ring[i];
            let b = &ring[(i + 1) % ring.len()];
            acc += a.coords()[0].clone() * b.coords()[1].clone()
                - b.coords()[0].clone() * a.coords()[1].clone();
        }
        Ok(acc.abs() / rat_int(2))
    }

    /// Vertices of a full-dimensional polygon in counter-clockwise order.
    pub fn boundary_cycle(&self) -> Result<Vec<RatVector>> {
        if self.dim != 2 || self.affine_dim != 2 {
            return Err(Error::NotFullDimensional("boundary cycle needs a polygon"));
        }
        let c = self.barycenter();
        let mut vs = self.vertices.clone();
        vs.sort_by(|a, b| angular_order(&a.sub(&c), &b.sub(&c)));
        Ok(vs)
    }
}

/// Compares two nonzero 2D vectors by angle in `[0, 2π)`.
fn angular_order(a: &RatVector, b: &RatVector) -> std::cmp::Ordering {
    fn half(v: &RatVector) -> u8 {
        let (x, y) = (&v.coords()[0], &v.coords()[1]);
        // 0: angle in [0, π), 1: [π, 2π)
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // same half-plane: compare by cross product
    let cross = a.coords()[0].clone() * b.coords()[1].clone()
        - a.coords()[1].clone() * b.coords()[0].clone();
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

fn edge_descriptor(a: &RatVector, b: &RatVector) -> EdgeDescriptor {
    let diff = b.sub(a);
    let (iv, s) = diff.scaled_int();
    let dir = primitive(&iv).expect("distinct endpoints");
    // diff = (iv / s) and iv = g * dir  =>  length = g / s
    let k = find_nonzero(&dir);
    let g = &iv.coords()[k] / &dir.coords()[k];
    EdgeDescriptor {
        endpoints: (a.clone(), b.clone()),
        primitive_direction: dir,
        lattice_length: Rat::new(g, s),
    }
}

// ---------------------------------------------------------------------------
// representation builders
// ---------------------------------------------------------------------------

fn axis(dim: usize, i: usize, sign: i64) -> IntVector {
    let mut c = vec![Int::zero(); dim];
    c[i] = Int::from(sign);
    IntVector::new(c).expect("dim")
}

fn point_rep(p: &RatVector) -> (Vec<RatVector>, Vec<HalfSpace>) {
    let d = p.dim();
    let mut hs = Vec::new();
    for i in 0..d {
        let v = &p.coords()[i];
        hs.push(HalfSpace {
            normal: axis(d, i, 1),
            offset: -v.clone(),
        });
        hs.push(HalfSpace {
            normal: axis(d, i, -1),
            offset: v.clone(),
        });
    }
    hs.sort();
    (vec![p.clone()], hs)
}

fn segment_rep(pts: &[RatVector]) -> Result<(Vec<RatVector>, Vec<HalfSpace>)> {
    let d = pts[0].dim();
    let dir_rat = pts
        .iter()
        .find(|p| *p != &pts[0])
        .expect("two distinct points")
        .sub(&pts[0]);
    let (div, _) = dir_rat.scaled_int();
    let u = primitive(&div)?;
    let lo = pts
        .iter()
        .min_by_key(|p| u.dot_rat(p))
        .unwrap()
        .clone();
    let hi = pts
        .iter()
        .max_by_key(|p| u.dot_rat(p))
        .unwrap()
        .clone();
    let mut hs = vec![
        HalfSpace::new(u.clone(), -u.dot_rat(&lo))?,
        HalfSpace::new(u.neg(), u.dot_rat(&hi))?,
    ];
    // equalities pinning the line
    let perps: Vec<IntVector> = match d {
        1 => vec![],
        2 => vec![u.perp()],
        3 => lattice::complement_basis(&u)?
            .iter()
            .map(|w| u.cross3(w))
            .collect(),
        _ => unreachable!(),
    };
    for n in perps {
        let n = primitive(&n)?;
        let val = n.dot_rat(&lo);
        hs.push(HalfSpace {
            normal: n.clone(),
            offset: -val.clone(),
        });
        hs.push(HalfSpace {
            normal: n.neg(),
            offset: val,
        });
    }
    hs.sort();
    let mut vs = vec![lo, hi];
    vs.sort();
    Ok((vs, hs))
}

/// Monotone chain over exact rationals; returns CCW ring.
fn convex_hull_ring_2d(pts: &[RatVector]) -> Vec<RatVector> {
    let mut p: Vec<RatVector> = pts.to_vec();
    p.sort();
    p.dedup();
    let cross = |o: &RatVector, a: &RatVector, b: &RatVector| -> Rat {
        let oa = a.sub(o);
        let ob = b.sub(o);
        oa.coords()[0].clone() * ob.coords()[1].clone()
            - oa.coords()[1].clone() * ob.coords()[0].clone()
    };
    let mut lower: Vec<RatVector> = Vec::new();
    for q in &p {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q).is_positive()
        {
            lower.pop();
        }
        lower.push(q.clone());
    }
    let mut upper: Vec<RatVector> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q).is_positive()
        {
            upper.pop();
        }
        upper.push(q.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_rep_2d(pts: &[RatVector]) -> Result<(Vec<RatVector>, Vec<HalfSpace>)> {
    let ring = convex_hull_ring_2d(pts);
    let mut hs = Vec::new();
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        let dr = b.sub(a);
        let (di, _) = dr.scaled_int();
        let n = primitive(&di)?.perp(); // inward for CCW rings
        hs.push(HalfSpace::new(n.clone(), -n.dot_rat(a))?);
    }
    hs.sort();
    hs.dedup();
    let mut vs = ring;
    vs.sort();
    Ok((vs, hs))
}

fn polygon_rep_in_3d(pts: &[RatVector]) -> Result<(Vec<RatVector>, Vec<HalfSpace>)> {
    // plane normal from two independent differences
    let base = &pts[0];
    let mut normal: Option<IntVector> = None;
    'outer: for i in 1..pts.len() {
        for j in (i + 1)..pts.len() {
            let (a, _) = pts[i].sub(base).scaled_int();
            let (b, _) = pts[j].sub(base).scaled_int();
            let c = a.cross3(&b);
            if !c.is_zero() {
                normal = Some(primitive(&c)?);
                break 'outer;
            }
        }
    }
    let normal = normal.expect("rank-2 point set has a plane");
    // project onto the two coordinates away from the largest normal entry
    let drop = normal
        .coords()
        .iter()
        .enumerate()
        .max_by_key(|(_, c)| c.abs())
        .map(|(i, _)| i)
        .unwrap();
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let proj = |p: &RatVector| -> RatVector {
        RatVector::new(vec![
            p.coords()[keep[0]].clone(),
            p.coords()[keep[1]].clone(),
        ])
        .expect("2d")
    };
    let projected: Vec<RatVector> = pts.iter().map(&proj).collect();
    let ring2 = convex_hull_ring_2d(&projected);
    // lift back by exact matching (projection is injective on the plane)
    let ring3: Vec<RatVector> = ring2
        .iter()
        .map(|q| {
            pts.iter()
                .find(|p| &proj(p) == q)
                .expect("ring points come from input")
                .clone()
        })
        .collect();
    let mut hs = Vec::new();
    let plane_val = normal.dot_rat(base);
    hs.push(HalfSpace {
        normal: normal.clone(),
        offset: -plane_val.clone(),
    });
    hs.push(HalfSpace {
        normal: normal.neg(),
        offset: plane_val,
    });
    for i in 0..ring3.len() {
        let a = &ring3[i];
        let b = &ring3[(i + 1) % ring3.len()];
        let (dir, _) = b.sub(a).scaled_int();
        let mut n = primitive(&normal.cross3(&primitive(&dir)?))?;
        // orient inward using a ring vertex off this edge line
        let off_edge = ring3
            .iter()
            .find(|v| !(n.dot_rat(&v.sub(a))).is_zero())
            .expect("polygon has a vertex off each edge");
        if n.dot_rat(&off_edge.sub(a)).is_negative() {
            n = n.neg();
        }
        hs.push(HalfSpace::new(n.clone(), -n.dot_rat(a))?);
    }
    hs.sort();
    hs.dedup();
    let mut vs = ring3;
    vs.sort();
    Ok((vs, hs))
}

/// Orientation of `d` relative to the plane of the triangle `(a, b, c)`:
/// sign of `det[b-a, c-a, d-a]`.
fn orient3(a: &RatVector, b: &RatVector, c: &RatVector, d: &RatVector) -> Rat {
    det_rat(&[b.sub(a), c.sub(a), d.sub(a)]).expect("3d")
}

/// Incremental exact 3D hull; returns canonical vertices and facet
/// halfspaces.
fn hull_3d(pts: &[RatVector]) -> Result<(Vec<RatVector>, Vec<HalfSpace>)> {
    // initial non-degenerate tetrahedron
    let p0 = 0usize;
    let p1 = (1..pts.len())
        .find(|&i| pts[i] != pts[p0])
        .expect("distinct points");
    let p2 = (1..pts.len())
        .find(|&i| {
            let (a, _) = pts[p1].sub(&pts[p0]).scaled_int();
            let (b, _) = pts[i].sub(&pts[p0]).scaled_int();
            !a.cross3(&b).is_zero()
        })
        .expect("rank 3 point set");
    let p3 = (1..pts.len())
        .find(|&i| !orient3(&pts[p0], &pts[p1], &pts[p2], &pts[i]).is_zero())
        .expect("rank 3 point set");

    // faces as oriented triangles (outward: orient(face, interior) < 0)
    let mut faces: Vec<[usize; 3]> = if orient3(&pts[p0], &pts[p1], &pts[p2], &pts[p3]).is_negative()
    {
        vec![[p0, p1, p2], [p0, p3, p1], [p1, p3, p2], [p0, p2, p3]]
    } else {
        vec![[p0, p2, p1], [p0, p1, p3], [p1, p2, p3], [p0, p3, p2]]
    };

    let used: BTreeSet<usize> = [p0, p1, p2, p3].into_iter().collect();
    for (idx, p) in pts.iter().enumerate() {
        if used.contains(&idx) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&f| orient3(&pts[faces[f][0]], &pts[faces[f][1]], &pts[faces[f][2]], p).is_positive())
            .collect();
        if visible.is_empty() {
            continue; // inside or on the boundary
        }
        let vis: BTreeSet<usize> = visible.iter().copied().collect();
        // horizon: directed edges of visible faces whose reverse belongs to a
        // kept face
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut edge_owner = std::collections::BTreeMap::new();
        for (f, face) in faces.iter().enumerate() {
            for k in 0..3 {
                edge_owner.insert((face[k], face[(k + 1) % 3]), f);
            }
        }
        for &f in &visible {
            let face = faces[f];
            for k in 0..3 {
                let e = (face[k], face[(k + 1) % 3]);
                let twin = edge_owner.get(&(e.1, e.0));
                if twin.map_or(true, |t| !vis.contains(t)) {
                    horizon.push(e);
                }
            }
        }
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .enumerate()
            .filter(|(f, _)| !vis.contains(f))
            .map(|(_, face)| *face)
            .collect();
        for (u, v) in horizon {
            next.push([u, v, idx]);
        }
        faces = next;
    }

    // facet planes: dedup supporting hyperplanes
    let mut planes: BTreeSet<HalfSpace> = BTreeSet::new();
    for face in &faces {
        let (a, b, c) = (&pts[face[0]], &pts[face[1]], &pts[face[2]]);
        let (ab, _) = b.sub(a).scaled_int();
        let (ac, _) = c.sub(a).scaled_int();
        let n = ab.cross3(&ac);
        if n.is_zero() {
            continue; // degenerate sliver from collinear triangle corners
        }
        // outward triangles: normal points outward, so the inner normal is -n
        let inner = primitive(&n.neg())?;
        planes.insert(HalfSpace::new(inner.clone(), -inner.dot_rat(a))?);
    }
    let halfspaces: Vec<HalfSpace> = planes.into_iter().collect();
    // vertices: points tight on a rank-3 set of facet normals
    let mut vs: Vec<RatVector> = pts
        .iter()
        .filter(|p| {
            if !halfspaces.iter().all(|h| h.contains(p)) {
                return false;
            }
            let tight: Vec<RatVector> = halfspaces
                .iter()
                .filter(|h| h.eval(p).is_zero())
                .map(|h| h.normal.to_rat())
                .collect();
            rank(&tight) == 3
        })
        .cloned()
        .collect();
    vs.sort();
    vs.dedup();
    Ok((vs, halfspaces))
}

// ---------------------------------------------------------------------------
// vertex enumeration from halfspaces
// ---------------------------------------------------------------------------

/// All basic feasible solutions: intersections of `dim` halfspace boundaries
/// with independent normals that satisfy all constraints.
pub fn basic_solutions(dim: usize, halfspaces: &[HalfSpace]) -> Vec<RatVector> {
    let n = halfspaces.len();
    let mut out: Vec<RatVector> = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    if n < dim {
        return out;
    }
    loop {
        let rows: Vec<RatVector> = idx.iter().map(|&i| halfspaces[i].normal.to_rat()).collect();
        let b: Vec<Rat> = idx.iter().map(|&i| -halfspaces[i].offset.clone()).collect();
        if let Ok(Some(x)) = solve(&rows, &b) {
            if halfspaces.iter().all(|h| h.contains(&x)) {
                out.push(x);
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                out.sort();
                out.dedup();
                return out;
            }
            k -= 1;
            if idx[k] < n - dim + k {
                idx[k] += 1;
                for j in (k + 1)..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// True iff the halfspace system admits a nonzero recession direction.
fn has_recession_ray(dim: usize, halfspaces: &[HalfSpace]) -> bool {
    if dim == 1 {
        let pos = halfspaces.iter().any(|h| h.normal.coords()[0].is_positive());
        let neg = halfspaces.iter().any(|h| h.normal.coords()[0].is_negative());
        return !(pos && neg);
    }
    // candidate extreme rays: nullspace directions of (dim-1)-subsets
    let n = halfspaces.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    if dim == 2 {
        subsets.extend((0..n).map(|i| vec![i]));
    } else {
        for i in 0..n {
            for j in (i + 1)..n {
                subsets.push(vec![i, j]);
            }
        }
    }
    for s in subsets {
        let dir = match dim {
            2 => halfspaces[s[0]].normal.perp(),
            3 => halfspaces[s[0]].normal.cross3(&halfspaces[s[1]].normal),
            _ => unreachable!(),
        };
        if dir.is_zero() {
            continue;
        }
        for cand in [dir.clone(), dir.neg()] {
            if halfspaces
                .iter()
                .all(|h| !h.normal.dot(&cand).is_negative())
            {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// LatticePolytope
// ---------------------------------------------------------------------------

impl LatticePolytope {
    pub fn new(p: RationalPolytope) -> Result<Self> {
        if p.vertices().iter().any(|v| v.to_int().is_none()) {
            return Err(Error::precondition("vertices must be integral"));
        }
        Ok(LatticePolytope { underlying: p })
    }

    pub fn hull(points: &[IntVector]) -> Result<Self> {
        let pts: Vec<RatVector> = points.iter().map(|p| p.to_rat()).collect();
        Self::new(RationalPolytope::hull(&pts)?)
    }

    pub fn as_rational(&self) -> &RationalPolytope {
        &self.underlying
    }

    pub fn into_rational(self) -> RationalPolytope {
        self.underlying
    }

    pub fn vertices_int(&self) -> Vec<IntVector> {
        self.underlying
            .vertices()
            .iter()
            .map(|v| v.to_int().expect("lattice polytope"))
            .collect()
    }

    /// Minimum lattice length over all edges.
    pub fn lattice_length_min(&self) -> Result<Rat> {
        let edges = self.underlying.edges();
        edges
            .iter()
            .map(|e| e.lattice_length.clone())
            .min()
            .ok_or(Error::precondition("lattice_length_min needs dim >= 1"))
    }

    pub fn translate_int(&self, t: &IntVector) -> LatticePolytope {
        LatticePolytope {
            underlying: self.underlying.translate(&t.to_rat()),
        }
    }

    /// `k * P` about the origin, `k >= 1`.
    pub fn dilate(&self, k: &Int) -> LatticePolytope {
        let verts: Vec<RatVector> = self
            .underlying
            .vertices()
            .iter()
            .map(|v| v.scale(&Rat::from_integer(k.clone())))
            .collect();
        LatticePolytope {
            underlying: RationalPolytope::hull(&verts).expect("dilation"),
        }
    }
}

/// Minimum ratio of corresponding edge lattice lengths, `min_e |e(P1)| /
/// |e(P2)|`, over polytopes with identical normal fans.
///
/// Correspondence is by edge direction and tight facet normals; the caller is
/// expected to have checked normal-fan equality (see `toric::normal_fan`).
pub fn edge_ratio_min(p1: &RationalPolytope, p2: &RationalPolytope) -> Result<Rat> {
    let e1 = p1.edges();
    let e2 = p2.edges();
    if e1.len() != e2.len() {
        return Err(Error::precondition(
            "edge_ratio_min needs matching normal fans (edge counts differ)",
        ));
    }
    let mut best: Option<Rat> = None;
    for ed1 in &e1 {
        // corresponding edge: same set of tight facet normals
        let tight1: BTreeSet<IntVector> = p1
            .halfspaces()
            .iter()
            .filter(|h| {
                h.eval(&ed1.endpoints.0).is_zero() && h.eval(&ed1.endpoints.1).is_zero()
            })
            .map(|h| h.normal.clone())
            .collect();
        let m = e2
            .iter()
            .find(|ed2| {
                let tight2: BTreeSet<IntVector> = p2
                    .halfspaces()
                    .iter()
                    .filter(|h| {
                        h.eval(&ed2.endpoints.0).is_zero() && h.eval(&ed2.endpoints.1).is_zero()
                    })
                    .map(|h| h.normal.clone())
                    .collect();
                tight1 == tight2
            })
            .ok_or_else(|| {
                Error::precondition("edge_ratio_min needs matching normal fans (no matching edge)")
            })?;
        if m.lattice_length.is_zero() {
            return Err(Error::precondition("degenerate edge in denominator"));
        }
        let r = &ed1.lattice_length / &m.lattice_length;
        best = Some(match best {
            None => r,
            Some(b) => b.min(r),
        });
    }
    best.ok_or(Error::precondition("polytopes without edges"))
}

// ---------------------------------------------------------------------------
// pointed polyhedra
// ---------------------------------------------------------------------------

/// A strongly convex rational cone given by primitive generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        check_dim(dim)?;
        let mut gens = Vec::new();
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
            if g.is_zero() {
                continue;
            }
            gens.push(primitive(&g)?);
        }
        gens.sort();
        gens.dedup();
        let cone = Cone {
            dim,
            generators: gens,
        };
        if !cone.is_strongly_convex() {
            return Err(Error::precondition("cone is not strongly convex"));
        }
        Ok(cone)
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Cone {
            dim,
            generators: vec![],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Strong convexity: the origin is not a convex combination of the
    /// generators (equivalently, the cone contains no line).
    pub fn is_strongly_convex(&self) -> bool {
        let gens: Vec<RatVector> = self.generators.iter().map(|g| g.to_rat()).collect();
        !zero_in_convex_hull(self.dim, &gens)
    }
}

/// Exact test for `0 ∈ conv(points)` via affinely independent subsets
/// (Carathéodory in dimension `<= 3`).
fn zero_in_convex_hull(dim: usize, points: &[RatVector]) -> bool {
    let n = points.len();
    let mut subset = Vec::new();
    fn rec(
        dim: usize,
        points: &[RatVector],
        start: usize,
        subset: &mut Vec<usize>,
        max_size: usize,
    ) -> bool {
        if !subset.is_empty() && zero_in_simplex(dim, points, subset) {
            return true;
        }
        if subset.len() == max_size {
            return false;
        }
        for i in start..points.len() {
            subset.push(i);
            if rec(dim, points, i + 1, subset, max_size) {
                return true;
            }
            subset.pop();
        }
        false
    }
    rec(dim, points, 0, &mut subset, (dim + 1).min(n))
}

/// Unique-solution barycentric check: `0 = Σ λ_i p_i`, `Σ λ_i = 1`,
/// `λ >= 0`, for an affinely independent index set.
fn zero_in_simplex(dim: usize, points: &[RatVector], idx: &[usize]) -> bool {
    let k = idx.len();
    // solve the (dim+1) x k system [p_i; 1] λ = [0; 1] by elimination
    let mut m: Vec<Vec<Rat>> = Vec::new();
    for r in 0..dim {
        let mut row: Vec<Rat> = idx.iter().map(|&i| points[i].coords()[r].clone()).collect();
        row.push(Rat::zero());
        m.push(row);
    }
    let mut ones: Vec<Rat> = vec![Rat::one(); k];
    ones.push(Rat::one());
    m.push(ones);

    // Gaussian elimination; require full column rank (affine independence)
    let rows = m.len();
    let mut piv_rows: Vec<usize> = Vec::new();
    let mut r0 = 0usize;
    for c in 0..k {
        let Some(p) = (r0..rows).find(|&r| !m[r][c].is_zero()) else {
            return false; // affinely dependent; a smaller subset covers it
        };
        m.swap(r0, p);
        let pv = m[r0][c].clone();
        for r in 0..rows {
            if r != r0 && !m[r][c].is_zero() {
                let f = &m[r][c] / &pv;
                for cc in 0..=k {
                    let t = &m[r0][cc] * &f;
                    m[r][cc] -= t;
                }
            }
        }
        piv_rows.push(r0);
        r0 += 1;
    }
    // consistency of remaining rows
    for r in r0..rows {
        if !m[r][k].is_zero() {
            return false;
        }
    }
    for (c, &pr) in piv_rows.iter().enumerate() {
        let lam = &m[pr][k] / &m[pr][c];
        if lam.is_negative() {
            return false;
        }
    }
    true
}

/// A pointed, possibly unbounded region `finite_part + recession`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    finite_part: RationalPolytope,
    recession: Cone,
    halfspaces: Vec<HalfSpace>,
}

impl Polyhedron {
    /// `P + C` with a canonical minimal finite part. The sum must be
    /// full-dimensional.
    pub fn sum(p: &RationalPolytope, c: &Cone) -> Result<Self> {
        if p.ambient_dim() != c.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.ambient_dim(),
                got: c.dim(),
            });
        }
        let halfspaces = polyhedron_halfspaces(p, c)?;
        // minimal finite part: drop vertices lying in hull(rest) + C
        let mut verts: Vec<RatVector> = p.vertices().to_vec();
        loop {
            let mut dropped = false;
            for i in 0..verts.len() {
                if verts.len() == 1 {
                    break;
                }
                let rest: Vec<RatVector> = verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                let hull_rest = RationalPolytope::hull(&rest)?;
                if polyhedron_contains(&hull_rest, c, &verts[i])? {
                    verts.remove(i);
                    dropped = true;
                    break;
                }
            }
            if !dropped {
                break;
            }
        }
        Ok(Polyhedron {
            finite_part: RationalPolytope::hull(&verts)?,
            recession: c.clone(),
            halfspaces,
        })
    }

    pub fn finite_part(&self) -> &RationalPolytope {
        &self.finite_part
    }

    pub fn recession(&self) -> &Cone {
        &self.recession
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn ambient_dim(&self) -> usize {
        self.finite_part.ambient_dim()
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// All bounded faces (the finite boundary when the recession cone is
    /// nontrivial; the whole body otherwise).
    pub fn finite_boundary(&self) -> Result<Vec<RationalPolytope>> {
        if self.recession.is_trivial() {
            return Ok(vec![self.finite_part.clone()]);
        }
        let d = self.ambient_dim();
        let verts = self.finite_part.vertices();
        let gens = self.recession.generators();
        let mut faces: Vec<RationalPolytope> = Vec::new();
        // dimension 0: the finite part is minimal, so its vertices are
        // exactly the vertices of the polyhedron
        for v in verts {
            faces.push(RationalPolytope::hull(std::slice::from_ref(v))?);
        }
        // dimension 1: vertex pairs whose common tight normals span a
        // (d-1)-dimensional space (a one-dimensional face with two extreme
        // points is a bounded segment)
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let common: Vec<RatVector> = self
                    .halfspaces
                    .iter()
                    .filter(|h| h.eval(&verts[i]).is_zero() && h.eval(&verts[j]).is_zero())
                    .map(|h| h.normal.to_rat())
                    .collect();
                if rank(&common) == d - 1 {
                    faces.push(RationalPolytope::hull(&[
                        verts[i].clone(),
                        verts[j].clone(),
                    ])?);
                }
            }
        }
        // dimension 2 (ambient 3): facets with no tight recession ray
        if d == 3 {
            let mut seen: BTreeSet<Vec<RatVector>> = BTreeSet::new();
            for h in &self.halfspaces {
                if gens.iter().any(|g| h.normal.dot(g).is_zero()) {
                    continue; // unbounded facet
                }
                let tight: Vec<RatVector> = verts
                    .iter()
                    .filter(|v| h.eval(v).is_zero())
                    .cloned()
                    .collect();
                if tight.len() < 3 {
                    continue;
                }
                let diffs: Vec<RatVector> =
                    tight[1..].iter().map(|p| p.sub(&tight[0])).collect();
                if rank(&diffs) == 2 && seen.insert(tight.clone()) {
                    faces.push(RationalPolytope::hull(&tight)?);
                }
            }
        }
        Ok(faces)
    }
}

/// Valid inequality description of `P + C` by support values over a finite
/// candidate normal set: facet normals of `P`, the inequality description of
/// `C`, and (in 3D) cross products of `P`-edge directions with generators.
/// The list may contain redundant members but always cuts out exactly
/// `P + C`, including lower-dimensional sums.
pub(crate) fn polyhedron_halfspaces(p: &RationalPolytope, c: &Cone) -> Result<Vec<HalfSpace>> {
    if c.is_trivial() {
        return Ok(p.halfspaces().to_vec());
    }
    let mut cands: BTreeSet<IntVector> = BTreeSet::new();
    for h in p.halfspaces() {
        cands.insert(h.normal.clone());
    }
    for n in cone_halfspaces(c)? {
        cands.insert(n);
    }
    if p.ambient_dim() == 3 {
        for e in p.edges() {
            for g in c.generators() {
                let cr = e.primitive_direction.cross3(g);
                if !cr.is_zero() {
                    let pr = primitive(&cr)?;
                    cands.insert(pr.clone());
                    cands.insert(pr.neg());
                }
            }
        }
    }
    let mut out: Vec<HalfSpace> = cands
        .into_iter()
        .filter(|n| c.generators().iter().all(|g| !n.dot(g).is_negative()))
        .map(|n| {
            let off = -p.support_min(&n);
            HalfSpace { normal: n, offset: off }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Membership in `hull + cone` without building the full H-representation:
/// `x ∈ P + C` iff the clipped system is feasible. Used only for finite-part
/// minimization, where an exact but slower test is fine.
fn polyhedron_contains(p: &RationalPolytope, c: &Cone, x: &RatVector) -> Result<bool> {
    // x ∈ P + C  ⟺  (x - C) ∩ P ≠ ∅  ⟺  ∃ y ∈ P with x - y ∈ C.
    // Decide by clipping P with the cone conditions on x - y.
    let hs = cone_halfspaces(c)?;
    let mut cur = p.clone();
    for n in hs {
        // <x - y, n> >= 0  ⟺  <y, -n> >= -<x, n>
        let h = HalfSpace::new(n.neg(), n.dot_rat(x))?;
        match cur.clip(&h) {
            Some(next) => cur = next,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Inequality description `{ x : <x,n> >= 0 }` of a strongly convex cone.
/// Lower-dimensional cones contribute equality pairs.
pub fn cone_halfspaces(c: &Cone) -> Result<Vec<IntVector>> {
    let d = c.dim();
    let gens = c.generators();
    if gens.is_empty() {
        // {0}: equalities on all axes
        let mut out = Vec::new();
        for i in 0..d {
            out.push(axis(d, i, 1));
            out.push(axis(d, i, -1));
        }
        return Ok(out);
    }
    let span = rank(&gens.iter().map(|g| g.to_rat()).collect::<Vec<_>>());
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    match (d, span) {
        (1, _) => {
            out.insert(gens[0].clone());
        }
        (2, 1) => {
            let g = &gens[0];
            let p = g.perp();
            out.insert(p.clone());
            out.insert(p.neg());
            // stay on the ray side
            out.insert(g.clone());
        }
        (2, 2) => {
            for g in gens {
                for n in [g.perp(), g.perp().neg()] {
                    if gens.iter().all(|h| !n.dot(h).is_negative()) {
                        out.insert(primitive(&n)?);
                    }
                }
            }
        }
        (3, 1) => {
            let g = &gens[0];
            for w in lattice::complement_basis(&primitive(g)?)? {
                let n = primitive(&g.cross3(&w))?;
                out.insert(n.clone());
                out.insert(n.neg());
            }
            out.insert(primitive(g)?);
        }
        (3, 2) => {
            // plane normal
            let mut nrm = None;
            'x: for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let cr = gens[i].cross3(&gens[j]);
                    if !cr.is_zero() {
                        nrm = Some(primitive(&cr)?);
                        break 'x;
                    }
                }
            }
            let nrm = nrm.expect("span 2");
            out.insert(nrm.clone());
            out.insert(nrm.neg());
            // in-plane boundary normals
            for g in gens {
                let n = g.cross3(&nrm);
                for cand in [n.clone(), n.neg()] {
                    if cand.is_zero() {
                        continue;
                    }
                    if gens.iter().all(|h| !cand.dot(h).is_negative()) {
                        out.insert(primitive(&cand)?);
                    }
                }
            }
        }
        (3, 3) => {
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let n = gens[i].cross3(&gens[j]);
                    if n.is_zero() {
                        continue;
                    }
                    for cand in [n.clone(), n.neg()] {
                        if gens.iter().all(|h| !cand.dot(h).is_negative()) {
                            out.insert(primitive(&cand)?);
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out.into_iter().collect())
}

/// Membership in a cone via its inequality description.
pub fn cone_contains(c: &Cone, x: &RatVector) -> Result<bool> {
    Ok(cone_halfspaces(c)?
        .iter()
        .all(|n| !n.dot_rat(x).is_negative()))
}
