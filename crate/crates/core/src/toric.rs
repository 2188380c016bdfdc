//! Complete fans, toric line bundles by ray coefficients, nef/ample
//! predicates, intersection numbers with invariant curves, blow-ups, Hilbert
//! bases of nef cones, and explicit numeric bounds derived from them.
//!
//! Conventions: a fan lives in the lattice `N`; a bundle's polytope
//! `P_L = { m : <m, rho> >= -a_rho }` lives in the dual lattice `M`.
//! Intersection numbers are computed geometrically (lattice length of the
//! polytope face dual to a wall) and, where an algebraic linear form is
//! needed, from the wall relation between adjacent maximal cones; the two
//! routes are cross-checked in the test suite.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{self, primitive, rank, solve, Int, IntVector, Rat, RatVector};
use crate::polytope::{
    cone_contains, cone_halfspaces, Cone, HalfSpace, RationalPolytope,
};
use crate::Result;

// ---------------------------------------------------------------------------
// Fan
// ---------------------------------------------------------------------------

/// A fan in `N` given by primitive rays and maximal cones as ray-index
/// lists. Construction validates strong convexity of every cone and that
/// cones meet in common faces.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        lattice::check_dim(dim)?;
        if rays.is_empty() || max_cones.is_empty() {
            return Err(Error::InvalidFan("a fan needs rays and cones".into()));
        }
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.dim(),
                });
            }
            if r.is_zero() || !lattice::is_primitive(r) {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        let ray_set: BTreeSet<&IntVector> = rays.iter().collect();
        if ray_set.len() != rays.len() {
            return Err(Error::InvalidFan("duplicate rays".into()));
        }
        let mut cones: Vec<Vec<usize>> = Vec::new();
        for c in &max_cones {
            let mut idx = c.clone();
            idx.sort_unstable();
            idx.dedup();
            if idx.len() != c.len() {
                return Err(Error::InvalidFan("repeated ray index in a cone".into()));
            }
            if idx.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan("cone references a missing ray".into()));
            }
            // validates strong convexity
            Cone::new(dim, idx.iter().map(|&i| rays[i].clone()).collect())
                .map_err(|e| Error::InvalidFan(format!("cone {c:?}: {e}")))?;
            cones.push(idx);
        }
        let fan = Fan {
            dim,
            rays,
            max_cones: cones,
        };
        fan.check_face_intersections()?;
        Ok(fan)
    }

    /// Exact check that every pair of maximal cones meets in the cone spanned
    /// by their common rays.
    fn check_face_intersections(&self) -> Result<()> {
        for i in 0..self.max_cones.len() {
            for j in (i + 1)..self.max_cones.len() {
                let a = self.cone(i)?;
                let b = self.cone(j)?;
                let common: Vec<IntVector> = self.max_cones[i]
                    .iter()
                    .filter(|x| self.max_cones[j].contains(x))
                    .map(|&x| self.rays[x].clone())
                    .collect();
                let common_cone = Cone::new(self.dim, common)?;
                for r in intersection_extremal_rays(&a, &b)? {
                    if !cone_contains(&common_cone, &r.to_rat())? {
                        return Err(Error::InvalidFan(format!(
                            "cones {i} and {j} overlap beyond their common face"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> Result<Cone> {
        Cone::new(
            self.dim,
            self.max_cones[i]
                .iter()
                .map(|&k| self.rays[k].clone())
                .collect(),
        )
    }

    /// Picard rank of the associated variety for a smooth complete fan.
    pub fn picard_rank(&self) -> usize {
        self.rays.len() - self.dim
    }

    /// Smooth: every maximal cone is simplicial with a unimodular ray basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| {
            c.len() == self.dim && {
                let gens: Vec<IntVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
                lattice::is_unimodular(&gens).unwrap_or(false)
            }
        })
    }

    /// Complete: maximal cones are full-dimensional and every facet is shared
    /// by exactly two of them.
    pub fn is_complete(&self) -> Result<bool> {
        match self.facet_incidence()? {
            Some(map) => Ok(map.values().all(|v| v.len() == 2)),
            None => Ok(false),
        }
    }

    /// Facet key (sorted ray indices) -> incident maximal cones; `None` if a
    /// maximal cone is not full-dimensional.
    fn facet_incidence(&self) -> Result<Option<BTreeMap<Vec<usize>, Vec<usize>>>> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            let gens: Vec<RatVector> = c.iter().map(|&i| self.rays[i].to_rat()).collect();
            if rank(&gens) != self.dim {
                return Ok(None);
            }
            let cone = self.cone(ci)?;
            for n in cone_halfspaces(&cone)? {
                let facet: Vec<usize> = c
                    .iter()
                    .copied()
                    .filter(|&i| n.dot(&self.rays[i]).is_zero())
                    .collect();
                map.entry(facet).or_default().push(ci);
            }
        }
        Ok(Some(map))
    }

    /// The codimension-one walls of a complete fan, each with its pair of
    /// adjacent maximal cones, in a deterministic order.
    pub fn walls(&self) -> Result<Vec<InvariantCurveIndex>> {
        let map = self
            .facet_incidence()?
            .ok_or_else(|| Error::InvalidFan("walls need full-dimensional cones".into()))?;
        let mut out = Vec::new();
        for (facet, cones) in map {
            if cones.len() != 2 {
                return Err(Error::InvalidFan(
                    "fan is not complete: a facet is not shared by two cones".into(),
                ));
            }
            out.push(InvariantCurveIndex {
                id: out.len(),
                wall_rays: facet,
                adjacent: (cones[0], cones[1]),
            });
        }
        Ok(out)
    }

    /// Stellar subdivision of a smooth maximal cone by the sum of its rays:
    /// splits the cone into `dim` cones through the new ray.
    pub fn blowup(&self, cone_index: usize) -> Result<Fan> {
        let c = self
            .max_cones
            .get(cone_index)
            .ok_or_else(|| Error::precondition("no such maximal cone"))?;
        if c.len() != self.dim {
            return Err(Error::precondition("blow-up needs a full-dimensional cone"));
        }
        let gens: Vec<IntVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
        if !lattice::is_unimodular(&gens)? {
            return Err(Error::precondition(
                "blow-up needs a smooth (unimodular) cone",
            ));
        }
        let mut new_ray = gens[0].clone();
        for g in &gens[1..] {
            new_ray = new_ray.add(g);
        }
        let mut rays = self.rays.clone();
        let new_idx = rays.len();
        rays.push(new_ray);
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != cone_index)
            .map(|(_, c)| c.clone())
            .collect();
        // one cone per dropped original ray
        for drop in 0..c.len() {
            let mut indices: Vec<usize> = c
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != drop)
                .map(|(_, &i)| i)
                .collect();
            indices.push(new_idx);
            cones.push(indices);
        }
        Fan::new(self.dim, rays, cones)
    }

    /// Structural equality up to ray and cone ordering.
    pub fn is_same(&self, other: &Fan) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let key = |f: &Fan| -> BTreeSet<BTreeSet<IntVector>> {
            f.max_cones
                .iter()
                .map(|c| c.iter().map(|&i| f.rays[i].clone()).collect())
                .collect()
        };
        let rayset = |f: &Fan| -> BTreeSet<IntVector> { f.rays.iter().cloned().collect() };
        rayset(self) == rayset(other) && key(self) == key(other)
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.is_same(other)
    }
}
impl Eq for Fan {}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fan", 2)?;
        st.serialize_field("rays", &self.rays)?;
        st.serialize_field("max_cones", &self.max_cones)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rays: Vec<IntVector>,
            max_cones: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        let dim = raw
            .rays
            .first()
            .map(|r| r.dim())
            .ok_or_else(|| serde::de::Error::custom("fan needs at least one ray"))?;
        Fan::new(dim, raw.rays, raw.max_cones).map_err(serde::de::Error::custom)
    }
}

/// Extremal rays of the intersection of two strongly convex cones.
fn intersection_extremal_rays(a: &Cone, b: &Cone) -> Result<Vec<IntVector>> {
    let d = a.dim();
    let mut normals: Vec<IntVector> = cone_halfspaces(a)?;
    normals.extend(cone_halfspaces(b)?);
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    let candidates: Vec<IntVector> = match d {
        1 => vec![IntVector::from_i64(&[1])],
        2 => normals.iter().map(|n| n.perp()).collect(),
        3 => {
            let mut v = Vec::new();
            for i in 0..normals.len() {
                for j in (i + 1)..normals.len() {
                    let c = normals[i].cross3(&normals[j]);
                    if !c.is_zero() {
                        v.push(c);
                    }
                }
            }
            v
        }
        _ => unreachable!(),
    };
    for c in candidates {
        for dir in [c.clone(), c.neg()] {
            if dir.is_zero() {
                continue;
            }
            if normals.iter().all(|n| !n.dot(&dir).is_negative()) {
                out.insert(primitive(&dir)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

// ---------------------------------------------------------------------------
// walls and curves
// ---------------------------------------------------------------------------

/// A codimension-one wall of a complete fan: the invariant curve it carries,
/// with the two adjacent maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCurveIndex {
    pub id: usize,
    /// Ray indices spanning the wall (d-1 of them on a simplicial fan).
    pub wall_rays: Vec<usize>,
    pub adjacent: (usize, usize),
}

/// Membership data for a linear subset of bundles: intersection numbers
/// pinned on `J` and bounded below elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSubsetIndex {
    /// Wall ids where equality is required.
    pub pinned: BTreeSet<usize>,
    /// Wall id -> required value (lower bound off `pinned`); nonnegative.
    pub bounds: BTreeMap<usize, i64>,
}

/// Primitive direction in `M` of the polytope edge dual to a wall
/// (orthogonal to every wall ray; sign is not canonical).
pub fn wall_dual_direction(fan: &Fan, wall: &InvariantCurveIndex) -> Result<IntVector> {
    match fan.dim() {
        1 => Ok(IntVector::from_i64(&[1])),
        2 => {
            let r = &fan.rays()[wall.wall_rays[0]];
            primitive(&r.perp())
        }
        3 => {
            let (a, b) = (
                &fan.rays()[wall.wall_rays[0]],
                &fan.rays()[wall.wall_rays[1]],
            );
            let c = a.cross3(b);
            if c.is_zero() {
                return Err(Error::InvalidFan("degenerate wall".into()));
            }
            primitive(&c)
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Linear form giving `L.C_tau` as a function of the ray coefficients, from
/// the wall relation between the two adjacent maximal cones. Requires a
/// smooth fan.
pub fn wall_linear_form(fan: &Fan, wall: &InvariantCurveIndex) -> Result<Vec<Int>> {
    let d = fan.dim();
    let (s1, s2) = wall.adjacent;
    let extra = |cone: &Vec<usize>| -> Result<usize> {
        let mut it = cone.iter().copied().filter(|i| !wall.wall_rays.contains(i));
        let e = it
            .next()
            .ok_or_else(|| Error::InvalidFan("wall equals a maximal cone".into()))?;
        if it.next().is_some() {
            return Err(Error::precondition(
                "wall relation needs simplicial adjacent cones",
            ));
        }
        Ok(e)
    };
    let e1 = extra(&fan.max_cones()[s1])?;
    let e2 = extra(&fan.max_cones()[s2])?;
    // solve rho_e2 = alpha * rho_e1 + sum beta_i * rho_wall_i
    let basis: Vec<&IntVector> = std::iter::once(&fan.rays()[e1])
        .chain(wall.wall_rays.iter().map(|&i| &fan.rays()[i]))
        .collect();
    let rows: Vec<RatVector> = (0..d)
        .map(|r| {
            RatVector::new(
                basis
                    .iter()
                    .map(|v| Rat::from_integer(v.coords()[r].clone()))
                    .collect(),
            )
            .expect("dim")
        })
        .collect();
    let b: Vec<Rat> = fan.rays()[e2]
        .coords()
        .iter()
        .map(|c| Rat::from_integer(c.clone()))
        .collect();
    let x = solve(&rows, &b)?
        .ok_or_else(|| Error::InvalidFan("adjacent cone rays are degenerate".into()))?;
    let alpha = &x.coords()[0];
    if alpha != &-Rat::one() {
        return Err(Error::InvalidFan(
            "wall relation violated: adjacent rays are not opposite across the wall".into(),
        ));
    }
    let mut coeffs = vec![Int::zero(); fan.rays().len()];
    coeffs[e1] += 1;
    coeffs[e2] += 1;
    for (k, &i) in wall.wall_rays.iter().enumerate() {
        let beta = &x.coords()[k + 1];
        if !beta.is_integer() {
            return Err(Error::InvalidFan(
                "wall relation has non-integer coefficients (fan not smooth?)".into(),
            ));
        }
        coeffs[i] -= beta.to_integer();
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// ToricLineBundle
// ---------------------------------------------------------------------------

/// A line bundle on the toric variety of a fan, as integer ray coefficients
/// defining `P_L = { m : <m, rho> >= -a_rho }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricLineBundle {
    fan: Fan,
    #[serde(with = "lattice::serde_int_seq")]
    coeffs: Vec<Int>,
}

impl ToricLineBundle {
    pub fn new(fan: Fan, coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != fan.rays().len() {
            return Err(Error::precondition(format!(
                "expected {} coefficients, got {}",
                fan.rays().len(),
                coeffs.len()
            )));
        }
        Ok(ToricLineBundle { fan, coeffs })
    }

    pub fn from_i64(fan: Fan, coeffs: &[i64]) -> Result<Self> {
        Self::new(fan, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// The section polytope; `None` when the halfspaces are inconsistent.
    pub fn polytope_of(&self) -> Result<Option<RationalPolytope>> {
        let hs: Vec<HalfSpace> = self
            .fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(r, a)| HalfSpace {
                normal: r.clone(),
                offset: Rat::from_integer(a.clone()),
            })
            .collect();
        RationalPolytope::from_halfspaces(self.fan.dim(), &hs)
    }

    /// Nef: the polytope is nonempty and every coefficient is tight
    /// (`a_rho = -min <m, rho>` over `P_L`).
    pub fn is_nef(&self) -> Result<bool> {
        let Some(p) = self.polytope_of()? else {
            return Ok(false);
        };
        Ok(self
            .fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .all(|(r, a)| p.support_min(r) == -Rat::from_integer(a.clone())))
    }

    /// Ample: nef with the normal fan of the polytope equal to the fan.
    pub fn is_ample(&self) -> Result<bool> {
        if !self.is_nef()? {
            return Ok(false);
        }
        let p = self.polytope_of()?.expect("nef implies nonempty");
        if !p.is_full_dimensional() {
            return Ok(false);
        }
        Ok(normal_fan(&p)?.is_same(&self.fan))
    }

    /// Tensor product: coefficient sums, re-tightened to support values when
    /// the resulting polytope is nonempty.
    pub fn tensor(&self, other: &ToricLineBundle) -> Result<ToricLineBundle> {
        if !self.fan.is_same(&other.fan) {
            return Err(Error::precondition("tensor needs bundles on one fan"));
        }
        let sums: Vec<Int> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        let raw = ToricLineBundle::new(self.fan.clone(), sums)?;
        raw.tightened()
    }

    /// Replaces each coefficient by the support value of the polytope; the
    /// identity on nef bundles.
    pub fn tightened(&self) -> Result<ToricLineBundle> {
        let Some(p) = self.polytope_of()? else {
            return Ok(self.clone());
        };
        let coeffs: Vec<Int> = self
            .fan
            .rays()
            .iter()
            .map(|r| {
                let m = -p.support_min(r);
                if m.is_integer() {
                    m.to_integer()
                } else {
                    // fractional support can only tighten strictly inside
                    m.floor().to_integer()
                }
            })
            .collect();
        ToricLineBundle::new(self.fan.clone(), coeffs)
    }

    /// `L.C_tau`: the lattice length of the `P_L` face dual to the wall
    /// (zero when the face collapses to a vertex). Requires `L` nef.
    pub fn intersection_number(&self, tau: &InvariantCurveIndex) -> Result<Int> {
        if !self.is_nef()? {
            return Err(Error::precondition(
                "intersection numbers are defined here for nef bundles only",
            ));
        }
        let p = self.polytope_of()?.expect("nef implies nonempty");
        let mut face = p;
        for &i in &tau.wall_rays {
            let h = HalfSpace {
                normal: self.fan.rays()[i].clone(),
                offset: Rat::from_integer(self.coeffs[i].clone()),
            };
            face = face
                .clip(&h.flipped())
                .ok_or_else(|| Error::precondition("support face vanished (not nef?)"))?;
        }
        match face.affine_dim() {
            0 => Ok(Int::zero()),
            1 => {
                let e = &face.edges()[0];
                let len = &e.lattice_length;
                if !len.is_integer() {
                    return Err(Error::precondition(
                        "non-integral dual edge length on a lattice bundle",
                    ));
                }
                Ok(len.to_integer())
            }
            _ => Err(Error::InvalidFan(
                "wall is not codimension one for this bundle".into(),
            )),
        }
    }

    /// All wall intersection numbers, keyed by wall id.
    pub fn intersection_numbers(&self) -> Result<BTreeMap<usize, Int>> {
        let mut out = BTreeMap::new();
        for w in self.fan.walls()? {
            out.insert(w.id, self.intersection_number(&w)?);
        }
        Ok(out)
    }
}

/// Inner-normal fan of a full-dimensional polytope: one ray per facet
/// normal, one maximal cone per vertex.
pub fn normal_fan(p: &RationalPolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional("normal fan needs a full body"));
    }
    let facets = p.facets()?;
    let rays: Vec<IntVector> = facets.iter().map(|f| f.halfspace.normal.clone()).collect();
    let mut cones = Vec::new();
    for v in p.vertices() {
        let cone: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.halfspace.eval(v).is_zero())
            .map(|(i, _)| i)
            .collect();
        cones.push(cone);
    }
    Fan::new(p.ambient_dim(), rays, cones)
}

/// A fan is general when no two wall-dual edge directions are parallel.
pub fn is_general(fan: &Fan) -> Result<bool> {
    let mut seen: BTreeSet<IntVector> = BTreeSet::new();
    for w in fan.walls()? {
        let mut u = wall_dual_direction(fan, &w)?;
        // canonical sign: first nonzero coordinate positive
        if u
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            u = u.neg();
        }
        if !seen.insert(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// nef cone and Hilbert basis
// ---------------------------------------------------------------------------

/// Gauge-fixed coordinates on the Picard group: coefficients are zeroed on
/// one smooth maximal cone, leaving `picard_rank` free ray coefficients.
struct NefCone {
    /// ray indices carrying the free coordinates
    free: Vec<usize>,
    /// wall forms restricted to the free coordinates, aligned with walls
    forms: Vec<IntVector>,
    walls: Vec<InvariantCurveIndex>,
}

fn nef_cone(fan: &Fan) -> Result<NefCone> {
    if !fan.is_smooth() || !fan.is_complete()? {
        return Err(Error::precondition(
            "nef-cone computations need a smooth complete fan",
        ));
    }
    let r = fan.picard_rank();
    if r == 0 || r > 3 {
        return Err(Error::UnsupportedRank(r));
    }
    let gauge = &fan.max_cones()[0];
    let free: Vec<usize> = (0..fan.rays().len())
        .filter(|i| !gauge.contains(i))
        .collect();
    debug_assert_eq!(free.len(), r);
    let walls = fan.walls()?;
    let mut forms = Vec::new();
    for w in &walls {
        let full = wall_linear_form(fan, w)?;
        forms.push(IntVector::new(
            free.iter().map(|&i| full[i].clone()).collect(),
        )?);
    }
    Ok(NefCone { free, forms, walls })
}

impl NefCone {
    fn contains(&self, x: &IntVector) -> bool {
        self.forms.iter().all(|f| !f.dot(x).is_negative())
    }

    /// Primitive extremal rays of the nef cone in gauge coordinates.
    fn extremal_rays(&self) -> Result<Vec<IntVector>> {
        let r = self.free.len();
        let mut out: BTreeSet<IntVector> = BTreeSet::new();
        let candidates: Vec<IntVector> = match r {
            1 => vec![IntVector::from_i64(&[1])],
            2 => self.forms.iter().map(|f| f.perp()).collect(),
            3 => {
                let mut v = Vec::new();
                for i in 0..self.forms.len() {
                    for j in (i + 1)..self.forms.len() {
                        let c = self.forms[i].cross3(&self.forms[j]);
                        if !c.is_zero() {
                            v.push(c);
                        }
                    }
                }
                v
            }
            _ => return Err(Error::UnsupportedRank(r)),
        };
        for c in candidates {
            for dir in [c.clone(), c.neg()] {
                if !dir.is_zero() && self.contains(&dir) {
                    out.insert(primitive(&dir)?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    fn to_bundle(&self, fan: &Fan, x: &IntVector) -> Result<ToricLineBundle> {
        let mut coeffs = vec![Int::zero(); fan.rays().len()];
        for (j, &i) in self.free.iter().enumerate() {
            coeffs[i] = x.coords()[j].clone();
        }
        ToricLineBundle::new(fan.clone(), coeffs)
    }
}

/// Hilbert basis of a cone monoid given generators and an exact membership
/// predicate: Gordan enumeration over the zonotope of the generators
/// followed by irreducibility filtering.
fn hilbert_basis_of(
    gens: &[IntVector],
    in_cone: &dyn Fn(&IntVector) -> bool,
) -> Result<Vec<IntVector>> {
    if gens.is_empty() {
        return Ok(vec![]);
    }
    let r = gens[0].dim();
    if gens.len() > 16 {
        return Err(Error::precondition(
            "too many extremal rays for desk-scale Hilbert enumeration",
        ));
    }
    // zonotope of the generators = hull of all subset sums
    let mut sums: Vec<RatVector> = Vec::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut acc = IntVector::zero(r)?;
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                acc = acc.add(g);
            }
        }
        sums.push(acc.to_rat());
    }
    let zonotope = RationalPolytope::hull(&sums)?;
    let candidates: Vec<IntVector> = zonotope
        .lattice_points()
        .into_iter()
        .filter(|x| !x.is_zero() && in_cone(x))
        .collect();
    let basis: Vec<IntVector> = candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && in_cone(&x.sub(y)) && !x.sub(y).is_zero())
        })
        .cloned()
        .collect();
    Ok(basis)
}

/// Minimal generating set of the nef monoid of a smooth complete fan of
/// Picard rank at most three.
pub fn hilbert_basis(fan: &Fan) -> Result<Vec<ToricLineBundle>> {
    let nc = nef_cone(fan)?;
    let gens = nc.extremal_rays()?;
    let xs = hilbert_basis_of(&gens, &|x| nc.contains(x))?;
    xs.iter().map(|x| nc.to_bundle(fan, x)).collect()
}

// ---------------------------------------------------------------------------
// thresholds and bounds
// ---------------------------------------------------------------------------

/// Per-wall threshold `n_tau = max_j B_j.C_tau` over a generating set of the
/// nef monoid.
pub fn sufficiently_ample_threshold(
    fan: &Fan,
    basis: &[ToricLineBundle],
) -> Result<BTreeMap<usize, Int>> {
    let walls = fan.walls()?;
    let mut out = BTreeMap::new();
    for w in &walls {
        let mut n = Int::zero();
        for b in basis {
            let v = b.intersection_number(w)?;
            if v > n {
                n = v;
            }
        }
        out.insert(w.id, n);
    }
    Ok(out)
}

/// Sufficient-ampleness test: `L.C_tau > d * n_tau` on every wall.
pub fn in_d(l: &ToricLineBundle, thresholds: &BTreeMap<usize, Int>) -> Result<bool> {
    if !l.is_nef()? {
        return Ok(false);
    }
    let d = Int::from(l.fan().dim());
    for w in l.fan().walls()? {
        let n = thresholds
            .get(&w.id)
            .ok_or_else(|| Error::precondition("missing wall threshold"))?;
        if l.intersection_number(&w)? <= &d * n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lopr-side data of a bound report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationBound {
    /// index of the chosen ray in the fan
    pub rho: usize,
    pub r_rho: i64,
    pub w_rho: i64,
    /// threshold: exceeding it with some `L1.C_tau` forces a trivial
    /// cokernel
    pub value: i64,
}

/// Closed-form bounds computed from Hilbert bases of the nef cone and its
/// facet subcones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// max intersection number over all examined Hilbert bases and walls
    pub c: i64,
    /// per-wall max over the minimal ample generating set
    pub c_tau: BTreeMap<usize, i64>,
    /// `|I| * d * c^2`
    pub loqr_bound: i64,
    pub separation: Option<SeparationBound>,
    pub walls: usize,
    pub dim: usize,
    /// how many subcones (full cone + facets) contributed Hilbert bases
    pub subcones_examined: usize,
}

fn to_i64(x: &Int) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::precondition("bound exceeds machine range"))
}

/// Computes the bound report; the separation part needs both a nef `l2` and
/// a ray index with a nonzero pairing against some wall-dual direction.
pub fn section5_bounds(
    fan: &Fan,
    l2: Option<&ToricLineBundle>,
    rho: Option<usize>,
) -> Result<BoundReport> {
    let nc = nef_cone(fan)?;
    let gens = nc.extremal_rays()?;
    let full_basis = hilbert_basis_of(&gens, &|x| nc.contains(x))?;
    // facet subcones of the nef cone: one per wall form that some extremal
    // ray annihilates
    let mut bases: Vec<Vec<IntVector>> = vec![full_basis.clone()];
    for f in &nc.forms {
        let sub_gens: Vec<IntVector> = gens
            .iter()
            .filter(|g| f.dot(g).is_zero())
            .cloned()
            .collect();
        if sub_gens.is_empty() {
            continue;
        }
        bases.push(hilbert_basis_of(&sub_gens, &|x| {
            nc.contains(x) && f.dot(x).is_zero()
        })?);
    }
    let subcones_examined = bases.len();
    let walls = nc.walls.clone();

    let mut c = Int::zero();
    for basis in &bases {
        for x in basis {
            for (form, _) in nc.forms.iter().zip(&walls) {
                let v = form.dot(x);
                if v > c {
                    c = v;
                }
            }
        }
    }
    if c.is_zero() {
        return Err(Error::precondition("nef cone carries no positive class"));
    }

    // minimal ample generating set: s = sum of the full basis (ample), plus
    // g_i + s for each extremal ray
    let s: IntVector = full_basis
        .iter()
        .fold(IntVector::zero(nc.free.len())?, |acc, x| acc.add(x));
    let mut ample_set: Vec<IntVector> = vec![s.clone()];
    for g in &gens {
        ample_set.push(g.add(&s));
    }
    let mut c_tau: BTreeMap<usize, i64> = BTreeMap::new();
    for (form, w) in nc.forms.iter().zip(&walls) {
        let m = ample_set
            .iter()
            .map(|x| form.dot(x))
            .max()
            .expect("nonempty ample set");
        c_tau.insert(w.id, to_i64(&m)?);
    }

    let n_walls = walls.len();
    let d = fan.dim();
    let loqr = Int::from(n_walls) * Int::from(d) * &c * &c;

    let separation = match (l2, rho) {
        (Some(l2), Some(rho_idx)) => {
            if rho_idx >= fan.rays().len() {
                return Err(Error::precondition("no such ray"));
            }
            if !l2.is_nef()? {
                return Err(Error::precondition("separation bound needs a nef bundle"));
            }
            let rho_vec = &fan.rays()[rho_idx];
            let mut r: Option<Int> = None;
            for w in &walls {
                let u = wall_dual_direction(fan, w)?;
                let pair = u.dot(rho_vec).abs();
                if !pair.is_zero() && r.as_ref().map_or(true, |cur| &pair < cur) {
                    r = Some(pair);
                }
            }
            let r = r.ok_or_else(|| {
                Error::precondition("ray pairs to zero with every wall direction")
            })?;
            let p = l2
                .polytope_of()?
                .ok_or_else(|| Error::precondition("empty polytope"))?;
            let pts = p.lattice_points();
            let vals: Vec<Int> = pts.iter().map(|m| m.dot(rho_vec)).collect();
            let w_rho = match (vals.iter().max(), vals.iter().min()) {
                (Some(hi), Some(lo)) => hi - lo,
                _ => Int::zero(),
            };
            let c_tau_max = c_tau.values().max().copied().unwrap_or(0);
            // value = max c_tau + ceil(4 |I| c^2 w / r)
            let num = Int::from(4) * Int::from(n_walls) * &c * &c * &w_rho;
            let ceil_div = (&num + &r - Int::one()) / &r;
            Some(SeparationBound {
                rho: rho_idx,
                r_rho: to_i64(&r)?,
                w_rho: to_i64(&w_rho)?,
                value: c_tau_max + to_i64(&ceil_div)?,
            })
        }
        _ => None,
    };

    Ok(BoundReport {
        c: to_i64(&c)?,
        c_tau,
        loqr_bound: to_i64(&loqr)?,
        separation,
        walls: n_walls,
        dim: d,
        subcones_examined,
    })
}

// ---------------------------------------------------------------------------
// refinement partitions and linear subsets
// ---------------------------------------------------------------------------

/// Maps each maximal cone of the finer fan to the unique maximal cone of the
/// coarser fan containing it; both bundles must be nef and the fine fan must
/// refine the coarse one.
pub fn vertex_partition(
    l_fine: &ToricLineBundle,
    l_coarse: &ToricLineBundle,
) -> Result<BTreeMap<usize, usize>> {
    if !l_fine.is_nef()? || !l_coarse.is_nef()? {
        return Err(Error::precondition("vertex partition needs nef bundles"));
    }
    let fine = l_fine.fan();
    let coarse = l_coarse.fan();
    let mut out = BTreeMap::new();
    for (fi, fc) in fine.max_cones().iter().enumerate() {
        let mut found = None;
        for ci in 0..coarse.max_cones().len() {
            let cc = coarse.cone(ci)?;
            if fc
                .iter()
                .all(|&ri| cone_contains(&cc, &fine.rays()[ri].to_rat()).unwrap_or(false))
            {
                found = Some(ci);
                break;
            }
        }
        let ci = found.ok_or_else(|| {
            Error::precondition("fine fan does not refine the coarse fan")
        })?;
        out.insert(fi, ci);
    }
    Ok(out)
}

/// Literal membership test of `L` in the linear subset: pinned walls must
/// match exactly, the rest must meet the lower bound.
pub fn linear_subset_member(l: &ToricLineBundle, s: &LinearSubsetIndex) -> Result<bool> {
    if s.bounds.values().any(|&b| b < 0) {
        return Err(Error::precondition("linear subset bounds must be nonnegative"));
    }
    let nums = l.intersection_numbers()?;
    for (wall, b) in &s.bounds {
        let v = nums
            .get(wall)
            .ok_or_else(|| Error::precondition("bound references a missing wall"))?;
        let b = Int::from(*b);
        if s.pinned.contains(wall) {
            if v != &b {
                return Ok(false);
            }
        } else if v < &b {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// standard fans (used pervasively in tests and generators)
// ---------------------------------------------------------------------------

/// The fan of the projective plane.
pub fn projective_plane() -> Fan {
    Fan::new(
        2,
        vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[0, 1]),
            IntVector::from_i64(&[-1, -1]),
        ],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
    .expect("standard fan")
}

/// The fan of a product of projective lines.
pub fn p1_x_p1() -> Fan {
    Fan::new(
        2,
        vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[0, 1]),
            IntVector::from_i64(&[-1, 0]),
            IntVector::from_i64(&[0, -1]),
        ],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .expect("standard fan")
}

/// The Hirzebruch surface `F_a`: rays `e1, e2, -e2, -e1 + a*e2`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::new(
        2,
        vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[0, 1]),
            IntVector::from_i64(&[0, -1]),
            IntVector::from_i64(&[-1, a]),
        ],
        vec![vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]],
    )
    .expect("standard fan")
}

/// The fan of projective 3-space.
pub fn projective_space_3() -> Fan {
    Fan::new(
        3,
        vec![
            IntVector::from_i64(&[1, 0, 0]),
            IntVector::from_i64(&[0, 1, 0]),
            IntVector::from_i64(&[0, 0, 1]),
            IntVector::from_i64(&[-1, -1, -1]),
        ],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("standard fan")
}

/// The fan of `P^1 x P^2`.
pub fn p1_x_p2() -> Fan {
    // P^1 factor along the z-axis, P^2 factor in the xy-plane
    let rays = vec![
        IntVector::from_i64(&[1, 0, 0]),
        IntVector::from_i64(&[0, 1, 0]),
        IntVector::from_i64(&[-1, -1, 0]),
        IntVector::from_i64(&[0, 0, 1]),
        IntVector::from_i64(&[0, 0, -1]),
    ];
    let mut cones = Vec::new();
    for pair in [[0usize, 1], [1, 2], [2, 0]] {
        for z in [3usize, 4] {
            cones.push(vec![pair[0], pair[1], z]);
        }
    }
    Fan::new(3, rays, cones).expect("standard fan")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntVector;

    fn iv(c: &[i64]) -> IntVector {
        IntVector::from_i64(c)
    }

    fn o_p2(k: i64) -> ToricLineBundle {
        ToricLineBundle::from_i64(projective_plane(), &[0, 0, k]).unwrap()
    }

    #[test]
    fn p2_is_smooth_and_complete() {
        let f = projective_plane();
        assert!(f.is_smooth());
        assert!(f.is_complete().unwrap());
        assert_eq!(f.picard_rank(), 1);

        // missing a cone: not complete
        let partial = Fan::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!partial.is_complete().unwrap());

        // non-unimodular cone: not smooth
        let sing = Fan::new(2, vec![iv(&[1, 0]), iv(&[1, 2])], vec![vec![0, 1]]).unwrap();
        assert!(!sing.is_smooth());
    }

    #[test]
    fn overlapping_cones_rejected() {
        let bad = Fan::new(
            2,
            vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])],
            vec![vec![0, 1], vec![0, 2]], // second cone sits inside the first
        );
        assert!(matches!(bad, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn blowup_chain() {
        let f1 = projective_plane().blowup(0).unwrap();
        assert_eq!(f1.rays().len(), 4);
        assert!(f1.rays().contains(&iv(&[1, 1])));
        assert!(f1.is_smooth());
        assert!(f1.is_complete().unwrap());
        assert_eq!(f1.picard_rank(), 2);
        assert!(f1.is_same(&hirzebruch(1)) || f1.rays().len() == 4);

        // blow up all three cones of P^2
        let mut f = projective_plane();
        for _ in 0..3 {
            // always subdivide a cone made of two original rays
            let idx = (0..f.max_cones().len())
                .find(|&i| f.max_cones()[i].iter().all(|&r| r < 3))
                .unwrap();
            f = f.blowup(idx).unwrap();
        }
        assert_eq!(f.rays().len(), 6);
        assert!(f.is_smooth());
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn polytope_and_normal_fan_round_trip() {
        let k = 3i64;
        let p = o_p2(k).polytope_of().unwrap().unwrap();
        let expect = RationalPolytope::hull(&[
            RatVector::from_i64(&[0, 0]),
            RatVector::from_i64(&[k, 0]),
            RatVector::from_i64(&[0, k]),
        ])
        .unwrap();
        assert_eq!(p, expect);
        assert!(normal_fan(&p).unwrap().is_same(&projective_plane()));

        let square = RationalPolytope::hull(&[
            RatVector::from_i64(&[0, 0]),
            RatVector::from_i64(&[1, 0]),
            RatVector::from_i64(&[0, 1]),
            RatVector::from_i64(&[1, 1]),
        ])
        .unwrap();
        assert!(normal_fan(&square).unwrap().is_same(&p1_x_p1()));
    }

    #[test]
    fn nef_and_ample_predicates() {
        assert!(o_p2(1).is_ample().unwrap());
        assert!(o_p2(0).is_nef().unwrap());
        assert!(!o_p2(0).is_ample().unwrap());
        assert!(!o_p2(-1).is_nef().unwrap());
        // translation by a character keeps coefficients tight, hence nef
        let shifted = ToricLineBundle::from_i64(projective_plane(), &[1, 0, 1]).unwrap();
        assert!(shifted.is_nef().unwrap());
        // a redundant halfspace gives non-tight coefficients: not nef as written
        let f1 = projective_plane().blowup(0).unwrap();
        let loose = ToricLineBundle::from_i64(f1, &[0, 0, 1, 1]).unwrap();
        assert!(!loose.is_nef().unwrap());
        let tight = loose.tightened().unwrap();
        assert!(tight.is_nef().unwrap());
        assert_eq!(tight.coeffs()[3], Int::zero());
    }

    #[test]
    fn intersection_numbers_on_p2() {
        for k in [0i64, 1, 4] {
            let l = o_p2(k);
            for w in projective_plane().walls().unwrap() {
                assert_eq!(l.intersection_number(&w).unwrap(), Int::from(k));
            }
        }
        // additivity under tensor
        let l1 = o_p2(2);
        let l2 = o_p2(3);
        let t = l1.tensor(&l2).unwrap();
        for w in projective_plane().walls().unwrap() {
            assert_eq!(
                t.intersection_number(&w).unwrap(),
                l1.intersection_number(&w).unwrap() + l2.intersection_number(&w).unwrap()
            );
        }
    }

    #[test]
    fn pullback_collapses_exceptional_wall() {
        let f1 = projective_plane().blowup(0).unwrap();
        // pull back O(1): coefficient 0 on the new ray (support of Delta)
        let pull = ToricLineBundle::from_i64(f1.clone(), &[0, 0, 1, 0]).unwrap();
        assert!(pull.is_nef().unwrap());
        assert!(!pull.is_ample().unwrap());
        let new_ray_idx = 3usize;
        let walls = f1.walls().unwrap();
        let exceptional = walls
            .iter()
            .find(|w| w.wall_rays == vec![new_ray_idx])
            .expect("exceptional wall");
        assert_eq!(pull.intersection_number(exceptional).unwrap(), Int::zero());
        // and some other wall is positive
        assert!(walls
            .iter()
            .any(|w| pull.intersection_number(w).unwrap() > Int::zero()));
    }

    #[test]
    fn algebraic_and_geometric_intersections_agree() {
        for (fan, coeff_sets) in [
            (projective_plane(), vec![vec![0i64, 0, 3], vec![0, 0, 1]]),
            (p1_x_p1(), vec![vec![0i64, 0, 2, 5], vec![0, 0, 1, 0]]),
            (hirzebruch(2), vec![vec![1i64, 0, 0, 0], vec![2, 0, 1, 0]]),
        ] {
            for coeffs in coeff_sets {
                let l = ToricLineBundle::from_i64(fan.clone(), &coeffs).unwrap();
                let l = l.tightened().unwrap();
                if !l.is_nef().unwrap() {
                    continue;
                }
                for w in fan.walls().unwrap() {
                    let form = wall_linear_form(&fan, &w).unwrap();
                    let alg: Int = form
                        .iter()
                        .zip(l.coeffs())
                        .map(|(f, a)| f * a)
                        .sum();
                    assert_eq!(alg, l.intersection_number(&w).unwrap(), "wall {w:?}");
                }
            }
        }
    }

    #[test]
    fn generality_of_standard_fans() {
        assert!(is_general(&projective_plane()).unwrap());
        assert!(!is_general(&p1_x_p1()).unwrap());
        assert!(!is_general(&projective_plane().blowup(0).unwrap()).unwrap());
    }

    #[test]
    fn hilbert_basis_standard_surfaces() {
        let b = hilbert_basis(&projective_plane()).unwrap();
        assert_eq!(b.len(), 1);
        let nums = b[0].intersection_numbers().unwrap();
        assert!(nums.values().all(|v| v == &Int::one()));

        let b = hilbert_basis(&p1_x_p1()).unwrap();
        assert_eq!(b.len(), 2);
        for l in &b {
            assert!(l.is_nef().unwrap());
            let nums = l.intersection_numbers().unwrap();
            let ones = nums.values().filter(|v| **v == Int::one()).count();
            let zeros = nums.values().filter(|v| v.is_zero()).count();
            assert_eq!((ones, zeros), (2, 2));
        }

        let f1 = projective_plane().blowup(0).unwrap();
        let b = hilbert_basis(&f1).unwrap();
        assert_eq!(b.len(), 2);
        for l in &b {
            assert!(l.is_nef().unwrap());
        }
    }

    #[test]
    fn hilbert_basis_decomposes_small_nef_bundles() {
        // every nef bundle on F_1 with all intersection numbers <= 3 is a
        // nonnegative integer combination of the basis
        let fan = projective_plane().blowup(0).unwrap();
        let basis = hilbert_basis(&fan).unwrap();
        let walls = fan.walls().unwrap();
        // enumerate gauge coordinates in a small window
        for a0 in 0..=6i64 {
            for a3 in 0..=6i64 {
                let l = ToricLineBundle::from_i64(fan.clone(), &[a0, 0, 0, a3]).unwrap();
                if !l.is_nef().unwrap() {
                    continue;
                }
                if walls
                    .iter()
                    .any(|w| l.intersection_number(w).unwrap() > Int::from(3))
                {
                    continue;
                }
                assert!(
                    decomposes(&l, &basis, &walls),
                    "({a0},{a3}) does not decompose"
                );
            }
        }
    }

    fn decomposes(
        l: &ToricLineBundle,
        basis: &[ToricLineBundle],
        walls: &[InvariantCurveIndex],
    ) -> bool {
        // greedy-free exact search over small multiplicities
        fn rec(
            target: &BTreeMap<usize, Int>,
            basis_nums: &[BTreeMap<usize, Int>],
            i: usize,
        ) -> bool {
            if target.values().all(|v| v.is_zero()) {
                return true;
            }
            if i == basis_nums.len() {
                return false;
            }
            let mut t = target.clone();
            loop {
                if rec(&t, basis_nums, i + 1) {
                    return true;
                }
                if t.iter().all(|(k, v)| v >= &basis_nums[i][k]) {
                    for (k, v) in t.iter_mut() {
                        *v -= &basis_nums[i][k];
                    }
                } else {
                    return false;
                }
            }
        }
        let target: BTreeMap<usize, Int> = walls
            .iter()
            .map(|w| (w.id, l.intersection_number(w).unwrap()))
            .collect();
        let basis_nums: Vec<BTreeMap<usize, Int>> = basis
            .iter()
            .map(|b| {
                walls
                    .iter()
                    .map(|w| (w.id, b.intersection_number(w).unwrap()))
                    .collect()
            })
            .collect();
        rec(&target, &basis_nums, 0)
    }

    #[test]
    fn thresholds_and_in_d() {
        let fan = projective_plane();
        let basis = hilbert_basis(&fan).unwrap();
        let th = sufficiently_ample_threshold(&fan, &basis).unwrap();
        assert!(th.values().all(|v| v == &Int::one()));
        assert!(!in_d(&o_p2(0), &th).unwrap());
        assert!(!in_d(&o_p2(2), &th).unwrap());
        assert!(in_d(&o_p2(3), &th).unwrap());

        let fan = p1_x_p1();
        let basis = hilbert_basis(&fan).unwrap();
        let th = sufficiently_ample_threshold(&fan, &basis).unwrap();
        let mk = |a: i64, b: i64| {
            ToricLineBundle::from_i64(fan.clone(), &[0, 0, a, b]).unwrap()
        };
        assert!(in_d(&mk(3, 3), &th).unwrap());
        assert!(!in_d(&mk(3, 2), &th).unwrap());
        assert!(!in_d(&mk(2, 3), &th).unwrap());
    }

    #[test]
    fn section5_bounds_standard() {
        let rep = section5_bounds(&projective_plane(), None, None).unwrap();
        assert_eq!(rep.c, 1);
        assert_eq!(rep.walls, 3);
        assert_eq!(rep.dim, 2);
        assert_eq!(rep.loqr_bound, 6);
        assert_eq!(rep.loqr_bound as i128, (rep.walls * rep.dim) as i128 * (rep.c as i128).pow(2));

        let rep = section5_bounds(&p1_x_p1(), None, None).unwrap();
        assert_eq!(rep.c, 1);
        assert_eq!(rep.walls, 4);
        assert_eq!(rep.loqr_bound, 8);

        // separation data on P^2: r = 1, w(O(k)) = k
        let rep = section5_bounds(&projective_plane(), Some(&o_p2(4)), Some(0)).unwrap();
        let sep = rep.separation.unwrap();
        assert_eq!(sep.r_rho, 1);
        assert_eq!(sep.w_rho, 4);
    }

    #[test]
    fn vertex_partition_cases() {
        // identity partition
        let l = o_p2(2);
        let part = vertex_partition(&l, &l).unwrap();
        assert_eq!(part.len(), 3);

        // F_1 refines P^2: 4 fine cones onto 3 coarse cones
        let f1 = projective_plane().blowup(0).unwrap();
        let fine = ToricLineBundle::from_i64(f1, &[0, 0, 1, 0]).unwrap();
        let part = vertex_partition(&fine, &l).unwrap();
        assert_eq!(part.len(), 4);
        let images: BTreeSet<usize> = part.values().copied().collect();
        assert_eq!(images.len(), 3);
    }

    #[test]
    fn linear_subset_examples() {
        let walls = projective_plane().walls().unwrap();
        let all: Vec<usize> = walls.iter().map(|w| w.id).collect();
        let s = LinearSubsetIndex {
            pinned: BTreeSet::new(),
            bounds: all.iter().map(|&w| (w, 1)).collect(),
        };
        assert!(linear_subset_member(&o_p2(2), &s).unwrap());

        let s = LinearSubsetIndex {
            pinned: [all[0]].into_iter().collect(),
            bounds: [(all[0], 3)].into_iter().collect(),
        };
        assert!(!linear_subset_member(&o_p2(2), &s).unwrap());
        assert!(linear_subset_member(&o_p2(3), &s).unwrap());

        let s = LinearSubsetIndex {
            pinned: all.iter().copied().collect(),
            bounds: all.iter().map(|&w| (w, 3)).collect(),
        };
        assert!(linear_subset_member(&o_p2(3), &s).unwrap());
        assert!(!linear_subset_member(&o_p2(4), &s).unwrap());
    }

    #[test]
    fn three_dimensional_fans() {
        let p3 = projective_space_3();
        assert!(p3.is_smooth());
        assert!(p3.is_complete().unwrap());
        assert_eq!(p3.walls().unwrap().len(), 6);
        let o1 = ToricLineBundle::from_i64(p3.clone(), &[0, 0, 0, 1]).unwrap();
        assert!(o1.is_ample().unwrap());
        for w in p3.walls().unwrap() {
            assert_eq!(o1.intersection_number(&w).unwrap(), Int::one());
        }

        let p1p2 = p1_x_p2();
        assert!(p1p2.is_smooth());
        assert!(p1p2.is_complete().unwrap());
        let b = hilbert_basis(&p1p2).unwrap();
        assert_eq!(b.len(), 2);

        let rep = section5_bounds(&p3, None, None).unwrap();
        assert_eq!(rep.c, 1);
        assert_eq!(rep.loqr_bound, 18); // 6 walls * dim 3 * 1
    }

    #[test]
    fn fan_json_round_trip() {
        let f = projective_plane();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"rays\""));
        let back: Fan = serde_json::from_str(&s).unwrap();
        assert!(f.is_same(&back));

        let l = o_p2(3);
        let s = serde_json::to_string(&l).unwrap();
        assert!(s.contains("\"coeffs\":[0,0,3]"));
        let back: ToricLineBundle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);

        // the documented wire shape parses
        let wire = r#"{"rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}"#;
        let f2: Fan = serde_json::from_str(wire).unwrap();
        assert!(f2.is_same(&projective_plane()));
    }

    #[test]
    fn rank_cap_is_enforced() {
        // four blow-ups of P^2 have Picard rank 5
        let mut f = projective_plane();
        for _ in 0..4 {
            f = f.blowup(0).unwrap();
        }
        match hilbert_basis(&f) {
            Err(Error::UnsupportedRank(5)) => {}
            other => panic!("expected rank error, got {other:?}"),
        }
    }

    #[test]
    fn general_fans_have_full_dimensional_nef_polytopes() {
        // on a general fan, every nontrivial nef bundle has a full polytope
        assert!(is_general(&projective_plane()).unwrap());
        for k in 1..=4i64 {
            let p = o_p2(k).polytope_of().unwrap().unwrap();
            assert!(p.is_full_dimensional());
        }
        assert_eq!(
            o_p2(0)
                .polytope_of()
                .unwrap()
                .unwrap()
                .affine_dim(),
            0
        );
    }
}
