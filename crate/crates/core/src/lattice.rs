//! Exact integer and rational linear algebra in dimension one to three.
//!
//! Vectors carry their ambient dimension; mixing dimensions is an error, and
//! dimensions outside `1..=3` are rejected at construction. All arithmetic is
//! arbitrary precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Checks an ambient dimension is supported.
pub fn check_dim(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

/// Builds a rational from an integer.
pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Builds a reduced rational `p/q`, `q != 0`.
pub fn rat(p: impl Into<Int>, q: impl Into<Int>) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Formats a rational as `p` or `p/q` (always with positive denominator).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` into a reduced rational.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        Int::from_str(t.trim()).map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// A point of the lattice `M` (or `N`), length `1..=3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    coords: Vec<Int>,
}

/// A point of `M ⊗ ℚ`; denominators positive and reduced (enforced by
/// `BigRational` itself).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector {
    coords: Vec<Rat>,
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

impl IntVector {
    pub fn new(coords: Vec<Int>) -> Result<Self> {
        check_dim(coords.len())?;
        Ok(IntVector { coords })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector::new(coords.iter().map(|&c| Int::from(c)).collect())
            .expect("dimension checked by caller")
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(IntVector {
            coords: vec![Int::zero(); dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_rat(&self, other: &RatVector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), other.dim());
        IntVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), other.dim());
        IntVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> IntVector {
        IntVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> IntVector {
        IntVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector {
            coords: self
                .coords
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Sup-norm as an integer.
    pub fn sup_norm(&self) -> Int {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }

    /// 2D cross product `self.x * other.y - self.y * other.x`.
    pub fn cross2(&self, other: &IntVector) -> Int {
        debug_assert_eq!(self.dim(), 2);
        debug_assert_eq!(other.dim(), 2);
        &self.coords[0] * &other.coords[1] - &self.coords[1] * &other.coords[0]
    }

    /// 3D cross product.
    pub fn cross3(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), 3);
        debug_assert_eq!(other.dim(), 3);
        let a = &self.coords;
        let b = &other.coords;
        IntVector {
            coords: vec![
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ],
        }
    }

    /// Counter-clockwise quarter turn in 2D.
    pub fn perp(&self) -> IntVector {
        debug_assert_eq!(self.dim(), 2);
        IntVector {
            coords: vec![-self.coords[1].clone(), self.coords[0].clone()],
        }
    }
}

impl RatVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        check_dim(coords.len())?;
        Ok(RatVector { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector::from_i64(coords).to_rat()
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(RatVector {
            coords: vec![Rat::zero(); dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), other.dim());
        RatVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_int(&self, other: &IntVector) -> RatVector {
        self.add(&other.to_rat())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), other.dim());
        RatVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> RatVector {
        RatVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Exact sup-norm distance.
    pub fn sup_distance(&self, other: &RatVector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .max()
            .expect("nonempty coords")
    }

    /// Returns the integer vector if all coordinates are integral.
    pub fn to_int(&self) -> Option<IntVector> {
        if self.coords.iter().all(|c| c.denom().is_one()) {
            Some(IntVector {
                coords: self.coords.iter().map(|c| c.numer().clone()).collect(),
            })
        } else {
            None
        }
    }

    /// Clears denominators: returns `(v, s)` with `v = s * self`, `s > 0`
    /// minimal.
    pub fn scaled_int(&self) -> (IntVector, Int) {
        let mut s = Int::one();
        for c in &self.coords {
            s = s.lcm(c.denom());
        }
        let v = IntVector {
            coords: self
                .coords
                .iter()
                .map(|c| c.numer() * (&s / c.denom()))
                .collect(),
        };
        (v, s)
    }
}

// ---------------------------------------------------------------------------
// serde: IntVector as a JSON array of integers, RatVector as an array of
// "p" / "p/q" strings. Oversized integers fall back to decimal strings so
// round-trips stay lossless.
// ---------------------------------------------------------------------------

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            match i64::try_from(c) {
                Ok(n) => seq.serialize_element(&n)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntVector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of 1 to 3 integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntVector, A::Error> {
                let mut coords = Vec::new();
                while let Some(item) = seq.next_element::<serde_json::Value>()? {
                    let n = match &item {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(Int::from)
                            .ok_or_else(|| serde::de::Error::custom("non-integer number")),
                        serde_json::Value::String(s) => Int::from_str(s)
                            .map_err(|e| serde::de::Error::custom(format!("bad integer: {e}"))),
                        _ => Err(serde::de::Error::custom("expected integer or string")),
                    }?;
                    coords.push(n);
                }
                IntVector::new(coords).map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&WireRat(c.clone()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RatVector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of 1 to 3 rationals as \"p\" or \"p/q\" strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<RatVector, A::Error> {
                let mut coords = Vec::new();
                while let Some(item) = seq.next_element::<serde_json::Value>()? {
                    let r = match &item {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(rat_int)
                            .ok_or_else(|| serde::de::Error::custom("non-integer number")),
                        serde_json::Value::String(s) => {
                            rat_from_str(s).map_err(serde::de::Error::custom)
                        }
                        _ => Err(serde::de::Error::custom("expected rational string")),
                    }?;
                    coords.push(r);
                }
                RatVector::new(coords).map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Serde adapter rendering a `Vec<Int>` as a JSON array of numbers (decimal
/// strings when outside `i64`), for use with `#[serde(with = ...)]`.
pub mod serde_int_seq {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Vec<Int>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(v.len()))?;
        for c in v {
            match i64::try_from(c) {
                Ok(n) => seq.serialize_element(&n)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<Int>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Int>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Vec<Int>, A::Error> {
                let mut coords = Vec::new();
                while let Some(item) = seq.next_element::<serde_json::Value>()? {
                    let n = match &item {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(Int::from)
                            .ok_or_else(|| serde::de::Error::custom("non-integer number")),
                        serde_json::Value::String(s) => Int::from_str(s)
                            .map_err(|e| serde::de::Error::custom(format!("bad integer: {e}"))),
                        _ => Err(serde::de::Error::custom("expected integer or string")),
                    }?;
                    coords.push(n);
                }
                Ok(coords)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// A rational wrapped for wire transport: plain JSON numbers for small
/// integers, `"p/q"` (or big-decimal) strings otherwise. Used by the
/// `serde_rat*` adapters.
#[derive(Clone, Debug)]
pub struct WireRat(pub Rat);

impl Serialize for WireRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(n) = i64::try_from(self.0.numer()) {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for WireRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let r = match &v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(rat_int)
                .ok_or_else(|| serde::de::Error::custom("non-integer number")),
            serde_json::Value::String(s) => {
                rat_from_str(s).map_err(|e| serde::de::Error::custom(e.to_string()))
            }
            _ => Err(serde::de::Error::custom("expected a number or \"p/q\" string")),
        }?;
        Ok(WireRat(r))
    }
}

/// `#[serde(with = ...)]` adapter for a single `Rat` field.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireRat(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        Ok(WireRat::deserialize(d)?.0)
    }
}

/// `#[serde(with = ...)]` adapter for a `(Rat, Rat)` field.
pub mod serde_rat_pair {
    use super::*;

    pub fn serialize<S: Serializer>(
        p: &(Rat, Rat),
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        (WireRat(p.0.clone()), WireRat(p.1.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<(Rat, Rat), D::Error> {
        let (a, b) = <(WireRat, WireRat)>::deserialize(d)?;
        Ok((a.0, b.0))
    }
}

/// `#[serde(with = ...)]` adapter for a `Vec<Rat>` field.
pub mod serde_rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Vec<Rat>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&WireRat(r.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        Ok(Vec::<WireRat>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// `#[serde(with = ...)]` adapter for a `Vec<(Rat, Rat)>` field.
pub mod serde_rat_pairs {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Vec<(Rat, Rat)>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for (a, b) in v {
            seq.serialize_element(&(WireRat(a.clone()), WireRat(b.clone())))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(Rat, Rat)>, D::Error> {
        Ok(Vec::<(WireRat, WireRat)>::deserialize(d)?
            .into_iter()
            .map(|(a, b)| (a.0, b.0))
            .collect())
    }
}

// ---------------------------------------------------------------------------
// determinants, primitivity, basis completion
// ---------------------------------------------------------------------------

fn gcd_all(coords: &[Int]) -> Int {
    coords
        .iter()
        .fold(Int::zero(), |acc, c| acc.gcd(c))
}

/// Divides out the gcd of the coordinates, keeping orientation.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = gcd_all(v.coords());
    Ok(IntVector {
        coords: v.coords().iter().map(|c| c / &g).collect(),
    })
}

pub fn is_primitive(v: &IntVector) -> bool {
    !v.is_zero() && gcd_all(v.coords()).is_one()
}

/// Determinant of `d` integer vectors of dimension `d` (`d` in `1..=3`).
pub fn det(vs: &[IntVector]) -> Result<Int> {
    let d = vs.first().map(|v| v.dim()).unwrap_or(0);
    check_dim(d)?;
    if vs.len() != d || vs.iter().any(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: vs.len(),
        });
    }
    let m = |i: usize, j: usize| -> &Int { &vs[i].coords()[j] };
    Ok(match d {
        1 => m(0, 0).clone(),
        2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
        3 => {
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => unreachable!(),
    })
}

/// Rational determinant of `d` rational vectors.
pub fn det_rat(vs: &[RatVector]) -> Result<Rat> {
    let d = vs.first().map(|v| v.dim()).unwrap_or(0);
    check_dim(d)?;
    if vs.len() != d || vs.iter().any(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: vs.len(),
        });
    }
    let m = |i: usize, j: usize| -> &Rat { &vs[i].coords()[j] };
    Ok(match d {
        1 => m(0, 0).clone(),
        2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
        3 => {
            m(0, 0) * &(m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * &(m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * &(m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => unreachable!(),
    })
}

/// True iff the vectors form a lattice basis, i.e. `|det| = 1`.
pub fn is_unimodular(vs: &[IntVector]) -> Result<bool> {
    Ok(det(vs)?.abs().is_one())
}

/// Solves `A x = b` with rows `rows` by Cramer's rule; `None` if singular.
pub fn solve(rows: &[RatVector], b: &[Rat]) -> Result<Option<RatVector>> {
    let d = rows.len();
    check_dim(d)?;
    let den = det_rat(rows)?;
    if den.is_zero() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        // replace column j by b
        let cols: Vec<RatVector> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut c = r.coords().to_vec();
                c[j] = b[i].clone();
                RatVector { coords: c }
            })
            .collect();
        out.push(det_rat(&cols)? / &den);
    }
    Ok(Some(RatVector { coords: out }))
}

/// Rank of a set of rational vectors (dimension of their span), `d <= 3`.
pub fn rank(vs: &[RatVector]) -> usize {
    let mut basis: Vec<RatVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            // eliminate along b's pivot coordinate
            let pivot = b
                .coords()
                .iter()
                .position(|c| !c.is_zero())
                .expect("basis vectors nonzero");
            if !w.coords()[pivot].is_zero() {
                let f = &w.coords()[pivot] / &b.coords()[pivot];
                w = w.sub(&b.scale(&f));
            }
        }
        if w.coords().iter().any(|c| !c.is_zero()) {
            basis.push(w);
        }
    }
    basis.len()
}

/// Extends a primitive vector `u` to a lattice basis and returns the `d - 1`
/// complementary vectors; the full tuple has determinant `±1`.
pub fn complement_basis(u: &IntVector) -> Result<Vec<IntVector>> {
    if !is_primitive(u) {
        return Err(Error::NotPrimitive);
    }
    let d = u.dim();
    match d {
        1 => Ok(vec![]),
        2 => {
            // s*a + t*b = 1  =>  det [[a, b], [-t, s]] = 1
            let a = &u.coords()[0];
            let b = &u.coords()[1];
            let e = a.extended_gcd(b);
            Ok(vec![IntVector {
                coords: vec![-e.y, e.x],
            }])
        }
        3 => {
            // Reduce u to e1 by unimodular row operations T, then the last
            // two columns of T^{-1} complement u (first column is u itself).
            let mut t = [
                [Int::one(), Int::zero(), Int::zero()],
                [Int::zero(), Int::one(), Int::zero()],
                [Int::zero(), Int::zero(), Int::one()],
            ];
            let mut v = [u.coords()[0].clone(), u.coords()[1].clone(), u.coords()[2].clone()];
            for i in 1..3 {
                if v[i].is_zero() {
                    continue;
                }
                let e = v[0].extended_gcd(&v[i]);
                let (g, s, w) = (e.gcd, e.x, e.y);
                let (p, q) = (&v[0] / &g, &v[i] / &g);
                // 2x2 block [[s, w], [-q, p]] on rows 0 and i; determinant 1.
                let row0: Vec<Int> = (0..3).map(|j| &s * &t[0][j] + &w * &t[i][j]).collect();
                let rowi: Vec<Int> = (0..3).map(|j| -&q * &t[0][j] + &p * &t[i][j]).collect();
                for j in 0..3 {
                    t[0][j] = row0[j].clone();
                    t[i][j] = rowi[j].clone();
                }
                v[i] = Int::zero();
                v[0] = g;
            }
            debug_assert!(v[0].abs().is_one() && v[1].is_zero() && v[2].is_zero());
            // T u = ±e1, so u = ±(T^{-1} e1); take columns 2, 3 of T^{-1}.
            let dt = det(&[
                IntVector::new(t[0].to_vec())?,
                IntVector::new(t[1].to_vec())?,
                IntVector::new(t[2].to_vec())?,
            ])?;
            debug_assert!(dt.abs().is_one());
            // inverse = adjugate * det (det = ±1)
            let cof = |r: usize, c: usize| -> Int {
                let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
                let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
                let minor = &t[rs[0]][cs[0]] * &t[rs[1]][cs[1]] - &t[rs[0]][cs[1]] * &t[rs[1]][cs[0]];
                if (r + c) % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            };
            // column k of T^{-1} has entries adj[i][k] * det = cof(k, i) * det
            let col = |k: usize| -> IntVector {
                IntVector {
                    coords: (0..3).map(|i| cof(k, i) * &dt).collect(),
                }
            };
            let (w1, w2) = (col(1), col(2));
            let d3 = det(&[u.clone(), w1.clone(), w2.clone()])?;
            debug_assert!(d3.abs().is_one(), "completion must be unimodular");
            Ok(vec![w1, w2])
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(c: &[i64]) -> IntVector {
        IntVector::from_i64(c)
    }

    #[test]
    fn primitive_divides_gcd() {
        assert_eq!(primitive(&iv(&[2, 4])).unwrap(), iv(&[1, 2]));
        assert_eq!(primitive(&iv(&[0, -3])).unwrap(), iv(&[0, -1]));
        assert_eq!(primitive(&iv(&[6, 10, 15])).unwrap(), iv(&[6, 10, 15]));
        assert!(matches!(primitive(&iv(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn primitive_scale_invariant() {
        for v in [iv(&[3, -5]), iv(&[2, 4, 8]), iv(&[7])] {
            for k in 1i64..5 {
                let kv = v.scale(&Int::from(k));
                assert_eq!(primitive(&kv).unwrap(), primitive(&v).unwrap());
            }
        }
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap());
        assert!(!is_unimodular(&[iv(&[1, 0]), iv(&[1, 2])]).unwrap());
        assert!(is_unimodular(&[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 1])]).unwrap());
        assert!(matches!(
            is_unimodular(&[iv(&[1, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn complement_is_unimodular() {
        for u in [
            iv(&[1, 0]),
            iv(&[2, 3]),
            iv(&[0, 1]),
            iv(&[-5, 7]),
            iv(&[1, 1, 1]),
            iv(&[0, 0, 1]),
            iv(&[0, 0, -1]),
            iv(&[2, 3, 5]),
            iv(&[-4, 6, 9]),
        ] {
            let mut rows = vec![u.clone()];
            rows.extend(complement_basis(&u).unwrap());
            assert!(is_unimodular(&rows).unwrap(), "u = {u:?}");
        }
        assert!(matches!(
            complement_basis(&iv(&[2, 4])),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn solve_cramer() {
        let rows = vec![RatVector::from_i64(&[2, 1]), RatVector::from_i64(&[1, 3])];
        let b = vec![rat_int(5), rat_int(10)];
        let x = solve(&rows, &b).unwrap().unwrap();
        assert_eq!(x, RatVector::new(vec![rat_int(1), rat_int(3)]).unwrap());
    }

    #[test]
    fn rational_serde_round_trip() {
        let v = RatVector::new(vec![rat(1, 3), rat(-7, 2)]).unwrap();
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"["1/3","-7/2"]"#);
        let back: RatVector = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);

        let w = iv(&[1, -2, 3]);
        let js = serde_json::to_string(&w).unwrap();
        assert_eq!(js, "[1,-2,3]");
        let back: IntVector = serde_json::from_str(&js).unwrap();
        assert_eq!(back, w);
    }
}
