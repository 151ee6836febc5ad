//! Exact arithmetic of divisor classes on the blowup X(r, d) of projective
//! d-space at r generic points.
//!
//! A class is stored as `(t; m1, ..., mr)` for t·E0 − m1·E1 − ... − mr·Er,
//! where E0 is the hyperplane pullback and the Ei are the exceptional
//! divisors. The intersection pairing, canonical class, arithmetic genus and
//! Riemann-Roch count are exposed for surfaces (d = 2) only; for d > 2 the
//! classes are plain bookkeeping and the pairing refuses to evaluate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::reductions::MultiplicitySequence;
use crate::textform;

/// The blowup X(r, d) of projective d-space at r generic points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupContext {
    num_points: usize,
    ambient_dim: usize,
}

impl BlowupContext {
    pub fn new(num_points: usize, ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::InvalidAmbientDimension(ambient_dim));
        }
        Ok(Self {
            num_points,
            ambient_dim,
        })
    }

    /// The plane blowup X_r.
    pub fn plane(num_points: usize) -> Self {
        Self {
            num_points,
            ambient_dim: 2,
        }
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
}

/// A divisor class t·E0 − m1·E1 − ... − mr·Er on X(r, d).
///
/// Multiplicities may be negative; normalization and clamping live in
/// [`crate::reductions`]. Classes that differ only by trailing zero
/// multiplicities denote the same system on a larger blowup, so equality
/// and ordering compare after zero padding.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    degree: i64,
    multiplicities: Vec<i64>,
    ambient_dim: usize,
}

impl DivisorClass {
    pub fn new(degree: i64, multiplicities: Vec<i64>, ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::InvalidAmbientDimension(ambient_dim));
        }
        Ok(Self {
            degree,
            multiplicities,
            ambient_dim,
        })
    }

    /// A class on a plane blowup (d = 2).
    pub fn plane(degree: i64, multiplicities: Vec<i64>) -> Self {
        Self {
            degree,
            multiplicities,
            ambient_dim: 2,
        }
    }

    /// The exceptional class E_i (1-based), as (0; 0, ..., -1, ..., 0).
    pub fn exceptional(num_points: usize, index: usize) -> Result<Self> {
        if index == 0 || index > num_points {
            return Err(Error::InvalidArgument("exceptional index out of range"));
        }
        let mut m = vec![0; num_points];
        m[index - 1] = -1;
        Ok(Self::plane(0, m))
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_points(&self) -> usize {
        self.multiplicities.len()
    }

    /// Same class with the multiplicity vector zero-padded to length `r`.
    pub fn padded(&self, r: usize) -> Self {
        let mut m = self.multiplicities.clone();
        if m.len() < r {
            m.resize(r, 0);
        }
        Self {
            degree: self.degree,
            multiplicities: m,
            ambient_dim: self.ambient_dim,
        }
    }

    /// Same class with trailing zero multiplicities dropped.
    pub fn trimmed(&self) -> Self {
        let mut m = self.multiplicities.clone();
        while m.last() == Some(&0) {
            m.pop();
        }
        Self {
            degree: self.degree,
            multiplicities: m,
            ambient_dim: self.ambient_dim,
        }
    }

    /// The raw (un-normalized) multiplicity sequence of this class.
    pub fn multiplicity_sequence(&self) -> MultiplicitySequence {
        MultiplicitySequence::new(self.multiplicities.clone(), self.ambient_dim)
            .expect("ambient dimension already validated")
    }

    /// Integer multiple of the class, with overflow detection.
    pub fn scaled(&self, k: i64) -> Result<Self> {
        let degree = self
            .degree
            .checked_mul(k)
            .ok_or(Error::Overflow("scaled"))?;
        let multiplicities = self
            .multiplicities
            .iter()
            .map(|&m| m.checked_mul(k).ok_or(Error::Overflow("scaled")))
            .collect::<Result<_>>()?;
        Ok(Self {
            degree,
            multiplicities,
            ambient_dim: self.ambient_dim,
        })
    }

    /// Parses the `"t;m1,...,mr"` form into a class on X(r, d).
    pub fn parse_with_dim(s: &str, ambient_dim: usize) -> Result<Self> {
        let s = s.trim();
        let (t_part, m_part) = s.split_once(';').ok_or(Error::Parse {
            what: "divisor class",
            detail: format!("missing ';' in {s:?}"),
        })?;
        let degree: i64 = t_part.trim().parse().map_err(|_| Error::Parse {
            what: "divisor class",
            detail: format!("bad degree in {s:?}"),
        })?;
        let multiplicities = textform::parse_int_list(m_part, "divisor class")?;
        Self::new(degree, multiplicities, ambient_dim)
    }
}

fn padded_pairs<'a>(
    a: &'a [i64],
    b: &'a [i64],
) -> impl Iterator<Item = (i64, i64)> + 'a {
    let n = a.len().max(b.len());
    (0..n).map(move |i| {
        (
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        )
    })
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.degree == other.degree
            && padded_pairs(&self.multiplicities, &other.multiplicities).all(|(x, y)| x == y)
    }
}

impl Eq for DivisorClass {}

impl Ord for DivisorClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then(self.degree.cmp(&other.degree))
            .then_with(|| {
                for (x, y) in padded_pairs(&self.multiplicities, &other.multiplicities) {
                    match x.cmp(&y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Componentwise class addition (zero-padded).
///
/// Panics if the ambient dimensions differ or an entry overflows.
impl std::ops::Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(
            self.ambient_dim, rhs.ambient_dim,
            "cannot add classes on blowups of different projective spaces"
        );
        let degree = self
            .degree
            .checked_add(rhs.degree)
            .expect("degree overflow in class addition");
        let multiplicities = padded_pairs(&self.multiplicities, &rhs.multiplicities)
            .map(|(x, y)| x.checked_add(y).expect("overflow in class addition"))
            .collect();
        DivisorClass {
            degree,
            multiplicities,
            ambient_dim: self.ambient_dim,
        }
    }
}

/// Canonical textual form `"t;m1,m2,...,mr"`; r = 0 prints as `"t;"`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.degree)?;
        for (i, m) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Parses the canonical form onto a plane blowup (d = 2).
impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_dim(s, 2)
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn require_plane(c: &DivisorClass) -> Result<()> {
    if c.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension(c.ambient_dim));
    }
    Ok(())
}

/// Intersection number of two classes on a plane blowup:
/// a·b = t_a·t_b − Σ m_{a,i}·m_{b,i}, the diagonal form with E0² = 1 and
/// Ei² = −1. Shorter multiplicity vectors are zero-padded.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    require_plane(a)?;
    require_plane(b)?;
    let mut acc = (a.degree as i128) * (b.degree as i128);
    for (x, y) in padded_pairs(&a.multiplicities, &b.multiplicities) {
        acc -= (x as i128) * (y as i128);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("intersect"))
}

/// The canonical class K = −3E0 + E1 + ... + Er on X_r, stored as
/// (−3; −1, ..., −1).
pub fn canonical(ctx: BlowupContext) -> Result<DivisorClass> {
    if ctx.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension(ctx.ambient_dim));
    }
    Ok(DivisorClass::plane(-3, vec![-1; ctx.num_points]))
}

/// Arithmetic genus (C² + C·K)/2 + 1. The numerator is always even.
pub fn arithmetic_genus(c: &DivisorClass) -> Result<i64> {
    let k = canonical(BlowupContext::plane(c.num_points()))?;
    let cc = intersect(c, c)?;
    let ck = intersect(c, &k)?;
    let twice = (cc as i128) + (ck as i128);
    debug_assert_eq!(twice.rem_euclid(2), 0);
    i64::try_from(twice / 2 + 1).map_err(|_| Error::Overflow("arithmetic_genus"))
}

/// Riemann-Roch count χ(c) = (C² − C·K)/2 + 1: the dimension of the system
/// whenever h¹ = 0 (h² vanishes for every class with non-negative degree).
/// May be negative; callers clamp.
pub fn expected_dim(c: &DivisorClass) -> Result<i64> {
    let k = canonical(BlowupContext::plane(c.num_points()))?;
    let cc = intersect(c, c)?;
    let ck = intersect(c, &k)?;
    let twice = (cc as i128) - (ck as i128);
    debug_assert_eq!(twice.rem_euclid(2), 0);
    i64::try_from(twice / 2 + 1).map_err(|_| Error::Overflow("expected_dim"))
}
