//! The equivalence transforms between the four query surfaces: clamping
//! negative multiplicities away, sorting and truncating prescriptions,
//! appending generic simple points, and the scans that turn an alpha
//! oracle into a dimension oracle and back.
//!
//! The oracles are passed in as closures so the same machinery runs on
//! both the interpolation oracle and the conjectural engine.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::textform;

/// A fat-point prescription (m1, ..., mr) in projective d-space.
///
/// Entries may be arbitrary integers before normalization; a normalized
/// sequence is strictly positive and non-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySequence {
    entries: Vec<i64>,
    ambient_dim: usize,
}

impl MultiplicitySequence {
    pub fn new(entries: Vec<i64>, ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::InvalidAmbientDimension(ambient_dim));
        }
        Ok(Self {
            entries,
            ambient_dim,
        })
    }

    /// A prescription in the plane (d = 2).
    pub fn plane(entries: Vec<i64>) -> Self {
        Self {
            entries,
            ambient_dim: 2,
        }
    }

    /// Parses the comma-separated grammar, with `^` repetition on input
    /// only: `2^5` means `2,2,2,2,2`. The empty string is the empty
    /// prescription.
    pub fn parse(s: &str, ambient_dim: usize) -> Result<Self> {
        Self::new(
            textform::parse_int_list(s, "multiplicity sequence")?,
            ambient_dim,
        )
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the positive entries; an upper bound for alpha, realized by a
    /// product of m_i hyperplanes through each point.
    pub fn positive_sum(&self) -> i64 {
        self.entries.iter().filter(|&&m| m > 0).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.entries.iter().all(|&m| m > 0)
            && self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Clamps negatives to zero, sorts non-increasing and drops trailing
    /// zeros.
    pub fn normalize(&self) -> Self {
        let mut entries: Vec<i64> = self.entries.iter().filter(|&&m| m > 0).copied().collect();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            entries,
            ambient_dim: self.ambient_dim,
        }
    }

    /// The prescription with `extra` additional simple (multiplicity 1)
    /// points appended.
    pub fn append_simple(&self, extra: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat(1).take(extra));
        Self {
            entries,
            ambient_dim: self.ambient_dim,
        }
    }

    /// The class (t; m1, ..., mr) of this prescription in degree t.
    pub fn class(&self, degree: i64) -> DivisorClass {
        DivisorClass::new(degree, self.entries.clone(), self.ambient_dim)
            .expect("ambient dimension already validated")
    }
}

/// Expanded comma-separated form; the empty prescription prints as `""`.
impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// The least degree with a nonzero form through the prescription.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlphaValue(pub u64);

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Replaces every negative multiplicity by zero; the degree is unchanged.
/// Harmless to the system: a negative multiplicity only moves a fixed
/// multiple of the exceptional divisor into the base locus.
pub fn clamp(c: &DivisorClass) -> DivisorClass {
    DivisorClass::new(
        c.degree(),
        c.multiplicities().iter().map(|&m| m.max(0)).collect(),
        c.ambient_dim(),
    )
    .expect("ambient dimension preserved")
}

/// See [`MultiplicitySequence::normalize`].
pub fn normalize(m: &MultiplicitySequence) -> MultiplicitySequence {
    m.normalize()
}

/// See [`MultiplicitySequence::append_simple`].
pub fn append_simple(m: &MultiplicitySequence, extra: usize) -> MultiplicitySequence {
    m.append_simple(extra)
}

/// Recovers dim I(m, d)_t from an alpha oracle: the least j such that
/// alpha of m with j appended simple points exceeds t. Each simple point
/// imposed on a nonempty system drops its dimension by exactly one, so
/// that j is the dimension.
///
/// The scan is linear in j; j never exceeds the t-degree form count
/// binom(t+d, d), and running past it is reported as an oracle
/// inconsistency.
pub fn dim_from_alpha<F>(
    m: &MultiplicitySequence,
    t: i64,
    mut alpha_oracle: F,
) -> Result<u64>
where
    F: FnMut(&MultiplicitySequence) -> Result<AlphaValue>,
{
    if t < 0 {
        return Ok(0);
    }
    let cap = textform::binomial((t as u64) + m.ambient_dim() as u64, m.ambient_dim() as u64)?;
    for j in 0..=cap {
        let alpha = alpha_oracle(&m.append_simple(j as usize))?;
        if alpha.0 > t as u64 {
            return Ok(j);
        }
    }
    Err(Error::InconsistentOracle(format!(
        "alpha never exceeded degree {t} after appending {cap} simple points to ({m})"
    )))
}

/// Recovers alpha from a dimension oracle by scanning t upward. A product
/// of m_i hyperplanes through each point lies in degree sum(m), so the scan
/// is bounded; running past the bound is an oracle inconsistency.
pub fn alpha_from_dim<F>(m: &MultiplicitySequence, mut dim_oracle: F) -> Result<AlphaValue>
where
    F: FnMut(&MultiplicitySequence, i64) -> Result<u64>,
{
    let bound = m.positive_sum();
    for t in 0..=bound {
        if dim_oracle(m, t)? > 0 {
            return Ok(AlphaValue(t as u64));
        }
    }
    Err(Error::InconsistentOracle(format!(
        "no nonzero form up to the product-of-hyperplanes degree {bound} for ({m})"
    )))
}

/// Section count h0 of an arbitrary class through a dimension oracle:
/// negative degree has none, and otherwise the class is clamped, sorted and
/// truncated onto a plain fat-point prescription first.
pub fn h0_of_class<F>(c: &DivisorClass, dim_oracle: F) -> Result<u64>
where
    F: FnMut(&MultiplicitySequence, i64) -> Result<u64>,
{
    if c.degree() < 0 {
        return Ok(0);
    }
    let mut dim_oracle = dim_oracle;
    dim_oracle(&c.multiplicity_sequence().normalize(), c.degree())
}

/// Effectivity of a class through an alpha oracle: t must be non-negative
/// and at least alpha of the normalized prescription.
pub fn effective_test<F>(c: &DivisorClass, mut alpha_oracle: F) -> Result<bool>
where
    F: FnMut(&MultiplicitySequence) -> Result<AlphaValue>,
{
    if c.degree() < 0 {
        return Ok(false);
    }
    let alpha = alpha_oracle(&c.multiplicity_sequence().normalize())?;
    Ok(c.degree() as u64 >= alpha.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(entries: &[i64]) -> MultiplicitySequence {
        MultiplicitySequence::plane(entries.to_vec())
    }

    #[test]
    fn clamp_examples() {
        let f = |t, m: &[i64]| DivisorClass::plane(t, m.to_vec());
        assert_eq!(clamp(&f(0, &[0, 0, -2])), f(0, &[0, 0, 0]));
        assert_eq!(clamp(&f(4, &[2, -1, 3])), f(4, &[2, 0, 3]));
        assert_eq!(clamp(&f(5, &[1, 1])), f(5, &[1, 1]));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(seq(&[1, 3, 0, 2, -4]).normalize(), seq(&[3, 2, 1]));
        assert_eq!(seq(&[]).normalize(), seq(&[]));
        assert_eq!(seq(&[2, 2, 2]).normalize(), seq(&[2, 2, 2]));
    }

    #[test]
    fn append_simple_examples() {
        assert_eq!(seq(&[2, 2]).append_simple(3), seq(&[2, 2, 1, 1, 1]));
        assert_eq!(seq(&[2, 2]).append_simple(0), seq(&[2, 2]));
        assert_eq!(seq(&[]).append_simple(2), seq(&[1, 1]));
    }

    #[test]
    fn idempotence() {
        for entries in [&[1, 3, 0, 2, -4][..], &[][..], &[5, 5, 2][..]] {
            let m = seq(entries);
            assert_eq!(m.normalize().normalize(), m.normalize());
            let c = DivisorClass::plane(3, entries.to_vec());
            assert_eq!(clamp(&clamp(&c)), clamp(&c));
        }
    }

    // A fake alpha oracle for the scan logic: alpha of a prescription is
    // the least t with binom(t+2,2) > sum(m), which is the alpha of a
    // "virtually independent" system of simple conditions.
    fn counting_alpha(m: &MultiplicitySequence) -> Result<AlphaValue> {
        let conditions: i64 = m
            .entries()
            .iter()
            .map(|&mi| mi * (mi + 1) / 2)
            .sum();
        let mut t = 0i64;
        while (t + 2) * (t + 1) / 2 <= conditions {
            t += 1;
        }
        Ok(AlphaValue(t as u64))
    }

    #[test]
    fn dim_from_alpha_with_counting_oracle() {
        // one simple point, t = 1: lines through a point form a pencil plus
        // scale, dimension 2 as a space of forms
        assert_eq!(dim_from_alpha(&seq(&[1]), 1, counting_alpha).unwrap(), 2);
        // empty prescription: full space of forms
        assert_eq!(dim_from_alpha(&seq(&[]), 2, counting_alpha).unwrap(), 6);
        // alpha already above t
        assert_eq!(dim_from_alpha(&seq(&[3, 3]), 2, counting_alpha).unwrap(), 0);
    }

    #[test]
    fn dim_from_alpha_detects_lying_oracle() {
        let err = dim_from_alpha(&seq(&[1]), 1, |_| Ok(AlphaValue(0))).unwrap_err();
        assert!(matches!(err, Error::InconsistentOracle(_)));
    }

    #[test]
    fn alpha_from_dim_scan_and_bound() {
        let dim = |m: &MultiplicitySequence, t: i64| -> Result<u64> {
            let conditions: i64 = m.entries().iter().map(|&mi| mi * (mi + 1) / 2).sum();
            Ok(((t + 2) * (t + 1) / 2 - conditions).max(0) as u64)
        };
        assert_eq!(alpha_from_dim(&seq(&[1, 1]), dim).unwrap(), AlphaValue(1));
        assert_eq!(alpha_from_dim(&seq(&[]), dim).unwrap(), AlphaValue(0));
        let err = alpha_from_dim(&seq(&[2, 2]), |_, _| Ok(0)).unwrap_err();
        assert!(matches!(err, Error::InconsistentOracle(_)));
    }

    #[test]
    fn h0_of_negative_degree_is_zero() {
        let c = DivisorClass::plane(-1, vec![0, 0]);
        let called = std::cell::Cell::new(false);
        let dim = |_: &MultiplicitySequence, _: i64| -> Result<u64> {
            called.set(true);
            Ok(99)
        };
        assert_eq!(h0_of_class(&c, dim).unwrap(), 0);
        assert!(!called.get());
    }

    #[test]
    fn effective_test_uses_normalized_alpha() {
        let alpha_two = |m: &MultiplicitySequence| -> Result<AlphaValue> {
            assert!(m.is_normalized() || m.is_empty());
            Ok(AlphaValue(2))
        };
        assert!(effective_test(&DivisorClass::plane(2, vec![2, 2]), alpha_two).unwrap());
        assert!(!effective_test(&DivisorClass::plane(1, vec![1, 1, 1]), alpha_two).unwrap());
        assert!(!effective_test(&DivisorClass::plane(-1, vec![]), alpha_two).unwrap());
    }

    #[test]
    fn display_is_expanded() {
        assert_eq!(seq(&[2, 2, 1]).to_string(), "2,2,1");
        assert_eq!(seq(&[]).to_string(), "");
        assert_eq!(
            MultiplicitySequence::parse("2^3,1", 2).unwrap(),
            seq(&[2, 2, 2, 1])
        );
    }
}
