//! Quadratic Cremona action on divisor classes of plane blowups, reduction
//! to standard form with an auditable trace, the standard basis H'_0, ...,
//! H'_r, and bounded enumeration of (−1)-classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

/// One step of a standardization trace.
///
/// `ijk` and `index` are 1-based point indices; `perm` is the 0-based
/// permutation with `new[i] = old[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum CremonaStep {
    Cremona { ijk: [usize; 3], k0: i64 },
    Clamp { index: usize, old: i64 },
    Sort { perm: Vec<usize> },
}

/// Ordered log of the steps taking a class to standard form. Replaying the
/// steps from `initial` reproduces `final`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaTrace {
    pub initial: DivisorClass,
    #[serde(rename = "final")]
    pub final_class: DivisorClass,
    pub steps: Vec<CremonaStep>,
}

impl CremonaTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Reapplies the recorded steps to the initial class, verifying each
    /// recorded value along the way, and returns the replayed end class.
    pub fn replay(&self) -> Result<DivisorClass> {
        let mut current = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            current = apply_step(&current, step).map_err(|e| match e {
                Error::ReplayMismatch { detail, .. } => Error::ReplayMismatch { step: i, detail },
                other => other,
            })?;
        }
        Ok(current)
    }
}

fn apply_step(c: &DivisorClass, step: &CremonaStep) -> Result<DivisorClass> {
    match step {
        CremonaStep::Cremona { ijk, k0 } => {
            let next = cremona_transform(c, ijk[0], ijk[1], ijk[2])?;
            let seen = next.degree() - c.degree();
            if seen != *k0 {
                return Err(Error::ReplayMismatch {
                    step: 0,
                    detail: format!("recorded k0 = {k0}, class gives {seen}"),
                });
            }
            Ok(next)
        }
        CremonaStep::Clamp { index, old } => {
            let mut m = c.multiplicities().to_vec();
            let slot = index
                .checked_sub(1)
                .and_then(|i| m.get_mut(i))
                .ok_or(Error::ReplayMismatch {
                    step: 0,
                    detail: format!("clamp index {index} out of range"),
                })?;
            if *slot != *old {
                return Err(Error::ReplayMismatch {
                    step: 0,
                    detail: format!("clamp expected old value {old}, found {slot}"),
                });
            }
            *slot = 0;
            DivisorClass::new(c.degree(), m, c.ambient_dim())
        }
        CremonaStep::Sort { perm } => {
            let m = c.multiplicities();
            if perm.len() != m.len() {
                return Err(Error::ReplayMismatch {
                    step: 0,
                    detail: format!(
                        "permutation of length {} against {} multiplicities",
                        perm.len(),
                        m.len()
                    ),
                });
            }
            let mut seen = vec![false; perm.len()];
            for &src in perm {
                if src >= perm.len() || seen[src] {
                    return Err(Error::ReplayMismatch {
                        step: 0,
                        detail: "not a permutation".into(),
                    });
                }
                seen[src] = true;
            }
            let sorted = perm.iter().map(|&src| m[src]).collect();
            DivisorClass::new(c.degree(), sorted, c.ambient_dim())
        }
    }
}

/// The quadratic Cremona transform centered at points i, j, k (1-based,
/// distinct): with k0 = t − m_i − m_j − m_k, the degree and the three
/// centered multiplicities each gain k0. Involutive. Indices beyond the
/// current length address zero-padded entries.
pub fn cremona_transform(
    c: &DivisorClass,
    i: usize,
    j: usize,
    k: usize,
) -> Result<DivisorClass> {
    if c.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension(c.ambient_dim()));
    }
    if i == 0 || j == 0 || k == 0 || i == j || i == k || j == k {
        return Err(Error::BadCremonaIndices(i, j, k));
    }
    let padded = c.padded(i.max(j).max(k));
    let m = padded.multiplicities();
    let k0 = c
        .degree()
        .checked_sub(m[i - 1])
        .and_then(|v| v.checked_sub(m[j - 1]))
        .and_then(|v| v.checked_sub(m[k - 1]))
        .ok_or(Error::Overflow("cremona_transform"))?;
    let degree = c
        .degree()
        .checked_add(k0)
        .ok_or(Error::Overflow("cremona_transform"))?;
    let mut m = m.to_vec();
    for idx in [i, j, k] {
        m[idx - 1] = m[idx - 1]
            .checked_add(k0)
            .ok_or(Error::Overflow("cremona_transform"))?;
    }
    DivisorClass::new(degree, m, 2)
}

fn sort_permutation_desc(m: &[i64]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m.len()).collect();
    perm.sort_by_key(|&i| std::cmp::Reverse(m[i]));
    perm
}

/// Reduces a class to standard form, logging every step.
///
/// Loop: sort the multiplicities non-increasing (recorded when the order
/// actually changes); stop if the degree went negative (empty system);
/// with k0 = t − m1 − m2 − m3, stop if k0 >= 0 and no multiplicity is
/// negative (standard form); clamp any negatives created by an earlier
/// step; otherwise apply the Cremona transform on the three largest
/// multiplicities. Every Cremona step taken has k0 < 0, so the degree
/// strictly decreases and the loop terminates.
///
/// The returned class has trailing zeros trimmed; each step preserves the
/// section count of the system (generic points admit the quadratic
/// transforms, and a clamped exceptional multiple was in the base locus).
pub fn standardize(c: &DivisorClass) -> Result<(DivisorClass, CremonaTrace)> {
    if c.ambient_dim() != 2 {
        return Err(Error::UnsupportedDimension(c.ambient_dim()));
    }
    let mut current = c.clone();
    let mut steps = Vec::new();
    loop {
        let perm = sort_permutation_desc(current.multiplicities());
        if perm.iter().enumerate().any(|(i, &src)| i != src) {
            current = apply_step(&current, &CremonaStep::Sort { perm: perm.clone() })?;
            steps.push(CremonaStep::Sort { perm });
        }
        if current.degree() < 0 {
            break;
        }
        let m = current.multiplicities();
        let top: i64 = m.iter().take(3).sum();
        let k0 = current
            .degree()
            .checked_sub(top)
            .ok_or(Error::Overflow("standardize"))?;
        let has_negative = m.last().is_some_and(|&last| last < 0);
        if k0 >= 0 && !has_negative {
            break;
        }
        if has_negative {
            for (idx, &value) in current.multiplicities().to_vec().iter().enumerate() {
                if value < 0 {
                    let step = CremonaStep::Clamp {
                        index: idx + 1,
                        old: value,
                    };
                    current = apply_step(&current, &step)?;
                    steps.push(step);
                }
            }
            continue;
        }
        let step = CremonaStep::Cremona {
            ijk: [1, 2, 3],
            k0,
        };
        current = apply_step(&current, &step)?;
        steps.push(step);
    }
    let final_class = current.trimmed();
    let trace = CremonaTrace {
        initial: c.clone(),
        final_class: final_class.clone(),
        steps,
    };
    Ok((final_class, trace))
}

/// The standard basis H'_0, ..., H'_r: H'_0 = E0, H'_1 = E0 − E1,
/// H'_2 = 2E0 − E1 − E2, and H'_i = 3E0 − E1 − ... − E_i for i > 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    classes: Vec<DivisorClass>,
}

impl StandardBasis {
    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn standard_basis(r: usize) -> StandardBasis {
    let classes = (0..=r)
        .map(|i| {
            let degree = match i {
                0 => 1,
                1 => 1,
                2 => 2,
                _ => 3,
            };
            let mut m = vec![0; r];
            for slot in m.iter_mut().take(i) {
                *slot = 1;
            }
            DivisorClass::plane(degree, m)
        })
        .collect();
    StandardBasis { classes }
}

/// All classes with C² = −1 and C·K = −1 on X_r for 1 <= r <= 8: the
/// exceptional classes E_i together with every non-negative solution of
/// sum(m) = 3t − 1, sum(m²) = t² + 1 for 1 <= t <= 6 (degree 6 is the
/// largest that occurs through r = 8). Sorted lexicographically.
pub fn enumerate_neg_one_classes(r: usize) -> Result<Vec<DivisorClass>> {
    if r == 0 || r > 8 {
        return Err(Error::UnsupportedRange(r));
    }
    let mut found = Vec::new();
    for i in 1..=r {
        found.push(DivisorClass::exceptional(r, i)?);
    }
    for t in 1..=6i64 {
        let target_sum = 3 * t - 1;
        let target_sq = t * t + 1;
        let mut entries = vec![0i64; r];
        search_multiplicities(t, target_sum, target_sq, 0, &mut entries, &mut found);
    }
    found.sort();
    found.dedup();
    Ok(found)
}

fn search_multiplicities(
    t: i64,
    rem_sum: i64,
    rem_sq: i64,
    pos: usize,
    entries: &mut Vec<i64>,
    out: &mut Vec<DivisorClass>,
) {
    let slots = (entries.len() - pos) as i64;
    if rem_sum < 0 || rem_sq < 0 || rem_sum > slots * t || rem_sq > slots * t * t {
        return;
    }
    if pos == entries.len() {
        if rem_sum == 0 && rem_sq == 0 {
            out.push(DivisorClass::plane(t, entries.clone()));
        }
        return;
    }
    for v in 0..=t.min(rem_sum) {
        entries[pos] = v;
        search_multiplicities(t, rem_sum - v, rem_sq - v * v, pos + 1, entries, out);
    }
    entries[pos] = 0;
}
