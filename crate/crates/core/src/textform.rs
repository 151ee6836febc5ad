//! Shared text grammar for integer lists and the small exact binomial used
//! by the scan bounds.

use crate::error::{Error, Result};

/// Parses a comma-separated integer list. `^` repeats an entry on input
/// only: `2^5` expands to `2,2,2,2,2`. The empty string is the empty list.
pub(crate) fn parse_int_list(s: &str, what: &'static str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        if let Some((base, count)) = token.split_once('^') {
            let value: i64 = base.trim().parse().map_err(|_| Error::Parse {
                what,
                detail: format!("bad entry {token:?}"),
            })?;
            let reps: usize = count.trim().parse().map_err(|_| Error::Parse {
                what,
                detail: format!("bad repetition count in {token:?}"),
            })?;
            out.extend(std::iter::repeat(value).take(reps));
        } else {
            out.push(token.parse().map_err(|_| Error::Parse {
                what,
                detail: format!("bad entry {token:?}"),
            })?);
        }
    }
    Ok(out)
}

/// Exact binomial coefficient, erroring instead of wrapping.
pub(crate) fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or(Error::Overflow("binomial"))?;
        acc /= i as u128; // exact: acc is binomial(n-k+i, i) at this point
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}
