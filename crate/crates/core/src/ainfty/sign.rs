//! Koszul sign bookkeeping.
//!
//! All signs are handled as parities: `true` means the factor is `-1`.

use crate::error::{Error, Result};

/// `l_p^q(a)` for a collection `a_base, …, a_n` with `degrees[t]` the degree of
/// `a_{base+t}`, where `base = n + 1 - degrees.len()`.
///
/// For `p ≤ q` this is the parity of `|a_p| + … + |a_q| + q - p + 1`; the empty
/// range `q = p - 1` gives zero. For `p > q + 1` the cyclic variant
/// `|a_p| + … + |a_n| + |a_0| + … + |a_q| + n - p + q` is used, which needs
/// `base = 0`.
pub fn sign_l(p: usize, q: usize, degrees: &[i32], n: usize) -> Result<bool> {
    if degrees.is_empty() || degrees.len() > n + 1 {
        return Err(Error::Invalid(format!("{} degrees for upper index {n}", degrees.len())));
    }
    let base = n + 1 - degrees.len();
    let in_range = |i: usize| i >= base && i <= n;
    if p <= q {
        if !in_range(p) || !in_range(q) {
            return Err(Error::Invalid(format!("l_{p}^{q} outside indices {base}..={n}")));
        }
        return Ok(l_span(&degrees[p - base..=q - base]));
    }
    if p == q + 1 {
        return Ok(false);
    }
    if base != 0 || p > n {
        return Err(Error::Invalid(format!("cyclic l_{p}^{q} needs a collection a_0..a_{n}")));
    }
    let tail = l_span(&degrees[p..]) ^ ((n - p + 1) % 2 == 1);
    let head = l_span(&degrees[..=q]) ^ ((q + 1) % 2 == 1);
    Ok(tail ^ head ^ ((n + q - p) % 2 == 1))
}

/// Parity of `Σ (|a_t| + 1)` over the slice.
#[inline]
pub fn l_span(degrees: &[i32]) -> bool {
    let mut acc = 0i64;
    for &d in degrees {
        acc += d as i64 + 1;
    }
    acc.rem_euclid(2) == 1
}

/// Parity of `Σ_{i<j} (|a_i| + 1)(|a_j| + 1)`, the sign of reversing a tuple of
/// shifted elements.
pub fn reversal_parity(degrees: &[i32]) -> bool {
    let odd = degrees.iter().filter(|&&d| d.rem_euclid(2) == 0).count();
    (odd * odd.saturating_sub(1) / 2) % 2 == 1
}

#[inline]
pub fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}
