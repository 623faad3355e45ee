use std::collections::BTreeMap;

use super::complex::Hochschild;
use crate::certificate::Check;
use crate::error::Result;
use crate::linalg::LinearMap;
use crate::scalar::Scalar;

/// `dim HH` per `(degree, weight)` from the weight slices `0..=max_weight`, zero cells dropped.
pub fn hochschild_dims<S: Scalar>(h: &Hochschild<S>, max_weight: i32) -> Result<BTreeMap<(i32, i32), usize>> {
    let mut out = BTreeMap::new();
    for w in 0..=max_weight {
        for (&cell, &n) in &h.slice(w)?.homology().dims {
            if n > 0 {
                out.insert(cell, n);
            }
        }
    }
    Ok(out)
}

fn first_nonzero_column<S: Scalar>(m: &LinearMap<S>) -> Option<usize> {
    m.columns().iter().position(|c| !c.is_zero())
}

/// `b² = 0`, `B² = 0` and `bB + Bb = 0` as matrices on every slice of weight ≤ `max_weight`.
pub fn mixed_complex_checks<S: Scalar>(h: &Hochschild<S>, max_weight: i32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        let slice = h.slice(w)?;
        let b = slice.b();
        let bb = h.connes_b_map(&slice)?;
        let mut anti = b.compose(&bb)?;
        let other = bb.compose(b)?;
        let cols: Vec<_> = anti
            .columns()
            .iter()
            .zip(other.columns())
            .map(|(x, y)| {
                let mut s = x.clone();
                s.add(y);
                s
            })
            .collect();
        anti = LinearMap::new(anti.source().clone(), anti.target().clone(), cols, anti.bidegree())?;
        let mut bad = Vec::new();
        for (name, m) in [("b²", b.compose(b)?), ("B²", bb.compose(&bb)?), ("bB + Bb", anti)] {
            if let Some(j) = first_nonzero_column(&m) {
                bad.push(format!("{name} ≠ 0 on {}", slice.space().name(j)));
            }
        }
        out.push(Check::new(
            format!("mixed.w{w}"),
            "b² = 0, B² = 0, bB + Bb = 0",
            format!("{}, weight {w}, {} chains", h.algebra().name(), slice.space().dim()),
            bad.is_empty(),
            if bad.is_empty() { "exact".to_string() } else { bad.join("; ") },
        ));
    }
    Ok(out)
}
