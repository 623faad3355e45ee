use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ainfty::{AInftyAlgebra, AInftyModule, Cochain, HomComplex};
use crate::catalog::{make_algebra, CatalogKey};
use crate::certificate::Check;
use crate::error::{Error, Result};
use crate::ext::CCohomology;
use crate::ext::Y_WEIGHT;
use crate::linalg::{GradedHomology, PreimageSolver, Vector};
use crate::scalar::Scalar;

/// The truncated `End^∞_{k[y]/y³}(k)`: cochains `[1|T|1]` on words `T` in `y`, `y²` with total
/// weight ≤ W and length ≤ L, as a DG algebra (`μ₁ = −d`, `μ₂ = ±composition`).
#[derive(Debug, Clone)]
pub struct EndOfK<S> {
    pub y_algebra: Arc<AInftyAlgebra<S>>,
    pub hom: HomComplex<S>,
    pub algebra: Arc<AInftyAlgebra<S>>,
    pub homology: GradedHomology<S>,
    preimages: BTreeMap<(i32, i32), PreimageSolver<S>>,
}

pub fn end_complex_of_k<S: Scalar>(weight_bound: usize, length_bound: usize) -> Result<EndOfK<S>> {
    if weight_bound == 0 || length_bound == 0 {
        return Err(Error::Invalid("W and L must be ≥ 1".into()));
    }
    let y: AInftyAlgebra<S> = make_algebra(&CatalogKey::YCube)?;
    let y = Arc::new(y.reweighted(Y_WEIGHT).with_name("y_cube"));
    let k = Arc::new(AInftyModule::augmentation(y.clone())?);
    let hom = HomComplex::new(k.clone(), k, weight_bound, length_bound)?;
    let algebra = Arc::new(hom.to_dg_algebra(format!("End(k)[W={weight_bound},L={length_bound}]"))?);
    let space = hom.space().clone();
    let homology = GradedHomology::new(space.clone(), hom.differential())?;
    let mut cells: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for j in 0..space.dim() {
        cells.entry((space.degree(j), space.weight(j))).or_default().push(j);
    }
    let preimages = cells
        .into_iter()
        .map(|(cell, cols)| {
            (cell, PreimageSolver::from_columns(cols.into_iter().map(|j| (j, hom.differential().column(j)))))
        })
        .collect();
    Ok(EndOfK { y_algebra: y, hom, algebra, homology, preimages })
}

impl<S: Scalar> EndOfK<S> {
    pub fn bounds(&self) -> (usize, usize) {
        self.hom.bounds()
    }

    /// Weights on which the truncation has the cohomology of the untruncated complex: every
    /// word of that weight (and one more letter) fits.
    pub fn faithful_weight(&self) -> usize {
        let (w, l) = self.bounds();
        w.min(l.saturating_sub(1))
    }

    fn cochain(&self, tail: &[&str]) -> Result<usize> {
        let ys = self.y_algebra.space();
        let tail = tail.iter().map(|n| ys.require(n)).collect::<Result<Vec<_>>>()?;
        self.hom
            .index_of(&Cochain { input: 0, tail, output: 0 })
            .ok_or_else(|| Error::Truncation("cochain outside the truncation".into()))
    }

    /// `ε = [1|y|1]`, the degree-0 weight-1 cocycle dual to `(z; y)`.
    pub fn epsilon(&self) -> Result<Vector<S>> {
        Ok(Vector::basis(self.cochain(&["y"])?))
    }

    pub fn identity(&self) -> Result<Vector<S>> {
        self.hom.identity()
    }

    pub fn d(&self, v: &Vector<S>) -> Vector<S> {
        self.hom.d(v)
    }

    /// The DG product (composition, the stored `μ₂` carries `(−1)^{|φ|}`).
    pub fn product(&self, phi: &Vector<S>, psi: &Vector<S>) -> Vector<S> {
        self.hom.compose(phi, psi)
    }

    /// `x` with `d x = v`, or the part of `v` outside the image.
    pub fn preimage(&self, v: &Vector<S>) -> Result<std::result::Result<Vector<S>, Vector<S>>> {
        let Some(cell) = self.homology.cell_of(v)? else { return Ok(Ok(Vector::zero())) };
        let cell = (cell.0 - 1, cell.1);
        Ok(match self.preimages.get(&cell) {
            Some(p) => p.solve(v),
            None => Err(v.clone()),
        })
    }

    /// The cohomology of the truncation matches that of C, cell by cell, on faithful weights.
    pub fn compare_with_c(&self, c: &CCohomology<S>) -> Check {
        let top = self.faithful_weight().min(c.bound) as i32;
        let mut diffs = Vec::new();
        for w in 0..=top {
            let e: BTreeMap<i32, usize> = self
                .homology
                .dims()
                .iter()
                .filter(|(&(_, hw), &n)| hw == w && n > 0)
                .map(|(&(d, _), &n)| (d, n))
                .collect();
            let h: BTreeMap<i32, usize> = c
                .homology
                .dims()
                .iter()
                .filter(|(&(_, hw), &n)| hw == w && n > 0)
                .map(|(&(d, _), &n)| (d, n))
                .collect();
            if e != h {
                diffs.push(format!("weight {w}: End {e:?} vs C {h:?}"));
            }
        }
        Check::new(
            "end_vs_c",
            "H(End^∞(k)) and H(C) agree per (degree, weight)",
            format!("weight ≤ {top}"),
            diffs.is_empty(),
            if diffs.is_empty() { "tables agree".into() } else { diffs.join("; ") },
        )
    }
}
