use std::collections::BTreeMap;

use crate::ainfty::AInftyAlgebra;
use crate::catalog::{make_algebra, CatalogKey};
use crate::certificate::{BigradedReport, Check};
use crate::error::{Error, Result};
use crate::linalg::{GradedHomology, LinearMap, Vector};
use crate::scalar::Scalar;

/// Cohomology of the free DG algebra C (`d t₂ = t₁²`) per weight, with the cocycle-level
/// checks of its algebra structure.
#[derive(Debug, Clone)]
pub struct CCohomology<S> {
    pub bound: usize,
    pub algebra: AInftyAlgebra<S>,
    pub homology: GradedHomology<S>,
    pub report: BigradedReport,
}

/// The expected class of C in weight `w`: `u₂^a u₁^δ` with `w = 3a + δ`, degree `−a`.
pub fn expected_c_class(w: usize) -> Option<(i32, usize, usize)> {
    match w % 3 {
        2 => None,
        r => Some((-((w / 3) as i32), w / 3, r)),
    }
}

impl<S: Scalar> CCohomology<S> {
    /// The DG product `uv` (the stored μ₂ carries the sign `(−1)^{|u|}`).
    pub fn product(&self, u: &Vector<S>, v: &Vector<S>) -> Vector<S> {
        let s = self.algebra.space();
        let mut out = Vector::zero();
        for (i, a) in u.iter() {
            let sgn = S::sign_pow(s.degree(i).rem_euclid(2) == 1);
            for (j, b) in v.iter() {
                out.add_scaled(&self.algebra.mu(&[i, j]), &(sgn.clone() * a.clone() * b.clone()));
            }
        }
        out
    }

    pub fn d(&self, v: &Vector<S>) -> Vector<S> {
        self.algebra.mu_vectors(&[v]).negated()
    }

    pub fn word(&self, name: &str) -> Result<Vector<S>> {
        Ok(Vector::basis(self.algebra.space().require(name)?))
    }

    /// Coordinates of a cycle in the chosen representatives of its cell.
    pub fn class_of(&self, z: &Vector<S>) -> Result<Vec<S>> {
        self.homology.class_of(z)
    }

    /// The chosen representatives of `H^{deg}` at weight `w`, as elements of C.
    pub fn representatives(&self, deg: i32, w: i32) -> Vec<Vector<S>> {
        self.homology.representatives(deg, w)
    }

    /// `u₁ = t₁`, `u₂ = [t₁, t₂] = t₁t₂ − t₂t₁`.
    pub fn generators(&self) -> Result<(Vector<S>, Vector<S>)> {
        let t1 = self.word("t1")?;
        let mut u2 = self.word("t1t2")?;
        u2.add_scaled(&self.word("t2t1")?, &-S::one());
        Ok((t1, u2))
    }

    /// `u₂^a u₁^δ` as a cocycle; needs `3a + δ ≤ bound`.
    pub fn monomial(&self, a: usize, delta: usize) -> Result<Vector<S>> {
        if 3 * a + delta > self.bound {
            return Err(Error::Truncation(format!("u₂^{a}u₁^{delta} exceeds weight bound {}", self.bound)));
        }
        let (u1, u2) = self.generators()?;
        let mut z = self.word("1")?;
        for _ in 0..a {
            z = self.product(&z, &u2);
        }
        if delta == 1 {
            z = self.product(&z, &u1);
        }
        Ok(z)
    }
}

fn is_zero_class<S: Scalar>(c: &[S]) -> bool {
    c.iter().all(|x| x.is_zero())
}

pub fn cohomology_of_c<S: Scalar>(bound: usize) -> Result<CCohomology<S>> {
    if bound < 4 {
        return Err(Error::Invalid("the C checks need a weight bound ≥ 4".into()));
    }
    let algebra: AInftyAlgebra<S> = make_algebra(&CatalogKey::FreeC(bound))?;
    let space = algebra.space().clone();
    let cols = (0..space.dim()).map(|i| algebra.mu(&[i]).negated()).collect();
    let d = LinearMap::new(space.clone(), space.clone(), cols, (1, 0))?;
    let homology = GradedHomology::new(space, &d)?;
    let mut c = CCohomology { bound, algebra, homology, report: BigradedReport::default() };
    let b = format!("weight ≤ {bound}");
    let mut checks = Vec::new();

    let mut mismatches = Vec::new();
    for w in 0..=bound as i32 {
        let expected: BTreeMap<i32, usize> = match expected_c_class(w as usize) {
            Some((deg, _, _)) => BTreeMap::from([(deg, 1)]),
            None => BTreeMap::new(),
        };
        let got: BTreeMap<i32, usize> = c
            .homology
            .dims()
            .iter()
            .filter(|(&(_, hw), &n)| hw == w && n > 0)
            .map(|(&(deg, _), &n)| (deg, n))
            .collect();
        if got != expected {
            mismatches.push(format!("weight {w}: {got:?}"));
        }
    }
    checks.push(Check::new(
        "C.dims",
        "dim H(C) = 1 in weights ≡ 0, 1 mod 3 (degree −⌊w/3⌋) and 0 in weights ≡ 2 mod 3",
        &b,
        mismatches.is_empty(),
        if mismatches.is_empty() { "as expected".into() } else { mismatches.join("; ") },
    ));

    let (u1, u2) = c.generators()?;
    let t1t1 = c.product(&u1, &u1);
    let dt2 = c.d(&c.word("t2")?);
    checks.push(Check::new("C.u1_squared", "t₁² = d t₂, so u₁² = 0", &b, t1t1 == dt2, "t₁² = d t₂"));

    let mut anti = c.product(&u1, &u2);
    anti.add(&c.product(&u2, &u1));
    let t2t2 = c.d(&c.word("t2t2")?);
    let coords = c.class_of(&anti)?;
    checks.push(Check::new(
        "C.anticommute",
        "u₁u₂ + u₂u₁ = d(t₂t₂) is exact",
        &b,
        anti == t2t2 && is_zero_class(&coords),
        "u₁u₂ + u₂u₁ = d(t₂²)",
    ));

    let mut dead = Vec::new();
    for w in 0..=bound {
        if let Some((_, a, delta)) = expected_c_class(w) {
            let z = c.monomial(a, delta)?;
            match c.class_of(&z) {
                Ok(coords) if !is_zero_class(&coords) => {}
                Ok(_) => dead.push(format!("u₂^{a}u₁^{delta} is exact")),
                Err(e) => dead.push(format!("u₂^{a}u₁^{delta}: {e}")),
            }
        }
    }
    checks.push(Check::new(
        "C.monomials",
        "every u₂^a u₁^δ of weight ≤ bound is a nonzero class",
        &b,
        dead.is_empty(),
        if dead.is_empty() { "all nonzero".into() } else { dead.join("; ") },
    ));

    c.report = BigradedReport::from_map(c.homology.dims(), checks);
    Ok(c)
}
