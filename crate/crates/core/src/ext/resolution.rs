use std::collections::BTreeMap;
use std::sync::Arc;

use crate::certificate::{BigradedReport, Check};
use crate::error::{Error, Result};
use crate::linalg::{ComplexSlice, LinearMap, Vector};
use crate::scalar::Scalar;
use crate::space::{BasisElement, BigradedSpace};

/// Weight of `y` in k[y]/y³ for everything in this module. Negative, so the dual classes
/// `vₙ` get the positive weights of the matching classes in C.
pub const Y_WEIGHT: i32 = -1;

/// The semifree resolution `P → k` over k[y]/y³ cut at `e_N`, as a complex of vector spaces
/// with basis `eₙ·yʲ` (index `3n + j`).
///
/// `|eₙ| = ⌊n/2⌋`, `d(e_{2k+1}) = e_{2k}·y`, `d(e_{2k+2}) = e_{2k+1}·y²`. The span of
/// `e₀ … e_N` is a subcomplex because `d` lowers the index.
#[derive(Debug, Clone)]
pub struct ResolutionP<S> {
    truncation: usize,
    space: Arc<BigradedSpace>,
    d: LinearMap<S>,
}

pub fn generator_degree(n: usize) -> i32 {
    (n / 2) as i32
}

/// `w(e_{2k}) = 3k·w(y)`, `w(e_{2k+1}) = (3k+1)·w(y)`.
pub fn generator_weight(n: usize) -> i32 {
    let k = (n / 2) as i32;
    Y_WEIGHT * (3 * k + (n % 2) as i32)
}

fn idx(n: usize, j: usize) -> usize {
    3 * n + j
}

impl<S: Scalar> ResolutionP<S> {
    pub fn build(truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::Invalid("the resolution needs N ≥ 2".into()));
        }
        let mut basis = Vec::with_capacity(3 * (truncation + 1));
        for n in 0..=truncation {
            for j in 0..3 {
                let name = match j {
                    0 => format!("e{n}"),
                    1 => format!("e{n}y"),
                    _ => format!("e{n}y{j}"),
                };
                basis.push(BasisElement {
                    name,
                    degree: generator_degree(n) + j as i32,
                    weight: generator_weight(n) + Y_WEIGHT * j as i32,
                });
            }
        }
        let space = Arc::new(BigradedSpace::new(basis)?);
        let mut triplets = Vec::new();
        for n in 1..=truncation {
            let power = if n % 2 == 1 { 1 } else { 2 };
            for j in 0..3 {
                if j + power < 3 {
                    triplets.push((idx(n - 1, j + power), idx(n, j), S::one()));
                }
            }
        }
        let d = LinearMap::from_triplets(space.clone(), space.clone(), triplets, (1, 0))?;
        Ok(ResolutionP { truncation, space, d })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn differential(&self) -> &LinearMap<S> {
        &self.d
    }

    pub fn index(&self, n: usize, j: usize) -> usize {
        idx(n, j)
    }

    pub fn slice(&self) -> Result<ComplexSlice<S>> {
        ComplexSlice::from_endomorphism(&self.space, &self.d)
    }

    /// Weights whose slice of `P_{≤N}` coincides with the slice of `P`: nothing of that weight
    /// lives on `e_{N+1}` or above.
    pub fn faithful_weights(&self) -> Vec<i32> {
        let edge = generator_weight(self.truncation + 1);
        (edge + 1..=0).collect()
    }

    /// `ε: P → k`, `e₀ ↦ 1`, everything else to zero; returned as a functional.
    pub fn augmentation(&self) -> Vector<S> {
        Vector::basis(idx(0, 0))
    }

    /// The lift `ṽₙ ∈ End_{k[y]/y³}(P)` of the dual class `vₙ`:
    /// `ṽ_{2k}(e_m) = (−1)^{mk} e_{m−2k}` and `ṽ_{2k+1}(e_m) = e_{m−2k−1}` for odd `m`,
    /// `(−1)^k e_{m−2k−1}·y` for even `m`.
    pub fn lift(&self, n: usize) -> Result<LinearMap<S>> {
        if n > self.truncation {
            return Err(Error::Truncation(format!("ṽ{n} needs N ≥ {n}")));
        }
        let k = n / 2;
        let mut triplets = Vec::new();
        for m in n..=self.truncation {
            let (target, shift, sign) = if n % 2 == 0 {
                (m - n, 0, (m * k) % 2 == 1)
            } else if m % 2 == 1 {
                (m - n, 0, false)
            } else {
                (m - n, 1, k % 2 == 1)
            };
            for j in 0..3 {
                if j + shift < 3 {
                    triplets.push((idx(target, j + shift), idx(m, j), S::sign_pow(sign)));
                }
            }
        }
        let bidegree = (-generator_degree(n), -generator_weight(n));
        LinearMap::from_triplets(self.space.clone(), self.space.clone(), triplets, bidegree)
    }

    /// `ε ∘ φ` as coordinates in the dual basis `vₙ` (`vₙ(e_m) = δₙₘ`).
    pub fn dual_class(&self, phi: &LinearMap<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for n in 0..=self.truncation {
            out.add_term(n, phi.entry(idx(0, 0), idx(n, 0)));
        }
        out
    }
}

/// `[d, φ] = d∘φ − (−1)^{|φ|} φ∘d`.
pub fn graded_commutator_with<S: Scalar>(d: &LinearMap<S>, phi: &LinearMap<S>) -> Result<LinearMap<S>> {
    let a = d.compose(phi)?;
    let b = phi.compose(d)?;
    let s = S::sign_pow(phi.bidegree().0.rem_euclid(2) == 0);
    let cols = a.columns().iter().zip(b.columns()).map(|(x, y)| {
        let mut v = x.clone();
        v.add_scaled(y, &s);
        v
    });
    LinearMap::new(a.source().clone(), a.target().clone(), cols.collect(), a.bidegree())
}

fn lin_combo<S: Scalar>(terms: &[(&LinearMap<S>, S)]) -> Vec<Vector<S>> {
    let n = terms[0].0.columns().len();
    (0..n)
        .map(|j| {
            let mut v = Vector::zero();
            for (m, c) in terms {
                v.add_scaled(m.column(j), c);
            }
            v
        })
        .collect()
}

fn first_nonzero<S: Scalar>(space: &BigradedSpace, cols: &[Vector<S>]) -> Option<String> {
    cols.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(j, c)| {
        let (i, x) = c.leading().expect("nonzero");
        format!("coefficient {x} of {} in the image of {}", space.name(i), space.name(j))
    })
}

/// The Ext algebra over k[y]/y³ through `P_{≤N}`: dims of the dual classes, the lifts, and the
/// operator identities among them, each as a named check.
#[derive(Debug, Clone)]
pub struct ExtAlgebra<S> {
    pub resolution: ResolutionP<S>,
    pub lifts: Vec<LinearMap<S>>,
    /// `v_i · v_j` for the degree-0 classes `v₀`, `v₁`, as coordinates in the `v` basis.
    pub degree_zero_products: BTreeMap<(usize, usize), Vector<S>>,
    pub report: BigradedReport,
}

pub fn ext_algebra<S: Scalar>(truncation: usize) -> Result<ExtAlgebra<S>> {
    let p = ResolutionP::<S>::build(truncation)?;
    let mut checks = Vec::new();
    let space = p.space().clone();
    let bound = format!("N = {truncation}");

    let dd = p.differential().compose(p.differential())?;
    checks.push(Check::new("P.d_squared", "d∘d = 0 on P", &bound, dd.is_zero(), "exact"));

    let slice = p.slice()?;
    let h = slice.homology();
    let mut bad = Vec::new();
    for w in p.faithful_weights() {
        for (&(deg, hw), &n) in &h.dims {
            if hw == w && n != usize::from(deg == 0 && w == 0) {
                bad.push(format!("H^{deg} at weight {w} has dim {n}"));
            }
        }
    }
    let e0_class = h.representatives.get(&(0, 0)).map_or(false, |r| r.len() == 1 && !r[0].get(p.index(0, 0)).is_zero());
    checks.push(Check::new(
        "P.resolution",
        "H(P) = k·e₀ on every faithful weight slice",
        format!("weights {:?}", p.faithful_weights()),
        bad.is_empty() && e0_class,
        if bad.is_empty() { "H = k·e₀".to_string() } else { bad.join("; ") },
    ));

    let lifts: Vec<LinearMap<S>> = (0..=truncation).map(|n| p.lift(n)).collect::<Result<_>>()?;
    for (n, l) in lifts.iter().enumerate() {
        let c = graded_commutator_with(p.differential(), l)?;
        let witness = first_nonzero(&space, c.columns());
        checks.push(Check::new(
            format!("lift{n}.chain_map"),
            format!("d∘ṽ{n} = (−1)^|ṽ{n}| ṽ{n}∘d"),
            &bound,
            witness.is_none(),
            witness.unwrap_or_else(|| "exact".into()),
        ));
        let dual = p.dual_class(l);
        let ok = dual == Vector::basis(n);
        checks.push(Check::new(
            format!("lift{n}.lifts"),
            format!("ε∘ṽ{n} = v{n}"),
            &bound,
            ok,
            format!("{:?}", dual.iter().map(|(i, c)| format!("{c}·v{i}")).collect::<Vec<_>>()),
        ));
    }

    let v1v2 = lifts[1].compose(&lifts[2])?;
    let v2v1 = lifts[2].compose(&lifts[1])?;
    let anti = lin_combo(&[(&v1v2, S::one()), (&v2v1, S::one())]);
    let witness = first_nonzero(&space, &anti);
    checks.push(Check::new(
        "anticommute",
        "ṽ₁ṽ₂ + ṽ₂ṽ₁ = 0",
        &bound,
        witness.is_none(),
        witness.unwrap_or_else(|| "exact".into()),
    ));

    let mut power = LinearMap::identity(space.clone());
    let mut k = 0;
    while 2 * k + 1 <= truncation {
        let lhs = lifts[1].compose(&power)?;
        let diff = lin_combo(&[(&lhs, S::one()), (&lifts[2 * k + 1], -S::sign_pow(k % 2 == 1))]);
        let witness = first_nonzero(&space, &diff);
        checks.push(Check::new(
            format!("power{k}"),
            format!("ṽ₁ṽ₂^{k} = (−1)^{k} ṽ{}", 2 * k + 1),
            &bound,
            witness.is_none(),
            witness.unwrap_or_else(|| "exact".into()),
        ));
        power = power.compose(&lifts[2])?;
        k += 1;
    }

    let mut degree_zero_products = BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            degree_zero_products.insert((i, j), p.dual_class(&lifts[i].compose(&lifts[j])?));
        }
    }
    let dual_numbers = degree_zero_products[&(0, 0)] == Vector::basis(0)
        && degree_zero_products[&(0, 1)] == Vector::basis(1)
        && degree_zero_products[&(1, 0)] == Vector::basis(1)
        && degree_zero_products[&(1, 1)].is_zero();
    checks.push(Check::new(
        "ext0",
        "Ext⁰ = span(v₀, v₁) with v₀ the unit and v₁² = 0",
        &bound,
        dual_numbers && (2..=truncation).all(|n| generator_degree(n) != 0),
        "k[ε]",
    ));

    let mut dims = BTreeMap::new();
    for n in 0..=truncation {
        *dims.entry((-generator_degree(n), -generator_weight(n))).or_insert(0) += 1;
    }
    let report = BigradedReport::from_map(&dims, checks);
    Ok(ExtAlgebra { resolution: p, lifts, degree_zero_products, report })
}
