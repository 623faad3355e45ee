use std::collections::BTreeMap;
use std::sync::Arc;

use super::free_c::CCohomology;
use crate::certificate::{BigradedReport, Check};
use crate::error::{Error, Result};
use crate::linalg::{ComplexSlice, LinearMap, Vector};
use crate::scalar::Scalar;
use crate::space::{BasisElement, BigradedSpace};

/// k[x]/xⁿ with `|x| = degree` and `w(x) = weight`. An odd generator needs `n = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monogenic {
    pub n: usize,
    pub degree: i32,
    pub weight: i32,
}

impl Monogenic {
    pub fn new(n: usize, degree: i32, weight: i32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("k[x]/xⁿ needs n ≥ 2".into()));
        }
        if degree % 2 != 0 && n != 2 {
            return Err(Error::Invalid("an odd generator squares to zero, so n must be 2".into()));
        }
        Ok(Monogenic { n, degree, weight })
    }

    fn odd(&self) -> bool {
        self.degree % 2 != 0
    }
}

/// One resolution step `g_p ↦ Σ c·xⁱ g_{p−1} xʲ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step<S> {
    pub terms: Vec<(usize, usize, S)>,
}

/// The 2-periodic free bimodule resolution of k[x]/xⁿ:
/// `d_odd = x⊗1 − 1⊗x` and `d_even = Σᵢ (−1)^{|x|·i} xⁱ⊗x^{n−1−i}`, generators `g_p` in weight
/// `w(g_{2k}) = k·n·w(x)`, `w(g_{2k+1}) = (k·n + 1)·w(x)`.
#[derive(Debug, Clone)]
pub struct PeriodicResolution<S> {
    algebra: Monogenic,
    depth: usize,
    spaces: Vec<Arc<BigradedSpace>>,
    steps: Vec<Step<S>>,
    maps: Vec<LinearMap<S>>,
}

impl<S: Scalar> PeriodicResolution<S> {
    pub fn build(algebra: Monogenic, depth: usize) -> Result<Self> {
        if depth < 2 {
            return Err(Error::Invalid("the periodic resolution needs depth ≥ 2".into()));
        }
        let n = algebra.n;
        let mut steps = vec![Step { terms: Vec::new() }];
        for p in 1..=depth {
            let terms = if p % 2 == 1 {
                vec![(1, 0, S::one()), (0, 1, -S::one())]
            } else {
                (0..n).map(|i| (i, n - 1 - i, S::sign_pow(algebra.odd() && i % 2 == 1))).collect()
            };
            steps.push(Step { terms });
        }
        let mut res = PeriodicResolution { algebra, depth, spaces: Vec::new(), steps, maps: Vec::new() };
        for p in 0..=depth {
            let mut basis = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    basis.push(BasisElement {
                        name: format!("x{i}.g{p}.x{j}"),
                        degree: res.generator_degree(p) + algebra.degree * (i + j) as i32,
                        weight: res.generator_weight(p) + algebra.weight * (i + j) as i32,
                    });
                }
            }
            res.spaces.push(Arc::new(BigradedSpace::new(basis)?));
        }
        for p in 1..=depth {
            let mut triplets = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    // d(xⁱ g xʲ) = (−1)^{|xⁱ|·|D|} xⁱ D xʲ
                    for (a, b, c) in &res.steps[p].terms {
                        if i + a < n && b + j < n {
                            let dd = algebra.degree * (a + b) as i32;
                            let s = S::sign_pow((algebra.degree * i as i32 * dd).rem_euclid(2) == 1);
                            triplets.push(((i + a) * n + b + j, i * n + j, s * c.clone()));
                        }
                    }
                }
            }
            let m = LinearMap::from_triplets(res.spaces[p].clone(), res.spaces[p - 1].clone(), triplets, (1, 0))?;
            res.maps.push(m);
        }
        Ok(res)
    }

    pub fn algebra(&self) -> Monogenic {
        self.algebra
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn step(&self, p: usize) -> &Step<S> {
        &self.steps[p]
    }

    /// `d_p: P_p → P_{p−1}`, `1 ≤ p ≤ depth`.
    pub fn map(&self, p: usize) -> &LinearMap<S> {
        &self.maps[p - 1]
    }

    /// Cohomological degree of `g_p`: `−p` plus the degrees of the `x`'s it stands for.
    pub fn generator_degree(&self, p: usize) -> i32 {
        let xs = if p % 2 == 0 { (p / 2) * self.algebra.n } else { (p / 2) * self.algebra.n + 1 };
        -(p as i32) + self.algebra.degree * xs as i32
    }

    pub fn generator_weight(&self, p: usize) -> i32 {
        let xs = if p % 2 == 0 { (p / 2) * self.algebra.n } else { (p / 2) * self.algebra.n + 1 };
        self.algebra.weight * xs as i32
    }

    /// The twist of each step relative to the previous one (the `(−k)` in `P_p = A⊗A(−k)`).
    pub fn twist_ledger(&self) -> Vec<i32> {
        (1..=self.depth).map(|p| self.generator_weight(p) - self.generator_weight(p - 1)).collect()
    }

    /// `d∘d = 0` and exactness of `… → P₁ → P₀ → A → 0` by ranks, for `0 ≤ p < depth`.
    pub fn checks(&self) -> Vec<Check> {
        let n = self.algebra.n;
        let bound = format!("depth {}", self.depth);
        let mut out = Vec::new();
        let mut bad = Vec::new();
        for p in 1..self.depth {
            match self.map(p).compose(self.map(p + 1)) {
                Ok(m) if m.is_zero() => {}
                Ok(_) => bad.push(format!("d{p}∘d{}", p + 1)),
                Err(e) => bad.push(e.to_string()),
            }
        }
        // multiplication P₀ → A kills the image of d₁
        for col in self.map(1).columns() {
            let mut image = BTreeMap::new();
            for (k, c) in col.iter() {
                let (i, j) = (k / n, k % n);
                if i + j < n {
                    *image.entry(i + j).or_insert_with(S::zero) += c.clone();
                }
            }
            if image.values().any(|c| !c.is_zero()) {
                bad.push("m∘d1".into());
                break;
            }
        }
        out.push(Check::new(
            "periodic.d_squared",
            "d∘d = 0 at every step, m∘d₁ = 0",
            &bound,
            bad.is_empty(),
            bad.join("; "),
        ));
        let dim = n * n;
        let mut ranks = vec![n];
        ranks.extend((1..=self.depth).map(|p| self.map(p).rank()));
        let mut gaps = Vec::new();
        for p in 0..self.depth {
            if ranks[p] + ranks[p + 1] != dim {
                gaps.push(format!("step {p}: rank {} + rank {} ≠ {dim}", ranks[p], ranks[p + 1]));
            }
        }
        out.push(Check::new(
            "periodic.exact",
            "dim ker d_p = rank d_{p+1} (with d₀ = m)",
            &bound,
            gaps.is_empty(),
            if gaps.is_empty() { format!("ranks {ranks:?}") } else { gaps.join("; ") },
        ));
        out
    }

    /// `HH_•(A)` from `A ⊗_{A^e} P`, per (degree, weight), on weights below the first weight
    /// the truncation could disturb.
    pub fn hochschild_homology(&self) -> Result<BigradedReport> {
        let alg = self.algebra;
        let n = alg.n;
        let mut spaces = BTreeMap::new();
        let mut place = Vec::new();
        // chains g_p ⊗ x^k; group by total degree (distinct p may share a degree when |x| is odd)
        let mut by_degree: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for p in 0..=self.depth {
            for k in 0..n {
                by_degree.entry(self.generator_degree(p) + alg.degree * k as i32).or_default().push((p, k));
            }
        }
        let mut local: BTreeMap<(usize, usize), (i32, usize)> = BTreeMap::new();
        for (&deg, cells) in &by_degree {
            let basis = cells
                .iter()
                .enumerate()
                .map(|(t, &(p, k))| {
                    local.insert((p, k), (deg, t));
                    BasisElement {
                        name: format!("g{p}|x{k}"),
                        degree: deg,
                        weight: self.generator_weight(p) + alg.weight * k as i32,
                    }
                })
                .collect();
            spaces.insert(deg, Arc::new(BigradedSpace::new(basis)?));
            place.push(deg);
        }
        let mut columns: BTreeMap<i32, Vec<Vector<S>>> =
            spaces.iter().map(|(&d, s)| (d, vec![Vector::zero(); s.dim()])).collect();
        for p in 1..=self.depth {
            for k in 0..n {
                let (deg, t) = local[&(p, k)];
                let mut v = Vector::zero();
                // (xⁱ g xʲ) ⊗ m ≡ (−1)^{|xⁱ|(|g| + |xʲ| + |m|)} g ⊗ xʲ m xⁱ
                for (i, j, c) in &self.steps[p].terms {
                    let out = i + j + k;
                    if out >= n {
                        continue;
                    }
                    let gdeg = self.generator_degree(p - 1);
                    let par = alg.degree * *i as i32 * (gdeg + alg.degree * (j + k) as i32);
                    let (tdeg, tt) = local[&(p - 1, out)];
                    debug_assert_eq!(tdeg, deg + 1);
                    v.add_term(tt, S::sign_pow(par.rem_euclid(2) == 1) * c.clone());
                }
                columns.get_mut(&deg).expect("degree")[t] = v;
            }
        }
        let mut maps = BTreeMap::new();
        for (&deg, cols) in columns.iter() {
            if let Some(tgt) = spaces.get(&(deg + 1)) {
                maps.insert(deg, LinearMap::new(spaces[&deg].clone(), tgt.clone(), cols.clone(), (1, 0))?);
            } else if cols.iter().any(|c| !c.is_zero()) {
                return Err(Error::Dimension("differential leaves the complex".into()));
            }
        }
        let slice = ComplexSlice::new(spaces, maps)?;
        let h = slice.homology();
        let edge = self.generator_weight(self.depth + 1);
        let dims: BTreeMap<(i32, i32), usize> = h.dims.into_iter().filter(|((_, w), _)| *w < edge).collect();
        Ok(BigradedReport::from_map(&dims, self.checks()))
    }

    /// Weights `< edge` are computed faithfully by [`Self::hochschild_homology`].
    pub fn homology_edge(&self) -> i32 {
        self.generator_weight(self.depth + 1)
    }
}

/// A weight-graded bimodule over k[x]/xⁿ given by the actions of `x` on each side.
#[derive(Debug, Clone)]
pub struct WeightedBimodule<S> {
    pub name: String,
    pub space: Arc<BigradedSpace>,
    pub left: LinearMap<S>,
    pub right: LinearMap<S>,
}

impl<S: Scalar> WeightedBimodule<S> {
    pub fn new(
        name: impl Into<String>,
        space: Arc<BigradedSpace>,
        left: LinearMap<S>,
        right: LinearMap<S>,
    ) -> Result<Self> {
        if left.bidegree().0 != 0 || right.bidegree() != left.bidegree() {
            return Err(Error::Invalid("x must act in degree 0 with one weight on both sides".into()));
        }
        let lr = left.compose(&right)?;
        let rl = right.compose(&left)?;
        if lr.columns() != rl.columns() {
            return Err(Error::Invalid("left and right actions do not commute".into()));
        }
        Ok(WeightedBimodule { name: name.into(), space, left, right })
    }

    /// The diagonal bimodule k[x]/xⁿ, `w(x) = 1`.
    pub fn diagonal(n: usize) -> Result<Self> {
        let space = Arc::new(BigradedSpace::new(
            (0..n).map(|k| BasisElement { name: format!("x{k}"), degree: 0, weight: k as i32 }).collect(),
        )?);
        let shift: Vec<_> = (0..n - 1).map(|k| (k + 1, k, S::one())).collect();
        let l = LinearMap::from_triplets(space.clone(), space.clone(), shift.clone(), (0, 1))?;
        let r = LinearMap::from_triplets(space.clone(), space.clone(), shift, (0, 1))?;
        Self::new(format!("k[x]/x^{n}"), space, l, r)
    }

    /// `k[ε](−shift)` in degree `degree`: basis `1, ε` in weights `shift, shift + 1`, `x` acting as
    /// `ε` on the left and as `±ε` on the right (`−` for the anti-diagonal bimodule).
    pub fn twisted_dual_numbers(degree: i32, shift: i32, anti: bool) -> Result<Self> {
        let space = Arc::new(BigradedSpace::from_triples([("1", degree, shift), ("eps", degree, shift + 1)])?);
        let l = LinearMap::from_triplets(space.clone(), space.clone(), [(1, 0, S::one())], (0, 1))?;
        let r = LinearMap::from_triplets(space.clone(), space.clone(), [(1, 0, S::sign_pow(anti))], (0, 1))?;
        let kind = if anti { "anti-diagonal" } else { "diagonal" };
        Self::new(format!("k[eps]({}) {kind}", -shift), space, l, r)
    }

    /// `H^{−a}(C)` as a bimodule through `x ↦ t₁`, with the representatives chosen by the
    /// slice homology of C and the actions computed on cocycles.
    pub fn from_c_cohomology(c: &CCohomology<S>, a: usize) -> Result<Self> {
        let deg = -(a as i32);
        let mut reps = Vec::new();
        let mut basis = Vec::new();
        for w in [3 * a as i32, 3 * a as i32 + 1] {
            let r = c.representatives(deg, w);
            if r.len() != 1 {
                return Err(Error::Identity(format!("H^{deg}(C) at weight {w} has dim {}", r.len())));
            }
            basis.push(BasisElement { name: format!("h{deg}w{w}"), degree: deg, weight: w });
            reps.push(r[0].clone());
        }
        let space = Arc::new(BigradedSpace::new(basis)?);
        let (u1, _) = c.generators()?;
        let act = |left: bool| -> Result<LinearMap<S>> {
            let mut cols = Vec::new();
            for (k, z) in reps.iter().enumerate() {
                let prod = if left { c.product(&u1, z) } else { c.product(z, &u1) };
                let mut col = Vector::zero();
                if k == 0 {
                    let coords = c.class_of(&prod)?;
                    col.add_term(1, coords.first().cloned().unwrap_or_else(S::zero));
                }
                cols.push(col);
            }
            LinearMap::new(space.clone(), space.clone(), cols, (0, 1))
        };
        let (l, r) = (act(true)?, act(false)?);
        Self::new(format!("H^{deg}(C)"), space, l, r)
    }
}

/// `HH^{p,w}(k[x]/xⁿ, M)` from `Hom_{A^e}(P, M) ≅ M` per step: a cochain of step `p` with value
/// `m` has weight `w(m) − w(g_p)` (the twist convention `V(k)ʷ = V^{k+w}`). Degrees `p < depth`.
pub fn hochschild_cohomology_bigraded<S: Scalar>(
    res: &PeriodicResolution<S>,
    m: &WeightedBimodule<S>,
) -> Result<BigradedReport> {
    let alg = res.algebra();
    if alg.degree != 0 || alg.weight != 1 {
        return Err(Error::Invalid("cohomology is implemented for k[x]/xⁿ with |x| = 0, w(x) = 1".into()));
    }
    let dim = m.space.dim();
    let mut spaces = BTreeMap::new();
    for p in 0..=res.depth() {
        let basis = (0..dim)
            .map(|t| BasisElement {
                name: format!("phi{p}({})", m.space.name(t)),
                degree: p as i32,
                weight: m.space.weight(t) - res.generator_weight(p),
            })
            .collect();
        spaces.insert(p as i32, Arc::new(BigradedSpace::new(basis)?));
    }
    let powers = |op: &LinearMap<S>| -> Result<Vec<LinearMap<S>>> {
        let mut out = vec![LinearMap::identity(m.space.clone())];
        for k in 1..alg.n {
            out.push(op.compose(&out[k - 1])?);
        }
        Ok(out)
    };
    let (lp, rp) = (powers(&m.left)?, powers(&m.right)?);
    if !lp[alg.n - 1].compose(&m.left)?.is_zero() || !rp[alg.n - 1].compose(&m.right)?.is_zero() {
        return Err(Error::Invalid(format!("x^{} does not act by zero", alg.n)));
    }
    let mut maps = BTreeMap::new();
    for p in 0..res.depth() {
        let cols = (0..dim)
            .map(|t| {
                let mut v = Vector::zero();
                for (i, j, c) in &res.step(p + 1).terms {
                    let image = lp[*i].apply(&rp[*j].apply(&Vector::basis(t)));
                    v.add_scaled(&image, c);
                }
                v
            })
            .collect();
        let src = spaces[&(p as i32)].clone();
        let tgt = spaces[&(p as i32 + 1)].clone();
        maps.insert(p as i32, LinearMap::new(src, tgt, cols, (1, 0))?);
    }
    let slice = ComplexSlice::new(spaces, maps)?;
    let h = slice.homology();
    let top = res.depth() as i32;
    let dims: BTreeMap<(i32, i32), usize> = h.dims.into_iter().filter(|((p, _), _)| *p < top).collect();
    Ok(BigradedReport::from_map(&dims, Vec::new()))
}

/// Cells of a report in cohomological degree `p`, as `weight → dim`.
pub fn column(report: &BigradedReport, p: i32) -> BTreeMap<i32, usize> {
    report.dims.iter().filter(|c| c.degree == p).map(|c| (c.weight, c.dim)).collect()
}
