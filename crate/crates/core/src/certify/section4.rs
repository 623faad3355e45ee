use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ainfty::AInftyAlgebra;
use crate::catalog::{make_algebra, CatalogKey};
use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::hochschild::{eilenberg_zilber, Chain, Hochschild, HochschildSlice};
use crate::linalg::{solve_rows, GradedHomology, Inserted, LinearSolution, RowReducer, Vector};
use crate::scalar::Scalar;

/// One weight slice of a Hochschild complex with its homology.
struct Slice<S> {
    slice: HochschildSlice<S>,
    hom: GradedHomology<S>,
}

impl<S: Scalar> Slice<S> {
    fn new(h: &Hochschild<S>, w: i32) -> Result<Self> {
        let slice = h.slice(w)?;
        let hom = GradedHomology::new(slice.space().clone(), slice.b())?;
        Ok(Slice { slice, hom })
    }

    fn reps(&self, deg: i32) -> Vec<Chain<S>> {
        self.hom.representatives(deg, self.slice.weight()).iter().map(|v| self.slice.to_chain(v)).collect()
    }

    fn class(&self, c: &Chain<S>) -> Result<Vec<S>> {
        let v = self.slice.to_vector(c)?;
        let deg = match self.hom.cell_of(&v)? {
            Some((d, _)) => d,
            None => return Ok(Vec::new()),
        };
        self.hom.class_in(deg, self.slice.weight(), &v)
    }
}

/// Hochschild data of `Λ₁`, `k[ε]` and `Λ₁ ⊗ k[ε]` up to a weight.
struct Kunneth<S> {
    h1: Hochschild<S>,
    h2: Hochschild<S>,
    ht: Hochschild<S>,
    s1: BTreeMap<i32, Slice<S>>,
    s2: BTreeMap<i32, Slice<S>>,
    st: BTreeMap<i32, Slice<S>>,
}

/// A class pair `[r] ⊗ [s]` with bidegrees `(d₁, w₁)`, `(d₂, w₂)` and representative indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    d1: i32,
    w1: i32,
    k1: usize,
    d2: i32,
    w2: i32,
    k2: usize,
}

impl<S: Scalar> Kunneth<S> {
    fn new(weight_max: i32) -> Result<Self> {
        let alg = |k: CatalogKey| -> Result<Arc<AInftyAlgebra<S>>> { Ok(Arc::new(make_algebra(&k)?)) };
        let h1 = Hochschild::new(alg(CatalogKey::Lambda1)?)?;
        let h2 = Hochschild::new(alg(CatalogKey::DualNumbers)?)?;
        let ht = Hochschild::new(alg(CatalogKey::Tensor(
            Box::new(CatalogKey::Lambda1),
            Box::new(CatalogKey::DualNumbers),
        ))?)?;
        let mut k = Kunneth { h1, h2, ht, s1: BTreeMap::new(), s2: BTreeMap::new(), st: BTreeMap::new() };
        for w in 0..=weight_max {
            k.s1.insert(w, Slice::new(&k.h1, w)?);
            k.s2.insert(w, Slice::new(&k.h2, w)?);
            k.st.insert(w, Slice::new(&k.ht, w)?);
        }
        Ok(k)
    }

    fn ez(&self, c1: &Chain<S>, c2: &Chain<S>) -> Result<Chain<S>> {
        eilenberg_zilber(&self.h1, &self.h2, &self.ht, c1, c2)
    }

    fn rep1(&self, d: i32, w: i32, k: usize) -> Chain<S> {
        self.s1[&w].reps(d)[k].clone()
    }

    fn rep2(&self, d: i32, w: i32, k: usize) -> Chain<S> {
        self.s2[&w].reps(d)[k].clone()
    }

    /// All class pairs landing in the tensor cell `(d, w)`.
    fn pairs(&self, d: i32, w: i32) -> Vec<Pair> {
        let mut out = Vec::new();
        for w1 in 0..=w {
            let w2 = w - w1;
            let (a, b) = (&self.s1[&w1], &self.s2[&w2]);
            for (&(d1, _), &n1) in a.hom.dims().iter().filter(|(_, &n)| n > 0) {
                let d2 = d - d1;
                for k1 in 0..n1 {
                    for k2 in 0..b.hom.dim(d2, w2) {
                        out.push(Pair { d1, w1, k1, d2, w2, k2 });
                    }
                }
            }
        }
        out
    }

    fn pair_chain(&self, p: &Pair) -> Result<Chain<S>> {
        self.ez(&self.rep1(p.d1, p.w1, p.k1), &self.rep2(p.d2, p.w2, p.k2))
    }

    /// Coordinates of a homogeneous tensor cycle in the basis of EZ images of class pairs.
    fn decompose(&self, c: &Chain<S>) -> Result<Vec<(Pair, S)>> {
        if c.is_zero() {
            return Ok(Vec::new());
        }
        let w = self.ht.weight(c.iter().next().map(|(t, _)| t.as_slice()).unwrap_or(&[]));
        let d = self.ht.degree(c.iter().next().map(|(t, _)| t.as_slice()).unwrap_or(&[]));
        let st = self.st.get(&w).ok_or_else(|| Error::Truncation(format!("weight {w} above the computed range")))?;
        let target = st.class(c)?;
        let pairs = self.pairs(d, w);
        let cols = pairs.iter().map(|p| st.class(&self.pair_chain(p)?)).collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vector<S>> = (0..target.len())
            .map(|i| Vector::from_pairs(cols.iter().enumerate().map(|(j, c)| (j, c[i].clone()))))
            .collect();
        match solve_rows(pairs.len(), &rows, &target)? {
            LinearSolution::Solution(x) => Ok(x.iter().map(|(j, v)| (pairs[j], v.clone())).collect()),
            LinearSolution::Inconsistent(_) => {
                Err(Error::Identity(format!("class in ({d}, {w}) is not in the span of EZ pairs")))
            }
        }
    }
}

/// The three components of the class over `Λ₁ ⊗ k[ε]`, with the `Λ₁` representatives used.
#[derive(Debug, Clone)]
pub struct Section4Cycle<S> {
    /// `r₁` (degree 0, weight 0), `r₂` (degree 0, weight 1), `r₃` (degree 1, weight 1).
    pub reps: [Chain<S>; 3],
    /// Right factors `(1)`, `(ε)`, `(1; ε)`.
    pub right: [Chain<S>; 3],
    /// `EZ(r₁ ⊗ (1))`, `−EZ(r₂ ⊗ (ε))`, `EZ(r₃ ⊗ (1; ε))`.
    pub components: [Chain<S>; 3],
}

impl<S: Scalar> Section4Cycle<S> {
    pub fn total(&self) -> Chain<S> {
        let mut c = Chain::zero();
        for x in &self.components {
            c.add(x);
        }
        c
    }
}

fn single_rep<S: Scalar>(s: &Slice<S>, deg: i32) -> Result<Chain<S>> {
    let reps = s.reps(deg);
    if reps.len() != 1 {
        return Err(Error::Dimension(format!(
            "expected one class of Λ₁ in degree {deg}, weight {}, found {}",
            s.slice.weight(),
            reps.len()
        )));
    }
    Ok(reps[0].clone())
}

fn build_cycle<S: Scalar>(k: &Kunneth<S>) -> Result<Section4Cycle<S>> {
    let reps = [single_rep(&k.s1[&0], 0)?, single_rep(&k.s1[&1], 0)?, single_rep(&k.s1[&1], 1)?];
    let h2 = &k.h2;
    let one = h2.algebra().unit_index().ok_or_else(|| Error::Invalid("k[ε] unit".into()))?;
    let eps = h2.algebra().space().require("eps")?;
    let right = [Chain::basis(vec![one]), Chain::basis(vec![eps]), Chain::basis(vec![one, eps])];
    let components = [k.ez(&reps[0], &right[0])?, k.ez(&reps[1], &right[1])?.negated(), k.ez(&reps[2], &right[2])?];
    Ok(Section4Cycle { reps, right, components })
}

/// `EZ(r₁ ⊗ (1)) − EZ(r₂ ⊗ (ε)) + EZ(r₃ ⊗ (1; ε))` over `Λ₁ ⊗ k[ε]`.
pub fn section4_cycle<S: Scalar>() -> Result<Section4Cycle<S>> {
    build_cycle(&Kunneth::new(2)?)
}

fn cell_name(p: &Pair) -> String {
    format!("[Λ₁ ({},{})#{}] ⊗ [k[ε] ({},{})#{}]", p.d1, p.w1, p.k1, p.d2, p.w2, p.k2)
}

/// Hochschild dimensions, Künneth, closedness of the class and nonvanishing of `(id ⊗ B)` on it.
pub fn verify_section4<S: Scalar>(weight_max: usize) -> Result<Certificate> {
    let wmax = weight_max.max(2) as i32;
    let k = Kunneth::<S>::new(wmax)?;
    let mut cert = Certificate::new("verify-section4", BTreeMap::from([("max_weight".to_string(), wmax.to_string())]));
    let table = |m: &BTreeMap<i32, Slice<S>>| -> BTreeMap<(i32, i32), usize> {
        m.values().flat_map(|s| s.hom.dims().iter().filter(|(_, &n)| n > 0).map(|(&c, &n)| (c, n))).collect()
    };
    let (t1, t2, tt) = (table(&k.s1), table(&k.s2), table(&k.st));
    for w in 0..=wmax {
        let mut bad = Vec::new();
        let mut degrees: Vec<i32> = tt.keys().filter(|c| c.1 == w).map(|c| c.0).collect();
        for (&(d1, w1), _) in &t1 {
            degrees.extend(t2.keys().filter(|c| c.1 == w - w1).map(|c| d1 + c.0));
        }
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let expect = k.pairs(d, w).len();
            let got = tt.get(&(d, w)).copied().unwrap_or(0);
            if expect != got {
                bad.push(format!("({d},{w}): HH {got} vs Künneth {expect}"));
                continue;
            }
            if got == 0 {
                continue;
            }
            let st = &k.st[&w];
            let mut basis = RowReducer::new(false);
            let mut rank = 0;
            for p in k.pairs(d, w) {
                let c = st.class(&k.pair_chain(&p)?)?;
                if let Inserted::Pivot(_) = basis.insert(Vector::from_dense(&c), S::zero()) {
                    rank += 1;
                }
            }
            if rank != got {
                bad.push(format!("({d},{w}): EZ images have rank {rank} of {got}"));
            }
        }
        cert.push(Check::new(
            format!("kunneth.w{w}"),
            "dim HH(Λ₁ ⊗ k[ε]) = Σ dim HH(Λ₁)·dim HH(k[ε]) and EZ images of class pairs form a basis",
            format!("weight {w}"),
            bad.is_empty(),
            if bad.is_empty() { "agree".to_string() } else { bad.join("; ") },
        ));
    }
    let dims_json = |t: &BTreeMap<(i32, i32), usize>| {
        serde_json::Value::Array(
            t.iter().map(|(&(d, w), &n)| serde_json::json!({"degree": d, "weight": w, "dim": n})).collect(),
        )
    };
    cert.attach("hh_lambda1", dims_json(&t1));
    cert.attach("hh_dual_numbers", dims_json(&t2));
    cert.attach("hh_tensor", dims_json(&tt));
    let profile_ok = (0..=wmax).all(|w| {
        let cells: Vec<(i32, usize)> = t1.iter().filter(|((_, cw), _)| *cw == w).map(|(&(d, _), &n)| (d, n)).collect();
        if w == 0 {
            cells == vec![(0, 1)]
        } else {
            cells == vec![(0, 1), (1, 1)]
        }
    });
    cert.push(Check::new(
        "hh_lambda1.profile",
        "HH(Λ₁): weight 0 has one class in degree 0; every weight w ≥ 1 has one class in degree 0 and one in degree 1",
        format!("weight ≤ {wmax}"),
        profile_ok,
        format!("{t1:?}"),
    ));
    let hh1: Vec<_> = t2.iter().filter(|((d, _), _)| *d == -1).collect();
    cert.push(Check::new(
        "hh1_dual_numbers",
        "HH in degree −1 of k[ε] is one-dimensional, in weight 1",
        format!("weight ≤ {wmax}"),
        hh1.len() == 1 && *hh1[0].0 == (-1, 1) && *hh1[0].1 == 1,
        format!("{hh1:?}"),
    ));

    let cyc = build_cycle(&k)?;
    for (i, comp) in cyc.components.iter().enumerate() {
        let closed = k.ht.b(comp)?.is_zero();
        let class = if closed { k.decompose(comp)? } else { Vec::new() };
        cert.push(Check::new(format!("component{}.closed", i + 1), "b(cᵢ) = 0", "", closed, comp.len().to_string()));
        cert.push(Check::new(
            format!("component{}.nonzero", i + 1),
            "cᵢ is a nonzero class",
            "",
            !class.is_empty(),
            class
                .iter()
                .map(|(p, x)| format!("{}·{}", x.to_exact_string(), cell_name(p)))
                .collect::<Vec<_>>()
                .join(" + "),
        ));
    }
    let nb = k.h2.algebra().dim();
    let one_b = k.h2.algebra().unit_index().unwrap_or(0);
    let reduced: Chain<S> = cyc
        .total()
        .iter()
        .filter_map(|(t, x)| {
            t.iter().all(|&i| i % nb == one_b).then(|| (t.iter().map(|&i| i / nb).collect::<Vec<_>>(), x.clone()))
        })
        .collect();
    cert.push(Check::new(
        "reduction",
        "setting ε = 0 leaves r₁ alone",
        "",
        reduced == cyc.reps[0],
        k.h1.render(&reduced),
    ));

    // (id ⊗ B) through the Künneth decomposition
    let mut images = Vec::new();
    for comp in &cyc.components {
        let mut img = Chain::zero();
        for (p, x) in k.decompose(comp)? {
            let r = k.rep1(p.d1, p.w1, p.k1);
            let s = k.h2.connes_b(&k.rep2(p.d2, p.w2, p.k2));
            img.add_scaled(&k.ez(&r, &s)?, &x);
        }
        images.push(img);
    }
    let first = k.decompose(&images[0])?;
    cert.push(Check::new(
        "idB.first",
        "(id ⊗ B) of the first component vanishes",
        "",
        first.is_empty(),
        format!("{} terms", first.len()),
    ));
    let mut total = Chain::zero();
    for img in &images {
        total.add(img);
    }
    let by_weight: BTreeMap<i32, Chain<S>> = total.iter().fold(BTreeMap::new(), |mut m, (t, x)| {
        m.entry(k.ht.weight(t)).or_insert_with(Chain::zero).add_term(t.clone(), x.clone());
        m
    });
    let mut classes = Vec::new();
    for c in by_weight.values() {
        classes.extend(k.decompose(c)?);
    }
    cert.push(Check::new(
        "idB.nonzero",
        "(id ⊗ B) of the class is nonzero in homology",
        "",
        !classes.is_empty(),
        classes
            .iter()
            .map(|(p, x)| format!("{}·{}", x.to_exact_string(), cell_name(p)))
            .collect::<Vec<_>>()
            .join(" + "),
    ));
    let hh0_hh1: Vec<_> = classes.iter().filter(|(p, _)| p.d1 == 0 && p.d2 == -1).collect();
    cert.push(Check::new(
        "idB.hh0_hh1",
        "component in HH₀(Λ₁) ⊗ HH₁(k[ε]) is nonzero",
        "",
        hh0_hh1.iter().any(|(_, x)| !x.is_zero()),
        hh0_hh1
            .iter()
            .map(|(p, x)| format!("{}·{}", x.to_exact_string(), cell_name(p)))
            .collect::<Vec<_>>()
            .join(" + "),
    ));
    cert.attach(
        "cycle",
        serde_json::json!({
            "r1": k.h1.render(&cyc.reps[0]),
            "r2": k.h1.render(&cyc.reps[1]),
            "r3": k.h1.render(&cyc.reps[2]),
        }),
    );
    Ok(cert)
}
