//! Concrete algebras with fixed bases and weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::ainfty::{AInftyAlgebra, Bimorphism, MultiOp};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{sign, Scalar};
use crate::space::{BasisElement, BigradedSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogKey {
    /// k⟨ξ⟩/ξ², |ξ| = 1, w(ξ) = 1.
    Lambda1,
    /// k[ε]/ε², |ε| = 0, w(ε) = 1.
    DualNumbers,
    /// k[x]/xⁿ, |x| = 0, w(x) = 1.
    TruncatedPoly(usize),
    /// k[y]/y³, |y| = 1, w(y) = 1.
    YCube,
    /// Free algebra on t₁ (degree 0, weight 1), t₂ (degree −1, weight 2), d t₂ = t₁²,
    /// cut off above the given weight.
    FreeC(usize),
    Tensor(Box<CatalogKey>, Box<CatalogKey>),
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Lambda1 => write!(f, "lambda1"),
            CatalogKey::DualNumbers => write!(f, "dual_numbers"),
            CatalogKey::TruncatedPoly(n) => write!(f, "truncated_poly({n})"),
            CatalogKey::YCube => write!(f, "y_cube"),
            CatalogKey::FreeC(w) => write!(f, "free_C({w})"),
            CatalogKey::Tensor(a, b) => write!(f, "tensor({a},{b})"),
        }
    }
}

fn split_args(inner: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown algebra key {s:?}"));
        let call = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')') };
        let key = match s {
            "lambda1" => CatalogKey::Lambda1,
            "dual_numbers" => CatalogKey::DualNumbers,
            "y_cube" => CatalogKey::YCube,
            _ => {
                if let Some(arg) = call("truncated_poly") {
                    let n: usize = arg.trim().parse().map_err(|_| bad())?;
                    CatalogKey::TruncatedPoly(n)
                } else if let Some(arg) = call("free_C") {
                    let w: usize = arg.trim().parse().map_err(|_| bad())?;
                    CatalogKey::FreeC(w)
                } else if let Some(arg) = call("tensor") {
                    let (a, b) = split_args(arg).ok_or_else(bad)?;
                    CatalogKey::Tensor(Box::new(a.parse()?), Box::new(b.parse()?))
                } else {
                    return Err(bad());
                }
            }
        };
        key.validate()?;
        Ok(key)
    }
}

impl CatalogKey {
    pub fn validate(&self) -> Result<()> {
        match self {
            CatalogKey::TruncatedPoly(n) if *n < 2 => Err(Error::Invalid("truncated_poly needs n ≥ 2".into())),
            CatalogKey::FreeC(0) => Err(Error::Invalid("free_C needs a weight bound ≥ 1".into())),
            CatalogKey::Tensor(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }
}

pub fn make_algebra<S: Scalar>(key: &CatalogKey) -> Result<AInftyAlgebra<S>> {
    key.validate()?;
    let name = key.to_string();
    match key {
        CatalogKey::Lambda1 => monomial_algebra(&name, "xi", 1, 2),
        CatalogKey::DualNumbers => monomial_algebra(&name, "eps", 0, 2),
        CatalogKey::TruncatedPoly(n) => monomial_algebra(&name, "x", 0, *n),
        CatalogKey::YCube => monomial_algebra(&name, "y", 1, 3),
        CatalogKey::FreeC(w) => free_c(*w),
        CatalogKey::Tensor(a, b) => tensor_dg(&make_algebra(a)?, &make_algebra(b)?),
    }
}

/// k[g]/gⁿ with |g| = `degree`, w(g) = 1. For odd `degree` this is the graded
/// commutative truncated algebra (no sign in gⁱ·gʲ = g^{i+j}).
fn monomial_algebra<S: Scalar>(name: &str, g: &str, degree: i32, n: usize) -> Result<AInftyAlgebra<S>> {
    let basis: Vec<BasisElement> = (0..n)
        .map(|k| BasisElement {
            name: match k {
                0 => "1".to_string(),
                1 => g.to_string(),
                _ => format!("{g}{k}"),
            },
            degree: degree * k as i32,
            weight: k as i32,
        })
        .collect();
    let space = Arc::new(BigradedSpace::new(basis)?);
    let mut products = BTreeMap::new();
    for i in 0..n {
        for j in 0..n - i {
            products.insert((i, j), Vector::basis(i + j));
        }
    }
    AInftyAlgebra::from_dg(name, space, Some(Vector::basis(0)), &BTreeMap::new(), &products)
}

/// Words in t₁ (= 1) and t₂ (= 2) of weight ≤ `bound`, ordered by weight then lexicographically.
pub fn c_monomials(bound: usize) -> Vec<Vec<u8>> {
    let mut by_weight: Vec<Vec<Vec<u8>>> = vec![vec![vec![]]];
    for w in 1..=bound {
        let mut words = Vec::new();
        for (letter, lw) in [(1u8, 1usize), (2u8, 2usize)] {
            if lw <= w {
                for tail in &by_weight[w - lw] {
                    let mut word = vec![letter];
                    word.extend_from_slice(tail);
                    words.push(word);
                }
            }
        }
        words.sort();
        by_weight.push(words);
    }
    by_weight.into_iter().flatten().collect()
}

pub fn c_word_name(word: &[u8]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|&l| if l == 1 { "t1" } else { "t2" }).collect()
}

fn free_c<S: Scalar>(bound: usize) -> Result<AInftyAlgebra<S>> {
    let words = c_monomials(bound);
    let weight = |w: &[u8]| w.iter().map(|&l| l as i32).sum::<i32>();
    let basis = words
        .iter()
        .map(|w| BasisElement {
            name: c_word_name(w),
            degree: -(w.iter().filter(|&&l| l == 2).count() as i32),
            weight: weight(w),
        })
        .collect();
    let space = Arc::new(BigradedSpace::new(basis)?);
    let index: BTreeMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut differential = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        let mut dv = Vector::zero();
        let mut before = 0i64;
        for p in 0..w.len() {
            if w[p] == 2 {
                let mut nw = w[..p].to_vec();
                nw.extend_from_slice(&[1, 1]);
                nw.extend_from_slice(&w[p + 1..]);
                dv.add_term(index[nw.as_slice()], sign::<S>(before));
                before += 1;
            }
        }
        if !dv.is_zero() {
            differential.insert(i, dv);
        }
    }
    let mut products = BTreeMap::new();
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if weight(u) + weight(v) <= bound as i32 {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                products.insert((i, j), Vector::basis(index[uv.as_slice()]));
            }
        }
    }
    AInftyAlgebra::from_dg(format!("free_C({bound})"), space, Some(Vector::basis(0)), &differential, &products)
}

/// Index of `a ⊗ b` in the basis of [`tensor_dg`] output.
pub fn tensor_index(dim_b: usize, a: usize, b: usize) -> usize {
    a * dim_b + b
}

/// Tensor product of two DG algebras, basis `a*b` in lexicographic order.
pub fn tensor_dg<S: Scalar>(a: &AInftyAlgebra<S>, b: &AInftyAlgebra<S>) -> Result<AInftyAlgebra<S>> {
    let (da, pa) = a.dg_parts()?;
    let (db, pb) = b.dg_parts()?;
    let (sa, sb) = (a.space(), b.space());
    let nb = sb.dim();
    let mut basis = Vec::with_capacity(sa.dim() * nb);
    for i in 0..sa.dim() {
        for j in 0..nb {
            basis.push(BasisElement {
                name: format!("{}*{}", sa.name(i), sb.name(j)),
                degree: sa.degree(i) + sb.degree(j),
                weight: sa.weight(i) + sb.weight(j),
            });
        }
    }
    let space = Arc::new(BigradedSpace::new(basis)?);
    let tensor = |x: &Vector<S>, y: &Vector<S>| -> Vector<S> {
        let mut out = Vector::zero();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                out.add_term(tensor_index(nb, i, j), c.clone() * e.clone());
            }
        }
        out
    };
    let mut differential = BTreeMap::new();
    for i in 0..sa.dim() {
        for j in 0..nb {
            let mut v = Vector::zero();
            if let Some(d) = da.get(&i) {
                v.add(&tensor(d, &Vector::basis(j)));
            }
            if let Some(d) = db.get(&j) {
                let s: S = sign(sa.degree(i) as i64);
                v.add_scaled(&tensor(&Vector::basis(i), d), &s);
            }
            if !v.is_zero() {
                differential.insert(tensor_index(nb, i, j), v);
            }
        }
    }
    let mut products = BTreeMap::new();
    for (&(i1, i2), x) in &pa {
        for (&(j1, j2), y) in &pb {
            let s: S = sign(sb.degree(j1) as i64 * sa.degree(i2) as i64);
            products.insert((tensor_index(nb, i1, j1), tensor_index(nb, i2, j2)), tensor(x, y).scaled(&s));
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(tensor(u, v)),
        _ => None,
    };
    AInftyAlgebra::from_dg(format!("tensor({},{})", a.name(), b.name()), space, unit, &differential, &products)
}

/// The DG bimorphism `(A, B) → A ⊗ B` with `f₁₀(a) = a ⊗ 1`, `f₀₁(b) = 1 ⊗ b`.
pub fn tensor_inclusions<S: Scalar>(
    a: Arc<AInftyAlgebra<S>>,
    b: Arc<AInftyAlgebra<S>>,
    ab: Arc<AInftyAlgebra<S>>,
) -> Result<Bimorphism<S>> {
    let ua = a.unit_index().ok_or_else(|| Error::Invalid("unit of A is not a basis element".into()))?;
    let ub = b.unit_index().ok_or_else(|| Error::Invalid("unit of B is not a basis element".into()))?;
    let nb = b.dim();
    let mut f10 = MultiOp::new(1);
    for i in 0..a.dim() {
        f10.add_term(vec![i], tensor_index(nb, i, ub), S::one());
    }
    let mut f01 = MultiOp::new(1);
    for j in 0..nb {
        f01.add_term(vec![j], tensor_index(nb, ua, j), S::one());
    }
    let name = format!("incl({},{})", a.name(), b.name());
    Bimorphism::new(name, a, b, ab, BTreeMap::from([((1, 0), f10), ((0, 1), f01)]), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn keys_round_trip() {
        for s in ["lambda1", "dual_numbers", "truncated_poly(6)", "y_cube", "free_C(4)", "tensor(lambda1,dual_numbers)"]
        {
            assert_eq!(s.parse::<CatalogKey>().unwrap().to_string(), s);
        }
        assert!("truncated_poly(1)".parse::<CatalogKey>().is_err());
        assert!("free_C(0)".parse::<CatalogKey>().is_err());
        assert!("nonsense".parse::<CatalogKey>().is_err());
    }

    #[test]
    fn c_monomial_counts() {
        let words = c_monomials(4);
        let count = |w: i32| words.iter().filter(|x| x.iter().map(|&l| l as i32).sum::<i32>() == w).count();
        assert_eq!([count(1), count(2), count(3), count(4)], [1, 2, 3, 5]);
    }

    #[test]
    fn catalog_algebras_are_unital() {
        for s in ["lambda1", "dual_numbers", "truncated_poly(6)", "y_cube", "free_C(5)", "tensor(lambda1,dual_numbers)"]
        {
            let a: AInftyAlgebra<Q> = make_algebra(&s.parse().unwrap()).unwrap();
            let r = a.check_structure(4);
            assert!(r.passed, "{}", r.summary());
        }
    }
}
