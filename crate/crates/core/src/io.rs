//! Canonical JSON documents: algebras, chains, morphism prefixes and certificates.
//!
//! Coefficients are always exact `"p/q"` strings. Entries are ordered by basis order and then
//! lexicographically by input tuple, so serializing the same object twice gives the same bytes.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ainfty::{AInftyAlgebra, MultiOp};
use crate::error::{Error, Result};
use crate::hochschild::Chain;
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::solver::MorphismPrefix;
use crate::space::{BasisElement, BigradedSpace};

pub const DOCUMENT_VERSION: u32 = 1;

/// `[name, "p/q"]` pairs in basis order.
pub type Terms = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub inputs: Vec<String>,
    pub output: Terms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationTable {
    pub arity: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub schema_version: u32,
    pub name: String,
    pub basis: Vec<BasisElement>,
    pub unit: Option<Terms>,
    pub arity_bound: Option<usize>,
    pub operations: Vec<OperationTable>,
    #[serde(default)]
    pub provenance: String,
}

fn terms<S: Scalar>(v: &Vector<S>, space: &BigradedSpace) -> Terms {
    v.iter().map(|(i, c)| (space.name(i).to_string(), c.to_exact_string())).collect()
}

fn vector<S: Scalar>(t: &Terms, space: &BigradedSpace) -> Result<Vector<S>> {
    let mut v = Vector::zero();
    for (name, c) in t {
        v.add_term(space.require(name)?, S::parse_exact(c)?);
    }
    Ok(v)
}

fn table<S: Scalar>(op: &MultiOp<S>, input: &BigradedSpace, output: &BigradedSpace) -> OperationTable {
    OperationTable {
        arity: op.arity(),
        entries: op
            .iter()
            .map(|(k, v)| Entry {
                inputs: k.iter().map(|&i| input.name(i).to_string()).collect(),
                output: terms(v, output),
            })
            .collect(),
    }
}

fn op_from_table<S: Scalar>(t: &OperationTable, input: &BigradedSpace, output: &BigradedSpace) -> Result<MultiOp<S>> {
    let mut op = MultiOp::new(t.arity);
    for e in &t.entries {
        if e.inputs.len() != t.arity {
            return Err(Error::Parse(format!("entry {:?} in an arity-{} table", e.inputs, t.arity)));
        }
        let key = e.inputs.iter().map(|n| input.require(n)).collect::<Result<Vec<_>>>()?;
        op.add(key, &vector(&e.output, output)?);
    }
    Ok(op)
}

impl AlgebraDocument {
    pub fn from_algebra<S: Scalar>(a: &AInftyAlgebra<S>, provenance: impl Into<String>) -> Self {
        let s = a.space();
        AlgebraDocument {
            schema_version: DOCUMENT_VERSION,
            name: a.name().to_string(),
            basis: s.basis().to_vec(),
            unit: a.unit().map(|u| terms(u, s)),
            arity_bound: a.arity_bound(),
            operations: a.ops().values().map(|op| table(op, s, s)).collect(),
            provenance: provenance.into(),
        }
    }

    pub fn to_algebra<S: Scalar>(&self) -> Result<AInftyAlgebra<S>> {
        if self.schema_version != DOCUMENT_VERSION {
            return Err(Error::Parse(format!("unsupported schema version {}", self.schema_version)));
        }
        let space = Arc::new(BigradedSpace::new(self.basis.clone())?);
        let unit = self.unit.as_ref().map(|u| vector(u, &space)).transpose()?;
        let mut ops = BTreeMap::new();
        for t in &self.operations {
            if ops.insert(t.arity, op_from_table(t, &space, &space)?).is_some() {
                return Err(Error::Parse(format!("two tables of arity {}", t.arity)));
            }
        }
        AInftyAlgebra::new(self.name.clone(), space, unit, ops, self.arity_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub tuple: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub schema_version: u32,
    pub algebra: String,
    pub terms: Vec<ChainTerm>,
}

impl ChainDocument {
    pub fn from_chain<S: Scalar>(a: &AInftyAlgebra<S>, c: &Chain<S>) -> Self {
        let s = a.space();
        ChainDocument {
            schema_version: DOCUMENT_VERSION,
            algebra: a.name().to_string(),
            terms: c
                .iter()
                .map(|(t, x)| ChainTerm {
                    tuple: t.iter().map(|&i| s.name(i).to_string()).collect(),
                    coeff: x.to_exact_string(),
                })
                .collect(),
        }
    }

    pub fn to_chain<S: Scalar>(&self, a: &AInftyAlgebra<S>) -> Result<Chain<S>> {
        let s = a.space();
        let mut c = Chain::zero();
        for t in &self.terms {
            if t.tuple.is_empty() {
                return Err(Error::Parse("empty Hochschild tuple".into()));
            }
            let tuple = t.tuple.iter().map(|n| s.require(n)).collect::<Result<Vec<_>>>()?;
            c.add_term(tuple, S::parse_exact(&t.coeff)?);
        }
        Ok(c)
    }
}

/// Components `gₙ` of a morphism prefix, outputs named by cochain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub schema_version: u32,
    pub source: String,
    pub target: String,
    pub arity: usize,
    pub components: Vec<OperationTable>,
}

impl MorphismDocument {
    pub fn from_prefix<S: Scalar>(g: &MorphismPrefix<S>) -> Self {
        MorphismDocument {
            schema_version: DOCUMENT_VERSION,
            source: g.source.name().to_string(),
            target: g.target.name().to_string(),
            arity: g.arity,
            components: g.components.values().map(|f| table(f, g.source.space(), g.target.space())).collect(),
        }
    }

    /// Rebuilds the components against the given source and target.
    pub fn to_prefix<S: Scalar>(
        &self,
        source: Arc<AInftyAlgebra<S>>,
        target: Arc<AInftyAlgebra<S>>,
    ) -> Result<MorphismPrefix<S>> {
        let mut components = BTreeMap::new();
        for t in &self.components {
            components.insert(t.arity, op_from_table(t, source.space(), target.space())?);
        }
        Ok(MorphismPrefix { source, target, components, arity: self.arity })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of the canonical serialization.
pub fn digest<T: Serialize>(value: &T) -> Result<String> {
    Ok(sha256_hex(to_json(value)?.as_bytes()))
}

/// Writes to a sibling temporary file, syncs it and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(io)?;
    let file = path.file_name().ok_or_else(|| Error::Io(format!("{} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", file.to_string_lossy(), std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, &to_json(value)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&s)
}
