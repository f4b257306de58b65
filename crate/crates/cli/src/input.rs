//! Loading posets, pairs, presentations and algebras from files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use ordvar::finposet::PosetFile;
use ordvar::variety::Builtin;
use ordvar::{FinPoset, MonotoneMap, OrderedAlgebra, ParallelPair, Presentation, Signature};
use serde::Deserialize;

use crate::error::CliError;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
}

fn shorthand(arg: &str) -> Option<Result<FinPoset, CliError>> {
    let (kind, n) = arg.split_once(':')?;
    let n: usize = match n.parse() {
        Ok(n) => n,
        Err(_) => return Some(Err(CliError::Input(format!("bad size in `{arg}`")))),
    };
    match kind {
        "chain" => Some(Ok(FinPoset::chain(n))),
        "discrete" => Some(
            FinPoset::discrete_labeled((0..n).map(|i| format!("x{i}")).collect())
                .map_err(Into::into),
        ),
        _ => None,
    }
}

/// A poset file, or `chain:N` / `discrete:N` (elements `x0 …`) when no
/// such file exists.
pub fn poset(arg: &str) -> Result<FinPoset, CliError> {
    if !Path::new(arg).exists() {
        if let Some(p) = shorthand(arg) {
            return p;
        }
    }
    Ok(PosetFile::parse(&read(arg)?)?.to_poset()?)
}

/// A presentation file, or a builtin variety name.
pub fn presentation(arg: &str) -> Result<Presentation, CliError> {
    if !Path::new(arg).exists() {
        if let Ok(b) = Builtin::from_name(arg) {
            return Ok(b.presentation());
        }
    }
    Ok(Presentation::from_json(&read(arg)?)?)
}

pub fn signature(path: &str) -> Result<Arc<Signature>, CliError> {
    Ok(Arc::new(Signature::from_json(&read(path)?)?))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairFile {
    Canonical {
        canonical: PosetFile,
    },
    Explicit {
        dom: PosetFile,
        cod: PosetFile,
        f0: Vec<String>,
        f1: Vec<String>,
    },
}

fn table(cod: &FinPoset, labels: &[String]) -> Result<Vec<usize>, CliError> {
    labels
        .iter()
        .map(|l| {
            cod.index_of(l)
                .ok_or_else(|| CliError::Input(format!("unknown codomain element `{l}`")))
        })
        .collect()
}

/// `{"dom": poset, "cod": poset, "f0": [...], "f1": [...]}` with the maps
/// listing codomain labels in domain order, or `{"canonical": poset}`.
pub fn pair(path: &str) -> Result<ParallelPair, CliError> {
    let f: PairFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("`{path}`: {e}")))?;
    match f {
        PairFile::Canonical { canonical } => {
            Ok(ordvar::finposet::canonical_presentation(&canonical.to_poset()?).pair)
        }
        PairFile::Explicit { dom, cod, f0, f1 } => {
            let dom = Arc::new(dom.to_poset()?);
            let cod = Arc::new(cod.to_poset()?);
            let f0 = MonotoneMap::new(dom.clone(), cod.clone(), table(&cod, &f0)?)?;
            let f1 = MonotoneMap::new(dom, cod.clone(), table(&cod, &f1)?)?;
            Ok(ParallelPair::new(f0, f1)?)
        }
    }
}

#[derive(Deserialize)]
struct AlgebraFile {
    signature: serde_json::Value,
    carrier: PosetFile,
    #[serde(default)]
    ops: BTreeMap<String, Vec<Option<String>>>,
}

/// `{"signature": sig or builtin name, "carrier": poset, "ops": {...}}`.
/// Each table lists result labels (or `null`) for all argument tuples,
/// first argument most significant.
pub fn algebra(path: &str) -> Result<OrderedAlgebra, CliError> {
    let f: AlgebraFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("`{path}`: {e}")))?;
    let sig = match f.signature.as_str() {
        Some(name) => Builtin::from_name(name)?.signature(),
        None => Arc::new(Signature::from_value(f.signature)?),
    };
    let carrier = Arc::new(f.carrier.to_poset()?);
    if let Some(extra) = f.ops.keys().find(|k| sig.lookup(k).is_none()) {
        return Err(CliError::Input(format!(
            "table for unknown symbol `{extra}`"
        )));
    }
    let mut ops = Vec::with_capacity(sig.len());
    for s in sig.symbols() {
        let entries = f
            .ops
            .get(&s.name)
            .ok_or_else(|| CliError::Input(format!("missing table for `{}`", s.name)))?;
        let row = entries
            .iter()
            .map(|e| match e {
                None => Ok(None),
                Some(l) => carrier
                    .index_of(l)
                    .map(Some)
                    .ok_or_else(|| CliError::Input(format!("unknown carrier element `{l}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ops.push(row);
    }
    Ok(OrderedAlgebra::new(sig, carrier, ops)?)
}
