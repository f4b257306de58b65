use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FinPoset, FinPreorder, PosetError};
use crate::bitrel::BitRelation;

/// JSON shape `{"elements": [...], "leq": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetFile {
    pub fn parse(text: &str) -> Result<Self, PosetError> {
        serde_json::from_str(text).map_err(|e| PosetError::Format(e.to_string()))
    }

    fn relation(&self) -> Result<BitRelation, PosetError> {
        let n = self.elements.len();
        let index = |l: &str| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| PosetError::UnknownLabel(l.to_string()))
        };
        let mut rel = BitRelation::new(n);
        for (a, b) in &self.leq {
            rel.set(index(a)?, index(b)?);
        }
        Ok(rel)
    }

    pub fn to_poset(&self) -> Result<FinPoset, PosetError> {
        FinPoset::new(self.elements.clone(), self.relation()?)
    }

    pub fn to_preorder(&self) -> Result<FinPreorder, PosetError> {
        FinPreorder::new(self.elements.clone(), self.relation()?)
    }

    /// Writes the Hasse edges only.
    pub fn from_poset(p: &FinPoset) -> Self {
        PosetFile {
            elements: p.labels().to_vec(),
            leq: hasse_edges(p)
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }
}

/// Covering pairs `a < b` with nothing strictly between, sorted.
pub fn hasse_edges(p: &FinPoset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in p.relation().successors(a) {
            if a != b && !(0..n).any(|c| c != a && c != b && p.leq(a, c) && p.leq(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz source with edges pointing upward; `closure` draws every
/// strict relation instead of the covering pairs.
pub fn to_dot(p: &FinPoset, closure: bool) -> String {
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for l in p.labels() {
        let _ = writeln!(s, "  {};", dot_id(l));
    }
    let edges: Vec<(usize, usize)> = if closure {
        p.relation().pairs().filter(|(a, b)| a != b).collect()
    } else {
        hasse_edges(p)
    };
    for (a, b) in edges {
        let _ = writeln!(s, "  {} -> {};", dot_id(p.label(a)), dot_id(p.label(b)));
    }
    s.push_str("}\n");
    s
}
