//! Inequational presentations, ordered algebras and free algebras.
//!
//! General presentations get a sound bounded approximation of the free
//! algebra by saturation ([`saturate_free`]); the three builtin varieties
//! also have exact normal forms ([`Builtin`]).

mod algebra;
mod builtin;
mod saturate;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finposet::PosetError;
use crate::guard::GuardError;
use crate::sigterm::{format_term, parse_term, Signature, Term, TermError, VarNames};

pub use algebra::OrderedAlgebra;
pub use builtin::{
    bottom_unit_word_leq, free_bounded_poset, free_word_bottom_unit, free_word_pointwise,
    pointwise_word_leq, word_label, words_up_to, Builtin, NormalForm,
};
pub use saturate::{check_admissible, saturate_free, FreeAlgebraApprox, SaturationParams};

#[derive(Debug, Clone, Error)]
pub enum VarietyError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("operation `{symbol}` is not monotone at arguments {args:?}")]
    NotMonotone { symbol: String, args: Vec<String> },
    #[error("operation `{symbol}`: {msg}")]
    Table { symbol: String, msg: String },
    #[error("saturation budget exhausted after {} rounds", .0.rounds)]
    Budget(Box<FreeAlgebraApprox>),
    #[error("unknown builtin variety `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed input: {0}")]
    Format(String),
}

/// `lhs <= rhs` over the variables `x0 … x(n_vars-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequation {
    pub lhs: Term,
    pub rhs: Term,
    pub n_vars: usize,
}

impl Inequation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let n_vars = lhs.var_bound().max(rhs.var_bound());
        Inequation { lhs, rhs, n_vars }
    }

    pub fn flipped(&self) -> Self {
        Inequation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            n_vars: self.n_vars,
        }
    }

    /// Parses `leq lhs rhs` or `eq lhs rhs`, the latter as two inequations.
    pub fn parse_statement(text: &str, sig: &Signature) -> Result<Vec<Inequation>, VarietyError> {
        let text = text.trim();
        let (kind, rest) = text.split_once(char::is_whitespace).ok_or_else(|| {
            VarietyError::Format(format!("expected `leq|eq lhs rhs`, got `{text}`"))
        })?;
        let kind = match kind {
            "leq" => AxiomKind::Leq,
            "eq" => AxiomKind::Eq,
            other => return Err(VarietyError::Format(format!("unknown relation `{other}`"))),
        };
        let (lhs, rhs) = split_two_terms(rest.trim())?;
        let ax = Axiom {
            lhs: parse_term(lhs, sig, VarNames::Supply)?,
            rhs: parse_term(rhs, sig, VarNames::Supply)?,
            kind,
        };
        Ok(ax.inequations())
    }

    pub fn display(&self, sig: &Signature) -> String {
        format!(
            "{} <= {}",
            format_term(&self.lhs, sig, VarNames::Supply),
            format_term(&self.rhs, sig, VarNames::Supply)
        )
    }
}

/// Splits `"(a b) c"` into its two top-level terms.
fn split_two_terms(s: &str) -> Result<(&str, &str), VarietyError> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' | b'{' => depth += 1,
            b')' | b'}' => depth -= 1,
            c if c.is_ascii_whitespace() && depth == 0 => {
                return Ok((&s[..i], s[i..].trim()));
            }
            _ => {}
        }
    }
    Err(VarietyError::Format(format!("expected two terms in `{s}`")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomKind {
    Leq,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub lhs: Term,
    pub rhs: Term,
    pub kind: AxiomKind,
}

impl Axiom {
    pub fn leq(lhs: Term, rhs: Term) -> Self {
        Axiom {
            lhs,
            rhs,
            kind: AxiomKind::Leq,
        }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Axiom {
            lhs,
            rhs,
            kind: AxiomKind::Eq,
        }
    }

    /// An equation becomes the two opposite inequations.
    pub fn inequations(&self) -> Vec<Inequation> {
        let ineq = Inequation::new(self.lhs.clone(), self.rhs.clone());
        match self.kind {
            AxiomKind::Leq => vec![ineq],
            AxiomKind::Eq => {
                let back = ineq.flipped();
                vec![ineq, back]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub signature: Arc<Signature>,
    pub axioms: Vec<Axiom>,
}

#[derive(Serialize, Deserialize)]
struct AxiomFile {
    lhs: String,
    rhs: String,
    kind: AxiomKind,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    signature: serde_json::Value,
    #[serde(default)]
    axioms: Vec<AxiomFile>,
}

impl Presentation {
    pub fn new(signature: Arc<Signature>, axioms: Vec<Axiom>) -> Result<Self, VarietyError> {
        for ax in &axioms {
            let n = ax.lhs.var_bound().max(ax.rhs.var_bound());
            ax.lhs.check(&signature, n)?;
            ax.rhs.check(&signature, n)?;
        }
        Ok(Presentation { signature, axioms })
    }

    pub fn empty(signature: Arc<Signature>) -> Self {
        Presentation {
            signature,
            axioms: Vec::new(),
        }
    }

    pub fn inequations(&self) -> Vec<Inequation> {
        self.axioms.iter().flat_map(Axiom::inequations).collect()
    }

    /// Accepts either the JSON object form or a quoted builtin name.
    pub fn from_json(text: &str) -> Result<Self, VarietyError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| VarietyError::Format(e.to_string()))?;
        if let Some(name) = v.as_str() {
            return Ok(Builtin::from_name(name)?.presentation());
        }
        let f: PresentationFile =
            serde_json::from_value(v).map_err(|e| VarietyError::Format(e.to_string()))?;
        let sig = Arc::new(Signature::from_value(f.signature)?);
        let mut axioms = Vec::with_capacity(f.axioms.len());
        for a in f.axioms {
            axioms.push(Axiom {
                lhs: parse_term(&a.lhs, &sig, VarNames::Supply)?,
                rhs: parse_term(&a.rhs, &sig, VarNames::Supply)?,
                kind: a.kind,
            });
        }
        Presentation::new(sig, axioms)
    }

    pub fn to_json(&self) -> String {
        let f = PresentationFile {
            signature: serde_json::from_str(&self.signature.to_json()).expect("valid json"),
            axioms: self
                .axioms
                .iter()
                .map(|a| AxiomFile {
                    lhs: format_term(&a.lhs, &self.signature, VarNames::Supply),
                    rhs: format_term(&a.rhs, &self.signature, VarNames::Supply),
                    kind: a.kind,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("presentation serializes")
    }
}
