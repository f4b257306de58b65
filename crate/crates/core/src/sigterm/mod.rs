//! Signatures, terms and the ordered term algebra over a finite poset.

mod sexpr;
mod space;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::guard::GuardError;

pub use sexpr::{format_term, parse_term, var_label, VarNames};
pub use space::{term_leq, Node, TermPoset, TermSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("symbol `{name}` has arity {arity}, got {got} arguments")]
    Arity {
        name: String,
        arity: usize,
        got: usize,
    },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("malformed signature: {0}")]
    Format(String),
    #[error(transparent)]
    Guard(#[from] GuardError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// A finite list of operation symbols with distinct names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct SignatureFile {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, TermError> {
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.name.clone(), i).is_some() {
                return Err(TermError::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Signature { symbols, index })
    }

    /// Shorthand: `Signature::of(&[("mul", 2), ("e", 0)])`.
    pub fn of(symbols: &[(&str, usize)]) -> Self {
        Self::new(
            symbols
                .iter()
                .map(|&(name, arity)| Symbol {
                    name: name.to_string(),
                    arity,
                })
                .collect(),
        )
        .expect("distinct symbol names")
    }

    pub fn empty() -> Self {
        Self::of(&[])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn arity(&self, i: usize) -> usize {
        self.symbols[i].arity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].name
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn from_json(text: &str) -> Result<Self, TermError> {
        let f: SignatureFile =
            serde_json::from_str(text).map_err(|e| TermError::Format(e.to_string()))?;
        Self::new(f.symbols)
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self, TermError> {
        let f: SignatureFile =
            serde_json::from_value(v).map_err(|e| TermError::Format(e.to_string()))?;
        Self::new(f.symbols)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SignatureFile {
            symbols: self.symbols.clone(),
        })
        .expect("signature serializes")
    }
}

/// A finite tree: a variable (index into a carrier or variable supply) or
/// a symbol applied to arity-many subterms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn constant(sym: usize) -> Term {
        Term::App(sym, Vec::new())
    }

    pub fn app(sym: usize, args: impl IntoIterator<Item = Term>) -> Term {
        Term::App(sym, args.into_iter().collect())
    }

    /// Variables have depth 0, constants depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// One more than the largest variable index, 0 for closed terms.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(x) => x + 1,
            Term::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(x) => out.push(*x),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Simultaneous substitution `x_i ↦ s[i]`.
    pub fn substitute(&self, s: &[Term]) -> Term {
        self.substitute_with(&|x| s[x].clone())
    }

    pub fn substitute_with(&self, s: &dyn Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(x) => s(*x),
            Term::App(f, args) => {
                Term::App(*f, args.iter().map(|a| a.substitute_with(s)).collect())
            }
        }
    }

    pub fn map_vars(&self, f: &dyn Fn(usize) -> usize) -> Term {
        self.substitute_with(&|x| Term::Var(f(x)))
    }

    /// Checks arities against the signature and variables against `n_vars`.
    pub fn check(&self, sig: &Signature, n_vars: usize) -> Result<(), TermError> {
        match self {
            Term::Var(x) if *x < n_vars => Ok(()),
            Term::Var(x) => Err(TermError::UnknownVariable(var_label(*x))),
            Term::App(f, args) => {
                if *f >= sig.len() {
                    return Err(TermError::UnknownSymbol(format!("#{f}")));
                }
                if sig.arity(*f) != args.len() {
                    return Err(TermError::Arity {
                        name: sig.name(*f).to_string(),
                        arity: sig.arity(*f),
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig, n_vars))
            }
        }
    }
}

/// `f♯`: the homomorphic extension of `f: X -> |A|` to terms over `X`.
/// `None` only when a partial operation of `A` is undefined.
pub fn extend_hom(f: &[usize], alg: &crate::variety::OrderedAlgebra, t: &Term) -> Option<usize> {
    alg.eval(t, f)
}
