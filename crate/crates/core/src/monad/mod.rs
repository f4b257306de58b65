//! Executable monads on finite posets, truncated where the real monad is
//! infinite, and the checks run against them: monad laws, preservation of
//! canonical coinserters, lifting, associated presentations and monad
//! morphisms.
//!
//! A monad is an [`OrderedMonad`]: it enumerates `T X` for a finite poset
//! `X`, orders it, and implements unit, arrow action and flattening.
//! Flattening may be undefined when the result leaves the truncation; the
//! checks skip those instances and report how many they covered.

mod catalog;
mod continuation;
mod finitary;
mod instances;
mod laws;
mod morphism;
mod present;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::finposet::{FinPoset, PosetError};
use crate::guard::{GuardError, Guards};
use crate::variety::VarietyError;

pub use catalog::{Catalog, MonadVisitor, Truncation};
pub use continuation::ContinuationMonad;
pub use finitary::{
    check_lifting, check_strongly_finitary, LiftingReport, SfReport, SfVerdict, SfWitness,
};
pub use instances::{
    plus_star_leq, BElem, BoundedMonad, IdentityMonad, TreeFlavor, TreeMonad, WordMonad, WordOrder,
};
pub use laws::{check_monad_laws, describe, Coverage, LawReport, Violation};
pub use morphism::{
    algebra_to_morphism, check_algebra, check_morphism, term_monad_morphism, unfold_term,
    variety_quotient_morphism, MorphismReport, QuotientReport,
};
pub use present::{associated_presentation, AssociatedPresentation};

#[derive(Debug, Clone, Error)]
pub enum MonadError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("unknown monad `{0}`")]
    Unknown(String),
    #[error("outside the truncation: {0}")]
    Truncation(String),
    #[error("{0}")]
    Invalid(String),
}

/// A monad on finite posets, possibly truncated.
pub trait OrderedMonad: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;

    /// `T base` within the truncation, in a fixed order.
    fn elements(&self, base: &FinPoset, guards: &Guards) -> Result<Vec<Self::Elem>, MonadError>;

    /// Streams `T base` without materializing it; returns the count.
    fn visit_elements(
        &self,
        base: &FinPoset,
        guards: &Guards,
        visit: &mut dyn FnMut(Self::Elem),
    ) -> Result<usize, MonadError> {
        let all = self.elements(base, guards)?;
        let n = all.len();
        all.into_iter().for_each(visit);
        Ok(n)
    }

    fn leq(&self, base: &FinPoset, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn unit(&self, base: &FinPoset, x: usize) -> Self::Elem;

    /// `T f` for a monotone `f: dom -> cod` given by its table.
    fn map(&self, dom: &FinPoset, cod: &FinPoset, f: &[usize], e: &Self::Elem) -> Self::Elem;

    /// `T f` for a partial table; `None` when `e` needs an undefined entry.
    fn map_partial(
        &self,
        dom: &FinPoset,
        cod: &FinPoset,
        f: &[Option<usize>],
        e: &Self::Elem,
    ) -> Option<Self::Elem> {
        let total = f.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(self.map(dom, cod, &total, e))
    }

    /// `μ`: `outer` is an element of `T(T base)` whose generators index
    /// `inner.elems`. `None` when the result leaves the truncation.
    fn flatten(
        &self,
        base: &FinPoset,
        inner: &Applied<Self::Elem>,
        outer: &Self::Elem,
    ) -> Option<Self::Elem>;

    fn label(&self, base: &FinPoset, e: &Self::Elem) -> String;
}

/// `T X` materialized: elements, their index, and the poset they form
/// (labels from [`OrderedMonad::label`]).
#[derive(Debug, Clone)]
pub struct Applied<E> {
    pub elems: Vec<E>,
    pub index: HashMap<E, usize>,
    pub poset: Arc<FinPoset>,
}

impl<E: Clone + Eq + Hash> Applied<E> {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn find(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }
}

pub fn apply<M: OrderedMonad + ?Sized>(
    m: &M,
    base: &FinPoset,
    guards: &Guards,
) -> Result<Applied<M::Elem>, MonadError> {
    let elems = m.elements(base, guards)?;
    guards.carrier(elems.len())?;
    let labels = elems.iter().map(|e| m.label(base, e)).collect();
    let poset = FinPoset::from_fn(labels, |a, b| m.leq(base, &elems[a], &elems[b]))?;
    let index = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    Ok(Applied {
        elems,
        index,
        poset: Arc::new(poset),
    })
}

/// Table of `η_X` into `tx`.
pub(crate) fn unit_table<M: OrderedMonad + ?Sized>(
    m: &M,
    base: &FinPoset,
    tx: &Applied<M::Elem>,
) -> Result<Vec<usize>, MonadError> {
    (0..base.len())
        .map(|x| {
            tx.find(&m.unit(base, x)).ok_or_else(|| {
                MonadError::Truncation(format!("unit of `{}` missing", base.label(x)))
            })
        })
        .collect()
}

/// Table of `T f: T X -> T Y` as indices, `None` where the image leaves the
/// truncation of `T Y`.
pub(crate) fn arrow_table<M: OrderedMonad + ?Sized>(
    m: &M,
    dom: &FinPoset,
    cod: &FinPoset,
    f: &[usize],
    tx: &Applied<M::Elem>,
    ty: &Applied<M::Elem>,
) -> Vec<Option<usize>> {
    tx.elems
        .iter()
        .map(|e| ty.find(&m.map(dom, cod, f, e)))
        .collect()
}
