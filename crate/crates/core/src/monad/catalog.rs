use std::sync::Arc;

use super::{
    BoundedMonad, IdentityMonad, MonadError, OrderedMonad, TreeMonad, WordMonad, WordOrder,
};
use crate::sigterm::Signature;

/// Truncation budget: tree depth and word length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub depth: usize,
    pub length: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            depth: 1,
            length: 2,
        }
    }
}

/// Runs generic code against a monad picked by name at runtime.
pub trait MonadVisitor {
    type Output;
    fn visit<M: OrderedMonad>(self, m: &M) -> Self::Output;
}

/// The named monads.
pub struct Catalog;

impl Catalog {
    pub const NAMES: [&'static str; 7] = [
        "identity",
        "term",
        "word-pointwise",
        "word-bottom-unit",
        "bounded-poset",
        "ctx-partial",
        "plus-star",
    ];

    /// Signature of the `term` entry unless overridden.
    pub fn default_signature() -> Arc<Signature> {
        Arc::new(Signature::of(&[("mul", 2), ("e", 0)]))
    }

    pub fn visit<V: MonadVisitor>(
        name: &str,
        t: Truncation,
        v: V,
    ) -> Result<V::Output, MonadError> {
        Self::visit_with(name, t, None, v)
    }

    /// As [`Catalog::visit`], with `sig` replacing the `term` signature.
    pub fn visit_with<V: MonadVisitor>(
        name: &str,
        t: Truncation,
        sig: Option<Arc<Signature>>,
        v: V,
    ) -> Result<V::Output, MonadError> {
        Ok(match name {
            "identity" => v.visit(&IdentityMonad),
            "term" => v.visit(&TreeMonad::free(
                sig.unwrap_or_else(Self::default_signature),
                t.depth,
            )),
            "word-pointwise" => v.visit(&WordMonad::new(WordOrder::Pointwise, t.length)),
            "word-bottom-unit" => v.visit(&WordMonad::new(WordOrder::BottomUnit, t.length)),
            "bounded-poset" => v.visit(&BoundedMonad),
            "ctx-partial" => v.visit(&TreeMonad::contextual(t.depth)),
            "plus-star" => v.visit(&TreeMonad::plus_star(t.depth)),
            other => return Err(MonadError::Unknown(other.to_string())),
        })
    }
}
