//! Computational toolkit for varieties of ordered algebras and strongly
//! finitary monads on the category of posets.
//!
//! Everything lives in the world of finite posets ([`finposet`]). On top of
//! that sit signatures and ordered term algebras ([`sigterm`]), inequational
//! presentations with free-algebra saturation ([`variety`]) and executable,
//! truncated monads on finite posets together with their check suites
//! ([`monad`]).
//!
//! Bank-wide sweeps take an [`Execution`] mode; with the `parallel` feature
//! (on by default) independent check cells are spread over a rayon pool,
//! otherwise they run sequentially.

#![allow(clippy::needless_range_loop)]

pub mod bitrel;
pub mod finposet;
pub mod guard;
pub mod monad;
mod par;
pub mod sigterm;
pub mod variety;

pub use bitrel::BitRelation;
pub use finposet::{FinPoset, FinPreorder, MonotoneMap, ParallelPair, PosetError};
pub use guard::{GuardError, Guards};
pub use par::Execution;
pub use sigterm::{Signature, Term, TermError};
pub use variety::{OrderedAlgebra, Presentation, VarietyError};
