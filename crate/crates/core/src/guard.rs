//! Resource guards that turn combinatorial explosions into explicit errors.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: needs {needed}, guard is {limit}")]
pub struct GuardError {
    pub what: &'static str,
    pub limit: usize,
    pub needed: usize,
}

/// Size limits shared by every enumeration in the crate.
///
/// `max_poset` applies to posets handed in from outside (files, the test
/// bank, products and hom posets built from them). Carriers that the
/// toolkit generates itself (term spaces, monad values) are bounded by
/// `max_terms` and `max_carrier` instead, since they are routinely larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub max_poset: usize,
    pub max_hom: usize,
    pub max_terms: usize,
    pub max_carrier: usize,
    pub max_stream: usize,
    pub max_rounds: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_poset: 64,
            max_hom: 1_000_000,
            max_terms: 250_000,
            max_carrier: 20_000,
            max_stream: 5_000_000,
            max_rounds: 64,
        }
    }
}

impl Guards {
    pub fn check(limit: usize, needed: usize, what: &'static str) -> Result<(), GuardError> {
        if needed > limit {
            Err(GuardError {
                what,
                limit,
                needed,
            })
        } else {
            Ok(())
        }
    }

    pub fn poset(&self, needed: usize) -> Result<(), GuardError> {
        Self::check(self.max_poset, needed, "poset size")
    }

    pub fn hom(&self, needed: usize) -> Result<(), GuardError> {
        Self::check(self.max_hom, needed, "hom enumeration")
    }

    pub fn terms(&self, needed: usize) -> Result<(), GuardError> {
        Self::check(self.max_terms, needed, "term enumeration")
    }

    pub fn carrier(&self, needed: usize) -> Result<(), GuardError> {
        Self::check(self.max_carrier, needed, "monad carrier")
    }

    pub fn stream(&self, needed: usize) -> Result<(), GuardError> {
        Self::check(self.max_stream, needed, "streamed carrier")
    }
}

/// `base^exp`, saturating at `usize::MAX`.
pub fn saturating_pow(base: usize, exp: usize) -> usize {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == usize::MAX {
            break;
        }
    }
    acc
}
