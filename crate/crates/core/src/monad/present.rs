use std::collections::HashSet;
use std::sync::Arc;

use super::{apply, Applied, MonadError, OrderedMonad};
use crate::finposet::FinPoset;
use crate::guard::{saturating_pow, Guards};
use crate::sigterm::{Signature, Symbol, Term};
use crate::variety::{Axiom, Presentation};

/// The associated presentation cut off at arity `N`, with bookkeeping.
#[derive(Debug, Clone)]
pub struct AssociatedPresentation {
    pub presentation: Presentation,
    /// `symbol_of[n][s]`: symbol index of element `s` of `T n`.
    pub symbol_of: Vec<Vec<usize>>,
    pub order_axioms: usize,
    pub flattening_axioms: usize,
    pub projection_axioms: usize,
    /// Flattening instances whose `k*(σ)` left the truncation.
    pub skipped: usize,
}

/// Makes an element label usable as a symbol name.
fn atom(label: &str) -> String {
    label
        .chars()
        .map(|c| match c {
            '(' => '[',
            ')' => ']',
            '{' => '<',
            '}' => '>',
            c if c.is_whitespace() => '_',
            c => c,
        })
        .collect()
}

fn vars(n: usize) -> Vec<Term> {
    (0..n).map(Term::Var).collect()
}

/// One `n`-ary symbol per element of `T n` for `n <= max_arity`, named
/// `label/n`, with three axiom families:
///
/// * `σ(x) <= τ(x)` for `σ < τ` in `T n`;
/// * `k*(σ)(x) = σ(k_0(x), …, k_{m-1}(x))` for `k: m -> T n`, `σ ∈ T m`,
///   where `k* = μ_n ∘ T k` (instances leaving the truncation are skipped);
/// * `η_n(i)(x) = x_i`, tying the unit to the variables.
pub fn associated_presentation<M: OrderedMonad>(
    m: &M,
    max_arity: usize,
    guards: &Guards,
) -> Result<AssociatedPresentation, MonadError> {
    let bases: Vec<FinPoset> = (0..=max_arity).map(FinPoset::discrete).collect();
    let ts: Vec<Applied<M::Elem>> = bases
        .iter()
        .map(|b| apply(m, b, guards))
        .collect::<Result<_, _>>()?;

    let mut symbols = Vec::new();
    let mut symbol_of = Vec::with_capacity(ts.len());
    let mut used = HashSet::new();
    for (n, tn) in ts.iter().enumerate() {
        let mut ids = Vec::with_capacity(tn.len());
        for l in tn.poset.labels() {
            let mut name = format!("{}/{n}", atom(l));
            while !used.insert(name.clone()) {
                name.push('\'');
            }
            ids.push(symbols.len());
            symbols.push(Symbol { name, arity: n });
        }
        symbol_of.push(ids);
    }
    let sig = Arc::new(Signature::new(symbols).map_err(|e| MonadError::Invalid(e.to_string()))?);
    let op = |n: usize, s: usize, args: Vec<Term>| Term::App(symbol_of[n][s], args);

    let mut axioms = Vec::new();
    let mut order_axioms = 0;
    for (n, tn) in ts.iter().enumerate() {
        for (a, b) in tn.poset.relation().pairs() {
            if a != b {
                axioms.push(Axiom::leq(op(n, a, vars(n)), op(n, b, vars(n))));
                order_axioms += 1;
            }
        }
    }

    let mut flattening_axioms = 0;
    let mut skipped = 0;
    for (mm, tm) in ts.iter().enumerate() {
        for (n, tn) in ts.iter().enumerate() {
            let count = saturating_pow(tn.len(), mm).saturating_mul(tm.len());
            guards.terms(axioms.len().saturating_add(count))?;
            if tn.is_empty() && mm > 0 {
                continue;
            }
            let mut k = vec![0usize; mm];
            loop {
                for (s, sigma) in tm.elems.iter().enumerate() {
                    let lifted = m.map(&bases[mm], &tn.poset, &k, sigma);
                    let Some(r) = m.flatten(&bases[n], tn, &lifted).and_then(|e| tn.find(&e))
                    else {
                        skipped += 1;
                        continue;
                    };
                    let lhs = op(n, r, vars(n));
                    let rhs = op(mm, s, k.iter().map(|&ki| op(n, ki, vars(n))).collect());
                    if lhs != rhs {
                        axioms.push(Axiom::eq(lhs, rhs));
                        flattening_axioms += 1;
                    }
                }
                if !odometer(&mut k, tn.len()) {
                    break;
                }
            }
        }
    }

    let mut projection_axioms = 0;
    for (n, tn) in ts.iter().enumerate() {
        for i in 0..n {
            let e = m.unit(&bases[n], i);
            let s = tn
                .find(&e)
                .ok_or_else(|| MonadError::Truncation(format!("unit {i} of T {n}")))?;
            axioms.push(Axiom::eq(op(n, s, vars(n)), Term::Var(i)));
            projection_axioms += 1;
        }
    }

    Ok(AssociatedPresentation {
        presentation: Presentation::new(sig, axioms)?,
        symbol_of,
        order_axioms,
        flattening_axioms,
        projection_axioms,
        skipped,
    })
}

fn odometer(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{IdentityMonad, WordMonad, WordOrder};
    use crate::sigterm::{format_term, VarNames};
    use crate::variety::AxiomKind;

    fn show(p: &Presentation, a: &Axiom) -> String {
        let f = |t: &Term| format_term(t, &p.signature, VarNames::Supply);
        format!("{:?} {} {}", a.kind, f(&a.lhs), f(&a.rhs))
    }

    #[test]
    fn identity_gives_variables_only() {
        let ap = associated_presentation(&IdentityMonad, 2, &Guards::default()).unwrap();
        let names: Vec<&str> = ap
            .presentation
            .signature
            .symbols()
            .iter()
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(names, ["0/1", "0/2", "1/2"]);
        assert_eq!(ap.order_axioms, 0);
        assert_eq!(ap.projection_axioms, 3);
    }

    #[test]
    fn pointwise_words_flatten() {
        let m = WordMonad::new(WordOrder::Pointwise, 2);
        let ap = associated_presentation(&m, 2, &Guards::default()).unwrap();
        let p = &ap.presentation;
        let names: Vec<&str> = p
            .signature
            .symbols()
            .iter()
            .map(|s| s.name.as_str())
            .collect();
        for want in ["ε/0", "0/1", "00/2", "01/2", "10/2", "11/2"] {
            assert!(names.contains(&want), "{want}");
        }
        assert_eq!(ap.order_axioms, 0);
        let all: Vec<String> = p.axioms.iter().map(|a| show(p, a)).collect();
        // k = ("0", "1"): 2 -> T 2 applied to "01" is "01" again
        assert!(all.contains(&"Eq (01/2 x0 x1) (01/2 (0/2 x0 x1) (1/2 x0 x1))".to_string()));
        // k = ("01", "10") applied to "01" leaves the length budget
        assert!(ap.skipped > 0);
        assert!(!all.iter().any(|s| s.contains("0110")));
    }

    #[test]
    fn bottom_unit_has_order_axioms() {
        let m = WordMonad::new(WordOrder::BottomUnit, 2);
        let ap = associated_presentation(&m, 1, &Guards::default()).unwrap();
        let p = &ap.presentation;
        let leqs: Vec<String> = p
            .axioms
            .iter()
            .filter(|a| a.kind == AxiomKind::Leq)
            .map(|a| show(p, a))
            .collect();
        assert!(
            leqs.contains(&"Leq (ε/1 x0) (0/1 x0)".to_string()),
            "{leqs:?}"
        );
        assert_eq!(ap.order_axioms, 3);
    }
}
