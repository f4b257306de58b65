use std::sync::Arc;

use super::{Inequation, VarietyError};
use crate::finposet::FinPoset;
use crate::guard::{saturating_pow, Guards};
use crate::sigterm::{Signature, Term};

/// A finite poset with one monotone operation table per symbol.
///
/// Tables are indexed mixed-radix, first argument most significant.
/// Entries may be undefined, which is how truncated free algebras
/// (words beyond the length budget) are represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlgebra {
    sig: Arc<Signature>,
    carrier: Arc<FinPoset>,
    ops: Vec<Vec<Option<usize>>>,
}

impl OrderedAlgebra {
    pub fn new(
        sig: Arc<Signature>,
        carrier: Arc<FinPoset>,
        ops: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, VarietyError> {
        if ops.len() != sig.len() {
            return Err(VarietyError::Format(format!(
                "{} operation tables for {} symbols",
                ops.len(),
                sig.len()
            )));
        }
        for (f, table) in ops.iter().enumerate() {
            let want = saturating_pow(carrier.len(), sig.arity(f));
            if table.len() != want {
                return Err(VarietyError::Table {
                    symbol: sig.name(f).to_string(),
                    msg: format!("table has {} entries, expected {want}", table.len()),
                });
            }
            if let Some(v) = table.iter().flatten().find(|&&v| v >= carrier.len()) {
                return Err(VarietyError::Table {
                    symbol: sig.name(f).to_string(),
                    msg: format!("value {v} outside the carrier"),
                });
            }
        }
        let alg = OrderedAlgebra { sig, carrier, ops };
        if let Some((f, args)) = alg.monotonicity_violation() {
            return Err(VarietyError::NotMonotone {
                symbol: alg.sig.name(f).to_string(),
                args: args
                    .iter()
                    .map(|&a| alg.carrier.label(a).to_string())
                    .collect(),
            });
        }
        Ok(alg)
    }

    /// Tabulates `op(symbol, args)`.
    pub fn from_fn(
        sig: Arc<Signature>,
        carrier: Arc<FinPoset>,
        guards: &Guards,
        op: impl Fn(usize, &[usize]) -> Option<usize>,
    ) -> Result<Self, VarietyError> {
        let n = carrier.len();
        let mut ops = Vec::with_capacity(sig.len());
        for f in 0..sig.len() {
            let k = sig.arity(f);
            let size = saturating_pow(n, k);
            guards.hom(size)?;
            let mut table = Vec::with_capacity(size);
            let mut args = vec![0usize; k];
            for idx in 0..size {
                decode(idx, n, &mut args);
                table.push(op(f, &args));
            }
            ops.push(table);
        }
        Self::new(sig, carrier, ops)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn carrier(&self) -> &Arc<FinPoset> {
        &self.carrier
    }

    pub fn op(&self, f: usize, args: &[usize]) -> Option<usize> {
        let n = self.carrier.len();
        let idx = args.iter().fold(0usize, |acc, &a| acc * n + a);
        self.ops[f][idx]
    }

    pub fn is_total(&self) -> bool {
        self.ops.iter().all(|t| t.iter().all(Option::is_some))
    }

    /// Evaluates `t` with variables interpreted by `env`.
    pub fn eval(&self, t: &Term, env: &[usize]) -> Option<usize> {
        match t {
            Term::Var(x) => Some(env[*x]),
            Term::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval(a, env))
                    .collect::<Option<Vec<_>>>()?;
                self.op(*f, &vals)
            }
        }
    }

    /// A symbol and argument tuple where raising one argument by a cover
    /// step lowers (or leaves incomparable) a defined result.
    fn monotonicity_violation(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.carrier.len();
        for f in 0..self.sig.len() {
            let k = self.sig.arity(f);
            let mut args = vec![0usize; k];
            for idx in 0..self.ops[f].len() {
                let Some(lo) = self.ops[f][idx] else { continue };
                decode(idx, n, &mut args);
                for i in 0..k {
                    let keep = args[i];
                    for up in self.carrier.relation().successors(keep) {
                        if up == keep {
                            continue;
                        }
                        args[i] = up;
                        if let Some(hi) = self.op(f, &args) {
                            if !self.carrier.leq(lo, hi) {
                                return Some((f, args));
                            }
                        }
                    }
                    args[i] = keep;
                }
            }
        }
        None
    }

    /// An assignment falsifying `ineq`, if any. Assignments where a side
    /// is undefined are skipped.
    pub fn counterexample(
        &self,
        ineq: &Inequation,
        guards: &Guards,
    ) -> Result<Option<Vec<usize>>, VarietyError> {
        let n = self.carrier.len();
        let total = saturating_pow(n, ineq.n_vars);
        guards.hom(total)?;
        let mut env = vec![0usize; ineq.n_vars];
        for idx in 0..total {
            decode(idx, n, &mut env);
            if let (Some(l), Some(r)) = (self.eval(&ineq.lhs, &env), self.eval(&ineq.rhs, &env)) {
                if !self.carrier.leq(l, r) {
                    return Ok(Some(env));
                }
            }
        }
        Ok(None)
    }

    pub fn satisfies(&self, ineq: &Inequation, guards: &Guards) -> Result<bool, VarietyError> {
        Ok(self.counterexample(ineq, guards)?.is_none())
    }

    pub fn satisfies_all(
        &self,
        ineqs: &[Inequation],
        guards: &Guards,
    ) -> Result<bool, VarietyError> {
        for i in ineqs {
            if !self.satisfies(i, guards)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn decode(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigterm::{extend_hom, TermPoset};
    use crate::variety::Builtin;

    fn max_monoid() -> OrderedAlgebra {
        let sig = Arc::new(Signature::of(&[("mul", 2), ("e", 0)]));
        let c = Arc::new(FinPoset::chain_labeled(vec!["0".into(), "1".into()]).unwrap());
        OrderedAlgebra::from_fn(sig, c, &Guards::default(), |f, a| {
            Some(if f == 0 { a[0].max(a[1]) } else { 0 })
        })
        .unwrap()
    }

    fn xor_monoid() -> OrderedAlgebra {
        let sig = Arc::new(Signature::of(&[("mul", 2), ("e", 0)]));
        let c = Arc::new(FinPoset::discrete(2));
        OrderedAlgebra::from_fn(sig, c, &Guards::default(), |f, a| {
            Some(if f == 0 { a[0] ^ a[1] } else { 0 })
        })
        .unwrap()
    }

    #[test]
    fn every_algebra_satisfies_reflexivity() {
        let g = Guards::default();
        let refl = Inequation::new(Term::Var(0), Term::Var(0));
        assert!(max_monoid().satisfies(&refl, &g).unwrap());
        assert!(xor_monoid().satisfies(&refl, &g).unwrap());
    }

    #[test]
    fn bounded_chain_satisfies_its_axioms() {
        let sig = Arc::new(Signature::of(&[("0", 0), ("1", 0)]));
        let c = Arc::new(FinPoset::chain(2));
        let a = OrderedAlgebra::from_fn(sig, c, &Guards::default(), |f, _| Some(f)).unwrap();
        let ax = Builtin::BoundedPoset.presentation().inequations();
        assert!(a.satisfies_all(&ax, &Guards::default()).unwrap());
    }

    #[test]
    fn xor_fails_unit_below() {
        // e <= x0 fails at x0 = 1
        let ineq = Inequation::new(Term::constant(1), Term::Var(0));
        let w = xor_monoid()
            .counterexample(&ineq, &Guards::default())
            .unwrap();
        assert_eq!(w, Some(vec![1]));
    }

    #[test]
    fn non_monotone_tables_rejected() {
        let sig = Arc::new(Signature::of(&[("neg", 1)]));
        let c = Arc::new(FinPoset::chain(2));
        let err =
            OrderedAlgebra::from_fn(sig, c, &Guards::default(), |_, a| Some(1 - a[0])).unwrap_err();
        assert!(matches!(err, VarietyError::NotMonotone { .. }));
    }

    #[test]
    fn extension_evaluates_recursively() {
        let a = max_monoid();
        let t = Term::app(0, [Term::Var(0), Term::Var(1)]);
        assert_eq!(extend_hom(&[0, 1], &a, &t), Some(1));
        assert_eq!(extend_hom(&[0, 1], &a, &Term::Var(0)), Some(0));
    }

    #[test]
    fn extension_is_monotone_on_term_order() {
        let a = max_monoid();
        let x = Arc::new(FinPoset::chain(2));
        let tp = TermPoset::new(a.signature().clone(), x, 2, &Guards::default()).unwrap();
        let vals: Vec<usize> = (0..tp.space.len())
            .map(|i| extend_hom(&[0, 1], &a, &tp.space.term(i)).unwrap())
            .collect();
        for (s, t) in tp.poset.relation().pairs() {
            assert!(a.carrier().leq(vals[s], vals[t]));
        }
    }

    #[test]
    fn homomorphic_tables_agreeing_on_generators_agree() {
        // any table h on depth-<=2 terms with h(x) = f(x) and
        // h(f(ts)) = op(h(ts)) is forced to be the extension
        let a = max_monoid();
        let x = Arc::new(FinPoset::discrete(2));
        let tp = TermPoset::new(a.signature().clone(), x, 2, &Guards::default()).unwrap();
        let space = &tp.space;
        for f in [[0usize, 0], [0, 1], [1, 0], [1, 1]] {
            let mut h = vec![usize::MAX; space.len()];
            let mut order: Vec<usize> = (0..space.len()).collect();
            order.sort_by_key(|&i| space.depth(i));
            for i in order {
                h[i] = match space.node(i) {
                    crate::sigterm::Node::Var(v) => f[*v],
                    crate::sigterm::Node::App(s, kids) => {
                        let args: Vec<usize> = kids.iter().map(|&k| h[k as usize]).collect();
                        a.op(*s, &args).unwrap()
                    }
                };
            }
            for i in 0..space.len() {
                assert_eq!(Some(h[i]), extend_hom(&f, &a, &space.term(i)));
            }
        }
    }
}
