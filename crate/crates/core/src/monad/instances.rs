use std::sync::Arc;

use super::{Applied, MonadError, OrderedMonad};
use crate::finposet::FinPoset;
use crate::guard::{saturating_pow, Guards};
use crate::sigterm::{format_term, term_leq, Signature, Term, VarNames};
use crate::variety::{bottom_unit_word_leq, pointwise_word_leq, words_up_to};

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityMonad;

impl OrderedMonad for IdentityMonad {
    type Elem = usize;

    fn name(&self) -> String {
        "identity".into()
    }

    fn elements(&self, base: &FinPoset, _: &Guards) -> Result<Vec<usize>, MonadError> {
        Ok((0..base.len()).collect())
    }

    fn leq(&self, base: &FinPoset, a: &usize, b: &usize) -> bool {
        base.leq(*a, *b)
    }

    fn unit(&self, _: &FinPoset, x: usize) -> usize {
        x
    }

    fn map(&self, _: &FinPoset, _: &FinPoset, f: &[usize], e: &usize) -> usize {
        f[*e]
    }

    fn map_partial(
        &self,
        _: &FinPoset,
        _: &FinPoset,
        f: &[Option<usize>],
        e: &usize,
    ) -> Option<usize> {
        f[*e]
    }

    fn flatten(&self, _: &FinPoset, inner: &Applied<usize>, outer: &usize) -> Option<usize> {
        Some(inner.elems[*outer])
    }

    fn label(&self, base: &FinPoset, e: &usize) -> String {
        base.label(*e).to_string()
    }
}

/// Which tree monad: all terms of a signature, the contextual monad whose
/// binary `α(u0, u1)` exists only for `u0 <= u1`, or the `+`/`*` monad
/// where additionally `t + s <= t * s` whenever `t <= s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeFlavor {
    Free(Arc<Signature>),
    Contextual,
    PlusStar,
}

/// Trees of depth `<= depth` over the generators.
#[derive(Debug, Clone)]
pub struct TreeMonad {
    flavor: TreeFlavor,
    sig: Arc<Signature>,
    depth: usize,
}

impl TreeMonad {
    pub fn free(sig: Arc<Signature>, depth: usize) -> Self {
        TreeMonad {
            flavor: TreeFlavor::Free(sig.clone()),
            sig,
            depth,
        }
    }

    pub fn contextual(depth: usize) -> Self {
        TreeMonad {
            flavor: TreeFlavor::Contextual,
            sig: Arc::new(Signature::of(&[("α", 2)])),
            depth,
        }
    }

    pub fn plus_star(depth: usize) -> Self {
        TreeMonad {
            flavor: TreeFlavor::PlusStar,
            sig: Arc::new(Signature::of(&[("+", 2), ("*", 2)])),
            depth,
        }
    }

    pub fn flavor(&self) -> &TreeFlavor {
        &self.flavor
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn term_leq(&self, base: &FinPoset, a: &Term, b: &Term) -> bool {
        match self.flavor {
            TreeFlavor::PlusStar => plus_star_leq(base, a, b),
            _ => term_leq(a, b, base),
        }
    }

    /// Apps over `prev`, in symbol order with the last argument varying
    /// fastest.
    fn layer(
        &self,
        base: &FinPoset,
        prev: &[Term],
        guards: &Guards,
        visit: &mut dyn FnMut(Term),
    ) -> Result<usize, MonadError> {
        let total = (0..self.sig.len()).fold(base.len(), |acc, f| {
            acc.saturating_add(saturating_pow(prev.len(), self.sig.arity(f)))
        });
        guards.stream(total)?;
        let mut count = 0;
        for x in 0..base.len() {
            visit(Term::Var(x));
            count += 1;
        }
        for f in 0..self.sig.len() {
            let k = self.sig.arity(f);
            let mut idx = vec![0usize; k];
            if k > 0 && prev.is_empty() {
                continue;
            }
            loop {
                let ok = self.flavor != TreeFlavor::Contextual
                    || term_leq(&prev[idx[0]], &prev[idx[1]], base);
                if ok {
                    visit(Term::App(f, idx.iter().map(|&i| prev[i].clone()).collect()));
                    count += 1;
                }
                if !advance(&mut idx, prev.len()) {
                    break;
                }
            }
        }
        Ok(count)
    }
}

/// Odometer step, last digit fastest; false after the final tuple.
fn advance(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// The least order on `+`/`*` trees containing the generator order, making
/// both operations monotone and putting `t + s <= t * s` for `t <= s`.
/// Symbol `0` is `+` and `1` is `*`.
pub fn plus_star_leq(x: &FinPoset, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(a), Term::Var(b)) => x.leq(*a, *b),
        (Term::App(f, xs), Term::App(g, ys)) if f == g => {
            xs.iter().zip(ys).all(|(a, b)| plus_star_leq(x, a, b))
        }
        (Term::App(0, xs), Term::App(1, ys)) => {
            plus_star_leq(x, &xs[0], &ys[0])
                && plus_star_leq(x, &xs[1], &ys[1])
                && plus_star_leq(x, &xs[0], &ys[1])
        }
        _ => false,
    }
}

impl OrderedMonad for TreeMonad {
    type Elem = Term;

    fn name(&self) -> String {
        match self.flavor {
            TreeFlavor::Free(_) => "term".into(),
            TreeFlavor::Contextual => "ctx-partial".into(),
            TreeFlavor::PlusStar => "plus-star".into(),
        }
    }

    fn elements(&self, base: &FinPoset, guards: &Guards) -> Result<Vec<Term>, MonadError> {
        let mut out = Vec::new();
        self.visit_elements(base, guards, &mut |t| out.push(t))?;
        Ok(out)
    }

    fn visit_elements(
        &self,
        base: &FinPoset,
        guards: &Guards,
        visit: &mut dyn FnMut(Term),
    ) -> Result<usize, MonadError> {
        if self.depth == 0 {
            (0..base.len()).for_each(|x| visit(Term::Var(x)));
            return Ok(base.len());
        }
        let mut prev: Vec<Term> = (0..base.len()).map(Term::Var).collect();
        for _ in 1..self.depth {
            let mut next = Vec::new();
            self.layer(base, &prev, guards, &mut |t| next.push(t))?;
            guards.carrier(next.len())?;
            prev = next;
        }
        self.layer(base, &prev, guards, visit)
    }

    fn leq(&self, base: &FinPoset, a: &Term, b: &Term) -> bool {
        self.term_leq(base, a, b)
    }

    fn unit(&self, _: &FinPoset, x: usize) -> Term {
        Term::Var(x)
    }

    fn map(&self, _: &FinPoset, _: &FinPoset, f: &[usize], e: &Term) -> Term {
        e.map_vars(&|v| f[v])
    }

    fn map_partial(
        &self,
        _: &FinPoset,
        _: &FinPoset,
        f: &[Option<usize>],
        e: &Term,
    ) -> Option<Term> {
        if e.vars().iter().any(|&v| f[v].is_none()) {
            return None;
        }
        Some(e.map_vars(&|v| f[v].expect("checked")))
    }

    fn flatten(&self, _: &FinPoset, inner: &Applied<Term>, outer: &Term) -> Option<Term> {
        let t = outer.substitute_with(&|v| inner.elems[v].clone());
        (t.depth() <= self.depth).then_some(t)
    }

    fn label(&self, base: &FinPoset, e: &Term) -> String {
        format_term(e, &self.sig, VarNames::Labels(base.labels()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    /// Equal length, letterwise `<=`: the free ordered monoid.
    Pointwise,
    /// The empty word is least: the free monoid with `e <= x`.
    BottomUnit,
}

/// Words of length `<= length` over the generators.
#[derive(Debug, Clone, Copy)]
pub struct WordMonad {
    pub order: WordOrder,
    pub length: usize,
}

impl WordMonad {
    pub fn new(order: WordOrder, length: usize) -> Self {
        WordMonad { order, length }
    }
}

/// Letters are concatenated when every label is one character other than
/// `ε`; otherwise joined by `·`, with `ε` and labels containing `·` or `[`
/// bracketed.
fn word_label(w: &[usize], letters: &[String]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    if letters.iter().all(|l| l.chars().count() == 1 && l != "ε") {
        return w.iter().map(|&a| letters[a].as_str()).collect();
    }
    w.iter()
        .map(|&a| {
            let l = &letters[a];
            if l == "ε" || l.contains('·') || l.contains('[') {
                format!("[{l}]")
            } else {
                l.clone()
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

impl OrderedMonad for WordMonad {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        match self.order {
            WordOrder::Pointwise => "word-pointwise".into(),
            WordOrder::BottomUnit => "word-bottom-unit".into(),
        }
    }

    fn elements(&self, base: &FinPoset, guards: &Guards) -> Result<Vec<Vec<usize>>, MonadError> {
        let n = base.len();
        let total =
            (0..=self.length).fold(0usize, |acc, k| acc.saturating_add(saturating_pow(n, k)));
        guards.stream(total)?;
        Ok(words_up_to(n, self.length))
    }

    fn leq(&self, base: &FinPoset, a: &Vec<usize>, b: &Vec<usize>) -> bool {
        match self.order {
            WordOrder::Pointwise => pointwise_word_leq(base, a, b),
            WordOrder::BottomUnit => bottom_unit_word_leq(base, a, b),
        }
    }

    fn unit(&self, _: &FinPoset, x: usize) -> Vec<usize> {
        vec![x]
    }

    fn map(&self, _: &FinPoset, _: &FinPoset, f: &[usize], e: &Vec<usize>) -> Vec<usize> {
        e.iter().map(|&a| f[a]).collect()
    }

    fn map_partial(
        &self,
        _: &FinPoset,
        _: &FinPoset,
        f: &[Option<usize>],
        e: &Vec<usize>,
    ) -> Option<Vec<usize>> {
        e.iter().map(|&a| f[a]).collect()
    }

    fn flatten(
        &self,
        _: &FinPoset,
        inner: &Applied<Vec<usize>>,
        outer: &Vec<usize>,
    ) -> Option<Vec<usize>> {
        let w: Vec<usize> = outer
            .iter()
            .flat_map(|&i| inner.elems[i].iter().copied())
            .collect();
        (w.len() <= self.length).then_some(w)
    }

    fn label(&self, base: &FinPoset, e: &Vec<usize>) -> String {
        word_label(e, base.labels())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BElem {
    Bot,
    Gen(usize),
    Top,
}

/// Adjoins a fresh least and greatest element. Finite, so untruncated.
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundedMonad;

impl OrderedMonad for BoundedMonad {
    type Elem = BElem;

    fn name(&self) -> String {
        "bounded-poset".into()
    }

    fn elements(&self, base: &FinPoset, _: &Guards) -> Result<Vec<BElem>, MonadError> {
        let mut v = vec![BElem::Bot];
        v.extend((0..base.len()).map(BElem::Gen));
        v.push(BElem::Top);
        Ok(v)
    }

    fn leq(&self, base: &FinPoset, a: &BElem, b: &BElem) -> bool {
        match (a, b) {
            (BElem::Bot, _) | (_, BElem::Top) => true,
            (BElem::Gen(p), BElem::Gen(q)) => base.leq(*p, *q),
            _ => false,
        }
    }

    fn unit(&self, _: &FinPoset, x: usize) -> BElem {
        BElem::Gen(x)
    }

    fn map(&self, _: &FinPoset, _: &FinPoset, f: &[usize], e: &BElem) -> BElem {
        match e {
            BElem::Gen(x) => BElem::Gen(f[*x]),
            other => other.clone(),
        }
    }

    fn map_partial(
        &self,
        _: &FinPoset,
        _: &FinPoset,
        f: &[Option<usize>],
        e: &BElem,
    ) -> Option<BElem> {
        Some(match e {
            BElem::Gen(x) => BElem::Gen(f[*x]?),
            other => other.clone(),
        })
    }

    fn flatten(&self, _: &FinPoset, inner: &Applied<BElem>, outer: &BElem) -> Option<BElem> {
        Some(match outer {
            BElem::Gen(i) => inner.elems[*i].clone(),
            other => other.clone(),
        })
    }

    fn label(&self, base: &FinPoset, e: &BElem) -> String {
        match e {
            BElem::Bot => "⊥".into(),
            BElem::Top => "⊤".into(),
            BElem::Gen(x) => {
                let l = base.label(*x);
                if l == "⊥" || l == "⊤" || l.starts_with('⟨') {
                    format!("⟨{l}⟩")
                } else {
                    l.to_string()
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitrel::BitRelation;
    use crate::finposet::poset_bank;
    use crate::monad::apply;

    /// Least fixpoint of the generating clauses over an explicit term list.
    fn plus_star_oracle(x: &FinPoset, terms: &[Term]) -> BitRelation {
        let n = terms.len();
        let pos = |t: &Term| terms.iter().position(|s| s == t);
        let mut r = BitRelation::new(n);
        loop {
            let before = r.count();
            for i in 0..n {
                for j in 0..n {
                    let holds = match (&terms[i], &terms[j]) {
                        (Term::Var(a), Term::Var(b)) => x.leq(*a, *b),
                        (Term::App(f, xs), Term::App(g, ys)) => {
                            let kids = |a: &Term, b: &Term| match (pos(a), pos(b)) {
                                (Some(p), Some(q)) => r.get(p, q),
                                _ => false,
                            };
                            (f == g && kids(&xs[0], &ys[0]) && kids(&xs[1], &ys[1]))
                                || (*f == 0 && *g == 1 && xs == ys && kids(&xs[0], &xs[1]))
                        }
                        _ => false,
                    };
                    if holds {
                        r.insert(i, j);
                    }
                }
            }
            r.close();
            if r.count() == before {
                return r;
            }
        }
    }

    #[test]
    fn plus_star_closed_form_matches_fixpoint() {
        for x in poset_bank(2) {
            let m = TreeMonad::plus_star(2);
            let terms = m.elements(&x, &Guards::default()).unwrap();
            let oracle = plus_star_oracle(&x, &terms);
            for i in 0..terms.len() {
                for j in 0..terms.len() {
                    assert_eq!(
                        plus_star_leq(&x, &terms[i], &terms[j]),
                        oracle.get(i, j),
                        "{:?} {:?}",
                        terms[i],
                        terms[j]
                    );
                }
            }
        }
    }

    #[test]
    fn contextual_needs_ordered_arguments() {
        let m = TreeMonad::contextual(1);
        let chain = FinPoset::chain(2);
        let labels: Vec<String> = apply(&m, &chain, &Guards::default())
            .unwrap()
            .poset
            .labels()
            .to_vec();
        assert_eq!(labels, ["x0", "x1", "(α x0 x0)", "(α x0 x1)", "(α x1 x1)"]);
        let disc = FinPoset::discrete_labeled(vec!["x0".into(), "x1".into()]).unwrap();
        assert_eq!(m.elements(&disc, &Guards::default()).unwrap().len(), 4);
    }

    #[test]
    fn tree_counts_follow_the_layer_recursion() {
        let m = TreeMonad::plus_star(2);
        let x = FinPoset::chain(2);
        // depth 1: 2 + 2*4 = 10; depth 2: 2 + 2*100 = 202
        assert_eq!(m.elements(&x, &Guards::default()).unwrap().len(), 202);
    }

    #[test]
    fn word_labels_stay_distinct() {
        let letters = vec!["a·b".to_string(), "a".into(), "b".into()];
        assert_ne!(word_label(&[0], &letters), word_label(&[1, 2], &letters));
        assert_eq!(word_label(&[], &letters), "ε");
        let nested = vec!["ε".to_string(), "0".into()];
        assert_ne!(word_label(&[0], &nested), word_label(&[], &nested));
        let single = vec!["0".to_string(), "1".into()];
        assert_eq!(word_label(&[0, 1, 1], &single), "011");
    }

    #[test]
    fn bounded_labels_nest() {
        let g = Guards::default();
        let b = BoundedMonad;
        let tx = apply(&b, &FinPoset::discrete(1), &g).unwrap();
        let ttx = apply(&b, &tx.poset, &g).unwrap();
        assert_eq!(ttx.poset.labels(), ["⊥", "⟨⊥⟩", "0", "⟨⊤⟩", "⊤"]);
    }
}
