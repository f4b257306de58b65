use std::sync::Arc;

use serde::Serialize;

use super::laws::describe;
use super::{
    apply, BElem, BoundedMonad, ContinuationMonad, LawReport, MonadError, OrderedMonad, TreeMonad,
    WordMonad, WordOrder,
};
use crate::finposet::{monotone_maps_unguarded, FinPoset};
use crate::guard::Guards;
use crate::sigterm::{format_term, Signature, Term, VarNames};
use crate::variety::{
    saturate_free, Builtin, NormalForm, Presentation, SaturationParams, VarietyError,
};

/// Same shape as a law report: violations by square, plus coverage.
pub type MorphismReport = LawReport;

/// Checks that `b` is a monad morphism `S -> T` on the test posets:
/// monotone components, `b ∘ η^S = η^T`, naturality along all monotone
/// maps between test posets, and `b ∘ μ^S = μ^T ∘ T b ∘ b_S` wherever
/// both sides are defined. `b(X, e)` may be undefined past a truncation.
pub fn check_morphism<S, T, B>(
    src: &S,
    tgt: &T,
    b: B,
    tests: &[FinPoset],
    guards: &Guards,
) -> MorphismReport
where
    S: OrderedMonad,
    T: OrderedMonad,
    B: Fn(&FinPoset, &S::Elem) -> Option<T::Elem>,
{
    let mut r = LawReport {
        monad: format!("{} -> {}", src.name(), tgt.name()),
        ..LawReport::default()
    };
    let mut applied = Vec::new();
    for x in tests {
        match (apply(src, x, guards), apply(tgt, x, guards)) {
            (Ok(s), Ok(t)) => applied.push(Some((s, t))),
            (Err(e), _) | (_, Err(e)) => {
                r.coverage.guarded.push(format!("{}: {e}", describe(x)));
                applied.push(None);
            }
        }
    }
    for (i, x) in tests.iter().enumerate() {
        let Some((sx, tx)) = &applied[i] else {
            continue;
        };
        let name = describe(x);
        let bx: Vec<Option<T::Elem>> = sx.elems.iter().map(|e| b(x, e)).collect();
        let bidx: Vec<Option<usize>> = bx
            .iter()
            .map(|v| v.as_ref().and_then(|v| tx.find(v)))
            .collect();
        for (a, c) in sx.poset.relation().pairs() {
            match (&bx[a], &bx[c]) {
                (Some(p), Some(q)) => {
                    r.coverage.hit("monotone-component");
                    if !tgt.leq(x, p, q) {
                        r.violate(
                            "monotone-component",
                            &name,
                            format!("{} <= {}", sx.poset.label(a), sx.poset.label(c)),
                        );
                    }
                }
                _ => r.coverage.skipped += 1,
            }
        }
        for p in 0..x.len() {
            r.coverage.hit("unit");
            if b(x, &src.unit(x, p)) != Some(tgt.unit(x, p)) {
                r.violate("unit", &name, x.label(p).to_string());
            }
        }
        for y in tests {
            for f in monotone_maps_unguarded(x, y) {
                for (e, be) in sx.elems.iter().zip(&bx) {
                    let lhs = b(y, &src.map(x, y, &f, e));
                    let rhs = be.as_ref().map(|v| tgt.map(x, y, &f, v));
                    match (lhs, rhs) {
                        (Some(l), Some(q)) => {
                            r.coverage.hit("naturality");
                            if l != q {
                                r.violate(
                                    "naturality",
                                    &format!("{name} -> {} by {f:?}", describe(y)),
                                    sx.poset.label(sx.find(e).expect("own element")).to_string(),
                                );
                            }
                        }
                        _ => r.coverage.skipped += 1,
                    }
                }
            }
        }
        let ssx = match apply(src, &sx.poset, guards) {
            Ok(v) => v,
            Err(e) => {
                r.coverage.guarded.push(format!("S S {name}: {e}"));
                continue;
            }
        };
        for tau in &ssx.elems {
            let lhs = src.flatten(x, sx, tau).and_then(|v| b(x, &v));
            let rhs = b(&sx.poset, tau)
                .and_then(|v| tgt.map_partial(&sx.poset, &tx.poset, &bidx, &v))
                .and_then(|v| tgt.flatten(x, tx, &v));
            match (lhs, rhs) {
                (Some(l), Some(q)) => {
                    r.coverage.hit("multiplication");
                    if l != q {
                        r.violate("multiplication", &name, src.label(&sx.poset, tau));
                    }
                }
                _ => r.coverage.skipped += 1,
            }
        }
    }
    r
}

/// Replaces every `ω` (symbol 0 of arity `n`) by `u`, recursively.
pub fn unfold_term(u: &Term, t: &Term) -> Term {
    match t {
        Term::Var(x) => Term::Var(*x),
        Term::App(_, args) => {
            let subs: Vec<Term> = args.iter().map(|a| unfold_term(u, a)).collect();
            u.substitute(&subs)
        }
    }
}

/// Checks `ũ: T_Ω -> T_Σ` for `Ω = {ω/n}` on the test posets. Source trees
/// have depth `<= depth`; targets get room for the full unfolding.
pub fn term_monad_morphism(
    u: &Term,
    n: usize,
    sig: Arc<Signature>,
    depth: usize,
    tests: &[FinPoset],
    guards: &Guards,
) -> Result<MorphismReport, MonadError> {
    u.check(&sig, n).map_err(VarietyError::from)?;
    let omega = Arc::new(Signature::of(&[("ω", n)]));
    let src = TreeMonad::free(omega, depth);
    let tgt = TreeMonad::free(sig, depth * u.depth().max(1));
    Ok(check_morphism(
        &src,
        &tgt,
        |_, t| Some(unfold_term(u, t)),
        tests,
        guards,
    ))
}

/// The quotient `c_V: T_Σ -> T_V` for a presentation, on the test posets.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub builtin: Option<&'static str>,
    /// No builtin normal form and saturation not flagged exact.
    pub approximate: bool,
    pub surjective: bool,
    pub axiom_checks: usize,
    pub axiom_failures: Vec<String>,
    /// Full monad-morphism check, available for builtins.
    pub morphism: Option<MorphismReport>,
}

impl QuotientReport {
    pub fn ok(&self) -> bool {
        self.surjective
            && self.axiom_failures.is_empty()
            && self.morphism.as_ref().is_none_or(|m| m.ok())
    }
}

/// `ω`-trees over `x` used to test `c ∘ ũ0 <= c ∘ ũ1`: depth 2 when small,
/// else depth 1.
fn omega_trees(n: usize, x: &FinPoset) -> Vec<Term> {
    let omega = Arc::new(Signature::of(&[("ω", n)]));
    let small = Guards {
        max_stream: 20_000,
        ..Guards::default()
    };
    TreeMonad::free(omega.clone(), 2)
        .elements(x, &small)
        .or_else(|_| TreeMonad::free(omega, 1).elements(x, &small))
        .unwrap_or_else(|_| (0..x.len()).map(Term::Var).collect())
}

/// Checks `c_V`: surjective on every test poset and, for each axiom
/// `u0 <= u1`, `c(ũ0(t)) <= c(ũ1(t))` for `ω`-trees `t`. Builtins use their
/// normal forms (and get a full morphism check); other presentations use
/// [`saturate_free`] at `depth`, marked approximate unless exact.
pub fn variety_quotient_morphism(
    p: &Presentation,
    tests: &[FinPoset],
    depth: usize,
    subst_depth: usize,
    guards: &Guards,
) -> Result<QuotientReport, MonadError> {
    let ineqs = p.inequations();
    let mut rep = QuotientReport {
        builtin: None,
        approximate: false,
        surjective: true,
        axiom_checks: 0,
        axiom_failures: Vec::new(),
        morphism: None,
    };
    let src = TreeMonad::free(p.signature.clone(), depth);
    if let Some(bi) = Builtin::recognize(p) {
        rep.builtin = Some(bi.name());
        for x in tests {
            for iq in &ineqs {
                for t in omega_trees(iq.n_vars, x) {
                    rep.axiom_checks += 1;
                    let (l, r) = (unfold_term(&iq.lhs, &t), unfold_term(&iq.rhs, &t));
                    if !bi.nf_leq(x, &bi.normal_form(&l), &bi.normal_form(&r)) {
                        rep.axiom_failures.push(format!(
                            "{} on {}",
                            iq.display(&p.signature),
                            describe(x)
                        ));
                    }
                }
            }
        }
        let length = 1usize << depth.min(16);
        rep.morphism = Some(match bi {
            Builtin::BoundedPoset => {
                let tgt = BoundedMonad;
                rep.surjective = surjective(&src, &tgt, tests, guards, |t| bounded_nf(bi, t))?;
                check_morphism(&src, &tgt, |_, t| Some(bounded_nf(bi, t)), tests, guards)
            }
            _ => {
                let order = if bi == Builtin::OrderedMonoid {
                    WordOrder::Pointwise
                } else {
                    WordOrder::BottomUnit
                };
                let tgt = WordMonad::new(order, length);
                rep.surjective = surjective(&src, &tgt, tests, guards, |t| word_nf(bi, t))?;
                check_morphism(
                    &src,
                    &tgt,
                    |_, t| Some(word_nf(bi, t)).filter(|w| w.len() <= length),
                    tests,
                    guards,
                )
            }
        });
        return Ok(rep);
    }
    for x in tests {
        let base = Arc::new(x.clone());
        let params = SaturationParams {
            guards: *guards,
            ..SaturationParams::new(depth, subst_depth)
        };
        let fa = match saturate_free(p, base, &params) {
            Ok(fa) => fa,
            Err(VarietyError::Budget(fa)) => *fa,
            Err(e) => return Err(e.into()),
        };
        rep.approximate |= !fa.exact;
        for iq in &ineqs {
            for t in omega_trees(iq.n_vars, x) {
                let (l, r) = (unfold_term(&iq.lhs, &t), unfold_term(&iq.rhs, &t));
                let (Some(a), Some(b)) = (fa.space.id_of(&l), fa.space.id_of(&r)) else {
                    continue;
                };
                rep.axiom_checks += 1;
                if !fa.leq_terms(a, b) {
                    rep.axiom_failures.push(format!(
                        "{} <= {} on {}",
                        format_term(&l, &p.signature, VarNames::Labels(x.labels())),
                        format_term(&r, &p.signature, VarNames::Labels(x.labels())),
                        describe(x)
                    ));
                }
            }
        }
    }
    Ok(rep)
}

fn word_nf(bi: Builtin, t: &Term) -> Vec<usize> {
    match bi.normal_form(t) {
        NormalForm::Word(w) => w,
        other => unreachable!("word builtin produced {other:?}"),
    }
}

fn bounded_nf(bi: Builtin, t: &Term) -> BElem {
    match bi.normal_form(t) {
        NormalForm::Bottom => BElem::Bot,
        NormalForm::Top => BElem::Top,
        NormalForm::Gen(g) => BElem::Gen(g),
        NormalForm::Word(_) => unreachable!("bounded builtin produced a word"),
    }
}

fn surjective<S: OrderedMonad, T: OrderedMonad>(
    src: &S,
    tgt: &T,
    tests: &[FinPoset],
    guards: &Guards,
    c: impl Fn(&S::Elem) -> T::Elem,
) -> Result<bool, MonadError> {
    for x in tests {
        let tx = apply(tgt, x, guards)?;
        let mut hit = vec![false; tx.len()];
        for e in src.elements(x, guards)? {
            if let Some(i) = tx.find(&c(&e)) {
                hit[i] = true;
            }
        }
        if hit.contains(&false) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `None` when `alpha` is an algebra for `m` on `a`, else a witness.
/// `alpha` is a table over `T a` in element order.
pub fn check_algebra<M: OrderedMonad>(
    m: &M,
    a: &FinPoset,
    alpha: &[usize],
    guards: &Guards,
) -> Result<Option<String>, MonadError> {
    let ta = apply(m, a, guards)?;
    if alpha.len() != ta.len() || alpha.iter().any(|&v| v >= a.len()) {
        return Err(MonadError::Invalid(format!(
            "structure map needs {} entries into {} elements",
            ta.len(),
            a.len()
        )));
    }
    if !ta.poset.is_monotone(a, alpha) {
        return Ok(Some("structure map is not monotone".into()));
    }
    for p in 0..a.len() {
        let u = ta.find(&m.unit(a, p)).expect("unit within truncation");
        if alpha[u] != p {
            return Ok(Some(format!(
                "α(η({})) = {}",
                a.label(p),
                a.label(alpha[u])
            )));
        }
    }
    let tta = apply(m, &ta.poset, guards)?;
    for tau in &tta.elems {
        let Some(flat) = m.flatten(a, &ta, tau).and_then(|v| ta.find(&v)) else {
            continue;
        };
        let pushed = m.map(&ta.poset, a, alpha, tau);
        let Some(j) = ta.find(&pushed) else { continue };
        if alpha[flat] != alpha[j] {
            return Ok(Some(format!(
                "α ∘ μ and α ∘ Tα differ at {}",
                m.label(&ta.poset, tau)
            )));
        }
    }
    Ok(None)
}

/// The morphism `α̂: T -> ⟨A, A⟩` of an algebra `α: T A -> A`, with
/// `π_f ∘ α̂_X = α ∘ T f`, checked on the test posets after the algebra
/// laws.
pub fn algebra_to_morphism<M: OrderedMonad>(
    m: &M,
    a: Arc<FinPoset>,
    alpha: &[usize],
    tests: &[FinPoset],
    guards: &Guards,
) -> Result<MorphismReport, MonadError> {
    if let Some(w) = check_algebra(m, &a, alpha, guards)? {
        return Err(MonadError::Invalid(format!("not an algebra: {w}")));
    }
    let ta = apply(m, &a, guards)?;
    let cont = ContinuationMonad::new(a.clone());
    let hat = |x: &FinPoset, t: &M::Elem| -> Option<Vec<usize>> {
        cont.coordinates(x)
            .iter()
            .map(|f| ta.find(&m.map(x, &a, f, t)).map(|i| alpha[i]))
            .collect()
    };
    Ok(check_morphism(m, &cont, hat, tests, guards))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finposet::poset_bank;
    use crate::sigterm::parse_term;

    fn monoid() -> Arc<Signature> {
        Arc::new(Signature::of(&[("mul", 2), ("e", 0)]))
    }

    #[test]
    fn unfolding_replaces_each_omega() {
        let om = Signature::of(&[("ω", 2)]);
        let sig = monoid();
        let t = parse_term(
            "(ω a (ω b c))",
            &om,
            VarNames::Labels(&["a".into(), "b".into(), "c".into()]),
        )
        .unwrap();
        let u = parse_term("(mul x0 x1)", &sig, VarNames::Supply).unwrap();
        let got = unfold_term(&u, &t);
        assert_eq!(
            format_term(&got, &sig, VarNames::Supply),
            "(mul x0 (mul x1 x2))"
        );
        let proj = unfold_term(&Term::Var(0), &t);
        assert_eq!(proj, Term::Var(0));
    }

    #[test]
    fn term_morphisms_commute() {
        let tests = poset_bank(2);
        let g = Guards::default();
        let u = Term::app(0, [Term::Var(0), Term::Var(1)]);
        let r = term_monad_morphism(&u, 2, monoid(), 2, &tests, &g).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert!(r.coverage.checked["multiplication"] > 0);
        let r = term_monad_morphism(&Term::Var(0), 1, monoid(), 2, &tests, &g).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
    }

    #[test]
    fn broken_component_is_caught() {
        let tests = poset_bank(2);
        let src = TreeMonad::free(Arc::new(Signature::of(&[("ω", 2)])), 1);
        let tgt = TreeMonad::free(monoid(), 1);
        // swaps the arguments of ω only on the 2-chain
        let r = check_morphism(
            &src,
            &tgt,
            |x, t| {
                let u = if x.is_discrete() {
                    Term::app(0, [Term::Var(0), Term::Var(1)])
                } else {
                    Term::app(0, [Term::Var(1), Term::Var(0)])
                };
                Some(unfold_term(&u, t))
            },
            &tests,
            &Guards::default(),
        );
        assert!(r.violations.iter().any(|v| v.law == "naturality"));
    }

    #[test]
    fn builtin_quotients() {
        let tests = poset_bank(2);
        let g = Guards::default();
        for bi in Builtin::ALL {
            let r = variety_quotient_morphism(&bi.presentation(), &tests, 2, 1, &g).unwrap();
            assert!(
                r.ok(),
                "{} {:?} {:?}",
                bi.name(),
                r.axiom_failures,
                r.morphism.map(|m| m.violations)
            );
            assert!(!r.approximate);
        }
    }

    #[test]
    fn empty_presentation_quotient_is_identity() {
        let p = Presentation::empty(monoid());
        let r = variety_quotient_morphism(&p, &poset_bank(1), 2, 1, &Guards::default()).unwrap();
        assert!(r.ok());
        assert_eq!(r.axiom_checks, 0);
    }

    fn max_algebra() -> (WordMonad, Arc<FinPoset>, Vec<usize>) {
        let m = WordMonad::new(WordOrder::Pointwise, 2);
        let a = Arc::new(FinPoset::chain_labeled(vec!["0".into(), "1".into()]).unwrap());
        let ta = apply(&m, &a, &Guards::default()).unwrap();
        let alpha = ta
            .elems
            .iter()
            .map(|w| w.iter().copied().max().unwrap_or(0))
            .collect();
        (m, a, alpha)
    }

    #[test]
    fn max_algebra_gives_a_morphism_into_continuations() {
        let (m, a, alpha) = max_algebra();
        let tests = vec![FinPoset::discrete(1), FinPoset::chain(2)];
        let r = algebra_to_morphism(&m, a, &alpha, &tests, &Guards::default()).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert!(r.coverage.checked["multiplication"] > 0);
    }

    #[test]
    fn non_algebras_are_rejected_first() {
        let (m, a, mut alpha) = max_algebra();
        // send the one-letter word "1" to 0: breaks α ∘ η = id
        let i = 2;
        alpha[i] = 0;
        assert!(
            algebra_to_morphism(&m, a, &alpha, &[FinPoset::discrete(1)], &Guards::default())
                .is_err()
        );
    }
}
