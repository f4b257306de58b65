//! Bounded saturation: a sound approximation of the free algebra of a
//! presentation on a finite poset of generators.

use std::sync::Arc;

use super::{Builtin, Inequation, Presentation, VarietyError};
use crate::bitrel::BitRelation;
use crate::finposet::{poset_reflection, FinPoset, FinPreorder};
use crate::guard::Guards;
use crate::sigterm::{Node, Term, TermSpace, VarNames};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationParams {
    /// Terms of depth `<= depth` make up the carrier.
    pub depth: usize,
    /// Axiom variables are replaced by terms of depth `<= subst_depth`.
    pub subst_depth: usize,
    pub guards: Guards,
}

impl SaturationParams {
    pub fn new(depth: usize, subst_depth: usize) -> Self {
        SaturationParams {
            depth,
            subst_depth,
            guards: Guards::default(),
        }
    }
}

/// The saturated preorder on depth-truncated terms and its reflection.
#[derive(Debug, Clone)]
pub struct FreeAlgebraApprox {
    pub presentation: Presentation,
    pub base: Arc<FinPoset>,
    pub depth: usize,
    pub subst_depth: usize,
    pub space: Arc<TermSpace>,
    /// Closed preorder on term indices.
    pub relation: BitRelation,
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    /// Classes labeled by their first term.
    pub poset: Arc<FinPoset>,
    /// Set only for a recognized builtin whose normal form agrees with the
    /// relation on the whole truncation.
    pub exact: bool,
    /// False when the round budget ran out before a fixpoint.
    pub complete: bool,
    pub rounds: usize,
}

impl FreeAlgebraApprox {
    pub fn leq_terms(&self, a: usize, b: usize) -> bool {
        self.relation.get(a, b)
    }

    pub fn class_of(&self, term: usize) -> usize {
        self.class_of[term]
    }

    pub fn term_label(&self, i: usize) -> String {
        self.space.label(i, VarNames::Labels(self.base.labels()))
    }

    /// Reflection of the relation restricted to terms of depth `<= k`.
    pub fn restrict_to_depth(&self, k: usize) -> FinPoset {
        let ids = self.space.ids_up_to_depth(k);
        let labels = ids.iter().map(|&i| self.term_label(i)).collect();
        let pre = FinPreorder::new(labels, self.relation.restrict(&ids))
            .expect("term labels are distinct");
        poset_reflection(&pre).poset
    }
}

/// Deepest position (number of enclosing applications) of each variable.
fn occurrence_depths(t: &Term, at: usize, out: &mut [Option<usize>]) {
    match t {
        Term::Var(x) => out[*x] = Some(out[*x].map_or(at, |d| d.max(at))),
        Term::App(_, args) => args.iter().for_each(|a| occurrence_depths(a, at + 1, out)),
    }
}

/// Adds every instance of `ineq` whose sides fit the truncation; returns
/// the number of instances visited.
fn add_instances(
    space: &TermSpace,
    ineq: &Inequation,
    params: &SaturationParams,
    rel: &mut BitRelation,
) -> Result<usize, VarietyError> {
    let d = params.depth;
    let mut occ = vec![None; ineq.n_vars];
    occurrence_depths(&ineq.lhs, 0, &mut occ);
    occurrence_depths(&ineq.rhs, 0, &mut occ);
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(ineq.n_vars);
    for o in &occ {
        match o {
            Some(at) if *at > d => return Ok(0),
            Some(at) => candidates.push(space.ids_up_to_depth(params.subst_depth.min(d - at))),
            // an unused variable does not change the instance
            None => candidates.push(if space.is_empty() {
                Vec::new()
            } else {
                vec![0]
            }),
        }
    }
    if candidates.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let total = candidates
        .iter()
        .fold(1usize, |acc, c| acc.saturating_mul(c.len()));
    params.guards.stream(total)?;
    let mut digits = vec![0usize; ineq.n_vars];
    let mut subst = vec![0usize; ineq.n_vars];
    for _ in 0..total {
        for (i, &k) in digits.iter().enumerate() {
            subst[i] = candidates[i][k];
        }
        if let (Some(l), Some(r)) = (
            space.instantiate(&ineq.lhs, &subst),
            space.instantiate(&ineq.rhs, &subst),
        ) {
            rel.set(l, r);
        }
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(total)
}

/// Applications grouped by symbol, with their children.
fn app_groups(space: &TermSpace) -> Vec<Vec<(usize, &[u32])>> {
    let mut groups: Vec<Vec<(usize, &[u32])>> = vec![Vec::new(); space.signature().len()];
    for i in 0..space.len() {
        if let Node::App(f, kids) = space.node(i) {
            if !kids.is_empty() {
                groups[*f].push((i, kids));
            }
        }
    }
    groups
}

/// One congruence pass: `σ(s_i) <= σ(t_i)` whenever every `s_i <= t_i`.
fn congruence_pass(groups: &[Vec<(usize, &[u32])>], rel: &mut BitRelation) -> usize {
    let mut added = 0;
    for g in groups {
        for &(a, ka) in g {
            for &(b, kb) in g {
                if rel.get(a, b) {
                    continue;
                }
                if ka
                    .iter()
                    .zip(kb)
                    .all(|(&x, &y)| rel.get(x as usize, y as usize))
                {
                    rel.set(a, b);
                    added += 1;
                }
            }
        }
    }
    added
}

/// Least preorder on the terms of depth `<= depth` containing the term
/// order, every axiom instance that fits, closed under operations and
/// transitivity; then its poset reflection.
///
/// Running out of `max_rounds` yields [`VarietyError::Budget`] carrying the
/// partial (still sound) result.
pub fn saturate_free(
    p: &Presentation,
    base: Arc<FinPoset>,
    params: &SaturationParams,
) -> Result<FreeAlgebraApprox, VarietyError> {
    let space = Arc::new(TermSpace::new(
        p.signature.clone(),
        base.len(),
        params.depth,
        &params.guards,
    )?);
    let mut rel = space.structural_order(&base);
    for ineq in p.inequations() {
        add_instances(&space, &ineq, params, &mut rel)?;
    }
    let groups = app_groups(&space);
    let mut rounds = 0;
    let complete = loop {
        rel.close();
        rounds += 1;
        if congruence_pass(&groups, &mut rel) == 0 {
            break true;
        }
        if rounds >= params.guards.max_rounds {
            rel.close();
            break false;
        }
    };
    drop(groups);
    let labels: Vec<String> = (0..space.len())
        .map(|i| space.label(i, VarNames::Labels(base.labels())))
        .collect();
    let pre = FinPreorder::new(labels, rel.clone()).expect("term labels are distinct");
    let refl = poset_reflection(&pre);
    let exact = complete && agrees_with_builtin(p, &base, &space, &rel);
    let approx = FreeAlgebraApprox {
        presentation: p.clone(),
        base,
        depth: params.depth,
        subst_depth: params.subst_depth,
        space,
        relation: rel,
        class_of: refl.class_of,
        representatives: refl.representatives,
        poset: Arc::new(refl.poset),
        exact,
        complete,
        rounds,
    };
    if complete {
        Ok(approx)
    } else {
        Err(VarietyError::Budget(Box::new(approx)))
    }
}

fn agrees_with_builtin(
    p: &Presentation,
    base: &FinPoset,
    space: &TermSpace,
    rel: &BitRelation,
) -> bool {
    let Some(b) = Builtin::recognize(p) else {
        return false;
    };
    let nfs: Vec<_> = (0..space.len())
        .map(|i| b.normal_form(&space.term(i)))
        .collect();
    (0..space.len())
        .all(|s| (0..space.len()).all(|t| rel.get(s, t) == b.nf_leq(base, &nfs[s], &nfs[t])))
}

/// Whether `rel` on the terms of `space` is closed under every operation
/// applied to componentwise related arguments.
pub fn check_admissible(space: &TermSpace, rel: &BitRelation) -> bool {
    let groups = app_groups(space);
    groups.iter().all(|g| {
        g.iter().all(|&(a, ka)| {
            g.iter().all(|&(b, kb)| {
                rel.get(a, b)
                    || !ka
                        .iter()
                        .zip(kb)
                        .all(|(&x, &y)| rel.get(x as usize, y as usize))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigterm::{parse_term, Signature, TermPoset};
    use crate::variety::Axiom;

    fn params(d: usize, b: usize) -> SaturationParams {
        SaturationParams::new(d, b)
    }

    #[test]
    fn empty_presentation_gives_term_order() {
        let sig = Arc::new(Signature::of(&[("mul", 2), ("e", 0)]));
        let x = Arc::new(FinPoset::chain(2));
        let f = saturate_free(&Presentation::empty(sig.clone()), x.clone(), &params(2, 1)).unwrap();
        let tp = TermPoset::new(sig, x, 2, &Guards::default()).unwrap();
        assert_eq!(f.poset.len(), tp.poset.len());
        assert_eq!(&f.relation, tp.poset.relation());
        assert!(!f.exact);
    }

    #[test]
    fn unit_below_gives_x_below_xy() {
        let p = Builtin::MonoidBottomUnit.presentation();
        let x = Arc::new(FinPoset::discrete_labeled(vec!["x".into()]).unwrap());
        let f = saturate_free(&p, x.clone(), &params(3, 2)).unwrap();
        let sig = &p.signature;
        let id = |s: &str| {
            f.space
                .id_of(&parse_term(s, sig, VarNames::Labels(x.labels())).unwrap())
                .unwrap()
        };
        assert!(f.leq_terms(id("x"), id("(mul x (mul x x))")));
        assert!(f.leq_terms(id("x"), id("(mul x e)")) && f.leq_terms(id("(mul x e)"), id("x")));
        assert!(f.leq_terms(id("e"), id("(mul x x)")));
        assert!(!f.leq_terms(id("(mul x x)"), id("x")));
    }

    #[test]
    fn saturated_relation_is_admissible() {
        let p = Builtin::OrderedMonoid.presentation();
        let f = saturate_free(&p, Arc::new(FinPoset::chain(2)), &params(2, 1)).unwrap();
        assert!(check_admissible(&f.space, &f.relation));
    }

    #[test]
    fn missing_congruence_detected() {
        let sig = Arc::new(Signature::of(&[("mul", 2)]));
        let space = TermSpace::new(sig, 2, 1, &Guards::default()).unwrap();
        let mut rel = BitRelation::identity(space.len());
        rel.set(0, 1);
        assert!(!check_admissible(&space, &rel));
        let order = space.structural_order(&FinPoset::chain(2));
        assert!(check_admissible(&space, &order));
    }

    #[test]
    fn bounded_poset_over_a_point_is_a_three_chain() {
        let p = Builtin::BoundedPoset.presentation();
        let f = saturate_free(&p, Arc::new(FinPoset::discrete(1)), &params(1, 1)).unwrap();
        assert!(crate::finposet::is_isomorphic(
            &f.poset,
            &FinPoset::chain(3)
        ));
        assert!(f.exact);
        let empty = saturate_free(&p, Arc::new(FinPoset::discrete(0)), &params(1, 1)).unwrap();
        assert!(crate::finposet::is_isomorphic(
            &empty.poset,
            &FinPoset::chain(2)
        ));
    }

    #[test]
    fn budget_exhaustion_returns_partial_result() {
        let p = Builtin::OrderedMonoid.presentation();
        let mut ps = params(2, 1);
        ps.guards.max_rounds = 1;
        match saturate_free(&p, Arc::new(FinPoset::chain(2)), &ps) {
            Err(VarietyError::Budget(partial)) => {
                assert!(!partial.complete && !partial.exact);
                assert!(partial.relation.is_reflexive());
            }
            Ok(f) => assert_eq!(f.rounds, 1),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn deeper_saturation_only_grows() {
        let sig = Arc::new(Signature::of(&[("mul", 2), ("e", 0)]));
        let mul = |a, b| Term::app(0, [a, b]);
        let p = Presentation::new(
            sig,
            vec![Axiom::leq(Term::Var(0), mul(Term::Var(0), Term::Var(1)))],
        )
        .unwrap();
        let x = Arc::new(FinPoset::discrete(1));
        let small = saturate_free(&p, x.clone(), &params(2, 1)).unwrap();
        let big = saturate_free(&p, x, &params(2, 2)).unwrap();
        assert!(small.relation.is_subset_of(&big.relation));
    }
}
