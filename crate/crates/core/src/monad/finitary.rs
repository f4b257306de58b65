use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::laws::describe;
use super::{apply, arrow_table, unit_table, Applied, MonadError, OrderedMonad};
use crate::finposet::{canonical_presentation, coinserter, FinPoset, MonotoneMap, ParallelPair};
use crate::guard::Guards;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SfVerdict {
    Preserves,
    Fails,
    Inconclusive,
}

impl fmt::Display for SfVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SfVerdict::Preserves => "PRESERVES",
            SfVerdict::Fails => "FAILS",
            SfVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Why the comparison `v: Q -> T P` is not an isomorphism. Elements are
/// given by label: of `T P` for images, of `Q` for classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SfWitness {
    NotInImage {
        element: String,
    },
    NotInjective {
        first: String,
        second: String,
        image: String,
    },
    OrderNotReflected {
        lower: String,
        upper: String,
    },
    OrderNotPreserved {
        lower: String,
        upper: String,
    },
    NotWellDefined {
        first: String,
        second: String,
    },
}

impl fmt::Display for SfWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfWitness::NotInImage { element } => {
                write!(
                    f,
                    "the element {element} of TP does not lie in the image of Tc"
                )
            }
            SfWitness::NotInjective {
                first,
                second,
                image,
            } => {
                write!(f, "classes {first} and {second} of Q both map to {image}")
            }
            SfWitness::OrderNotReflected { lower, upper } => {
                write!(f, "{lower} <= {upper} holds in TP but not in Q")
            }
            SfWitness::OrderNotPreserved { lower, upper } => {
                write!(f, "{lower} <= {upper} holds in Q but not in TP")
            }
            SfWitness::NotWellDefined { first, second } => {
                write!(
                    f,
                    "{first} and {second} are identified in Q but differ under Tc"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SfReport {
    pub monad: String,
    pub poset: String,
    pub verdict: SfVerdict,
    pub witness: Option<SfWitness>,
    /// Why the check was inconclusive.
    pub reason: Option<String>,
    /// The coinserter `Q` of `T p0, T p1`, labeled by `T n` representatives.
    #[serde(skip)]
    pub coinserter: Option<Arc<FinPoset>>,
    /// `T P` as computed.
    #[serde(skip)]
    pub tp: Option<Arc<FinPoset>>,
}

impl SfReport {
    fn inconclusive(monad: String, poset: String, reason: String) -> Self {
        SfReport {
            monad,
            poset,
            verdict: SfVerdict::Inconclusive,
            witness: None,
            reason: Some(reason),
            coinserter: None,
            tp: None,
        }
    }
}

/// Does `T` preserve the canonical coinserter presenting `p`?
///
/// With `p0, p1: k -> n` the canonical pair and `c: n -> p` the identity on
/// carriers, computes `Q` = coinserter of `T p0, T p1` and the comparison
/// `v([b]) = T c (b)`, then decides whether `v` is an order isomorphism.
/// Anything the truncation cannot decide yields `INCONCLUSIVE`.
pub fn check_strongly_finitary<M: OrderedMonad>(m: &M, p: &FinPoset, guards: &Guards) -> SfReport {
    let name = describe(p);
    match sf_inner(m, p, guards) {
        Ok(r) => r,
        Err(e) => SfReport::inconclusive(m.name(), name, e.to_string()),
    }
}

fn sf_inner<M: OrderedMonad>(m: &M, p: &FinPoset, guards: &Guards) -> Result<SfReport, MonadError> {
    let name = describe(p);
    let cp = canonical_presentation(p);
    let (k, n) = (cp.k().clone(), cp.n().clone());
    let tk = apply(m, &k, guards)?;
    let tn = apply(m, &n, guards)?;
    let tp = apply(m, p, guards)?;
    let lift = |f: &MonotoneMap| -> Result<MonotoneMap, MonadError> {
        let table = arrow_table(m, &k, &n, f.table(), &tk, &tn)
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| MonadError::Truncation("T p0 or T p1 leaves T n".into()))?;
        Ok(MonotoneMap::new(tk.poset.clone(), tn.poset.clone(), table)?)
    };
    let pair = ParallelPair::new(lift(cp.pair.f0())?, lift(cp.pair.f1())?)?;
    let co = coinserter(&pair);
    let id: Vec<usize> = (0..p.len()).collect();
    let tc = arrow_table(m, &n, p, &id, &tn, &tp)
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| MonadError::Truncation("T c leaves T P".into()))?;

    let q = &co.poset;
    let class_of = co.quotient.table();
    let mut v = vec![usize::MAX; q.len()];
    let mut first = vec![usize::MAX; q.len()];
    let mut witness = None;
    for (b, &c) in class_of.iter().enumerate() {
        if v[c] == usize::MAX {
            v[c] = tc[b];
            first[c] = b;
        } else if v[c] != tc[b] && witness.is_none() {
            witness = Some(SfWitness::NotWellDefined {
                first: tn.poset.label(first[c]).to_string(),
                second: tn.poset.label(b).to_string(),
            });
        }
    }
    let ql = |c: usize| q.label(c).to_string();
    let pl = |e: usize| tp.poset.label(e).to_string();
    if witness.is_none() {
        witness = q
            .relation()
            .pairs()
            .into_iter()
            .find(|&(a, b)| !tp.poset.leq(v[a], v[b]))
            .map(|(a, b)| SfWitness::OrderNotPreserved {
                lower: ql(a),
                upper: ql(b),
            });
    }
    if witness.is_none() {
        let hit: BTreeSet<usize> = v.iter().copied().collect();
        witness = (0..tp.len())
            .find(|e| !hit.contains(e))
            .map(|e| SfWitness::NotInImage { element: pl(e) });
    }
    if witness.is_none() {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (c, &e) in v.iter().enumerate() {
            if let Some(&d) = seen.get(&e) {
                witness = Some(SfWitness::NotInjective {
                    first: ql(d),
                    second: ql(c),
                    image: pl(e),
                });
                break;
            }
            seen.insert(e, c);
        }
    }
    if witness.is_none() {
        'outer: for a in 0..q.len() {
            for b in 0..q.len() {
                if tp.poset.leq(v[a], v[b]) && !q.leq(a, b) {
                    witness = Some(SfWitness::OrderNotReflected {
                        lower: ql(a),
                        upper: ql(b),
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(SfReport {
        monad: m.name(),
        poset: name,
        verdict: if witness.is_some() {
            SfVerdict::Fails
        } else {
            SfVerdict::Preserves
        },
        witness,
        reason: None,
        coinserter: Some(co.poset.clone()),
        tp: Some(tp.poset.clone()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftingReport {
    pub monad: String,
    pub poset: String,
    pub ok: bool,
    pub witness: Option<String>,
    /// Multiplication instances compared.
    pub checked: usize,
    /// Set when `T T X` could not be enumerated and `μ` went unchecked.
    pub note: Option<String>,
}

fn sorted_labels(p: &FinPoset) -> Vec<String> {
    let mut v = p.labels().to_vec();
    v.sort();
    v
}

fn set_mismatch(what: &str, a: &FinPoset, b: &FinPoset) -> Option<String> {
    let (la, lb) = (sorted_labels(a), sorted_labels(b));
    if la == lb {
        return None;
    }
    let sa: BTreeSet<&String> = la.iter().collect();
    let sb: BTreeSet<&String> = lb.iter().collect();
    let detail = if let Some(x) = sa.difference(&sb).next() {
        format!("{x} lies in {what} X but not in {what} X0")
    } else if let Some(x) = sb.difference(&sa).next() {
        format!("{x} lies in {what} X0 but not in {what} X")
    } else {
        String::new()
    };
    Some(format!(
        "|{what} X| = {} but |{what} X0| = {}; {detail}",
        la.len(),
        lb.len()
    ))
}

/// Compares `T X` with `T X0`, `X0` the underlying discrete poset: same
/// labeled carrier, same unit, same multiplication on underlying sets.
pub fn check_lifting<M: OrderedMonad>(
    m: &M,
    x: &FinPoset,
    guards: &Guards,
) -> Result<LiftingReport, MonadError> {
    let x0 = x.underlying_discrete();
    let mut rep = LiftingReport {
        monad: m.name(),
        poset: describe(x),
        ok: true,
        witness: None,
        checked: 0,
        note: None,
    };
    let tx = apply(m, x, guards)?;
    let tx0 = apply(m, &x0, guards)?;
    if let Some(w) = set_mismatch("T", &tx.poset, &tx0.poset) {
        rep.ok = false;
        rep.witness = Some(w);
        return Ok(rep);
    }
    let eta = unit_table(m, x, &tx)?;
    let eta0 = unit_table(m, &x0, &tx0)?;
    for p in 0..x.len() {
        if tx.poset.label(eta[p]) != tx0.poset.label(eta0[p]) {
            rep.ok = false;
            rep.witness = Some(format!("units of {} differ", x.label(p)));
            return Ok(rep);
        }
    }
    let (ttx, ttx0) = match (apply(m, &tx.poset, guards), apply(m, &tx0.poset, guards)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.note = Some(format!("multiplication unchecked: {e}"));
            return Ok(rep);
        }
    };
    if let Some(w) = set_mismatch("T T", &ttx.poset, &ttx0.poset) {
        rep.ok = false;
        rep.witness = Some(w);
        return Ok(rep);
    }
    let flat = |tx: &Applied<M::Elem>, base: &FinPoset, e: &M::Elem| {
        m.flatten(base, tx, e).map(|v| m.label(base, &v))
    };
    for (i, tau) in ttx.elems.iter().enumerate() {
        let j = ttx0
            .poset
            .index_of(ttx.poset.label(i))
            .expect("label sets agree");
        let (a, b) = (flat(&tx, x, tau), flat(&tx0, &x0, &ttx0.elems[j]));
        rep.checked += 1;
        if a != b {
            rep.ok = false;
            rep.witness = Some(format!(
                "multiplication differs at {}: {a:?} vs {b:?}",
                ttx.poset.label(i)
            ));
            return Ok(rep);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finposet::monotone_maps_unguarded;
    use crate::monad::{BoundedMonad, IdentityMonad, TreeMonad, WordMonad, WordOrder};

    fn two_chain() -> FinPoset {
        FinPoset::chain_labeled(vec!["0".into(), "1".into()]).unwrap()
    }

    #[test]
    fn ctx_partial_misses_the_ordered_pair() {
        let r = check_strongly_finitary(
            &TreeMonad::contextual(1),
            &FinPoset::chain(2),
            &Guards::default(),
        );
        assert_eq!(r.verdict, SfVerdict::Fails);
        assert_eq!(
            r.witness.unwrap().to_string(),
            "the element (α x0 x1) of TP does not lie in the image of Tc"
        );
    }

    #[test]
    fn plus_star_loses_an_inequation() {
        let r = check_strongly_finitary(&TreeMonad::plus_star(1), &two_chain(), &Guards::default());
        assert_eq!(r.verdict, SfVerdict::Fails);
        assert_eq!(
            r.witness,
            Some(SfWitness::OrderNotReflected {
                lower: "(+ 0 1)".into(),
                upper: "(* 0 1)".into()
            })
        );
    }

    #[test]
    fn words_and_bounds_preserve_small_cases() {
        let g = Guards::default();
        let v = FinPoset::from_pairs(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)])
            .unwrap();
        for p in [FinPoset::chain(2), v] {
            for o in [WordOrder::Pointwise, WordOrder::BottomUnit] {
                let r = check_strongly_finitary(&WordMonad::new(o, 3), &p, &g);
                assert_eq!(r.verdict, SfVerdict::Preserves, "{:?}", r.witness);
            }
            assert_eq!(
                check_strongly_finitary(&BoundedMonad, &p, &g).verdict,
                SfVerdict::Preserves
            );
            assert_eq!(
                check_strongly_finitary(&IdentityMonad, &p, &g).verdict,
                SfVerdict::Preserves
            );
        }
    }

    #[test]
    fn guard_makes_it_inconclusive() {
        let g = Guards {
            max_stream: 10,
            ..Guards::default()
        };
        let r = check_strongly_finitary(
            &WordMonad::new(WordOrder::Pointwise, 3),
            &FinPoset::chain(2),
            &g,
        );
        assert_eq!(r.verdict, SfVerdict::Inconclusive);
        assert!(r.reason.is_some());
    }

    /// `T X` = monotone self-maps of `X`; only the carrier is meaningful.
    struct SelfMaps;

    impl OrderedMonad for SelfMaps {
        type Elem = Vec<usize>;
        fn name(&self) -> String {
            "self-maps".into()
        }
        fn elements(&self, b: &FinPoset, _: &Guards) -> Result<Vec<Vec<usize>>, MonadError> {
            Ok(monotone_maps_unguarded(b, b))
        }
        fn leq(&self, b: &FinPoset, u: &Vec<usize>, v: &Vec<usize>) -> bool {
            u.iter().zip(v).all(|(&p, &q)| b.leq(p, q))
        }
        fn unit(&self, b: &FinPoset, x: usize) -> Vec<usize> {
            vec![x; b.len()]
        }
        fn map(&self, _: &FinPoset, _: &FinPoset, f: &[usize], e: &Vec<usize>) -> Vec<usize> {
            e.iter().map(|&v| f[v]).collect()
        }
        fn flatten(
            &self,
            _: &FinPoset,
            _: &Applied<Vec<usize>>,
            _: &Vec<usize>,
        ) -> Option<Vec<usize>> {
            None
        }
        fn label(&self, b: &FinPoset, e: &Vec<usize>) -> String {
            let parts: Vec<&str> = e.iter().map(|&v| b.label(v)).collect();
            format!("[{}]", parts.join(","))
        }
    }

    #[test]
    fn lifting_detects_order_dependent_carriers() {
        let r = check_lifting(&SelfMaps, &FinPoset::chain(2), &Guards::default()).unwrap();
        assert!(!r.ok);
        assert!(r.witness.unwrap().starts_with("|T X| = 3 but |T X0| = 4"));
    }

    #[test]
    fn words_and_plus_star_lift() {
        let g = Guards::default();
        for o in [WordOrder::Pointwise, WordOrder::BottomUnit] {
            assert!(
                check_lifting(&WordMonad::new(o, 2), &FinPoset::chain(2), &g)
                    .unwrap()
                    .ok
            );
        }
        assert!(
            check_lifting(&TreeMonad::plus_star(1), &FinPoset::chain(2), &g)
                .unwrap()
                .ok
        );
        assert!(
            check_lifting(&IdentityMonad, &FinPoset::chain(3), &g)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn ctx_partial_is_not_a_lifting() {
        let r = check_lifting(
            &TreeMonad::contextual(1),
            &FinPoset::chain(2),
            &Guards::default(),
        )
        .unwrap();
        assert!(!r.ok);
        assert!(r
            .witness
            .unwrap()
            .contains("(α x0 x1) lies in T X but not in T X0"));
    }
}
