//! Exhaustive checks of coinserter universality and of `X ↦ X^m`
//! preserving canonical coinserters.

use std::collections::HashMap;
use std::sync::Arc;

use super::{
    canonical_presentation, coinserter, monotone_maps_unguarded, product, same_labeled_order,
    FinPoset, MonotoneMap, ParallelPair,
};
use crate::par::Execution;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniversalReport {
    /// Admissible maps `u` examined across all targets.
    pub cocones: usize,
    pub violations: Vec<String>,
}

impl UniversalReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: UniversalReport) {
        self.cocones += other.cocones;
        self.violations.extend(other.violations);
    }
}

/// For every target `D`: each `u: B -> D` with `u∘f0 <= u∘f1` factors as
/// `v∘c` for exactly one `v`, and `u <= u'` forces `v <= v'`.
pub fn verify_coinserter_universal(pp: &ParallelPair, targets: &[FinPoset]) -> UniversalReport {
    let co = coinserter(pp);
    let b = pp.cod();
    let c_table = co.quotient.table();
    let mut report = UniversalReport::default();
    let (f0, f1) = (pp.f0().table(), pp.f1().table());
    if !f0
        .iter()
        .zip(f1)
        .all(|(&x, &y)| co.poset.leq(c_table[x], c_table[y]))
    {
        report.violations.push("c∘f0 <= c∘f1 fails".into());
    }
    for d in targets {
        let vs = monotone_maps_unguarded(&co.poset, d);
        let mut factor: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, v) in vs.iter().enumerate() {
            let composite: Vec<usize> = c_table.iter().map(|&x| v[x]).collect();
            factor.entry(composite).or_default().push(i);
        }
        let admissible: Vec<Vec<usize>> = monotone_maps_unguarded(b, d)
            .into_iter()
            .filter(|u| f0.iter().zip(f1).all(|(&x, &y)| d.leq(u[x], u[y])))
            .collect();
        report.cocones += admissible.len();
        let mut chosen = Vec::with_capacity(admissible.len());
        for u in &admissible {
            match factor.get(u).map(Vec::as_slice) {
                Some([v]) => chosen.push(*v),
                Some(many) => {
                    report.violations.push(format!(
                        "u={u:?} into {:?} factors {} ways",
                        d.labels(),
                        many.len()
                    ));
                    chosen.push(many[0]);
                }
                None => {
                    report
                        .violations
                        .push(format!("u={u:?} into {:?} does not factor", d.labels()));
                    chosen.push(usize::MAX);
                }
            }
        }
        if factor.len() != vs.len() || factor.keys().any(|k| !admissible.contains(k)) {
            report
                .violations
                .push("some v∘c is not an admissible cocone".into());
        }
        let pointwise = |x: &[usize], y: &[usize]| x.iter().zip(y).all(|(&a, &b)| d.leq(a, b));
        for (i, u) in admissible.iter().enumerate() {
            for (j, u2) in admissible.iter().enumerate() {
                if i == j || !pointwise(u, u2) || chosen[i] == usize::MAX || chosen[j] == usize::MAX
                {
                    continue;
                }
                if !pointwise(&vs[chosen[i]], &vs[chosen[j]]) {
                    report.violations.push(format!(
                        "u={u:?} <= u'={u2:?} but factorizations are not ordered"
                    ));
                }
            }
        }
    }
    report
}

/// Every parallel pair `A ⇉ B` with `A`, `B` drawn from `sources`, checked
/// against every poset in `targets`.
pub fn coinserter_universal_sweep(
    sources: &[FinPoset],
    targets: &[FinPoset],
    exec: Execution,
) -> UniversalReport {
    let mut pairs = Vec::new();
    for a in sources {
        for b in sources {
            let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
            let maps = monotone_maps_unguarded(&a, &b);
            for f0 in &maps {
                for f1 in &maps {
                    let m0 =
                        MonotoneMap::new(a.clone(), b.clone(), f0.clone()).expect("enumerated map");
                    let m1 =
                        MonotoneMap::new(a.clone(), b.clone(), f1.clone()).expect("enumerated map");
                    pairs.push(ParallelPair::new(m0, m1).expect("shared ends"));
                }
            }
        }
    }
    let mut total = UniversalReport::default();
    for r in exec.map(&pairs, |pp| verify_coinserter_universal(pp, targets)) {
        total.absorb(r);
    }
    total
}

/// The coinserter of `p0^m, p1^m` (canonical pair of `P`) is `P^m`,
/// compared on labels.
pub fn check_power_preserves_canonical(p: &FinPoset, m: usize) -> bool {
    let cp = canonical_presentation(p);
    let mut k = (**cp.k()).clone();
    let mut n = (**cp.n()).clone();
    let mut f0 = cp.pair.f0().clone();
    let mut f1 = cp.pair.f1().clone();
    let mut pm = p.clone();
    if m == 0 {
        let one = Arc::new(FinPoset::discrete(1));
        let z = MonotoneMap::identity(one);
        let co = coinserter(&ParallelPair::new(z.clone(), z).expect("same ends"));
        return co.poset.len() == 1;
    }
    for _ in 1..m {
        f0 = f0.product(cp.pair.f0());
        f1 = f1.product(cp.pair.f1());
        k = product(&k, cp.k());
        n = product(&n, cp.n());
        pm = product(&pm, p);
    }
    debug_assert_eq!(f0.dom().len(), k.len());
    debug_assert_eq!(f0.cod().len(), n.len());
    let co = coinserter(&ParallelPair::new(f0, f1).expect("products share ends"));
    same_labeled_order(&co.poset, &pm)
}
