//! Finite posets, monotone maps and the colimits the rest of the crate
//! consumes: poset reflection, coinserters, canonical presentations,
//! products, coproducts and hom posets.

mod bank;
mod io;
mod iso;
mod universal;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::bitrel::BitRelation;
use crate::guard::{saturating_pow, GuardError, Guards};

pub use bank::{poset_bank, posets_up_to_iso};
pub use io::{hasse_edges, to_dot, PosetFile};
pub use iso::{find_isomorphism, is_isomorphic, same_labeled_order};
pub use universal::{
    check_power_preserves_canonical, coinserter_universal_sweep, verify_coinserter_universal,
    UniversalReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("antisymmetry violated: `{0}` and `{1}` are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("map is not monotone: `{0}` <= `{1}` but images are not ordered")]
    NotMonotone(String, String),
    #[error("map table has {got} entries, domain has {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("map value {0} is outside the codomain")]
    OutOfRange(usize),
    #[error("parallel pair maps do not share domain and codomain")]
    MismatchedPair,
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("malformed poset file: {0}")]
    Format(String),
}

/// Element labels with a reverse index.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Labels {
    fn new(names: Vec<String>) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Labels { names, index })
    }
}

/// A finite preorder: reflexive and transitive, stored fully closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPreorder {
    labels: Labels,
    rel: BitRelation,
}

impl FinPreorder {
    /// Closes `rel` reflexively and transitively.
    pub fn new(labels: Vec<String>, mut rel: BitRelation) -> Result<Self, PosetError> {
        assert_eq!(
            labels.len(),
            rel.len(),
            "label count must match relation size"
        );
        let labels = Labels::new(labels)?;
        rel.close();
        Ok(FinPreorder { labels, rel })
    }

    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        Self::new(labels, BitRelation::from_pairs(n, pairs.iter().copied()))
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.rel.get(a, b)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.index.get(label).copied()
    }

    pub fn relation(&self) -> &BitRelation {
        &self.rel
    }

    /// Quotient by the symmetric core `<= ∩ >=`.
    pub fn reflect(&self) -> Reflection {
        poset_reflection(self)
    }
}

/// A finite poset with a closed order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Labels,
    rel: BitRelation,
}

impl FinPoset {
    /// Closes `rel` and rejects it if the closure is not antisymmetric.
    pub fn new(labels: Vec<String>, mut rel: BitRelation) -> Result<Self, PosetError> {
        assert_eq!(
            labels.len(),
            rel.len(),
            "label count must match relation size"
        );
        let labels = Labels::new(labels)?;
        rel.close();
        for (a, b) in rel.pairs() {
            if a < b && rel.get(b, a) {
                return Err(PosetError::NotAntisymmetric(
                    labels.names[a].clone(),
                    labels.names[b].clone(),
                ));
            }
        }
        Ok(FinPoset { labels, rel })
    }

    /// Trusts that `rel` is already a closed partial order.
    pub(crate) fn from_closed(labels: Vec<String>, rel: BitRelation) -> Result<Self, PosetError> {
        debug_assert!(rel.is_reflexive() && rel.is_transitive() && rel.is_antisymmetric());
        Ok(FinPoset {
            labels: Labels::new(labels)?,
            rel,
        })
    }

    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        Self::new(labels, BitRelation::from_pairs(n, pairs.iter().copied()))
    }

    /// Builds the order by querying `leq` on every pair.
    pub fn from_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut rel = BitRelation::new(n);
        for a in 0..n {
            for b in 0..n {
                if a == b || leq(a, b) {
                    rel.set(a, b);
                }
            }
        }
        Self::new(labels, rel)
    }

    /// Discrete poset on `{0, …, n-1}`.
    pub fn discrete(n: usize) -> Self {
        Self::discrete_labeled((0..n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn discrete_labeled(labels: Vec<String>) -> Result<Self, PosetError> {
        let n = labels.len();
        Self::from_closed(labels, BitRelation::identity(n))
    }

    /// The chain `x0 < x1 < … < x(n-1)`.
    pub fn chain(n: usize) -> Self {
        Self::chain_labeled((0..n).map(|i| format!("x{i}")).collect()).expect("distinct labels")
    }

    pub fn chain_labeled(labels: Vec<String>) -> Result<Self, PosetError> {
        let n = labels.len();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.rel.get(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.rel.get(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.index.get(label).copied()
    }

    pub fn relation(&self) -> &BitRelation {
        &self.rel
    }

    pub fn is_discrete(&self) -> bool {
        self.rel.count() == self.len()
    }

    /// Comparable pairs `(a, b)` with `a <= b`, reflexive pairs included,
    /// in lexicographic order of indices.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        self.rel.pairs().collect()
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        self.rel.predecessors(a).collect()
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        self.rel.successors(a).collect()
    }

    /// Same carrier with the order forgotten.
    pub fn underlying_discrete(&self) -> FinPoset {
        FinPoset::discrete_labeled(self.labels().to_vec()).expect("labels already distinct")
    }

    /// Subposet on the listed elements (in list order).
    pub fn subposet(&self, keep: &[usize]) -> FinPoset {
        let labels = keep.iter().map(|&i| self.label(i).to_string()).collect();
        FinPoset::from_closed(labels, self.rel.restrict(keep)).expect("labels already distinct")
    }

    pub fn as_preorder(&self) -> FinPreorder {
        FinPreorder {
            labels: self.labels.clone(),
            rel: self.rel.clone(),
        }
    }

    /// Relabels elements, keeping the order.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<FinPoset, PosetError> {
        assert_eq!(labels.len(), self.len());
        Ok(FinPoset {
            labels: Labels::new(labels)?,
            rel: self.rel.clone(),
        })
    }

    pub fn is_monotone(&self, cod: &FinPoset, table: &[usize]) -> bool {
        self.rel.pairs().all(|(a, b)| cod.leq(table[a], table[b]))
    }
}

/// An order-preserving map between finite posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Arc<FinPoset>,
    cod: Arc<FinPoset>,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(
        dom: Arc<FinPoset>,
        cod: Arc<FinPoset>,
        table: Vec<usize>,
    ) -> Result<Self, PosetError> {
        if table.len() != dom.len() {
            return Err(PosetError::TableSize {
                expected: dom.len(),
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(PosetError::OutOfRange(bad));
        }
        if let Some((a, b)) = dom.rel.pairs().find(|&(a, b)| !cod.leq(table[a], table[b])) {
            return Err(PosetError::NotMonotone(
                dom.label(a).to_string(),
                dom.label(b).to_string(),
            ));
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let table = (0..p.len()).collect();
        MonotoneMap {
            dom: p.clone(),
            cod: p,
            table,
        }
    }

    pub fn dom(&self) -> &Arc<FinPoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinPoset> {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        let table = self.table.iter().map(|&x| other.table[x]).collect();
        MonotoneMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            table,
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Pointwise `self <= other`.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.cod.leq(a, b))
    }

    /// `self × other` between product posets built by [`product`].
    pub fn product(&self, other: &MonotoneMap) -> MonotoneMap {
        let dom = Arc::new(product(&self.dom, &other.dom));
        let cod = Arc::new(product(&self.cod, &other.cod));
        let m = other.cod.len();
        let table = (0..dom.len())
            .map(|i| {
                let (a, b) = (i / other.dom.len(), i % other.dom.len());
                self.table[a] * m + other.table[b]
            })
            .collect();
        MonotoneMap { dom, cod, table }
    }
}

/// Two monotone maps `f0, f1: A -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelPair {
    f0: MonotoneMap,
    f1: MonotoneMap,
}

impl ParallelPair {
    pub fn new(f0: MonotoneMap, f1: MonotoneMap) -> Result<Self, PosetError> {
        if f0.dom != f1.dom || f0.cod != f1.cod {
            return Err(PosetError::MismatchedPair);
        }
        Ok(ParallelPair { f0, f1 })
    }

    pub fn f0(&self) -> &MonotoneMap {
        &self.f0
    }

    pub fn f1(&self) -> &MonotoneMap {
        &self.f1
    }

    pub fn dom(&self) -> &Arc<FinPoset> {
        &self.f0.dom
    }

    pub fn cod(&self) -> &Arc<FinPoset> {
        &self.f0.cod
    }

    /// A common section `i` with `f0 ∘ i = id = f1 ∘ i`, if one exists.
    pub fn reflexivity_witness(&self) -> Option<Vec<usize>> {
        let b = self.cod().len();
        let mut section = Vec::with_capacity(b);
        for y in 0..b {
            let x =
                (0..self.dom().len()).find(|&x| self.f0.table[x] == y && self.f1.table[x] == y)?;
            section.push(x);
        }
        self.cod()
            .is_monotone(self.dom(), &section)
            .then_some(section)
    }
}

/// Result of quotienting a preorder by its symmetric core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    pub poset: FinPoset,
    /// Class of every preorder element.
    pub class_of: Vec<usize>,
    /// First (lowest-index) member of every class.
    pub representatives: Vec<usize>,
}

/// Quotients a preorder by `<= ∩ >=`, ordering classes by their members.
/// Classes are numbered in order of their lowest member and labeled by it.
pub fn poset_reflection(p: &FinPreorder) -> Reflection {
    let n = p.len();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(a);
        for b in p.rel.successors(a) {
            if p.rel.get(b, a) {
                class_of[b] = c;
            }
        }
    }
    let labels = representatives
        .iter()
        .map(|&r| p.label(r).to_string())
        .collect();
    let rel = p.rel.restrict(&representatives);
    let poset = FinPoset::from_closed(labels, rel).expect("representative labels are distinct");
    Reflection {
        poset,
        class_of,
        representatives,
    }
}

/// Coinserter of a parallel pair together with its quotient map `c: B -> C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coinserter {
    pub poset: Arc<FinPoset>,
    pub quotient: MonotoneMap,
}

/// The poset reflection of the preorder on `|B|` generated by the order of
/// `B` and `f0(a) <= f1(a)` for every `a ∈ A`.
pub fn coinserter(pp: &ParallelPair) -> Coinserter {
    let b = pp.cod();
    let mut rel = b.rel.clone();
    for (&lo, &hi) in pp.f0.table.iter().zip(&pp.f1.table) {
        rel.set(lo, hi);
    }
    let pre = FinPreorder::new(b.labels().to_vec(), rel).expect("labels already distinct");
    let refl = poset_reflection(&pre);
    let poset = Arc::new(refl.poset);
    let quotient = MonotoneMap {
        dom: b.clone(),
        cod: poset.clone(),
        table: refl.class_of,
    };
    Coinserter { poset, quotient }
}

/// `p0, p1: k -> n` exhibiting `P` as the coinserter of discrete posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPresentation {
    pub pair: ParallelPair,
    /// Comparable pair behind every element of `k`.
    pub comparable: Vec<(usize, usize)>,
}

impl CanonicalPresentation {
    pub fn k(&self) -> &Arc<FinPoset> {
        self.pair.dom()
    }

    pub fn n(&self) -> &Arc<FinPoset> {
        self.pair.cod()
    }
}

/// `n` is `P`'s carrier made discrete (same labels); `k` lists the
/// comparable pairs `(lower, upper)`, reflexive ones included, sorted
/// lexicographically by index, labeled `(a,b)`.
pub fn canonical_presentation(p: &FinPoset) -> CanonicalPresentation {
    let comparable = p.comparable_pairs();
    let k = Arc::new(
        FinPoset::discrete_labeled(
            comparable
                .iter()
                .map(|&(a, b)| format!("({},{})", p.label(a), p.label(b)))
                .collect(),
        )
        .expect("pair labels are distinct"),
    );
    let n = Arc::new(p.underlying_discrete());
    let f0 = MonotoneMap {
        dom: k.clone(),
        cod: n.clone(),
        table: comparable.iter().map(|&(a, _)| a).collect(),
    };
    let f1 = MonotoneMap {
        dom: k,
        cod: n,
        table: comparable.iter().map(|&(_, b)| b).collect(),
    };
    CanonicalPresentation {
        pair: ParallelPair { f0, f1 },
        comparable,
    }
}

/// Componentwise order on `P × Q`; element `(a, b)` sits at `a·|Q| + b`
/// and is labeled `(a,b)`.
pub fn product(p: &FinPoset, q: &FinPoset) -> FinPoset {
    let m = q.len();
    let mut labels = Vec::with_capacity(p.len() * m);
    for a in 0..p.len() {
        for b in 0..m {
            labels.push(format!("({},{})", p.label(a), q.label(b)));
        }
    }
    let mut rel = BitRelation::new(p.len() * m);
    for (a, a2) in p.rel.pairs() {
        for (b, b2) in q.rel.pairs() {
            rel.set(a * m + b, a2 * m + b2);
        }
    }
    FinPoset::from_closed(labels, rel).expect("pair labels are distinct")
}

/// Disjoint union with no cross relations; labels `in0(a)`, `in1(b)`.
pub fn coproduct(p: &FinPoset, q: &FinPoset) -> FinPoset {
    let offset = p.len();
    let labels = p
        .labels()
        .iter()
        .map(|l| format!("in0({l})"))
        .chain(q.labels().iter().map(|l| format!("in1({l})")))
        .collect();
    let pairs = p
        .rel
        .pairs()
        .chain(q.rel.pairs().map(|(a, b)| (a + offset, b + offset)));
    let rel = BitRelation::from_pairs(offset + q.len(), pairs);
    FinPoset::from_closed(labels, rel).expect("tagged labels are distinct")
}

/// All monotone maps `X -> A` as tables, in lexicographic order.
pub fn monotone_maps(
    x: &FinPoset,
    a: &FinPoset,
    guards: &Guards,
) -> Result<Vec<Vec<usize>>, PosetError> {
    guards.hom(saturating_pow(a.len(), x.len()))?;
    Ok(monotone_maps_unguarded(x, a))
}

pub(crate) fn monotone_maps_unguarded(x: &FinPoset, a: &FinPoset) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    if a.is_empty() {
        return out;
    }
    let mut table = vec![0usize; n];
    fn go(i: usize, x: &FinPoset, a: &FinPoset, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == x.len() {
            out.push(table.clone());
            return;
        }
        'value: for v in 0..a.len() {
            for j in 0..i {
                if (x.leq(j, i) && !a.leq(table[j], v)) || (x.leq(i, j) && !a.leq(v, table[j])) {
                    continue 'value;
                }
            }
            table[i] = v;
            go(i + 1, x, a, table, out);
        }
    }
    go(0, x, a, &mut table, &mut out);
    out
}

/// The poset of monotone maps `X -> A` ordered pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoset {
    pub poset: FinPoset,
    pub maps: Vec<Vec<usize>>,
}

impl HomPoset {
    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(table)).ok()
    }
}

/// Rejects the enumeration when `|A|^|X|` exceeds the hom guard.
/// Maps are labeled by their tables, e.g. `[x0,x1]`.
pub fn hom_poset(x: &FinPoset, a: &FinPoset, guards: &Guards) -> Result<HomPoset, PosetError> {
    let maps = monotone_maps(x, a, guards)?;
    let labels = maps
        .iter()
        .map(|m| {
            let parts: Vec<&str> = m.iter().map(|&v| a.label(v)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let poset = FinPoset::from_fn(labels, |f, g| {
        maps[f].iter().zip(&maps[g]).all(|(&u, &v)| a.leq(u, v))
    })?;
    Ok(HomPoset { poset, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> FinPoset {
        let labels = ["a", "b", "c"].map(String::from).to_vec();
        FinPoset::from_pairs(labels, &[(0, 2), (1, 2)]).unwrap()
    }

    fn preorder(labels: &[&str], pairs: &[(usize, usize)]) -> FinPreorder {
        FinPreorder::from_pairs(labels.iter().map(|s| s.to_string()).collect(), pairs).unwrap()
    }

    #[test]
    fn load_rejects_cycles() {
        let labels = vec!["a".into(), "b".into()];
        let err = FinPoset::from_pairs(labels, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::NotAntisymmetric(_, _)));
    }

    #[test]
    fn reflection_of_antisymmetric_preorder_is_identity() {
        let p = preorder(&["a", "b", "c"], &[(0, 1), (1, 2)]);
        let r = poset_reflection(&p);
        assert_eq!(r.class_of, vec![0, 1, 2]);
        assert_eq!(r.poset.relation(), p.relation());
        // applying it again changes nothing
        let again = poset_reflection(&r.poset.as_preorder());
        assert_eq!(again.poset, r.poset);
    }

    #[test]
    fn reflection_collapses_symmetric_pair() {
        let p = preorder(&["a", "b"], &[(0, 1), (1, 0)]);
        let r = poset_reflection(&p);
        assert_eq!(r.poset.len(), 1);
        assert_eq!(r.class_of, vec![0, 0]);
    }

    #[test]
    fn reflection_three_elements_gives_two_chain() {
        // a<=b, b<=a, a<=c: brute-force closure adds b<=c; classes {a,b}, {c}
        let p = preorder(&["a", "b", "c"], &[(0, 1), (1, 0), (0, 2)]);
        assert!(p.leq(1, 2));
        let r = poset_reflection(&p);
        assert_eq!(r.poset.labels(), ["a", "c"]);
        assert!(r.poset.lt(0, 1));
        assert_eq!(r.class_of, vec![0, 0, 1]);
    }

    #[test]
    fn coinserter_of_equal_maps_is_identity() {
        let b = Arc::new(v_poset());
        let a = Arc::new(FinPoset::discrete(2));
        let f = MonotoneMap::new(a, b.clone(), vec![0, 2]).unwrap();
        let c = coinserter(&ParallelPair::new(f.clone(), f).unwrap());
        assert_eq!(*c.poset, *b);
        assert_eq!(c.quotient.table(), &[0, 1, 2]);
    }

    #[test]
    fn coinserter_of_point_pair_orders_the_points() {
        let a = Arc::new(FinPoset::discrete(1));
        let b = Arc::new(FinPoset::discrete(2));
        let f0 = MonotoneMap::new(a.clone(), b.clone(), vec![0]).unwrap();
        let f1 = MonotoneMap::new(a, b, vec![1]).unwrap();
        let c = coinserter(&ParallelPair::new(f0, f1).unwrap());
        assert_eq!(c.poset.labels(), ["0", "1"]);
        assert!(c.poset.lt(0, 1));
        assert_eq!(c.quotient.table(), &[0, 1]);
    }

    #[test]
    fn canonical_presentation_of_two_chain() {
        let p = FinPoset::chain(2);
        let cp = canonical_presentation(&p);
        assert_eq!(cp.comparable, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(cp.k().labels(), ["(x0,x0)", "(x0,x1)", "(x1,x1)"]);
        assert_eq!(cp.n().len(), 2);
        assert!(cp.pair.reflexivity_witness().is_some());
        let c = coinserter(&cp.pair);
        assert_eq!(*c.poset, p);
        assert_eq!(c.quotient.table(), &[0, 1]);
    }

    #[test]
    fn canonical_presentation_of_discrete_and_v() {
        let d = FinPoset::discrete(4);
        let cp = canonical_presentation(&d);
        assert_eq!(cp.k().len(), 4);
        assert_eq!(*coinserter(&cp.pair).poset, d);

        // V-poset: 3 reflexive + a<c + b<c
        let v = v_poset();
        let cp = canonical_presentation(&v);
        assert_eq!(cp.k().len(), 5);
        assert_eq!(*coinserter(&cp.pair).poset, v);
    }

    #[test]
    fn product_with_point_is_the_factor() {
        let p = product(&FinPoset::chain(2), &FinPoset::discrete(1));
        assert!(is_isomorphic(&p, &FinPoset::chain(2)));
    }

    #[test]
    fn product_of_two_chains_has_nine_comparable_pairs() {
        // exhaustive componentwise count: for each of the 4x4 ordered pairs
        // test both coordinates
        let c = FinPoset::chain(2);
        let mut expected = 0;
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if c.leq(a, x) && c.leq(b, y) {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 9);
        assert_eq!(product(&c, &c).relation().count(), expected);
    }

    #[test]
    fn coproduct_keeps_summands_apart() {
        let c = FinPoset::chain(2);
        let s = coproduct(&c, &c);
        assert_eq!(s.len(), 4);
        for a in 0..2 {
            for b in 2..4 {
                assert!(!s.comparable(a, b));
            }
        }
        assert!(s.lt(2, 3));
    }

    #[test]
    fn hom_from_point_is_the_target() {
        let a = v_poset();
        let h = hom_poset(&FinPoset::discrete(1), &a, &Guards::default()).unwrap();
        assert!(is_isomorphic(&h.poset, &a));
    }

    #[test]
    fn hom_of_two_chain_into_itself() {
        // brute force: all 4 functions, keep the monotone ones
        let c = FinPoset::chain(2);
        let all: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        let mono: Vec<_> = all.into_iter().filter(|t| c.is_monotone(&c, t)).collect();
        assert_eq!(mono.len(), 3);
        let h = hom_poset(&c, &c, &Guards::default()).unwrap();
        assert_eq!(h.maps, mono);
        assert_eq!(h.poset.labels(), ["[x0,x0]", "[x0,x1]", "[x1,x1]"]);
        assert!(h.poset.lt(0, 1) && h.poset.lt(1, 2));
    }

    #[test]
    fn hom_from_discrete_two_is_a_square() {
        let c = FinPoset::chain(2);
        let h = hom_poset(&FinPoset::discrete(2), &c, &Guards::default()).unwrap();
        assert!(is_isomorphic(&h.poset, &product(&c, &c)));
    }

    #[test]
    fn hom_guard_rejects_large_enumerations() {
        let guards = Guards {
            max_hom: 100,
            ..Guards::default()
        };
        let err = hom_poset(&FinPoset::discrete(5), &FinPoset::chain(3), &guards).unwrap_err();
        assert!(matches!(err, PosetError::Guard(_)));
    }

    #[test]
    fn monotone_map_rejects_order_reversal() {
        let c = Arc::new(FinPoset::chain(2));
        let err = MonotoneMap::new(c.clone(), c, vec![1, 0]).unwrap_err();
        assert!(matches!(err, PosetError::NotMonotone(_, _)));
    }
}
