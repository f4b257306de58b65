use std::collections::BTreeMap;

use serde::Serialize;

use super::{apply, arrow_table, unit_table, Applied, MonadError, OrderedMonad};
use crate::finposet::{hasse_edges, monotone_maps_unguarded, FinPoset};
use crate::guard::Guards;
use crate::par::Execution;

/// Keeps reports readable; the total is still counted.
const MAX_WITNESSES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub poset: String,
    pub witness: String,
}

/// What was checked. `skipped` counts instances whose evaluation left the
/// truncation; `guarded` lists levels a guard refused to enumerate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub checked: BTreeMap<&'static str, usize>,
    pub skipped: usize,
    pub guarded: Vec<String>,
}

impl Coverage {
    pub(crate) fn hit(&mut self, law: &'static str) {
        *self.checked.entry(law).or_default() += 1;
    }

    pub fn total(&self) -> usize {
        self.checked.values().sum()
    }

    fn merge(&mut self, other: Coverage) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        self.skipped += other.skipped;
        self.guarded.extend(other.guarded);
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LawReport {
    pub monad: String,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub violations_by_law: BTreeMap<&'static str, usize>,
    pub coverage: Coverage,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }

    pub fn violated(&self, law: &str) -> bool {
        self.violations_by_law.contains_key(law)
    }

    pub(crate) fn violate(&mut self, law: &'static str, poset: &str, witness: String) {
        self.violation_count += 1;
        *self.violations_by_law.entry(law).or_default() += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(Violation {
                law,
                poset: poset.to_string(),
                witness,
            });
        }
    }

    fn merge(&mut self, other: LawReport) {
        self.violation_count += other.violation_count;
        for (k, v) in other.violations_by_law {
            *self.violations_by_law.entry(k).or_default() += v;
        }
        for v in other.violations {
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(v);
            }
        }
        self.coverage.merge(other.coverage);
    }
}

/// `{a,b,c | a<b}` from the Hasse diagram.
pub fn describe(p: &FinPoset) -> String {
    let edges: Vec<String> = hasse_edges(p)
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    if edges.is_empty() {
        format!("{{{}}}", p.labels().join(","))
    } else {
        format!("{{{} | {}}}", p.labels().join(","), edges.join(","))
    }
}

struct Level<E> {
    tx: Applied<E>,
    ttx: Option<Applied<E>>,
}

/// Checks the monad laws on every test poset, and naturality and functor
/// laws along every monotone map between test posets. Instances leaving
/// the truncation are skipped and counted.
pub fn check_monad_laws<M: OrderedMonad>(
    m: &M,
    tests: &[FinPoset],
    guards: &Guards,
    exec: Execution,
) -> LawReport {
    let mut report = LawReport {
        monad: m.name(),
        ..LawReport::default()
    };
    let built: Vec<Result<Level<M::Elem>, MonadError>> = exec.map(tests, |x| {
        let tx = apply(m, x, guards)?;
        let ttx = apply(m, &tx.poset, guards).ok();
        Ok(Level { tx, ttx })
    });
    let mut levels = Vec::with_capacity(tests.len());
    for (x, b) in tests.iter().zip(built) {
        match b {
            Ok(l) => {
                if l.ttx.is_none() {
                    report
                        .coverage
                        .guarded
                        .push(format!("T T {} not enumerated", describe(x)));
                }
                levels.push(Some(l));
            }
            Err(MonadError::Poset(e)) => {
                report.violate("partial-order", &describe(x), e.to_string());
                levels.push(None);
            }
            Err(e) => {
                report
                    .coverage
                    .guarded
                    .push(format!("T {}: {e}", describe(x)));
                levels.push(None);
            }
        }
    }
    let idx: Vec<usize> = (0..tests.len()).collect();
    let cells = exec.map(&idx, |&i| check_at(m, tests, &levels, i, guards));
    for c in cells {
        report.merge(c);
    }
    report
}

fn check_at<M: OrderedMonad>(
    m: &M,
    tests: &[FinPoset],
    levels: &[Option<Level<M::Elem>>],
    i: usize,
    guards: &Guards,
) -> LawReport {
    let mut r = LawReport::default();
    let x = &tests[i];
    let Some(level) = &levels[i] else { return r };
    let tx = &level.tx;
    let name = describe(x);
    let Ok(eta) = unit_table(m, x, tx) else {
        r.violate("unit", &name, "a unit lies outside the truncation".into());
        return r;
    };
    let label = |e: &M::Elem| m.label(x, e);

    let id: Vec<usize> = (0..x.len()).collect();
    for e in &tx.elems {
        r.coverage.hit("functor-identity");
        if m.map(x, x, &id, e) != *e {
            r.violate("functor-identity", &name, label(e));
        }
    }
    for (a, b) in x.relation().pairs() {
        r.coverage.hit("monotone-unit");
        if !tx.poset.leq(eta[a], eta[b]) {
            r.violate(
                "monotone-unit",
                &name,
                format!("{} <= {}", x.label(a), x.label(b)),
            );
        }
    }

    // left and right unit
    for (t_idx, t) in tx.elems.iter().enumerate() {
        let outer = m.unit(&tx.poset, t_idx);
        r.coverage.hit("left-unit");
        match m.flatten(x, tx, &outer) {
            Some(v) if v == *t => {}
            Some(v) => r.violate(
                "left-unit",
                &name,
                format!("{} became {}", label(t), label(&v)),
            ),
            None => r.coverage.skipped += 1,
        }
        let lifted = m.map(x, &tx.poset, &eta, t);
        r.coverage.hit("right-unit");
        match m.flatten(x, tx, &lifted) {
            Some(v) if v == *t => {}
            Some(v) => r.violate(
                "right-unit",
                &name,
                format!("{} became {}", label(t), label(&v)),
            ),
            None => r.coverage.skipped += 1,
        }
    }

    // maps out of X
    for (j, y) in tests.iter().enumerate() {
        let Some(ly) = &levels[j] else { continue };
        let ty = &ly.tx;
        let Ok(eta_y) = unit_table(m, y, ty) else {
            continue;
        };
        for f in monotone_maps_unguarded(x, y) {
            let tf = arrow_table(m, x, y, &f, tx, ty);
            let fname = format!("{name} -> {} by {:?}", describe(y), f);
            for (a, b) in tx.poset.relation().pairs() {
                if let (Some(p), Some(q)) = (tf[a], tf[b]) {
                    r.coverage.hit("monotone-arrow");
                    if !ty.poset.leq(p, q) {
                        r.violate(
                            "monotone-arrow",
                            &fname,
                            format!("{} <= {}", tx.poset.label(a), tx.poset.label(b)),
                        );
                    }
                } else {
                    r.coverage.skipped += 1;
                }
            }
            for (p, &ex) in eta.iter().enumerate() {
                r.coverage.hit("unit-naturality");
                if tf[ex] != Some(eta_y[f[p]]) {
                    r.violate("unit-naturality", &fname, x.label(p).to_string());
                }
            }
            for (k, z) in tests.iter().enumerate() {
                if levels[k].is_none() {
                    continue;
                }
                for g in monotone_maps_unguarded(y, z) {
                    let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                    for e in &tx.elems {
                        r.coverage.hit("functor-composition");
                        let once = m.map(x, z, &gf, e);
                        let twice = m.map(y, z, &g, &m.map(x, y, &f, e));
                        if once != twice {
                            r.violate("functor-composition", &fname, label(e));
                        }
                    }
                }
            }
            if let Some(ttx) = &level.ttx {
                for tau in &ttx.elems {
                    let lhs = m.flatten(x, tx, tau).map(|v| m.map(x, y, &f, &v));
                    let rhs = m
                        .map_partial(&tx.poset, &ty.poset, &tf, tau)
                        .and_then(|s| m.flatten(y, ty, &s));
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => {
                            r.coverage.hit("multiplication-naturality");
                            if a != b {
                                r.violate(
                                    "multiplication-naturality",
                                    &fname,
                                    m.label(&tx.poset, tau),
                                );
                            }
                        }
                        _ => r.coverage.skipped += 1,
                    }
                }
            }
        }
    }

    let Some(ttx) = &level.ttx else { return r };
    let mu: Vec<Option<M::Elem>> = ttx.elems.iter().map(|t| m.flatten(x, tx, t)).collect();
    for (a, b) in ttx.poset.relation().pairs() {
        match (&mu[a], &mu[b]) {
            (Some(p), Some(q)) => {
                r.coverage.hit("monotone-multiplication");
                if !m.leq(x, p, q) {
                    r.violate(
                        "monotone-multiplication",
                        &name,
                        format!("{} <= {}", ttx.poset.label(a), ttx.poset.label(b)),
                    );
                }
            }
            _ => r.coverage.skipped += 1,
        }
    }
    let mu_idx: Vec<Option<usize>> = mu
        .iter()
        .map(|v| v.as_ref().and_then(|v| tx.find(v)))
        .collect();
    let mut assoc = LawReport::default();
    let streamed = m.visit_elements(&ttx.poset, guards, &mut |tau| {
        let lhs = m
            .flatten(&tx.poset, ttx, &tau)
            .and_then(|s| m.flatten(x, tx, &s));
        let rhs = m
            .map_partial(&ttx.poset, &tx.poset, &mu_idx, &tau)
            .and_then(|s| m.flatten(x, tx, &s));
        match (lhs, rhs) {
            (Some(a), Some(b)) => {
                assoc.coverage.hit("associativity");
                if a != b {
                    assoc.violate("associativity", &name, m.label(&ttx.poset, &tau));
                }
            }
            _ => assoc.coverage.skipped += 1,
        }
    });
    if let Err(e) = streamed {
        r.coverage.guarded.push(format!("T T T {name}: {e}"));
    }
    r.merge(assoc);
    r
}
