//! Check suites run cell by cell over the test-poset bank.

use std::sync::Arc;

use ordvar::finposet::is_isomorphic;
use ordvar::monad::{
    apply, associated_presentation, check_lifting, check_monad_laws, check_strongly_finitary,
    describe, MonadVisitor, OrderedMonad, SfVerdict,
};
use ordvar::variety::{saturate_free, SaturationParams, VarietyError};
use ordvar::{Execution, FinPoset, Guards};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Laws,
    Sf,
    Lift,
    Duality,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Laws => "laws",
            Suite::Sf => "sf",
            Suite::Lift => "lift",
            Suite::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "PRESERVES")]
    Preserves,
    #[serde(rename = "FAILS")]
    Fails,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Preserves => "PRESERVES",
            Verdict::Fails => "FAILS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    pub fn failed(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::Fails)
    }

    fn pass_if(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub check: &'static str,
    pub monad: String,
    pub poset: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub note: Option<String>,
}

pub struct Job {
    pub suite: Suite,
    pub bank: Vec<FinPoset>,
    pub guards: Guards,
    pub exec: Execution,
    pub seed: Option<u64>,
    pub max_arity: usize,
    pub subst_depth: usize,
}

/// One poset per cell, or the whole bank at once.
enum Target {
    One(FinPoset),
    Bank,
}

impl Job {
    fn targets(&self) -> Vec<Target> {
        let mut t: Vec<Target> = match self.suite {
            Suite::Duality => self
                .bank
                .iter()
                .filter(|p| !p.is_empty() && p.is_discrete() && p.len() <= self.max_arity)
                .cloned()
                .map(Target::One)
                .collect(),
            _ => self.bank.iter().cloned().map(Target::One).collect(),
        };
        // Naturality along maps between different test posets.
        if self.suite == Suite::Laws && self.bank.len() > 1 {
            t.push(Target::Bank);
        }
        t
    }

    fn cell<M: OrderedMonad>(&self, m: &M, target: &Target) -> Cell {
        let (poset, tests) = match target {
            Target::One(p) => (describe(p), std::slice::from_ref(p)),
            Target::Bank => (format!("all {} posets", self.bank.len()), &self.bank[..]),
        };
        let mut cell = Cell {
            check: self.suite.name(),
            monad: m.name(),
            poset,
            verdict: Verdict::Pass,
            witness: None,
            note: None,
        };
        match self.suite {
            Suite::Laws => {
                let r = check_monad_laws(m, tests, &self.guards, Execution::Sequential);
                cell.verdict = Verdict::pass_if(r.ok());
                cell.witness = r
                    .violations
                    .first()
                    .map(|v| format!("{} on {}: {}", v.law, v.poset, v.witness));
                let mut note = format!(
                    "{} checks, {} skipped",
                    r.coverage.total(),
                    r.coverage.skipped
                );
                if !r.coverage.guarded.is_empty() {
                    note.push_str(&format!(", guarded: {}", r.coverage.guarded.join("; ")));
                }
                if r.violation_count > 1 {
                    note.push_str(&format!(", {} violations", r.violation_count));
                }
                cell.note = Some(note);
            }
            Suite::Sf => {
                let Target::One(p) = target else {
                    unreachable!("sf has no bank cell")
                };
                let r = check_strongly_finitary(m, p, &self.guards);
                cell.verdict = match r.verdict {
                    SfVerdict::Preserves => Verdict::Preserves,
                    SfVerdict::Fails => Verdict::Fails,
                    SfVerdict::Inconclusive => Verdict::Inconclusive,
                };
                cell.witness = r.witness.map(|w| w.to_string());
                cell.note = r.reason;
            }
            Suite::Lift => {
                let Target::One(p) = target else {
                    unreachable!("lift has no bank cell")
                };
                match check_lifting(m, p, &self.guards) {
                    Ok(r) => {
                        cell.verdict = Verdict::pass_if(r.ok);
                        cell.witness = r.witness;
                        cell.note = r.note;
                    }
                    Err(e) => {
                        cell.verdict = Verdict::Inconclusive;
                        cell.note = Some(e.to_string());
                    }
                }
            }
            Suite::Duality => {
                let Target::One(p) = target else {
                    unreachable!("duality has no bank cell")
                };
                match self.duality(m, p) {
                    Ok((ok, note)) => {
                        cell.verdict = Verdict::pass_if(ok);
                        cell.note = Some(note);
                    }
                    Err(e) => {
                        cell.verdict = Verdict::Inconclusive;
                        cell.note = Some(e);
                    }
                }
            }
        }
        cell
    }

    /// Free algebra of the associated presentation on a discrete `x`,
    /// restricted to single operations, against `T x`.
    fn duality<M: OrderedMonad>(&self, m: &M, x: &FinPoset) -> Result<(bool, String), String> {
        let ap =
            associated_presentation(m, self.max_arity, &self.guards).map_err(|e| e.to_string())?;
        let mut params = SaturationParams::new(2, self.subst_depth);
        params.guards = self.guards;
        let (fa, note) = match saturate_free(&ap.presentation, Arc::new(x.clone()), &params) {
            Ok(fa) => (fa, ""),
            Err(VarietyError::Budget(fa)) => (*fa, ", saturation budget hit"),
            Err(e) => return Err(e.to_string()),
        };
        let restricted = fa.restrict_to_depth(1);
        let tx = apply(m, x, &self.guards).map_err(|e| e.to_string())?;
        let ok = is_isomorphic(&restricted, &tx.poset);
        Ok((
            ok,
            format!(
                "{} axioms, {} depth-1 classes vs |TX| = {}{note}",
                ap.presentation.axioms.len(),
                restricted.len(),
                tx.len()
            ),
        ))
    }
}

impl MonadVisitor for &Job {
    type Output = Vec<Cell>;

    fn visit<M: OrderedMonad>(self, m: &M) -> Vec<Cell> {
        let targets = self.targets();
        let mut order: Vec<usize> = (0..targets.len()).collect();
        if let Some(seed) = self.seed {
            order.shuffle(&mut StdRng::seed_from_u64(seed));
        }
        let results = self.exec.map(&order, |&i| (i, self.cell(m, &targets[i])));
        let mut cells: Vec<Option<Cell>> = vec![None; targets.len()];
        for (i, c) in results {
            cells[i] = Some(c);
        }
        cells
            .into_iter()
            .map(|c| c.expect("every target ran"))
            .collect()
    }
}
