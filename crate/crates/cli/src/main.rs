//! `ordvar`: free algebras, coinserters and monad checks from the shell.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a resource
//! guard or budget stopped the computation.

mod check;
mod error;
mod input;

use std::fmt::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordvar::finposet::{coinserter, hasse_edges, poset_bank, to_dot};
use ordvar::monad::{associated_presentation, Catalog, MonadVisitor, OrderedMonad, Truncation};
use ordvar::variety::{saturate_free, Builtin, Inequation, SaturationParams, VarietyError};
use ordvar::{Execution, FinPoset, Guards};
use serde_json::{json, Value};

use check::{Cell, Job, Suite, Verdict};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "ordvar",
    version,
    about = "Ordered varieties and monads on finite posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Term depth: saturation carrier for `free`, tree-monad truncation for checks.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Depth of terms substituted into axioms during saturation.
    #[arg(long, global = true)]
    subst_depth: Option<usize>,
    /// Word-length truncation.
    #[arg(long, global = true)]
    length: Option<usize>,
    /// Largest arity N of the associated presentation.
    #[arg(long, global = true, default_value_t = 2)]
    max_arity: usize,
    /// Cap on generated carriers and term enumerations.
    #[arg(long, global = true)]
    guard_size: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Draw or list the full order instead of the Hasse diagram.
    #[arg(long, global = true)]
    closure: bool,
    /// Largest poset size in the test bank.
    #[arg(long, global = true, default_value_t = 3)]
    bank_size: usize,
    /// Shuffles the evaluation order of check cells; output order is fixed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run check cells on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Free algebra of a presentation (file or builtin name) on a poset.
    Free { presentation: String, poset: String },
    /// Run a check suite for a catalog monad over the test bank.
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
        monad: String,
        /// Signature file for the `term` monad.
        #[arg(long)]
        signature: Option<String>,
    },
    /// Coinserter of a parallel pair file.
    Coinserter { pair: String },
    /// Associated presentation of a catalog monad, up to arity N.
    Present { monad: String, n: Option<usize> },
    /// Whether an algebra file satisfies `leq lhs rhs` or `eq lhs rhs`.
    Satisfies { algebra: String, statement: String },
    /// Load a poset (file, `chain:N` or `discrete:N`) and print it.
    Poset { poset: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Laws,
    Sf,
    Lift,
    Duality,
}

/// What a command prints and how it exits.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

impl Opts {
    fn guards(&self) -> Guards {
        let mut g = Guards::default();
        if let Some(n) = self.guard_size {
            g.max_carrier = n;
            g.max_terms = n;
        }
        g
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn positive(&self) -> Result<(), CliError> {
        let named = [
            ("--depth", self.depth),
            ("--length", self.length),
            ("--guard-size", self.guard_size),
            ("--max-arity", Some(self.max_arity)),
        ];
        for (flag, v) in named {
            if v == Some(0) {
                return Err(CliError::Input(format!("{flag} must be positive")));
            }
        }
        Ok(())
    }
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// Elements with either the covering pairs or every strict pair.
fn order_pairs(p: &FinPoset, closure: bool) -> Vec<(usize, usize)> {
    if closure {
        p.relation().pairs().filter(|(a, b)| a != b).collect()
    } else {
        hasse_edges(p)
    }
}

fn poset_text(out: &mut String, p: &FinPoset, closure: bool) {
    let _ = writeln!(out, "elements ({}):", p.len());
    for l in p.labels() {
        let _ = writeln!(out, "  {l}");
    }
    let _ = writeln!(out, "{}:", if closure { "order" } else { "hasse" });
    for (a, b) in order_pairs(p, closure) {
        let _ = writeln!(out, "  {} < {}", p.label(a), p.label(b));
    }
}

fn poset_json(p: &FinPoset, closure: bool) -> Value {
    let pairs: Vec<[&str; 2]> = order_pairs(p, closure)
        .into_iter()
        .map(|(a, b)| [p.label(a), p.label(b)])
        .collect();
    json!({
        "elements": p.labels(),
        (if closure { "order" } else { "hasse" }): pairs,
    })
}

fn render_poset(
    command: &str,
    p: &FinPoset,
    opts: &Opts,
    extra: Value,
    text_extra: &str,
) -> String {
    match opts.format {
        Format::Dot => to_dot(p, opts.closure),
        Format::Json => {
            let mut v =
                json!({ "schema": 1, "command": command, "poset": poset_json(p, opts.closure) });
            if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            json_text(v)
        }
        Format::Text => {
            let mut s = String::new();
            poset_text(&mut s, p, opts.closure);
            s.push_str(text_extra);
            s
        }
    }
}

fn cmd_free(pres: &str, poset: &str, opts: &Opts) -> Result<Output, CliError> {
    let p = input::presentation(pres)?;
    let x = input::poset(poset)?;
    opts.guards().poset(x.len())?;
    if let Some(b) = Builtin::recognize(&p) {
        let length = opts.length.unwrap_or(2);
        let alg = b.free_algebra(&x, length);
        let method = format!("normal forms of {}, words of length <= {length}", b.name());
        let extra = json!({ "method": method, "exact": true });
        let text = format!("method: {method}\nexact: true\n");
        return Ok(Output::ok(render_poset(
            "free",
            alg.carrier(),
            opts,
            extra,
            &text,
        )));
    }
    let mut params = SaturationParams::new(opts.depth.unwrap_or(2), opts.subst_depth.unwrap_or(1));
    params.guards = opts.guards();
    let fa = match saturate_free(&p, Arc::new(x), &params) {
        Ok(fa) => fa,
        Err(VarietyError::Budget(fa)) => *fa,
        Err(e) => return Err(e.into()),
    };
    let method = format!(
        "saturation, depth {} substitution depth {}",
        fa.depth, fa.subst_depth
    );
    let extra = json!({
        "method": method,
        "exact": fa.exact,
        "complete": fa.complete,
        "terms": fa.space.len(),
        "rounds": fa.rounds,
    });
    let text = format!(
        "method: {method}\nterms: {}\nrounds: {}\ncomplete: {}\nexact: {}\n",
        fa.space.len(),
        fa.rounds,
        fa.complete,
        fa.exact
    );
    Ok(Output::ok(render_poset(
        "free", &fa.poset, opts, extra, &text,
    )))
}

fn truncation(suite: Suite, opts: &Opts) -> Truncation {
    let d = Truncation::default();
    Truncation {
        // Strong-finitarity witnesses for tree monads need two levels.
        depth: opts
            .depth
            .unwrap_or(if suite == Suite::Sf { 2 } else { d.depth }),
        length: opts.length.unwrap_or(d.length),
    }
}

fn cmd_check(
    suite: SuiteArg,
    monad: &str,
    signature: Option<&str>,
    opts: &Opts,
) -> Result<Output, CliError> {
    let suite = match suite {
        SuiteArg::Laws => Suite::Laws,
        SuiteArg::Sf => Suite::Sf,
        SuiteArg::Lift => Suite::Lift,
        SuiteArg::Duality => Suite::Duality,
    };
    let sig = signature.map(input::signature).transpose()?;
    let guards = opts.guards();
    guards.poset(opts.bank_size)?;
    let job = Job {
        suite,
        bank: poset_bank(opts.bank_size),
        guards,
        exec: opts.exec(),
        seed: opts.seed,
        max_arity: opts.max_arity,
        subst_depth: opts.subst_depth.unwrap_or(1),
    };
    let cells = Catalog::visit_with(monad, truncation(suite, opts), sig, &job)?;
    let failed = cells.iter().filter(|c| c.verdict.failed()).count();
    let inconclusive = cells
        .iter()
        .filter(|c| c.verdict == Verdict::Inconclusive)
        .count();
    if inconclusive > 0 {
        eprintln!("warning: {inconclusive} inconclusive cells");
    }
    let passed = cells.len() - failed - inconclusive;
    let text = match opts.format {
        Format::Json => json_text(json!({
            "schema": 1,
            "command": "check",
            "suite": suite.name(),
            "monad": monad,
            "cells": cells,
            "summary": { "pass": passed, "fail": failed, "inconclusive": inconclusive },
        })),
        Format::Text | Format::Dot => table(&cells, passed, failed, inconclusive),
    };
    Ok(Output {
        text,
        code: u8::from(failed > 0),
    })
}

fn table(cells: &[Cell], passed: usize, failed: usize, inconclusive: usize) -> String {
    let w = cells
        .iter()
        .map(|c| c.poset.chars().count())
        .max()
        .unwrap_or(0)
        .max(5);
    let m = cells
        .iter()
        .map(|c| c.monad.chars().count())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:<m$} {:<w$} {:<12} witness",
        "check", "monad", "poset", "verdict"
    );
    for c in cells {
        let pad_m = m - c.monad.chars().count();
        let pad_w = w - c.poset.chars().count();
        let _ = write!(
            s,
            "{:<8} {}{} {}{} {:<12} {}",
            c.check,
            c.monad,
            " ".repeat(pad_m),
            c.poset,
            " ".repeat(pad_w),
            c.verdict.as_str(),
            c.witness.as_deref().unwrap_or("-")
        );
        if let Some(n) = &c.note {
            let _ = write!(s, "  [{n}]");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "{} cells: {passed} pass, {failed} fail, {inconclusive} inconclusive",
        cells.len()
    );
    s
}

fn cmd_coinserter(path: &str, opts: &Opts) -> Result<Output, CliError> {
    let pp = input::pair(path)?;
    let co = coinserter(&pp);
    let b = pp.cod();
    let quotient: Vec<(String, String)> = (0..b.len())
        .map(|i| {
            (
                b.label(i).to_string(),
                co.poset.label(co.quotient.apply(i)).to_string(),
            )
        })
        .collect();
    let mut text = String::from("quotient:\n");
    for (from, to) in &quotient {
        let _ = writeln!(text, "  {from} -> {to}");
    }
    let extra = json!({ "quotient": quotient });
    Ok(Output::ok(render_poset(
        "coinserter",
        &co.poset,
        opts,
        extra,
        &text,
    )))
}

struct Present<'a>(&'a Opts, usize);

impl MonadVisitor for Present<'_> {
    type Output = Result<String, CliError>;

    fn visit<M: OrderedMonad>(self, m: &M) -> Self::Output {
        let ap = associated_presentation(m, self.1, &self.0.guards())?;
        let file = ap.presentation.to_json();
        Ok(match self.0.format {
            Format::Json => {
                let pres: Value = serde_json::from_str(&file).expect("presentation json");
                json_text(json!({
                    "schema": 1,
                    "command": "present",
                    "monad": m.name(),
                    "max_arity": self.1,
                    "order_axioms": ap.order_axioms,
                    "flattening_axioms": ap.flattening_axioms,
                    "projection_axioms": ap.projection_axioms,
                    "skipped": ap.skipped,
                    "presentation": pres,
                }))
            }
            Format::Text | Format::Dot => file + "\n",
        })
    }
}

fn cmd_present(monad: &str, n: Option<usize>, opts: &Opts) -> Result<Output, CliError> {
    let n = n.unwrap_or(opts.max_arity);
    if n == 0 {
        return Err(CliError::Input("arity bound must be positive".into()));
    }
    let t = Truncation {
        depth: opts.depth.unwrap_or(1),
        length: opts.length.unwrap_or(2),
    };
    Catalog::visit(monad, t, Present(opts, n))?.map(Output::ok)
}

fn cmd_satisfies(path: &str, statement: &str, opts: &Opts) -> Result<Output, CliError> {
    let alg = input::algebra(path)?;
    let ineqs = Inequation::parse_statement(statement, alg.signature())?;
    let guards = opts.guards();
    let mut counterexample = None;
    for i in &ineqs {
        if let Some(env) = alg.counterexample(i, &guards)? {
            let names: Vec<String> = env
                .iter()
                .enumerate()
                .map(|(k, &v)| format!("x{k}={}", alg.carrier().label(v)))
                .collect();
            counterexample = Some((i.display(alg.signature()), names));
            break;
        }
    }
    let holds = counterexample.is_none();
    let text = match opts.format {
        Format::Json => json_text(json!({
            "schema": 1,
            "command": "satisfies",
            "statement": statement,
            "holds": holds,
            "counterexample": counterexample.as_ref().map(|(i, env)| json!({ "inequation": i, "assignment": env })),
        })),
        Format::Text | Format::Dot => match &counterexample {
            None => "true\n".to_string(),
            Some((i, env)) => format!("false\n  {i} fails at {}\n", env.join(" ")),
        },
    };
    Ok(Output {
        text,
        code: u8::from(!holds),
    })
}

fn cmd_poset(arg: &str, opts: &Opts) -> Result<Output, CliError> {
    let p = input::poset(arg)?;
    opts.guards().poset(p.len())?;
    Ok(Output::ok(render_poset("poset", &p, opts, json!({}), "")))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = &cli.opts;
    opts.positive()?;
    match &cli.command {
        Command::Free {
            presentation,
            poset,
        } => cmd_free(presentation, poset, opts),
        Command::Check {
            suite,
            monad,
            signature,
        } => cmd_check(*suite, monad, signature.as_deref(), opts),
        Command::Coinserter { pair } => cmd_coinserter(pair, opts),
        Command::Present { monad, n } => cmd_present(monad, *n, opts),
        Command::Satisfies { algebra, statement } => cmd_satisfies(algebra, statement, opts),
        Command::Poset { poset } => cmd_poset(poset, opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("ordvar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
