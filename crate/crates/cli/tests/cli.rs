use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    let v: Value =
        serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    assert_eq!(v["schema"], 1);
    (v, o.status.code().unwrap())
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn pairs(v: &Value) -> Vec<(String, String)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p[0].as_str().unwrap().to_string(),
                p[1].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn bounded_free_algebra_on_a_point_is_a_three_chain() {
    let (v, code) = json(&["free", "bounded-poset", "discrete:1"]);
    assert_eq!(code, 0);
    let elems = strs(&v["poset"]["elements"]);
    assert_eq!(elems.len(), 3);
    let hasse = pairs(&v["poset"]["hasse"]);
    assert_eq!(hasse.len(), 2);
    // A chain: one bottom, one top, every element covered at most once.
    let bottoms: Vec<_> = elems
        .iter()
        .filter(|e| !hasse.iter().any(|(_, b)| b == *e))
        .collect();
    let tops: Vec<_> = elems
        .iter()
        .filter(|e| !hasse.iter().any(|(a, _)| a == *e))
        .collect();
    assert_eq!((bottoms.len(), tops.len()), (1, 1));
    assert_ne!(bottoms[0], tops[0]);
}

#[test]
fn empty_presentation_gives_the_term_poset() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"signature": {{"symbols": [{{"name": "f", "arity": 1}}]}}, "axioms": []}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let (v, code) = json(&["free", path, "chain:2", "--depth", "2"]);
    assert_eq!(code, 0);
    // Terms f^k(x) for k <= 2 over two generators, ordered only by x0 < x1.
    assert_eq!(strs(&v["poset"]["elements"]).len(), 6);
    let hasse = pairs(&v["poset"]["hasse"]);
    assert_eq!(hasse.len(), 3);
    assert!(hasse.contains(&("(f (f x0))".into(), "(f (f x1))".into())));
}

#[test]
fn ordered_monoid_on_the_two_chain_orders_words_pointwise() {
    let (v, code) = json(&[
        "free",
        "ordered-monoid",
        "chain:2",
        "--length",
        "2",
        "--closure",
    ]);
    assert_eq!(code, 0);
    let elems = strs(&v["poset"]["elements"]);
    assert_eq!(elems.len(), 7);
    let order = pairs(&v["poset"]["order"]);
    // Oracle: same length and letterwise x0 <= x1.
    let letters = |w: &str| -> Vec<u8> {
        if w == "ε" {
            return vec![];
        }
        w.split('·')
            .map(|l| if l == "x0" { 0 } else { 1 })
            .collect()
    };
    let mut want = Vec::new();
    for a in &elems {
        for b in &elems {
            let (u, w) = (letters(a), letters(b));
            if a != b && u.len() == w.len() && u.iter().zip(&w).all(|(p, q)| p <= q) {
                want.push((a.clone(), b.clone()));
            }
        }
    }
    let mut got = order;
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn plus_star_fails_strong_finitarity_on_the_two_chain() {
    let (v, code) = json(&["check", "sf", "plus-star"]);
    assert_eq!(code, 1);
    let cell = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["poset"] == "{x0,x1 | x0<x1}")
        .unwrap();
    assert_eq!(cell["verdict"], "FAILS");
    assert_eq!(
        cell["witness"],
        "(+ x0 x1) <= (* x0 x1) holds in TP but not in Q"
    );
}

#[test]
fn passing_suites_exit_zero() {
    for args in [
        ["check", "lift", "word-pointwise"],
        ["check", "laws", "identity"],
    ] {
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["summary"]["fail"], 0);
        assert!(v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["verdict"] == "PASS"));
    }
}

#[test]
fn ctx_partial_is_flagged_by_the_lifting_suite() {
    let o = run(&["check", "lift", "ctx-partial", "--bank-size", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn duality_holds_for_pointwise_words() {
    let (v, code) = json(&["check", "duality", "word-pointwise"]);
    assert_eq!(code, 0);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
}

#[test]
fn unknown_monad_is_an_input_error() {
    assert_eq!(run(&["check", "laws", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["present", "nope", "2"]).status.code(), Some(2));
}

#[test]
fn canonical_pair_of_the_two_chain_is_carried_by_the_identity() {
    let (v, code) = json(&["coinserter", &data("chain2_canonical.json")]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["poset"]["elements"]), ["0", "1"]);
    assert_eq!(
        pairs(&v["poset"]["hasse"]),
        [("0".to_string(), "1".to_string())]
    );
    assert_eq!(
        pairs(&v["quotient"]),
        [("0".into(), "0".into()), ("1".into(), "1".into())]
    );
}

#[test]
fn glued_pair_collapses_a_cycle() {
    let (v, _) = json(&["coinserter", &data("glue.json")]);
    assert_eq!(strs(&v["poset"]["elements"]), ["p", "r"]);
    assert_eq!(pairs(&v["quotient"])[1], ("q".into(), "p".into()));
}

#[test]
fn identity_presentation_collapses_to_variables() {
    let o = run(&["present", "identity", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&o.stdout).unwrap();
    let (v, code) = json(&[
        "free",
        f.path().to_str().unwrap(),
        "discrete:2",
        "--depth",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(strs(&v["poset"]["elements"]), ["x0", "x1"]);
}

#[test]
fn satisfies_reports_truth_through_the_exit_code() {
    let o = run(&["satisfies", &data("bounded2.json"), "leq 0 x0"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let o = run(&["satisfies", &data("max2.json"), "leq (mul x0 x1) x0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn output_is_independent_of_seed_and_threads() {
    let base = run(&["check", "laws", "word-bottom-unit"]);
    assert_eq!(base.status.code(), Some(0));
    for extra in [["--seed", "7"], ["--seed", "8"]] {
        let mut args = vec!["check", "laws", "word-bottom-unit", "--sequential"];
        args.extend(extra);
        assert_eq!(run(&args).stdout, base.stdout);
    }
}

#[test]
fn guard_exits_with_three() {
    let o = run(&[
        "free",
        &data("semilattice.json"),
        "discrete:3",
        "--depth",
        "3",
        "--guard-size",
        "50",
    ]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn malformed_input_exits_with_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}}"#
    )
    .unwrap();
    assert_eq!(
        run(&["poset", f.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["poset", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["free", "ordered-monoid", "chain:2", "--length", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dot_output_draws_the_hasse_diagram_upward() {
    let o = run(&["poset", "chain:3", "--format", "dot"]);
    let s = stdout(&o);
    assert!(s.contains("rankdir=BT"));
    assert_eq!(s.matches("->").count(), 2);
    let o = run(&["poset", "chain:3", "--format", "dot", "--closure"]);
    assert_eq!(stdout(&o).matches("->").count(), 3);
}
