//! The builtin varieties with exact normal forms.

use std::sync::Arc;

use super::{Axiom, OrderedAlgebra, Presentation, VarietyError};
use crate::finposet::FinPoset;
use crate::guard::Guards;
use crate::sigterm::{Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Monoids with monotone multiplication; free algebra: words, pointwise.
    OrderedMonoid,
    /// Ordered monoids whose unit is the least element.
    MonoidBottomUnit,
    /// Posets with a least and a greatest constant.
    BoundedPoset,
}

/// Normal form of a term in a builtin variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    Word(Vec<usize>),
    Bottom,
    Gen(usize),
    Top,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [
        Builtin::OrderedMonoid,
        Builtin::MonoidBottomUnit,
        Builtin::BoundedPoset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::OrderedMonoid => "ordered-monoid",
            Builtin::MonoidBottomUnit => "monoid-bottom-unit",
            Builtin::BoundedPoset => "bounded-poset",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, VarietyError> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| VarietyError::UnknownBuiltin(name.to_string()))
    }

    pub fn signature(self) -> Arc<Signature> {
        Arc::new(match self {
            Builtin::OrderedMonoid | Builtin::MonoidBottomUnit => {
                Signature::of(&[("mul", 2), ("e", 0)])
            }
            Builtin::BoundedPoset => Signature::of(&[("0", 0), ("1", 0)]),
        })
    }

    pub fn presentation(self) -> Presentation {
        let sig = self.signature();
        let x = Term::Var;
        let axioms = match self {
            Builtin::BoundedPoset => vec![
                Axiom::leq(Term::constant(0), x(0)),
                Axiom::leq(x(0), Term::constant(1)),
            ],
            _ => {
                let mul = |a, b| Term::app(0, [a, b]);
                let e = Term::constant(1);
                let mut ax = vec![
                    Axiom::eq(mul(mul(x(0), x(1)), x(2)), mul(x(0), mul(x(1), x(2)))),
                    Axiom::eq(mul(e.clone(), x(0)), x(0)),
                    Axiom::eq(mul(x(0), e.clone()), x(0)),
                ];
                if self == Builtin::MonoidBottomUnit {
                    ax.push(Axiom::leq(e, x(0)));
                }
                ax
            }
        };
        Presentation::new(sig, axioms).expect("builtin axioms are well formed")
    }

    /// Recognizes a presentation equal to one of the builtins.
    pub fn recognize(p: &Presentation) -> Option<Builtin> {
        Self::ALL.into_iter().find(|b| b.presentation() == *p)
    }

    /// Normal form of a term over generators (untruncated).
    pub fn normal_form(self, t: &Term) -> NormalForm {
        match self {
            Builtin::BoundedPoset => match t {
                Term::Var(x) => NormalForm::Gen(*x),
                Term::App(0, _) => NormalForm::Bottom,
                Term::App(_, _) => NormalForm::Top,
            },
            _ => {
                let mut w = Vec::new();
                flatten_word(t, &mut w);
                NormalForm::Word(w)
            }
        }
    }

    pub fn nf_leq(self, x: &FinPoset, a: &NormalForm, b: &NormalForm) -> bool {
        use NormalForm::*;
        match (self, a, b) {
            (Builtin::OrderedMonoid, Word(u), Word(v)) => pointwise_word_leq(x, u, v),
            (Builtin::MonoidBottomUnit, Word(u), Word(v)) => bottom_unit_word_leq(x, u, v),
            (Builtin::BoundedPoset, Bottom, _) | (Builtin::BoundedPoset, _, Top) => true,
            (Builtin::BoundedPoset, Gen(p), Gen(q)) => x.leq(*p, *q),
            _ => false,
        }
    }

    /// The normal-form free algebra on `x`; words are truncated at `length`.
    pub fn free_algebra(self, x: &FinPoset, length: usize) -> OrderedAlgebra {
        match self {
            Builtin::OrderedMonoid => free_word_pointwise(x, length),
            Builtin::MonoidBottomUnit => free_word_bottom_unit(x, length),
            Builtin::BoundedPoset => free_bounded_poset(x),
        }
    }

    /// Carrier index of a normal form in [`Builtin::free_algebra`].
    pub fn element_of(self, x: &FinPoset, length: usize, nf: &NormalForm) -> Option<usize> {
        match (self, nf) {
            (Builtin::BoundedPoset, NormalForm::Bottom) => Some(0),
            (Builtin::BoundedPoset, NormalForm::Gen(g)) => Some(1 + g),
            (Builtin::BoundedPoset, NormalForm::Top) => Some(1 + x.len()),
            (Builtin::BoundedPoset, _) => None,
            (_, NormalForm::Word(w)) => word_index(x.len(), length, w),
            _ => None,
        }
    }
}

fn flatten_word(t: &Term, out: &mut Vec<usize>) {
    match t {
        Term::Var(x) => out.push(*x),
        Term::App(0, args) => args.iter().for_each(|a| flatten_word(a, out)),
        Term::App(_, _) => {}
    }
}

/// All words of length `<= max_len` over `n` letters, by length then
/// lexicographically.
pub fn words_up_to(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        if n == 0 {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for a in 0..n {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Index of `w` in [`words_up_to`]`(n, max_len)`.
pub fn word_index(n: usize, max_len: usize, w: &[usize]) -> Option<usize> {
    if w.len() > max_len || w.iter().any(|&a| a >= n) {
        return None;
    }
    let shorter: usize = (0..w.len()).map(|k| n.pow(k as u32)).sum();
    Some(shorter + w.iter().fold(0, |acc, &a| acc * n + a))
}

/// `ε` for the empty word; letters are concatenated when every label is
/// a single character, otherwise joined by `·`.
pub fn word_label(w: &[usize], letters: &[String]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let single = letters.iter().all(|l| l.chars().count() == 1);
    let parts: Vec<&str> = w.iter().map(|&a| letters[a].as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join("·")
    }
}

/// Equal length and letterwise `<=`.
pub fn pointwise_word_leq(x: &FinPoset, u: &[usize], v: &[usize]) -> bool {
    u.len() == v.len() && u.iter().zip(v).all(|(&a, &b)| x.leq(a, b))
}

/// `u <= v` iff `v` splits into `|u|` consecutive nonempty blocks, block
/// `i` containing a letter above `u[i]`; the empty word is below all.
/// Decided by dynamic programming over block boundaries.
pub fn bottom_unit_word_leq(x: &FinPoset, u: &[usize], v: &[usize]) -> bool {
    if u.is_empty() {
        return true;
    }
    let m = v.len();
    // ok[j]: the first i letters of u cover exactly v[..j]
    let mut ok = vec![false; m + 1];
    ok[0] = true;
    for &letter in u {
        let mut next = vec![false; m + 1];
        for start in 0..m {
            if !ok[start] {
                continue;
            }
            let mut dominated = false;
            for end in start + 1..=m {
                dominated |= x.leq(letter, v[end - 1]);
                if dominated {
                    next[end] = true;
                }
            }
        }
        ok = next;
    }
    ok[m]
}

fn word_algebra(
    x: &FinPoset,
    max_len: usize,
    leq: fn(&FinPoset, &[usize], &[usize]) -> bool,
) -> OrderedAlgebra {
    let words = words_up_to(x.len(), max_len);
    let labels = words.iter().map(|w| word_label(w, x.labels())).collect();
    let carrier = Arc::new(
        FinPoset::from_fn(labels, |a, b| leq(x, &words[a], &words[b]))
            .expect("word orders are partial orders"),
    );
    let n = x.len();
    let guards = Guards {
        max_hom: usize::MAX,
        ..Guards::default()
    };
    OrderedAlgebra::from_fn(
        Builtin::OrderedMonoid.signature(),
        carrier,
        &guards,
        |f, args| {
            if f == 1 {
                return Some(0);
            }
            let mut w = words[args[0]].clone();
            w.extend_from_slice(&words[args[1]]);
            word_index(n, max_len, &w)
        },
    )
    .expect("concatenation is monotone")
}

/// Words of length `<= max_len` ordered pointwise; concatenation is
/// undefined past the budget.
pub fn free_word_pointwise(x: &FinPoset, max_len: usize) -> OrderedAlgebra {
    word_algebra(x, max_len, pointwise_word_leq)
}

/// Words of length `<= max_len` under the block-decomposition order.
pub fn free_word_bottom_unit(x: &FinPoset, max_len: usize) -> OrderedAlgebra {
    word_algebra(x, max_len, bottom_unit_word_leq)
}

/// `X` with fresh `⊥` (first) and `⊤` (last) adjoined.
pub fn free_bounded_poset(x: &FinPoset) -> OrderedAlgebra {
    let n = x.len();
    let mut labels = vec!["⊥".to_string()];
    labels.extend(x.labels().iter().cloned());
    labels.push("⊤".to_string());
    let carrier = Arc::new(
        FinPoset::from_fn(labels, |a, b| {
            a == 0 || b == n + 1 || (a <= n && b <= n && a > 0 && b > 0 && x.leq(a - 1, b - 1))
        })
        .expect("bounded extension is a partial order"),
    );
    OrderedAlgebra::from_fn(
        Builtin::BoundedPoset.signature(),
        carrier,
        &Guards::default(),
        |f, _| Some(if f == 0 { 0 } else { n + 1 }),
    )
    .expect("constants are monotone")
}
