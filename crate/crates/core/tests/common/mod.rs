#![allow(dead_code)]

use std::sync::Arc;

use ordvar::finposet::poset_bank;
use ordvar::guard::saturating_pow;
use ordvar::{FinPoset, Guards, OrderedAlgebra, Presentation, Signature};

/// Every total monotone algebra of `sig` on `carrier`.
pub fn algebras_on(sig: &Arc<Signature>, carrier: &FinPoset) -> Vec<OrderedAlgebra> {
    let n = carrier.len();
    let sizes: Vec<usize> = (0..sig.len())
        .map(|f| saturating_pow(n, sig.arity(f)))
        .collect();
    let total_entries: usize = sizes.iter().sum();
    let carrier = Arc::new(carrier.clone());
    let mut out = Vec::new();
    let mut digits = vec![0usize; total_entries];
    loop {
        let mut ops = Vec::with_capacity(sizes.len());
        let mut at = 0;
        for &s in &sizes {
            ops.push(digits[at..at + s].iter().map(|&v| Some(v)).collect());
            at += s;
        }
        if let Ok(a) = OrderedAlgebra::new(sig.clone(), carrier.clone(), ops) {
            out.push(a);
        }
        let mut i = 0;
        while i < total_entries && digits[i] + 1 == n {
            digits[i] = 0;
            i += 1;
        }
        if i == total_entries {
            return out;
        }
        digits[i] += 1;
    }
}

/// Algebras of the variety on nonempty carriers of size `<= max`.
pub fn models(p: &Presentation, max: usize) -> Vec<OrderedAlgebra> {
    let g = Guards::default();
    let ineqs = p.inequations();
    poset_bank(max)
        .iter()
        .filter(|c| !c.is_empty())
        .flat_map(|c| algebras_on(&p.signature, c))
        .filter(|a| a.satisfies_all(&ineqs, &g).unwrap())
        .collect()
}

pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn monotone(dom: &FinPoset, cod: &FinPoset, f: &[usize]) -> bool {
    (0..dom.len()).all(|a| (0..dom.len()).all(|b| !dom.leq(a, b) || cod.leq(f[a], f[b])))
}
