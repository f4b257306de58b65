//! Interned, depth-truncated term spaces and the structural term order.

use std::collections::HashMap;
use std::sync::Arc;

use super::{format_term, Signature, Term, TermError, VarNames};
use crate::bitrel::BitRelation;
use crate::finposet::FinPoset;
use crate::guard::{saturating_pow, GuardError, Guards};

/// A term node whose children are indices into the same [`TermSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(usize),
    App(usize, Box<[u32]>),
}

/// All terms of depth `<= d` over `n` generators, interned.
///
/// Order: variables, then for each symbol in signature order the
/// applications to tuples over the depth-`(d-1)` list, tuples in
/// lexicographic order (last position fastest).
#[derive(Debug, Clone)]
pub struct TermSpace {
    sig: Arc<Signature>,
    n_vars: usize,
    max_depth: usize,
    nodes: Vec<Node>,
    depths: Vec<u8>,
    apps: HashMap<(u32, Box<[u32]>), u32>,
}

fn level_size(sig: &Signature, n: usize, prev: usize) -> usize {
    sig.symbols().iter().fold(n, |acc, s| {
        acc.saturating_add(saturating_pow(prev, s.arity))
    })
}

impl TermSpace {
    /// Number of terms of depth `<= d`, saturating.
    pub fn count(sig: &Signature, n: usize, d: usize) -> usize {
        (0..d).fold(n, |prev, _| level_size(sig, n, prev))
    }

    pub fn new(
        sig: Arc<Signature>,
        n_vars: usize,
        depth: usize,
        guards: &Guards,
    ) -> Result<Self, GuardError> {
        guards.terms(Self::count(&sig, n_vars, depth))?;
        // global interning in creation order: children always precede parents
        let mut cnodes: Vec<Node> = (0..n_vars).map(Node::Var).collect();
        let mut cdepth: Vec<u8> = vec![0; n_vars];
        let mut cindex: HashMap<(u32, Box<[u32]>), u32> = HashMap::new();
        let vars: Vec<u32> = (0..n_vars as u32).collect();
        let mut level = vars.clone();
        for _ in 0..depth {
            let mut next = vars.clone();
            for (f, s) in sig.symbols().iter().enumerate() {
                if s.arity > 0 && level.is_empty() {
                    continue;
                }
                let mut digits = vec![0usize; s.arity];
                loop {
                    let kids: Box<[u32]> = digits.iter().map(|&i| level[i]).collect();
                    let key = (f as u32, kids);
                    let id = match cindex.get(&key) {
                        Some(&id) => id,
                        None => {
                            let id = cnodes.len() as u32;
                            let d =
                                1 + key.1.iter().map(|&c| cdepth[c as usize]).max().unwrap_or(0);
                            cnodes.push(Node::App(f, key.1.clone()));
                            cdepth.push(d);
                            cindex.insert(key, id);
                            id
                        }
                    };
                    next.push(id);
                    // odometer, last digit fastest
                    let mut k = s.arity;
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        digits[k] += 1;
                        if digits[k] < level.len() {
                            break;
                        }
                        digits[k] = 0;
                        if k == 0 {
                            k = usize::MAX;
                            break;
                        }
                    }
                    if s.arity == 0 || k == usize::MAX {
                        break;
                    }
                }
            }
            level = next;
        }
        let mut pos = vec![u32::MAX; cnodes.len()];
        for (p, &c) in level.iter().enumerate() {
            pos[c as usize] = p as u32;
        }
        let mut nodes = Vec::with_capacity(level.len());
        let mut depths = Vec::with_capacity(level.len());
        let mut apps = HashMap::with_capacity(level.len());
        for (p, &c) in level.iter().enumerate() {
            let node = match &cnodes[c as usize] {
                Node::Var(x) => Node::Var(*x),
                Node::App(f, kids) => {
                    let kids: Box<[u32]> = kids.iter().map(|&k| pos[k as usize]).collect();
                    apps.insert((*f as u32, kids.clone()), p as u32);
                    Node::App(*f, kids)
                }
            };
            nodes.push(node);
            depths.push(cdepth[c as usize]);
        }
        Ok(TermSpace {
            sig,
            n_vars,
            max_depth: depth,
            nodes,
            depths,
            apps,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depths[i] as usize
    }

    /// The application `f(kids)`, if it lies inside the truncation.
    pub fn app(&self, f: usize, kids: &[usize]) -> Option<usize> {
        let key: Box<[u32]> = kids.iter().map(|&k| k as u32).collect();
        self.apps.get(&(f as u32, key)).map(|&p| p as usize)
    }

    pub(crate) fn app_u32(&self, f: usize, kids: Box<[u32]>) -> Option<usize> {
        self.apps.get(&(f as u32, kids)).map(|&p| p as usize)
    }

    pub fn term(&self, i: usize) -> Term {
        match &self.nodes[i] {
            Node::Var(x) => Term::Var(*x),
            Node::App(f, kids) => {
                Term::App(*f, kids.iter().map(|&k| self.term(k as usize)).collect())
            }
        }
    }

    pub fn id_of(&self, t: &Term) -> Option<usize> {
        match t {
            Term::Var(x) => (*x < self.n_vars).then_some(*x),
            Term::App(f, args) => {
                let kids = args
                    .iter()
                    .map(|a| self.id_of(a))
                    .collect::<Option<Vec<_>>>()?;
                self.app(*f, &kids)
            }
        }
    }

    /// `t[x_i ↦ subst[i]]` as an element of the space, if it fits.
    pub fn instantiate(&self, t: &Term, subst: &[usize]) -> Option<usize> {
        match t {
            Term::Var(x) => Some(subst[*x]),
            Term::App(f, args) => {
                let kids = args
                    .iter()
                    .map(|a| self.instantiate(a, subst).map(|k| k as u32))
                    .collect::<Option<Box<[u32]>>>()?;
                self.app_u32(*f, kids)
            }
        }
    }

    pub fn label(&self, i: usize, names: VarNames<'_>) -> String {
        format_term(&self.term(i), &self.sig, names)
    }

    /// Indices of terms of depth `<= k`, in space order.
    pub fn ids_up_to_depth(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.depth(i) <= k).collect()
    }

    /// The structural order over generator order `base`.
    pub fn structural_order(&self, base: &FinPoset) -> BitRelation {
        assert_eq!(base.len(), self.n_vars);
        let n = self.len();
        let mut rel = BitRelation::new(n);
        let mut apps: Vec<usize> = Vec::new();
        for i in 0..n {
            match &self.nodes[i] {
                Node::Var(x) => {
                    for y in base.relation().successors(*x) {
                        rel.set(i, y);
                    }
                }
                Node::App(..) => apps.push(i),
            }
        }
        // children of a pair are strictly shallower than its deeper member,
        // so visiting by depth sees every child pair decided first
        apps.sort_by_key(|&i| self.depths[i]);
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); self.sig.len()];
        for a in apps {
            let Node::App(f, ka) = &self.nodes[a] else {
                unreachable!()
            };
            seen[*f].push(a);
            for &b in &seen[*f] {
                let Node::App(_, kb) = &self.nodes[b] else {
                    unreachable!()
                };
                let up = ka
                    .iter()
                    .zip(kb.iter())
                    .all(|(&x, &y)| rel.get(x as usize, y as usize));
                let down = ka
                    .iter()
                    .zip(kb.iter())
                    .all(|(&x, &y)| rel.get(y as usize, x as usize));
                if up {
                    rel.set(a, b);
                }
                if down {
                    rel.set(b, a);
                }
            }
        }
        rel
    }
}

/// The depth-truncated ordered term algebra `T_Σ X`.
#[derive(Debug, Clone)]
pub struct TermPoset {
    pub space: Arc<TermSpace>,
    pub base: Arc<FinPoset>,
    pub poset: Arc<FinPoset>,
}

impl TermPoset {
    pub fn new(
        sig: Arc<Signature>,
        base: Arc<FinPoset>,
        depth: usize,
        guards: &Guards,
    ) -> Result<Self, TermError> {
        let space = Arc::new(TermSpace::new(sig, base.len(), depth, guards)?);
        Ok(Self::over(space, base))
    }

    pub fn over(space: Arc<TermSpace>, base: Arc<FinPoset>) -> Self {
        let rel = space.structural_order(&base);
        let labels = (0..space.len())
            .map(|i| space.label(i, VarNames::Labels(base.labels())))
            .collect();
        let poset =
            Arc::new(FinPoset::from_closed(labels, rel).expect("printed terms are distinct"));
        TermPoset { space, base, poset }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }
}

/// Structural term order: variables compare in `x`, applications compare
/// when heads agree and arguments compare componentwise.
pub fn term_leq(s: &Term, t: &Term, x: &FinPoset) -> bool {
    match (s, t) {
        (Term::Var(a), Term::Var(b)) => x.leq(*a, *b),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| term_leq(a, b, x))
        }
        _ => false,
    }
}
