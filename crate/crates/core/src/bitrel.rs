//! Dense binary relations on `0..n`, one bit row per element.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRelation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for BitRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitRelation")
            .field("n", &self.n)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl BitRelation {
    pub fn new(n: usize) -> Self {
        let stride = n.div_ceil(WORD);
        BitRelation {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::new(n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::new(n);
        for (a, b) in pairs {
            r.set(a, b);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        debug_assert!(a < self.n && b < self.n);
        self.bits[a * self.stride + b / WORD] >> (b % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize) {
        debug_assert!(a < self.n && b < self.n);
        self.bits[a * self.stride + b / WORD] |= 1 << (b % WORD);
    }

    /// Sets `(a, b)`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let word = &mut self.bits[a * self.stride + b / WORD];
        let mask = 1 << (b % WORD);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.stride..(a + 1) * self.stride]
    }

    /// Elements related to `a`, ascending.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(a))
    }

    /// Elements `b` with `b R a`, ascending.
    pub fn predecessors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.get(b, a))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.successors(a).map(move |b| (a, b)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_count(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BitRelation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|a| {
            self.successors(a).all(|b| {
                self.row(b)
                    .iter()
                    .zip(self.row(a))
                    .all(|(rb, ra)| rb & !ra == 0)
            })
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(a, b)| a == b || !self.get(b, a))
    }

    /// The relation restricted to the listed elements, re-indexed in list order.
    pub fn restrict(&self, keep: &[usize]) -> BitRelation {
        let mut r = BitRelation::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.get(a, b) {
                    r.set(i, j);
                }
            }
        }
        r
    }

    /// Replaces the relation by its reflexive-transitive closure.
    ///
    /// Strongly connected components are found with an iterative Tarjan
    /// search; components come out sinks first, so each component row is
    /// the union of its members and of the already-finished rows of the
    /// components it points to.
    pub fn close(&mut self) {
        let n = self.n;
        if n == 0 {
            return;
        }
        let (comp_of, comps) = self.components();
        let mut comp_rows: Vec<Vec<u64>> = Vec::with_capacity(comps.len());
        let mut stamp = vec![usize::MAX; comps.len()];
        for (c, members) in comps.iter().enumerate() {
            let mut row = vec![0u64; self.stride];
            for &m in members {
                row[m / WORD] |= 1 << (m % WORD);
            }
            stamp[c] = c;
            for &m in members {
                for s in self.successors(m) {
                    let sc = comp_of[s];
                    if stamp[sc] != c {
                        stamp[sc] = c;
                        for (w, o) in row.iter_mut().zip(&comp_rows[sc]) {
                            *w |= o;
                        }
                    }
                }
            }
            comp_rows.push(row);
        }
        for (c, members) in comps.iter().enumerate() {
            for &m in members {
                let start = m * self.stride;
                self.bits[start..start + self.stride].copy_from_slice(&comp_rows[c]);
            }
        }
    }

    /// Strongly connected components in reverse topological order
    /// (a component is listed after every component it reaches).
    pub fn components(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.n;
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut comp_of = vec![UNSEEN; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut next = 0usize;
        // call frame: (node, next bit position to scan)
        let mut frames: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            frames.push((root, 0));
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
                match next_bit(self.row(v), *pos) {
                    Some(w) => {
                        *pos = w + 1;
                        if index[w] == UNSEEN {
                            index[w] = next;
                            low[w] = next;
                            next += 1;
                            stack.push(w);
                            on_stack[w] = true;
                            frames.push((w, 0));
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    None => {
                        frames.pop();
                        if let Some(&(parent, _)) = frames.last() {
                            low[parent] = low[parent].min(low[v]);
                        }
                        if low[v] == index[v] {
                            let c = comps.len();
                            let mut members = Vec::new();
                            loop {
                                let w = stack.pop().expect("tarjan stack underflow");
                                on_stack[w] = false;
                                comp_of[w] = c;
                                members.push(w);
                                if w == v {
                                    break;
                                }
                            }
                            members.sort_unstable();
                            comps.push(members);
                        }
                    }
                }
            }
        }
        (comp_of, comps)
    }
}

fn next_bit(row: &[u64], from: usize) -> Option<usize> {
    let mut w = from / WORD;
    if w >= row.len() {
        return None;
    }
    let mut word = row[w] & (!0u64).checked_shl((from % WORD) as u32).unwrap_or(0);
    loop {
        if word != 0 {
            return Some(w * WORD + word.trailing_zeros() as usize);
        }
        w += 1;
        if w >= row.len() {
            return None;
        }
        word = row[w];
    }
}

fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + b)
            }
        })
    })
}
