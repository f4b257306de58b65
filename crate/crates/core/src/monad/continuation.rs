use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Applied, MonadError, OrderedMonad};
use crate::finposet::{monotone_maps_unguarded, FinPoset};
use crate::guard::{saturating_pow, Guards};

#[derive(Debug)]
struct Hom {
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

type Key = (Vec<String>, Vec<(usize, usize)>);

/// `⟨A, A⟩ X`: the power of `A` indexed by the monotone maps `X -> A`,
/// ordered pointwise. An element is the tuple of its coordinates in the
/// enumeration order of `X -> A`.
#[derive(Debug)]
pub struct ContinuationMonad {
    a: Arc<FinPoset>,
    homs: Mutex<HashMap<Key, Arc<Hom>>>,
}

impl ContinuationMonad {
    pub fn new(a: Arc<FinPoset>) -> Self {
        ContinuationMonad {
            a,
            homs: Mutex::new(HashMap::new()),
        }
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.a
    }

    /// Like [`Self::hom`] but refuses domains whose naive map count
    /// `|A|^|x|` passes the hom guard.
    fn hom_checked(&self, x: &FinPoset, guards: &Guards) -> Result<Arc<Hom>, MonadError> {
        guards.hom(saturating_pow(self.a.len(), x.len()))?;
        Ok(self.hom(x))
    }

    fn hom(&self, x: &FinPoset) -> Arc<Hom> {
        let key = (x.labels().to_vec(), x.relation().pairs().collect());
        let mut cache = self.homs.lock().expect("hom cache poisoned");
        cache
            .entry(key)
            .or_insert_with(|| {
                let maps = monotone_maps_unguarded(x, &self.a);
                let index = maps
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, m)| (m, i))
                    .collect();
                Arc::new(Hom { maps, index })
            })
            .clone()
    }

    /// Monotone maps `x -> A` in coordinate order.
    pub fn coordinates(&self, x: &FinPoset) -> Vec<Vec<usize>> {
        self.hom(x).maps.clone()
    }

    /// Coordinate of the map `table: x -> A`.
    pub fn coordinate_of(&self, x: &FinPoset, table: &[usize]) -> Option<usize> {
        self.hom(x).index.get(table).copied()
    }
}

impl OrderedMonad for ContinuationMonad {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        "continuation".into()
    }

    fn elements(&self, base: &FinPoset, guards: &Guards) -> Result<Vec<Vec<usize>>, MonadError> {
        let h = self.hom_checked(base, guards)?.maps.len();
        let k = self.a.len();
        let total = saturating_pow(k, h);
        guards.stream(total)?;
        let mut out = Vec::with_capacity(total);
        if k == 0 && h > 0 {
            return Ok(out);
        }
        let mut t = vec![0usize; h];
        loop {
            out.push(t.clone());
            let mut i = h;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                t[i] += 1;
                if t[i] < k {
                    break;
                }
                t[i] = 0;
            }
        }
    }

    fn leq(&self, _: &FinPoset, a: &Vec<usize>, b: &Vec<usize>) -> bool {
        a.iter().zip(b).all(|(&p, &q)| self.a.leq(p, q))
    }

    fn unit(&self, base: &FinPoset, x: usize) -> Vec<usize> {
        self.hom(base).maps.iter().map(|f| f[x]).collect()
    }

    fn map(&self, dom: &FinPoset, cod: &FinPoset, h: &[usize], e: &Vec<usize>) -> Vec<usize> {
        let src = self.hom(dom);
        self.hom(cod)
            .maps
            .iter()
            .map(|f| {
                let fh: Vec<usize> = h.iter().map(|&y| f[y]).collect();
                e[src.index[&fh]]
            })
            .collect()
    }

    fn flatten(
        &self,
        base: &FinPoset,
        inner: &Applied<Vec<usize>>,
        outer: &Vec<usize>,
    ) -> Option<Vec<usize>> {
        let outer_hom = self.hom_checked(&inner.poset, &Guards::default()).ok()?;
        let coords = self.hom(base).maps.len();
        (0..coords)
            .map(|f| {
                let proj: Vec<usize> = inner.elems.iter().map(|phi| phi[f]).collect();
                outer_hom.index.get(&proj).map(|&i| outer[i])
            })
            .collect()
    }

    fn label(&self, _: &FinPoset, e: &Vec<usize>) -> String {
        let parts: Vec<&str> = e.iter().map(|&v| self.a.label(v)).collect();
        format!("⟨{}⟩", parts.join(","))
    }
}
