use super::FinPoset;

/// Order isomorphism `p -> q` as a table, found by backtracking.
pub fn find_isomorphism(p: &FinPoset, q: &FinPoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.relation().count() != q.relation().count() {
        return None;
    }
    let sig = |x: &FinPoset, i: usize| (x.relation().row_count(i), x.down_set(i).len());
    let sp: Vec<_> = (0..n).map(|i| sig(p, i)).collect();
    let sq: Vec<_> = (0..n).map(|i| sig(q, i)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let mut table = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        p: &FinPoset,
        q: &FinPoset,
        sp: &[(usize, usize)],
        sq: &[(usize, usize)],
        table: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == p.len() {
            return true;
        }
        for j in 0..q.len() {
            if used[j] || sp[i] != sq[j] {
                continue;
            }
            let fits = (0..i)
                .all(|k| p.leq(k, i) == q.leq(table[k], j) && p.leq(i, k) == q.leq(j, table[k]));
            if !fits {
                continue;
            }
            table[i] = j;
            used[j] = true;
            if go(i + 1, p, q, sp, sq, table, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    go(0, p, q, &sp, &sq, &mut table, &mut used).then_some(table)
}

pub fn is_isomorphic(p: &FinPoset, q: &FinPoset) -> bool {
    find_isomorphism(p, q).is_some()
}

/// Same label set and the labels are ordered identically.
pub fn same_labeled_order(p: &FinPoset, q: &FinPoset) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let Some(map) = (0..p.len())
        .map(|i| q.index_of(p.label(i)))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_not_discrete() {
        assert!(!is_isomorphic(&FinPoset::chain(3), &FinPoset::discrete(3)));
        assert!(is_isomorphic(&FinPoset::chain(3), &FinPoset::chain(3)));
    }

    #[test]
    fn reversed_labels_still_isomorphic() {
        let c = FinPoset::chain(3);
        let r = FinPoset::from_pairs(vec!["c".into(), "b".into(), "a".into()], &[(2, 1), (1, 0)])
            .unwrap();
        let iso = find_isomorphism(&c, &r).unwrap();
        assert_eq!(iso, vec![2, 1, 0]);
        assert!(!same_labeled_order(&c, &r));
    }

    #[test]
    fn labeled_comparison_ignores_listing_order() {
        let a = FinPoset::from_pairs(vec!["u".into(), "v".into()], &[(0, 1)]).unwrap();
        let b = FinPoset::from_pairs(vec!["v".into(), "u".into()], &[(1, 0)]).unwrap();
        assert!(same_labeled_order(&a, &b));
    }
}
