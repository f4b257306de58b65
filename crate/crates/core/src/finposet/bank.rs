use std::collections::HashMap;

use super::{find_isomorphism, FinPoset};
use crate::bitrel::BitRelation;

/// Largest size [`posets_up_to_iso`] will enumerate.
pub const MAX_BANK_SIZE: usize = 6;

/// One representative per isomorphism class of `n`-element posets,
/// labeled `x0, x1, …`.
///
/// Every poset has a linear extension, so it suffices to enumerate strict
/// orders contained in `i < j`. Candidates are visited in increasing bit
/// mask order and the first member of each class is kept.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    assert!(n <= MAX_BANK_SIZE, "bank size {n} exceeds {MAX_BANK_SIZE}");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut reps: Vec<FinPoset> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut rel = BitRelation::identity(n);
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.set(i, j);
            }
        }
        if !rel.is_transitive() {
            continue;
        }
        let p = FinPoset::from_closed(labels.clone(), rel).expect("generated labels are distinct");
        let mut key: Vec<(usize, usize)> = (0..n)
            .map(|i| (p.relation().row_count(i), p.down_set(i).len()))
            .collect();
        key.sort_unstable();
        let bucket = buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|&r| find_isomorphism(&reps[r], &p).is_some())
        {
            continue;
        }
        bucket.push(reps.len());
        reps.push(p);
    }
    reps
}

/// All posets of size `0..=max` up to isomorphism, smallest first.
pub fn poset_bank(max: usize) -> Vec<FinPoset> {
    (0..=max).flat_map(posets_up_to_iso).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequence() {
        // unlabeled posets: 1, 1, 2, 5, 16, 63, 318
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let reps = posets_up_to_iso(4);
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                assert!(find_isomorphism(&reps[i], &reps[j]).is_none());
            }
        }
    }

    #[test]
    fn bank_up_to_three() {
        let bank = poset_bank(3);
        assert_eq!(bank.len(), 9);
        assert!(bank[0].is_empty());
        assert!(bank[2].is_discrete() && bank[2].len() == 2);
    }
}
