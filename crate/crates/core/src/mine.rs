//! Itemset counting: exact pair counts and level-wise Apriori.

use std::collections::{BTreeMap, HashSet};
use std::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::threshold::Threshold;
use crate::txdb::{Itemset, Transaction, TransactionDb};

/// An itemset with its absolute count in a database of `n_total` transactions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemsetCount {
    pub itemset: Itemset,
    pub count: usize,
    pub n_total: usize,
}

impl ItemsetCount {
    /// `count / n_total`, divided once. Zero for an empty database.
    pub fn support(&self) -> f64 {
        if self.n_total == 0 {
            0.0
        } else {
            self.count as f64 / self.n_total as f64
        }
    }
}

/// Output order shared by every miner: size first, then codes lexicographically.
pub fn canonical_order(a: &ItemsetCount, b: &ItemsetCount) -> std::cmp::Ordering {
    a.itemset
        .len()
        .cmp(&b.itemset.len())
        .then_with(|| a.itemset.codes().cmp(b.itemset.codes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MiningConfig {
    pub min_support: Threshold,
    /// `None` means unbounded.
    pub max_itemset_size: Option<NonZeroUsize>,
}

impl MiningConfig {
    pub fn new(min_support: Threshold) -> Self {
        MiningConfig { min_support, max_itemset_size: None }
    }

    pub fn with_max_size(mut self, size: usize) -> Result<Self> {
        self.max_itemset_size = Some(
            NonZeroUsize::new(size)
                .ok_or_else(|| Error::InvalidConfig("max itemset size must be positive".into()))?,
        );
        Ok(self)
    }

    fn allows(&self, size: usize) -> bool {
        self.max_itemset_size.is_none_or(|m| size <= m.get())
    }

    /// Frequent means occurring at least once and meeting the threshold.
    fn keeps(&self, count: usize, n_total: usize) -> bool {
        count >= 1 && self.min_support.is_met_by(count, n_total)
    }
}

/// Counts every unordered pair that co-occurs in at least one transaction.
/// A transaction of size k contributes to all k·(k-1)/2 of its pairs.
pub fn pair_counts(db: &TransactionDb) -> Vec<ItemsetCount> {
    let mut counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for t in db.transactions() {
        let codes = t.codes();
        for (i, a) in codes.iter().enumerate() {
            for b in &codes[i + 1..] {
                *counts.entry((a, b)).or_default() += 1;
            }
        }
    }
    counts
        .into_iter()
        .map(|((a, b), count)| ItemsetCount {
            itemset: Itemset::from_sorted_unchecked(vec![a.to_string(), b.to_string()]),
            count,
            n_total: db.n_total(),
        })
        .collect()
}

/// Level-wise frequent itemset mining.
///
/// Returns exactly the itemsets with count ≥ 1, support ≥ `min_support`
/// and size ≤ the cap, sorted by [`canonical_order`]. Zero-count itemsets
/// are never produced, even at `min_support = 0`.
pub fn apriori(db: &TransactionDb, cfg: &MiningConfig) -> Vec<ItemsetCount> {
    let n = db.n_total();
    let mut out = Vec::new();
    if !cfg.allows(1) {
        return out;
    }

    let mut level: Vec<Itemset> = Vec::new();
    for (code, count) in db.item_counts() {
        if cfg.keeps(count, n) {
            let itemset = Itemset::from_sorted_unchecked(vec![code]);
            level.push(itemset.clone());
            out.push(ItemsetCount { itemset, count, n_total: n });
        }
    }

    let mut k = 2;
    while !level.is_empty() && cfg.allows(k) {
        let candidates = generate_candidates(&level);
        if candidates.is_empty() {
            break;
        }
        let counts = count_candidates(db.transactions(), &candidates, k);
        level.clear();
        for (itemset, count) in candidates.into_iter().zip(counts) {
            if cfg.keeps(count, n) {
                level.push(itemset.clone());
                out.push(ItemsetCount { itemset, count, n_total: n });
            }
        }
        k += 1;
    }

    out.sort_by(canonical_order);
    out
}

/// Joins (k-1)-itemsets that share their first k-2 codes, then drops any
/// candidate with an infrequent (k-1)-subset. `level` must be sorted.
fn generate_candidates(level: &[Itemset]) -> Vec<Itemset> {
    let known: HashSet<&[String]> = level.iter().map(Itemset::codes).collect();
    let mut candidates = Vec::new();
    for (i, a) in level.iter().enumerate() {
        let a = a.codes();
        let prefix = &a[..a.len() - 1];
        for b in &level[i + 1..] {
            let b = b.codes();
            if &b[..b.len() - 1] != prefix {
                // sorted input: no later itemset shares the prefix either
                break;
            }
            let mut joined = a.to_vec();
            joined.push(b[b.len() - 1].clone());
            let all_subsets_frequent = (0..joined.len() - 2).all(|skip| {
                let subset: Vec<String> = joined
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, c)| c.clone())
                    .collect();
                known.contains(subset.as_slice())
            });
            if all_subsets_frequent {
                candidates.push(Itemset::from_sorted_unchecked(joined));
            }
        }
    }
    candidates
}

fn count_candidates(transactions: &[Transaction], candidates: &[Itemset], k: usize) -> Vec<usize> {
    let mut counts = vec![0; candidates.len()];
    for t in transactions.iter().filter(|t| t.len() >= k) {
        for (slot, candidate) in counts.iter_mut().zip(candidates) {
            if t.items().is_superset(candidate) {
                *slot += 1;
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::txdb::{fixture::advertisement_survey, parse_transactions};

    fn codes(found: &[ItemsetCount]) -> Vec<String> {
        found.iter().map(|c| c.itemset.to_string()).collect()
    }

    #[test]
    fn pair_counts_on_fixture() {
        let pairs = pair_counts(&advertisement_survey());
        assert_eq!(pairs.len(), 9);
        let get = |a: &str, b: &str| {
            let key = Itemset::new([a, b]).unwrap();
            pairs.iter().find(|p| p.itemset == key).map(|p| p.count)
        };
        assert_eq!(get("H", "N"), Some(120));
        assert_eq!(get("V", "C"), Some(50));
        assert_eq!(get("N", "R"), None);
    }

    #[test]
    fn pair_counts_empty_and_triple() {
        assert!(pair_counts(&TransactionDb::default()).is_empty());
        let pairs = pair_counts(&parse_transactions("H,N,P\n").unwrap());
        assert_eq!(codes(&pairs), ["{H,N}", "{H,P}", "{N,P}"]);
        assert!(pairs.iter().all(|p| p.count == 1));
    }

    #[test]
    fn fixture_at_ten_percent() {
        let cfg = MiningConfig::new("0.1".parse().unwrap());
        let found = apriori(&advertisement_survey(), &cfg);
        // R (30/350) and HC (30/350) fall just short of 35/350
        assert_eq!(codes(&found), ["C", "H", "N", "P", "V", "{C,V}", "{H,N}", "{H,P}"]);
    }

    #[test]
    fn fixture_has_no_triples() {
        let cfg = MiningConfig::new(Threshold::ratio(1, 1000).unwrap());
        assert!(apriori(&advertisement_survey(), &cfg).iter().all(|c| c.itemset.len() <= 2));
    }

    #[test]
    fn unanimous_itemsets() {
        let db = parse_transactions("H,N\nH,N\n").unwrap();
        let found = apriori(&db, &MiningConfig::new(Threshold::ONE));
        assert_eq!(codes(&found), ["H", "N", "{H,N}"]);
        assert!(found.iter().all(|c| c.count == 2 && c.support() == 1.0));
    }

    #[test]
    fn zero_support_skips_absent_itemsets() {
        let db = parse_transactions("A,B\nC\n").unwrap();
        let found = apriori(&db, &MiningConfig::default());
        assert_eq!(codes(&found), ["A", "B", "C", "{A,B}"]);
        assert!(apriori(&TransactionDb::default(), &MiningConfig::default()).is_empty());
    }

    #[test]
    fn size_cap() {
        let db = parse_transactions("A,B,C\nA,B,C\n").unwrap();
        let cfg = MiningConfig::default().with_max_size(2).unwrap();
        assert_eq!(apriori(&db, &cfg).len(), 6);
        assert_eq!(apriori(&db, &MiningConfig::default()).len(), 7);
        assert!(MiningConfig::default().with_max_size(0).is_err());
    }

    #[test]
    fn candidate_pruning_drops_infrequent_subsets() {
        // {A,B},{A,C} join to {A,B,C}, but {B,C} is missing
        let level: Vec<Itemset> = ["A,B", "A,C"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(generate_candidates(&level).is_empty());
        let level: Vec<Itemset> =
            ["A,B", "A,C", "B,C"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(generate_candidates(&level), vec!["A,B,C".parse().unwrap()]);
    }
}
