//! Synthetic databases and brute-force reference implementations.
//!
//! Nothing here calls into `mine` or `measures`: counts come from plain
//! scans over the transactions, so the two can be checked against each
//! other.
//!
//! # Shuffling
//!
//! [`synth_db`] orders transactions with a ChaCha8 generator
//! (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`) driving the
//! Fisher–Yates shuffle of `rand` 0.8 (`SliceRandom::shuffle`). The same
//! seed yields the same database on every platform.
//!
//! # Spec files
//!
//! A [`SynthSpec`] is read from TOML:
//!
//! ```toml
//! seed = 7
//! universe = ["H", "N", "P", "R"]
//!
//! [pairs]
//! "H,N" = 120
//! "H,P" = 70
//!
//! [singletons]
//! R = 5
//! ```
//!
//! `pairs` keys are two codes separated by a comma, in either order.
//! Both tables may be omitted, but at least one multiplicity must be
//! positive.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::measures::{MeasureSet, Rule};
use crate::mine::ItemsetCount;
use crate::threshold::Threshold;
use crate::txdb::{validate_code, Item, Itemset, Transaction, TransactionDb};

/// Largest universe [`brute_force_frequent`] will enumerate.
pub const MAX_BRUTE_FORCE_UNIVERSE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthSpec {
    pub seed: u64,
    pub universe: Vec<String>,
    /// Keys are `(smaller code, larger code)`.
    pub pair_weights: BTreeMap<(String, String), usize>,
    pub extra_singletons: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    seed: u64,
    universe: Vec<String>,
    #[serde(default)]
    pairs: BTreeMap<String, usize>,
    #[serde(default)]
    singletons: BTreeMap<String, usize>,
}

impl SynthSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: SpecFile =
            toml::from_str(text).map_err(|e| Error::InvalidSpec(e.message().to_string()))?;
        let mut pair_weights = BTreeMap::new();
        for (key, weight) in file.pairs {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::InvalidSpec(format!("pair key `{key}` needs two codes")))?;
            let pair = ordered(a.trim(), b.trim());
            if pair_weights.insert(pair, weight).is_some() {
                return Err(Error::InvalidSpec(format!("pair `{key}` listed twice")));
            }
        }
        let spec = SynthSpec {
            seed: file.seed,
            universe: file.universe,
            pair_weights,
            extra_singletons: file.singletons,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = format!("seed = {}\n", self.seed);
        let universe: Vec<String> = self.universe.iter().map(|c| quote(c)).collect();
        out.push_str(&format!("universe = [{}]\n", universe.join(", ")));
        if !self.pair_weights.is_empty() {
            out.push_str("\n[pairs]\n");
            for ((a, b), w) in &self.pair_weights {
                out.push_str(&format!("{} = {w}\n", quote(&format!("{a},{b}"))));
            }
        }
        if !self.extra_singletons.is_empty() {
            out.push_str("\n[singletons]\n");
            for (c, w) in &self.extra_singletons {
                out.push_str(&format!("{} = {w}\n", quote(c)));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let mut universe = BTreeSet::new();
        for code in &self.universe {
            validate_code(code).map_err(|e| Error::InvalidSpec(e.to_string()))?;
            if !universe.insert(code.as_str()) {
                return Err(Error::InvalidSpec(format!("`{code}` repeated in universe")));
            }
        }
        for (a, b) in self.pair_weights.keys() {
            if a >= b {
                return Err(Error::InvalidSpec(format!("pair ({a},{b}) is not two distinct ordered codes")));
            }
            for code in [a, b] {
                if !universe.contains(code.as_str()) {
                    return Err(Error::InvalidSpec(format!("`{code}` is not in the universe")));
                }
            }
        }
        for code in self.extra_singletons.keys() {
            if !universe.contains(code.as_str()) {
                return Err(Error::InvalidSpec(format!("`{code}` is not in the universe")));
            }
        }
        let total: usize =
            self.pair_weights.values().chain(self.extra_singletons.values()).sum();
        if total == 0 {
            return Err(Error::InvalidSpec("every multiplicity is zero".into()));
        }
        Ok(())
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Emits each weighted pair and each extra singleton as many times as its
/// multiplicity, then shuffles with the spec's seed.
pub fn synth_db(spec: &SynthSpec) -> Result<TransactionDb> {
    spec.validate()?;
    let mut rows = Vec::new();
    for ((a, b), &n) in &spec.pair_weights {
        for _ in 0..n {
            rows.push(Transaction::new([a.as_str(), b.as_str()])?);
        }
    }
    for (code, &n) in &spec.extra_singletons {
        for _ in 0..n {
            rows.push(Transaction::new([code.as_str()])?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rows.shuffle(&mut rng);
    let items = spec.universe.iter().map(Item::new).collect::<Result<Vec<_>>>()?;
    TransactionDb::with_items(items, rows)
}

/// A random spec over at most `max_items` codes (`I0`, `I1`, ...) with at
/// most `max_transactions` rows in total.
pub fn random_spec(seed: u64, max_items: usize, max_transactions: usize) -> SynthSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let n_items = rng.gen_range(2..=max_items.max(2));
    let universe: Vec<String> = (0..n_items).map(|i| format!("I{i}")).collect();
    let mut budget = rng.gen_range(1..=max_transactions.max(1));
    let mut pair_weights = BTreeMap::new();
    let mut extra_singletons = BTreeMap::new();
    while budget > 0 {
        let take = rng.gen_range(1..=budget.min(8));
        budget -= take;
        let a = rng.gen_range(0..n_items);
        let b = rng.gen_range(0..n_items);
        if a == b || rng.gen_bool(0.15) {
            *extra_singletons.entry(universe[a].clone()).or_insert(0) += take;
        } else {
            *pair_weights.entry(ordered(&universe[a], &universe[b])).or_insert(0) += take;
        }
    }
    SynthSpec { seed, universe, pair_weights, extra_singletons }
}

/// A random database of arbitrary-size transactions: up to `max_items`
/// codes and up to `max_transactions` rows. Codes that never get drawn
/// still belong to the universe.
pub fn random_db(seed: u64, max_items: usize, max_transactions: usize) -> TransactionDb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_items = rng.gen_range(1..=max_items.max(1));
    let codes: Vec<String> = (0..n_items).map(|i| format!("I{i}")).collect();
    let n_rows = rng.gen_range(0..=max_transactions);
    let rates: Vec<f64> = (0..n_items).map(|_| rng.gen_range(0.05..0.9)).collect();
    let mut rows = Vec::with_capacity(n_rows);
    for _ in 0..n_rows {
        let mut picked: Vec<&str> = codes
            .iter()
            .zip(&rates)
            .filter(|(_, &p)| rng.gen_bool(p))
            .map(|(c, _)| c.as_str())
            .collect();
        if picked.is_empty() {
            picked.push(&codes[rng.gen_range(0..n_items)]);
        }
        rows.push(Transaction::new(picked).expect("distinct generated codes"));
    }
    let items = codes.iter().map(|c| Item::new(c.as_str()).expect("valid code")).collect();
    TransactionDb::with_items(items, rows).expect("universe covers rows")
}

/// Every itemset over the universe with count ≥ 1 and support ≥
/// `min_support`, by power-set enumeration and full scans.
pub fn brute_force_frequent(db: &TransactionDb, min_support: Threshold) -> Result<Vec<ItemsetCount>> {
    let codes: Vec<&str> = db.items().map(Item::code).collect();
    if codes.len() > MAX_BRUTE_FORCE_UNIVERSE {
        return Err(Error::UniverseTooLarge(codes.len()));
    }
    let n = db.n_total();
    let masks: Vec<u32> = db
        .transactions()
        .iter()
        .map(|t| {
            codes
                .iter()
                .enumerate()
                .filter(|(_, c)| t.codes().iter().any(|x| x == *c))
                .fold(0u32, |m, (i, _)| m | (1 << i))
        })
        .collect();

    let mut out = Vec::new();
    for subset in 1u32..(1u32 << codes.len()) {
        let count = masks.iter().filter(|&&m| m & subset == subset).count();
        if count == 0 {
            continue;
        }
        // count / n >= num / den
        if (count as u128) * (min_support.denominator() as u128)
            < (min_support.numerator() as u128) * (n as u128)
        {
            continue;
        }
        let members: Vec<&str> = (0..codes.len())
            .filter(|i| subset & (1 << i) != 0)
            .map(|i| codes[i])
            .collect();
        out.push(ItemsetCount { itemset: Itemset::new(members)?, count, n_total: n });
    }
    out.sort_by(|a, b| {
        a.itemset
            .len()
            .cmp(&b.itemset.len())
            .then_with(|| a.itemset.codes().cmp(b.itemset.codes()))
    });
    Ok(out)
}

fn scan_count(db: &TransactionDb, codes: &[&String]) -> usize {
    db.transactions()
        .iter()
        .filter(|t| codes.iter().all(|c| t.codes().contains(c)))
        .count()
}

/// All four measures of `rule` from direct scans, with the same error
/// precedence as evaluating the full registry.
pub fn brute_force_measures(db: &TransactionDb, rule: &Rule) -> Result<MeasureSet> {
    let x: Vec<&String> = rule.antecedent().codes().iter().collect();
    let y: Vec<&String> = rule.consequent().codes().iter().collect();
    for code in x.iter().chain(&y) {
        if db.item(code).is_none() {
            return Err(Error::UnknownItem(code.to_string()));
        }
    }
    let xy: Vec<&String> = x.iter().chain(&y).copied().collect();
    let n = db.transactions().len();
    let cx = scan_count(db, &x);
    let cy = scan_count(db, &y);
    let cxy = scan_count(db, &xy);

    if n == 0 {
        return Err(Error::EmptyDatabase);
    }
    if cx == 0 {
        return Err(Error::UndefinedConfidence(rule.to_string()));
    }
    if cy == 0 {
        return Err(Error::UndefinedCosine(rule.consequent().to_string()));
    }
    let (n, cx, cy, cxy) = (n as f64, cx as f64, cy as f64, cxy as f64);
    Ok(MeasureSet {
        support: Some(cxy / n),
        confidence: Some(cxy / cx),
        cosine: Some(cxy / (cx * cy).sqrt()),
        lift: Some((n * cxy) / (cx * cy)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::txdb::fixture::{CHANNELS, PAIR_OCCURRENCES};
    use crate::txdb::parse_transactions;

    fn survey_spec(seed: u64) -> SynthSpec {
        SynthSpec {
            seed,
            universe: CHANNELS.iter().map(|c| c.0.to_string()).collect(),
            pair_weights: PAIR_OCCURRENCES.iter().map(|&(a, b, n)| (ordered(a, b), n)).collect(),
            extra_singletons: BTreeMap::new(),
        }
    }

    #[test]
    fn survey_weights_reproduce_channel_counts() {
        let db = synth_db(&survey_spec(3)).unwrap();
        let counts = db.item_counts();
        for (code, _, n) in CHANNELS {
            assert_eq!(counts[code], n);
        }
    }

    #[test]
    fn same_seed_same_db() {
        assert_eq!(synth_db(&survey_spec(9)).unwrap(), synth_db(&survey_spec(9)).unwrap());
        assert_ne!(synth_db(&survey_spec(9)).unwrap(), synth_db(&survey_spec(10)).unwrap());
    }

    #[test]
    fn zero_weights_rejected() {
        let mut spec = survey_spec(1);
        for w in spec.pair_weights.values_mut() {
            *w = 0;
        }
        assert!(matches!(synth_db(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn spec_file_round_trip() {
        let text = "seed = 7\nuniverse = [\"H\", \"N\", \"R\"]\n\n[pairs]\n\"N,H\" = 3\n\n[singletons]\nR = 2\n";
        let spec = SynthSpec::from_toml(text).unwrap();
        assert_eq!(spec.pair_weights[&("H".to_string(), "N".to_string())], 3);
        assert_eq!(SynthSpec::from_toml(&spec.to_toml()).unwrap(), spec);
        let db = synth_db(&spec).unwrap();
        assert_eq!(db.n_total(), 5);
    }

    #[test]
    fn spec_file_errors() {
        for bad in [
            "universe = [\"H\"]\n",
            "seed = 1\nuniverse = [\"H\", \"H\"]\n[singletons]\nH = 1\n",
            "seed = 1\nuniverse = [\"H\"]\n[pairs]\n\"H,X\" = 1\n",
            "seed = 1\nuniverse = [\"H\", \"N\"]\n[pairs]\n\"H,N\" = 1\n\"N,H\" = 2\n",
            "seed = 1\nuniverse = [\"H\"]\n[pairs]\n\"H,H\" = 1\n",
            "seed = 1\nuniverse = [\"H\"]\ncolour = 3\n",
        ] {
            assert!(matches!(SynthSpec::from_toml(bad), Err(Error::InvalidSpec(_))), "{bad}");
        }
    }

    #[test]
    fn brute_force_small_cases() {
        let db = parse_transactions("H,N\n").unwrap();
        let found = brute_force_frequent(&db, Threshold::ZERO).unwrap();
        let names: Vec<String> = found.iter().map(|c| c.itemset.to_string()).collect();
        assert_eq!(names, ["H", "N", "{H,N}"]);
        assert!(found.iter().all(|c| c.count == 1));

        let wide: Vec<String> = (0..21).map(|i| format!("I{i}")).collect();
        let db = TransactionDb::new(vec![Transaction::new(wide).unwrap()]);
        assert_eq!(brute_force_frequent(&db, Threshold::ZERO).unwrap_err(), Error::UniverseTooLarge(21));
    }

    #[test]
    fn brute_force_measures_errors() {
        let db = TransactionDb::with_items(
            vec![Item::new("A").unwrap(), Item::new("B").unwrap()],
            vec![Transaction::new(["A"]).unwrap()],
        )
        .unwrap();
        let rule = Rule::between("B", "A").unwrap();
        assert!(matches!(brute_force_measures(&db, &rule), Err(Error::UndefinedConfidence(_))));
        let rule = Rule::between("A", "Q").unwrap();
        assert_eq!(brute_force_measures(&db, &rule).unwrap_err(), Error::UnknownItem("Q".into()));
    }

    #[test]
    fn random_generators_respect_bounds() {
        for seed in 0..50 {
            let db = random_db(seed, 8, 64);
            assert!(db.universe_len() <= 8 && db.n_total() <= 64);
            let spec = random_spec(seed, 8, 64);
            let db = synth_db(&spec).unwrap();
            assert!(db.universe_len() <= 8 && db.n_total() <= 64 && db.n_total() >= 1);
        }
    }
}
