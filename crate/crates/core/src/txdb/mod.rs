//! Transactions, itemsets and the database they are counted against.
//!
//! A [`TransactionDb`] is immutable once built. Every probability in the
//! crate is a count divided by [`TransactionDb::n_total`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub mod fixture;
mod parse;

pub use parse::{parse_survey_csv, parse_transactions, SURVEY_HEADER};

/// Checks the item-code rules: non-empty, no comma, no whitespace, no `#`.
pub fn validate_code(code: &str) -> Result<()> {
    if code.is_empty() || code.chars().any(|c| c == ',' || c == '#' || c.is_whitespace()) {
        return Err(Error::InvalidItemCode(code.to_string()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item {
    code: String,
    label: Option<String>,
}

impl Item {
    pub fn new(code: impl Into<String>) -> Result<Self> {
        let code = code.into();
        validate_code(&code)?;
        Ok(Item { code, label: None })
    }

    pub fn labeled(code: impl Into<String>, label: impl Into<String>) -> Result<Self> {
        let mut item = Item::new(code)?;
        item.label = Some(label.into());
        Ok(item)
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

/// A non-empty, duplicate-free set of item codes, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<String>);

impl Itemset {
    /// Builds an itemset, rejecting empty input, invalid codes and repeats.
    pub fn new<I, S>(codes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut codes: Vec<String> = codes.into_iter().map(Into::into).collect();
        if codes.is_empty() {
            return Err(Error::InvalidItemset("itemset is empty".into()));
        }
        for code in &codes {
            validate_code(code)?;
        }
        codes.sort();
        if let Some(w) = codes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidItemset(format!("`{}` repeated", w[0])));
        }
        Ok(Itemset(codes))
    }

    /// Wraps codes that are already sorted and distinct.
    pub(crate) fn from_sorted_unchecked(codes: Vec<String>) -> Self {
        debug_assert!(!codes.is_empty());
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        Itemset(codes)
    }

    pub fn codes(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, code: &str) -> bool {
        self.0.binary_search_by(|c| c.as_str().cmp(code)).is_ok()
    }

    /// True when every code of `other` is in `self`. Both sides are sorted,
    /// so this is a single merge pass.
    pub fn is_superset(&self, other: &Itemset) -> bool {
        let mut mine = self.0.iter();
        'outer: for needle in &other.0 {
            for code in mine.by_ref() {
                match code.cmp(needle) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        other.0.iter().all(|c| !self.contains(c))
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut codes: Vec<String> = self.0.iter().chain(&other.0).cloned().collect();
        codes.sort();
        codes.dedup();
        Itemset(codes)
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            f.write_str(&self.0[0])
        } else {
            write!(f, "{{{}}}", self.0.join(","))
        }
    }
}

impl FromStr for Itemset {
    type Err = Error;

    /// Parses `"H"`, `"H,N"` or `"{H,N}"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .unwrap_or(inner);
        Itemset::new(inner.split(',').map(str::trim))
    }
}

/// One respondent's answers: a non-empty set of item codes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transaction(Itemset);

impl Transaction {
    pub fn new<I, S>(codes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Itemset::new(codes).map(Transaction)
    }

    pub fn items(&self) -> &Itemset {
        &self.0
    }

    pub fn codes(&self) -> &[String] {
        self.0.codes()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, code: &str) -> bool {
        self.0.contains(code)
    }
}

impl From<Itemset> for Transaction {
    fn from(items: Itemset) -> Self {
        Transaction(items)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransactionDb {
    transactions: Vec<Transaction>,
    items: BTreeMap<String, Item>,
}

impl TransactionDb {
    /// Builds a database whose universe is the union of the transactions' codes.
    pub fn new(transactions: Vec<Transaction>) -> Self {
        let mut items = BTreeMap::new();
        for t in &transactions {
            for code in t.codes() {
                items
                    .entry(code.clone())
                    .or_insert_with(|| Item { code: code.clone(), label: None });
            }
        }
        TransactionDb { transactions, items }
    }

    /// Builds a database over an explicit universe, which may hold items
    /// that never occur. Every transaction code must be declared.
    pub fn with_items(items: Vec<Item>, transactions: Vec<Transaction>) -> Result<Self> {
        let mut universe = BTreeMap::new();
        for item in items {
            let code = item.code.clone();
            if universe.insert(code.clone(), item).is_some() {
                return Err(Error::InvalidConfig(format!("item `{code}` declared twice")));
            }
        }
        for t in &transactions {
            if let Some(code) = t.codes().iter().find(|c| !universe.contains_key(*c)) {
                return Err(Error::UnknownItem(code.clone()));
            }
        }
        Ok(TransactionDb { transactions, items: universe })
    }

    /// A new database with `extra` appended; the universe grows to cover it.
    pub fn extended(&self, extra: impl IntoIterator<Item = Transaction>) -> Self {
        let mut db = self.clone();
        for t in extra {
            for code in t.codes() {
                db.items
                    .entry(code.clone())
                    .or_insert_with(|| Item { code: code.clone(), label: None });
            }
            db.transactions.push(t);
        }
        db
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    /// `N`, the denominator of every probability.
    pub fn n_total(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.items.values()
    }

    pub fn item(&self, code: &str) -> Option<&Item> {
        self.items.get(code)
    }

    pub fn contains_item(&self, code: &str) -> bool {
        self.items.contains_key(code)
    }

    pub fn universe_len(&self) -> usize {
        self.items.len()
    }

    /// Per-item occurrence counts over the whole universe, zeros included.
    pub fn item_counts(&self) -> BTreeMap<String, usize> {
        let mut counts: BTreeMap<String, usize> =
            self.items.keys().map(|c| (c.clone(), 0)).collect();
        for t in &self.transactions {
            for code in t.codes() {
                *counts.get_mut(code).expect("universe covers every transaction") += 1;
            }
        }
        counts
    }

    /// Number of transactions containing every item of `itemset`.
    pub fn support_count(&self, itemset: &Itemset) -> usize {
        self.transactions
            .iter()
            .filter(|t| t.items().is_superset(itemset))
            .count()
    }

    /// Fails with `UnknownItem` for the first code outside the universe.
    pub fn check_known(&self, itemset: &Itemset) -> Result<()> {
        match itemset.codes().iter().find(|c| !self.contains_item(c)) {
            Some(code) => Err(Error::UnknownItem(code.clone())),
            None => Ok(()),
        }
    }

    /// Serializes in the transaction file format, one line per transaction.
    pub fn to_transaction_text(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            out.push_str(&t.codes().join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> Itemset {
        s.parse().unwrap()
    }

    #[test]
    fn code_rules() {
        assert!(validate_code("H").is_ok());
        assert!(validate_code("Hx_9").is_ok());
        for bad in ["", "a b", "a,b", "#x", "x\t"] {
            assert!(validate_code(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn itemset_sorts_and_rejects_repeats() {
        assert_eq!(set("N,H").codes(), ["H", "N"]);
        assert_eq!(set("{N,H}"), set("H,N"));
        assert!(Itemset::new(["H", "H"]).is_err());
        assert!(Itemset::new(Vec::<String>::new()).is_err());
        assert_eq!(set("H").to_string(), "H");
        assert_eq!(set("N,H").to_string(), "{H,N}");
    }

    #[test]
    fn superset_and_disjoint() {
        let abc = set("A,B,C");
        assert!(abc.is_superset(&set("A,C")));
        assert!(abc.is_superset(&abc));
        assert!(!abc.is_superset(&set("A,D")));
        assert!(!set("B").is_superset(&set("A")));
        assert!(set("A,B").is_disjoint(&set("C")));
        assert!(!set("A,B").is_disjoint(&set("B,C")));
        assert_eq!(set("A,B").union(&set("B,C")), abc);
    }

    #[test]
    fn item_counts_keep_zero_items() {
        let db = TransactionDb::with_items(
            vec![Item::new("H").unwrap(), Item::new("Z").unwrap()],
            vec![Transaction::new(["H"]).unwrap()],
        )
        .unwrap();
        let counts = db.item_counts();
        assert_eq!(counts["H"], 1);
        assert_eq!(counts["Z"], 0);
    }

    #[test]
    fn with_items_rejects_undeclared_codes() {
        let err = TransactionDb::with_items(
            vec![Item::new("H").unwrap()],
            vec![Transaction::new(["H", "N"]).unwrap()],
        )
        .unwrap_err();
        assert_eq!(err, Error::UnknownItem("N".into()));
    }

    #[test]
    fn empty_db_counts() {
        let db = TransactionDb::default();
        assert_eq!(db.n_total(), 0);
        assert!(db.item_counts().is_empty());
    }
}
