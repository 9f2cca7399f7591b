//! The 350-respondent advertisement-channel survey.
//!
//! Every enquiry form names exactly two channels, so the raw rows are fully
//! determined by the pair occurrence table: the per-channel sums of
//! [`PAIR_OCCURRENCES`] reproduce [`CHANNELS`] exactly and add up to 350.

use super::{Item, Itemset, Transaction, TransactionDb};

/// `(code, label, respondents naming it)`.
pub const CHANNELS: [(&str, &str, usize); 6] = [
    ("H", "Hording", 230),
    ("N", "News paper", 160),
    ("P", "Pamphlets", 100),
    ("R", "Radio", 30),
    ("V", "Advertisement Van", 50),
    ("C", "Personal Contact", 130),
];

/// Pair multiplicities in their original row order. Pairs not listed never
/// occur.
pub const PAIR_OCCURRENCES: [(&str, &str, usize); 9] = [
    ("H", "N", 120),
    ("H", "P", 70),
    ("H", "R", 10),
    ("H", "C", 30),
    ("N", "P", 20),
    ("N", "C", 20),
    ("P", "C", 10),
    ("R", "C", 20),
    ("V", "C", 50),
];

pub const RESPONDENTS: usize = 350;

/// One rule as originally tabulated, with its printed 4-decimal values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportedRule {
    pub antecedent: &'static str,
    pub consequent: &'static str,
    pub support: &'static str,
    pub confidence: &'static str,
    pub cosine: &'static str,
}

pub const REPORTED_RULES: [ReportedRule; 9] = [
    rr("N", "H", "0.3429", "0.7500", "0.6255"),
    rr("P", "H", "0.2000", "0.7000", "0.4616"),
    rr("R", "H", "0.0286", "0.3333", "0.1204"),
    rr("P", "N", "0.0571", "0.2000", "0.1581"),
    rr("C", "H", "0.0857", "0.2308", "0.1735"),
    rr("N", "C", "0.0571", "0.4571", "0.1387"),
    rr("P", "C", "0.0286", "0.2857", "0.0877"),
    rr("C", "R", "0.0571", "0.6667", "0.3203"),
    rr("C", "V", "0.1429", "0.3714", "0.6202"),
];

const fn rr(
    antecedent: &'static str,
    consequent: &'static str,
    support: &'static str,
    confidence: &'static str,
    cosine: &'static str,
) -> ReportedRule {
    ReportedRule { antecedent, consequent, support, confidence, cosine }
}

/// A tabulated confidence that disagrees with `count(X ∪ Y) / count(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfidenceErratum {
    pub antecedent: &'static str,
    pub consequent: &'static str,
    pub printed: &'static str,
    pub computed: &'static str,
    /// What the printed number coincides with.
    pub explanation: &'static str,
}

pub const CONFIDENCE_ERRATA: [ConfidenceErratum; 4] = [
    ConfidenceErratum {
        antecedent: "N",
        consequent: "C",
        printed: "0.4571",
        computed: "0.1250",
        explanation: "equals count(N)/350 = 160/350",
    },
    ConfidenceErratum {
        antecedent: "P",
        consequent: "C",
        printed: "0.2857",
        computed: "0.1000",
        explanation: "equals count(P)/350 = 100/350",
    },
    ConfidenceErratum {
        antecedent: "C",
        consequent: "R",
        printed: "0.6667",
        computed: "0.1538",
        explanation: "equals confidence(R→C) = 20/30",
    },
    ConfidenceErratum {
        antecedent: "C",
        consequent: "V",
        printed: "0.3714",
        computed: "0.3846",
        explanation: "equals count(C)/350 = 130/350",
    },
];

/// Reconstructs the survey: pairs in table order, each repeated by its
/// multiplicity. No randomness.
pub fn advertisement_survey() -> TransactionDb {
    let items = CHANNELS
        .iter()
        .map(|(code, label, _)| Item::labeled(*code, *label).expect("valid code"))
        .collect();
    let transactions = PAIR_OCCURRENCES
        .iter()
        .flat_map(|&(a, b, n)| {
            std::iter::repeat_with(move || Transaction::new([a, b]).expect("valid pair")).take(n)
        })
        .collect();
    TransactionDb::with_items(items, transactions).expect("channels cover every pair")
}

/// True when `db` has the survey's exact item counts and pair multiplicities,
/// whatever its transaction order or labels.
pub fn is_advertisement_survey(db: &TransactionDb) -> bool {
    if db.n_total() != RESPONDENTS || db.universe_len() != CHANNELS.len() {
        return false;
    }
    let counts = db.item_counts();
    if CHANNELS.iter().any(|(c, _, n)| counts.get(*c) != Some(n)) {
        return false;
    }
    PAIR_OCCURRENCES.iter().all(|&(a, b, n)| {
        let pair = Itemset::new([a, b]).expect("valid pair");
        db.transactions().iter().filter(|t| t.items() == &pair).count() == n
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_rows_reproduce_channel_counts() {
        let total: usize = PAIR_OCCURRENCES.iter().map(|p| p.2).sum();
        assert_eq!(total, RESPONDENTS);
        for (code, _, count) in CHANNELS {
            let margin: usize = PAIR_OCCURRENCES
                .iter()
                .filter(|(a, b, _)| *a == code || *b == code)
                .map(|p| p.2)
                .sum();
            assert_eq!(margin, count, "{code}");
        }
    }

    #[test]
    fn fixture_shape() {
        let db = advertisement_survey();
        assert_eq!(db.n_total(), 350);
        assert!(db.transactions().iter().all(|t| t.len() == 2));
        assert_eq!(db.item("H").unwrap().label(), Some("Hording"));
        let hn = Itemset::new(["H", "N"]).unwrap();
        let nr = Itemset::new(["N", "R"]).unwrap();
        assert_eq!(db.transactions().iter().filter(|t| *t.items() == hn).count(), 120);
        assert_eq!(db.transactions().iter().filter(|t| *t.items() == nr).count(), 0);
        assert!(is_advertisement_survey(&db));
    }

    #[test]
    fn recognizer_rejects_near_misses() {
        let db = advertisement_survey();
        let mut rows = db.transactions().to_vec();
        rows.reverse();
        assert!(is_advertisement_survey(&TransactionDb::new(rows.clone())));
        rows.pop();
        assert!(!is_advertisement_survey(&TransactionDb::new(rows)));
    }
}
