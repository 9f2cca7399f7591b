//! Interestingness measures for association rules.
//!
//! Every measure is a function of four counts: `N`, `count(X)`, `count(Y)`
//! and `count(X ∪ Y)`. The float expressions below are fixed, so any
//! independent implementation that computes the same counts gets
//! bit-identical results:
//!
//! | measure    | value                                   |
//! |------------|-----------------------------------------|
//! | support    | `count(X∪Y) / N`                        |
//! | confidence | `count(X∪Y) / count(X)`                 |
//! | cosine     | `count(X∪Y) / sqrt(count(X) · count(Y))` |
//! | lift       | `(N · count(X∪Y)) / (count(X) · count(Y))` |
//!
//! Cosine is written with raw counts because the `N` in `P(X,Y)` and in
//! `sqrt(P(X)·P(Y))` cancels. Divisions by zero are errors, never NaN.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::txdb::{Itemset, TransactionDb};

/// A directed implication `X → Y` between disjoint, non-empty itemsets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    antecedent: Itemset,
    consequent: Itemset,
}

impl Rule {
    pub fn new(antecedent: Itemset, consequent: Itemset) -> Result<Self> {
        if !antecedent.is_disjoint(&consequent) {
            return Err(Error::InvalidRule(format!(
                "{antecedent} and {consequent} share an item"
            )));
        }
        Ok(Rule { antecedent, consequent })
    }

    /// Shorthand for single-item rules.
    pub fn between(antecedent: &str, consequent: &str) -> Result<Self> {
        Rule::new(Itemset::new([antecedent])?, Itemset::new([consequent])?)
    }

    pub fn antecedent(&self) -> &Itemset {
        &self.antecedent
    }

    pub fn consequent(&self) -> &Itemset {
        &self.consequent
    }

    pub fn reversed(&self) -> Rule {
        Rule { antecedent: self.consequent.clone(), consequent: self.antecedent.clone() }
    }

    /// `X->Y`, for outputs that stay ASCII.
    pub fn ascii(&self) -> String {
        format!("{}->{}", self.antecedent, self.consequent)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.antecedent, self.consequent)
    }
}

impl FromStr for Rule {
    type Err = Error;

    /// Accepts `N→H`, `N->H` or `{A,B}->C`.
    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once("->")
            .or_else(|| s.split_once('→'))
            .ok_or_else(|| Error::InvalidRule(format!("`{s}` has no arrow")))?;
        Rule::new(x.parse()?, y.parse()?)
    }
}

/// The four counts every measure is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleCounts {
    pub n_total: usize,
    pub antecedent: usize,
    pub consequent: usize,
    pub joint: usize,
}

impl RuleCounts {
    /// Counts `rule` in `db`, failing on codes outside the universe.
    pub fn of(db: &TransactionDb, rule: &Rule) -> Result<Self> {
        db.check_known(&rule.antecedent)?;
        db.check_known(&rule.consequent)?;
        Ok(RuleCounts {
            n_total: db.n_total(),
            antecedent: db.support_count(&rule.antecedent),
            consequent: db.support_count(&rule.consequent),
            joint: db.support_count(&rule.antecedent.union(&rule.consequent)),
        })
    }

    pub fn reversed(self) -> Self {
        RuleCounts { antecedent: self.consequent, consequent: self.antecedent, ..self }
    }

    pub fn support(&self) -> Option<f64> {
        (self.n_total > 0).then(|| self.joint as f64 / self.n_total as f64)
    }

    pub fn confidence(&self) -> Option<f64> {
        (self.antecedent > 0).then(|| self.joint as f64 / self.antecedent as f64)
    }

    pub fn cosine(&self) -> Option<f64> {
        (self.antecedent > 0 && self.consequent > 0).then(|| {
            self.joint as f64 / (self.antecedent as f64 * self.consequent as f64).sqrt()
        })
    }

    pub fn lift(&self) -> Option<f64> {
        (self.antecedent > 0 && self.consequent > 0).then(|| {
            (self.n_total as f64 * self.joint as f64)
                / (self.antecedent as f64 * self.consequent as f64)
        })
    }
}

/// Names in the measure registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Support,
    Confidence,
    Cosine,
    Lift,
}

impl Measure {
    /// Registry order; also the column order in rendered tables.
    pub const ALL: [Measure; 4] = [Measure::Support, Measure::Confidence, Measure::Cosine, Measure::Lift];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Support => "support",
            Measure::Confidence => "confidence",
            Measure::Cosine => "cosine",
            Measure::Lift => "lift",
        }
    }

    /// Parses a comma-separated list such as `support,confidence,cosine`.
    /// Repeats collapse; order follows the registry.
    pub fn parse_list(list: &str) -> Result<Vec<Measure>> {
        let mut out = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let m: Measure = name.parse()?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scored measures of one rule; unrequested measures stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeasureSet {
    pub support: Option<f64>,
    pub confidence: Option<f64>,
    pub cosine: Option<f64>,
    pub lift: Option<f64>,
}

impl MeasureSet {
    pub fn get(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::Support => self.support,
            Measure::Confidence => self.confidence,
            Measure::Cosine => self.cosine,
            Measure::Lift => self.lift,
        }
    }

    fn slot(&mut self, m: Measure) -> &mut Option<f64> {
        match m {
            Measure::Support => &mut self.support,
            Measure::Confidence => &mut self.confidence,
            Measure::Cosine => &mut self.cosine,
            Measure::Lift => &mut self.lift,
        }
    }

    pub fn populated(&self) -> Vec<Measure> {
        Measure::ALL.into_iter().filter(|m| self.get(*m).is_some()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.populated().is_empty()
    }

    /// Keeps only the measures in `which`.
    pub fn restrict(&self, which: &[Measure]) -> MeasureSet {
        let mut out = MeasureSet::default();
        for &m in which {
            *out.slot(m) = self.get(m);
        }
        out
    }
}

pub fn support(db: &TransactionDb, rule: &Rule) -> Result<f64> {
    RuleCounts::of(db, rule)?.support().ok_or(Error::EmptyDatabase)
}

pub fn confidence(db: &TransactionDb, rule: &Rule) -> Result<f64> {
    RuleCounts::of(db, rule)?
        .confidence()
        .ok_or_else(|| Error::UndefinedConfidence(rule.to_string()))
}

/// Cosine of an unordered pair of itemsets; symmetric in `x` and `y`.
pub fn cosine(db: &TransactionDb, x: &Itemset, y: &Itemset) -> Result<f64> {
    let rule = Rule::new(x.clone(), y.clone())?;
    let counts = RuleCounts::of(db, &rule)?;
    if counts.antecedent == 0 {
        return Err(Error::UndefinedCosine(x.to_string()));
    }
    if counts.consequent == 0 {
        return Err(Error::UndefinedCosine(y.to_string()));
    }
    Ok(counts.cosine().expect("both counts positive"))
}

pub fn lift(db: &TransactionDb, rule: &Rule) -> Result<f64> {
    let counts = RuleCounts::of(db, rule)?;
    if counts.antecedent == 0 {
        return Err(Error::UndefinedConfidence(rule.to_string()));
    }
    counts.lift().ok_or_else(|| Error::UndefinedLift(rule.to_string()))
}

/// Scores `rule` on the requested measures. The first failing measure, in
/// registry order, decides the error.
pub fn evaluate(db: &TransactionDb, rule: &Rule, which: &[Measure]) -> Result<MeasureSet> {
    if which.is_empty() {
        return Ok(MeasureSet::default());
    }
    let counts = RuleCounts::of(db, rule)?;
    evaluate_counts(&counts, rule, which)
}

/// Like [`evaluate`], with measures given by name.
pub fn evaluate_named<S: AsRef<str>>(db: &TransactionDb, rule: &Rule, which: &[S]) -> Result<MeasureSet> {
    let measures = which
        .iter()
        .map(|s| s.as_ref().parse())
        .collect::<Result<Vec<Measure>>>()?;
    evaluate(db, rule, &measures)
}

/// Scores already-counted rules.
pub fn evaluate_counts(counts: &RuleCounts, rule: &Rule, which: &[Measure]) -> Result<MeasureSet> {
    let mut wanted = which.to_vec();
    wanted.sort();
    wanted.dedup();
    let mut out = MeasureSet::default();
    for m in wanted {
        let value = match m {
            Measure::Support => counts.support().ok_or(Error::EmptyDatabase)?,
            Measure::Confidence => counts
                .confidence()
                .ok_or_else(|| Error::UndefinedConfidence(rule.to_string()))?,
            Measure::Cosine => counts.cosine().ok_or_else(|| {
                let missing = if counts.antecedent == 0 { rule.antecedent() } else { rule.consequent() };
                Error::UndefinedCosine(missing.to_string())
            })?,
            Measure::Lift => {
                if counts.antecedent == 0 {
                    return Err(Error::UndefinedConfidence(rule.to_string()));
                }
                counts.lift().ok_or_else(|| Error::UndefinedLift(rule.to_string()))?
            }
        };
        *out.slot(m) = Some(value);
    }
    Ok(out)
}
