//! Pair rules, the relation graph they induce, and hub ranking.
//!
//! Each frequent pair `{a, b}` is scored in both directions. Rules that
//! clear the [`Thresholds`] become undirected edges; an item's degree is
//! the number of other items it has a surviving relation with, and the
//! best-connected items are recommended as hubs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::measures::{evaluate_counts, Measure, MeasureSet, Rule, RuleCounts};
use crate::mine::ItemsetCount;
use crate::threshold::Threshold;
use crate::txdb::{Itemset, TransactionDb};

/// Cosine at or above this is a strong relation unless told otherwise.
pub const DEFAULT_STRONG_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRule {
    pub rule: Rule,
    pub counts: RuleCounts,
    pub measures: MeasureSet,
}

impl ScoredRule {
    /// Scores every measure defined for `counts`.
    pub fn from_counts(rule: Rule, counts: RuleCounts) -> Result<Self> {
        let defined: Vec<Measure> = Measure::ALL
            .into_iter()
            .filter(|m| match m {
                Measure::Support => counts.n_total > 0,
                Measure::Confidence => counts.antecedent > 0,
                Measure::Cosine | Measure::Lift => counts.antecedent > 0 && counts.consequent > 0,
            })
            .collect();
        if !defined.contains(&Measure::Support) || !defined.contains(&Measure::Confidence) {
            return Err(Error::UndefinedConfidence(rule.to_string()));
        }
        let measures = evaluate_counts(&counts, &rule, &defined)?;
        Ok(ScoredRule { rule, counts, measures })
    }

    /// Exact comparison of `count(X∪Y)/count(X)`.
    fn cmp_confidence(&self, other: &ScoredRule) -> Ordering {
        let lhs = self.counts.joint as u128 * other.counts.antecedent as u128;
        let rhs = other.counts.joint as u128 * self.counts.antecedent as u128;
        lhs.cmp(&rhs)
    }

    /// Exact comparison of `count(X∪Y)/N`.
    fn cmp_support(&self, other: &ScoredRule) -> Ordering {
        let lhs = self.counts.joint as u128 * other.counts.n_total as u128;
        let rhs = other.counts.joint as u128 * self.counts.n_total as u128;
        lhs.cmp(&rhs)
    }
}

/// Descending support, then descending confidence, then the rule itself.
pub fn rule_order(a: &ScoredRule, b: &ScoredRule) -> Ordering {
    b.cmp_support(a)
        .then_with(|| b.cmp_confidence(a))
        .then_with(|| a.rule.cmp(&b.rule))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Thresholds {
    pub min_support: Threshold,
    pub min_confidence: Threshold,
}

impl Thresholds {
    pub fn new(min_support: Threshold, min_confidence: Threshold) -> Self {
        Thresholds { min_support, min_confidence }
    }

    pub fn admits(&self, counts: &RuleCounts) -> bool {
        self.min_support.is_met_by(counts.joint, counts.n_total)
            && self.min_confidence.is_met_by(counts.joint, counts.antecedent)
    }
}

/// Scores both directions of every size-2 itemset in `frequent_pairs` and
/// keeps those meeting both thresholds, sorted by [`rule_order`]. Entries
/// that are not pairs, or whose rules are undefined in `db`, are skipped.
pub fn generate_rules(
    db: &TransactionDb,
    frequent_pairs: &[ItemsetCount],
    thresholds: Thresholds,
) -> Vec<ScoredRule> {
    let mut out = Vec::new();
    for pair in frequent_pairs.iter().filter(|p| p.itemset.len() == 2) {
        let codes = pair.itemset.codes();
        let forward = match Rule::between(&codes[0], &codes[1]) {
            Ok(rule) => rule,
            Err(_) => continue,
        };
        let Ok(counts) = RuleCounts::of(db, &forward) else {
            continue;
        };
        for (rule, counts) in [(forward.reversed(), counts.reversed()), (forward, counts)] {
            if !thresholds.admits(&counts) {
                continue;
            }
            if let Ok(scored) = ScoredRule::from_counts(rule, counts) {
                out.push(scored);
            }
        }
    }
    out.sort_by(rule_order);
    out
}

/// An undirected relation between two items. `forward` runs from the
/// lexicographically smaller code to the larger one.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationEdge {
    pub forward: Option<ScoredRule>,
    pub backward: Option<ScoredRule>,
}

impl RelationEdge {
    /// The surviving direction with the higher confidence; on a tie, the
    /// lexicographically smaller rule.
    pub fn best(&self) -> &ScoredRule {
        match (&self.forward, &self.backward) {
            (Some(f), Some(b)) => match b.cmp_confidence(f) {
                Ordering::Greater => b,
                Ordering::Less => f,
                Ordering::Equal => {
                    if b.rule < f.rule {
                        b
                    } else {
                        f
                    }
                }
            },
            (Some(r), None) | (None, Some(r)) => r,
            (None, None) => unreachable!("an edge always carries at least one rule"),
        }
    }

    /// Cosine is symmetric, so either direction gives the same value.
    pub fn cosine(&self) -> Option<f64> {
        self.best().measures.cosine.or_else(|| self.best().counts.cosine())
    }

    pub fn rules(&self) -> impl Iterator<Item = &ScoredRule> {
        self.forward.iter().chain(self.backward.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelationGraph {
    nodes: BTreeSet<String>,
    edges: BTreeMap<(String, String), RelationEdge>,
}

impl RelationGraph {
    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    /// Edges keyed by `(smaller code, larger code)`, in key order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &RelationEdge)> {
        self.edges.iter().map(|((a, b), e)| (a.as_str(), b.as_str(), e))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge(&self, a: &str, b: &str) -> Option<&RelationEdge> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.get(&(key.0.to_string(), key.1.to_string()))
    }

    pub fn are_adjacent(&self, a: &str, b: &str) -> bool {
        self.edge(a, b).is_some()
    }

    pub fn neighbors<'a>(&'a self, code: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.keys().filter_map(move |(a, b)| {
            if a == code {
                Some(b.as_str())
            } else if b == code {
                Some(a.as_str())
            } else {
                None
            }
        })
    }
}

fn single_code(set: &Itemset) -> Option<&str> {
    match set.codes() {
        [code] => Some(code.as_str()),
        _ => None,
    }
}

/// One undirected edge per unordered item pair with a surviving rule.
/// Rules whose sides are not single items do not form edges. When the same
/// direction appears more than once, the higher-confidence rule wins.
pub fn build_relation_graph(rules: &[ScoredRule]) -> RelationGraph {
    let mut graph = RelationGraph::default();
    for scored in rules {
        let (Some(x), Some(y)) = (
            single_code(scored.rule.antecedent()),
            single_code(scored.rule.consequent()),
        ) else {
            continue;
        };
        graph.nodes.insert(x.to_string());
        graph.nodes.insert(y.to_string());
        let (key, is_forward) = if x < y {
            ((x.to_string(), y.to_string()), true)
        } else {
            ((y.to_string(), x.to_string()), false)
        };
        let edge = graph
            .edges
            .entry(key)
            .or_insert(RelationEdge { forward: None, backward: None });
        let slot = if is_forward { &mut edge.forward } else { &mut edge.backward };
        let replace = match slot {
            None => true,
            Some(existing) => scored
                .cmp_confidence(existing)
                .then_with(|| scored.cmp_support(existing))
                .is_gt(),
        };
        if replace {
            *slot = Some(scored.clone());
        }
    }
    graph
}

/// Incident-edge count of every node.
pub fn degrees(graph: &RelationGraph) -> BTreeMap<String, usize> {
    let mut out: BTreeMap<String, usize> = graph.nodes.iter().map(|n| (n.clone(), 0)).collect();
    for (a, b) in graph.edges.keys() {
        *out.get_mut(a).expect("edge endpoint is a node") += 1;
        *out.get_mut(b).expect("edge endpoint is a node") += 1;
    }
    out
}

/// Top-`k` nodes by descending degree. Ties go to the item that occurs more
/// often in `db`, then to the smaller code.
pub fn recommend_hubs(graph: &RelationGraph, db: &TransactionDb, k: NonZeroUsize) -> Vec<(String, usize)> {
    let counts = db.item_counts();
    let mut ranked: Vec<(String, usize)> = degrees(graph).into_iter().collect();
    ranked.sort_by(|(a, da), (b, db_)| {
        db_.cmp(da)
            .then_with(|| {
                let ca = counts.get(a).copied().unwrap_or(0);
                let cb = counts.get(b).copied().unwrap_or(0);
                cb.cmp(&ca)
            })
            .then_with(|| a.cmp(b))
    });
    ranked.truncate(k.get());
    ranked
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosineStrength {
    Strong,
    Weak,
}

impl CosineStrength {
    pub fn as_str(self) -> &'static str {
        match self {
            CosineStrength::Strong => "strong",
            CosineStrength::Weak => "weak",
        }
    }
}

/// Strong iff `value >= strong_threshold`. Both must lie in `[0, 1]`.
pub fn classify_cosine(value: f64, strong_threshold: f64) -> Result<CosineStrength> {
    for v in [value, strong_threshold] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(v));
        }
    }
    Ok(if value >= strong_threshold { CosineStrength::Strong } else { CosineStrength::Weak })
}
