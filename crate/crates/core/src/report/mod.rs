//! Deterministic text output: measure tables, itemset tables, DOT graphs
//! and the full Markdown analysis.
//!
//! All output is UTF-8 with LF line endings, and numbers never go through
//! locale-aware formatting. Displayed values are rounded half up; values
//! inside the library are never rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{Measure, RuleCounts};
use crate::mine::{pair_counts, ItemsetCount};
use crate::rulegraph::{
    build_relation_graph, classify_cosine, degrees, generate_rules, recommend_hubs, rule_order,
    RelationGraph, ScoredRule, Thresholds, DEFAULT_STRONG_THRESHOLD,
};
use crate::txdb::fixture::{is_advertisement_survey, CHANNELS, CONFIDENCE_ERRATA};
use crate::txdb::TransactionDb;

pub mod decimal;

use decimal::{exact_measure, round_ratio, Exact};

pub const MAX_DECIMALS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Dot,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Markdown => "markdown",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Format::Markdown, Format::Csv, Format::Dot, Format::Json]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnsupportedFormat(s.to_string()))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Output settings. The analysis parameters only matter to [`render_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportConfig {
    pub format: Format,
    pub decimals: usize,
    pub include_errata_notes: bool,
    pub thresholds: Thresholds,
    pub strong_threshold: f64,
    pub top: NonZeroUsize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            format: Format::Markdown,
            decimals: 4,
            include_errata_notes: false,
            thresholds: Thresholds::default(),
            strong_threshold: DEFAULT_STRONG_THRESHOLD,
            top: NonZeroUsize::new(2).expect("nonzero"),
        }
    }
}

impl ReportConfig {
    pub fn with_format(format: Format) -> Self {
        ReportConfig { format, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DECIMALS).contains(&self.decimals) {
            return Err(Error::InvalidConfig(format!(
                "decimals must be between 1 and {MAX_DECIMALS}, got {}",
                self.decimals
            )));
        }
        if !(0.0..=1.0).contains(&self.strong_threshold) {
            return Err(Error::OutOfRange(self.strong_threshold));
        }
        Ok(())
    }
}

fn fmt_measure(counts: &RuleCounts, m: Measure, decimals: usize) -> String {
    exact_measure(counts, m)
        .map(|v| v.format(decimals))
        .unwrap_or_else(|| "-".to_string())
}

fn columns(rules: &[ScoredRule]) -> Vec<Measure> {
    Measure::ALL
        .into_iter()
        .filter(|m| rules.iter().any(|r| r.measures.get(*m).is_some()))
        .collect()
}

fn cell(rule: &ScoredRule, m: Measure, decimals: usize) -> String {
    if rule.measures.get(m).is_some() {
        fmt_measure(&rule.counts, m, decimals)
    } else {
        "-".to_string()
    }
}

/// Columns in `numeric` are right-aligned.
fn markdown_table(out: &mut String, header: &[&str], numeric: Range<usize>, rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let rule: Vec<&str> = (0..header.len())
        .map(|i| if numeric.contains(&i) { "---:" } else { "---" })
        .collect();
    let _ = writeln!(out, "|{}|", rule.join("|"));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// A rounded decimal string as a JSON number.
fn json_number(text: &str) -> serde_json::Value {
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// One row per rule in input order, with a column for every measure
/// populated on any rule. Markdown uses `X→Y`; CSV uses `X->Y`.
pub fn render_measure_table(rules: &[ScoredRule], cfg: &ReportConfig) -> Result<String> {
    cfg.validate()?;
    let cols = columns(rules);
    let d = cfg.decimals;
    match cfg.format {
        Format::Markdown => {
            let mut header = vec!["Relation"];
            header.extend(cols.iter().map(|m| m.name()));
            let rows: Vec<Vec<String>> = rules
                .iter()
                .map(|r| {
                    std::iter::once(r.rule.to_string())
                        .chain(cols.iter().map(|m| cell(r, *m, d)))
                        .collect()
                })
                .collect();
            let mut out = String::new();
            markdown_table(&mut out, &header, 1..header.len(), &rows);
            Ok(out)
        }
        Format::Csv => {
            let mut header = vec!["relation"];
            header.extend(cols.iter().map(|m| m.name()));
            let rows: Vec<Vec<String>> = rules
                .iter()
                .map(|r| {
                    std::iter::once(r.rule.ascii())
                        .chain(cols.iter().map(|m| cell(r, *m, d)))
                        .collect()
                })
                .collect();
            Ok(csv_text(&header, &rows))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rules
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("relation".into(), r.rule.to_string().into());
                    obj.insert("antecedent".into(), r.rule.antecedent().codes().into());
                    obj.insert("consequent".into(), r.rule.consequent().codes().into());
                    for m in &cols {
                        let value = if r.measures.get(*m).is_some() {
                            exact_measure(&r.counts, *m)
                                .map(|v| json_number(&v.format(d)))
                                .unwrap_or(serde_json::Value::Null)
                        } else {
                            serde_json::Value::Null
                        };
                        obj.insert(m.name().into(), value);
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            Ok(json_text(&rows))
        }
        Format::Dot => Err(Error::UnsupportedFormat(Format::Dot.name().into())),
    }
}

/// Itemsets with count and support, in input order.
pub fn render_itemset_table(itemsets: &[ItemsetCount], cfg: &ReportConfig) -> Result<String> {
    cfg.validate()?;
    let support = |c: &ItemsetCount| {
        if c.n_total == 0 {
            "-".to_string()
        } else {
            round_ratio(c.count as u128, c.n_total as u128, cfg.decimals)
        }
    };
    match cfg.format {
        Format::Markdown => {
            let rows: Vec<Vec<String>> = itemsets
                .iter()
                .map(|c| vec![c.itemset.to_string(), c.count.to_string(), support(c)])
                .collect();
            let mut out = String::new();
            markdown_table(&mut out, &["Itemset", "count", "support"], 1..3, &rows);
            Ok(out)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = itemsets
                .iter()
                .map(|c| vec![c.itemset.codes().join(" "), c.count.to_string(), support(c)])
                .collect();
            Ok(csv_text(&["itemset", "count", "support"], &rows))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = itemsets
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "itemset": c.itemset.codes(),
                        "count": c.count,
                        "support": json_number(&support(c)),
                    })
                })
                .collect();
            Ok(json_text(&rows))
        }
        Format::Dot => Err(Error::UnsupportedFormat(Format::Dot.name().into())),
    }
}

/// A DOT identifier: bare when it is a plain alphanumeric ID, quoted otherwise.
fn dot_id(code: &str) -> String {
    let plain = code
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && code.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain && !["graph", "node", "edge", "strict", "digraph", "subgraph"]
        .contains(&code.to_ascii_lowercase().as_str())
    {
        code.to_string()
    } else {
        format!("\"{}\"", code.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn edge_cosine(counts: &RuleCounts, decimals: usize) -> Option<String> {
    exact_measure(counts, Measure::Cosine).map(|v| v.format(decimals))
}

/// An undirected DOT graph with cosine edge labels at 4 decimals.
pub fn render_dot(graph: &RelationGraph) -> String {
    render_dot_with(graph, 4)
}

/// Nodes in code order, edges in `(smaller, larger)` order.
pub fn render_dot_with(graph: &RelationGraph, decimals: usize) -> String {
    let mut out = String::from("graph G {\n");
    for node in graph.nodes() {
        let _ = writeln!(out, "  {};", dot_id(node));
    }
    for (a, b, edge) in graph.edges() {
        let _ = write!(out, "  {} -- {}", dot_id(a), dot_id(b));
        match edge_cosine(&edge.best().counts, decimals) {
            Some(label) => {
                let _ = writeln!(out, " [label=\"{label}\"];");
            }
            None => out.push_str(";\n"),
        }
    }
    out.push_str("}\n");
    out
}

/// Degree and edge listing of a relation graph. DOT format delegates to
/// [`render_dot_with`].
pub fn render_graph(graph: &RelationGraph, cfg: &ReportConfig) -> Result<String> {
    cfg.validate()?;
    let d = cfg.decimals;
    let edge_rows: Vec<(String, String, String, String)> = graph
        .edges()
        .map(|(a, b, e)| {
            let cos = edge_cosine(&e.best().counts, d);
            let strength = e
                .cosine()
                .and_then(|v| classify_cosine(v, cfg.strong_threshold).ok())
                .map(|s| s.as_str().to_string())
                .unwrap_or_else(|| "-".into());
            (a.to_string(), b.to_string(), cos.unwrap_or_else(|| "-".into()), strength)
        })
        .collect();
    let degree_map = degrees(graph);
    match cfg.format {
        Format::Dot => Ok(render_dot_with(graph, d)),
        Format::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "Nodes: {}, edges: {}\n", graph.node_count(), graph.edge_count());
            let rows: Vec<Vec<String>> = degree_map
                .iter()
                .map(|(c, n)| vec![c.clone(), n.to_string()])
                .collect();
            markdown_table(&mut out, &["Item", "degree"], 1..2, &rows);
            out.push('\n');
            let rows: Vec<Vec<String>> = edge_rows
                .iter()
                .map(|(a, b, c, s)| vec![format!("{a}–{b}"), c.clone(), s.clone()])
                .collect();
            markdown_table(&mut out, &["Edge", "cosine", "strength"], 1..2, &rows);
            Ok(out)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = edge_rows
                .into_iter()
                .map(|(a, b, c, s)| vec![a, b, c, s])
                .collect();
            Ok(csv_text(&["source", "target", "cosine", "strength"], &rows))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Edge {
                source: String,
                target: String,
                cosine: serde_json::Value,
                strength: String,
            }
            #[derive(Serialize)]
            struct Graph<'a> {
                nodes: Vec<&'a str>,
                degrees: &'a BTreeMap<String, usize>,
                edges: Vec<Edge>,
            }
            let edges = edge_rows
                .into_iter()
                .map(|(source, target, c, strength)| Edge {
                    source,
                    target,
                    cosine: json_number(&c),
                    strength,
                })
                .collect();
            Ok(json_text(&Graph { nodes: graph.nodes().collect(), degrees: &degree_map, edges }))
        }
    }
}

fn label_of<'a>(db: &'a TransactionDb, code: &str, survey: bool) -> Option<&'a str> {
    db.item(code).and_then(|i| i.label()).or_else(|| {
        survey
            .then(|| CHANNELS.iter().find(|c| c.0 == code).map(|c| c.1))
            .flatten()
    })
}

/// Ranked hubs with their degree and occurrence count.
pub fn render_hubs(hubs: &[(String, usize)], db: &TransactionDb, cfg: &ReportConfig) -> Result<String> {
    cfg.validate()?;
    let counts = db.item_counts();
    let survey = is_advertisement_survey(db);
    let rows: Vec<(usize, &str, &str, usize, usize)> = hubs
        .iter()
        .enumerate()
        .map(|(i, (code, degree))| {
            (
                i + 1,
                code.as_str(),
                label_of(db, code, survey).unwrap_or(""),
                *degree,
                counts.get(code).copied().unwrap_or(0),
            )
        })
        .collect();
    match cfg.format {
        Format::Markdown => {
            let mut out = String::new();
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(rank, code, label, degree, count)| {
                    vec![rank.to_string(), code.to_string(), label.to_string(), degree.to_string(), count.to_string()]
                })
                .collect();
            markdown_table(&mut out, &["Rank", "Item", "Label", "degree", "count"], 3..5, &rows);
            Ok(out)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(rank, code, _, degree, count)| {
                    vec![rank.to_string(), code.to_string(), degree.to_string(), count.to_string()]
                })
                .collect();
            Ok(csv_text(&["rank", "item", "degree", "count"], &rows))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(rank, code, label, degree, count)| {
                    serde_json::json!({
                        "rank": rank,
                        "item": code,
                        "label": if label.is_empty() { serde_json::Value::Null } else { (*label).into() },
                        "degree": degree,
                        "count": count,
                    })
                })
                .collect();
            Ok(json_text(&rows))
        }
        Format::Dot => Err(Error::UnsupportedFormat(Format::Dot.name().into())),
    }
}

/// The full analysis as Markdown, sections in fixed order: Items, Pairs,
/// Rules, Cosine, Graph degrees, Recommendation, and Errata when asked for
/// and `db` is the advertisement survey.
pub fn render_report(db: &TransactionDb, cfg: &ReportConfig) -> Result<String> {
    cfg.validate()?;
    if cfg.format != Format::Markdown {
        return Err(Error::UnsupportedFormat(cfg.format.name().into()));
    }
    let d = cfg.decimals;
    let n = db.n_total();
    let survey = is_advertisement_survey(db);
    let ratio = |count: usize| {
        if n == 0 {
            "-".to_string()
        } else {
            round_ratio(count as u128, n as u128, d)
        }
    };

    let mut out = String::new();
    out.push_str("# Association analysis\n\n");
    let _ = writeln!(out, "Transactions: {n}  ");
    let _ = writeln!(out, "Items: {}  ", db.universe_len());
    let _ = writeln!(
        out,
        "Thresholds: support ≥ {}, confidence ≥ {}; strong cosine ≥ {}\n",
        cfg.thresholds.min_support, cfg.thresholds.min_confidence, cfg.strong_threshold
    );

    out.push_str("## Items\n\n");
    let rows: Vec<Vec<String>> = db
        .item_counts()
        .into_iter()
        .map(|(code, count)| {
            let label = label_of(db, &code, survey).unwrap_or("").to_string();
            vec![code, label, count.to_string(), ratio(count)]
        })
        .collect();
    markdown_table(&mut out, &["Item", "Label", "count", "support"], 2..4, &rows);

    out.push_str("\n## Pairs\n\n");
    let pairs = pair_counts(db);
    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|p| vec![p.itemset.to_string(), p.count.to_string(), ratio(p.count)])
        .collect();
    markdown_table(&mut out, &["Pair", "count", "support"], 1..3, &rows);

    let rules = generate_rules(db, &pairs, cfg.thresholds);
    out.push_str("\n## Rules\n\n");
    let rows: Vec<Vec<String>> = rules
        .iter()
        .map(|r| {
            vec![
                r.rule.to_string(),
                fmt_measure(&r.counts, Measure::Support, d),
                fmt_measure(&r.counts, Measure::Confidence, d),
            ]
        })
        .collect();
    markdown_table(&mut out, &["Relation", "support", "confidence"], 1..3, &rows);

    let graph = build_relation_graph(&rules);
    out.push_str("\n## Cosine\n\n");
    out.push_str("Each pair is listed under its higher-confidence direction.\n\n");
    let mut best: Vec<&ScoredRule> = graph.edges().map(|(_, _, e)| e.best()).collect();
    best.sort_by(|a, b| rule_order(a, b));
    let rows: Vec<Vec<String>> = best
        .iter()
        .map(|r| {
            let strength = r
                .counts
                .cosine()
                .and_then(|v| classify_cosine(v, cfg.strong_threshold).ok())
                .map(|s| s.as_str())
                .unwrap_or("-");
            vec![r.rule.to_string(), fmt_measure(&r.counts, Measure::Cosine, d), strength.to_string()]
        })
        .collect();
    markdown_table(&mut out, &["Relation", "cosine", "strength"], 1..2, &rows);

    out.push_str("\n## Graph degrees\n\n");
    let _ = writeln!(out, "Nodes: {}, edges: {}\n", graph.node_count(), graph.edge_count());
    let ranking = recommend_hubs(&graph, db, NonZeroUsize::MAX);
    let rows: Vec<Vec<String>> = ranking
        .iter()
        .map(|(code, degree)| vec![code.clone(), degree.to_string()])
        .collect();
    markdown_table(&mut out, &["Item", "degree"], 1..2, &rows);

    out.push_str("\n## Recommendation\n\n");
    let hubs = recommend_hubs(&graph, db, cfg.top);
    if hubs.is_empty() {
        out.push_str("No relation survives the thresholds.\n");
    } else {
        for (i, (code, degree)) in hubs.iter().enumerate() {
            let label = label_of(db, code, survey)
                .map(|l| format!(" ({l})"))
                .unwrap_or_default();
            let _ = writeln!(out, "{}. {code}{label}: related to {degree} other items", i + 1);
        }
    }

    if cfg.include_errata_notes && survey {
        out.push_str("\n## Errata\n\n");
        out.push_str(
            "Tabulated confidences that disagree with count(X ∪ Y) / count(X) \
             on this data:\n\n",
        );
        let counts = db.item_counts();
        let rows: Vec<Vec<String>> = CONFIDENCE_ERRATA
            .iter()
            .map(|e| {
                let joint = db
                    .transactions()
                    .iter()
                    .filter(|t| t.contains(e.antecedent) && t.contains(e.consequent))
                    .count();
                let computed = Exact::Ratio(joint as u128, counts[e.antecedent] as u128).format(d);
                vec![
                    format!("{}→{}", e.antecedent, e.consequent),
                    e.printed.to_string(),
                    computed,
                    e.explanation.to_string(),
                ]
            })
            .collect();
        markdown_table(&mut out, &["Relation", "printed", "computed", "note"], 1..3, &rows);
    }
    Ok(out)
}
