//! Association rules, interestingness measures and relation graphs over
//! item-transaction databases.
//!
//! The pipeline runs from a [`TransactionDb`] through itemset counting
//! ([`mine`]), rule scoring ([`measures`]) and the relation graph
//! ([`rulegraph`]) to rendered tables and reports ([`report`]):
//!
//! ```
//! use std::num::NonZeroUsize;
//! use rulekit::mine::pair_counts;
//! use rulekit::rulegraph::{build_relation_graph, generate_rules, recommend_hubs, Thresholds};
//! use rulekit::txdb::fixture::advertisement_survey;
//!
//! let db = advertisement_survey();
//! let rules = generate_rules(&db, &pair_counts(&db), Thresholds::default());
//! let graph = build_relation_graph(&rules);
//! let hubs = recommend_hubs(&graph, &db, NonZeroUsize::new(2).unwrap());
//! assert_eq!(hubs, [("C".to_string(), 5), ("H".to_string(), 4)]);
//! ```
//!
//! The guide under `book/` walks through each stage; its code samples are
//! compiled and run as doc tests of this crate.

pub mod cli;
pub mod error;
pub mod measures;
pub mod mine;
pub mod oracle;
pub mod report;
pub mod rulegraph;
pub mod threshold;
pub mod txdb;

pub use error::{Error, Result};
pub use measures::{Measure, MeasureSet, Rule, RuleCounts};
pub use mine::{ItemsetCount, MiningConfig};
pub use rulegraph::{RelationGraph, ScoredRule, Thresholds};
pub use threshold::Threshold;
pub use txdb::{Item, Itemset, Transaction, TransactionDb};

// mdbook cannot run snippets that depend on this crate, so each chapter is
// pulled in here and its code blocks run under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/transactions.md")]
    mod transactions {}
    #[doc = include_str!("../../../book/src/mining.md")]
    mod mining {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/relation-graph.md")]
    mod relation_graph {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
