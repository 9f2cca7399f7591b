//! The `rulekit` command line.
//!
//! Exit status is 0 on success, 1 on usage errors (bad flags, unsupported
//! format for a subcommand) and 2 on data errors (unreadable input, parse
//! failures with `file:line` positions, undefined measures).

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::num::NonZeroUsize;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::measures::Measure;
use crate::mine::{apriori, pair_counts, MiningConfig};
use crate::oracle::{synth_db, SynthSpec};
use crate::report::{
    render_graph, render_hubs, render_itemset_table, render_measure_table, render_report, Format,
    ReportConfig,
};
use crate::rulegraph::{
    build_relation_graph, generate_rules, recommend_hubs, ScoredRule, Thresholds,
    DEFAULT_STRONG_THRESHOLD,
};
use crate::threshold::Threshold;
use crate::txdb::fixture::advertisement_survey;
use crate::txdb::{parse_survey_csv, parse_transactions, TransactionDb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rulekit", version, about = "Association rules and relation graphs over transaction data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse the input and report its size
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Frequent itemsets by Apriori
    Mine {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "0", value_name = "FLOAT")]
        min_support: Threshold,
        /// Largest itemset size to report
        #[arg(long, value_name = "INT")]
        max_size: Option<NonZeroUsize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scored pair rules
    Rules {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        /// Comma-separated subset of support,confidence,cosine,lift
        #[arg(long, default_value = "support,confidence,cosine", value_name = "LIST")]
        measures: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relation graph: degrees and edges, or DOT
    Graph {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[command(flatten)]
        strength: StrengthArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Items ranked by relation-graph degree
    Recommend {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long, default_value = "2", value_name = "INT")]
        top: NonZeroUsize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full Markdown analysis
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[command(flatten)]
        strength: StrengthArgs,
        #[arg(long, default_value = "2", value_name = "INT")]
        top: NonZeroUsize,
        /// Append the known discrepancies of the advertisement survey tables
        #[arg(long)]
        errata: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the 350-row advertisement survey in transaction format
    Fixture,
    /// Generate a synthetic database from a TOML spec
    Synth {
        #[arg(long, value_name = "PATH")]
        spec: String,
        /// Overrides the seed in the spec file
        #[arg(long, value_name = "INT")]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, or `-` for standard input (the default)
    #[arg(long, value_name = "PATH|-")]
    input: Option<String>,
    /// Read `respondent_id,answer1,answer2` CSV instead of transaction lines
    #[arg(long)]
    survey: bool,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, default_value = "0", value_name = "FLOAT")]
    min_support: Threshold,
    #[arg(long, default_value = "0", value_name = "FLOAT")]
    min_conf: Threshold,
}

impl ThresholdArgs {
    fn get(&self) -> Thresholds {
        Thresholds::new(self.min_support, self.min_conf)
    }
}

#[derive(Args, Debug)]
struct StrengthArgs {
    /// Cosine at or above this is a strong relation
    #[arg(long, default_value_t = DEFAULT_STRONG_THRESHOLD, value_name = "FLOAT")]
    threshold: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, default_value = "markdown", value_name = "markdown|csv|dot|json")]
    format: Format,
    #[arg(long, default_value_t = 4, value_name = "INT")]
    decimals: usize,
}

impl OutputArgs {
    fn config(&self) -> ReportConfig {
        ReportConfig { format: self.format, decimals: self.decimals, ..Default::default() }
    }
}

/// A failure with the exit status it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

/// Flag-level mistakes are usage errors; everything else is about the data.
fn classify(err: Error) -> Failure {
    match err {
        Error::UnsupportedFormat(_)
        | Error::InvalidConfig(_)
        | Error::InvalidThreshold(_)
        | Error::OutOfRange(_)
        | Error::UnknownMeasure(_) => Failure::usage(err.to_string()),
        other => Failure::data(other.to_string()),
    }
}

fn positioned(source: &str, err: Error) -> Failure {
    let message = match &err {
        Error::MalformedLine { line, reason } => format!("{source}:{line}: {reason}"),
        Error::DuplicateItemInTransaction { line, code } => {
            format!("{source}:{line}: item `{code}` appears more than once in the transaction")
        }
        Error::DuplicateRespondent { line, id } => {
            format!("{source}:{line}: respondent `{id}` already seen")
        }
        _ => format!("{source}: {err}"),
    };
    Failure::data(message)
}

fn load(input: &InputArgs, stdin: &mut dyn Read) -> Result<TransactionDb, Failure> {
    let (source, text) = match input.input.as_deref() {
        None | Some("-") => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| Failure::data(format!("cannot read standard input: {e}")))?;
            ("<stdin>".to_string(), buf)
        }
        Some(path) => {
            let buf = fs::read(path).map_err(|e| Failure::data(format!("cannot read {path}: {e}")))?;
            (path.to_string(), buf)
        }
    };
    let text = String::from_utf8(text)
        .map_err(|_| Failure::data(format!("{source}: input is not valid UTF-8")))?;
    let parsed = if input.survey { parse_survey_csv(&text) } else { parse_transactions(&text) };
    parsed.map_err(|e| positioned(&source, e))
}

fn scored_rules(db: &TransactionDb, thresholds: Thresholds) -> Vec<ScoredRule> {
    generate_rules(db, &pair_counts(db), thresholds)
}

fn check_strength(threshold: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(Failure::usage(format!("--threshold must lie in [0, 1], got {threshold}")))
    }
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<String, Failure> {
    match command {
        Command::Validate { input } => {
            let db = load(&input, stdin)?;
            Ok(format!("ok: {} transactions, {} items\n", db.n_total(), db.universe_len()))
        }
        Command::Mine { input, min_support, max_size, output } => {
            let cfg = output.config();
            cfg.validate().map_err(classify)?;
            let db = load(&input, stdin)?;
            let mining = MiningConfig { min_support, max_itemset_size: max_size };
            render_itemset_table(&apriori(&db, &mining), &cfg).map_err(classify)
        }
        Command::Rules { input, thresholds, measures, output } => {
            let which = Measure::parse_list(&measures).map_err(classify)?;
            let cfg = output.config();
            if cfg.format == Format::Dot {
                return Err(classify(Error::UnsupportedFormat("dot".into())));
            }
            cfg.validate().map_err(classify)?;
            let db = load(&input, stdin)?;
            let rules: Vec<ScoredRule> = scored_rules(&db, thresholds.get())
                .into_iter()
                .map(|r| ScoredRule { measures: r.measures.restrict(&which), ..r })
                .collect();
            render_measure_table(&rules, &cfg).map_err(classify)
        }
        Command::Graph { input, thresholds, strength, output } => {
            check_strength(strength.threshold)?;
            let cfg = ReportConfig { strong_threshold: strength.threshold, ..output.config() };
            cfg.validate().map_err(classify)?;
            let db = load(&input, stdin)?;
            let graph = build_relation_graph(&scored_rules(&db, thresholds.get()));
            render_graph(&graph, &cfg).map_err(classify)
        }
        Command::Recommend { input, thresholds, top, output } => {
            let cfg = output.config();
            if cfg.format == Format::Dot {
                return Err(classify(Error::UnsupportedFormat("dot".into())));
            }
            cfg.validate().map_err(classify)?;
            let db = load(&input, stdin)?;
            let graph = build_relation_graph(&scored_rules(&db, thresholds.get()));
            render_hubs(&recommend_hubs(&graph, &db, top), &db, &cfg).map_err(classify)
        }
        Command::Report { input, thresholds, strength, top, errata, output } => {
            check_strength(strength.threshold)?;
            let cfg = ReportConfig {
                include_errata_notes: errata,
                thresholds: thresholds.get(),
                strong_threshold: strength.threshold,
                top,
                ..output.config()
            };
            if cfg.format != Format::Markdown {
                return Err(classify(Error::UnsupportedFormat(cfg.format.name().into())));
            }
            cfg.validate().map_err(classify)?;
            let db = load(&input, stdin)?;
            render_report(&db, &cfg).map_err(classify)
        }
        Command::Fixture => {
            let db = advertisement_survey();
            let mut out = String::from(
                "# advertisement survey: 350 enquiry forms, two channels each\n\
                 # H=Hording N=News paper P=Pamphlets R=Radio V=Advertisement Van C=Personal Contact\n",
            );
            out.push_str(&db.to_transaction_text());
            Ok(out)
        }
        Command::Synth { spec, seed } => {
            let text = fs::read_to_string(&spec)
                .map_err(|e| Failure::data(format!("cannot read {spec}: {e}")))?;
            let mut parsed = SynthSpec::from_toml(&text).map_err(|e| positioned(&spec, e))?;
            if let Some(seed) = seed {
                parsed.seed = seed;
            }
            let db = synth_db(&parsed).map_err(|e| positioned(&spec, e))?;
            Ok(db.to_transaction_text())
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit status.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(text) => match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "rulekit: cannot write output: {e}");
                EXIT_DATA
            }
        },
        Err(failure) => {
            let _ = writeln!(stderr, "rulekit: {}", failure.message);
            failure.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rulekit").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_from_stdin() {
        let (code, out, _) = call(&["validate"], "H,N\nH,P\n");
        assert_eq!(code, 0);
        assert_eq!(out, "ok: 2 transactions, 3 items\n");
    }

    #[test]
    fn parse_error_has_position() {
        let (code, _, err) = call(&["validate", "--input", "-"], "H,N\nH,H\n");
        assert_eq!(code, 2);
        assert!(err.contains("<stdin>:2:"), "{err}");
    }

    #[test]
    fn usage_errors_exit_one() {
        for args in [
            vec!["mine", "--bogus"],
            vec![],
            vec!["frobnicate"],
            vec!["rules", "--min-support", "1.5"],
            vec!["rules", "--measures", "gini"],
            vec!["rules", "--format", "dot"],
            vec!["report", "--format", "csv"],
            vec!["report", "--decimals", "0"],
            vec!["graph", "--threshold", "2"],
            vec!["recommend", "--top", "0"],
            vec!["mine", "--max-size", "0"],
        ] {
            let (code, out, err) = call(&args, "H,N\n");
            assert_eq!(code, 1, "{args:?}: {err}");
            assert!(out.is_empty());
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("fixture"));
    }
}
