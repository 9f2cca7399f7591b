use std::collections::HashSet;

use crate::error::{Error, Result};

use super::{validate_code, Transaction, TransactionDb};

/// The exact header a survey file must start with.
pub const SURVEY_HEADER: [&str; 3] = ["respondent_id", "answer1", "answer2"];

/// Parses the line-oriented transaction format.
///
/// Lines are split on LF with a trailing CR dropped. Blank lines and lines
/// whose first non-space character is `#` are skipped; every other line is a
/// comma-separated list of item codes, each token trimmed of surrounding
/// spaces. Line numbers in errors are 1-based.
pub fn parse_transactions(text: &str) -> Result<TransactionDb> {
    let mut transactions = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        transactions.push(parse_line(body, line_no)?);
    }
    Ok(TransactionDb::new(transactions))
}

fn parse_line(body: &str, line: usize) -> Result<Transaction> {
    let mut codes: Vec<&str> = Vec::new();
    for token in body.split(',').map(str::trim) {
        if token.is_empty() {
            return Err(Error::MalformedLine { line, reason: "empty item token".into() });
        }
        if validate_code(token).is_err() {
            return Err(Error::MalformedLine {
                line,
                reason: format!("invalid item code `{token}`"),
            });
        }
        if codes.contains(&token) {
            return Err(Error::DuplicateItemInTransaction { line, code: token.to_string() });
        }
        codes.push(token);
    }
    Ok(Transaction::new(codes).expect("codes validated above"))
}

/// Parses a two-answer survey export with header
/// `respondent_id,answer1,answer2`. Each row becomes a size-2 transaction;
/// respondent ids are only checked for uniqueness.
pub fn parse_survey_csv(text: &str) -> Result<TransactionDb> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut records = reader.records();
    match records.next() {
        None => {
            return Err(Error::MalformedLine { line: 1, reason: "missing header".into() });
        }
        Some(header) => {
            let header = header.map_err(|e| csv_error(e, 1))?;
            if header.iter().ne(SURVEY_HEADER) {
                return Err(Error::MalformedLine {
                    line: line_of(&header, 1),
                    reason: format!("expected header `{}`", SURVEY_HEADER.join(",")),
                });
            }
        }
    }

    let mut seen = HashSet::new();
    let mut transactions = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = line_of(&record, 0);
        if record.len() != 3 {
            return Err(Error::MalformedLine {
                line,
                reason: format!("expected 3 columns, found {}", record.len()),
            });
        }
        let (id, a, b) = (&record[0], &record[1], &record[2]);
        if id.is_empty() {
            return Err(Error::MalformedLine { line, reason: "empty respondent_id".into() });
        }
        for code in [a, b] {
            if validate_code(code).is_err() {
                return Err(Error::MalformedLine {
                    line,
                    reason: format!("invalid item code `{code}`"),
                });
            }
        }
        if a == b {
            return Err(Error::DuplicateItemInTransaction { line, code: a.to_string() });
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateRespondent { line, id: id.to_string() });
        }
        transactions.push(Transaction::new([a, b]).expect("codes validated above"));
    }
    Ok(TransactionDb::new(transactions))
}

fn line_of(record: &csv::StringRecord, fallback: usize) -> usize {
    record
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback)
}

fn csv_error(err: csv::Error, fallback: usize) -> Error {
    let line = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback);
    Error::MalformedLine { line, reason: err.to_string() }
}
