#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

/// Endpoints and the attributes that followed the edge statement.
pub type DotEdge = (String, String, Vec<(String, String)>);

/// Statements recovered from a DOT document.
#[derive(Debug, Default, PartialEq)]
pub struct DotSummary {
    pub strict: bool,
    pub name: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<DotEdge>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    UndirectedEdge,
    DirectedEdge,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '{' | '}' | '[' | ']' | '=' | ';' | ',' => {
                out.push(match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '=' => Tok::Eq,
                    ';' => Tok::Semi,
                    _ => Tok::Comma,
                });
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push(Tok::UndirectedEdge);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::DirectedEdge);
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Id(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                if num.matches('.').count() > 1 || num == "-" || num == "." {
                    return Err(format!("bad numeral `{num}`"));
                }
                out.push(Tok::Id(num));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// Checks `src` against the undirected subset of the DOT grammar:
/// `[strict] graph [ID] { stmt* }`, where a statement is a node, an edge
/// chain with `--`, an attribute statement or `ID = ID`, each optionally
/// followed by `;`.
pub fn parse_dot(src: &str) -> Result<DotSummary, String> {
    let toks = tokenize(src)?;
    let mut pos = 0;
    let mut summary = DotSummary::default();
    let kw = |t: Option<&Tok>, word: &str| matches!(t, Some(Tok::Id(s)) if s.eq_ignore_ascii_case(word));

    if kw(toks.get(pos), "strict") {
        summary.strict = true;
        pos += 1;
    }
    if !kw(toks.get(pos), "graph") {
        return Err("expected `graph`".into());
    }
    pos += 1;
    if let Some(Tok::Id(name)) = toks.get(pos) {
        summary.name = Some(name.clone());
        pos += 1;
    }
    if toks.get(pos) != Some(&Tok::LBrace) {
        return Err("expected `{`".into());
    }
    pos += 1;

    fn attr_list(toks: &[Tok], pos: &mut usize) -> Result<Vec<(String, String)>, String> {
        let mut attrs = Vec::new();
        while toks.get(*pos) == Some(&Tok::LBracket) {
            *pos += 1;
            loop {
                match toks.get(*pos) {
                    Some(Tok::RBracket) => {
                        *pos += 1;
                        break;
                    }
                    Some(Tok::Id(k)) => {
                        let k = k.clone();
                        *pos += 1;
                        if toks.get(*pos) != Some(&Tok::Eq) {
                            return Err(format!("attribute `{k}` lacks `=`"));
                        }
                        *pos += 1;
                        let Some(Tok::Id(v)) = toks.get(*pos) else {
                            return Err(format!("attribute `{k}` lacks a value"));
                        };
                        attrs.push((k, v.clone()));
                        *pos += 1;
                        if matches!(toks.get(*pos), Some(Tok::Semi | Tok::Comma)) {
                            *pos += 1;
                        }
                    }
                    other => return Err(format!("bad attribute list at {other:?}")),
                }
            }
        }
        Ok(attrs)
    }

    loop {
        match toks.get(pos) {
            None => return Err("missing `}`".into()),
            Some(Tok::RBrace) => {
                pos += 1;
                break;
            }
            Some(Tok::Id(id)) => {
                let id = id.clone();
                pos += 1;
                let lowered = id.to_ascii_lowercase();
                if ["graph", "node", "edge"].contains(&lowered.as_str())
                    && toks.get(pos) == Some(&Tok::LBracket)
                {
                    attr_list(&toks, &mut pos)?;
                } else if toks.get(pos) == Some(&Tok::Eq) {
                    pos += 1;
                    if !matches!(toks.get(pos), Some(Tok::Id(_))) {
                        return Err(format!("`{id} =` lacks a value"));
                    }
                    pos += 1;
                } else if toks.get(pos) == Some(&Tok::UndirectedEdge) {
                    let mut chain = vec![id];
                    while toks.get(pos) == Some(&Tok::UndirectedEdge) {
                        pos += 1;
                        let Some(Tok::Id(next)) = toks.get(pos) else {
                            return Err("edge without a target".into());
                        };
                        chain.push(next.clone());
                        pos += 1;
                    }
                    let attrs = attr_list(&toks, &mut pos)?;
                    for w in chain.windows(2) {
                        summary.edges.push((w[0].clone(), w[1].clone(), attrs.clone()));
                    }
                } else if toks.get(pos) == Some(&Tok::DirectedEdge) {
                    return Err("`->` is not allowed in an undirected graph".into());
                } else {
                    attr_list(&toks, &mut pos)?;
                    summary.nodes.push(id);
                }
                if toks.get(pos) == Some(&Tok::Semi) {
                    pos += 1;
                }
            }
            Some(other) => return Err(format!("unexpected {other:?}")),
        }
    }
    if pos != toks.len() {
        return Err("trailing tokens after the graph body".into());
    }
    Ok(summary)
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
pub fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read golden file {}: {e}", path.display()));
    if expected != actual {
        panic!("golden mismatch for {name}\n--- expected\n{expected}\n--- actual\n{actual}");
    }
}
