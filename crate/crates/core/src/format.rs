//! The `pcm v1` and `esp v1` text formats.
//!
//! ```text
//! pcm v1
//! elements: 0 1 2
//! sum: 1 1 2
//! ```
//!
//! The first listed element is the zero. Sums with zero are implicit. An
//! `esp v1` file lists `leq:`, `perp:` and `sim:` pairs instead of sums.
//! `#` starts a comment. Emitted files list relation lines in lexicographic
//! order.

use std::collections::HashMap;

use thiserror::Error;

use crate::espalier::EspalierTable;
use crate::monoid::{Elem, MonoidTable};

/// A parse failure, with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Pcm(MonoidTable),
    Esp(EspalierTable),
}

impl Instance {
    pub fn emit(&self) -> String {
        match self {
            Instance::Pcm(t) => emit_pcm(t),
            Instance::Esp(l) => emit_esp(l),
        }
    }
}

fn check_label(l: &str) -> bool {
    !l.is_empty() && !l.contains('#') && !l.chars().any(char::is_whitespace)
}

fn assemble(header: &str, labels: &[String], mut lines: Vec<String>) -> String {
    lines.sort();
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    out.push_str("elements:");
    for l in labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Canonical `pcm v1` text. Panics on labels that cannot be written as tokens.
pub fn emit_pcm(t: &MonoidTable) -> String {
    assert!(
        t.labels().iter().all(|l| check_label(l)),
        "labels must be nonempty tokens without `#`"
    );
    let mut lines = Vec::new();
    for a in t.elements().skip(1) {
        for b in t.elements().skip(1) {
            if let Some(c) = t.add(a, b) {
                lines.push(format!("sum: {} {} {}", t.label(a), t.label(b), t.label(c)));
            }
        }
    }
    assemble("pcm v1", t.labels(), lines)
}

/// Canonical `esp v1` text. Panics on labels that cannot be written as tokens.
pub fn emit_esp(l: &EspalierTable) -> String {
    assert!(
        l.labels().iter().all(|x| check_label(x)),
        "labels must be nonempty tokens without `#`"
    );
    let mut lines = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            let (x, y) = (l.label(a), l.label(b));
            if l.leq(a, b) {
                lines.push(format!("leq: {x} {y}"));
            }
            if l.perp(a, b) {
                lines.push(format!("perp: {x} {y}"));
            }
            if l.sim(a, b) {
                lines.push(format!("sim: {x} {y}"));
            }
        }
    }
    assemble("esp v1", l.labels(), lines)
}

struct Body<'a> {
    labels: Vec<String>,
    index: HashMap<&'a str, Elem>,
    lines: Vec<(usize, &'a str, Vec<&'a str>)>,
}

/// Splits a file after its header into the element list and keyed lines.
fn body<'a>(lines: &[(usize, &'a str)], limit: usize) -> Result<Body<'a>, FormatError> {
    let mut labels: Option<Vec<String>> = None;
    let mut index = HashMap::new();
    let mut out = Vec::new();
    for &(no, text) in lines {
        let Some((key, rest)) = text.split_once(':') else {
            return fail(no, format!("expected `key: values`, found `{text}`"));
        };
        let args: Vec<&str> = rest.split_whitespace().collect();
        if key.trim() == "elements" {
            if labels.is_some() {
                return fail(no, "second `elements:` line");
            }
            if args.is_empty() {
                return fail(no, "empty element list");
            }
            if args.len() > limit {
                return fail(
                    no,
                    format!("{} elements exceed the size limit {limit}", args.len()),
                );
            }
            for (i, a) in args.iter().enumerate() {
                if index.insert(*a, i).is_some() {
                    return fail(no, format!("duplicate element `{a}`"));
                }
            }
            labels = Some(args.iter().map(|s| s.to_string()).collect());
        } else {
            if labels.is_none() {
                return fail(no, format!("`{}:` before `elements:`", key.trim()));
            }
            let key = key.trim();
            for a in &args {
                if !index.contains_key(a) {
                    return fail(no, format!("unknown element `{a}`"));
                }
            }
            out.push((no, key, args));
        }
    }
    let Some(labels) = labels else {
        let no = lines.last().map_or(1, |l| l.0);
        return fail(no, "missing `elements:` line");
    };
    Ok(Body {
        labels,
        index,
        lines: out,
    })
}

/// Parses either format, refusing carriers above `limit` elements.
pub fn parse(text: &str, limit: usize) -> Result<Instance, FormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(hno, header)) = lines.first() else {
        return fail(1, "empty file, expected `pcm v1` or `esp v1`");
    };
    let header: Vec<&str> = header.split_whitespace().collect();
    match header[..] {
        ["pcm", "v1"] => parse_pcm(&lines[1..], limit).map(Instance::Pcm),
        ["esp", "v1"] => parse_esp(&lines[1..], limit).map(Instance::Esp),
        _ => fail(hno, "expected header `pcm v1` or `esp v1`"),
    }
}

fn parse_pcm(lines: &[(usize, &str)], limit: usize) -> Result<MonoidTable, FormatError> {
    let b = body(lines, limit)?;
    let n = b.labels.len();
    let mut add: Vec<Option<Elem>> = vec![None; n * n];
    for a in 0..n {
        add[a] = Some(a);
        add[a * n] = Some(a);
    }
    for (no, key, args) in &b.lines {
        if *key != "sum" {
            return fail(*no, format!("unknown key `{key}:` in a pcm file"));
        }
        let [x, y, z] = args[..] else {
            return fail(*no, "`sum:` takes three elements");
        };
        let (x, y, z) = (b.index[x], b.index[y], b.index[z]);
        let slot = &mut add[x * n + y];
        if slot.is_some_and(|c| c != z) {
            return fail(*no, "conflicting sum");
        }
        *slot = Some(z);
    }
    let last = lines.last().map_or(1, |l| l.0);
    MonoidTable::new(b.labels, add).map_err(|e| FormatError {
        line: last,
        message: e.to_string(),
    })
}

fn parse_esp(lines: &[(usize, &str)], limit: usize) -> Result<EspalierTable, FormatError> {
    let b = body(lines, limit)?;
    let n = b.labels.len();
    let mut rels = [vec![false; n * n], vec![false; n * n], vec![false; n * n]];
    for (no, key, args) in &b.lines {
        let k = match *key {
            "leq" => 0,
            "perp" => 1,
            "sim" => 2,
            other => return fail(*no, format!("unknown key `{other}:` in an esp file")),
        };
        let [x, y] = args[..] else {
            return fail(*no, format!("`{key}:` takes two elements"));
        };
        rels[k][b.index[x] * n + b.index[y]] = true;
    }
    let [leq, perp, sim] = rels;
    let last = lines.last().map_or(1, |l| l.0);
    EspalierTable::new(b.labels, leq, perp, sim).map_err(|e| FormatError {
        line: last,
        message: e.to_string(),
    })
}
