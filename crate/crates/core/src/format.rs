//! `.cox`, JSON and DOT encodings of [`PDiagram`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{check_name, PDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Cox,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cox" => Ok(Format::Cox),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(malformed(0, format!("unknown format `{other}`"))),
        }
    }
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedInput { line, message: message.into() }
}

/// Parses a diagram. DOT is export-only.
pub fn parse_diagram(text: &[u8], format: Format) -> Result<PDiagram> {
    let text = std::str::from_utf8(text).map_err(|e| malformed(0, format!("invalid UTF-8: {e}")))?;
    match format {
        Format::Cox => parse_cox(text),
        Format::Json => parse_json(text),
        Format::Dot => Err(malformed(0, "DOT input is not supported")),
    }
}

/// Guesses the format from content: JSON starts with `{`.
pub fn parse_auto(text: &[u8]) -> Result<PDiagram> {
    let first = text.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'{') {
        parse_diagram(text, Format::Json)
    } else {
        parse_diagram(text, Format::Cox)
    }
}

fn parse_cox(text: &str) -> Result<PDiagram> {
    let mut seen_header = false;
    let mut gens: Vec<String> = Vec::new();
    let mut gen_set: BTreeSet<String> = BTreeSet::new();
    let mut edges: Vec<(String, String, u32)> = Vec::new();
    let mut pairs: BTreeSet<(String, String)> = BTreeSet::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        if !seen_header {
            if keyword != "cox" || rest != ["1"] {
                return Err(malformed(line_no, "expected header `cox 1`"));
            }
            seen_header = true;
            continue;
        }
        match keyword {
            "gen" => {
                if rest.is_empty() {
                    return Err(malformed(line_no, "`gen` needs at least one name"));
                }
                for name in rest {
                    check_name(name, false).map_err(|m| malformed(line_no, m))?;
                    if !gen_set.insert(name.to_owned()) {
                        return Err(malformed(line_no, format!("duplicate generator `{name}`")));
                    }
                    gens.push(name.to_owned());
                }
            }
            "edge" => {
                let [s, t, m] = rest[..] else {
                    return Err(malformed(line_no, "expected `edge <name> <name> <label>`"));
                };
                for name in [s, t] {
                    if !gen_set.contains(name) {
                        return Err(malformed(line_no, format!("unknown endpoint `{name}`")));
                    }
                }
                if s == t {
                    return Err(malformed(line_no, format!("self-pair `{s}`")));
                }
                let m: u32 = m.parse().map_err(|_| malformed(line_no, format!("bad label `{m}`")))?;
                if m < 2 {
                    return Err(malformed(line_no, format!("label {m} is below 2")));
                }
                let key = if s < t { (s.to_owned(), t.to_owned()) } else { (t.to_owned(), s.to_owned()) };
                if !pairs.insert(key) {
                    return Err(malformed(line_no, format!("duplicate edge `{s}`-`{t}`")));
                }
                edges.push((s.to_owned(), t.to_owned(), m));
            }
            other => return Err(malformed(line_no, format!("unexpected token `{other}`"))),
        }
    }
    if !seen_header {
        return Err(malformed(1, "missing header `cox 1`"));
    }
    PDiagram::new(&gens, &edges)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDiagram {
    version: u32,
    generators: Vec<String>,
    edges: Vec<(String, String, u64)>,
}

fn parse_json(text: &str) -> Result<PDiagram> {
    let doc: JsonDiagram = serde_json::from_str(text).map_err(|e| malformed(e.line(), e.to_string()))?;
    if doc.version != 1 {
        return Err(malformed(0, format!("unsupported version {}", doc.version)));
    }
    let known: BTreeMap<&str, ()> = doc.generators.iter().map(|g| (g.as_str(), ())).collect();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (s, t, m) in &doc.edges {
        for name in [s, t] {
            if !known.contains_key(name.as_str()) {
                return Err(malformed(0, format!("unknown endpoint `{name}`")));
            }
        }
        let m = u32::try_from(*m).map_err(|_| malformed(0, format!("label {m} out of range")))?;
        edges.push((s.clone(), t.clone(), m));
    }
    PDiagram::new(&doc.generators, &edges).map_err(|e| match e {
        Error::SamePair(s) => malformed(0, format!("self-pair `{s}`")),
        other => other,
    })
}

/// Serializes a diagram. Output is deterministic: generators sorted, edges
/// sorted by endpoint names.
pub fn export(d: &PDiagram, format: Format) -> String {
    match format {
        Format::Cox => to_cox(d),
        Format::Json => to_json(d),
        Format::Dot => to_dot(d),
    }
}

fn to_cox(d: &PDiagram) -> String {
    let mut out = String::from("cox 1\n");
    if !d.is_empty() {
        out.push_str("gen");
        for n in d.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for (s, t, m) in d.named_edges() {
        let _ = writeln!(out, "edge {s} {t} {m}");
    }
    out
}

pub(crate) fn json_value(d: &PDiagram) -> serde_json::Value {
    let doc = JsonDiagram {
        version: 1,
        generators: d.names().to_vec(),
        edges: d.named_edges().into_iter().map(|(s, t, m)| (s, t, u64::from(m))).collect(),
    };
    serde_json::to_value(doc).expect("diagram serializes")
}

fn to_json(d: &PDiagram) -> String {
    let mut s = serde_json::to_string(&json_value(d)).expect("diagram serializes");
    s.push('\n');
    s
}

fn dot_id(name: &str) -> String {
    let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

fn to_dot(d: &PDiagram) -> String {
    let mut out = String::from("graph P {\n");
    for n in d.names() {
        let _ = writeln!(out, "  {};", dot_id(n));
    }
    for (s, t, m) in d.named_edges() {
        let _ = writeln!(out, "  {} -- {} [label={m}];", dot_id(&s), dot_id(&t));
    }
    out.push_str("}\n");
    out
}
