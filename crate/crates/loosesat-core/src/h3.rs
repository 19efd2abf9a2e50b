use thiserror::Error;

use crate::error::DomainError;
use crate::hypergraph::{Hypergraph3, Triple};

/// Errors from reading the line-oriented `.h3` format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum H3Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Domain { line: usize, source: DomainError },
}

fn parse_err(line: usize, msg: impl Into<String>) -> H3Error {
    H3Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the DIMACS-like `.h3` grammar:
///
/// ```text
/// # comment
/// p h3 <n> <m>
/// e <a> <b> <c>
/// ```
///
/// Vertex ids are 0-based; exactly `m` edge lines must follow the header.
/// Vertex order within a line is not significant, but repeated vertices,
/// out-of-range ids and duplicate edges are rejected with the offending
/// line number.
pub fn parse_h3(text: &str) -> Result<Hypergraph3, H3Error> {
    let mut header: Option<(usize, usize)> = None;
    let mut triples: Vec<(usize, Triple)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if fields.len() != 4 || fields[1] != "h3" {
                    return Err(parse_err(lineno, "expected `p h3 <n> <m>`"));
                }
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad vertex count `{}`", fields[2])))?;
                let m = fields[3]
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad edge count `{}`", fields[3])))?;
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(parse_err(lineno, "edge line before `p h3` header"));
                }
                if fields.len() != 4 {
                    return Err(parse_err(lineno, "expected `e <a> <b> <c>`"));
                }
                let mut t = [0usize; 3];
                for (slot, f) in t.iter_mut().zip(&fields[1..]) {
                    *slot = f
                        .parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad vertex id `{}`", f)))?;
                }
                triples.push((lineno, t));
            }
            other => {
                return Err(parse_err(lineno, format!("unknown record `{}`", other)));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(text.lines().count() + 1, "missing `p h3` header"))?;
    if triples.len() != m {
        return Err(parse_err(
            text.lines().count() + 1,
            format!("header declares {} edges, found {}", m, triples.len()),
        ));
    }
    // Validate line by line so errors carry positions, then build once.
    let mut seen: Vec<Triple> = Vec::with_capacity(m);
    for (lineno, t) in &triples {
        let one = Hypergraph3::build(n, &[*t]).map_err(|source| H3Error::Domain {
            line: *lineno,
            source,
        })?;
        let e = one.edges()[0];
        if seen.contains(&e) {
            return Err(H3Error::Domain {
                line: *lineno,
                source: DomainError::DuplicateEdge(e),
            });
        }
        seen.push(e);
    }
    Hypergraph3::build(n, &seen).map_err(|source| H3Error::Domain { line: 1, source })
}

/// Canonical text form: header, then edges sorted lexicographically with
/// ascending vertices per line. `parse_h3(write_h3(g))` reproduces `g`, and
/// `write_h3` is the identity on files it produced.
pub fn write_h3(g: &Hypergraph3) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    out.push_str(&format!("p h3 {} {}\n", g.n(), g.edge_count()));
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e[0], e[1], e[2]));
    }
    out
}
