//! The `kgbgraph v1` text format.
//!
//! ```text
//! kgbgraph v1
//! rootsystem begin
//! rootdatum v1
//! type A1
//! isogeny simply_connected
//! twist id
//! rootsystem end
//! nodes 3
//! node 0 0 e
//! node 1 0 e
//! node 2 1 1
//! label 0 1 nci1 cross=1 cayley=2
//! label 1 1 nci1 cross=0 cayley=2
//! label 2 1 r1 cross=2
//! ```
//!
//! `rootsystem @<path>` may replace the inline block when loading from a file;
//! the path is resolved against the file's directory.

use std::path::Path;

use crate::root_datum::{parse_root_datum_lines, RootDatum};
use crate::weyl::Word;

use super::{KgbError, KgbGraph, KgbNode, Label, RootTypeLabel};

pub fn save_kgb(g: &KgbGraph) -> String {
    let mut s = String::from("kgbgraph v1\nrootsystem begin\n");
    s.push_str(&g.datum().to_text());
    s.push_str("rootsystem end\n");
    s.push_str(&format!("nodes {}\n", g.node_count()));
    for (v, node) in g.nodes().iter().enumerate() {
        s.push_str(&format!("node {} {} {}\n", v, node.length, g.group().reduced_word(&node.tw)));
    }
    for (v, node) in g.nodes().iter().enumerate() {
        for (alpha, l) in node.labels.iter().enumerate() {
            s.push_str(&format!("label {} {} {} cross={}", v, alpha + 1, l.kind.code(), l.cross));
            if let Some(c) = l.cayley {
                s.push_str(&format!(" cayley={}", c));
            }
            s.push('\n');
        }
    }
    s
}

/// Parses and validates a graph with an inline root datum block.
pub fn load_kgb(text: &str) -> Result<KgbGraph, KgbError> {
    parse(text, None)
}

/// Like [`load_kgb`], also resolving `rootsystem @<path>` references.
pub fn load_kgb_file(path: &Path) -> Result<KgbGraph, KgbError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse(&text, Some(path.parent().unwrap_or(Path::new("."))))
}

fn io_error(path: &Path, e: std::io::Error) -> KgbError {
    KgbError::Io { path: path.display().to_string(), msg: e.to_string() }
}

fn err(line: usize, msg: impl Into<String>) -> KgbError {
    KgbError::Parse { line, msg: msg.into() }
}

fn parse(text: &str, base: Option<&Path>) -> Result<KgbGraph, KgbError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let mut it = lines.iter();
    match it.next() {
        Some((_, t)) if t.as_slice() == ["kgbgraph", "v1"] => {}
        Some((n, _)) => return Err(err(*n, "expected header `kgbgraph v1`")),
        None => return Err(err(0, "empty input")),
    }
    let datum = match it.next() {
        Some((_, t)) if t.as_slice() == ["rootsystem", "begin"] => {
            let mut block = Vec::new();
            loop {
                match it.next() {
                    Some((_, t)) if t.as_slice() == ["rootsystem", "end"] => break,
                    Some(line) => block.push(line.clone()),
                    None => return Err(err(0, "unterminated rootsystem block")),
                }
            }
            parse_root_datum_lines(&block)?
        }
        Some((n, t)) if t.len() == 2 && t[0] == "rootsystem" && t[1].starts_with('@') => {
            let Some(base) = base else {
                return Err(err(*n, "file references need a base directory"));
            };
            let path = base.join(&t[1][1..]);
            let text = std::fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
            crate::root_datum::parse_root_datum(&text)?
        }
        Some((n, _)) => return Err(err(*n, "expected `rootsystem begin` or `rootsystem @<path>`")),
        None => return Err(err(0, "missing rootsystem")),
    };
    parse_body(datum, it.cloned().collect())
}

fn parse_body(datum: RootDatum, lines: Vec<(usize, Vec<&str>)>) -> Result<KgbGraph, KgbError> {
    let group = crate::weyl::WeylGroup::new(datum.clone());
    let rank = datum.rank();
    let mut it = lines.into_iter();
    let count: usize = match it.next() {
        Some((n, t)) if t.len() == 2 && t[0] == "nodes" => t[1].parse().map_err(|_| err(n, "bad node count"))?,
        Some((n, _)) => return Err(err(n, "expected `nodes <n>`")),
        None => return Err(err(0, "missing `nodes`")),
    };
    let mut heads: Vec<Option<(usize, crate::weyl::WeylElt)>> = vec![None; count];
    let mut labels: Vec<Vec<Option<Label>>> = vec![vec![None; rank]; count];
    for (n, t) in it {
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(n, format!("bad number `{}`", s)));
        match t[0] {
            "node" if t.len() == 4 => {
                let id = num(t[1])?;
                if id >= count {
                    return Err(err(n, "node id out of range"));
                }
                let word = Word::parse(t[3]).map_err(|e| err(n, e.to_string()))?;
                let tw = group.from_word(&word).map_err(|e| err(n, e.to_string()))?;
                if heads[id].replace((num(t[2])?, tw)).is_some() {
                    return Err(err(n, "duplicate node"));
                }
            }
            "label" if t.len() == 5 || t.len() == 6 => {
                let id = num(t[1])?;
                let alpha = num(t[2])?;
                if id >= count || alpha == 0 || alpha > rank {
                    return Err(err(n, "label index out of range"));
                }
                let kind = RootTypeLabel::from_code(t[3]).ok_or_else(|| err(n, format!("unknown root type `{}`", t[3])))?;
                let cross = t[4].strip_prefix("cross=").ok_or_else(|| err(n, "expected cross=<id>"))?;
                let cayley = match t.get(5) {
                    Some(c) => Some(num(c.strip_prefix("cayley=").ok_or_else(|| err(n, "expected cayley=<id>"))?)?),
                    None => None,
                };
                let slot = &mut labels[id][alpha - 1];
                if slot.replace(Label { kind, cross: num(cross)?, cayley }).is_some() {
                    return Err(err(n, "duplicate label"));
                }
            }
            _ => return Err(err(n, format!("unrecognised line `{}`", t.join(" ")))),
        }
    }
    let mut nodes = Vec::with_capacity(count);
    for (v, (head, ls)) in heads.into_iter().zip(labels).enumerate() {
        let (length, tw) = head.ok_or_else(|| err(0, format!("node {} is not declared", v)))?;
        let labels = ls
            .into_iter()
            .enumerate()
            .map(|(a, l)| l.ok_or_else(|| err(0, format!("node {} has no label for root {}", v, a + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        nodes.push(KgbNode { length, tw, labels });
    }
    KgbGraph::new(datum, nodes)
}
