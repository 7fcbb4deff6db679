//! Line-oriented text formats for systems and observation sets.
//!
//! System files start with `syds <n> <undirected|directed>`, followed by
//! `e <u> <v>` edge lines and one `t <v> <tau>` line per vertex. Observation
//! files start with `obs <n> <q>`, followed by `q` lines
//! `<predecessor> <successor>`. The leading keyword doubles as the format tag.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::observations::{Observation, TrainingSet};
use crate::system::ThresholdSystem;

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

fn expect_end<'a>(line: usize, mut tokens: impl Iterator<Item = &'a str>) -> Result<()> {
    match tokens.next() {
        Some(t) => Err(Error::parse(line, format!("unexpected token '{t}'"))),
        None => Ok(()),
    }
}

pub fn system_to_text(system: &ThresholdSystem) -> String {
    let g = system.graph();
    let mut s = format!("syds {} {}\n", g.n(), g.kind());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    for (v, t) in system.thresholds().iter().enumerate() {
        let _ = writeln!(s, "t {v} {t}");
    }
    s
}

/// Reads only the graph of a system file; `t` lines may be absent.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, kind, edges, _) = parse_system_parts(text)?;
    Graph::new(n, kind, edges)
}

pub fn parse_system(text: &str) -> Result<ThresholdSystem> {
    let (n, kind, edges, taus) = parse_system_parts(text)?;
    let taus: Vec<i64> = taus
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| Error::invalid(format!("missing threshold for vertex {v}"))))
        .collect::<Result<_>>()?;
    ThresholdSystem::new(Graph::new_unchecked(n, kind, edges), taus)
}

type SystemParts = (usize, GraphKind, Vec<(usize, usize)>, Vec<Option<i64>>);

fn parse_system_parts(text: &str) -> Result<SystemParts> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty system file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("syds") {
        return Err(Error::parse(hl, "expected header 'syds <n> <kind>'"));
    }
    let n: usize = parse_num(hl, tokens.next(), "vertex count")?;
    let kind: GraphKind = tokens
        .next()
        .ok_or_else(|| Error::parse(hl, "missing graph kind"))?
        .parse()
        .map_err(|e: Error| Error::parse(hl, e.to_string()))?;
    expect_end(hl, tokens)?;

    let mut edges = Vec::new();
    let mut taus: Vec<Option<i64>> = vec![None; n];
    for (ln, line) in lines {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("e") => {
                let u: usize = parse_num(ln, tokens.next(), "endpoint")?;
                let v: usize = parse_num(ln, tokens.next(), "endpoint")?;
                expect_end(ln, tokens)?;
                edges.push((u, v));
            }
            Some("t") => {
                let v: usize = parse_num(ln, tokens.next(), "vertex")?;
                let t: i64 = parse_num(ln, tokens.next(), "threshold")?;
                expect_end(ln, tokens)?;
                let slot = taus
                    .get_mut(v)
                    .ok_or_else(|| Error::parse(ln, format!("vertex {v} out of range for n = {n}")))?;
                if slot.replace(t).is_some() {
                    return Err(Error::parse(ln, format!("duplicate threshold for vertex {v}")));
                }
            }
            Some(other) => return Err(Error::parse(ln, format!("unknown record '{other}'"))),
            None => unreachable!("content lines are non-empty"),
        }
    }
    Ok((n, kind, edges, taus))
}

pub fn observations_to_text(obs: &TrainingSet) -> String {
    let mut s = format!("obs {} {}\n", obs.n(), obs.len());
    for p in obs {
        let _ = writeln!(s, "{} {}", p.predecessor, p.successor);
    }
    s
}

pub fn parse_observations(text: &str) -> Result<TrainingSet> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty observation file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("obs") {
        return Err(Error::parse(hl, "expected header 'obs <n> <q>'"));
    }
    let n: usize = parse_num(hl, tokens.next(), "vertex count")?;
    let q: usize = parse_num(hl, tokens.next(), "pair count")?;
    expect_end(hl, tokens)?;
    let mut pairs = Vec::with_capacity(q);
    for (ln, line) in lines {
        let mut tokens = line.split_whitespace();
        let pred = tokens.next().unwrap();
        let succ = tokens
            .next()
            .ok_or_else(|| Error::parse(ln, "expected '<predecessor> <successor>'"))?;
        expect_end(ln, tokens)?;
        let pred = Configuration::parse_with_len(pred, n).map_err(|e| Error::parse(ln, e.to_string()))?;
        let succ = Configuration::parse_with_len(succ, n).map_err(|e| Error::parse(ln, e.to_string()))?;
        pairs.push(Observation::new(pred, succ));
    }
    if pairs.len() != q {
        return Err(Error::parse(
            hl,
            format!("header declares {q} pairs, found {}", pairs.len()),
        ));
    }
    TrainingSet::new(n, pairs)
}
