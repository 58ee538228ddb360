//! Text edge lists, JSON graphs and DOT export.
//!
//! Edge-list format: a header line `n <count>`, then one `u v` per line for
//! the arc `u → v`. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tournament::{OrientedGraph, Tournament};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Node count and arcs, without any graph constraints checked.
pub fn parse_arcs(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut n = None;
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(parse_err(line_no, "expected header `n <count>`"));
                }
                n = Some(
                    fields[1]
                        .parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("bad node count: {e}")))?,
                );
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected `u v`"));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("bad node index `{s}`: {e}")))
                };
                arcs.push((num(fields[0])?, num(fields[1])?));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing header `n <count>`"))?;
    Ok((n, arcs))
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let (n, arcs) = parse_arcs(text)?;
    Tournament::build(n, &arcs)
}

pub fn parse_oriented(text: &str) -> Result<OrientedGraph> {
    let (n, arcs) = parse_arcs(text)?;
    OrientedGraph::build(n, &arcs)
}

fn write_arcs(n: usize, arcs: &[(usize, usize)]) -> String {
    let mut out = format!("n {n}\n");
    for (u, v) in arcs {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_tournament(t: &Tournament) -> String {
    write_arcs(t.n(), &t.arcs())
}

pub fn write_oriented(g: &OrientedGraph) -> String {
    write_arcs(g.n(), &g.arcs())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl From<&Tournament> for GraphJson {
    fn from(t: &Tournament) -> Self {
        GraphJson {
            n: t.n(),
            arcs: t.arcs(),
        }
    }
}

impl From<&OrientedGraph> for GraphJson {
    fn from(g: &OrientedGraph) -> Self {
        GraphJson {
            n: g.n(),
            arcs: g.arcs(),
        }
    }
}

pub fn serialize_tournament<S: Serializer>(t: &Tournament, s: S) -> Result<S::Ok, S::Error> {
    GraphJson::from(t).serialize(s)
}

fn base_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// Labels after `steps` steps from `n0` base nodes. Base nodes are `a, b, …`;
/// a clone made at step `t` of a node born at step `g` gets its parent's
/// label with `t - g` primes, parenthesised when the parent is itself a clone.
pub fn clone_labels(n0: usize, steps: usize) -> Vec<String> {
    let mut labels: Vec<String> = (0..n0).map(base_label).collect();
    let mut born = vec![0usize; n0];
    for t in 1..=steps {
        let n = labels.len();
        for x in 0..n {
            let primes = "'".repeat(t - born[x]);
            let label = if born[x] == 0 {
                format!("{}{primes}", labels[x])
            } else {
                format!("({}){primes}", labels[x])
            };
            labels.push(label);
            born.push(t);
        }
    }
    labels
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(n: usize, arcs: &[(usize, usize)], labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..n {
        let label = labels
            .and_then(|l| l.get(v).cloned())
            .unwrap_or_else(|| v.to_string());
        let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(&label));
    }
    for (u, v) in arcs {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn parse_with_comments() {
        let t = parse_tournament("# a 3-cycle\n\nn 3\n0 1\n1 2 # closing soon\n2 0\n").unwrap();
        assert_eq!(t, fixtures::d3());
        assert!(matches!(
            parse_tournament("n 3\n0 1\n1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_tournament("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tournament(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tournament("n 2\n0 1\n1 0\n"),
            Err(Error::AntiparallelArc(1, 0))
        ));
    }

    #[test]
    fn labels_follow_generations() {
        let l = clone_labels(2, 2);
        assert_eq!(l, ["a", "b", "a'", "b'", "a''", "b''", "(a')'", "(b')'"]);
    }

    #[test]
    fn dot_shape() {
        let d = to_dot(2, &[(0, 1)], Some(&clone_labels(2, 0)));
        assert!(d.contains("0 -> 1;"));
        assert!(d.contains("label=\"a\""));
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..40, seed in any::<u64>()) {
            let t = Tournament::from_fn(n, |i, j| {
                let h = (i as u64 * 31 + j as u64).wrapping_mul(seed | 1);
                (h >> 17) & 1 == 1
            });
            let back = parse_tournament(&write_tournament(&t)).unwrap();
            prop_assert_eq!(back.matrix(), t.matrix());
        }
    }
}
