//! Line-oriented graph format:
//!
//! ```text
//! graph 4
//! edge 0 1
//! edge 1 2      # trailing comments are allowed
//! port 0 1
//! ```
//!
//! Port lines are optional; when present every vertex needs one.

use std::fmt::Write as _;

use super::{Graph, PortedGraph};
use crate::error::{Error, Result};

/// Parsed graph file: the graph plus port labels if any were given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub ports: Option<Vec<usize>>,
}

impl GraphFile {
    /// Ported view; the label count is one more than the largest label.
    pub fn ported(&self) -> Option<PortedGraph> {
        let ports = self.ports.clone()?;
        let k = ports.iter().max().map_or(1, |m| m + 1);
        PortedGraph::new(self.graph.clone(), k, ports).ok()
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn number(tok: &str, line: usize, col: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut graph: Option<Graph> = None;
    let mut ports: Vec<Option<usize>> = Vec::new();
    let mut any_port = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut offset = 0;
        for tok in body.split_whitespace() {
            let col = body[offset..].find(tok).unwrap() + offset + 1;
            offset = col - 1 + tok.len();
            toks.push((tok, col));
        }
        let Some(&(head, head_col)) = toks.first() else {
            continue;
        };
        match head {
            "graph" => {
                if graph.is_some() {
                    return Err(parse_err(line_no, head_col, "second `graph` header"));
                }
                if toks.len() != 2 {
                    return Err(parse_err(line_no, head_col, "expected `graph <n>`"));
                }
                let n = number(toks[1].0, line_no, toks[1].1)?;
                graph = Some(Graph::new(n));
                ports = vec![None; n];
            }
            "edge" | "port" => {
                let Some(g) = graph.as_mut() else {
                    return Err(parse_err(line_no, head_col, "missing `graph <n>` header"));
                };
                if toks.len() != 3 {
                    return Err(parse_err(line_no, head_col, format!("expected `{head} <a> <b>`")));
                }
                let a = number(toks[1].0, line_no, toks[1].1)?;
                let b = number(toks[2].0, line_no, toks[2].1)?;
                let n = g.n();
                if a >= n {
                    return Err(parse_err(line_no, toks[1].1, format!("vertex {a} out of range for n={n}")));
                }
                if head == "edge" {
                    if b >= n {
                        return Err(parse_err(line_no, toks[2].1, format!("vertex {b} out of range for n={n}")));
                    }
                    if a >= b {
                        return Err(parse_err(line_no, toks[1].1, "edge endpoints must satisfy u < v"));
                    }
                    if !g.add_edge(a, b) {
                        return Err(parse_err(line_no, head_col, format!("duplicate edge {a} {b}")));
                    }
                } else {
                    if ports[a].is_some() {
                        return Err(parse_err(line_no, head_col, format!("second port for vertex {a}")));
                    }
                    ports[a] = Some(b);
                    any_port = true;
                }
            }
            other => return Err(parse_err(line_no, head_col, format!("unknown directive `{other}`"))),
        }
    }
    let graph = graph.ok_or_else(|| parse_err(1, 1, "missing `graph <n>` header"))?;
    let ports = if any_port {
        let all: Option<Vec<usize>> = ports.iter().copied().collect();
        Some(all.ok_or_else(|| Error::input("port labels given for some vertices but not all"))?)
    } else {
        None
    };
    Ok(GraphFile { graph, ports })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

pub fn write_ported_graph(g: &PortedGraph) -> String {
    let mut out = write_graph(&g.graph);
    for (v, p) in g.ports.iter().enumerate() {
        let _ = writeln!(out, "port {v} {p}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(5, [(0, 4), (1, 2), (2, 3)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "graph 5\nedge 0 4\nedge 1 2\nedge 2 3\n");
        assert_eq!(parse_graph(&text).unwrap().graph, g);
    }

    #[test]
    fn comments_and_ports() {
        let f = parse_graph("# header\ngraph 2\nedge 0 1 # the only edge\nport 0 0\nport 1 2\n").unwrap();
        assert_eq!(f.ports, Some(vec![0, 2]));
        assert_eq!(f.ported().unwrap().k, 3);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "edge 0 1",
            "graph 2\nedge 0 1\nedge 0 1",
            "graph 2\nedge 0 2",
            "graph 2\nedge 1 0",
            "graph 2\nedge 0 x",
            "graph 2\nvertex 0",
            "graph 2\nport 0 1",
            "graph 2\ngraph 3",
        ] {
            assert!(parse_graph(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn error_positions() {
        match parse_graph("graph 3\nedge 0 7") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
