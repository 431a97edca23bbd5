//! The graph transformations Inc, IS and BP, and reports comparing the
//! separation and cut measures of a graph with those of its images.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::decomposition::cut;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::sep;

/// Incidence graph: the original vertices keep their ids, edge `i` of
/// `g.edges()` becomes vertex `n + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncGraph {
    pub graph: Graph,
    /// The vertices standing for original vertices, `0..n`.
    pub marker: Vec<usize>,
    /// `edge_of[i]` is the original edge behind vertex `n + i`.
    pub edge_of: Vec<(usize, usize)>,
}

pub fn inc_graph(g: &Graph) -> IncGraph {
    let n = g.n();
    let edge_of = g.edges();
    let mut graph = Graph::new(n + edge_of.len());
    for (i, &(u, v)) in edge_of.iter().enumerate() {
        graph.add_edge(u, n + i);
        graph.add_edge(v, n + i);
    }
    IncGraph { graph, marker: (0..n).collect(), edge_of }
}

/// Incidence graph plus a clique on the original vertices.
pub fn incidence_split_graph(g: &Graph) -> Graph {
    let mut h = inc_graph(g).graph;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            h.add_edge(u, v);
        }
    }
    h
}

/// Vertex `(x, i)` of the four-layer graph, `i < 4`.
pub fn bp_vertex(x: usize, i: usize) -> usize {
    4 * x + i
}

/// Each vertex becomes a path `(x,0) (x,1) (x,2) (x,3)`; each edge `xy`
/// adds `(x,0)(y,3)` and `(y,0)(x,3)`.
pub fn bp_graph(g: &Graph) -> Graph {
    let mut h = Graph::new(4 * g.n());
    for x in 0..g.n() {
        for i in 0..3 {
            h.add_edge(bp_vertex(x, i), bp_vertex(x, i + 1));
        }
    }
    for (x, y) in g.edges() {
        h.add_edge(bp_vertex(x, 0), bp_vertex(y, 3));
        h.add_edge(bp_vertex(y, 0), bp_vertex(x, 3));
    }
    h
}

/// Whether every edge of a four-layer graph joins layers of different parity.
pub fn bp_is_bipartite_by_layer(h: &Graph) -> bool {
    h.edges().into_iter().all(|(u, v)| (u % 4) % 2 != (v % 4) % 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transform {
    Inc,
    IS,
    BP,
}

impl Transform {
    pub fn apply(self, g: &Graph) -> Graph {
        match self {
            Transform::Inc => inc_graph(g).graph,
            Transform::IS => incidence_split_graph(g),
            Transform::BP => bp_graph(g),
        }
    }
}

impl std::str::FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "inc" => Ok(Transform::Inc),
            "is" => Ok(Transform::IS),
            "bp" => Ok(Transform::BP),
            _ => Err(Error::input(format!("unknown transform `{s}` (inc|is|bp)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub measure: String,
    pub transform: Option<Transform>,
    pub k: usize,
    pub value: usize,
}

/// `lhs ≤ rhs` with both sides recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub statement: String,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

impl InequalityVerdict {
    fn new(statement: String, lhs: usize, rhs: usize) -> Self {
        InequalityVerdict { statement, lhs, rhs, holds: lhs <= rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub graph: String,
    pub transform: Transform,
    pub k: usize,
    pub measured: Vec<Measured>,
    pub verdicts: Vec<InequalityVerdict>,
    /// Relations left out because a graph exceeded the exact-cut budget.
    pub skipped: Vec<String>,
}

impl ReductionReport {
    /// Re-evaluates every verdict from its recorded sides.
    pub fn recheck(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds == (v.lhs <= v.rhs))
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Instantiates the Sep sandwich between `G` and `Inc(G)` at `k`, and the
/// Cut relations between `Inc(G)` and `IS(G)` at label count 1 whenever the
/// transformed graphs fit the exact-cut budget.
pub fn reduction_invariant_report(g: &Graph, name: &str, k: usize, budget: &Budget) -> Result<ReductionReport> {
    if g.n() > 8 || k > 3 {
        return Err(Error::budget(format!("reduction reports need n ≤ 8 and k ≤ 3, got n = {}, k = {k}", g.n())));
    }
    let inc = inc_graph(g).graph;
    let sep_g = sep(g, k, budget)?.value;
    let sep_inc = sep(&inc, k, budget)?.value;
    let mut measured = vec![
        Measured { measure: "sep".into(), transform: None, k, value: sep_g },
        Measured { measure: "sep".into(), transform: Some(Transform::Inc), k, value: sep_inc },
    ];
    let mut verdicts = vec![
        InequalityVerdict::new(format!("Sep(G,{k}) ≤ Sep(Inc(G),{k})"), sep_g, sep_inc),
        InequalityVerdict::new(
            format!("Sep(Inc(G),{k}) ≤ Sep(G,{k}) + {k}({k}−1)/2"),
            sep_inc,
            sep_g + k * k.saturating_sub(1) / 2,
        ),
    ];
    let mut skipped = Vec::new();
    let is = incidence_split_graph(g);
    match (cut_at(&inc, 1, budget)?, cut_at(&inc, 2, budget)?, cut_at(&is, 1, budget)?, cut_at(&is, 2, budget)?) {
        (Some(i1), Some(i2), Some(s1), Some(s2)) => {
            for (t, kk, v) in [(Transform::Inc, 1, i1), (Transform::Inc, 2, i2), (Transform::IS, 1, s1), (Transform::IS, 2, s2)] {
                measured.push(Measured { measure: "cut".into(), transform: Some(t), k: kk, value: v });
            }
            verdicts.push(InequalityVerdict::new("Cut(IS(G),1) ≤ Cut(Inc(G),2)".into(), s1, i2));
            verdicts.push(InequalityVerdict::new("Cut(Inc(G),1) ≤ Cut(IS(G),2)".into(), i1, s2));
        }
        _ => skipped.push(format!(
            "Cut relations: Inc(G) has {} vertices, above the exact-cut limit of {}",
            inc.n(),
            budget.cut_max_n
        )),
    }
    Ok(ReductionReport { graph: name.to_string(), transform: Transform::Inc, k, measured, verdicts, skipped })
}

fn cut_at(g: &Graph, k: usize, budget: &Budget) -> Result<Option<usize>> {
    match cut(g, k, budget) {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}
