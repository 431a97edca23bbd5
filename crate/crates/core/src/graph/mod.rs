//! Simple undirected graphs, ported graphs and the basic operations on them.

mod coterm;
mod generate;
mod iso;
mod text;

pub use coterm::{cograph_from_coterm, parse_coterm, CoTerm};
pub use generate::{generate, hp_vertex, next_permutation, tree_closure_words, FamilySpec};
pub use iso::{are_isomorphic, are_isomorphic_colored};
pub use text::{parse_graph, write_graph, write_ported_graph, GraphFile};

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Simple undirected graph on the vertices `0..n`.
///
/// Adjacency is kept as one bitset per vertex; edges are reported as
/// `(min, max)` pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], m: 0 }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Inserts the edge `{u, v}`; returns false if it was already present.
    ///
    /// Panics on a loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        if self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() || !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        self.m -= 1;
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].contains(v)
    }

    pub fn adjacency(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// All edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adjacency rows as 64-bit masks, for the small-graph searches.
    pub(crate) fn masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|row| row.ones().fold(0u64, |acc, v| acc | (1u64 << v)))
                .collect(),
        )
    }

    /// Number of connected components of the graph with `removed` deleted.
    pub fn components_without(&self, removed: &FixedBitSet) -> usize {
        let n = self.n();
        let mut seen = removed.clone();
        seen.grow(n);
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            count += 1;
            seen.insert(s);
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.adj[u].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Symmetric relation on the label set `[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    k: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    /// Symmetric closure of `pairs`; every label must lie in `[k]`.
    pub fn symmetric<I>(k: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a >= k || b >= k {
                return Err(Error::input(format!("relation pair ({a},{b}) outside [{k}]")));
            }
            set.insert((a, b));
            set.insert((b, a));
        }
        Ok(Relation { k, pairs: set })
    }

    pub fn empty(k: usize) -> Self {
        Relation { k, pairs: BTreeSet::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// Pairs `(a, b)` with `a <= b`.
    pub fn canonical_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().filter(|&(a, b)| a <= b).collect()
    }

    /// The relation `[k]^2 \ R`.
    pub fn complement(&self) -> Relation {
        let mut pairs = BTreeSet::new();
        for a in 0..self.k {
            for b in 0..self.k {
                if !self.contains(a, b) {
                    pairs.insert((a, b));
                }
            }
        }
        Relation { k: self.k, pairs }
    }
}

/// Graph whose vertices carry port labels in `[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortedGraph {
    pub graph: Graph,
    pub k: usize,
    pub ports: Vec<usize>,
}

impl PortedGraph {
    pub fn new(graph: Graph, k: usize, ports: Vec<usize>) -> Result<Self> {
        if ports.len() != graph.n() {
            return Err(Error::input(format!(
                "{} port labels for {} vertices",
                ports.len(),
                graph.n()
            )));
        }
        if let Some((v, &p)) = ports.iter().enumerate().find(|(_, &p)| p >= k) {
            return Err(Error::input(format!("port {p} of vertex {v} outside [{k}]")));
        }
        Ok(PortedGraph { graph, k, ports })
    }

    /// Single vertex carrying label `port`.
    pub fn singleton(k: usize, port: usize) -> Result<Self> {
        PortedGraph::new(Graph::new(1), k, vec![port])
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Applies `rho` to every port; `rho` must map `[k]` into `[k_new]`.
    pub fn relabel(&self, rho: &[usize], k_new: usize) -> Result<PortedGraph> {
        let ports = self
            .ports
            .iter()
            .map(|&p| {
                rho.get(p)
                    .copied()
                    .ok_or_else(|| Error::input(format!("relabelling undefined on port {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PortedGraph::new(self.graph.clone(), k_new, ports)
    }
}

/// `g ⊕ h`: the vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut out = Graph::new(off + h.n());
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + off, v + off);
    }
    out
}

/// `g ⊗_R h`: disjoint union plus every cross pair whose ports are related.
pub fn join_with_relation(g: &PortedGraph, h: &PortedGraph, r: &Relation) -> Result<PortedGraph> {
    if g.k != r.k() || h.k != r.k() {
        return Err(Error::input(format!(
            "label counts differ: {} and {} against relation over [{}]",
            g.k,
            h.k,
            r.k()
        )));
    }
    let mut graph = disjoint_union(&g.graph, &h.graph);
    let off = g.n();
    for x in 0..g.n() {
        for y in 0..h.n() {
            if r.contains(g.ports[x], h.ports[y]) {
                graph.add_edge(x, y + off);
            }
        }
    }
    let mut ports = g.ports.clone();
    ports.extend_from_slice(&h.ports);
    PortedGraph::new(graph, r.k(), ports)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.add_edge(u, v);
            }
        }
    }
    out
}

/// Subgraph induced by `vertices`, numbered in the order given.
///
/// The returned map sends each new id to its original vertex.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::input(format!("vertex {v} out of range for n={}", g.n())));
        }
        if pos[v] != usize::MAX {
            return Err(Error::input(format!("vertex {v} listed twice")));
        }
        pos[v] = i;
    }
    let mut out = Graph::new(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        for w in g.neighbors(v) {
            let j = pos[w];
            if j != usize::MAX && i < j {
                out.add_edge(i, j);
            }
        }
    }
    Ok((out, vertices.to_vec()))
}

/// `g - removed`, with the surviving vertices renumbered in increasing order.
pub fn remove_vertices(g: &Graph, removed: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut gone = vec![false; g.n()];
    for &v in removed {
        if v >= g.n() {
            return Err(Error::input(format!("vertex {v} out of range for n={}", g.n())));
        }
        gone[v] = true;
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !gone[v]).collect();
    induced_subgraph(g, &keep)
}

/// Connected components, each sorted, ordered by their least vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}
