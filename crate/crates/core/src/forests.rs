//! Rooted spanning forests, normality and perfection, chordal and split
//! recognition.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Forest on `0..n` given by parent pointers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedForest {
    parent: Vec<Option<usize>>,
    #[serde(skip)]
    depth: Vec<usize>,
}

impl RootedForest {
    /// Validates that the parent pointers are acyclic.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<RootedForest> {
        let n = parent.len();
        let mut depth = vec![usize::MAX; n];
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            while depth[cur] == usize::MAX {
                chain.push(cur);
                if chain.len() > n {
                    return Err(Error::input("parent pointers contain a cycle"));
                }
                match parent[cur] {
                    None => {
                        depth[cur] = 0;
                        chain.pop();
                        break;
                    }
                    Some(p) if p >= n => return Err(Error::input(format!("parent {p} out of range"))),
                    Some(p) => cur = p,
                }
            }
            while let Some(c) = chain.pop() {
                depth[c] = depth[parent[c].unwrap()] + 1;
            }
        }
        Ok(RootedForest { parent, depth })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Number of vertices on a longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depth.iter().map(|d| d + 1).max().unwrap_or(0)
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&c| self.parent[c] == Some(v)).collect()
    }

    /// `u ⪯ v`: `u` lies on the path from `v` to its root.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        let mut cur = v;
        loop {
            if cur == u {
                return true;
            }
            if self.depth[cur] <= self.depth[u] {
                return false;
            }
            match self.parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.is_ancestor(u, v) || self.is_ancestor(v, u)
    }

    /// Strict ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }

    /// `v` and all its descendants.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.is_ancestor(v, u)).collect()
    }

    /// Roots in ascending order, then children in ascending order, depth first.
    pub fn preorder(&self) -> Vec<usize> {
        let mut kids = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                kids[p].push(v);
            }
        }
        let mut out = Vec::with_capacity(self.n());
        let mut stack: Vec<usize> = self.roots().into_iter().rev().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(kids[v].iter().rev());
        }
        out
    }

    fn check_spans(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::precondition(format!(
                "forest has {} vertices but the graph has {}",
                self.n(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Depth-first forest: the least unvisited vertex starts each tree and
/// neighbours are tried in ascending order.
pub fn normal_spanning_forest(g: &Graph) -> RootedForest {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut seen = FixedBitSet::with_capacity(n);
    for root in 0..n {
        if seen.contains(root) {
            continue;
        }
        seen.insert(root);
        let mut stack = vec![(root, 0usize)];
        while let Some((v, from)) = stack.last_mut() {
            let v = *v;
            match g.adjacency(v).ones().find(|&w| w >= *from && !seen.contains(w)) {
                Some(w) => {
                    *from = w + 1;
                    seen.insert(w);
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    RootedForest::from_parents(parent).expect("dfs parents are acyclic")
}

/// Every edge joins comparable vertices.
pub fn verify_normal(g: &Graph, f: &RootedForest) -> Result<bool> {
    f.check_spans(g)?;
    Ok(g.edges().into_iter().all(|(u, v)| f.comparable(u, v)))
}

/// Strict predecessors of a vertex and the subset reached by edges from its
/// subtree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BSetReport {
    pub vertex: usize,
    pub pred_set: Vec<usize>,
    pub b_set: Vec<usize>,
}

pub fn b_set(g: &Graph, f: &RootedForest, x: usize) -> Result<BSetReport> {
    f.check_spans(g)?;
    if x >= g.n() {
        return Err(Error::input(format!("vertex {x} out of range")));
    }
    let mut pred_set = f.ancestors(x);
    pred_set.sort_unstable();
    let mut below = FixedBitSet::with_capacity(g.n());
    for u in f.subtree(x) {
        below.union_with(g.adjacency(u));
    }
    let b_set = pred_set.iter().copied().filter(|&v| below.contains(v)).collect();
    Ok(BSetReport { vertex: x, pred_set, b_set })
}

/// Maximum cardinality search; ties go to the smallest id.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).unwrap();
        done[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    order
}

fn earlier_neighbours_are_cliques(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let earlier: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] < pos[v]).collect();
        is_clique(g, &earlier)
    })
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

pub fn is_chordal(g: &Graph) -> bool {
    earlier_neighbours_are_cliques(g, &mcs_order(g))
}

/// Parent of each vertex is its latest neighbour earlier in `order`.
fn forest_from_order(g: &Graph, order: &[usize]) -> RootedForest {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let parent = (0..g.n())
        .map(|v| g.neighbors(v).filter(|&u| pos[u] < pos[v]).max_by_key(|&u| pos[u]))
        .collect();
    RootedForest::from_parents(parent).expect("parents precede children")
}

/// A normal spanning forest in which the lower neighbours of every vertex
/// form a clique; `None` when the graph is not chordal.
pub fn perfect_spanning_forest(g: &Graph) -> Option<RootedForest> {
    if !is_chordal(g) {
        return None;
    }
    let f = forest_from_order(g, &mcs_order(g));
    if verify_perfect(g, &f).unwrap_or(false) {
        return Some(f);
    }
    if g.n() <= 7 {
        let mut order: Vec<usize> = (0..g.n()).collect();
        loop {
            let f = forest_from_order(g, &order);
            if verify_perfect(g, &f).unwrap_or(false) {
                return Some(f);
            }
            if !crate::graph::next_permutation(&mut order) {
                break;
            }
        }
    }
    None
}

pub fn verify_perfect(g: &Graph, f: &RootedForest) -> Result<bool> {
    if !verify_normal(g, f)? {
        return Ok(false);
    }
    Ok((0..g.n()).all(|v| {
        let lower: Vec<usize> = g.neighbors(v).filter(|&u| f.is_ancestor(u, v) && u != v).collect();
        is_clique(g, &lower)
    }))
}

/// For all `u ≺ v ⪯ w` in `f`: an edge `uw` forces the edge `uv`.
pub fn check_ancestor_edges(g: &Graph, f: &RootedForest) -> Result<bool> {
    f.check_spans(g)?;
    for w in 0..g.n() {
        let chain = f.ancestors(w);
        for (i, &u) in chain.iter().enumerate() {
            if !g.has_edge(u, w) {
                continue;
            }
            // v ranges over w and the ancestors of w strictly below u.
            if !std::iter::once(w).chain(chain[..i].iter().copied()).all(|v| g.has_edge(u, v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Clique side `a` and independent side `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SplitPartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in self.a.iter().chain(&self.b) {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        seen.iter().all(|&s| s)
            && is_clique(g, &self.a)
            && self.b.iter().enumerate().all(|(i, &x)| self.b[i + 1..].iter().all(|&y| !g.has_edge(x, y)))
    }
}

/// Degree-sequence recognition. When the independent side is nonempty and
/// some clique vertex has no neighbour in it, that vertex is moved across.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let d: Vec<usize> = by_deg.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=n).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(0);
    let top: usize = d[..m].iter().sum();
    let bottom: usize = d[m..].iter().sum();
    if top != m * m.saturating_sub(1) + bottom {
        return None;
    }
    let mut a: Vec<usize> = by_deg[..m].to_vec();
    let mut b: Vec<usize> = by_deg[m..].to_vec();
    if !b.is_empty() {
        if let Some(i) = a.iter().position(|&x| b.iter().all(|&y| !g.has_edge(x, y))) {
            b.push(a.remove(i));
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    let p = SplitPartition { a, b };
    p.is_valid(g).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate, FamilySpec};

    fn gen(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn dfs_forests() {
        let p3 = gen(FamilySpec::Path(3));
        let f = normal_spanning_forest(&p3);
        assert_eq!(f.parents(), &[None, Some(0), Some(1)]);
        let k3 = gen(FamilySpec::Clique(3));
        let f = normal_spanning_forest(&k3);
        assert_eq!(f.parents(), &[None, Some(0), Some(1)]);
        assert!(verify_normal(&k3, &f).unwrap());
        let two = disjoint_union(&k3, &k3);
        assert_eq!(normal_spanning_forest(&two).roots(), vec![0, 3]);
    }

    #[test]
    fn bfs_star_in_triangle_is_not_normal() {
        let k3 = gen(FamilySpec::Clique(3));
        let star = RootedForest::from_parents(vec![None, Some(0), Some(0)]).unwrap();
        assert!(!verify_normal(&k3, &star).unwrap());
        let k13 = gen(FamilySpec::CompleteBipartite(1, 3));
        let star = RootedForest::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert!(verify_normal(&k13, &star).unwrap());
        assert!(verify_normal(&k13, &RootedForest::from_parents(vec![None]).unwrap()).is_err());
    }

    #[test]
    fn cyclic_parents_rejected() {
        assert!(RootedForest::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(RootedForest::from_parents(vec![Some(0)]).is_err());
    }

    #[test]
    fn b_sets() {
        let k3 = gen(FamilySpec::Clique(3));
        let f = normal_spanning_forest(&k3);
        let r = b_set(&k3, &f, 2).unwrap();
        assert_eq!((r.pred_set, r.b_set), (vec![0, 1], vec![0, 1]));
        let r = b_set(&k3, &f, 0).unwrap();
        assert!(r.pred_set.is_empty() && r.b_set.is_empty());
        let p3 = gen(FamilySpec::Path(3));
        let r = b_set(&p3, &normal_spanning_forest(&p3), 2).unwrap();
        assert_eq!(r.b_set, vec![1]);
        // The subtree of 1 reaches the root only through 1 itself.
        let r = b_set(&p3, &normal_spanning_forest(&p3), 1).unwrap();
        assert_eq!(r.b_set, vec![0]);
    }

    #[test]
    fn chordality() {
        assert!(!is_chordal(&gen(FamilySpec::Cycle(4))));
        assert!(is_chordal(&gen(FamilySpec::TreeClosure { height: 3, branching: vec![2, 2, 2] })));
        assert!(is_chordal(&gen(FamilySpec::Path(6))));
        assert!(perfect_spanning_forest(&gen(FamilySpec::Cycle(4))).is_none());
        let k3 = gen(FamilySpec::Clique(3));
        let f = perfect_spanning_forest(&k3).unwrap();
        assert_eq!(f.height(), 3);
        assert!(verify_perfect(&k3, &f).unwrap());
        let c4 = gen(FamilySpec::Cycle(4));
        assert!(!verify_perfect(&c4, &normal_spanning_forest(&c4)).unwrap());
        let one = Graph::new(1);
        assert!(verify_perfect(&one, &normal_spanning_forest(&one)).unwrap());
    }

    #[test]
    fn split_sides() {
        let k = gen(FamilySpec::Clique(4));
        assert_eq!(split_partition(&k), Some(SplitPartition { a: vec![0, 1, 2, 3], b: vec![] }));
        assert_eq!(split_partition(&gen(FamilySpec::Cycle(4))), None);
        // K_3 ⊗ D_4: clique on 0..3, each joined to 3..7.
        let mut g = gen(FamilySpec::Clique(3));
        let mut h = Graph::new(7);
        for (u, v) in g.edges() {
            h.add_edge(u, v);
        }
        for a in 0..3 {
            for b in 3..7 {
                h.add_edge(a, b);
            }
        }
        g = h;
        assert_eq!(split_partition(&g), Some(SplitPartition { a: vec![0, 1, 2], b: vec![3, 4, 5, 6] }));
        assert_eq!(split_partition(&Graph::new(0)), Some(SplitPartition { a: Vec::new(), b: Vec::new() }));
    }
}
