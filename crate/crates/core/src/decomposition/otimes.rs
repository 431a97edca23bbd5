use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CoTerm, Graph};

/// One node of a decomposition tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionNode {
    pub id: usize,
    #[serde(default)]
    pub children: Vec<usize>,
    /// Port label of every vertex of the node.
    pub labels: BTreeMap<usize, usize>,
    /// Relation of the operation at the node; read symmetrically.
    #[serde(rename = "R", default)]
    pub relation: Vec<(usize, usize)>,
    /// Relabelling applied after the operation; labels not listed are fixed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<BTreeMap<usize, usize>>,
}

/// A rooted tree of labelled vertex sets over `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OtimesDecomposition {
    pub k: usize,
    pub root: usize,
    pub nodes: Vec<DecompositionNode>,
}

struct Shape {
    index: BTreeMap<usize, usize>,
    depth: Vec<usize>,
}

impl OtimesDecomposition {
    fn shape(&self) -> Result<Shape> {
        let mut index = BTreeMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if index.insert(node.id, i).is_some() {
                return Err(Error::input(format!("duplicate node id {}", node.id)));
            }
        }
        let Some(&root) = index.get(&self.root) else {
            return Err(Error::input(format!("root {} is not a node", self.root)));
        };
        let mut depth = vec![usize::MAX; self.nodes.len()];
        depth[root] = 0;
        let mut stack = vec![root];
        let mut seen = 1;
        while let Some(i) = stack.pop() {
            for c in &self.nodes[i].children {
                let Some(&j) = index.get(c) else {
                    return Err(Error::input(format!("child {c} of node {} does not exist", self.nodes[i].id)));
                };
                if depth[j] != usize::MAX {
                    return Err(Error::input(format!("node {c} has more than one parent or lies on a cycle")));
                }
                depth[j] = depth[i] + 1;
                seen += 1;
                stack.push(j);
            }
        }
        if seen != self.nodes.len() {
            return Err(Error::input("some nodes are not reachable from the root"));
        }
        Ok(Shape { index, depth })
    }

    /// Number of edges on a longest root-to-leaf path.
    pub fn height(&self) -> Result<usize> {
        Ok(self.shape()?.depth.into_iter().max().unwrap_or(0))
    }

    /// Largest number of children of a node.
    pub fn max_children(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// Number of children of every node, root first, by id otherwise.
    pub fn child_counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.nodes.iter().map(|n| (n.id, n.children.len())).collect();
        out.sort_by_key(|&(id, _)| (id != self.root, id));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<OtimesDecomposition> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `Ok(None)` when `d` is a valid decomposition of `g`, otherwise the first
/// violated condition. Structural problems with the tree are errors.
pub fn otimes_violation(g: &Graph, d: &OtimesDecomposition, strong: bool) -> Result<Option<String>> {
    let shape = d.shape()?;
    let k = d.k;
    for node in &d.nodes {
        if let Some((v, l)) = node.labels.iter().find(|(_, &l)| l >= k) {
            return Ok(Some(format!("node {}: vertex {v} has label {l} outside [{k}]", node.id)));
        }
        if let Some(p) = node.relation.iter().find(|&&(a, b)| a >= k || b >= k) {
            return Ok(Some(format!("node {}: relation pair {p:?} outside [{k}]", node.id)));
        }
        if let Some(rho) = &node.rho {
            if let Some(p) = rho.iter().find(|(&a, &b)| a >= k || b >= k) {
                return Ok(Some(format!("node {}: relabelling {p:?} outside [{k}]", node.id)));
            }
        }
    }
    let root = &d.nodes[shape.index[&d.root]];
    if !root.labels.keys().copied().eq(0..g.n()) {
        return Ok(Some("the root's vertex set is not the vertex set of the graph".into()));
    }
    for node in &d.nodes {
        if node.children.is_empty() {
            if node.labels.len() != 1 {
                return Ok(Some(format!("leaf {} has {} vertices", node.id, node.labels.len())));
            }
            continue;
        }
        let kids: Vec<&DecompositionNode> = node.children.iter().map(|c| &d.nodes[shape.index[c]]).collect();
        let mut owner = BTreeMap::new();
        for (i, kid) in kids.iter().enumerate() {
            for (&v, &l) in &kid.labels {
                if owner.insert(v, (i, l)).is_some() {
                    return Ok(Some(format!("vertex {v} lies in two children of node {}", node.id)));
                }
            }
        }
        if !owner.keys().eq(node.labels.keys()) {
            return Ok(Some(format!("children of node {} do not partition its vertices", node.id)));
        }
        let related = |a: usize, b: usize| node.relation.contains(&(a, b)) || node.relation.contains(&(b, a));
        let entries: Vec<(usize, usize, usize)> = owner.iter().map(|(&v, &(i, l))| (v, i, l)).collect();
        for (x, &(u, iu, lu)) in entries.iter().enumerate() {
            if u >= g.n() {
                return Ok(Some(format!("vertex {u} is not in the graph")));
            }
            for &(v, iv, lv) in &entries[x + 1..] {
                if iu != iv && v < g.n() && g.has_edge(u, v) != related(lu, lv) {
                    return Ok(Some(format!(
                        "node {}: pair {u}-{v} with labels ({lu},{lv}) disagrees with the relation",
                        node.id
                    )));
                }
            }
        }
        if strong {
            for &(v, _, l) in &entries {
                let image = node.rho.as_ref().and_then(|r| r.get(&l)).copied().unwrap_or(l);
                if node.labels[&v] != image {
                    return Ok(Some(format!(
                        "node {}: vertex {v} has label {} but the relabelled child label is {image}",
                        node.id, node.labels[&v]
                    )));
                }
            }
        }
    }
    Ok(None)
}

pub fn verify_otimes_decomposition(g: &Graph, d: &OtimesDecomposition, strong: bool) -> Result<bool> {
    Ok(otimes_violation(g, d, strong)?.is_none())
}

/// Width-1 decomposition read off a cotree: `+` nodes get the empty
/// relation and `*` nodes the full one. `leaves[i]` is the vertex at leaf `i`.
pub fn decomposition_from_cotree(term: &CoTerm, leaves: &[usize]) -> OtimesDecomposition {
    let mut nodes = Vec::new();
    let mut next_leaf = 0;
    fn walk(t: &CoTerm, leaves: &[usize], next_leaf: &mut usize, nodes: &mut Vec<DecompositionNode>) -> usize {
        let id = nodes.len();
        nodes.push(DecompositionNode {
            id,
            children: Vec::new(),
            labels: BTreeMap::new(),
            relation: Vec::new(),
            rho: None,
        });
        let labels = match t {
            CoTerm::Leaf => {
                let v = leaves[*next_leaf];
                *next_leaf += 1;
                BTreeMap::from([(v, 0)])
            }
            CoTerm::Plus(kids) | CoTerm::Times(kids) => {
                let mut labels = BTreeMap::new();
                let mut children = Vec::new();
                for kid in kids {
                    let c = walk(kid, leaves, next_leaf, nodes);
                    labels.extend(nodes[c].labels.iter().map(|(&v, &l)| (v, l)));
                    children.push(c);
                }
                nodes[id].children = children;
                if matches!(t, CoTerm::Times(_)) {
                    nodes[id].relation = vec![(0, 0)];
                }
                labels
            }
        };
        nodes[id].labels = labels;
        id
    }
    walk(term, leaves, &mut next_leaf, &mut nodes);
    OtimesDecomposition { k: 1, root: 0, nodes }
}

/// Strong decomposition of the same shape: the label of `x` at a node of
/// depth `m` packs the labels of `x` along the root path, root digit most
/// significant, in base `k`. Each relabelling drops the last digit.
pub fn strengthen_decomposition(g: &Graph, d: &OtimesDecomposition) -> Result<OtimesDecomposition> {
    if let Some(why) = otimes_violation(g, d, false)? {
        return Err(Error::precondition(format!("not a valid decomposition: {why}")));
    }
    let shape = d.shape()?;
    let k = d.k.max(1);
    let height = shape.depth.iter().copied().max().unwrap_or(0);
    let width = k
        .checked_pow(height as u32 + 1)
        .filter(|&w| w <= 1 << 10)
        .ok_or_else(|| Error::budget(format!("strengthened width {k}^{} is too large", height + 1)))?;
    let mut packed: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); d.nodes.len()];
    let root = shape.index[&d.root];
    packed[root] = d.nodes[root].labels.clone();
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        for c in &d.nodes[i].children {
            let j = shape.index[c];
            packed[j] = d.nodes[j].labels.iter().map(|(&v, &l)| (v, packed[i][&v] * k + l)).collect();
            stack.push(j);
        }
    }
    let nodes = d
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let (relation, rho) = if node.children.is_empty() {
                (Vec::new(), None)
            } else {
                let child_span = k.pow(shape.depth[i] as u32 + 2);
                let mut relation = Vec::new();
                for a in 0..child_span {
                    for b in a..child_span {
                        let (x, y) = (a % k, b % k);
                        if node.relation.contains(&(x, y)) || node.relation.contains(&(y, x)) {
                            relation.push((a, b));
                        }
                    }
                }
                let rho = (0..child_span).filter(|&a| a / k != a).map(|a| (a, a / k)).collect();
                (relation, Some(rho))
            };
            DecompositionNode { id: node.id, children: node.children.clone(), labels: packed[i].clone(), relation, rho }
        })
        .collect();
    Ok(OtimesDecomposition { k: width, root: d.root, nodes })
}

/// A random graph together with a weak decomposition of it of the given
/// height and width: tree shape, labels and relations are drawn first and
/// the graph is read off.
pub fn random_weak_decomposition<R: Rng>(
    rng: &mut R,
    height: usize,
    k: usize,
    max_children: usize,
) -> (Graph, OtimesDecomposition) {
    let k = k.max(1);
    let mut nodes: Vec<DecompositionNode> = Vec::new();
    let mut n = 0;
    fn grow<R: Rng>(
        rng: &mut R,
        depth: usize,
        height: usize,
        k: usize,
        max_children: usize,
        n: &mut usize,
        nodes: &mut Vec<DecompositionNode>,
    ) -> usize {
        let id = nodes.len();
        nodes.push(DecompositionNode { id, children: Vec::new(), labels: BTreeMap::new(), relation: Vec::new(), rho: None });
        let leaf = depth == height || (depth > 0 && rng.gen_bool(0.3));
        if leaf {
            nodes[id].labels.insert(*n, 0);
            *n += 1;
        } else {
            let count = rng.gen_range(1..=max_children.max(1));
            let kids: Vec<usize> = (0..count).map(|_| grow(rng, depth + 1, height, k, max_children, n, nodes)).collect();
            let mut relation = Vec::new();
            for a in 0..k {
                for b in a..k {
                    if rng.gen_bool(0.5) {
                        relation.push((a, b));
                    }
                }
            }
            let mut labels = BTreeMap::new();
            for &c in &kids {
                labels.extend(nodes[c].labels.keys().map(|&v| (v, 0)));
            }
            nodes[id].children = kids;
            nodes[id].relation = relation;
            nodes[id].labels = labels;
        }
        for l in nodes[id].labels.values_mut() {
            *l = rng.gen_range(0..k);
        }
        id
    }
    grow(rng, 0, height, k, max_children, &mut n, &mut nodes);
    let mut g = Graph::new(n);
    for node in &nodes {
        let kids: Vec<&DecompositionNode> = node.children.iter().map(|&c| &nodes[c]).collect();
        for (i, a) in kids.iter().enumerate() {
            for b in &kids[i + 1..] {
                for (&u, &lu) in &a.labels {
                    for (&v, &lv) in &b.labels {
                        if node.relation.contains(&(lu.min(lv), lu.max(lv))) {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
        }
    }
    (g, OtimesDecomposition { k, root: 0, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::cotree;
    use crate::graph::{generate, FamilySpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k2_decomposition(relation: Vec<(usize, usize)>) -> OtimesDecomposition {
        let leaf = |id, v| DecompositionNode {
            id,
            children: vec![],
            labels: BTreeMap::from([(v, 0)]),
            relation: vec![],
            rho: None,
        };
        OtimesDecomposition {
            k: 1,
            root: 0,
            nodes: vec![
                DecompositionNode {
                    id: 0,
                    children: vec![1, 2],
                    labels: BTreeMap::from([(0, 0), (1, 0)]),
                    relation,
                    rho: None,
                },
                leaf(1, 0),
                leaf(2, 1),
            ],
        }
    }

    #[test]
    fn hand_built_k2() {
        let g = generate(&FamilySpec::Clique(2)).unwrap();
        assert!(verify_otimes_decomposition(&g, &k2_decomposition(vec![(0, 0)]), false).unwrap());
        assert!(verify_otimes_decomposition(&g, &k2_decomposition(vec![(0, 0)]), true).unwrap());
        assert!(!verify_otimes_decomposition(&g, &k2_decomposition(vec![]), false).unwrap());
        let s = strengthen_decomposition(&g, &k2_decomposition(vec![(0, 0)])).unwrap();
        assert_eq!(s.k, 1);
        assert!(verify_otimes_decomposition(&g, &s, true).unwrap());
    }

    #[test]
    fn malformed_trees_are_errors() {
        let g = generate(&FamilySpec::Clique(2)).unwrap();
        let mut d = k2_decomposition(vec![(0, 0)]);
        d.nodes[1].children = vec![0];
        assert!(verify_otimes_decomposition(&g, &d, false).is_err());
        let mut d = k2_decomposition(vec![(0, 0)]);
        d.nodes[0].children = vec![1, 7];
        assert!(verify_otimes_decomposition(&g, &d, false).is_err());
    }

    #[test]
    fn cotree_translation_verifies() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let t = cotree(&g).unwrap();
        let d = decomposition_from_cotree(&t.term, &t.leaves);
        assert!(verify_otimes_decomposition(&g, &d, false).unwrap());
        assert_eq!(d.height().unwrap(), 2);
        assert_eq!(d.child_counts()[0], (0, 2));
    }

    #[test]
    fn k23_with_extra_labels_strengthens() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let t = cotree(&g).unwrap();
        let mut d = decomposition_from_cotree(&t.term, &t.leaves);
        d.k = 2;
        // Relabel the side of three vertices with 1 at the root's children.
        for node in d.nodes.iter_mut() {
            if node.labels.len() == 3 || (node.labels.len() == 1 && *node.labels.keys().next().unwrap() >= 2) {
                for l in node.labels.values_mut() {
                    *l = 1;
                }
            }
        }
        d.nodes[0].relation = vec![(0, 1)];
        assert!(verify_otimes_decomposition(&g, &d, false).unwrap());
        let s = strengthen_decomposition(&g, &d).unwrap();
        assert!(s.k <= 8);
        assert!(verify_otimes_decomposition(&g, &s, true).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = k2_decomposition(vec![(0, 0)]);
        let text = d.to_json();
        assert!(text.contains("\"R\""));
        assert_eq!(OtimesDecomposition::from_json(&text).unwrap(), d);
    }

    #[test]
    fn random_decompositions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (g, d) = random_weak_decomposition(&mut rng, 2, 2, 3);
            assert!(verify_otimes_decomposition(&g, &d, false).unwrap());
            let s = strengthen_decomposition(&g, &d).unwrap();
            assert!(verify_otimes_decomposition(&g, &s, true).unwrap());
        }
    }
}
