use serde_json::json;

use super::formulas::{and, neq, or, reach_le, Names};
use super::{finish, forest_lex, vertices, OrderCertificate, Scheme};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forests::RootedForest;
use crate::graph::{is_connected, Graph};
use crate::mso::{Element, Encoding, Formula};

/// Lexicographic order of a tree of degree at most `d`, defined over the
/// floor encoding from `d` child-index sets.
///
/// The root is vertex 0 and the children of each vertex, taken by
/// ascending id, get indices `0, 1, …`; `P<i>` holds the vertices of
/// index `i`.
pub fn order_tree_bounded_degree(t: &Graph, d: usize, budget: &Budget) -> Result<OrderCertificate> {
    let n = t.n();
    if n == 0 || t.edge_count() != n - 1 || !is_connected(t) {
        return Err(Error::precondition("the graph is not a tree"));
    }
    if let Some(v) = (0..n).find(|&v| t.degree(v) > d) {
        return Err(Error::precondition(format!("vertex {v} has degree {} > {d}", t.degree(v))));
    }
    let forest = rooted_at_zero(t);
    let mut index = vec![None; n];
    for v in 0..n {
        for (i, c) in forest.children(v).into_iter().enumerate() {
            index[c] = Some(i);
        }
    }
    let order: Vec<Element> = forest_lex(&forest, &|a, b| a.cmp(&b)).into_iter().map(Element::Vertex).collect();
    let params = (0..d)
        .map(|i| (format!("P{i}"), vertices((0..n).filter(|&v| index[v] == Some(i)))))
        .collect();
    let cert = OrderCertificate {
        scheme: Scheme::TreeBoundedDegree,
        universe: Encoding::Floor,
        order,
        params,
        formula: Some(tree_formula(d).to_string()),
        trace: json!({ "root": 0, "parent": forest.parents(), "child_index": index }),
        verified: false,
    };
    Ok(finish(t, cert, budget))
}

fn rooted_at_zero(t: &Graph) -> RootedForest {
    let mut parent = vec![None; t.n()];
    let mut seen = vec![false; t.n()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    RootedForest::from_parents(parent).expect("search tree parents are acyclic")
}

/// `x ≤ y` in the lexicographic order given by the sets `P0 … P(d-1)`.
pub(crate) fn tree_formula(d: usize) -> Formula {
    let mut nm = Names::default();
    let root = move |_: &mut Names, z: &str| and((0..d).map(|i| Formula::member(z, &format!("P{i}")).not()));
    let anc = |nm: &mut Names, a: &str, b: &str| reach_le(nm, a, b, &root, &|_, s, t| Formula::edg(s, t));
    let (u, v, w) = (nm.var("u"), nm.var("v"), nm.var("w"));
    let sib = and([
        neq(&u, &v),
        Formula::exists(&w, and([Formula::edg(&w, &u), Formula::edg(&w, &v)])),
        anc(&mut nm, &u, &v).not(),
        anc(&mut nm, &v, &u).not(),
    ]);
    let idx_lt = or((0..d).flat_map(|i| {
        let (u, v) = (u.clone(), v.clone());
        (i + 1..d).map(move |k| and([Formula::member(&u, &format!("P{i}")), Formula::member(&v, &format!("P{k}"))]))
    }));
    let branch = and([anc(&mut nm, &u, "x"), anc(&mut nm, &v, "y"), sib, idx_lt]);
    or([anc(&mut nm, "x", "y"), Formula::exists(&u, Formula::exists(&v, branch))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn ids(c: &OrderCertificate) -> Vec<String> {
        c.order.iter().map(Element::to_string).collect()
    }

    #[test]
    fn path_rooted_at_an_end() {
        let c = order_tree_bounded_degree(&generate(&FamilySpec::Path(3)).unwrap(), 2, &Budget::default()).unwrap();
        assert!(c.verified);
        assert_eq!(ids(&c), ["v:0", "v:1", "v:2"]);
    }

    #[test]
    fn single_vertex() {
        let c = order_tree_bounded_degree(&Graph::new(1), 0, &Budget::default()).unwrap();
        assert!(c.verified);
        assert!(c.params.is_empty());
        assert_eq!(ids(&c), ["v:0"]);
    }

    #[test]
    fn star_center_first() {
        let g = generate(&FamilySpec::CompleteBipartite(1, 3)).unwrap();
        let c = order_tree_bounded_degree(&g, 3, &Budget::default()).unwrap();
        assert!(c.verified);
        assert_eq!(ids(&c), ["v:0", "v:1", "v:2", "v:3"]);
        assert_eq!(c.params["P2"], vec![Element::Vertex(3)]);
    }

    #[test]
    fn branching_tree_uses_preorder() {
        // 0 - 3, 0 - 1, 3 - 2, 1 - 4: preorder 0 1 4 3 2.
        let g = Graph::from_edges(5, [(0, 3), (0, 1), (3, 2), (1, 4)]).unwrap();
        let c = order_tree_bounded_degree(&g, 2, &Budget::default()).unwrap();
        assert!(c.verified);
        assert_eq!(ids(&c), ["v:0", "v:1", "v:4", "v:3", "v:2"]);
    }

    #[test]
    fn preconditions() {
        let b = Budget::default();
        assert!(order_tree_bounded_degree(&generate(&FamilySpec::Cycle(3)).unwrap(), 2, &b).is_err());
        assert!(order_tree_bounded_degree(&generate(&FamilySpec::CompleteBipartite(1, 3)).unwrap(), 2, &b).is_err());
        assert!(order_tree_bounded_degree(&Graph::new(2), 2, &b).is_err());
    }
}
