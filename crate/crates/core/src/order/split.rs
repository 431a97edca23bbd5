use std::collections::BTreeMap;

use serde_json::json;

use super::formulas::{adj, adj_in, and, delta_least_in_first, extend_to_edges, or, reach_le, vertex, Names};
use super::{bit, ceil_order, edges, finish, low_bit_cmp, OrderCertificate, Scheme};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forests::split_partition;
use crate::graph::Graph;
use crate::mso::{Element, Encoding, Formula};

/// Orders a split graph with the chain parameter `P` and `s` colourings
/// `Q0 … Q(s-1)`.
///
/// The clique side is chained by ascending id starting from `a_0`. Vertices
/// of the independent side with the same neighbourhood `N` form a class;
/// its `i`-th member (ascending id) is coded by the binary digits of `i`,
/// digit `k(|N|+1) + l` sitting on the edge to the `l`-th vertex of `N`
/// (`l < |N|`) or on the vertex itself (`l = |N|`).
pub fn order_split(g: &Graph, s: usize, budget: &Budget) -> Result<OrderCertificate> {
    let sp = split_partition(g).ok_or_else(|| Error::precondition("the graph is not a split graph"))?;
    let mut a = sp.a.clone();
    a.sort_unstable();
    let mut b = sp.b.clone();
    b.sort_unstable();
    let mut rank = vec![usize::MAX; g.n()];
    for (i, &v) in a.iter().enumerate() {
        rank[v] = i;
    }
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for &v in &b {
        // Reversed membership so that the map's order is the class order.
        let key: Vec<bool> = a.iter().map(|&u| !g.has_edge(u, v)).collect();
        classes.entry(key).or_default().push(v);
    }
    let mut params: BTreeMap<String, Vec<Element>> = BTreeMap::new();
    let mut p = edges(a.windows(2).map(|w| (w[0], w[1])));
    if let Some(&a0) = a.first() {
        p.insert(0, Element::Vertex(a0));
    }
    params.insert("P".into(), p);
    let mut q: Vec<Vec<Element>> = vec![Vec::new(); s];
    let mut vertex_order = a.clone();
    let mut trace_classes = Vec::new();
    for members in classes.values() {
        let nb: Vec<usize> = a.iter().copied().filter(|&u| g.has_edge(u, members[0])).collect();
        let width = s * (nb.len() + 1);
        if width < usize::BITS as usize && members.len() > 1usize << width {
            return Err(Error::precondition(format!(
                "{} vertices share the neighbourhood {nb:?}, more than 2^(s(n+1)) = 2^{width}",
                members.len()
            )));
        }
        for (i, &v) in members.iter().enumerate() {
            for (k, qk) in q.iter_mut().enumerate() {
                let base = k * (nb.len() + 1);
                for (l, &u) in nb.iter().enumerate() {
                    if bit(i, base + l) {
                        qk.push(Element::edge(u, v));
                    }
                }
                if bit(i, base + nb.len()) {
                    qk.push(Element::Vertex(v));
                }
            }
        }
        let mut idx: Vec<usize> = (0..members.len()).collect();
        idx.sort_by(|&i, &j| low_bit_cmp(i, j));
        vertex_order.extend(idx.iter().map(|&i| members[i]));
        trace_classes.push(json!({ "neighbourhood": nb, "members": members }));
    }
    for (k, mut qk) in q.into_iter().enumerate() {
        qk.sort_unstable();
        params.insert(format!("Q{k}"), qk);
    }
    let cert = OrderCertificate {
        scheme: Scheme::Split,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: Some(split_formula(s).to_string()),
        trace: json!({ "a": a, "classes": trace_classes }),
        verified: false,
    };
    Ok(finish(g, cert, budget))
}

fn split_formula(s: usize) -> Formula {
    let in_a = |nm: &mut Names, z: &str| {
        let e = nm.var("e");
        let on_chain = Formula::exists(&e, and([Formula::member(&e, "P"), Formula::inc(z, &e)]));
        and([vertex(nm, z), or([Formula::member(z, "P"), on_chain])])
    };
    let in_b = move |nm: &mut Names, z: &str| and([vertex(nm, z), in_a(nm, z).not()]);
    let a0 = |nm: &mut Names, z: &str| and([Formula::member(z, "P"), vertex(nm, z)]);
    let le_a = move |nm: &mut Names, u: &str, v: &str| reach_le(nm, u, v, &a0, &|nm, s, t| adj_in(nm, s, t, "P"));
    let nb = move |nm: &mut Names, a: &str, v: &str| and([in_a(nm, a), adj(nm, a, v)]);
    let same_n = move |nm: &mut Names, u: &str, v: &str| {
        let a = nm.var("a");
        Formula::forall(&a, in_a(nm, &a).implies(nb(nm, &a, u).iff(nb(nm, &a, v))))
    };
    let edge_bit = |k: usize| move |nm: &mut Names, a: &str, v: &str| adj_in(nm, a, v, &format!("Q{k}"));
    let vbit = |v: &str, k: usize| Formula::member(v, &format!("Q{k}"));
    // Lowest differing digit set in `u`, digits ordered by colouring, then
    // by the chain position of the neighbour, then the vertex digit.
    let code_lt = move |nm: &mut Names, u: &str, v: &str| {
        let mut cases = Vec::new();
        for k in 0..s {
            let mut below = Vec::new();
            for j in 0..k {
                let a = nm.var("a");
                let eb = edge_bit(j);
                let agree = eb(nm, &a, u).iff(eb(nm, &a, v));
                below.push(Formula::forall(&a, nb(nm, &a, u).implies(agree)));
                below.push(vbit(u, j).iff(vbit(v, j)));
            }
            let in_nu = move |nm: &mut Names, a: &str| nb(nm, a, u);
            let eb = edge_bit(k);
            let first_edge = delta_least_in_first(nm, u, v, &in_nu, &eb, &le_a);
            let a = nm.var("a");
            let edges_agree = Formula::forall(&a, nb(nm, &a, u).implies(eb(nm, &a, u).iff(eb(nm, &a, v))));
            let first_vertex = and([edges_agree, vbit(u, k), vbit(v, k).not()]);
            cases.push(and(below.into_iter().chain([or([first_edge, first_vertex])])));
        }
        or(cases)
    };
    let le_b = move |nm: &mut Names, u: &str, v: &str| {
        let lex = delta_least_in_first(nm, u, v, &in_a, &nb, &le_a);
        let tie = and([same_n(nm, u, v), or([Formula::eq(u, v), code_lt(nm, u, v)])]);
        or([lex, tie])
    };
    let vo = move |nm: &mut Names, x: &str, y: &str| {
        let (xa, ya) = (in_a(nm, x), in_a(nm, y));
        or([
            and([xa.clone(), ya.clone(), le_a(nm, x, y)]),
            and([xa, in_b(nm, y)]),
            and([in_b(nm, x), in_b(nm, y), le_b(nm, x, y)]),
        ])
    };
    extend_to_edges(&mut Names::default(), &vo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    /// `K_a` joined completely to `D_b`.
    fn clique_join_independent(a: usize, b: usize) -> Graph {
        let mut g = generate(&FamilySpec::Clique(a + b)).unwrap();
        for u in a..a + b {
            for v in u + 1..a + b {
                g.remove_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn k2_join_d2() {
        let g = clique_join_independent(2, 2);
        let c = order_split(&g, 1, &Budget::default()).unwrap();
        assert!(c.verified, "{}", c.to_json());
    }

    #[test]
    fn star_needs_room() {
        let g = clique_join_independent(1, 9);
        let err = order_split(&g, 1, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn cliques_are_chains() {
        let g = generate(&FamilySpec::Clique(4)).unwrap();
        let c = order_split(&g, 0, &Budget::default()).unwrap();
        assert!(c.verified);
        let firsts: Vec<String> = c.order[..4].iter().map(Element::to_string).collect();
        assert_eq!(firsts, ["v:0", "v:1", "v:2", "v:3"]);
    }

    #[test]
    fn classes_with_different_neighbourhoods() {
        // Clique 0 1 2; 3 sees 0, 4 sees 1 2, 5 sees 0, 6 sees nothing.
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 1), (4, 2), (5, 0)]).unwrap();
        let c = order_split(&g, 1, &Budget::default()).unwrap();
        assert!(c.verified, "{}", c.to_json());
    }

    #[test]
    fn not_split() {
        assert!(order_split(&generate(&FamilySpec::Cycle(4)).unwrap(), 1, &Budget::default()).is_err());
    }
}
