use std::collections::BTreeMap;

use serde_json::json;

use super::formulas::{adj, adj_in, and, extend_to_edges, or, reach_le, vertex, Names};
use super::{ceil_order, edges, finish, OrderCertificate, Scheme};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mso::{Element, Encoding, Formula};

/// Orders a complete multipartite graph with the edge sets `R`, `S`, `S0`.
///
/// Parts are sorted by descending size (ties by least vertex) and each part
/// is enumerated by ascending id; `a^k_i` is vertex `i` of part `k`.
pub fn order_multipartite(g: &Graph, parts: &[Vec<usize>], budget: &Budget) -> Result<OrderCertificate> {
    let mut parts: Vec<Vec<usize>> = parts.to_vec();
    for p in &mut parts {
        p.sort_unstable();
    }
    let mut part_of = vec![usize::MAX; g.n()];
    for (k, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::precondition("parts must be nonempty"));
        }
        for &v in p {
            if v >= g.n() || part_of[v] != usize::MAX {
                return Err(Error::input(format!("vertex {v} is out of range or in two parts")));
            }
            part_of[v] = k;
        }
    }
    if part_of.contains(&usize::MAX) {
        return Err(Error::input("the parts do not cover every vertex"));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != (part_of[u] != part_of[v]) {
                return Err(Error::precondition(format!("pair {u}-{v} breaks complete multipartiteness")));
            }
        }
    }
    parts.sort_by_key(|p| (std::cmp::Reverse(p.len()), p[0]));
    let d = parts.len();
    if d <= 2 {
        return Err(Error::precondition(format!("needs more than two parts, got {d}")));
    }
    let rest: usize = parts[1..].iter().map(Vec::len).sum();
    if parts[0].len() > rest {
        return Err(Error::precondition(format!(
            "largest part has {} vertices, more than the other parts together ({rest})",
            parts[0].len()
        )));
    }

    let b: Vec<usize> = parts[1..].concat();
    let mut params: BTreeMap<String, Vec<Element>> = BTreeMap::new();
    params.insert("R".into(), edges((0..d - 1).map(|k| (parts[k][0], parts[k + 1][0]))));
    params.insert(
        "S".into(),
        edges((0..d - 1).flat_map(|k| {
            let (lo, hi) = (&parts[k], &parts[k + 1]);
            (0..lo.len()).flat_map(move |i| (i..hi.len()).map(move |j| (lo[i], hi[j])))
        })),
    );
    let a0 = &parts[0];
    params.insert("S0".into(), edges((0..a0.len()).flat_map(|i| b[i..].iter().map(move |&bj| (a0[i], bj)))));

    let vertex_order: Vec<usize> = a0.iter().rev().chain(b.iter()).copied().collect();
    let cert = OrderCertificate {
        scheme: Scheme::Multipartite,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: Some(multipartite_formula().to_string()),
        trace: json!({ "parts": parts, "b": b }),
        verified: false,
    };
    Ok(finish(g, cert, budget))
}

fn multipartite_formula() -> Formula {
    let on_r = |nm: &mut Names, p: &str| {
        let e = nm.var("e");
        Formula::exists(&e, and([Formula::member(&e, "R"), Formula::inc(p, &e)]))
    };
    let start = move |nm: &mut Names, p: &str| {
        let e = nm.var("e");
        and([on_r(nm, p), Formula::forall(&e, Formula::inc(p, &e).implies(Formula::member(&e, "S0")))])
    };
    // `p` is the path vertex of the part of `u`.
    let rep = move |nm: &mut Names, u: &str, p: &str| {
        and([vertex(nm, u), on_r(nm, p), or([Formula::eq(u, p), adj(nm, u, p).not()])])
    };
    let part_le = move |nm: &mut Names, u: &str, v: &str| {
        let (p, q) = (nm.var("p"), nm.var("q"));
        let along = reach_le(nm, &p, &q, &start, &|nm, s, t| adj_in(nm, s, t, "R"));
        Formula::exists(&p, Formula::exists(&q, and([rep(nm, u, &p), rep(nm, v, &q), along])))
    };
    let in_a0 = move |nm: &mut Names, u: &str| {
        let p = nm.var("p");
        Formula::exists(&p, and([rep(nm, u, &p), start(nm, &p)]))
    };
    let le_a = |nm: &mut Names, u: &str, v: &str| {
        let w = nm.var("w");
        or([Formula::eq(u, v), Formula::forall(&w, adj_in(nm, u, &w, "S0").implies(adj_in(nm, v, &w, "S0")))])
    };
    let le_b = move |nm: &mut Names, u: &str, v: &str| {
        let w = nm.var("w");
        let below = and([part_le(nm, &w, u), part_le(nm, u, &w).not(), adj_in(nm, &w, u, "S")]);
        let within = Formula::forall(&w, below.implies(adj_in(nm, &w, v, "S")));
        let (uv, vu) = (part_le(nm, u, v), part_le(nm, v, u));
        or([and([uv.clone(), vu.clone().not()]), and([uv, vu, within])])
    };
    let vo = move |nm: &mut Names, x: &str, y: &str| {
        let (xa, ya) = (in_a0(nm, x), in_a0(nm, y));
        or([
            and([xa.clone(), ya.clone(), le_a(nm, x, y)]),
            and([xa.clone(), ya.clone().not()]),
            and([xa.not(), ya.not(), le_b(nm, x, y)]),
        ])
    };
    extend_to_edges(&mut Names::default(), &vo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn parts_of(sizes: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut next = 0;
        for &m in sizes {
            out.push((next..next + m).collect());
            next += m;
        }
        out
    }

    #[test]
    fn k221() {
        let g = generate(&FamilySpec::CompleteMultipartite(vec![2, 2, 1])).unwrap();
        let c = order_multipartite(&g, &parts_of(&[2, 2, 1]), &Budget::default()).unwrap();
        assert!(c.verified, "{}", c.to_json());
        let firsts: Vec<String> = c.order[..5].iter().map(Element::to_string).collect();
        assert_eq!(firsts, ["v:1", "v:0", "v:2", "v:3", "v:4"]);
    }

    #[test]
    fn unsorted_parts_are_sorted() {
        let g = generate(&FamilySpec::CompleteMultipartite(vec![1, 2, 2])).unwrap();
        let c = order_multipartite(&g, &parts_of(&[1, 2, 2]), &Budget::default()).unwrap();
        assert!(c.verified);
        assert_eq!(c.order[0], Element::Vertex(2));
    }

    #[test]
    fn triangle() {
        let g = generate(&FamilySpec::Clique(3)).unwrap();
        let c = order_multipartite(&g, &parts_of(&[1, 1, 1]), &Budget::default()).unwrap();
        assert!(c.verified);
    }

    #[test]
    fn shape_conditions() {
        let b = Budget::default();
        let g = generate(&FamilySpec::CompleteMultipartite(vec![3, 1, 1])).unwrap();
        assert!(order_multipartite(&g, &parts_of(&[3, 1, 1]), &b).is_err());
        let g = generate(&FamilySpec::CompleteBipartite(2, 2)).unwrap();
        assert!(order_multipartite(&g, &parts_of(&[2, 2]), &b).is_err());
        let g = generate(&FamilySpec::Path(3)).unwrap();
        assert!(order_multipartite(&g, &parts_of(&[1, 1, 1]), &b).is_err());
    }
}
