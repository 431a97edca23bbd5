use std::collections::BTreeMap;

use serde_json::json;

use super::{finish, trace_field, vertices, OrderCertificate, Scheme};
use crate::budget::Budget;
use crate::decomposition::cotree;
use crate::error::{Error, Result};
use crate::graph::{cograph_from_coterm, parse_coterm, CoTerm, Graph};
use crate::mso::{Element, Encoding};

/// Orders a cograph by the leaves of its cotree, children taken by least
/// vertex.
///
/// `C<i>` holds the first leaf of every non-root node that is the `i`-th
/// child of its parent. The trace is the ordered cotree with its leaf list;
/// no defining formula is emitted.
pub fn order_cograph(g: &Graph, d: usize, budget: &Budget) -> Result<OrderCertificate> {
    let t = cotree(g).ok_or_else(|| Error::precondition("the graph is not a nonempty cograph"))?;
    let out = t.term.max_outdegree();
    if out > d {
        return Err(Error::precondition(format!("the cotree has a node with {out} children, more than d = {d}")));
    }
    let cert = OrderCertificate {
        scheme: Scheme::Cograph,
        universe: Encoding::Floor,
        order: t.leaves.iter().map(|&v| Element::Vertex(v)).collect(),
        params: markers(&t.term, &t.leaves, d),
        formula: None,
        trace: json!({ "d": d, "cotree": t.term.to_string(), "leaves": t.leaves }),
        verified: false,
    };
    Ok(finish(g, cert, budget))
}

fn markers(term: &CoTerm, leaves: &[usize], d: usize) -> BTreeMap<String, Vec<Element>> {
    let mut sets = vec![Vec::new(); d];
    fn walk(t: &CoTerm, start: usize, leaves: &[usize], sets: &mut [Vec<usize>]) {
        let mut at = start;
        for (i, c) in t.children().iter().enumerate() {
            sets[i].push(leaves[at]);
            walk(c, at, leaves, sets);
            at += c.leaves();
        }
    }
    walk(term, 0, leaves, &mut sets);
    sets.into_iter().enumerate().map(|(i, s)| (format!("C{i}"), vertices(s))).collect()
}

pub(crate) fn check_trace(g: &Graph, cert: &OrderCertificate) -> Result<Option<String>> {
    Ok(check(g, cert).err())
}

fn check(g: &Graph, cert: &OrderCertificate) -> std::result::Result<(), String> {
    let d: usize = trace_field(cert, "d")?;
    let text: String = trace_field(cert, "cotree")?;
    let leaves: Vec<usize> = trace_field(cert, "leaves")?;
    let term = parse_coterm(&text).map_err(|e| e.to_string())?;
    if !term.is_cotree() {
        return Err("the trace term is not a cotree".into());
    }
    let h = cograph_from_coterm(&term).map_err(|e| e.to_string())?;
    if h.n() != g.n() || leaves.len() != g.n() {
        return Err("the cotree does not have one leaf per vertex".into());
    }
    let mut seen = vec![false; g.n()];
    for &v in &leaves {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return Err(format!("leaf list repeats or exceeds vertex {v}"));
        }
    }
    for i in 0..h.n() {
        for j in i + 1..h.n() {
            if h.has_edge(i, j) != g.has_edge(leaves[i], leaves[j]) {
                return Err(format!("the cotree disagrees with the graph on {}-{}", leaves[i], leaves[j]));
            }
        }
    }
    if term.max_outdegree() > d {
        return Err(format!("a cotree node has more than d = {d} children"));
    }
    if markers(&term, &leaves, d) != cert.params {
        return Err("the child-index markers do not match the cotree".into());
    }
    let order: Vec<Element> = leaves.iter().map(|&v| Element::Vertex(v)).collect();
    if order != cert.order {
        return Err("the order is not the leaf order of the cotree".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::order::verify_certificate;

    #[test]
    fn k23_groups_sides() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let c = order_cograph(&g, 3, &Budget::default()).unwrap();
        assert!(c.verified);
        let vs: Vec<String> = c.order.iter().map(Element::to_string).collect();
        assert_eq!(vs, ["v:0", "v:1", "v:2", "v:3", "v:4"]);
        assert_eq!(c.params["C1"], vec![Element::Vertex(1), Element::Vertex(2), Element::Vertex(3)]);
    }

    #[test]
    fn single_vertex() {
        let c = order_cograph(&Graph::new(1), 0, &Budget::default()).unwrap();
        assert!(c.verified);
        assert!(c.params.is_empty());
    }

    #[test]
    fn outdegree_bound() {
        let g = generate(&FamilySpec::Clique(5)).unwrap();
        assert!(order_cograph(&g, 4, &Budget::default()).is_err());
        assert!(order_cograph(&generate(&FamilySpec::Path(4)).unwrap(), 4, &Budget::default()).is_err());
    }

    #[test]
    fn tampering_is_caught() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let b = Budget::default();
        let c = order_cograph(&g, 3, &b).unwrap();
        let mut t = c.clone();
        t.trace["cotree"] = json!("(1 + 1 + 1) * (1 + 1)");
        assert!(!verify_certificate(&g, &t, &b).unwrap().ok);
        let mut t = c;
        t.order.swap(0, 4);
        assert!(!verify_certificate(&g, &t, &b).unwrap().ok);
    }
}
