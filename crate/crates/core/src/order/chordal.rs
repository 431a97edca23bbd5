use std::collections::BTreeMap;

use serde_json::json;

use super::{
    bit, ceil_order, finish, forest_edges, forest_lex, sibling_classes, sibling_cmp, trace_field, vertices,
    OrderCertificate, Scheme,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forests::{perfect_spanning_forest, verify_perfect, RootedForest};
use crate::graph::Graph;
use crate::mso::{Element, Encoding};

/// Orders a chordal graph along a perfect spanning forest.
///
/// The key of a vertex `u` is `B(u)`, its neighbours among its strict
/// ancestors, listed root first. Siblings with different keys follow the
/// shallowest vertex of the symmetric difference; siblings with the same key
/// are numbered by ascending id and the number `i` is written in binary into
/// `Q0 … Qs`, digit `k(|B|+1) + l` on the edge from `u` to the `l`-th key
/// vertex, or on `u` itself when `l = |B|`.
pub fn order_chordal(g: &Graph, s: usize, budget: &Budget) -> Result<OrderCertificate> {
    let f = perfect_spanning_forest(g).ok_or_else(|| Error::precondition("the graph is not chordal"))?;
    let keys = lower_neighbours(g, &f);
    let classes = sibling_classes(&f, &keys);
    let mut index = vec![0; g.n()];
    let mut q: Vec<Vec<Element>> = vec![Vec::new(); s + 1];
    for class in &classes {
        let key = &keys[class[0]];
        let width = s * (key.len() + 1);
        if width < usize::BITS as usize && class.len() > 1usize << width {
            return Err(Error::precondition(format!(
                "{} siblings share B = {key:?}, more than 2^(s(|B|+1)) = 2^{width}",
                class.len()
            )));
        }
        for (i, &u) in class.iter().enumerate() {
            index[u] = i;
            for (k, qk) in q.iter_mut().enumerate() {
                let base = k * (key.len() + 1);
                qk.extend(key.iter().enumerate().filter(|&(l, _)| bit(i, base + l)).map(|(_, &w)| Element::edge(u, w)));
                if bit(i, base + key.len()) {
                    qk.push(Element::Vertex(u));
                }
            }
        }
    }
    let mut params: BTreeMap<String, Vec<Element>> = BTreeMap::new();
    params.insert("F".into(), forest_edges(&f));
    params.insert("Roots".into(), vertices(f.roots()));
    for (k, mut qk) in q.into_iter().enumerate() {
        qk.sort_unstable();
        params.insert(format!("Q{k}"), qk);
    }
    let vertex_order = forest_lex(&f, &|u, v| sibling_cmp(&f, &keys, &index, u, v));
    let cert = OrderCertificate {
        scheme: Scheme::Chordal,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: None,
        trace: json!({ "s": s, "parent": f.parents(), "b_sets": keys, "classes": classes }),
        verified: false,
    };
    Ok(finish(g, cert, budget))
}

/// Neighbours of each vertex among its strict ancestors, shallowest first.
fn lower_neighbours(g: &Graph, f: &RootedForest) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|u| {
            let mut b: Vec<usize> = f.ancestors(u).into_iter().filter(|&w| g.has_edge(u, w)).collect();
            b.sort_by_key(|&w| f.depth(w));
            b
        })
        .collect()
}

pub(crate) fn check_trace(g: &Graph, cert: &OrderCertificate) -> Result<Option<String>> {
    Ok(check(g, cert).err())
}

fn check(g: &Graph, cert: &OrderCertificate) -> std::result::Result<(), String> {
    let s: usize = trace_field(cert, "s")?;
    let parent: Vec<Option<usize>> = trace_field(cert, "parent")?;
    let f = RootedForest::from_parents(parent).map_err(|e| e.to_string())?;
    if !verify_perfect(g, &f).map_err(|e| e.to_string())? {
        return Err("the forest is not a perfect spanning forest".into());
    }
    if cert.params.get("F") != Some(&forest_edges(&f)) {
        return Err("F is not the edge set of the forest".into());
    }
    if cert.params.get("Roots") != Some(&vertices(f.roots())) {
        return Err("Roots does not list the roots of the forest".into());
    }
    let keys = lower_neighbours(g, &f);
    let listed: Vec<Vec<usize>> = trace_field(cert, "b_sets")?;
    if listed != keys {
        return Err("the B table does not match the forest".into());
    }
    // Decode every sibling number from the colourings.
    let mut index = vec![0usize; g.n()];
    for k in 0..=s {
        let Some(members) = cert.params.get(&format!("Q{k}")) else {
            return Err(format!("Q{k} is missing"));
        };
        for e in members {
            let (u, pos) = match *e {
                Element::Vertex(u) if u < g.n() => (u, keys[u].len()),
                Element::Edge(a, b) if a < g.n() && b < g.n() => {
                    let (u, w) = if f.depth(a) > f.depth(b) { (a, b) } else { (b, a) };
                    match keys[u].iter().position(|&x| x == w) {
                        Some(l) => (u, l),
                        None => return Err(format!("Q{k} holds {e}, which is not a key edge")),
                    }
                }
                _ => return Err(format!("Q{k} holds {e}, outside the graph")),
            };
            let digit = k * (keys[u].len() + 1) + pos;
            if digit >= usize::BITS as usize {
                return Err(format!("digit {digit} of vertex {u} does not fit"));
            }
            index[u] |= 1 << digit;
        }
    }
    for class in sibling_classes(&f, &keys) {
        let width = s * (keys[class[0]].len() + 1);
        if width < usize::BITS as usize && class.len() > 1usize << width {
            return Err(format!("sibling class {class:?} is too large for s = {s}"));
        }
        let mut seen: Vec<usize> = class.iter().map(|&v| index[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != class.len() {
            return Err(format!("siblings {class:?} share a colour code"));
        }
    }
    let vertex_order = forest_lex(&f, &|u, v| sibling_cmp(&f, &keys, &index, u, v));
    if ceil_order(g, &vertex_order) != cert.order {
        return Err("the order is not the lexicographic order of the trace".into());
    }
    Ok(())
}
