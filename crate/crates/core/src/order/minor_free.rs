use std::collections::BTreeMap;

use serde_json::json;

use super::{
    ceil_order, finish, forest_edges, forest_lex, sibling_classes, sibling_cmp, trace_field, vertices,
    OrderCertificate, Scheme,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forests::{b_set, normal_spanning_forest, verify_normal, RootedForest};
use crate::graph::{generate, FamilySpec, Graph};
use crate::measures::{has_minor, sep};
use crate::mso::{Element, Encoding};

/// Orders a `K_{p,p}`-minor-free graph with `sep(G, p) ≤ d` along a normal
/// spanning forest.
///
/// Siblings are compared by their `B_F` sets, the shallowest vertex of the
/// symmetric difference going with the earlier sibling; siblings with the
/// same `B_F` are told apart by the index markers `I0 …`, roots by `R0 …`.
/// The certificate carries no formula; its trace is checked instead.
pub fn order_minor_free(g: &Graph, p: usize, d: usize, budget: &Budget) -> Result<OrderCertificate> {
    let sv = sep(g, p, budget)?.value;
    if sv > d {
        return Err(Error::precondition(format!("sep(G, {p}) = {sv} exceeds d = {d}")));
    }
    let kpp = generate(&FamilySpec::CompleteBipartite(p, p))?;
    if has_minor(g, &kpp, budget)? {
        return Err(Error::precondition(format!("the graph has a K_{{{p},{p}}} minor")));
    }
    let f = normal_spanning_forest(g);
    let keys = (0..g.n()).map(|v| b_set(g, &f, v).map(|r| r.b_set)).collect::<Result<Vec<_>>>()?;
    let cap = p.max(d);
    let mut index = vec![0; g.n()];
    let classes = sibling_classes(&f, &keys);
    for class in &classes {
        if class.len() > cap {
            return Err(Error::precondition(format!(
                "sibling class {class:?} has more than max(p, d) = {cap} members"
            )));
        }
        for (i, &v) in class.iter().enumerate() {
            index[v] = i;
        }
    }
    let roots = f.roots();
    if roots.len() > d.max(1) {
        return Err(Error::precondition(format!("{} components exceed d = {d}", roots.len())));
    }
    let mut params: BTreeMap<String, Vec<Element>> = BTreeMap::new();
    params.insert("F".into(), forest_edges(&f));
    for j in 0..d.max(1) {
        params.insert(format!("R{j}"), vertices(roots.iter().copied().filter(|&r| index[r] == j)));
    }
    for j in 0..cap {
        params.insert(format!("I{j}"), vertices((0..g.n()).filter(|&v| f.parent(v).is_some() && index[v] == j)));
    }
    let vertex_order = forest_lex(&f, &|u, v| sibling_cmp(&f, &keys, &index, u, v));
    let cert = OrderCertificate {
        scheme: Scheme::MinorFree,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: None,
        trace: json!({ "p": p, "d": d, "parent": f.parents(), "b_sets": keys, "classes": classes }),
        verified: false,
    };
    Ok(finish(g, cert, budget))
}

/// Rebuilds the order from the forest, the recomputed `B_F` sets and the
/// markers; `Some(reason)` on the first mismatch.
pub(crate) fn check_trace(g: &Graph, cert: &OrderCertificate) -> Result<Option<String>> {
    Ok(check(g, cert).err())
}

fn check(g: &Graph, cert: &OrderCertificate) -> std::result::Result<(), String> {
    let p: usize = trace_field(cert, "p")?;
    let d: usize = trace_field(cert, "d")?;
    let parent: Vec<Option<usize>> = trace_field(cert, "parent")?;
    let f = RootedForest::from_parents(parent).map_err(|e| e.to_string())?;
    if !verify_normal(g, &f).map_err(|e| e.to_string())? {
        return Err("the forest is not a normal spanning forest".into());
    }
    if cert.params.get("F") != Some(&forest_edges(&f)) {
        return Err("F is not the edge set of the forest".into());
    }
    let keys: Vec<Vec<usize>> = (0..g.n())
        .map(|v| b_set(g, &f, v).map(|r| r.b_set))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let listed: Vec<Vec<usize>> = trace_field(cert, "b_sets")?;
    if listed != keys {
        return Err("the B_F table does not match the forest".into());
    }
    let index = decode_markers(g.n(), &f, cert)?;
    let cap = p.max(d);
    for class in sibling_classes(&f, &keys) {
        if class.len() > cap {
            return Err(format!("sibling class {class:?} exceeds max(p, d) = {cap}"));
        }
        let mut seen: Vec<usize> = class.iter().map(|&v| index[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != class.len() {
            return Err(format!("sibling class {class:?} reuses an index marker"));
        }
    }
    let vertex_order = forest_lex(&f, &|u, v| sibling_cmp(&f, &keys, &index, u, v));
    if ceil_order(g, &vertex_order) != cert.order {
        return Err("the order is not the lexicographic order of the trace".into());
    }
    Ok(())
}

/// Index of every vertex: `R<j>` for roots, `I<j>` for the others, each
/// vertex carrying exactly one marker.
fn decode_markers(n: usize, f: &RootedForest, cert: &OrderCertificate) -> std::result::Result<Vec<usize>, String> {
    let mut index = vec![None; n];
    for (name, members) in &cert.params {
        let (kind, j) = match name.split_at(1) {
            (k @ ("R" | "I"), rest) => match rest.parse::<usize>() {
                Ok(j) => (k, j),
                Err(_) => continue,
            },
            _ => continue,
        };
        for e in members {
            let Element::Vertex(v) = *e else {
                return Err(format!("marker {name} holds the edge {e}"));
            };
            if v >= n || (kind == "R") != f.parent(v).is_none() {
                return Err(format!("marker {name} holds the wrong kind of vertex {v}"));
            }
            if index[v].replace(j).is_some() {
                return Err(format!("vertex {v} carries two markers"));
            }
        }
    }
    index.into_iter().enumerate().map(|(v, i)| i.ok_or_else(|| format!("vertex {v} has no marker"))).collect()
}
