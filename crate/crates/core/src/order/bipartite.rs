use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde_json::json;

use super::formulas::{adj_in, and, delta_least_in_first, extend_to_edges, or, restrict_inc, Names};
use super::{bit, ceil_order, edges, finish, low_bit_cmp, vertices, OrderCertificate, Scheme};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mso::{relativize, Element, Encoding, Formula};

/// Orders a supergraph of `K_{n,m}` on the sides `a_side`, `b_side` with the
/// parameters `A, B, S, R0 … R(s+r-1)` and `Z = V ∪ E(K_{n,m})`.
///
/// Sides are enumerated by ascending id. `b_j` is coded by the binary
/// digits of `j`: `(a_i, b_j) ∈ R_k` iff bit `k·n + i` of `j` is set. With
/// `n = 0` the `r` vertex markers `M0 … M(r-1)` carry the digits instead.
pub fn order_bipartite_supergraph(
    g: &Graph,
    a_side: &[usize],
    b_side: &[usize],
    s: usize,
    r: usize,
    budget: &Budget,
) -> Result<OrderCertificate> {
    let mut a = a_side.to_vec();
    let mut b = b_side.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let mut seen = vec![false; g.n()];
    for &v in a.iter().chain(&b) {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::input(format!("vertex {v} is out of range or on both sides")));
        }
    }
    if seen.contains(&false) {
        return Err(Error::input("the two sides do not cover every vertex"));
    }
    let (n, m) = (a.len(), b.len());
    if let Some((u, v)) = a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::precondition(format!("{u}-{v} is missing, so the graph does not contain K_{{{n},{m}}}")));
    }
    if n > m {
        return Err(Error::precondition(format!("the a-side ({n}) is larger than the b-side ({m})")));
    }
    let bits = s * n + r;
    if bits < usize::BITS as usize && m > 1usize << bits {
        return Err(Error::precondition(format!("m = {m} exceeds 2^(s·n+r) = 2^{bits}")));
    }
    let cert = if n == 0 { markers_only(g, &b, r) } else { full(g, &a, &b, s + r) };
    Ok(finish(g, cert, budget))
}

fn markers_only(g: &Graph, b: &[usize], r: usize) -> OrderCertificate {
    let mut idx: Vec<usize> = (0..b.len()).collect();
    idx.sort_by(|&i, &j| low_bit_cmp(i, j));
    let vertex_order: Vec<usize> = idx.iter().map(|&j| b[j]).collect();
    let params = (0..r)
        .map(|k| (format!("M{k}"), vertices((0..b.len()).filter(|&j| bit(j, k)).map(|j| b[j]))))
        .collect();
    let vo = move |_: &mut Names, u: &str, v: &str| {
        let m = |z: &str, k: usize| Formula::member(z, &format!("M{k}"));
        or(std::iter::once(Formula::eq(u, v)).chain((0..r).map(|k| {
            and((0..k).map(|j| m(u, j).iff(m(v, j))).chain([m(u, k), m(v, k).not()]))
        })))
    };
    let formula = extend_to_edges(&mut Names::default(), &vo);
    OrderCertificate {
        scheme: Scheme::BipartiteSupergraph,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: Some(formula.to_string()),
        trace: json!({ "a": [], "b": b, "codes": (0..b.len()).collect::<Vec<_>>() }),
        verified: false,
    }
}

fn full(g: &Graph, a: &[usize], b: &[usize], layers: usize) -> OrderCertificate {
    let n = a.len();
    // Layer k of the code of b_j: the a-indices i with bit k·n + i set.
    let code = |j: usize, k: usize, i: usize| bit(j, k * n + i);
    let cmp_b = |j: usize, l: usize| -> Ordering {
        for k in 0..layers {
            // The S-inclusion order on A puts higher indices first.
            if let Some(i) = (0..n).rev().find(|&i| code(j, k, i) != code(l, k, i)) {
                return if code(j, k, i) { Ordering::Less } else { Ordering::Greater };
            }
        }
        j.cmp(&l)
    };
    let mut bj: Vec<usize> = (0..b.len()).collect();
    bj.sort_by(|&j, &l| cmp_b(j, l));
    let vertex_order: Vec<usize> = a.iter().rev().copied().chain(bj.iter().map(|&j| b[j])).collect();

    let pairs = |keep: &dyn Fn(usize, usize) -> bool| {
        edges((0..n).flat_map(|i| (0..b.len()).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).map(|(i, j)| (a[i], b[j])))
    };
    let mut params: BTreeMap<String, Vec<Element>> = BTreeMap::new();
    params.insert("A".into(), vertices(a.iter().copied()));
    params.insert("B".into(), vertices(b.iter().copied()));
    params.insert("S".into(), pairs(&|i, j| i <= j));
    for k in 0..layers {
        params.insert(format!("R{k}"), pairs(&|i, j| code(j, k, i)));
    }
    let mut z = vertices(0..g.n());
    z.extend(pairs(&|_, _| true));
    params.insert("Z".into(), z);

    let vo = move |nm: &mut Names, x: &str, y: &str| {
        let le_a = |nm: &mut Names, u: &str, v: &str| {
            let w = nm.var("w");
            let body = and([Formula::member(&w, "B"), adj_in(nm, u, &w, "S")]).implies(adj_in(nm, v, &w, "S"));
            or([Formula::eq(u, v), Formula::forall(&w, body)])
        };
        let in_a = |_: &mut Names, z: &str| Formula::member(z, "A");
        let le_b = |nm: &mut Names, u: &str, v: &str| {
            let mut cases = vec![Formula::eq(u, v)];
            for k in 0..layers {
                let mut parts = Vec::new();
                for j in 0..k {
                    let w = nm.var("w");
                    let rj = format!("R{j}");
                    let same = adj_in(nm, &w, u, &rj).iff(adj_in(nm, &w, v, &rj));
                    parts.push(Formula::forall(&w, Formula::member(&w, "A").implies(same)));
                }
                let rk = format!("R{k}");
                let member = |nm: &mut Names, p: &str, q: &str| adj_in(nm, p, q, &rk);
                parts.push(delta_least_in_first(nm, u, v, &in_a, &member, &le_a));
                cases.push(and(parts));
            }
            or(cases)
        };
        let (xa, ya, xb, yb) =
            (Formula::member(x, "A"), Formula::member(y, "A"), Formula::member(x, "B"), Formula::member(y, "B"));
        let phi = or([
            and([xa.clone(), ya, le_a(nm, x, y)]),
            and([xa, yb.clone()]),
            and([xb, yb, le_b(nm, x, y)]),
        ]);
        relativize(&restrict_inc(&phi, "Z"), "Z")
    };
    let formula = extend_to_edges(&mut Names::default(), &vo);
    OrderCertificate {
        scheme: Scheme::BipartiteSupergraph,
        universe: Encoding::Ceil,
        order: ceil_order(g, &vertex_order),
        params,
        formula: Some(formula.to_string()),
        trace: json!({ "a": a, "b": b, "codes": (0..b.len()).collect::<Vec<_>>(), "layers": layers }),
        verified: false,
    }
}
