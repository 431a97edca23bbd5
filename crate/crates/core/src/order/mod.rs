//! Order builders: each turns a constructive ordering argument into a
//! certificate holding the order, its parameter sets and either a defining
//! formula or a trace that can be checked independently.

mod bipartite;
mod chordal;
mod cograph;
mod conditions;
mod formulas;
mod minor_free;
mod multipartite;
mod split;
mod tree;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forests::RootedForest;
use crate::graph::Graph;
use crate::mso::{defined_relation, linear_order_from_table, parse_formula, Element, Encoding, Params, Structure};

pub use bipartite::order_bipartite_supergraph;
pub use chordal::order_chordal;
pub use cograph::order_cograph;
pub use conditions::{check_class_conditions, ClassReport, Condition, Family};
pub use minor_free::order_minor_free;
pub use multipartite::order_multipartite;
pub use split::order_split;
pub use tree::order_tree_bounded_degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    TreeBoundedDegree,
    MinorFree,
    BipartiteSupergraph,
    Multipartite,
    Split,
    Chordal,
    Cograph,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::TreeBoundedDegree,
        Scheme::MinorFree,
        Scheme::BipartiteSupergraph,
        Scheme::Multipartite,
        Scheme::Split,
        Scheme::Chordal,
        Scheme::Cograph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::TreeBoundedDegree => "tree-bounded-degree",
            Scheme::MinorFree => "minor-free",
            Scheme::BipartiteSupergraph => "bipartite-supergraph",
            Scheme::Multipartite => "multipartite",
            Scheme::Split => "split",
            Scheme::Chordal => "chordal",
            Scheme::Cograph => "cograph",
        }
    }

    /// Whether certificates of this scheme carry a defining formula.
    pub fn has_formula(self) -> bool {
        !matches!(self, Scheme::MinorFree | Scheme::Chordal | Scheme::Cograph)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    /// Accepts the full names and the short forms `tree` and `bipartite`.
    fn from_str(s: &str) -> Result<Self> {
        let s = match s {
            "tree" => "tree-bounded-degree",
            "bipartite" => "bipartite-supergraph",
            other => other,
        };
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::input(format!("unknown scheme `{s}`")))
    }
}

/// A total order of a graph encoding together with what justifies it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub scheme: Scheme,
    pub universe: Encoding,
    pub order: Vec<Element>,
    pub params: BTreeMap<String, Vec<Element>>,
    pub formula: Option<String>,
    pub trace: serde_json::Value,
    pub verified: bool,
}

impl OrderCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<OrderCertificate> {
        Ok(serde_json::from_str(text)?)
    }

    /// Position of every element in the order.
    pub fn ranks(&self) -> BTreeMap<Element, usize> {
        self.order.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }
}

/// Outcome of checking a certificate against a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { ok: true, reason: None }
    }

    pub fn fail(reason: impl Into<String>) -> Verdict {
        Verdict { ok: false, reason: Some(reason.into()) }
    }
}

/// Checks the certificate invariants: the order is a permutation of the
/// universe, parameters name universe elements, and either the formula
/// defines exactly this order or the trace reproduces it.
pub fn verify_certificate(g: &Graph, cert: &OrderCertificate, budget: &Budget) -> Result<Verdict> {
    let s = Structure::from_graph(g, cert.universe);
    let mut seen = vec![false; s.size()];
    for e in &cert.order {
        match s.index_of(e) {
            Ok(i) if !seen[i] => seen[i] = true,
            Ok(_) => return Ok(Verdict::fail(format!("{e} occurs twice in the order"))),
            Err(_) => return Ok(Verdict::fail(format!("{e} is not in the universe"))),
        }
    }
    if cert.order.len() != s.size() {
        return Ok(Verdict::fail(format!("order lists {} of {} elements", cert.order.len(), s.size())));
    }
    let params = match resolve_params(&s, &cert.params) {
        Ok(p) => p,
        Err(e) => return Ok(Verdict::fail(e.to_string())),
    };
    match &cert.formula {
        Some(text) => verify_formula(&s, cert, text, &params, budget),
        None => {
            let reason = match cert.scheme {
                Scheme::MinorFree => minor_free::check_trace(g, cert)?,
                Scheme::Chordal => chordal::check_trace(g, cert)?,
                Scheme::Cograph => cograph::check_trace(g, cert)?,
                other => Some(format!("{other} certificates must carry a formula")),
            };
            Ok(reason.map_or_else(Verdict::pass, Verdict::fail))
        }
    }
}

fn verify_formula(s: &Structure, cert: &OrderCertificate, text: &str, params: &Params, budget: &Budget) -> Result<Verdict> {
    let phi = match parse_formula(text) {
        Ok(f) => f,
        Err(e) => return Ok(Verdict::fail(format!("formula does not parse: {e}"))),
    };
    if let Some(missing) = phi.free_sets().into_iter().find(|x| !params.contains_key(x)) {
        return Ok(Verdict::fail(format!("parameter {missing} is not supplied")));
    }
    let table = defined_relation(s, &phi, params, budget)?;
    let Some(defined) = linear_order_from_table(&table) else {
        return Ok(Verdict::fail("the formula does not define a linear order"));
    };
    let defined: Vec<Element> = defined.into_iter().map(|i| s.element(i)).collect();
    if defined != cert.order {
        let at = defined.iter().zip(&cert.order).position(|(a, b)| a != b).unwrap_or(0);
        return Ok(Verdict::fail(format!(
            "defined order differs from the certificate at position {at}: {} vs {}",
            defined[at], cert.order[at]
        )));
    }
    Ok(Verdict::pass())
}

pub(crate) fn resolve_params(s: &Structure, params: &BTreeMap<String, Vec<Element>>) -> Result<Params> {
    let mut out = Params::new();
    for (name, members) in params {
        let idx = members.iter().map(|e| s.index_of(e)).collect::<Result<Vec<_>>>()?;
        out.insert(name.clone(), s.element_set(&idx)?);
    }
    Ok(out)
}

/// Fills in `verified` by running the checker; budget exhaustion leaves it false.
pub(crate) fn finish(g: &Graph, mut cert: OrderCertificate, budget: &Budget) -> OrderCertificate {
    cert.verified = matches!(verify_certificate(g, &cert, budget), Ok(Verdict { ok: true, .. }));
    cert
}

/// Preorder of `f` with roots and siblings sorted by `cmp`.
pub(crate) fn forest_lex(f: &RootedForest, cmp: &dyn Fn(usize, usize) -> Ordering) -> Vec<usize> {
    let mut roots = f.roots();
    roots.sort_by(|&a, &b| cmp(a, b));
    let mut out = Vec::with_capacity(f.n());
    let mut stack: Vec<usize> = roots.into_iter().rev().collect();
    while let Some(v) = stack.pop() {
        out.push(v);
        let mut kids = f.children(v);
        kids.sort_by(|&a, &b| cmp(a, b));
        stack.extend(kids.into_iter().rev());
    }
    out
}

/// Ceil order: vertices in `vertex_order`, then edges by (lower endpoint,
/// higher endpoint) under that order.
pub(crate) fn ceil_order(g: &Graph, vertex_order: &[usize]) -> Vec<Element> {
    let mut rank = vec![0; g.n()];
    for (i, &v) in vertex_order.iter().enumerate() {
        rank[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| if rank[u] < rank[v] { (rank[u], rank[v]) } else { (rank[v], rank[u]) })
        .collect();
    edges.sort_unstable();
    vertex_order
        .iter()
        .map(|&v| Element::Vertex(v))
        .chain(edges.into_iter().map(|(a, b)| Element::edge(vertex_order[a], vertex_order[b])))
        .collect()
}

pub(crate) fn vertices(vs: impl IntoIterator<Item = usize>) -> Vec<Element> {
    let mut out: Vec<Element> = vs.into_iter().map(Element::Vertex).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn edges(es: impl IntoIterator<Item = (usize, usize)>) -> Vec<Element> {
    let mut out: Vec<Element> = es.into_iter().map(|(u, v)| Element::edge(u, v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The `k`-th bit of `i`, false past the width of `usize`.
pub(crate) fn bit(i: usize, k: usize) -> bool {
    k < usize::BITS as usize && i >> k & 1 == 1
}

/// Order on indices whose lowest differing bit decides: `i` first when
/// that bit is set in `i`.
pub(crate) fn low_bit_cmp(i: usize, j: usize) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let p = (i ^ j).trailing_zeros() as usize;
    if bit(i, p) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Sibling order of the forest schemes: the shallowest vertex of the
/// symmetric difference of the two key sets decides, in favour of the side
/// holding it; equal keys fall back to `index`.
pub(crate) fn sibling_cmp(f: &RootedForest, keys: &[Vec<usize>], index: &[usize], u: usize, v: usize) -> Ordering {
    let (ku, kv) = (&keys[u], &keys[v]);
    let first = ku
        .iter()
        .filter(|w| !kv.contains(w))
        .chain(kv.iter().filter(|w| !ku.contains(w)))
        .min_by_key(|&&w| f.depth(w));
    match first {
        Some(w) if ku.contains(w) => Ordering::Less,
        Some(_) => Ordering::Greater,
        None => index[u].cmp(&index[v]).then(u.cmp(&v)),
    }
}

/// Groups of siblings with equal keys, roots forming one sibling group.
pub(crate) fn sibling_classes(f: &RootedForest, keys: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<(Option<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..f.n() {
        let mut k = keys[v].clone();
        k.sort_unstable();
        groups.entry((f.parent(v), k)).or_default().push(v);
    }
    groups.into_values().collect()
}

pub(crate) fn trace_field<T: serde::de::DeserializeOwned>(cert: &OrderCertificate, name: &str) -> std::result::Result<T, String> {
    let value = cert.trace.get(name).ok_or_else(|| format!("trace has no `{name}`"))?;
    serde_json::from_value(value.clone()).map_err(|e| format!("trace field `{name}`: {e}"))
}

pub(crate) fn forest_edges(f: &RootedForest) -> Vec<Element> {
    edges((0..f.n()).filter_map(|v| f.parent(v).map(|p| (p, v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(json, format!("\"{}\"", s.name()));
        }
        assert_eq!("tree".parse::<Scheme>().unwrap(), Scheme::TreeBoundedDegree);
        assert!("lattice".parse::<Scheme>().is_err());
    }

    #[test]
    fn low_bit_order() {
        let mut v: Vec<usize> = (0..4).collect();
        v.sort_by(|&a, &b| low_bit_cmp(a, b));
        assert_eq!(v, vec![3, 1, 2, 0]);
    }

    #[test]
    fn broken_certificates_are_rejected() {
        let g = generate(&FamilySpec::Path(3)).unwrap();
        let b = Budget::default();
        let good = order_tree_bounded_degree(&g, 2, &b).unwrap();
        assert!(good.verified);
        let mut dup = good.clone();
        dup.order[1] = dup.order[0];
        assert!(!verify_certificate(&g, &dup, &b).unwrap().ok);
        let mut short = good.clone();
        short.order.pop();
        assert!(!verify_certificate(&g, &short, &b).unwrap().ok);
        let mut swapped = good.clone();
        swapped.order.swap(0, 2);
        assert!(!verify_certificate(&g, &swapped, &b).unwrap().ok);
        let mut outside = good.clone();
        outside.params.insert("P0".into(), vec![Element::Vertex(9)]);
        assert!(!verify_certificate(&g, &outside, &b).unwrap().ok);
        let mut no_formula = good;
        no_formula.formula = None;
        assert!(!verify_certificate(&g, &no_formula, &b).unwrap().ok);
    }

    #[test]
    fn json_round_trip() {
        let g = generate(&FamilySpec::CompleteBipartite(1, 3)).unwrap();
        let c = order_tree_bounded_degree(&g, 3, &Budget::default()).unwrap();
        let back = OrderCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"v:0\""));
    }
}
