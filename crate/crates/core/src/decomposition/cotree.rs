use serde::Serialize;

use crate::graph::{complement, connected_components, induced_subgraph, CoTerm, Graph};

/// A cotree together with the vertex at each leaf, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotree {
    pub term: CoTerm,
    pub leaves: Vec<usize>,
}

/// The cotree of `g`, or `None` when `g` is empty or not a cograph.
///
/// Children of a node are ordered by their least vertex.
pub fn cotree(g: &Graph) -> Option<Cotree> {
    if g.n() == 0 {
        return None;
    }
    let ids: Vec<usize> = (0..g.n()).collect();
    build(g, &ids)
}

fn build(g: &Graph, ids: &[usize]) -> Option<Cotree> {
    if g.n() == 1 {
        return Some(Cotree { term: CoTerm::Leaf, leaves: vec![ids[0]] });
    }
    let comps = connected_components(g);
    let (comps, times) = if comps.len() > 1 {
        (comps, false)
    } else {
        let co = connected_components(&complement(g));
        if co.len() == 1 {
            return None;
        }
        (co, true)
    };
    let mut kids = Vec::with_capacity(comps.len());
    let mut leaves = Vec::with_capacity(g.n());
    for comp in comps {
        let (sub, map) = induced_subgraph(g, &comp).expect("component vertices are in range");
        let sub_ids: Vec<usize> = map.iter().map(|&v| ids[v]).collect();
        let child = build(&sub, &sub_ids)?;
        kids.push(child.term);
        leaves.extend(child.leaves);
    }
    let term = if times { CoTerm::Times(kids) } else { CoTerm::Plus(kids) };
    Some(Cotree { term, leaves })
}

/// Height and largest child count of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CotreeStats {
    pub depth: usize,
    pub max_outdegree: usize,
}

pub fn cotree_stats(t: &CoTerm) -> CotreeStats {
    CotreeStats { depth: t.depth(), max_outdegree: t.max_outdegree() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cograph_from_coterm, generate, parse_coterm, FamilySpec};

    #[test]
    fn k23_term() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let t = cotree(&g).unwrap();
        assert_eq!(t.term, parse_coterm("(1 + 1) * (1 + 1 + 1)").unwrap());
        assert_eq!(t.leaves, vec![0, 1, 2, 3, 4]);
        assert_eq!(cotree_stats(&t.term), CotreeStats { depth: 2, max_outdegree: 3 });
    }

    #[test]
    fn leaves_and_cliques() {
        let one = cotree(&Graph::new(1)).unwrap();
        assert_eq!(one.term, CoTerm::Leaf);
        assert_eq!(cotree_stats(&one.term), CotreeStats { depth: 0, max_outdegree: 0 });
        let k5 = cotree(&generate(&FamilySpec::Clique(5)).unwrap()).unwrap();
        assert_eq!(cotree_stats(&k5.term), CotreeStats { depth: 1, max_outdegree: 5 });
        assert!(cotree(&Graph::new(0)).is_none());
    }

    #[test]
    fn p4_is_not_a_cograph() {
        assert!(cotree(&generate(&FamilySpec::Path(4)).unwrap()).is_none());
        assert!(cotree(&generate(&FamilySpec::Cycle(5)).unwrap()).is_none());
    }

    #[test]
    fn leaf_map_is_an_isomorphism() {
        // 0-2 joined, 1 and 3 isolated from each other but joined to 0 and 2: K_{2} * (1 + 1) relabelled.
        let g = Graph::from_edges(4, [(0, 2), (0, 1), (0, 3), (2, 1), (2, 3)]).unwrap();
        let t = cotree(&g).unwrap();
        assert!(t.term.is_cotree());
        let h = cograph_from_coterm(&t.term).unwrap();
        for (i, &u) in t.leaves.iter().enumerate() {
            for (j, &v) in t.leaves.iter().enumerate() {
                if i != j {
                    assert_eq!(h.has_edge(i, j), g.has_edge(u, v));
                }
            }
        }
    }
}
