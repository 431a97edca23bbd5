use fixedbitset::FixedBitSet;

use crate::mso::{Encoding, Structure};

/// Finds two elements whose exchange is an automorphism of `s` fixing every
/// parameter set and every unary predicate.
///
/// In a ceil encoding the candidates are pairs of vertices, and exchanging
/// `u` and `v` also exchanges each edge `ux` with the edge `vx`. Otherwise
/// the candidates are plain transpositions of elements.
pub fn twin_pair_under_params(s: &Structure, params: &[FixedBitSet]) -> Option<(usize, usize)> {
    let candidates = match s.encoding() {
        Encoding::Ceil => s.vertex_count(),
        Encoding::Floor => s.size(),
    };
    for a in 0..candidates {
        for b in a + 1..candidates {
            if let Some(perm) = twin_permutation(s, a, b) {
                if is_automorphism(s, &perm, params) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// The permutation of the universe induced by exchanging `a` and `b`.
///
/// `None` in a ceil encoding when the exchange does not map edges to edges.
pub fn twin_permutation(s: &Structure, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut perm: Vec<usize> = (0..s.size()).collect();
    perm.swap(a, b);
    if s.encoding() == Encoding::Ceil {
        let n = s.vertex_count();
        if a >= n || b >= n {
            return None;
        }
        let swap = |x: usize| if x == a { b } else if x == b { a } else { x };
        for i in n..s.size() {
            let (u, v) = s.endpoints(i)?;
            let image = crate::mso::Element::edge(swap(u), swap(v));
            perm[i] = s.index_of(&image).ok()?;
        }
    }
    Some(perm)
}

/// Whether `perm` preserves every relation, predicate and parameter set.
pub fn is_automorphism(s: &Structure, perm: &[usize], params: &[FixedBitSet]) -> bool {
    let size = s.size();
    if perm.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    let set_fixed = |set: &FixedBitSet| (0..size).all(|x| set.contains(x) == set.contains(perm[x]));
    if !params.iter().all(set_fixed) || !s.predicates().all(|(_, set)| set_fixed(set)) {
        return false;
    }
    s.relation_names().all(|name| {
        let rows = s.relation(name).unwrap();
        (0..size).all(|x| (0..size).all(|y| rows[x].contains(y) == rows[perm[x]].contains(perm[y])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn k23_without_parameters() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Ceil);
        assert_eq!(twin_pair_under_params(&s, &[]), Some((0, 1)));
    }

    #[test]
    fn parameters_can_break_all_symmetry() {
        // Path 0-1-2 in the floor encoding: only 0 and 2 are exchangeable.
        let g = generate(&FamilySpec::Path(3)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Floor);
        assert_eq!(twin_pair_under_params(&s, &[]), Some((0, 2)));
        let p = s.element_set(&[0]).unwrap();
        assert_eq!(twin_pair_under_params(&s, &[p]), None);
    }

    #[test]
    fn edge_parameters_matter_in_ceil() {
        let g = generate(&FamilySpec::CompleteBipartite(1, 2)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Ceil);
        let e = s.lookup("e:0-1").unwrap();
        let p = s.element_set(&[e]).unwrap();
        assert_eq!(twin_pair_under_params(&s, &[p]), None);
    }

    #[test]
    fn swap_of_adjacent_twins_fixes_their_edge() {
        let g = generate(&FamilySpec::Clique(3)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Ceil);
        let perm = twin_permutation(&s, 0, 1).unwrap();
        let e01 = s.lookup("e:0-1").unwrap();
        assert_eq!(perm[e01], e01);
        assert_eq!(perm[s.lookup("e:0-2").unwrap()], s.lookup("e:1-2").unwrap());
    }
}
