mod common;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use msord::decomposition::{cotree, cut, cut_witness, CutWitness};
use msord::graph::{are_isomorphic, cograph_from_coterm, complement, generate, CoTerm, FamilySpec, Graph};
use msord::measures::{is_r_sparse, sep};
use msord::Budget;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn flatten_join(times: bool, a: &CoTerm, b: &CoTerm) -> CoTerm {
    let mut kids = Vec::new();
    for t in [a, b] {
        match (t, times) {
            (CoTerm::Times(c), true) | (CoTerm::Plus(c), false) => kids.extend(c.iter().cloned()),
            _ => kids.push(t.clone()),
        }
    }
    if times { CoTerm::Times(kids) } else { CoTerm::Plus(kids) }.canonical()
}

fn cograph_terms(max_n: usize) -> Vec<Vec<CoTerm>> {
    let mut by_n: Vec<BTreeSet<CoTerm>> = vec![BTreeSet::new(); max_n + 1];
    by_n[1].insert(CoTerm::Leaf);
    for n in 2..=max_n {
        let mut set = BTreeSet::new();
        for a in 1..=n / 2 {
            for x in &by_n[a] {
                for y in &by_n[n - a] {
                    set.insert(flatten_join(false, x, y));
                    set.insert(flatten_join(true, x, y));
                }
            }
        }
        by_n[n] = set;
    }
    by_n.into_iter().map(|s| s.into_iter().collect()).collect()
}

#[test]
fn cut_is_invariant_under_complement() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let corpus = (0..=5).flat_map(all_graphs).chain((0..30).map(|_| random_graph(&mut rng, 7, 0.5)));
    for g in corpus {
        let h = complement(&g);
        for k in 1..=2 {
            assert_eq!(cut(&g, k, &b).unwrap(), cut(&h, k, &b).unwrap(), "{:?} k={k}", g.edges());
        }
    }
}

#[test]
fn cut_bounds_sep_on_every_small_graph() {
    let b = Budget::default();
    for g in (1..=5).flat_map(all_graphs) {
        let c3 = cut(&g, 3, &b).unwrap();
        assert!(sep(&g, 0, &b).unwrap().value <= cut(&g, 1, &b).unwrap());
        for v in 0..g.n() {
            let mut s = FixedBitSet::with_capacity(g.n());
            s.insert(v);
            assert!(g.components_without(&s) < c3, "{:?} without {v}", g.edges());
        }
    }
}

#[test]
fn cotree_does_not_depend_on_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in cograph_terms(7).iter().flatten() {
        let g = cograph_from_coterm(t).unwrap();
        let h = permute(&g, &random_permutation(&mut rng, g.n()));
        assert_eq!(cotree(&g).unwrap().term.canonical(), cotree(&h).unwrap().term.canonical());
        assert_eq!(cotree(&g).unwrap().term.canonical(), *t);
    }
}

#[test]
fn cotree_round_trip_up_to_ten_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let terms = cograph_terms(10);
    assert_eq!(terms[8].len(), 522);
    assert_eq!(terms[10].len(), 4624);
    for t in terms.iter().flatten() {
        let g = cograph_from_coterm(t).unwrap();
        let g = permute(&g, &random_permutation(&mut rng, g.n()));
        let ct = cotree(&g).unwrap();
        let h = cograph_from_coterm(&ct.term).unwrap();
        assert_eq!(permute(&h, &ct.leaves), g);
        if g.n() <= 7 {
            assert!(are_isomorphic(&h, &g));
        }
    }
}

#[test]
fn cut_exceeds_every_cotree_outdegree() {
    let b = Budget::default();
    for t in cograph_terms(8).iter().flatten() {
        let g = cograph_from_coterm(t).unwrap();
        assert!(cut(&g, 3, &b).unwrap() >= t.max_outdegree(), "{t}");
    }
}

#[test]
fn sparse_sep_bound_fails_pointwise_on_triangle() {
    // K_3 is 2-sparse, yet one label splits it into three parts while no
    // vertex removal yields more than one component.
    let b = Budget::default();
    let k3 = generate(&FamilySpec::Clique(3)).unwrap();
    assert!(is_r_sparse(&k3, Ratio::from_integer(2), &b).unwrap().sparse);
    assert_eq!(cut(&k3, 1, &b).unwrap(), 3);
    assert_eq!(sep(&k3, 20, &b).unwrap().value, 1);
}

/// The separator built in the sparse-SEP-implies-CUT argument.
fn proof_separator(w: &CutWitness, r: usize) -> Vec<usize> {
    let d = w.parts.len();
    let mut class = vec![vec![Vec::new(); w.k]; d];
    for (i, p) in w.parts.iter().enumerate() {
        for &v in p {
            class[i][w.labeling[v]].push(v);
        }
    }
    let occupied = |a: usize| (0..d).filter(|&i| !class[i][a].is_empty()).count();
    let mut s = BTreeSet::new();
    for &(x, y) in &w.relation {
        for a in [x, y] {
            if occupied(a) <= 2 * r + 1 {
                for c in class.iter().map(|c| &c[a]).filter(|c| !c.is_empty() && c.len() <= 2 * r) {
                    s.extend(c.iter().copied());
                }
            }
        }
    }
    s.into_iter().collect()
}

#[test]
fn sparse_sep_argument_holds_with_parts_inside_the_separator() {
    let b = Budget::default();
    let r = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tried = 0;
    while tried < 200 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.9);
        let g: Graph = random_graph(&mut rng, n, p);
        if !is_r_sparse(&g, Ratio::from_integer(r as u64), &b).unwrap().sparse {
            continue;
        }
        tried += 1;
        for k in 1..=2 {
            let Some(w) = cut_witness(&g, k, &b).unwrap() else { continue };
            let s = proof_separator(&w, r);
            assert!(s.len() <= 2 * k * k * r * (2 * r + 1));
            let mut removed = FixedBitSet::with_capacity(n);
            for &v in &s {
                removed.insert(v);
            }
            let inside = w.parts.iter().filter(|p| p.iter().all(|v| removed.contains(*v))).count();
            assert!(
                w.parts.len() <= g.components_without(&removed) + inside,
                "{:?} k={k} S={s:?}",
                g.edges()
            );
        }
    }
}
