use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families accepted by [`generate`].
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Clique(usize),
    Edgeless(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// Part sizes in the order given; parts occupy consecutive id ranges.
    CompleteMultipartite(Vec<usize>),
    /// Closure of the tree of words of length at most `height` whose letter
    /// at position `i` is below `branching[i]`.
    TreeClosure { height: usize, branching: Vec<usize> },
    /// The graph `H_p` built from `[p]` and the permutations of `[p]`.
    Hp(usize),
    /// `G(n, prob)` drawn from ChaCha8 seeded with `seed`; pairs `(u, v)`,
    /// `u < v`, are visited in lexicographic order.
    Random { n: usize, prob: f64, seed: u64 },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Clique(n) => Ok(clique(*n)),
        FamilySpec::Edgeless(n) => Ok(Graph::new(*n)),
        FamilySpec::Path(n) => Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i))),
        FamilySpec::Cycle(n) => {
            if *n < 3 {
                return Err(Error::input(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        FamilySpec::CompleteBipartite(a, b) => Ok(complete_multipartite(&[*a, *b])),
        FamilySpec::CompleteMultipartite(parts) => Ok(complete_multipartite(parts)),
        FamilySpec::TreeClosure { height, branching } => tree_closure(*height, branching),
        FamilySpec::Hp(p) => hp(*p),
        FamilySpec::Random { n, prob, seed } => random(*n, *prob, *seed),
    }
}

fn clique(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Words of the tree in lexicographic order; a vertex's id is its position.
pub fn tree_closure_words(height: usize, branching: &[usize]) -> Result<Vec<Vec<usize>>> {
    if branching.len() < height {
        return Err(Error::input(format!(
            "branching list has {} entries, height is {height}",
            branching.len()
        )));
    }
    let mut words = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() < height {
            for i in (0..branching[w.len()]).rev() {
                let mut child = w.clone();
                child.push(i);
                stack.push(child);
            }
        }
        words.push(w);
    }
    Ok(words)
}

fn tree_closure(height: usize, branching: &[usize]) -> Result<Graph> {
    let words = tree_closure_words(height, branching)?;
    let mut g = Graph::new(words.len());
    // In preorder the ancestors of a word are exactly the open stack entries.
    let mut path: Vec<usize> = Vec::new();
    for (id, w) in words.iter().enumerate() {
        path.truncate(w.len());
        for &anc in &path {
            g.add_edge(anc, id);
        }
        path.push(id);
    }
    Ok(g)
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

/// Advances to the next permutation in lexicographic order; false after the last.
pub fn next_permutation<T: Ord>(cur: &mut [T]) -> bool {
    let p = cur.len();
    let Some(i) = (1..p).rev().find(|&i| cur[i - 1] < cur[i]) else {
        return false;
    };
    let j = (i..p).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
    cur.swap(i - 1, j);
    cur[i..].reverse();
    true
}

fn factorial(p: usize) -> usize {
    (1..=p).product()
}

/// Id of a vertex of `H_p`: `None` is the apex, `Some((i, None))` is `i` in
/// `[p]`, and `Some((i, Some(rank)))` is the pair `(i, σ)` where `σ` is the
/// permutation of lexicographic rank `rank`.
pub fn hp_vertex(p: usize, v: Option<(usize, Option<usize>)>) -> usize {
    match v {
        None => 0,
        Some((i, None)) => 1 + i,
        Some((i, Some(rank))) => 1 + p + i * factorial(p) + rank,
    }
}

fn hp(p: usize) -> Result<Graph> {
    if p > 5 {
        return Err(Error::input(format!("H_p is generated for p <= 5, got {p}")));
    }
    let perms = permutations(p);
    let n = 1 + p + p * perms.len();
    let mut g = Graph::new(n);
    if p == 0 {
        return Ok(g);
    }
    let id = |v| hp_vertex(p, v);
    g.add_edge(id(None), id(Some((0, None))));
    for (rank, sigma) in perms.iter().enumerate() {
        g.add_edge(id(None), id(Some((0, Some(rank)))));
        for i in 0..p {
            if i + 1 < p {
                g.add_edge(id(Some((i, Some(rank)))), id(Some((i + 1, Some(rank)))));
            }
            g.add_edge(id(Some((i, None))), id(Some((sigma[i], Some(rank)))));
        }
    }
    for i in 0..p.saturating_sub(1) {
        g.add_edge(id(Some((i, None))), id(Some((i + 1, None))));
    }
    Ok(g)
}

fn random(n: usize, prob: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::input(format!("edge probability {prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(generate(&FamilySpec::Clique(4)).unwrap().edge_count(), 6);
        assert_eq!(generate(&FamilySpec::Path(4)).unwrap().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(generate(&FamilySpec::Cycle(4)).unwrap().edge_count(), 4);
        assert!(generate(&FamilySpec::Cycle(2)).is_err());
        let k23 = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(!k23.has_edge(0, 1) && !k23.has_edge(2, 4));
    }

    #[test]
    fn tree_closure_of_binary_height_two() {
        let g = generate(&FamilySpec::TreeClosure { height: 2, branching: vec![2, 2] }).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 10);
        // root, (0), (0,0), (0,1), (1), (1,0), (1,1)
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3) && !g.has_edge(1, 5));
        assert!(generate(&FamilySpec::TreeClosure { height: 3, branching: vec![2] }).is_err());
    }

    #[test]
    fn hp_two() {
        let g = generate(&FamilySpec::Hp(2)).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(0), 1 + 2);
        // identity: 0-(0,id), 1-(1,id); swap: 0-(1,sw), 1-(0,sw)
        let pair = |i, r| hp_vertex(2, Some((i, Some(r))));
        let lvl = |i| hp_vertex(2, Some((i, None)));
        assert!(g.has_edge(lvl(0), pair(0, 0)) && g.has_edge(lvl(1), pair(1, 0)));
        assert!(g.has_edge(lvl(0), pair(1, 1)) && g.has_edge(lvl(1), pair(0, 1)));
        assert!(g.has_edge(pair(0, 1), pair(1, 1)) && g.has_edge(lvl(0), lvl(1)));
        assert_eq!(g.edge_count(), 1 + 2 + 1 + 2 + 4);
    }

    #[test]
    fn hp_apex_degree_is_one_plus_factorial() {
        for p in 1..=4 {
            let g = generate(&FamilySpec::Hp(p)).unwrap();
            assert_eq!(g.n(), 1 + p + p * factorial(p));
            assert_eq!(g.degree(0), 1 + factorial(p));
        }
        assert!(generate(&FamilySpec::Hp(6)).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = generate(&FamilySpec::Random { n: 9, prob: 0.4, seed: 7 }).unwrap();
        let b = generate(&FamilySpec::Random { n: 9, prob: 0.4, seed: 7 }).unwrap();
        assert_eq!(a, b);
        assert!(generate(&FamilySpec::Random { n: 3, prob: 1.5, seed: 0 }).is_err());
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
