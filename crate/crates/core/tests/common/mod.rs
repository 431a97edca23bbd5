//! Reference implementations and corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use msord::graph::Graph;
use msord::mso::{Formula, Structure};
use rand::seq::SliceRandom;
use rand::Rng;

/// Unordered pairs of `[n]` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let p = pairs(n);
    (0u64..1 << p.len()).map(move |mask| {
        Graph::from_edges(n, p.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, prob: f64) -> Graph {
    Graph::from_edges(n, pairs(n).into_iter().filter(|_| rng.gen_bool(prob))).unwrap()
}

/// `g` with vertex `v` renamed to `perm[v]`.
pub fn permute(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Whether some vertex set of size at least 4 induces a cycle, i.e. some
/// long cycle has no chord.
pub fn has_chordless_long_cycle(g: &Graph) -> bool {
    subsets(g.n()).filter(|s| s.len() >= 4).any(|s| {
        let deg = |v: usize| s.iter().filter(|&&u| g.has_edge(u, v)).count();
        if !s.iter().all(|&v| deg(v) == 2) {
            return false;
        }
        // 2-regular; a cycle exactly when connected.
        let mut seen = vec![s[0]];
        let mut stack = vec![s[0]];
        while let Some(v) = stack.pop() {
            for &u in &s {
                if g.has_edge(u, v) && !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == s.len()
    })
}

/// Whether `g` has an induced path on four vertices.
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    if (0..4).any(|i| (i + 1..4).any(|j| vs[i] == vs[j])) || a > d {
                        continue;
                    }
                    if g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(c, d)
                        && !g.has_edge(a, c)
                        && !g.has_edge(b, d)
                        && !g.has_edge(a, d)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Direct recursive evaluation of a formula; a reference for the
/// optimized evaluator.
pub struct Naive<'a> {
    pub s: &'a Structure,
    pub ind: HashMap<String, usize>,
    pub sets: HashMap<String, Vec<bool>>,
}

impl<'a> Naive<'a> {
    pub fn new(s: &'a Structure) -> Self {
        Naive { s, ind: HashMap::new(), sets: HashMap::new() }
    }

    pub fn with_set(mut self, name: &str, members: &FixedBitSet) -> Self {
        self.sets.insert(name.into(), (0..self.s.size()).map(|i| members.contains(i)).collect());
        self
    }

    pub fn with_individual(mut self, name: &str, e: usize) -> Self {
        self.ind.insert(name.into(), e);
        self
    }

    pub fn eval(&mut self, f: &Formula) -> bool {
        use Formula::*;
        match f {
            And(fs) => fs.iter().all(|g| self.eval(g)),
            Or(fs) => fs.iter().any(|g| self.eval(g)),
            Not(g) => !self.eval(g),
            Implies(a, b) => !self.eval(a) || self.eval(b),
            Iff(a, b) => self.eval(a) == self.eval(b),
            Forall(v, g) => self.bind(v, g, true),
            Exists(v, g) => self.bind(v, g, false),
            ForallSet(v, g) => self.bind_set(v, g, true),
            ExistsSet(v, g) => self.bind_set(v, g, false),
            Eq(a, b) => self.ind[a] == self.ind[b],
            Edg(a, b) => self.s.holds("edg", self.ind[a], self.ind[b]),
            Inc(a, b) => self.s.holds("inc", self.ind[a], self.ind[b]),
            In(a, x) => self.sets[x][self.ind[a]],
            Card(q, x) => self.sets[x].iter().filter(|&&b| b).count() % *q as usize == 0,
            Pred(p, a) => self.s.predicate(p).is_some_and(|set| set.contains(self.ind[a])),
        }
    }

    fn bind(&mut self, v: &str, body: &Formula, all: bool) -> bool {
        let saved = self.ind.get(v).copied();
        let mut result = all;
        for e in 0..self.s.size() {
            self.ind.insert(v.into(), e);
            if self.eval(body) != all {
                result = !all;
                break;
            }
        }
        match saved {
            Some(e) => self.ind.insert(v.into(), e),
            None => self.ind.remove(v),
        };
        result
    }

    fn bind_set(&mut self, v: &str, body: &Formula, all: bool) -> bool {
        let n = self.s.size();
        let saved = self.sets.get(v).cloned();
        let mut result = all;
        for m in 0u64..1 << n {
            self.sets.insert(v.into(), (0..n).map(|i| m >> i & 1 == 1).collect());
            if self.eval(body) != all {
                result = !all;
                break;
            }
        }
        match saved {
            Some(s) => self.sets.insert(v.into(), s),
            None => self.sets.remove(v),
        };
        result
    }
}

pub const INDIVIDUALS: [&str; 3] = ["x", "y", "z"];
pub const SETS: [&str; 2] = ["X", "Y"];

/// Random formula of depth at most `depth` over the variables above and
/// the predicate `P`; variables may occur free and may be rebound.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    let ind = |rng: &mut R| INDIVIDUALS[rng.gen_range(0..INDIVIDUALS.len())].to_string();
    let set = |rng: &mut R| SETS[rng.gen_range(0..SETS.len())].to_string();
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Formula::Eq(ind(rng), ind(rng)),
            1 => Formula::Edg(ind(rng), ind(rng)),
            2 => Formula::Inc(ind(rng), ind(rng)),
            3 => Formula::In(ind(rng), set(rng)),
            4 => Formula::Card(rng.gen_range(2..4), set(rng)),
            _ => Formula::Pred("P".into(), ind(rng)),
        };
    }
    let sub = |rng: &mut R| Box::new(random_formula(rng, depth - 1));
    match rng.gen_range(0..9) {
        0 => Formula::And(vec![*sub(rng), *sub(rng)]),
        1 => Formula::Or(vec![*sub(rng), *sub(rng)]),
        2 => Formula::Not(sub(rng)),
        3 => Formula::Implies(sub(rng), sub(rng)),
        4 => Formula::Iff(sub(rng), sub(rng)),
        5 => Formula::Forall(ind(rng), sub(rng)),
        6 => Formula::Exists(ind(rng), sub(rng)),
        7 => Formula::ForallSet(set(rng), sub(rng)),
        _ => Formula::ExistsSet(set(rng), sub(rng)),
    }
}
