use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A split of `G` into `parts.len()` labelled parts joined by one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    pub k: usize,
    pub labeling: Vec<usize>,
    /// Pairs `(a, b)` with `a ≤ b`; the relation is their symmetric closure.
    pub relation: Vec<(usize, usize)>,
    pub parts: Vec<Vec<usize>>,
}

impl CutWitness {
    fn related(&self, a: usize, b: usize) -> bool {
        let p = (a.min(b), a.max(b));
        self.relation.contains(&p)
    }

    /// Checks that the parts partition the vertices and that every edge
    /// between parts is exactly what the relation predicts.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.labeling.len() != n || self.labeling.iter().any(|&l| l >= self.k) {
            return false;
        }
        if self.relation.iter().any(|&(a, b)| a > b || b >= self.k) {
            return false;
        }
        let mut part_of = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            if p.is_empty() {
                return false;
            }
            for &v in p {
                if v >= n || part_of[v] != usize::MAX {
                    return false;
                }
                part_of[v] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return false;
        }
        (0..n).all(|u| {
            (u + 1..n).all(|v| {
                part_of[u] == part_of[v] || g.has_edge(u, v) == self.related(self.labeling[u], self.labeling[v])
            })
        })
    }
}

fn check_budget(g: &Graph, k: usize, budget: &Budget) -> Result<()> {
    if g.n() > budget.cut_max_n || k > budget.cut_max_k {
        return Err(Error::budget(format!(
            "cut over n={}, k={k} exceeds the limits n ≤ {}, k ≤ {}",
            g.n(),
            budget.cut_max_n,
            budget.cut_max_k
        )));
    }
    if g.n() > 64 {
        return Err(Error::budget("cut works on at most 64 vertices"));
    }
    Ok(())
}

/// Largest number of parts over all labelings with at most `k` labels.
pub fn cut(g: &Graph, k: usize, budget: &Budget) -> Result<usize> {
    Ok(cut_witness(g, k, budget)?.map_or(0, |w| w.parts.len()))
}

/// A witness attaining the maximum; `None` for the empty graph.
///
/// Labelings are enumerated in first-occurrence canonical form and the
/// first maximum found is returned.
pub fn cut_witness(g: &Graph, k: usize, budget: &Budget) -> Result<Option<CutWitness>> {
    check_budget(g, k, budget)?;
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    if k == 0 {
        return Err(Error::input("cut needs at least one label"));
    }
    let adj = g.masks().expect("at most 64 vertices");
    let mut best: Option<(usize, Vec<usize>, u64, usize)> = None;
    let mut labels = vec![0usize; n];
    let mut search = Search { n, k, adj: &adj, best: &mut best };
    search.labelings(&mut labels, 1, 1);
    let (count, labeling, rbits, used) = best.expect("one part is always possible");
    let relation = pair_list(used).into_iter().enumerate().filter(|(i, _)| rbits >> i & 1 == 1).map(|(_, p)| p).collect();
    let parts = conflict_parts(&adj, &labeling, rbits, used);
    debug_assert_eq!(parts.len(), count);
    Ok(Some(CutWitness { k, labeling, relation, parts }))
}

fn pair_list(used: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..used {
        for b in a..used {
            out.push((a, b));
        }
    }
    out
}

fn pair_index(a: usize, b: usize, used: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * used - a * a.saturating_sub(1) / 2 + (b - a)
}

struct Search<'a> {
    n: usize,
    k: usize,
    adj: &'a [u64],
    best: &'a mut Option<(usize, Vec<usize>, u64, usize)>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.as_ref().is_some_and(|b| b.0 == self.n)
    }

    fn labelings(&mut self, labels: &mut Vec<usize>, i: usize, used: usize) {
        if self.done() {
            return;
        }
        if i == self.n {
            self.relations(labels, used);
            return;
        }
        for l in 0..(used + 1).min(self.k) {
            labels[i] = l;
            self.labelings(labels, i + 1, used.max(l + 1));
        }
    }

    fn relations(&mut self, labels: &[usize], used: usize) {
        let mut by_label = vec![0u64; used];
        for (v, &l) in labels.iter().enumerate() {
            by_label[l] |= 1 << v;
        }
        let pairs = used * (used + 1) / 2;
        for rbits in 0..1u64 << pairs {
            let c = count_components(self.adj, labels, &by_label, rbits, used);
            if self.best.as_ref().is_none_or(|b| c > b.0) {
                *self.best = Some((c, labels.to_vec(), rbits, used));
                if c == self.n {
                    return;
                }
            }
        }
    }
}

fn conflict_rows(adj: &[u64], labels: &[usize], by_label: &[u64], rbits: u64, used: usize) -> Vec<u64> {
    let n = adj.len();
    let mut pred_by_label = vec![0u64; used];
    for a in 0..used {
        for b in 0..used {
            if rbits >> pair_index(a, b, used) & 1 == 1 {
                pred_by_label[a] |= by_label[b];
            }
        }
    }
    (0..n).map(|u| (adj[u] ^ pred_by_label[labels[u]]) & !(1u64 << u)).collect()
}

fn count_components(adj: &[u64], labels: &[usize], by_label: &[u64], rbits: u64, used: usize) -> usize {
    let rows = conflict_rows(adj, labels, by_label, rbits, used);
    components(&rows).len()
}

fn components(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut left: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = rows[v] & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

fn conflict_parts(adj: &[u64], labels: &[usize], rbits: u64, used: usize) -> Vec<Vec<usize>> {
    let mut by_label = vec![0u64; used];
    for (v, &l) in labels.iter().enumerate() {
        by_label[l] |= 1 << v;
    }
    let rows = conflict_rows(adj, labels, &by_label, rbits, used);
    components(&rows)
        .into_iter()
        .map(|m| (0..adj.len()).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}
