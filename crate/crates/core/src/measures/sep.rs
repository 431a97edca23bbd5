use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::Graph;

/// Value of `Sep(G, k)` together with a separator attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SepResult {
    pub value: usize,
    /// Lexicographically least maximising set, as a sorted vertex list.
    pub witness: Vec<usize>,
}

/// Largest number of components of `G - S` over all `S` with `|S| <= k`.
///
/// Candidate sets are visited in lexicographic order of their sorted
/// vertex lists, so the first maximiser found is the reported witness.
pub fn sep(g: &Graph, k: usize, budget: &Budget) -> Result<SepResult> {
    budget.check_sep(g.n(), k)?;
    let k = k.min(g.n());
    let mut best = SepResult { value: 0, witness: Vec::new() };
    let mut first = true;
    let mut current = Vec::with_capacity(k);
    match g.masks() {
        Some(adj) => {
            let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
            let mut visit = |set: &[usize]| {
                let removed = set.iter().fold(0u64, |m, &v| m | (1 << v));
                let c = components_masked(&adj, all & !removed);
                if first || c > best.value {
                    first = false;
                    best = SepResult { value: c, witness: set.to_vec() };
                }
            };
            walk(g.n(), k, 0, &mut current, &mut visit);
        }
        None => {
            let mut visit = |set: &[usize]| {
                let mut removed = FixedBitSet::with_capacity(g.n());
                for &v in set {
                    removed.insert(v);
                }
                let c = g.components_without(&removed);
                if first || c > best.value {
                    first = false;
                    best = SepResult { value: c, witness: set.to_vec() };
                }
            };
            walk(g.n(), k, 0, &mut current, &mut visit);
        }
    }
    Ok(best)
}

fn walk(n: usize, k: usize, from: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    visit(current);
    if current.len() == k {
        return;
    }
    for v in from..n {
        current.push(v);
        walk(n, k, v + 1, current, visit);
        current.pop();
    }
}

/// Components of the subgraph induced by `alive`.
pub(crate) fn components_masked(adj: &[u64], mut alive: u64) -> usize {
    let mut count = 0;
    while alive != 0 {
        count += 1;
        let mut comp = alive & alive.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                grow |= adj[v];
            }
            grow &= alive & !comp;
            comp |= grow;
            frontier = grow;
        }
        alive &= !comp;
    }
    count
}

/// Closed form for complete multipartite graphs: with parts sorted so that
/// `m0` is largest and `rest` the sum of the others, the value is `m0` once
/// `k >= rest` and `1` before that.
pub fn sep_complete_multipartite(parts: &[usize], k: usize) -> usize {
    let parts: Vec<usize> = parts.iter().copied().filter(|&m| m > 0).collect();
    let Some(&m0) = parts.iter().max() else {
        return 0;
    };
    let rest: usize = parts.iter().sum::<usize>() - m0;
    if k >= rest {
        m0
    } else {
        1
    }
}
