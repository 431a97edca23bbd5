//! Exact decomposition width for heights up to two on tiny graphs.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Restricted growth strings of length `n` with values below `max`.
fn growth_strings(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    if max == 0 {
        return out;
    }
    let mut cur = vec![0; n];
    fn rec(i: usize, used: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for l in 0..(used + 1).min(max) {
            cur[i] = l;
            rec(i + 1, used.max(l + 1), max, cur, out);
        }
    }
    rec(1, 1, max, &mut cur, &mut out);
    out
}

/// Whether some symmetric relation on the labels explains every edge and
/// non-edge between vertices of different blocks.
fn explained(g: &Graph, vertices: &[usize], labels: &[usize], blocks: &[usize], k: usize) -> bool {
    let mut table = vec![None; k * k];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if blocks[i] == blocks[j] {
                continue;
            }
            let (a, b) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
            let e = g.has_edge(vertices[i], vertices[j]);
            match table[a * k + b] {
                None => table[a * k + b] = Some(e),
                Some(x) if x != e => return false,
                _ => {}
            }
        }
    }
    true
}

/// Least width of a height-one decomposition of `g[vertices]`.
fn flat_width(g: &Graph, vertices: &[usize]) -> usize {
    let singletons: Vec<usize> = (0..vertices.len()).collect();
    (1..=vertices.len().max(1))
        .find(|&k| growth_strings(vertices.len(), k).iter().any(|l| explained(g, vertices, l, &singletons, k)))
        .expect("distinct labels always work")
}

/// Least width of a (strong) decomposition of height at most `height`.
pub fn otimes_width(g: &Graph, height: usize, strong: bool, budget: &Budget) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::input("the empty graph has no decomposition"));
    }
    if n > budget.width_search_max_n {
        return Err(Error::budget(format!(
            "width search over {n} vertices exceeds the limit of {}",
            budget.width_search_max_n
        )));
    }
    if height > 2 {
        return Err(Error::budget("exact width search is limited to height 2"));
    }
    if n == 1 {
        return Ok(1);
    }
    if height == 0 {
        return Err(Error::input("a graph with several vertices needs height at least 1"));
    }
    let all: Vec<usize> = (0..n).collect();
    let flat = flat_width(g, &all);
    if height == 1 {
        return Ok(flat);
    }
    let partitions = growth_strings(n, n);
    for k in 1..flat {
        let labelings = growth_strings(n, k);
        for blocks in &partitions {
            let count = blocks.iter().max().unwrap() + 1;
            if count == 1 || count == n {
                continue;
            }
            let members: Vec<Vec<usize>> = (0..count).map(|b| all.iter().copied().filter(|&v| blocks[v] == b).collect()).collect();
            if !strong {
                let inner = members.iter().filter(|m| m.len() > 1).all(|m| flat_width(g, m) <= k);
                if inner && labelings.iter().any(|l| explained(g, &all, l, blocks, k)) {
                    return Ok(k);
                }
                continue;
            }
            for root in labelings.iter().filter(|l| explained(g, &all, l, blocks, k)) {
                let ok = members.iter().filter(|m| m.len() > 1).all(|m| {
                    let singletons: Vec<usize> = (0..m.len()).collect();
                    growth_strings(m.len(), k).iter().any(|inner| {
                        explained(g, m, inner, &singletons, k)
                            && (0..m.len()).all(|i| {
                                (0..m.len()).all(|j| inner[i] != inner[j] || root[m[i]] == root[m[j]])
                            })
                    })
                });
                if ok {
                    return Ok(k);
                }
            }
        }
    }
    Ok(flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn growth_string_counts() {
        // Bell numbers and Stirling sums.
        assert_eq!(growth_strings(4, 4).len(), 15);
        assert_eq!(growth_strings(4, 2).len(), 8);
        assert_eq!(growth_strings(0, 3).len(), 1);
    }

    #[test]
    fn cographs_have_width_one() {
        let b = Budget::default();
        let k23 = generate(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(otimes_width(&k23, 2, false, &b).unwrap(), 1);
        assert_eq!(otimes_width(&k23, 2, true, &b).unwrap(), 1);
        assert_eq!(otimes_width(&k23, 1, false, &b).unwrap(), 2);
        let k4 = generate(&FamilySpec::Clique(4)).unwrap();
        assert_eq!(otimes_width(&k4, 1, true, &b).unwrap(), 1);
    }

    #[test]
    fn paths() {
        let b = Budget::default();
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        // Height one: the two ends and the two middles must be told apart.
        assert_eq!(otimes_width(&p4, 1, false, &b).unwrap(), 4);
        assert_eq!(otimes_width(&p4, 2, false, &b).unwrap(), 2);
        assert!(otimes_width(&generate(&FamilySpec::Path(7)).unwrap(), 2, false, &b).unwrap_err().is_budget());
    }

    #[test]
    fn strong_is_never_below_weak() {
        let b = Budget::default();
        for seed in 0..20 {
            let g = generate(&FamilySpec::Random { n: 5, prob: 0.5, seed }).unwrap();
            let w = otimes_width(&g, 2, false, &b).unwrap();
            let s = otimes_width(&g, 2, true, &b).unwrap();
            assert!(w <= s && s <= w * w * w, "seed {seed}: {w} {s}");
        }
    }
}
