use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// Decides whether `h` is a minor of `g` by searching for branch sets:
/// pairwise disjoint connected vertex sets of `g`, one per vertex of `h`,
/// with an edge of `g` between the sets of every edge of `h`.
pub fn has_minor(g: &Graph, h: &Graph, budget: &Budget) -> Result<bool> {
    if g.n() > budget.minor_max_n || g.n() > 64 {
        return Err(Error::budget(format!(
            "minor search over n={} exceeds the cap of {}",
            g.n(),
            budget.minor_max_n.min(64)
        )));
    }
    if h.n() == 0 {
        return Ok(true);
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    let adj = g.masks().expect("n is below 64");
    let connected = connected_subsets(&adj);

    // Pattern vertices in BFS order per component, larger components first,
    // so every later vertex of a component has a placed neighbour.
    let mut comps = connected_components(h);
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(h.n());
    for comp in &comps {
        let start = order.len();
        order.push(comp[0]);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for w in h.neighbors(u) {
                if !order.contains(&w) {
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let earlier_nbrs: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| h.neighbors(v).map(|w| pos[w]).filter(|&j| j < pos[v]).collect())
        .collect();
    let later_nbrs: Vec<bool> = order
        .iter()
        .map(|&v| h.neighbors(v).any(|w| pos[w] > pos[v]))
        .collect();
    // Earlier twins: swapping twin branch sets preserves a model, so their
    // least vertices may be assumed increasing.
    let twin_of: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            (0..i).rev().find(|&j| {
                let u = order[j];
                let nu: Vec<usize> = h.neighbors(u).filter(|&x| x != v).collect();
                let nv: Vec<usize> = h.neighbors(v).filter(|&x| x != u).collect();
                nu == nv
            })
        })
        .collect();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let search = Search { adj: &adj, all, connected: &connected, earlier_nbrs, later_nbrs, twin_of };
    let mut branch = vec![0u64; h.n()];
    Ok(search.place(0, 0, &mut branch))
}

struct Search<'a> {
    adj: &'a [u64],
    all: u64,
    connected: &'a [u64],
    earlier_nbrs: Vec<Vec<usize>>,
    later_nbrs: Vec<bool>,
    twin_of: Vec<Option<usize>>,
}

impl Search<'_> {
    fn neighbourhood(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            out |= self.adj[v];
        }
        out & !set
    }

    fn place(&self, i: usize, used: u64, branch: &mut [u64]) -> bool {
        if i == branch.len() {
            return true;
        }
        if ((branch.len() - i) as u32) > (self.all & !used).count_ones() {
            return false;
        }
        for &b in self.connected {
            if b & used != 0 {
                continue;
            }
            if let Some(t) = self.twin_of[i] {
                if b.trailing_zeros() <= branch[t].trailing_zeros() {
                    continue;
                }
            }
            let nb = self.neighbourhood(b);
            if !self.earlier_nbrs[i].iter().all(|&j| nb & branch[j] != 0) {
                continue;
            }
            let now_used = used | b;
            if self.later_nbrs[i] && nb & !now_used == 0 {
                continue;
            }
            branch[i] = b;
            if self.place(i + 1, now_used, branch) {
                return true;
            }
        }
        branch[i] = 0;
        false
    }
}

/// Every nonempty connected vertex set, smallest first.
fn connected_subsets(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let start = mask & mask.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut grow = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                grow |= adj[v];
            }
            grow &= mask & !comp;
            comp |= grow;
            frontier = grow;
        }
        if comp == mask {
            out.push(mask);
        }
    }
    out.sort_by_key(|m| m.count_ones());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn kpp(p: usize) -> Graph {
        generate(&FamilySpec::CompleteBipartite(p, p)).unwrap()
    }

    #[test]
    fn trees_have_no_c4_minor() {
        let t = generate(&FamilySpec::TreeClosure { height: 0, branching: vec![] }).unwrap();
        assert!(!has_minor(&t, &kpp(2), &Budget::default()).unwrap());
        let path = generate(&FamilySpec::Path(9)).unwrap();
        assert!(!has_minor(&path, &kpp(2), &Budget::default()).unwrap());
        assert!(has_minor(&path, &generate(&FamilySpec::Path(5)).unwrap(), &Budget::default()).unwrap());
    }

    #[test]
    fn h2_contains_k22() {
        let g = generate(&FamilySpec::Hp(2)).unwrap();
        assert!(has_minor(&g, &kpp(2), &Budget::default()).unwrap());
    }

    #[test]
    fn contraction_is_needed_for_k4_in_a_subdivision() {
        // K4 with every edge subdivided once: 10 vertices, no K4 subgraph.
        let mut g = Graph::new(10);
        let mut next = 4;
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, next);
                g.add_edge(next, v);
                next += 1;
            }
        }
        let k4 = generate(&FamilySpec::Clique(4)).unwrap();
        assert!(has_minor(&g, &k4, &Budget::default()).unwrap());
        assert!(!has_minor(&g, &generate(&FamilySpec::Clique(5)).unwrap(), &Budget::default()).unwrap());
    }

    #[test]
    fn cycle_has_k3_but_not_k4() {
        let c = generate(&FamilySpec::Cycle(8)).unwrap();
        let budget = Budget::default();
        assert!(has_minor(&c, &generate(&FamilySpec::Clique(3)).unwrap(), &budget).unwrap());
        assert!(!has_minor(&c, &generate(&FamilySpec::Clique(4)).unwrap(), &budget).unwrap());
    }

    #[test]
    fn disconnected_patterns() {
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert!(!has_minor(&p3, &two_edges, &Budget::default()).unwrap());
        assert!(has_minor(&p4, &two_edges, &Budget::default()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(has_minor(&Graph::new(13), &kpp(2), &Budget::default()).unwrap_err().is_budget());
    }
}
