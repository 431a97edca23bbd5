use std::collections::BTreeMap;

use super::Graph;

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    are_isomorphic_colored(g, &vec![0; g.n()], h, &vec![0; h.n()])
}

/// Isomorphism that must also preserve the given vertex colours.
///
/// Colour refinement on both graphs at once, then backtracking over the
/// refined classes. Intended for graphs with at most a few dozen vertices.
pub fn are_isomorphic_colored(g: &Graph, gc: &[usize], h: &Graph, hc: &[usize]) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || gc.len() != g.n() || hc.len() != h.n() {
        return false;
    }
    let n = g.n();
    let (mut cg, mut ch) = (gc.to_vec(), hc.to_vec());
    let mut classes = 0;
    loop {
        let mut table: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sig = |graph: &Graph, col: &[usize], v: usize| {
            let mut around: Vec<usize> = graph.neighbors(v).map(|w| col[w]).collect();
            around.sort_unstable();
            (col[v], around)
        };
        let sg: Vec<_> = (0..n).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..n).map(|v| sig(h, &ch, v)).collect();
        for s in sg.iter().chain(sh.iter()) {
            let next = table.len();
            table.entry(s.clone()).or_insert(next);
        }
        cg = sg.iter().map(|s| table[s]).collect();
        ch = sh.iter().map(|s| table[s]).collect();
        let mut hist_g = cg.clone();
        let mut hist_h = ch.clone();
        hist_g.sort_unstable();
        hist_h.sort_unstable();
        if hist_g != hist_h {
            return false;
        }
        if table.len() == classes {
            break;
        }
        classes = table.len();
    }
    let mut class_size = vec![0usize; classes.max(1)];
    for &c in &cg {
        class_size[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[cg[v]], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.n() {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
