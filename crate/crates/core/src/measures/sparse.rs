use num_rational::Ratio;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseResult {
    pub sparse: bool,
    /// A densest set `X` with `|E(X)| > r|X|`, if any.
    pub violating: Option<Vec<usize>>,
}

/// Tests `|E(X)| <= r |X|` for every vertex set `X`.
///
/// Edge counts of all subsets are filled in by a single pass over the
/// bitmasks, so the cost is `2^n` words.
pub fn is_r_sparse(g: &Graph, r: Ratio<u64>, budget: &Budget) -> Result<SparseResult> {
    let n = g.n();
    if n > budget.sparse_max_n {
        return Err(Error::budget(format!(
            "sparseness check over n={n} exceeds the cap of {}",
            budget.sparse_max_n
        )));
    }
    let adj = g.masks().expect("n is below 64");
    let (p, q) = (*r.numer(), *r.denom());
    let mut edges_in = vec![0u32; 1usize << n];
    // Densest violator so far as (edges, size, mask).
    let mut worst: Option<(u64, u64, usize)> = None;
    for mask in 1usize..(1usize << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let e = edges_in[rest] + (adj[v] & rest as u64).count_ones();
        edges_in[mask] = e;
        let size = mask.count_ones() as u64;
        let e = e as u64;
        if e * q > p * size {
            let denser = match worst {
                None => true,
                Some((we, ws, _)) => e * ws > we * size,
            };
            if denser {
                worst = Some((e, size, mask));
            }
        }
    }
    Ok(match worst {
        None => SparseResult { sparse: true, violating: None },
        Some((_, _, mask)) => SparseResult {
            sparse: false,
            violating: Some((0..n).filter(|&v| mask >> v & 1 == 1).collect()),
        },
    })
}
