use crate::error::{Error, Result};

/// Resource caps for the exhaustive searches.
///
/// The defaults keep every search well under a second on small inputs; the
/// CLI exposes `--budget-n` and `--budget-sets` to raise them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Number of candidate separators `sep` may enumerate.
    pub sep_subsets: u64,
    /// Largest vertex count accepted by the sparseness check.
    pub sparse_max_n: usize,
    /// Largest host graph accepted by the minor search.
    pub minor_max_n: usize,
    /// Largest vertex count accepted by `cut`.
    pub cut_max_n: usize,
    /// Largest label count accepted by `cut`.
    pub cut_max_k: usize,
    /// Largest universe over which set quantifiers are expanded.
    pub set_universe: usize,
    /// Largest vertex count for the exact decomposition-width search.
    pub width_search_max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            sep_subsets: subsets_up_to(16, 6),
            sparse_max_n: 20,
            minor_max_n: 12,
            cut_max_n: 10,
            cut_max_k: 3,
            set_universe: 16,
            width_search_max_n: 6,
        }
    }
}

impl Budget {
    /// Budget whose vertex caps are all raised (or lowered) to `n`.
    pub fn with_max_n(mut self, n: usize) -> Self {
        self.sep_subsets = subsets_up_to(n, 6);
        self.sparse_max_n = n.min(24);
        self.minor_max_n = n;
        self.cut_max_n = n.min(64);
        self
    }

    pub fn with_set_universe(mut self, n: usize) -> Self {
        self.set_universe = n.min(63);
        self
    }

    pub(crate) fn check_sep(&self, n: usize, k: usize) -> Result<()> {
        let count = subsets_up_to(n, k);
        if count > self.sep_subsets {
            return Err(Error::budget(format!(
                "sep over n={n}, k={k} needs {count} candidate sets, budget is {}",
                self.sep_subsets
            )));
        }
        Ok(())
    }
}

/// Number of subsets of an `n`-set with at most `k` elements, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u64 {
    let k = k.min(n);
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for i in 0..=k {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_up_to(16, 6), 1 + 16 + 120 + 560 + 1820 + 4368 + 8008);
        assert_eq!(subsets_up_to(4, 10), 16);
        assert_eq!(subsets_up_to(0, 3), 1);
    }

    #[test]
    fn default_admits_sixteen_choose_six() {
        let b = Budget::default();
        assert!(b.check_sep(16, 6).is_ok());
        assert!(b.check_sep(17, 6).is_err());
    }
}
