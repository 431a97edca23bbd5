//! Separation number, sparseness, minor containment and parameter twins.

mod minor;
mod sep;
mod sparse;
mod twins;

pub use minor::has_minor;
pub use sep::{sep, sep_complete_multipartite, SepResult};
#[allow(unused_imports)]
pub(crate) use sep::components_masked;
pub use sparse::{is_r_sparse, SparseResult};
pub use twins::{is_automorphism, twin_pair_under_params, twin_permutation};
