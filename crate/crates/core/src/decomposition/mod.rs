//! Cotrees, `Cut`, and ⊗-decompositions with their verification and
//! strengthening.

mod cotree;
mod cut;
mod otimes;
mod width;

pub use cotree::{cotree, cotree_stats, Cotree, CotreeStats};
pub use cut::{cut, cut_witness, CutWitness};
pub use otimes::{
    decomposition_from_cotree, otimes_violation, random_weak_decomposition, strengthen_decomposition,
    verify_otimes_decomposition, DecompositionNode, OtimesDecomposition,
};
pub use width::otimes_width;
