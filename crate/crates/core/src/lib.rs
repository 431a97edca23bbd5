//! Separation measures, tensor-style decompositions and MSO-definable
//! linear orders on small finite graphs.

pub mod budget;
pub mod decomposition;
pub mod error;
pub mod forests;
pub mod graph;
pub mod measures;
pub mod mso;
pub mod order;
pub mod reductions;

pub use budget::Budget;
pub use error::{Error, Result};
