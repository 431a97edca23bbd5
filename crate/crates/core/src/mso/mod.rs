//! Monadic second-order formulas, graph encodings and evaluation.

mod ast;
mod eval;
mod orders;
mod parse;
mod structure;

pub use ast::{fresh_name, is_individual_name, is_set_name, Formula};
pub use eval::{evaluate, Assignment, Evaluator};
pub use orders::{
    combine_union, defined_relation, defines_linear_order, guard_order_formula, linear_order_from_table, ord_formula,
    relativize, table_is_linear_order, Combined, Params,
};
pub use parse::{parse_formula, Span};
pub use structure::{Element, Encoding, Structure};
