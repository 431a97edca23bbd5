//! Defined relations, linear-order checks and the order-formula combinators.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use super::ast::{fresh_name, Formula};
use super::eval::Evaluator;
use super::structure::Structure;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Values of the set parameters, by variable name.
pub type Params = BTreeMap<String, FixedBitSet>;

/// Row `a` of the result holds every `b` with `φ(a, b; params)`.
pub fn defined_relation(s: &Structure, phi: &Formula, params: &Params, budget: &Budget) -> Result<Vec<FixedBitSet>> {
    let extra: Vec<String> = phi.free_individuals().into_iter().filter(|v| v != "x" && v != "y").collect();
    if !extra.is_empty() {
        return Err(Error::input(format!("free variable `{}` is unbound", extra[0])));
    }
    let mut ev = Evaluator::new(s, phi, budget)?;
    for (name, set) in params {
        ev.set_param(name, set)?;
    }
    let n = s.size();
    let mut rows = Vec::with_capacity(n);
    for a in 0..n {
        let mask = ev.vector("y", &[("x", a)])?;
        let mut row = FixedBitSet::with_capacity(n);
        for b in 0..n {
            if mask >> b & 1 == 1 {
                row.insert(b);
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Whether a pair table is a reflexive linear order.
pub fn table_is_linear_order(table: &[FixedBitSet]) -> bool {
    let n = table.len();
    for a in 0..n {
        if !table[a].contains(a) {
            return false;
        }
        for b in a + 1..n {
            if table[a].contains(b) == table[b].contains(a) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in table[a].ones() {
            // table[b] ⊆ table[a]
            if !table[b].is_subset(&table[a]) {
                return false;
            }
        }
    }
    true
}

pub fn defines_linear_order(s: &Structure, phi: &Formula, params: &Params, budget: &Budget) -> Result<bool> {
    Ok(table_is_linear_order(&defined_relation(s, phi, params, budget)?))
}

/// The elements sorted by a linear-order table, or `None` if it is not one.
pub fn linear_order_from_table(table: &[FixedBitSet]) -> Option<Vec<usize>> {
    if !table_is_linear_order(table) {
        return None;
    }
    // In a linear order each element has a distinct number of successors.
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(table[a].count_ones(..)));
    Some(order)
}

/// The sentence stating that `φ(x, y)` is a linear order on the universe.
///
/// Conjuncts: `φ(x,y) ∧ φ(y,x) ↔ x = y`, transitivity and totality.
pub fn ord_formula(phi: &Formula) -> Formula {
    let at = |a: &str, b: &str| phi.rename_free(&[("x", a), ("y", b)]);
    let antisym = Formula::forall(
        "x",
        Formula::forall("y", Formula::and_all([at("x", "y"), at("y", "x")]).iff(Formula::eq("x", "y"))),
    );
    let trans = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall("z", Formula::and_all([at("x", "y"), at("y", "z")]).implies(at("x", "z"))),
        ),
    );
    let total = Formula::forall("x", Formula::forall("y", Formula::or_all([at("x", "y"), at("y", "x")])));
    Formula::and_all([antisym, trans, total])
}

/// `φ(x, y) ∧ ord_φ`: false everywhere unless `φ` orders the structure.
pub fn guard_order_formula(phi: &Formula) -> Formula {
    Formula::And(vec![phi.clone(), ord_formula(phi)])
}

/// Result of [`combine_union`].
#[derive(Clone, Debug)]
pub struct Combined {
    pub formula: Formula,
    /// Parameters of the first formula, unchanged.
    pub left: Vec<String>,
    /// Parameters of the second formula after renaming, in original order.
    pub right: Vec<String>,
    /// Original name of each renamed parameter of the second formula.
    pub renamed: BTreeMap<String, String>,
}

/// `[ord_φ ∧ φ(x,y)] ∨ [¬ord_φ ∧ ψ(x,y)]`, with the set parameters of `ψ`
/// renamed apart from those of `φ`.
pub fn combine_union(phi: &Formula, psi: &Formula) -> Combined {
    let left: Vec<String> = phi.free_sets().into_iter().collect();
    let mut avoid: BTreeSet<String> = phi.all_names();
    avoid.extend(psi.all_names());
    let mut map = Vec::new();
    let mut right = Vec::new();
    let mut renamed = BTreeMap::new();
    for p in psi.free_sets() {
        if left.contains(&p) {
            let fresh = fresh_name(&p, &mut avoid);
            renamed.insert(fresh.clone(), p.clone());
            right.push(fresh.clone());
            map.push((p, fresh));
        } else {
            right.push(p);
        }
    }
    let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let psi = psi.rename_free(&pairs);
    let ord = ord_formula(phi);
    let formula = Formula::Or(vec![
        Formula::And(vec![ord.clone(), phi.clone()]),
        Formula::And(vec![ord.not(), psi]),
    ]);
    Combined { formula, left, right, renamed }
}

/// Restricts every quantifier of `phi` to the set variable `z`.
///
/// Individual quantifiers range over `z`, set quantifiers over subsets of `z`.
pub fn relativize(phi: &Formula, z: &str) -> Formula {
    let mut avoid = phi.all_names();
    avoid.insert(z.to_string());
    relativize_inner(phi, z, &mut avoid)
}

fn relativize_inner(phi: &Formula, z: &str, avoid: &mut BTreeSet<String>) -> Formula {
    use Formula as F;
    let mut rec = |f: &Formula| Box::new(relativize_inner(f, z, avoid));
    match phi {
        F::And(v) => F::And(v.iter().map(|c| *rec(c)).collect()),
        F::Or(v) => F::Or(v.iter().map(|c| *rec(c)).collect()),
        F::Not(a) => F::Not(rec(a)),
        F::Implies(a, b) => F::Implies(rec(a), rec(b)),
        F::Iff(a, b) => F::Iff(rec(a), rec(b)),
        F::Forall(v, b) => F::forall(v, F::member(v, z).implies(*rec(b))),
        F::Exists(v, b) => F::exists(v, F::And(vec![F::member(v, z), *rec(b)])),
        F::ForallSet(v, b) | F::ExistsSet(v, b) => {
            let body = *rec(b);
            let t = fresh_name("t", avoid);
            let inside = F::forall(&t, F::member(&t, v).implies(F::member(&t, z)));
            if matches!(phi, F::ForallSet(..)) {
                F::forall_set(v, inside.implies(body))
            } else {
                F::exists_set(v, F::And(vec![inside, body]))
            }
        }
        atom => atom.clone(),
    }
}
