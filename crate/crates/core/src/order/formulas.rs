//! Formula fragments shared by the order builders.

use crate::mso::Formula;

pub(crate) type Unary<'a> = &'a dyn Fn(&mut Names, &str) -> Formula;
pub(crate) type Binary<'a> = &'a dyn Fn(&mut Names, &str, &str) -> Formula;

/// Source of bound variable names that never collide with `x`, `y` or the
/// parameter names used by the builders.
#[derive(Default)]
pub(crate) struct Names {
    next: usize,
}

impl Names {
    pub(crate) fn var(&mut self, base: &str) -> String {
        self.next += 1;
        format!("{base}{}", self.next)
    }

    pub(crate) fn set(&mut self) -> String {
        self.next += 1;
        format!("X{}", self.next)
    }
}

pub(crate) fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::and_all(parts)
}

pub(crate) fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::or_all(parts)
}

pub(crate) fn neq(a: &str, b: &str) -> Formula {
    Formula::eq(a, b).not()
}

/// `z` is a vertex of a ceil encoding: nothing is incident to it.
pub(crate) fn vertex(nm: &mut Names, z: &str) -> Formula {
    let w = nm.var("w");
    Formula::exists(&w, Formula::inc(&w, z)).not()
}

/// `u` and `v` are distinct and share an edge.
pub(crate) fn adj(nm: &mut Names, u: &str, v: &str) -> Formula {
    let e = nm.var("e");
    and([neq(u, v), Formula::exists(&e, and([Formula::inc(u, &e), Formula::inc(v, &e)]))])
}

/// `u` and `v` are distinct and share an edge from the edge set `p`.
pub(crate) fn adj_in(nm: &mut Names, u: &str, v: &str, p: &str) -> Formula {
    let e = nm.var("e");
    and([
        neq(u, v),
        Formula::exists(&e, and([Formula::member(&e, p), Formula::inc(u, &e), Formula::inc(v, &e)])),
    ])
}

/// `p ≤ q` along a tree or path grown from the unique `start` element by
/// `step`: every closed set containing the start that is not allowed to
/// step onto `p` misses `q`.
pub(crate) fn reach_le(nm: &mut Names, p: &str, q: &str, start: Unary, step: Binary) -> Formula {
    let x = nm.set();
    let a = nm.var("a");
    let s = nm.var("s");
    let t = nm.var("t");
    let seeded = Formula::exists(&a, and([start(nm, &a), Formula::member(&a, &x)]));
    let closed = Formula::forall(
        &s,
        Formula::forall(
            &t,
            and([Formula::member(&s, &x), step(nm, &s, &t), neq(&t, p)]).implies(Formula::member(&t, &x)),
        ),
    );
    or([
        Formula::eq(p, q),
        start(nm, p),
        Formula::exists_set(&x, and([seeded, closed, Formula::member(q, &x).not()])),
    ])
}

/// Ceil order from a vertex order `vo`: vertices first, then edges
/// lexicographically by (lower endpoint, higher endpoint).
pub(crate) fn extend_to_edges(nm: &mut Names, vo: Binary) -> Formula {
    let [a1, b1, a2, b2] = [nm.var("a"), nm.var("b"), nm.var("a"), nm.var("b")];
    let ends = |nm: &mut Names, e: &str, lo: &str, hi: &str| {
        and([Formula::inc(lo, e), Formula::inc(hi, e), neq(lo, hi), vo(nm, lo, hi)])
    };
    let first = ends(nm, "x", &a1, &b1);
    let second = ends(nm, "y", &a2, &b2);
    let lt_lo = and([vo(nm, &a1, &a2), neq(&a1, &a2)]);
    let tie = and([Formula::eq(&a1, &a2), vo(nm, &b1, &b2)]);
    let edge_le = [&a1, &b1, &a2, &b2].iter().rev().fold(and([first, second, or([lt_lo, tie])]), |body, v| {
        Formula::exists(v, body)
    });
    let (vx, vy) = (vertex(nm, "x"), vertex(nm, "y"));
    or([
        and([vx.clone(), vy.clone(), vo(nm, "x", "y")]),
        and([vx.clone(), vy.clone().not()]),
        and([vx.not(), vy.not(), edge_le]),
    ])
}

/// Replaces every atom `inc(u, v)` by `inc(u, v) ∧ v ∈ z`.
pub(crate) fn restrict_inc(phi: &Formula, z: &str) -> Formula {
    use Formula as F;
    let rec = |f: &Formula| Box::new(restrict_inc(f, z));
    match phi {
        F::And(v) => F::And(v.iter().map(|c| restrict_inc(c, z)).collect()),
        F::Or(v) => F::Or(v.iter().map(|c| restrict_inc(c, z)).collect()),
        F::Not(a) => F::Not(rec(a)),
        F::Implies(a, b) => F::Implies(rec(a), rec(b)),
        F::Iff(a, b) => F::Iff(rec(a), rec(b)),
        F::Forall(v, b) => F::Forall(v.clone(), rec(b)),
        F::Exists(v, b) => F::Exists(v.clone(), rec(b)),
        F::ForallSet(v, b) => F::ForallSet(v.clone(), rec(b)),
        F::ExistsSet(v, b) => F::ExistsSet(v.clone(), rec(b)),
        F::Inc(_, v) => F::And(vec![phi.clone(), F::member(v, z)]),
        atom => atom.clone(),
    }
}

/// Lexicographic comparison of two `members`-subsets: the least element of
/// their symmetric difference, by `le`, lies in the first one.
pub(crate) fn delta_least_in_first(
    nm: &mut Names,
    u: &str,
    v: &str,
    domain: Unary,
    member: Binary,
    le: Binary,
) -> Formula {
    let a = nm.var("a");
    let b = nm.var("a");
    let earlier = and([domain(nm, &b), le(nm, &b, &a), neq(&b, &a)]);
    let agree = member(nm, &b, u).iff(member(nm, &b, v));
    Formula::exists(
        &a,
        and([
            domain(nm, &a),
            member(nm, &a, u),
            member(nm, &a, v).not(),
            Formula::forall(&b, earlier.implies(agree)),
        ]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::graph::{generate, FamilySpec};
    use crate::mso::{defined_relation, linear_order_from_table, Encoding, Params, Structure};

    #[test]
    fn edge_extension_of_the_id_order() {
        let g = generate(&FamilySpec::Cycle(4)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Ceil);
        let mut nm = Names::default();
        // Vertex order 0 < 1 < 2 < 3 through singleton markers.
        let vo = |_: &mut Names, a: &str, b: &str| {
            let lvl = |v: &str, k: usize| Formula::member(v, &format!("L{k}"));
            or((0..4).map(|k| and([lvl(a, k), or((k..4).map(|j| lvl(b, j)))])))
        };
        let phi = extend_to_edges(&mut nm, &vo);
        let mut params = Params::new();
        for k in 0..4 {
            params.insert(format!("L{k}"), s.element_set(&[k]).unwrap());
        }
        let table = defined_relation(&s, &phi, &params, &Budget::default()).unwrap();
        let order = linear_order_from_table(&table).unwrap();
        let names: Vec<String> = order.iter().map(|&i| s.element(i).to_string()).collect();
        assert_eq!(names, ["v:0", "v:1", "v:2", "v:3", "e:0-1", "e:0-3", "e:1-2", "e:2-3"]);
    }

    #[test]
    fn restricted_incidence_hides_edges() {
        let f = restrict_inc(&Formula::exists("e", Formula::inc("x", "e")), "Z");
        assert_eq!(f.to_string(), "(exists e (and (inc x e) (in e Z)))");
    }
}
