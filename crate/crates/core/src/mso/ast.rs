use std::collections::BTreeSet;
use std::fmt;

/// Monadic second-order formula over graph encodings.
///
/// Individual variables are lower-case (`x`, `u1`), set variables start
/// with an upper-case letter (`X`, `Z0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
    Eq(String, String),
    Edg(String, String),
    Inc(String, String),
    In(String, String),
    /// `|X| ≡ 0 (mod q)`.
    Card(u32, String),
    Pred(String, String),
}

use Formula::*;

pub fn is_individual_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|h| h.is_ascii_lowercase())
        && c.all(|ch| ch.is_ascii_lowercase() || ch.is_ascii_digit())
}

pub fn is_set_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|h| h.is_ascii_uppercase()) && c.all(|ch| ch.is_ascii_alphanumeric())
}

impl Formula {
    /// A closed tautology, `∀t (t = t)`.
    pub fn top() -> Formula {
        Forall("t".into(), Box::new(Eq("t".into(), "t".into())))
    }

    pub fn bottom() -> Formula {
        Formula::top().not()
    }

    /// Conjunction that flattens nested conjunctions; empty means `top`.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::top(),
            1 => out.pop().unwrap(),
            _ => And(out),
        }
    }

    /// Disjunction that flattens nested disjunctions; empty means `bottom`.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::bottom(),
            1 => out.pop().unwrap(),
            _ => Or(out),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Not(Box::new(self))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Iff(Box::new(self), Box::new(other))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Exists(v.into(), Box::new(body))
    }

    pub fn forall_set(v: &str, body: Formula) -> Formula {
        ForallSet(v.into(), Box::new(body))
    }

    pub fn exists_set(v: &str, body: Formula) -> Formula {
        ExistsSet(v.into(), Box::new(body))
    }

    pub fn eq(a: &str, b: &str) -> Formula {
        Eq(a.into(), b.into())
    }

    pub fn edg(a: &str, b: &str) -> Formula {
        Edg(a.into(), b.into())
    }

    pub fn inc(a: &str, b: &str) -> Formula {
        Inc(a.into(), b.into())
    }

    pub fn member(a: &str, set: &str) -> Formula {
        In(a.into(), set.into())
    }

    pub fn pred(name: &str, a: &str) -> Formula {
        Pred(name.into(), a.into())
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            And(v) | Or(v) => v.iter().collect(),
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSet(_, a) | ExistsSet(_, a) => vec![a],
            Implies(a, b) | Iff(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    /// Nesting depth of quantifiers of either kind.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Forall(_, b) | Exists(_, b) | ForallSet(_, b) | ExistsSet(_, b) => 1 + b.quantifier_rank(),
            other => other.children().iter().map(|c| c.quantifier_rank()).max().unwrap_or(0),
        }
    }

    pub fn has_set_quantifier(&self) -> bool {
        match self {
            ForallSet(..) | ExistsSet(..) => true,
            other => other.children().iter().any(|c| c.has_set_quantifier()),
        }
    }

    /// Free individual variables.
    pub fn free_individuals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out, false);
        out
    }

    /// Free set variables.
    pub fn free_sets(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out, true);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>, sets: bool) {
        let mut note = |v: &str, bound: &Vec<&str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Forall(v, b) | Exists(v, b) | ForallSet(v, b) | ExistsSet(v, b) => {
                bound.push(v);
                b.collect_free(bound, out, sets);
                bound.pop();
            }
            Eq(a, b) | Edg(a, b) | Inc(a, b) if !sets => {
                note(a, bound);
                note(b, bound);
            }
            In(a, s) => note(if sets { s } else { a }, bound),
            Card(_, s) if sets => note(s, bound),
            Pred(_, a) if !sets => note(a, bound),
            Eq(..) | Edg(..) | Inc(..) | Card(..) | Pred(..) => {}
            other => {
                for c in other.children() {
                    c.collect_free(bound, out, sets);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Forall(v, b) | Exists(v, b) | ForallSet(v, b) | ExistsSet(v, b) => {
                out.insert(v.clone());
                b.collect_names(out);
            }
            Eq(a, b) | Edg(a, b) | Inc(a, b) | In(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Card(_, s) | Pred(_, s) => {
                out.insert(s.clone());
            }
            other => {
                for c in other.children() {
                    c.collect_names(out);
                }
            }
        }
    }

    /// Simultaneous capture-avoiding renaming of free variables (individual
    /// or set) according to `map`.
    pub fn rename_free(&self, map: &[(&str, &str)]) -> Formula {
        let mut avoid = self.all_names();
        for (a, b) in map {
            avoid.insert(a.to_string());
            avoid.insert(b.to_string());
        }
        let owned: Vec<(String, String)> = map.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        self.rename_inner(&owned, &mut avoid)
    }

    fn rename_inner(&self, map: &[(String, String)], avoid: &mut BTreeSet<String>) -> Formula {
        let r = |v: &String| -> String {
            map.iter().find(|(a, _)| a == v).map_or_else(|| v.clone(), |(_, b)| b.clone())
        };
        match self {
            And(v) => And(v.iter().map(|c| c.rename_inner(map, avoid)).collect()),
            Or(v) => Or(v.iter().map(|c| c.rename_inner(map, avoid)).collect()),
            Not(a) => Not(Box::new(a.rename_inner(map, avoid))),
            Implies(a, b) => Implies(Box::new(a.rename_inner(map, avoid)), Box::new(b.rename_inner(map, avoid))),
            Iff(a, b) => Iff(Box::new(a.rename_inner(map, avoid)), Box::new(b.rename_inner(map, avoid))),
            Forall(v, b) | Exists(v, b) | ForallSet(v, b) | ExistsSet(v, b) => {
                // The binder shadows `v`; rename it if it would capture a target.
                let inner: Vec<(String, String)> = map.iter().filter(|(a, _)| a != v).cloned().collect();
                let captures = inner.iter().any(|(_, to)| to == v);
                let (name, body) = if captures {
                    let fresh = fresh_name(v, avoid);
                    let mut m = inner.clone();
                    m.push((v.clone(), fresh.clone()));
                    (fresh, b.rename_inner(&m, avoid))
                } else {
                    (v.clone(), b.rename_inner(&inner, avoid))
                };
                let body = Box::new(body);
                match self {
                    Forall(..) => Forall(name, body),
                    Exists(..) => Exists(name, body),
                    ForallSet(..) => ForallSet(name, body),
                    _ => ExistsSet(name, body),
                }
            }
            Eq(a, b) => Eq(r(a), r(b)),
            Edg(a, b) => Edg(r(a), r(b)),
            Inc(a, b) => Inc(r(a), r(b)),
            In(a, s) => In(r(a), r(s)),
            Card(q, s) => Card(*q, r(s)),
            Pred(p, a) => Pred(p.clone(), r(a)),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

/// A name derived from `base` that is not in `avoid`; it is added to `avoid`.
pub fn fresh_name(base: &str, avoid: &mut BTreeSet<String>) -> String {
    let stem: String = base.trim_end_matches(|c: char| c.is_ascii_digit()).to_string();
    let stem = if stem.is_empty() { base.to_string() } else { stem };
    for i in 0.. {
        let cand = format!("{stem}{i}");
        if !avoid.contains(&cand) {
            avoid.insert(cand.clone());
            return cand;
        }
    }
    unreachable!()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, items: &[&Formula]| -> fmt::Result {
            write!(f, "({head}")?;
            for it in items {
                write!(f, " {it}")?;
            }
            write!(f, ")")
        };
        match self {
            And(v) => list(f, "and", &v.iter().collect::<Vec<_>>()),
            Or(v) => list(f, "or", &v.iter().collect::<Vec<_>>()),
            Not(a) => list(f, "not", &[a]),
            Implies(a, b) => list(f, "implies", &[a, b]),
            Iff(a, b) => list(f, "iff", &[a, b]),
            Forall(v, b) => write!(f, "(forall {v} {b})"),
            Exists(v, b) => write!(f, "(exists {v} {b})"),
            ForallSet(v, b) => write!(f, "(forallset {v} {b})"),
            ExistsSet(v, b) => write!(f, "(existsset {v} {b})"),
            Eq(a, b) => write!(f, "(= {a} {b})"),
            Edg(a, b) => write!(f, "(edg {a} {b})"),
            Inc(a, b) => write!(f, "(inc {a} {b})"),
            In(a, s) => write!(f, "(in {a} {s})"),
            Card(q, s) => write!(f, "(card {q} {s})"),
            Pred(p, a) => write!(f, "(pred {p} {a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_counts_both_kinds() {
        let f = Formula::forall("x", Formula::exists_set("Y", Formula::edg("x", "y")));
        assert_eq!(f.quantifier_rank(), 2);
        assert_eq!(f.free_individuals(), BTreeSet::from(["y".to_string()]));
        assert!(f.free_sets().is_empty());
    }

    #[test]
    fn renaming_avoids_capture() {
        // (exists y (edg x y)) with x := y must not become (exists y (edg y y)).
        let f = Formula::exists("y", Formula::edg("x", "y"));
        let g = f.rename_free(&[("x", "y")]);
        match &g {
            Exists(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Formula::edg("y", b));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn renaming_is_simultaneous() {
        let f = Formula::edg("x", "y");
        assert_eq!(f.rename_free(&[("x", "y"), ("y", "x")]), Formula::edg("y", "x"));
    }

    #[test]
    fn names() {
        assert!(is_individual_name("x") && is_individual_name("u12") && !is_individual_name("X"));
        assert!(is_set_name("Z0") && is_set_name("Xa") && !is_set_name("z") && !is_set_name("Z_"));
    }

    #[test]
    fn flattening_constructors() {
        let a = Formula::eq("x", "y");
        let f = Formula::and_all([a.clone(), Formula::and_all([a.clone(), a.clone()])]);
        assert_eq!(f, And(vec![a.clone(), a.clone(), a.clone()]));
        assert_eq!(Formula::and_all([a.clone()]), a);
        assert_eq!(Formula::or_all([]), Formula::bottom());
    }
}
