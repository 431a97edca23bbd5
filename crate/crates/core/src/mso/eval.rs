//! Bitmask evaluator.
//!
//! Formulas are compiled to a node arena with every variable resolved to a
//! slot. First-order quantifiers are evaluated a whole vector at a time: the
//! body is computed as the mask of all values of the bound variable that
//! satisfy it. Subformulas that contain a quantifier and whose free set
//! variables are all parameters are memoised; two such subformulas that
//! differ only by a renaming of their free variables share one cache.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use super::ast::Formula;
use super::structure::Structure;
use crate::budget::Budget;
use crate::error::{Error, Result};

type NodeId = usize;
type Slot = usize;

#[derive(Clone, Debug)]
enum Node {
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
    Not(NodeId),
    Implies(NodeId, NodeId),
    Iff(NodeId, NodeId),
    Forall(Slot, NodeId),
    Exists(Slot, NodeId),
    ForallSet(Slot, NodeId),
    ExistsSet(Slot, NodeId),
    Eq(Slot, Slot),
    Rel(usize, Slot, Slot),
    In(Slot, Slot),
    Card(u32, Slot),
    Pred(usize, Slot),
}

#[derive(Clone, Debug, Default)]
struct Info {
    /// Free individual slots in first-occurrence order.
    free: Vec<Slot>,
    free_sets: Vec<Slot>,
    quantified: bool,
    shape: Option<u32>,
}

/// Values assigned to the free variables of a formula.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub individuals: BTreeMap<String, usize>,
    pub sets: BTreeMap<String, FixedBitSet>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn individual(mut self, name: &str, element: usize) -> Self {
        self.individuals.insert(name.to_string(), element);
        self
    }

    pub fn set(mut self, name: &str, members: FixedBitSet) -> Self {
        self.sets.insert(name.to_string(), members);
        self
    }
}

/// Truth value of `f` in `s` under `a`.
pub fn evaluate(s: &Structure, f: &Formula, a: &Assignment, budget: &Budget) -> Result<bool> {
    let mut ev = Evaluator::new(s, f, budget)?;
    for (name, set) in &a.sets {
        ev.set_param(name, set)?;
    }
    let inds: Vec<(&str, usize)> = a.individuals.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    ev.eval(&inds)
}

/// Compiled formula bound to one structure; keeps its cache between queries.
pub struct Evaluator {
    size: usize,
    full: u64,
    nodes: Vec<Node>,
    info: Vec<Info>,
    root: NodeId,
    rows: Vec<Vec<u64>>,
    cols: Vec<Vec<u64>>,
    diag: Vec<u64>,
    preds: Vec<u64>,
    ind_slots: BTreeMap<String, Slot>,
    set_slots: BTreeMap<String, Slot>,
    ind: Vec<usize>,
    ind_set: Vec<bool>,
    sets: Vec<u64>,
    sets_set: Vec<bool>,
    cache: HashMap<(u32, u8, u64), u64>,
}

struct Compiler {
    nodes: Vec<Node>,
    rel_names: Vec<String>,
    pred_names: Vec<String>,
    ind_count: usize,
    set_count: usize,
    free_ind: BTreeMap<String, Slot>,
    free_set: BTreeMap<String, Slot>,
}

impl Compiler {
    fn rel(&mut self, name: &str) -> usize {
        if let Some(i) = self.rel_names.iter().position(|n| n == name) {
            return i;
        }
        self.rel_names.push(name.to_string());
        self.rel_names.len() - 1
    }

    fn pred(&mut self, name: &str) -> usize {
        if let Some(i) = self.pred_names.iter().position(|n| n == name) {
            return i;
        }
        self.pred_names.push(name.to_string());
        self.pred_names.len() - 1
    }

    fn ind(&mut self, name: &str, scope: &[(String, Slot, bool)]) -> Slot {
        if let Some((_, s, _)) = scope.iter().rev().find(|(n, _, set)| n == name && !set) {
            return *s;
        }
        if let Some(&s) = self.free_ind.get(name) {
            return s;
        }
        let s = self.ind_count;
        self.ind_count += 1;
        self.free_ind.insert(name.to_string(), s);
        s
    }

    fn set(&mut self, name: &str, scope: &[(String, Slot, bool)]) -> Slot {
        if let Some((_, s, _)) = scope.iter().rev().find(|(n, _, set)| n == name && *set) {
            return *s;
        }
        if let Some(&s) = self.free_set.get(name) {
            return s;
        }
        let s = self.set_count;
        self.set_count += 1;
        self.free_set.insert(name.to_string(), s);
        s
    }

    fn push(&mut self, n: Node) -> NodeId {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn compile(&mut self, f: &Formula, scope: &mut Vec<(String, Slot, bool)>) -> NodeId {
        use Formula as F;
        let node = match f {
            F::And(v) => Node::And(v.iter().map(|c| self.compile(c, scope)).collect()),
            F::Or(v) => Node::Or(v.iter().map(|c| self.compile(c, scope)).collect()),
            F::Not(a) => Node::Not(self.compile(a, scope)),
            F::Implies(a, b) => {
                let (a, b) = (self.compile(a, scope), self.compile(b, scope));
                Node::Implies(a, b)
            }
            F::Iff(a, b) => {
                let (a, b) = (self.compile(a, scope), self.compile(b, scope));
                Node::Iff(a, b)
            }
            F::Forall(v, b) | F::Exists(v, b) => {
                let slot = self.ind_count;
                self.ind_count += 1;
                scope.push((v.clone(), slot, false));
                let body = self.compile(b, scope);
                scope.pop();
                if matches!(f, F::Forall(..)) {
                    Node::Forall(slot, body)
                } else {
                    Node::Exists(slot, body)
                }
            }
            F::ForallSet(v, b) | F::ExistsSet(v, b) => {
                let slot = self.set_count;
                self.set_count += 1;
                scope.push((v.clone(), slot, true));
                let body = self.compile(b, scope);
                scope.pop();
                if matches!(f, F::ForallSet(..)) {
                    Node::ForallSet(slot, body)
                } else {
                    Node::ExistsSet(slot, body)
                }
            }
            F::Eq(a, b) => Node::Eq(self.ind(a, scope), self.ind(b, scope)),
            F::Edg(a, b) => {
                let r = self.rel("edg");
                Node::Rel(r, self.ind(a, scope), self.ind(b, scope))
            }
            F::Inc(a, b) => {
                let r = self.rel("inc");
                Node::Rel(r, self.ind(a, scope), self.ind(b, scope))
            }
            F::In(a, s) => Node::In(self.ind(a, scope), self.set(s, scope)),
            F::Card(q, s) => Node::Card(*q, self.set(s, scope)),
            F::Pred(p, a) => {
                let p = self.pred(p);
                Node::Pred(p, self.ind(a, scope))
            }
        };
        self.push(node)
    }
}

fn children(n: &Node) -> Vec<NodeId> {
    match n {
        Node::And(v) | Node::Or(v) => v.clone(),
        Node::Not(a) | Node::Forall(_, a) | Node::Exists(_, a) | Node::ForallSet(_, a) | Node::ExistsSet(_, a) => {
            vec![*a]
        }
        Node::Implies(a, b) | Node::Iff(a, b) => vec![*a, *b],
        _ => vec![],
    }
}

fn to_mask(set: &FixedBitSet, size: usize) -> u64 {
    set.ones().filter(|&i| i < size).fold(0, |m, i| m | (1u64 << i))
}

impl Evaluator {
    pub fn new(s: &Structure, f: &Formula, budget: &Budget) -> Result<Evaluator> {
        let size = s.size();
        if size > 64 {
            return Err(Error::budget(format!("universe of {size} elements exceeds the evaluator limit of 64")));
        }
        if f.has_set_quantifier() && size > budget.set_universe {
            return Err(Error::budget(format!(
                "set quantifiers over a universe of {size} elements exceed the cap of {}",
                budget.set_universe
            )));
        }
        let mut c = Compiler {
            nodes: Vec::new(),
            rel_names: Vec::new(),
            pred_names: Vec::new(),
            ind_count: 0,
            set_count: 0,
            free_ind: BTreeMap::new(),
            free_set: BTreeMap::new(),
        };
        let root = c.compile(f, &mut Vec::new());
        let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut diag = Vec::new();
        for name in &c.rel_names {
            let mut r = vec![0u64; size];
            let mut t = vec![0u64; size];
            let mut d = 0u64;
            if let Some(rel) = s.relation(name) {
                for a in 0..size {
                    for b in rel[a].ones() {
                        r[a] |= 1 << b;
                        t[b] |= 1 << a;
                        if a == b {
                            d |= 1 << a;
                        }
                    }
                }
            }
            rows.push(r);
            cols.push(t);
            diag.push(d);
        }
        let preds = c.pred_names.iter().map(|p| s.predicate(p).map_or(0, |set| to_mask(set, size))).collect();
        let global_sets: Vec<Slot> = c.free_set.values().copied().collect();
        let mut ev = Evaluator {
            size,
            full,
            info: vec![Info::default(); c.nodes.len()],
            nodes: c.nodes,
            root,
            rows,
            cols,
            diag,
            preds,
            ind: vec![0; c.ind_count],
            ind_set: vec![false; c.ind_count],
            sets: vec![0; c.set_count],
            sets_set: vec![false; c.set_count],
            ind_slots: c.free_ind,
            set_slots: c.free_set,
            cache: HashMap::new(),
        };
        ev.analyse(&global_sets);
        Ok(ev)
    }

    fn analyse(&mut self, global_sets: &[Slot]) {
        // Children precede parents in the arena.
        for id in 0..self.nodes.len() {
            let node = self.nodes[id].clone();
            let mut free: Vec<Slot> = Vec::new();
            let mut free_sets: Vec<Slot> = Vec::new();
            let mut quantified = false;
            let add = |v: &mut Vec<Slot>, s: Slot| {
                if !v.contains(&s) {
                    v.push(s)
                }
            };
            match &node {
                Node::Eq(a, b) | Node::Rel(_, a, b) => {
                    add(&mut free, *a);
                    add(&mut free, *b);
                }
                Node::In(a, s) => {
                    add(&mut free, *a);
                    add(&mut free_sets, *s);
                }
                Node::Card(_, s) => add(&mut free_sets, *s),
                Node::Pred(_, a) => add(&mut free, *a),
                _ => {
                    for c in children(&node) {
                        for &s in &self.info[c].free {
                            add(&mut free, s);
                        }
                        for &s in &self.info[c].free_sets {
                            add(&mut free_sets, s);
                        }
                        quantified |= self.info[c].quantified;
                    }
                }
            }
            match node {
                Node::Forall(v, _) | Node::Exists(v, _) => {
                    free.retain(|&s| s != v);
                    quantified = true;
                }
                Node::ForallSet(v, _) | Node::ExistsSet(v, _) => {
                    free_sets.retain(|&s| s != v);
                    quantified = true;
                }
                _ => {}
            }
            self.info[id] = Info { free, free_sets, quantified, shape: None };
        }
        let mut shapes: HashMap<String, u32> = HashMap::new();
        for id in 0..self.nodes.len() {
            let info = &self.info[id];
            let cacheable = info.quantified
                && info.free.len() <= 10
                && info.free_sets.iter().all(|s| global_sets.contains(s));
            if cacheable {
                let mut names: Vec<(bool, Slot, String)> = info
                    .free
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| (false, s, format!("f{i}")))
                    .collect();
                names.extend(info.free_sets.iter().map(|&s| (true, s, format!("G{s}"))));
                let mut sig = String::new();
                self.signature(id, &mut names, &mut sig);
                let next = shapes.len() as u32;
                self.info[id].shape = Some(*shapes.entry(sig).or_insert(next));
            }
        }
    }

    fn signature(&self, id: NodeId, names: &mut Vec<(bool, Slot, String)>, out: &mut String) {
        let name = |names: &Vec<(bool, Slot, String)>, set: bool, s: Slot| -> String {
            names
                .iter()
                .rev()
                .find(|(k, slot, _)| *k == set && *slot == s)
                .map(|(_, _, n)| n.clone())
                .unwrap_or_else(|| "?".into())
        };
        match &self.nodes[id] {
            Node::And(v) | Node::Or(v) => {
                out.push_str(if matches!(self.nodes[id], Node::And(_)) { "(&" } else { "(|" });
                for &c in v {
                    self.signature(c, names, out);
                }
                out.push(')');
            }
            Node::Not(a) => {
                out.push_str("(!");
                self.signature(*a, names, out);
                out.push(')');
            }
            Node::Implies(a, b) | Node::Iff(a, b) => {
                out.push_str(if matches!(self.nodes[id], Node::Implies(..)) { "(>" } else { "(=" });
                self.signature(*a, names, out);
                self.signature(*b, names, out);
                out.push(')');
            }
            Node::Forall(v, b) | Node::Exists(v, b) | Node::ForallSet(v, b) | Node::ExistsSet(v, b) => {
                let set = matches!(self.nodes[id], Node::ForallSet(..) | Node::ExistsSet(..));
                let tag = match self.nodes[id] {
                    Node::Forall(..) => "A",
                    Node::Exists(..) => "E",
                    Node::ForallSet(..) => "AS",
                    _ => "ES",
                };
                let depth = names.len();
                out.push_str(&format!("({tag}b{depth}"));
                names.push((set, *v, format!("b{depth}")));
                self.signature(*b, names, out);
                names.pop();
                out.push(')');
            }
            Node::Eq(a, b) => out.push_str(&format!("(eq {} {})", name(names, false, *a), name(names, false, *b))),
            Node::Rel(r, a, b) => {
                out.push_str(&format!("(r{r} {} {})", name(names, false, *a), name(names, false, *b)))
            }
            Node::In(a, s) => out.push_str(&format!("(in {} {})", name(names, false, *a), name(names, true, *s))),
            Node::Card(q, s) => out.push_str(&format!("(card{q} {})", name(names, true, *s))),
            Node::Pred(p, a) => out.push_str(&format!("(p{p} {})", name(names, false, *a))),
        }
    }

    /// Fixes the value of a free set variable. Unknown names are ignored so
    /// callers may pass a superset of the parameters.
    pub fn set_param(&mut self, name: &str, members: &FixedBitSet) -> Result<()> {
        if let Some(&slot) = self.set_slots.get(name) {
            if members.ones().any(|i| i >= self.size) {
                return Err(Error::input(format!("set `{name}` has members outside the universe")));
            }
            let mask = to_mask(members, self.size);
            if !self.sets_set[slot] || self.sets[slot] != mask {
                self.cache.clear();
            }
            self.sets[slot] = mask;
            self.sets_set[slot] = true;
        }
        Ok(())
    }

    fn bind(&mut self, individuals: &[(&str, usize)]) -> Result<()> {
        for &(name, value) in individuals {
            if value >= self.size {
                return Err(Error::input(format!("element {value} outside universe of {}", self.size)));
            }
            if let Some(&slot) = self.ind_slots.get(name) {
                self.ind[slot] = value;
                self.ind_set[slot] = true;
            }
        }
        Ok(())
    }

    fn check_bound(&self, except: Option<&str>) -> Result<()> {
        for (name, &slot) in &self.ind_slots {
            if !self.ind_set[slot] && Some(name.as_str()) != except {
                return Err(Error::input(format!("free variable `{name}` is unbound")));
            }
        }
        for (name, &slot) in &self.set_slots {
            if !self.sets_set[slot] {
                return Err(Error::input(format!("free set variable `{name}` is unbound")));
            }
        }
        Ok(())
    }

    pub fn free_individuals(&self) -> impl Iterator<Item = &str> {
        self.ind_slots.keys().map(String::as_str)
    }

    /// Truth value with the given free individual variables.
    pub fn eval(&mut self, individuals: &[(&str, usize)]) -> Result<bool> {
        self.bind(individuals)?;
        self.check_bound(None)?;
        Ok(self.truth(self.root))
    }

    /// Mask of the values of `var` that satisfy the formula.
    pub fn vector(&mut self, var: &str, individuals: &[(&str, usize)]) -> Result<u64> {
        self.bind(individuals)?;
        self.check_bound(Some(var))?;
        match self.ind_slots.get(var) {
            Some(&slot) => Ok(self.vec_of(self.root, slot)),
            None => Ok(if self.truth(self.root) { self.full } else { 0 }),
        }
    }

    fn bit(&self, v: usize) -> u64 {
        1u64 << v
    }

    fn cache_key(&self, id: NodeId, vector: Option<Slot>) -> Option<(u32, u8, u64)> {
        let info = &self.info[id];
        let shape = info.shape?;
        let mut key = 0u64;
        let mut mode = 0u8;
        for (i, &s) in info.free.iter().enumerate() {
            if Some(s) == vector {
                mode = i as u8 + 1;
            } else {
                key = key << 6 | self.ind[s] as u64;
            }
        }
        Some((shape, mode, key))
    }

    fn truth(&mut self, id: NodeId) -> bool {
        if self.info[id].shape.is_some() {
            if let Some(&first) = self.info[id].free.first() {
                let mask = self.vec_of(id, first);
                return mask >> self.ind[first] & 1 == 1;
            }
            let key = self.cache_key(id, None).unwrap();
            if let Some(&v) = self.cache.get(&key) {
                return v == 1;
            }
            let v = self.truth_raw(id);
            self.cache.insert(key, v as u64);
            return v;
        }
        self.truth_raw(id)
    }

    fn truth_raw(&mut self, id: NodeId) -> bool {
        match self.nodes[id].clone() {
            Node::And(v) => v.iter().all(|&c| self.truth(c)),
            Node::Or(v) => v.iter().any(|&c| self.truth(c)),
            Node::Not(a) => !self.truth(a),
            Node::Implies(a, b) => !self.truth(a) || self.truth(b),
            Node::Iff(a, b) => self.truth(a) == self.truth(b),
            Node::Forall(v, b) => {
                if self.info[b].free.contains(&v) {
                    self.vec_of(b, v) == self.full
                } else {
                    self.size == 0 || self.truth(b)
                }
            }
            Node::Exists(v, b) => {
                if self.info[b].free.contains(&v) {
                    self.vec_of(b, v) != 0
                } else {
                    self.size > 0 && self.truth(b)
                }
            }
            Node::ForallSet(x, b) => {
                let saved = self.sets[x];
                let mut ok = true;
                for mask in 0..=self.full {
                    self.sets[x] = mask;
                    if !self.truth(b) {
                        ok = false;
                        break;
                    }
                    if mask == self.full {
                        break;
                    }
                }
                self.sets[x] = saved;
                ok
            }
            Node::ExistsSet(x, b) => {
                let saved = self.sets[x];
                let mut ok = false;
                for mask in 0..=self.full {
                    self.sets[x] = mask;
                    if self.truth(b) {
                        ok = true;
                        break;
                    }
                    if mask == self.full {
                        break;
                    }
                }
                self.sets[x] = saved;
                ok
            }
            Node::Eq(a, b) => self.ind[a] == self.ind[b],
            Node::Rel(r, a, b) => self.rows[r][self.ind[a]] >> self.ind[b] & 1 == 1,
            Node::In(a, s) => self.sets[s] >> self.ind[a] & 1 == 1,
            Node::Card(q, s) => self.sets[s].count_ones().is_multiple_of(q),
            Node::Pred(p, a) => self.preds[p] >> self.ind[a] & 1 == 1,
        }
    }

    fn vec_of(&mut self, id: NodeId, u: Slot) -> u64 {
        if !self.info[id].free.contains(&u) {
            return if self.truth(id) { self.full } else { 0 };
        }
        if let Some(key) = self.cache_key(id, Some(u)) {
            if let Some(&m) = self.cache.get(&key) {
                return m;
            }
            let m = self.vec_raw(id, u);
            self.cache.insert(key, m);
            return m;
        }
        self.vec_raw(id, u)
    }

    fn vec_raw(&mut self, id: NodeId, u: Slot) -> u64 {
        let full = self.full;
        match self.nodes[id].clone() {
            Node::And(v) => {
                let mut acc = full;
                for c in v {
                    acc &= self.vec_of(c, u);
                    if acc == 0 {
                        break;
                    }
                }
                acc
            }
            Node::Or(v) => {
                let mut acc = 0;
                for c in v {
                    acc |= self.vec_of(c, u);
                    if acc == full {
                        break;
                    }
                }
                acc
            }
            Node::Not(a) => full & !self.vec_of(a, u),
            Node::Implies(a, b) => {
                let va = self.vec_of(a, u);
                if va == 0 {
                    full
                } else {
                    full & (!va | self.vec_of(b, u))
                }
            }
            Node::Iff(a, b) => full & !(self.vec_of(a, u) ^ self.vec_of(b, u)),
            Node::Forall(w, b) => {
                let saved = self.ind[w];
                let mut acc = full;
                for val in 0..self.size {
                    self.ind[w] = val;
                    acc &= self.vec_of(b, u);
                    if acc == 0 {
                        break;
                    }
                }
                self.ind[w] = saved;
                acc
            }
            Node::Exists(w, b) => {
                let saved = self.ind[w];
                let mut acc = 0;
                for val in 0..self.size {
                    self.ind[w] = val;
                    acc |= self.vec_of(b, u);
                    if acc == full {
                        break;
                    }
                }
                self.ind[w] = saved;
                acc
            }
            Node::ForallSet(x, b) => {
                let saved = self.sets[x];
                let mut acc = full;
                for mask in 0..=full {
                    self.sets[x] = mask;
                    acc &= self.vec_of(b, u);
                    if acc == 0 || mask == full {
                        break;
                    }
                }
                self.sets[x] = saved;
                acc
            }
            Node::ExistsSet(x, b) => {
                let saved = self.sets[x];
                let mut acc = 0;
                for mask in 0..=full {
                    self.sets[x] = mask;
                    acc |= self.vec_of(b, u);
                    if acc == full || mask == full {
                        break;
                    }
                }
                self.sets[x] = saved;
                acc
            }
            Node::Eq(a, b) => match (a == u, b == u) {
                (true, true) => full,
                (true, false) => self.bit(self.ind[b]),
                (false, true) => self.bit(self.ind[a]),
                _ => unreachable!(),
            },
            Node::Rel(r, a, b) => match (a == u, b == u) {
                (true, true) => self.diag[r],
                (true, false) => self.cols[r][self.ind[b]],
                (false, true) => self.rows[r][self.ind[a]],
                _ => unreachable!(),
            },
            Node::In(_, s) => self.sets[s],
            Node::Pred(p, _) => self.preds[p],
            Node::Card(..) => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::mso::{parse_formula, Encoding};

    fn eval_str(s: &Structure, src: &str, a: &Assignment) -> bool {
        evaluate(s, &parse_formula(src).unwrap(), a, &Budget::default()).unwrap()
    }

    #[test]
    fn adjacency_atoms() {
        let g = generate(&FamilySpec::Path(3)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Floor);
        let a = Assignment::new().individual("x", 0).individual("y", 1);
        assert!(eval_str(&s, "(edg x y)", &a));
        assert!(!eval_str(&s, "(edg x x)", &a));
        assert!(eval_str(&s, "(forall x (exists y (edg x y)))", &Assignment::new()));
        assert!(eval_str(&s, "(exists x (forall y (or (= x y) (edg x y))))", &Assignment::new()));
    }

    #[test]
    fn set_quantifier_connectivity() {
        // A graph is connected iff every nonempty proper subset has an edge leaving it.
        let src = "(forallset X (implies (and (exists u (in u X)) (exists u (not (in u X)))) \
                   (exists u (exists v (and (in u X) (not (in v X)) (edg u v))))))";
        let conn = generate(&FamilySpec::Cycle(5)).unwrap();
        let disc = Graph2::two_edges();
        assert!(eval_str(&Structure::from_graph(&conn, Encoding::Floor), src, &Assignment::new()));
        assert!(!eval_str(&Structure::from_graph(&disc, Encoding::Floor), src, &Assignment::new()));
    }

    struct Graph2;
    impl Graph2 {
        fn two_edges() -> crate::graph::Graph {
            crate::graph::Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
        }
    }

    #[test]
    fn card_modulus() {
        let g = generate(&FamilySpec::Edgeless(5)).unwrap();
        let s = Structure::from_graph(&g, Encoding::Floor);
        let f = parse_formula("(card 2 X)").unwrap();
        for members in [vec![], vec![1, 3], vec![0, 1, 2]] {
            let a = Assignment::new().set("X", s.element_set(&members).unwrap());
            assert_eq!(evaluate(&s, &f, &a, &Budget::default()).unwrap(), members.len() % 2 == 0);
        }
    }

    #[test]
    fn unbound_and_budget_errors() {
        let s = Structure::from_graph(&generate(&FamilySpec::Path(2)).unwrap(), Encoding::Floor);
        let f = parse_formula("(edg x y)").unwrap();
        let a = Assignment::new().individual("x", 0);
        assert!(matches!(evaluate(&s, &f, &a, &Budget::default()), Err(Error::Input(_))));
        let big = Structure::from_graph(&generate(&FamilySpec::Path(17)).unwrap(), Encoding::Floor);
        let f = parse_formula("(existsset X (in x X))").unwrap();
        let a = Assignment::new().individual("x", 0);
        assert!(evaluate(&big, &f, &a, &Budget::default()).unwrap_err().is_budget());
        let wide = Budget::default().with_set_universe(17);
        assert!(evaluate(&big, &f, &a, &wide).unwrap());
    }

    #[test]
    fn missing_relation_reads_as_empty() {
        let s = Structure::from_graph(&generate(&FamilySpec::Path(2)).unwrap(), Encoding::Ceil);
        assert!(!eval_str(&s, "(exists x (exists y (edg x y)))", &Assignment::new()));
        assert!(eval_str(&s, "(exists x (exists y (inc x y)))", &Assignment::new()));
    }

    #[test]
    fn empty_universe() {
        let s = Structure::from_graph(&crate::graph::Graph::new(0), Encoding::Floor);
        assert!(eval_str(&s, "(forall x (edg x x))", &Assignment::new()));
        assert!(!eval_str(&s, "(exists x (= x x))", &Assignment::new()));
        assert!(eval_str(&s, "(forallset X (card 1 X))", &Assignment::new()));
    }

    #[test]
    fn shared_cache_across_renamed_copies() {
        // Reachability used twice with different variable names.
        let reach = |a: &str, b: &str| {
            format!(
                "(forallset R (implies (and (in {a} R) (forall s (forall t (implies (and (in s R) (edg s t)) (in t R))))) (in {b} R)))"
            )
        };
        let src = format!("(and {} {})", reach("x", "y"), reach("y", "x"));
        let g = Graph2::two_edges();
        let s = Structure::from_graph(&g, Encoding::Floor);
        let f = parse_formula(&src).unwrap();
        let mut ev = Evaluator::new(&s, &f, &Budget::default()).unwrap();
        let shapes: std::collections::HashSet<u32> = ev.info.iter().filter_map(|i| i.shape).collect();
        assert!(ev.info.iter().filter(|i| i.shape.is_some()).count() > shapes.len());
        assert!(ev.eval(&[("x", 0), ("y", 1)]).unwrap());
        assert!(!ev.eval(&[("x", 0), ("y", 2)]).unwrap());
        assert_eq!(ev.vector("y", &[("x", 3)]).unwrap(), 0b1100);
    }
}
