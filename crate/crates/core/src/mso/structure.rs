use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// How a graph is turned into a relational structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    /// Universe `V`, binary relation `edg`.
    Floor,
    /// Universe `V ∪ E`, binary relation `inc` from a vertex to an edge.
    Ceil,
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floor" => Ok(Encoding::Floor),
            "ceil" => Ok(Encoding::Ceil),
            other => Err(Error::input(format!("unknown encoding `{other}` (floor|ceil)"))),
        }
    }
}

/// Universe element of a graph encoding, written `v:<id>` or `e:<u>-<v>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

impl Element {
    /// Edge element with its endpoints in `(min, max)` order.
    pub fn edge(u: usize, v: usize) -> Element {
        Element::Edge(u.min(v), u.max(v))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v:{v}"),
            Element::Edge(u, v) => write!(f, "e:{u}-{v}"),
        }
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("malformed element `{s}` (expected v:<id> or e:<u>-<v>)"));
        if let Some(rest) = s.strip_prefix("v:") {
            return rest.parse().map(Element::Vertex).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("e:") {
            let (a, b) = rest.split_once('-').ok_or_else(bad)?;
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a >= b {
                return Err(bad());
            }
            return Ok(Element::Edge(a, b));
        }
        Err(bad())
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite relational structure with named binary relations and unary
/// predicates. Absent relation or predicate names read as empty.
#[derive(Clone, Debug)]
pub struct Structure {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    encoding: Encoding,
    vertex_count: usize,
    relations: BTreeMap<String, Vec<FixedBitSet>>,
    predicates: BTreeMap<String, FixedBitSet>,
}

impl Structure {
    /// Encodes `g`. In the ceil encoding the vertices come first, followed
    /// by the edges in `(min, max)` order.
    pub fn from_graph(g: &Graph, encoding: Encoding) -> Structure {
        let n = g.n();
        let mut elements: Vec<Element> = (0..n).map(Element::Vertex).collect();
        let edges = g.edges();
        if encoding == Encoding::Ceil {
            elements.extend(edges.iter().map(|&(u, v)| Element::Edge(u, v)));
        }
        let size = elements.len();
        let mut rel = vec![FixedBitSet::with_capacity(size); size];
        match encoding {
            Encoding::Floor => {
                for &(u, v) in &edges {
                    rel[u].insert(v);
                    rel[v].insert(u);
                }
            }
            Encoding::Ceil => {
                for (i, &(u, v)) in edges.iter().enumerate() {
                    rel[u].insert(n + i);
                    rel[v].insert(n + i);
                }
            }
        }
        let name = match encoding {
            Encoding::Floor => "edg",
            Encoding::Ceil => "inc",
        };
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Structure {
            elements,
            index,
            encoding,
            vertex_count: n,
            relations: BTreeMap::from([(name.to_string(), rel)]),
            predicates: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) the unary predicate `name`.
    pub fn with_predicate(mut self, name: &str, members: &[usize]) -> Result<Structure> {
        let set = self.element_set(members)?;
        self.predicates.insert(name.to_string(), set);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Element {
        self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::input(format!("element {e} is not in the universe")))
    }

    /// Parses a name such as `v:3` and resolves it.
    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(&name.parse()?)
    }

    pub fn relation(&self, name: &str) -> Option<&[FixedBitSet]> {
        self.relations.get(name).map(Vec::as_slice)
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    pub fn holds(&self, rel: &str, a: usize, b: usize) -> bool {
        self.relations.get(rel).is_some_and(|rows| rows[a].contains(b))
    }

    pub fn predicate(&self, name: &str) -> Option<&FixedBitSet> {
        self.predicates.get(name)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &FixedBitSet)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Endpoints of element `i` when it is an edge of a ceil encoding.
    pub fn endpoints(&self, i: usize) -> Option<(usize, usize)> {
        match self.elements[i] {
            Element::Edge(u, v) => Some((u, v)),
            Element::Vertex(_) => None,
        }
    }

    pub fn element_set(&self, members: &[usize]) -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(self.size());
        for &m in members {
            if m >= self.size() {
                return Err(Error::input(format!("element index {m} outside universe of {}", self.size())));
            }
            set.insert(m);
        }
        Ok(set)
    }

    /// Resolves element names into a set.
    pub fn named_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        let idx = names.iter().map(|n| self.lookup(n.as_ref())).collect::<Result<Vec<_>>>()?;
        self.element_set(&idx)
    }
}
