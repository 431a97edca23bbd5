use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Term over single vertices, disjoint union (`+`) and complete join (`*`).
///
/// A term is a cotree when every internal node has at least two children
/// and no child repeats its parent's operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoTerm {
    Leaf,
    Plus(Vec<CoTerm>),
    Times(Vec<CoTerm>),
}

impl CoTerm {
    pub fn leaves(&self) -> usize {
        match self {
            CoTerm::Leaf => 1,
            CoTerm::Plus(c) | CoTerm::Times(c) => c.iter().map(CoTerm::leaves).sum(),
        }
    }

    /// Height of the term; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            CoTerm::Leaf => 0,
            CoTerm::Plus(c) | CoTerm::Times(c) => 1 + c.iter().map(CoTerm::depth).max().unwrap_or(0),
        }
    }

    pub fn max_outdegree(&self) -> usize {
        match self {
            CoTerm::Leaf => 0,
            CoTerm::Plus(c) | CoTerm::Times(c) => {
                c.iter().map(CoTerm::max_outdegree).max().unwrap_or(0).max(c.len())
            }
        }
    }

    pub fn children(&self) -> &[CoTerm] {
        match self {
            CoTerm::Leaf => &[],
            CoTerm::Plus(c) | CoTerm::Times(c) => c,
        }
    }

    pub fn is_cotree(&self) -> bool {
        match self {
            CoTerm::Leaf => true,
            CoTerm::Plus(c) => {
                c.len() >= 2 && c.iter().all(|t| !matches!(t, CoTerm::Plus(_)) && t.is_cotree())
            }
            CoTerm::Times(c) => {
                c.len() >= 2 && c.iter().all(|t| !matches!(t, CoTerm::Times(_)) && t.is_cotree())
            }
        }
    }

    /// Isomorphism-invariant form: children sorted recursively.
    pub fn canonical(&self) -> CoTerm {
        match self {
            CoTerm::Leaf => CoTerm::Leaf,
            CoTerm::Plus(c) => {
                let mut kids: Vec<CoTerm> = c.iter().map(CoTerm::canonical).collect();
                kids.sort();
                CoTerm::Plus(kids)
            }
            CoTerm::Times(c) => {
                let mut kids: Vec<CoTerm> = c.iter().map(CoTerm::canonical).collect();
                kids.sort();
                CoTerm::Times(kids)
            }
        }
    }
}

impl fmt::Display for CoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kids, op) = match self {
            CoTerm::Leaf => return write!(f, "1"),
            CoTerm::Plus(c) => (c, " + "),
            CoTerm::Times(c) => (c, " * "),
        };
        write!(f, "(")?;
        for (i, t) in kids.iter().enumerate() {
            if i > 0 {
                write!(f, "{op}")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// Graph of a term; leaves become vertices `0..` in left-to-right order.
pub fn cograph_from_coterm(t: &CoTerm) -> Result<Graph> {
    fn build(t: &CoTerm, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> Result<(usize, usize)> {
        let start = *next;
        match t {
            CoTerm::Leaf => *next += 1,
            CoTerm::Plus(c) | CoTerm::Times(c) => {
                if c.is_empty() {
                    return Err(Error::input("term node without children"));
                }
                let mut blocks = Vec::with_capacity(c.len());
                for child in c {
                    blocks.push(build(child, next, edges)?);
                }
                if matches!(t, CoTerm::Times(_)) {
                    for (i, &(a0, a1)) in blocks.iter().enumerate() {
                        for &(b0, b1) in &blocks[i + 1..] {
                            for x in a0..a1 {
                                for y in b0..b1 {
                                    edges.push((x, y));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok((start, *next))
    }
    let mut next = 0;
    let mut edges = Vec::new();
    build(t, &mut next, &mut edges)?;
    Graph::from_edges(next, edges)
}

/// Parses terms such as `(1 + 1) * (1 + 1 + 1)`.
///
/// `*` binds tighter than `+`; `⊕` and `⊗` are accepted as synonyms.
/// Chains of one operator become a single n-ary node; parentheses keep
/// their nesting, so `(1 + 1) + 1` is not a cotree.
pub fn parse_coterm(text: &str) -> Result<CoTerm> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, if c == '⊕' { '+' } else if c == '⊗' { '*' } else { c }))
        .collect();
    let mut pos = 0;
    let t = parse_sum(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(coterm_err(&chars, pos, "trailing input"));
    }
    Ok(t)
}

fn coterm_err(chars: &[(usize, char)], pos: usize, msg: &str) -> Error {
    let col = chars.get(pos).map_or(chars.last().map_or(0, |c| c.0 + 1), |c| c.0) + 1;
    Error::Parse { line: 1, col, msg: format!("malformed term: {msg}") }
}

fn parse_sum(chars: &[(usize, char)], pos: &mut usize) -> Result<CoTerm> {
    let mut parts = vec![parse_product(chars, pos)?];
    while chars.get(*pos).map(|c| c.1) == Some('+') {
        *pos += 1;
        parts.push(parse_product(chars, pos)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { CoTerm::Plus(parts) })
}

fn parse_product(chars: &[(usize, char)], pos: &mut usize) -> Result<CoTerm> {
    let mut parts = vec![parse_atom(chars, pos)?];
    while chars.get(*pos).map(|c| c.1) == Some('*') {
        *pos += 1;
        parts.push(parse_atom(chars, pos)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { CoTerm::Times(parts) })
}

fn parse_atom(chars: &[(usize, char)], pos: &mut usize) -> Result<CoTerm> {
    match chars.get(*pos).map(|c| c.1) {
        Some('1') => {
            *pos += 1;
            Ok(CoTerm::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let t = parse_sum(chars, pos)?;
            if chars.get(*pos).map(|c| c.1) != Some(')') {
                return Err(coterm_err(chars, *pos, "expected `)`"));
            }
            *pos += 1;
            Ok(t)
        }
        _ => Err(coterm_err(chars, *pos, "expected `1` or `(`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_from_term() {
        let t = parse_coterm("(1 + 1) * (1 + 1 + 1)").unwrap();
        assert!(t.is_cotree());
        let g = cograph_from_coterm(&t).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 6);
        assert!(!g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn precedence_and_nesting() {
        let t = parse_coterm("1 + 1 * 1").unwrap();
        assert_eq!(t, CoTerm::Plus(vec![CoTerm::Leaf, CoTerm::Times(vec![CoTerm::Leaf, CoTerm::Leaf])]));
        assert!(!parse_coterm("(1 + 1) + 1").unwrap().is_cotree());
        assert_eq!(parse_coterm("1 ⊗ 1").unwrap(), CoTerm::Times(vec![CoTerm::Leaf; 2]));
    }

    #[test]
    fn malformed_terms() {
        for bad in ["", "(1 + 1", "1 +", "2", "1 1", "()"] {
            assert!(parse_coterm(bad).is_err(), "accepted {bad:?}");
        }
        assert!(cograph_from_coterm(&CoTerm::Plus(vec![])).is_err());
    }

    #[test]
    fn display_round_trips() {
        let t = parse_coterm("((1 * 1) + 1) * 1").unwrap();
        assert_eq!(parse_coterm(&t.to_string()).unwrap(), t);
        assert_eq!(t.depth(), 3);
        assert_eq!(t.max_outdegree(), 2);
    }
}
