use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::parse_coterm;

/// A parametrised family whose orderability condition can be instantiated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// Part sizes of a complete multipartite graph.
    Multipartite { parts: Vec<usize> },
    /// Clique size and, per class of the independent side, the size of the
    /// shared neighbourhood and the number of vertices sharing it.
    Split { clique: usize, classes: Vec<(usize, usize)> },
    /// A coterm and the outdegree bound.
    Cograph { term: String, d: usize },
}

impl Family {
    pub fn from_json(text: &str) -> Result<Family> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("family: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    /// The inequality with the numbers filled in.
    pub instance: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub conditions: Vec<Condition>,
    pub holds: bool,
}

/// `2^e`, or `None` once it no longer fits.
fn pow2(e: usize) -> Option<u64> {
    (e < 64).then(|| 1u64 << e)
}

fn at_most_pow2(m: usize, e: usize) -> bool {
    pow2(e).is_none_or(|p| m as u64 <= p)
}

fn show_pow2(e: usize) -> String {
    pow2(e).map_or_else(|| format!("2^{e}"), |p| p.to_string())
}

pub fn check_class_conditions(family: &Family, s: usize) -> Result<ClassReport> {
    let conditions = match family {
        Family::Multipartite { parts } => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(Error::input("part sizes must be positive"));
            }
            let big = *parts.iter().max().unwrap();
            let total: usize = parts.iter().sum();
            let e = s * (total - big + 1);
            vec![Condition {
                name: "largest part".into(),
                instance: format!("M = {big} ≤ 2^({s}·({total} − {big} + 1)) = {}", show_pow2(e)),
                holds: at_most_pow2(big, e),
            }]
        }
        Family::Split { clique, classes } => {
            let mut out = Vec::new();
            for &(n, m) in classes {
                if n > *clique {
                    return Err(Error::input(format!("a neighbourhood of {n} exceeds the clique of {clique}")));
                }
                let e = s * (n + 1);
                out.push(Condition {
                    name: format!("class with |N| = {n}"),
                    instance: format!("m = {m} ≤ 2^({s}·({n} + 1)) = {}", show_pow2(e)),
                    holds: at_most_pow2(m, e),
                });
            }
            out
        }
        Family::Cograph { term, d } => {
            let t = parse_coterm(term)?;
            let out = t.max_outdegree();
            vec![Condition {
                name: "cotree outdegree".into(),
                instance: format!("outdegree {out} ≤ d = {d}"),
                holds: out <= *d,
            }]
        }
    };
    let holds = conditions.iter().all(|c| c.holds);
    Ok(ClassReport { conditions, holds })
}
