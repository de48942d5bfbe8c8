//! Quivers, paths and bound-quiver presentations.

mod classify;
mod cycles;
mod dsl;
mod paths;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use classify::{classify, StructureReport, Violation};
pub use cycles::{oriented_cycles, relation_cycles, PositionedRelation, RelationCycle};
pub use dsl::{parse, to_dsl};
pub use paths::{overlap, overlap_at, overlaps, path_cap, MonomialAlgebra, Overlap};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver whose vertices and arrows keep their declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_ids: HashMap<String, VertexId>,
    arrow_ids: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_ids.contains_key(&name) {
            return Err(Error::Duplicate {
                kind: "vertex",
                name,
            });
        }
        let id = self.vertices.len();
        self.vertex_ids.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        target: VertexId,
    ) -> Result<ArrowId> {
        let name = name.into();
        if self.arrow_ids.contains_key(&name) {
            return Err(Error::Duplicate {
                kind: "arrow",
                name,
            });
        }
        let id = self.arrows.len();
        self.arrow_ids.insert(name.clone(), id);
        self.arrows.push(Arrow {
            name,
            source,
            target,
        });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_ids.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_ids.get(name).copied()
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Builds a path from arrow ids, checking composability.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::NotNonzeroPath("(empty)".into()))?;
        for pair in arrows.windows(2) {
            if self.arrows[pair[0]].target != self.arrows[pair[1]].source {
                return Err(Error::NotComposable {
                    first: self.arrows[pair[0]].name.clone(),
                    second: self.arrows[pair[1]].name.clone(),
                });
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Parses `a.b.c` (or `abc` when every arrow name is a single character).
    pub fn path_from_str(&self, text: &str) -> Result<Path> {
        let names: Vec<String> = if text.contains('.') {
            text.split('.').map(str::to_string).collect()
        } else if let Some(id) = self.arrow_id(text) {
            return self.path(&[id]);
        } else if let Some(v) = self.vertex_id(text) {
            return Ok(Path::trivial(v));
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        let ids = names
            .iter()
            .map(|n| {
                self.arrow_id(n)
                    .ok_or_else(|| Error::UnknownArrow(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path(&ids)
    }

    /// Compact label: arrow names concatenated when all are single characters,
    /// joined by `·` otherwise.
    pub fn label(&self, path: &Path) -> String {
        if path.is_trivial() {
            return format!("e{}", self.vertex_name(path.source));
        }
        let names: Vec<&str> = path
            .arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join("·")
        }
    }

    /// Dotted form accepted by the parser: `a.b.c`.
    pub fn dotted(&self, path: &Path) -> String {
        path.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A path in a quiver. Trivial paths have no arrows and equal endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }

    /// Concatenation `self · other`; `None` when the endpoints do not match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// Appends one arrow whose source must be `self.target()`.
    pub fn extended(&self, quiver: &Quiver, arrow: ArrowId) -> Option<Path> {
        let a = quiver.arrow(arrow);
        if a.source != self.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Some(Path {
            source: self.source,
            target: a.target,
            arrows,
        })
    }

    /// The subpath covering arrows `start..end`; needs the quiver for endpoints.
    pub fn slice(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 {
                self.source
            } else {
                quiver.arrow(self.arrows[start - 1]).target
            };
            return Path::trivial(v);
        }
        Path {
            source: quiver.arrow(self.arrows[start]).source,
            target: quiver.arrow(self.arrows[end - 1]).target,
            arrows: self.arrows[start..end].to_vec(),
        }
    }

    pub fn starts_with(&self, prefix: &Path) -> bool {
        prefix.source == self.source && self.arrows.starts_with(&prefix.arrows)
    }

    pub fn ends_with(&self, suffix: &Path) -> bool {
        suffix.target == self.target && self.arrows.ends_with(&suffix.arrows)
    }

    /// Whether `inner` occurs as a contiguous nontrivial subpath.
    pub fn contains(&self, inner: &Path) -> bool {
        !inner.arrows.is_empty() && contains_seq(&self.arrows, &inner.arrows)
    }
}

pub(crate) fn contains_seq(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Paths are ordered by length, then arrow ids, then source vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub path: Path,
}

/// A relation is a linear combination of parallel paths. One term: a zero
/// relation; two terms with coefficients `1, -1`: a commutativity relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn zero(path: Path) -> Self {
        Self {
            terms: vec![Term {
                coefficient: 1,
                path,
            }],
        }
    }

    pub fn commutativity(left: Path, right: Path) -> Self {
        Self {
            terms: vec![
                Term {
                    coefficient: 1,
                    path: left,
                },
                Term {
                    coefficient: -1,
                    path: right,
                },
            ],
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn monomial(&self) -> Option<&Path> {
        if self.is_monomial() {
            Some(&self.terms[0].path)
        } else {
            None
        }
    }

    /// The two sides `(p, q)` of a binomial `p - q`.
    pub fn binomial(&self) -> Option<(&Path, &Path)> {
        match self.terms.as_slice() {
            [a, b] if a.coefficient == -b.coefficient && a.coefficient.abs() == 1 => {
                Some((&a.path, &b.path))
            }
            _ => None,
        }
    }

    /// DSL form: `a.b` for a zero relation, `a.b = c.d` for a commutativity.
    pub fn display(&self, q: &Quiver) -> String {
        match (self.monomial(), self.binomial()) {
            (Some(m), _) => q.dotted(m),
            (None, Some((l, r))) => format!("{} = {}", q.dotted(l), q.dotted(r)),
            _ => unreachable!("presentations hold only zero and commutativity relations"),
        }
    }
}

/// Whether a vertex of a presentation comes from the input algebra or stands
/// for a nonprojective Gorenstein-projective module.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    #[default]
    Original,
    Gproj,
}

/// A bound quiver `kQ/I` with `I` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub kinds: Vec<VertexKind>,
}

impl Presentation {
    /// Validates relations and drops monomial generators that contain another
    /// generator, so that stored monomial generators are minimal.
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let kinds = vec![VertexKind::Original; quiver.vertex_count()];
        Self::with_kinds(quiver, relations, kinds)
    }

    pub fn with_kinds(
        quiver: Quiver,
        relations: Vec<Relation>,
        kinds: Vec<VertexKind>,
    ) -> Result<Self> {
        for (index, rel) in relations.iter().enumerate() {
            let Some(first) = rel.terms.first() else {
                return Err(Error::BadRelation {
                    index,
                    reason: "no terms".into(),
                });
            };
            for t in &rel.terms {
                if t.path.len() < 2 {
                    return Err(Error::BadRelation {
                        index,
                        reason: format!("term `{}` has length below 2", quiver.dotted(&t.path)),
                    });
                }
                if t.path.source != first.path.source || t.path.target != first.path.target {
                    return Err(Error::BadRelation {
                        index,
                        reason: "terms are not parallel".into(),
                    });
                }
            }
            if rel.terms.len() > 1 && rel.binomial().is_none() {
                return Err(Error::BadRelation {
                    index,
                    reason: "only zero relations and `p = q` relations are supported".into(),
                });
            }
        }
        let monomials: Vec<&Path> = relations.iter().filter_map(Relation::monomial).collect();
        let mut kept = Vec::new();
        for (index, rel) in relations.iter().enumerate() {
            if let Some(p) = rel.monomial() {
                let redundant = monomials.iter().enumerate().any(|(j, q)| {
                    (q.len() < p.len() && p.contains(q))
                        || (*q == p && j < monomial_rank(&relations, index))
                });
                if !redundant {
                    kept.push(rel.clone());
                }
            } else {
                for t in &rel.terms {
                    if monomials.iter().any(|q| t.path.contains(q)) {
                        return Err(Error::BadRelation {
                            index,
                            reason: format!(
                                "term `{}` contains a zero relation",
                                quiver.dotted(&t.path)
                            ),
                        });
                    }
                }
                kept.push(rel.clone());
            }
        }
        Ok(Self {
            quiver,
            relations: kept,
            kinds,
        })
    }

    /// The monomial generators in relation order.
    pub fn monomials(&self) -> Vec<&Path> {
        self.relations
            .iter()
            .filter_map(Relation::monomial)
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    /// Whether a path is killed by a monomial generator.
    pub fn contains_zero_relation(&self, path: &Path) -> bool {
        self.relations
            .iter()
            .filter_map(Relation::monomial)
            .any(|g| path.contains(g))
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations
            .iter()
            .flat_map(|r| r.terms.iter().map(|t| t.path.len()))
            .max()
            .unwrap_or(0)
    }
}

/// Index of relation `index` among the monomial relations.
fn monomial_rank(relations: &[Relation], index: usize) -> usize {
    relations[..index]
        .iter()
        .filter(|r| r.is_monomial())
        .count()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_dsl(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Quiver {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", 0, 1).unwrap();
        q.add_arrow("b", 1, 2).unwrap();
        q
    }

    #[test]
    fn paths_compose_and_order() {
        let q = line();
        let ab = q.path(&[0, 1]).unwrap();
        assert_eq!((ab.source(), ab.target()), (0, 2));
        assert!(q.path(&[1, 0]).is_err());
        let a = q.path(&[0]).unwrap();
        assert!(a < ab);
        assert!(Path::trivial(2) < a);
        assert_eq!(q.label(&ab), "ab");
        assert_eq!(q.path_from_str("a.b").unwrap(), ab);
        assert_eq!(q.path_from_str("ab").unwrap(), ab);
        assert_eq!(ab.slice(&q, 1, 1), Path::trivial(1));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let mut q = line();
        q.add_vertex("4").unwrap();
        q.add_arrow("c", 2, 3).unwrap();
        let ab = q.path(&[0, 1]).unwrap();
        let abc = q.path(&[0, 1, 2]).unwrap();
        let p = Presentation::new(
            q,
            vec![
                Relation::zero(abc),
                Relation::zero(ab.clone()),
                Relation::zero(ab),
            ],
        )
        .unwrap();
        assert_eq!(p.relations.len(), 1);
    }
}
