use std::fmt;

use serde::Serialize;

use super::{ArrowId, MonomialAlgebra, Presentation};
use crate::error::Error;

/// One failed structural axiom, with a witness in arrow and vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    NonMonomial {
        relation: String,
    },
    OutDegree {
        vertex: String,
        degree: usize,
    },
    InDegree {
        vertex: String,
        degree: usize,
    },
    NonzeroSuccessors {
        arrow: String,
        successors: Vec<String>,
    },
    NonzeroPredecessors {
        arrow: String,
        predecessors: Vec<String>,
    },
    InfiniteDimensional {
        path: String,
    },
    LongRelation {
        relation: String,
    },
    ZeroSuccessors {
        arrow: String,
        successors: Vec<String>,
    },
    ZeroPredecessors {
        arrow: String,
        predecessors: Vec<String>,
    },
}

impl Violation {
    /// Axioms whose failure rules out a string algebra (the rest only rule out gentleness).
    pub fn breaks_string(&self) -> bool {
        !matches!(
            self,
            Violation::LongRelation { .. }
                | Violation::ZeroSuccessors { .. }
                | Violation::ZeroPredecessors { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonMonomial { relation } => write!(f, "relation {relation} is not monomial"),
            Violation::OutDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has {degree} outgoing arrows")
            }
            Violation::InDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has {degree} incoming arrows")
            }
            Violation::NonzeroSuccessors { arrow, successors } => write!(
                f,
                "arrow {arrow} has several nonzero continuations: {}",
                successors.join(", ")
            ),
            Violation::NonzeroPredecessors {
                arrow,
                predecessors,
            } => write!(
                f,
                "arrow {arrow} has several nonzero predecessors: {}",
                predecessors.join(", ")
            ),
            Violation::InfiniteDimensional { path } => {
                write!(f, "nonzero path {path} exceeds the length cap")
            }
            Violation::LongRelation { relation } => {
                write!(f, "relation {relation} has length above 2")
            }
            Violation::ZeroSuccessors { arrow, successors } => write!(
                f,
                "arrow {arrow} has several zero continuations: {}",
                successors.join(", ")
            ),
            Violation::ZeroPredecessors {
                arrow,
                predecessors,
            } => write!(
                f,
                "arrow {arrow} has several zero predecessors: {}",
                predecessors.join(", ")
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_monomial: bool,
    pub is_string: bool,
    pub is_gentle: bool,
    pub violations: Vec<Violation>,
}

/// Checks the string-algebra and gentle axioms.
pub fn classify(p: &Presentation) -> StructureReport {
    let q = &p.quiver;
    let mut violations = Vec::new();
    for r in &p.relations {
        if !r.is_monomial() {
            let text = r
                .terms
                .iter()
                .map(|t| q.dotted(&t.path))
                .collect::<Vec<_>>()
                .join(" = ");
            violations.push(Violation::NonMonomial { relation: text });
        }
    }
    for v in 0..q.vertex_count() {
        let out = q.outgoing(v).count();
        if out > 2 {
            violations.push(Violation::OutDegree {
                vertex: q.vertex_name(v).to_string(),
                degree: out,
            });
        }
        let inc = q.incoming(v).count();
        if inc > 2 {
            violations.push(Violation::InDegree {
                vertex: q.vertex_name(v).to_string(),
                degree: inc,
            });
        }
    }
    let zero_pair = |a: ArrowId, b: ArrowId| p.monomials().iter().any(|g| g.arrows() == [a, b]);
    let name = |a: ArrowId| q.arrow(a).name.clone();
    for a in 0..q.arrow_count() {
        let t = q.arrow(a).target;
        let (zero, nonzero): (Vec<_>, Vec<_>) = q.outgoing(t).partition(|&b| zero_pair(a, b));
        if nonzero.len() > 1 {
            violations.push(Violation::NonzeroSuccessors {
                arrow: name(a),
                successors: nonzero.iter().map(|&b| name(b)).collect(),
            });
        }
        if zero.len() > 1 {
            violations.push(Violation::ZeroSuccessors {
                arrow: name(a),
                successors: zero.iter().map(|&b| name(b)).collect(),
            });
        }
        let s = q.arrow(a).source;
        let (zero, nonzero): (Vec<_>, Vec<_>) = q.incoming(s).partition(|&b| zero_pair(b, a));
        if nonzero.len() > 1 {
            violations.push(Violation::NonzeroPredecessors {
                arrow: name(a),
                predecessors: nonzero.iter().map(|&b| name(b)).collect(),
            });
        }
        if zero.len() > 1 {
            violations.push(Violation::ZeroPredecessors {
                arrow: name(a),
                predecessors: zero.iter().map(|&b| name(b)).collect(),
            });
        }
    }
    for g in p.monomials() {
        if g.len() > 2 {
            violations.push(Violation::LongRelation {
                relation: q.dotted(g),
            });
        }
    }
    let is_monomial = p.is_monomial();
    if is_monomial {
        if let Err(Error::PathCapExceeded { path, .. }) = MonomialAlgebra::new(p) {
            violations.push(Violation::InfiniteDimensional { path });
        }
    }
    let is_string = !violations.iter().any(Violation::breaks_string);
    StructureReport {
        is_monomial,
        is_string,
        is_gentle: is_string && violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;

    #[test]
    fn kronecker_is_gentle() {
        let p = parse("vertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n").unwrap();
        let r = classify(&p);
        assert!(r.is_gentle && r.is_string && r.is_monomial);
    }

    #[test]
    fn long_relations_are_string_not_gentle() {
        let p = parse("vertices 1 2 3\narrow x: 1 -> 2\narrow y: 2 -> 3\narrow z: 3 -> 1\nrel x.y.z.x\nrel y.z.x.y\nrel z.x.y.z\n").unwrap();
        let r = classify(&p);
        assert!(r.is_string && !r.is_gentle);
        assert!(matches!(r.violations[0], Violation::LongRelation { .. }));
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let p = parse("vertices 1\narrow a: 1 -> 1\n").unwrap();
        let r = classify(&p);
        assert!(!r.is_string);
        assert!(matches!(
            r.violations[0],
            Violation::InfiniteDimensional { .. }
        ));
    }

    #[test]
    fn branching_without_relations_is_not_string() {
        let p =
            parse("vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n").unwrap();
        let r = classify(&p);
        assert!(!r.is_string);
        assert_eq!(
            r.violations,
            vec![Violation::NonzeroSuccessors {
                arrow: "a".into(),
                successors: vec!["b".into(), "c".into()]
            }]
        );
    }

    #[test]
    fn commutative_square_is_not_monomial() {
        let p = parse("vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrel a.b = c.d\n").unwrap();
        let r = classify(&p);
        assert!(!r.is_monomial && !r.is_string);
    }
}
