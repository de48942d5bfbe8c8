//! Oriented cycles and the relations chained around them.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{ArrowId, Path, Presentation, Quiver};

/// Every closed walk that uses each arrow at most once, rotated so that it
/// starts with its smallest arrow id.
pub fn oriented_cycles(quiver: &Quiver) -> Vec<Path> {
    let mut out = Vec::new();
    for start in 0..quiver.arrow_count() {
        let mut walk = vec![start];
        let mut used = vec![false; quiver.arrow_count()];
        used[start] = true;
        extend_cycles(quiver, start, &mut walk, &mut used, &mut out);
    }
    out.sort();
    out
}

fn extend_cycles(
    quiver: &Quiver,
    start: ArrowId,
    walk: &mut Vec<ArrowId>,
    used: &mut [bool],
    out: &mut Vec<Path>,
) {
    let end = quiver.arrow(*walk.last().unwrap()).target;
    if end == quiver.arrow(start).source {
        out.push(quiver.path(walk).expect("walk composes"));
    }
    let next: Vec<ArrowId> = quiver
        .outgoing(end)
        .filter(|&a| a > start && !used[a])
        .collect();
    for a in next {
        used[a] = true;
        walk.push(a);
        extend_cycles(quiver, start, walk, used, out);
        walk.pop();
        used[a] = false;
    }
}

/// A relation read off a cycle cyclically, starting at arrow position `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionedRelation {
    pub relation: Path,
    pub offset: usize,
    /// How many times the relation passes the cycle's base point.
    pub wraps: usize,
}

/// An oriented cycle whose relations chain all the way around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCycle {
    pub cycle: Path,
    /// The positioned relations lying on a closed chain.
    pub relations: Vec<PositionedRelation>,
    /// All chained relations have length 2.
    pub gentle: bool,
}

/// Every placement of a monomial relation along the cycle.
pub(crate) fn positioned_relations(p: &Presentation, cycle: &Path) -> Vec<PositionedRelation> {
    let c = cycle.arrows();
    let n = c.len();
    let mut out = Vec::new();
    for offset in 0..n {
        for g in p.monomials() {
            let reads = g
                .arrows()
                .iter()
                .enumerate()
                .all(|(k, &a)| c[(offset + k) % n] == a);
            if reads {
                out.push(PositionedRelation {
                    relation: g.clone(),
                    offset,
                    wraps: (offset + g.len() - 1) / n,
                });
            }
        }
    }
    out
}

/// Shifts `delta` with which `next` can follow `prev`: it starts strictly
/// inside `prev` (sharing at least one arrow) and ends strictly after it.
pub(crate) fn chain_shifts(
    prev: &PositionedRelation,
    next: &PositionedRelation,
    n: usize,
) -> Vec<usize> {
    let d = (next.offset + n - prev.offset) % n;
    let lp = prev.relation.len();
    let mut shifts = Vec::new();
    let mut delta = if d == 0 { n } else { d };
    while delta < lp {
        if delta + next.relation.len() > lp {
            shifts.push(delta);
        }
        delta += n;
    }
    shifts
}

/// The oriented cycles admitting a closed chain of overlapping relations.
pub fn relation_cycles(p: &Presentation) -> Vec<RelationCycle> {
    let mut out = Vec::new();
    for cycle in oriented_cycles(&p.quiver) {
        let placed = positioned_relations(p, &cycle);
        let n = cycle.len();
        let mut graph = DiGraph::<usize, ()>::new();
        let nodes: Vec<_> = (0..placed.len()).map(|i| graph.add_node(i)).collect();
        for (i, r) in placed.iter().enumerate() {
            for (j, s) in placed.iter().enumerate() {
                if !chain_shifts(r, s, n).is_empty() {
                    graph.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let mut on_cycle: Vec<usize> = tarjan_scc(&graph)
            .into_iter()
            .filter(|comp| comp.len() > 1 || graph.contains_edge(comp[0], comp[0]))
            .flatten()
            .map(|ix| graph[ix])
            .collect();
        if on_cycle.is_empty() {
            continue;
        }
        on_cycle.sort_unstable();
        let relations: Vec<PositionedRelation> =
            on_cycle.into_iter().map(|i| placed[i].clone()).collect();
        let gentle = relations.iter().all(|r| r.relation.len() == 2);
        out.push(RelationCycle {
            cycle,
            relations,
            gentle,
        });
    }
    out
}
