//! G-condition, forbidden threads, homological dimensions and derived type
//! of gentle algebras.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::{find_negative_cycle, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gproj::{hosting_cycles, perfect_paths};
use crate::quiver::{
    classify, ArrowId, MonomialAlgebra, Path, Presentation, RelationCycle, VertexId,
};
use crate::strings::{canonical_band, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCondition {
    pub ok: bool,
    /// A non-gentle relation cycle carrying a perfect path sequence.
    pub witness: Option<RelationCycle>,
}

/// Every relation cycle carrying a perfect path sequence must be gentle.
pub fn satisfies_g_condition(pres: &Presentation) -> Result<GCondition> {
    let alg = MonomialAlgebra::new(pres)?;
    let report = perfect_paths(&alg)?;
    for seq in &report.sequences {
        let hosts = hosting_cycles(pres, seq);
        if let Some(bad) = hosts.iter().find(|rc| !rc.gentle) {
            return Ok(GCondition {
                ok: false,
                witness: Some(bad.clone()),
            });
        }
        if hosts.is_empty() || seq.iter().any(|p| p.len() != 1) {
            return Ok(GCondition {
                ok: false,
                witness: None,
            });
        }
    }
    Ok(GCondition {
        ok: true,
        witness: None,
    })
}

fn require_gentle(pres: &Presentation) -> Result<()> {
    let r = classify(pres);
    if r.is_gentle {
        Ok(())
    } else {
        let why = r
            .violations
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        Err(Error::NotGentle(why))
    }
}

/// A forbidden path: consecutive arrows compose into a relation. Trivial ones
/// sit at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ForbiddenPath {
    Trivial(VertexId),
    Arrows(Vec<ArrowId>),
}

impl ForbiddenPath {
    pub fn len(&self) -> usize {
        match self {
            ForbiddenPath::Trivial(_) => 0,
            ForbiddenPath::Arrows(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn display(&self, pres: &Presentation) -> String {
        let q = &pres.quiver;
        match self {
            ForbiddenPath::Trivial(v) => format!("e_{}", q.vertex_name(*v)),
            ForbiddenPath::Arrows(a) => a
                .iter()
                .map(|&x| q.arrow(x).name.as_str())
                .collect::<Vec<_>>()
                .join("."),
        }
    }
}

/// Arrows as nodes, with an edge `α -> β` whenever `αβ` is a relation.
#[derive(Debug, Clone)]
pub struct RelationGraph {
    next: Vec<Option<ArrowId>>,
    prev: Vec<Option<ArrowId>>,
}

impl RelationGraph {
    pub fn new(pres: &Presentation) -> Self {
        let n = pres.quiver.arrow_count();
        let mut next = vec![None; n];
        let mut prev = vec![None; n];
        for g in pres.monomials() {
            if let [a, b] = g.arrows() {
                next[*a] = Some(*b);
                prev[*b] = Some(*a);
            }
        }
        Self { next, prev }
    }

    /// Arrows lying on a cycle of the graph, grouped by cycle.
    pub fn cycles(&self) -> Vec<Vec<ArrowId>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.next.len()];
        for start in 0..self.next.len() {
            if seen[start] {
                continue;
            }
            let mut walk = vec![start];
            let mut cur = start;
            let closes = loop {
                match self.next[cur] {
                    Some(n) if n == start => break true,
                    Some(n) if !walk.contains(&n) => {
                        walk.push(n);
                        cur = n;
                    }
                    _ => break false,
                }
            };
            if closes {
                for &a in &walk {
                    seen[a] = true;
                }
                out.push(walk);
            }
        }
        out
    }

    /// Maximal walks in the acyclic part, from sources to sinks.
    pub fn chains(&self) -> Vec<Vec<ArrowId>> {
        (0..self.next.len())
            .filter(|&a| self.prev[a].is_none())
            .map(|start| {
                let mut walk = vec![start];
                while let Some(n) = self.next[*walk.last().unwrap()] {
                    walk.push(n);
                }
                walk
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenReport {
    /// The relation graph has a cycle: forbidden paths of every length exist.
    pub unbounded: bool,
    /// Arrows on gentle relation cycles, one group per cycle.
    pub cycles: Vec<Vec<ArrowId>>,
    /// Longest forbidden paths in the acyclic part (the nontrivial threads).
    pub maximal_paths: Vec<ForbiddenPath>,
    /// Forbidden threads: maximal nontrivial ones and trivial ones.
    pub threads: Vec<ForbiddenPath>,
}

pub fn forbidden_structures(pres: &Presentation) -> Result<ForbiddenReport> {
    require_gentle(pres)?;
    let graph = RelationGraph::new(pres);
    let q = &pres.quiver;
    let cycles = graph.cycles();
    let chains: Vec<ForbiddenPath> = graph
        .chains()
        .into_iter()
        .map(ForbiddenPath::Arrows)
        .collect();
    let mut threads = chains.clone();
    for v in 0..q.vertex_count() {
        let ins: Vec<ArrowId> = q.incoming(v).collect();
        let outs: Vec<ArrowId> = q.outgoing(v).collect();
        let qualifies = ins.len() <= 1
            && outs.len() <= 1
            && match (ins.first(), outs.first()) {
                (Some(&a), Some(&b)) => graph.next[a] == Some(b),
                _ => true,
            };
        if qualifies {
            threads.push(ForbiddenPath::Trivial(v));
        }
    }
    threads.sort();
    Ok(ForbiddenReport {
        unbounded: !cycles.is_empty(),
        cycles,
        maximal_paths: chains,
        threads,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    /// `None` stands for infinity.
    pub gldim: Option<usize>,
    pub injdim: usize,
    /// Longest forbidden path using no arrow of a gentle relation cycle.
    pub off_cycle_sup: usize,
    /// Number of arrows on gentle relation cycles.
    pub on_cycle_arrows: usize,
}

pub fn homological_dimensions(pres: &Presentation) -> Result<Dimensions> {
    let f = forbidden_structures(pres)?;
    let thread_sup = f.threads.iter().map(ForbiddenPath::len).max().unwrap_or(0);
    // Chains never touch cycle arrows (in-/out-degree one in the graph), so
    // forbidden paths off the cycles are exactly subwalks of chains.
    let off_cycle_sup = f
        .maximal_paths
        .iter()
        .map(ForbiddenPath::len)
        .max()
        .unwrap_or(0);
    Ok(Dimensions {
        gldim: if f.unbounded { None } else { Some(thread_sup) },
        injdim: thread_sup,
        off_cycle_sup,
        on_cycle_arrows: f.cycles.iter().map(Vec::len).sum(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivedClass {
    Discrete,
    StronglyUnbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedReport {
    pub class: DerivedClass,
    /// A homotopy band, flattened to arrow letters, in canonical band form.
    pub witness: Option<Word>,
}

/// A homotopy letter: a nonzero path read forwards or backwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct HomotopyLetter {
    path: Path,
    inverse: bool,
}

/// Homotopy letters and their allowed successions; weights `+1` for direct
/// letters and `-1` for inverse ones.
fn homotopy_graph(alg: &MonomialAlgebra<'_>) -> DiGraph<HomotopyLetter, i64> {
    let pres = alg.presentation();
    let zero2 = |a: ArrowId, b: ArrowId| pres.monomials().iter().any(|g| g.arrows() == [a, b]);
    let mut g = DiGraph::new();
    let letters: Vec<(HomotopyLetter, NodeIndex)> = alg
        .nontrivial()
        .flat_map(|p| {
            [false, true].map(|inverse| HomotopyLetter {
                path: p.clone(),
                inverse,
            })
        })
        .map(|l| {
            let ix = g.add_node(l.clone());
            (l, ix)
        })
        .collect();
    for (x, ix) in &letters {
        for (y, iy) in &letters {
            let (u, w) = (&x.path, &y.path);
            let allowed = match (x.inverse, y.inverse) {
                (false, false) => {
                    u.target() == w.source() && zero2(u.last().unwrap(), w.first().unwrap())
                }
                (true, true) => {
                    w.target() == u.source() && zero2(w.last().unwrap(), u.first().unwrap())
                }
                (false, true) => u.target() == w.target() && u.last() != w.last(),
                (true, false) => u.source() == w.source() && u.first() != w.first(),
            };
            if allowed {
                g.add_edge(*ix, *iy, if y.inverse { -1 } else { 1 });
            }
        }
    }
    g
}

/// Derived-discrete exactly when there is no homotopy band: a closed walk of
/// homotopy letters with as many direct as inverse letters.
pub fn derived_class(pres: &Presentation) -> Result<DerivedReport> {
    require_gentle(pres)?;
    let alg = MonomialAlgebra::new(pres)?;
    let graph = homotopy_graph(&alg);
    for component in tarjan_scc(&graph) {
        if component.len() == 1 && !graph.contains_edge(component[0], component[0]) {
            continue;
        }
        if !has_zero_closed_walk(&graph, &component) {
            continue;
        }
        let walk = shortest_zero_closed_walk(&graph, &component);
        let q = &pres.quiver;
        let mut letters = Vec::new();
        for ix in walk {
            let l = &graph[ix];
            let w = Word::from_path(&l.path);
            let w = if l.inverse { w.inverse(q) } else { w };
            letters.extend(w.letters);
        }
        let word = Word::from_letters(q, letters)?;
        return Ok(DerivedReport {
            class: DerivedClass::StronglyUnbounded,
            witness: Some(canonical_band(q, &word)),
        });
    }
    Ok(DerivedReport {
        class: DerivedClass::Discrete,
        witness: None,
    })
}

/// Inside a strongly connected component, a closed walk of weight zero exists
/// iff some simple cycle has weight `<= 0` and some has weight `>= 0`.
fn has_zero_closed_walk(graph: &DiGraph<HomotopyLetter, i64>, component: &[NodeIndex]) -> bool {
    let n = component.len() as f64;
    let has_cycle_with_sign = |sign: i64| {
        let mut sub: DiGraph<(), f64> = DiGraph::new();
        let map: HashMap<NodeIndex, NodeIndex> =
            component.iter().map(|&c| (c, sub.add_node(()))).collect();
        for &c in component {
            for e in graph.edges(c) {
                if let Some(&t) = map.get(&e.target()) {
                    // A simple cycle has weight <= 0 (times sign) iff its
                    // scaled weight minus its length is negative.
                    let w = (n + 1.0) * (sign * *e.weight()) as f64 - 1.0;
                    sub.add_edge(map[&c], t, w);
                }
            }
        }
        find_negative_cycle(&sub, map[&component[0]]).is_some()
    };
    has_cycle_with_sign(1) && has_cycle_with_sign(-1)
}

/// Shortest closed walk of total weight zero (necessarily primitive).
fn shortest_zero_closed_walk(
    graph: &DiGraph<HomotopyLetter, i64>,
    component: &[NodeIndex],
) -> Vec<NodeIndex> {
    let inside: std::collections::HashSet<NodeIndex> = component.iter().copied().collect();
    let mut bound = 2 * component.len() as i64;
    loop {
        let mut best: Option<Vec<NodeIndex>> = None;
        for &start in component {
            type State = (NodeIndex, i64);
            let mut parent: HashMap<State, State> = HashMap::new();
            let mut queue = VecDeque::from([(start, 0i64)]);
            let mut found = None;
            'bfs: while let Some((u, w)) = queue.pop_front() {
                for e in graph.edges(u) {
                    let v = e.target();
                    if !inside.contains(&v) {
                        continue;
                    }
                    let nw = w + e.weight();
                    if v == start && nw == 0 {
                        found = Some((u, w));
                        break 'bfs;
                    }
                    if nw.abs() > bound || parent.contains_key(&(v, nw)) || (v, nw) == (start, 0) {
                        continue;
                    }
                    parent.insert((v, nw), (u, w));
                    queue.push_back((v, nw));
                }
            }
            if let Some(mut at) = found {
                let mut walk = vec![at.0];
                while at != (start, 0) {
                    at = parent[&at];
                    walk.push(at.0);
                }
                walk.pop();
                walk.push(start);
                walk.reverse();
                if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                    best = Some(walk);
                }
            }
        }
        if let Some(w) = best {
            return w;
        }
        bound *= 2;
    }
}
