//! Perfect paths and the indecomposable Gorenstein-projective modules of a
//! monomial algebra.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{
    relation_cycles, ArrowId, MonomialAlgebra, Path, Presentation, Quiver, RelationCycle, VertexId,
};
use crate::strings::{canonical_string, cyclic_module_string, Letter, Word};

/// Why a pair of paths fails to be perfect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairFailure {
    /// The first path does not end where the second starts.
    EndpointMismatch,
    /// The product is nonzero.
    ProductNonzero,
    /// A nonzero path killed by the first one that does not start with the second.
    RightMinimality(Path),
    /// A nonzero path killed by the second one that does not end with the first.
    LeftMinimality(Path),
}

impl PairFailure {
    pub fn describe(&self, q: &Quiver) -> String {
        match self {
            PairFailure::EndpointMismatch => "endpoints do not match".into(),
            PairFailure::ProductNonzero => "the product is nonzero".into(),
            PairFailure::RightMinimality(w) => {
                format!("right minimality fails at {}", q.label(w))
            }
            PairFailure::LeftMinimality(w) => format!("left minimality fails at {}", q.label(w)),
        }
    }
}

fn require_nonzero(alg: &MonomialAlgebra<'_>, p: &Path) -> Result<()> {
    if p.is_trivial() || alg.is_zero(p) {
        Err(Error::NotNonzeroPath(alg.quiver().label(p)))
    } else {
        Ok(())
    }
}

/// Checks the perfect-pair axioms for `(p, q)`: `pq = 0`, every nonzero `w`
/// with `pw = 0` starts with `q`, every nonzero `w` with `wq = 0` ends with `p`.
pub fn check_perfect_pair(
    alg: &MonomialAlgebra<'_>,
    p: &Path,
    q: &Path,
) -> Result<std::result::Result<(), PairFailure>> {
    require_nonzero(alg, p)?;
    require_nonzero(alg, q)?;
    if p.target() != q.source() {
        return Ok(Err(PairFailure::EndpointMismatch));
    }
    if alg.multiply(p, q).is_some() {
        return Ok(Err(PairFailure::ProductNonzero));
    }
    for w in alg.starting_at(p.target()) {
        if alg.multiply(p, w).is_none() && !w.starts_with(q) {
            return Ok(Err(PairFailure::RightMinimality(w.clone())));
        }
    }
    for w in alg.ending_at(q.source()) {
        if alg.multiply(w, q).is_none() && !w.ends_with(p) {
            return Ok(Err(PairFailure::LeftMinimality(w.clone())));
        }
    }
    Ok(Ok(()))
}

pub fn is_perfect_pair(alg: &MonomialAlgebra<'_>, p: &Path, q: &Path) -> Result<bool> {
    Ok(check_perfect_pair(alg, p, q)?.is_ok())
}

/// The path `q` making `(p, q)` a perfect pair, if any.
pub fn perfect_partner(alg: &MonomialAlgebra<'_>, p: &Path) -> Result<Option<Path>> {
    require_nonzero(alg, p)?;
    for w in alg.starting_at(p.target()) {
        if alg.multiply(p, w).is_none() && is_perfect_pair(alg, p, w)? {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

/// Which module a Gorenstein-projective object is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GprojKind {
    /// The indecomposable projective at a vertex.
    Projective(VertexId),
    /// The cyclic module generated by a perfect path.
    Cyclic(Path),
}

impl GprojKind {
    /// The generator of the module inside the algebra.
    pub fn generator(&self) -> Path {
        match self {
            GprojKind::Projective(v) => Path::trivial(*v),
            GprojKind::Cyclic(p) => p.clone(),
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        match self {
            GprojKind::Projective(v) => format!("P({})", q.vertex_name(*v)),
            GprojKind::Cyclic(p) => format!("{}A", q.label(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gproj {
    pub kind: GprojKind,
    /// The module as a string.
    pub word: Word,
    pub dimension_vector: Vec<usize>,
}

/// Perfect paths and the resulting Gorenstein-projectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GprojReport {
    /// Perfect paths in (length, arrows) order.
    pub perfect_paths: Vec<Path>,
    /// Perfect path sequences, each starting at its least member.
    pub sequences: Vec<Vec<Path>>,
    /// Projectives first (vertex order), then one module per perfect path.
    pub objects: Vec<Gproj>,
    pub cm_free: bool,
    pub cm_finite: bool,
}

/// Computes every perfect path from the definition and groups them into
/// perfect path sequences (the cycles of the partner map).
pub fn perfect_paths(alg: &MonomialAlgebra<'_>) -> Result<GprojReport> {
    let mut partner: BTreeMap<Path, Path> = BTreeMap::new();
    for p in alg.nontrivial() {
        if let Some(q) = perfect_partner(alg, p)? {
            partner.insert(p.clone(), q);
        }
    }
    // A path is perfect when iterating the partner map returns to it.
    let mut sequences = Vec::new();
    let mut assigned: HashMap<Path, usize> = HashMap::new();
    for start in partner.keys() {
        if assigned.contains_key(start) {
            continue;
        }
        let mut walk = vec![start.clone()];
        let mut pos: HashMap<Path, usize> = HashMap::from([(start.clone(), 0)]);
        let mut cur = start.clone();
        let closed = loop {
            let Some(next) = partner.get(&cur) else {
                break None;
            };
            if let Some(&i) = pos.get(next) {
                break Some(i);
            }
            if assigned.contains_key(next) {
                break None;
            }
            pos.insert(next.clone(), walk.len());
            walk.push(next.clone());
            cur = next.clone();
        };
        for p in &walk {
            assigned.insert(p.clone(), usize::MAX);
        }
        if let Some(i) = closed {
            let mut cycle = walk[i..].to_vec();
            let least = (0..cycle.len())
                .min_by(|&a, &b| cycle[a].cmp(&cycle[b]))
                .unwrap();
            cycle.rotate_left(least);
            sequences.push(cycle);
        }
    }
    sequences.sort();
    let mut perfect: Vec<Path> = sequences.iter().flatten().cloned().collect();
    perfect.sort();
    let q = alg.quiver();
    let mut objects = Vec::new();
    for v in 0..q.vertex_count() {
        let word = projective_string(alg, v);
        objects.push(Gproj {
            kind: GprojKind::Projective(v),
            dimension_vector: word_dims(q, &word),
            word,
        });
    }
    for p in &perfect {
        let word = cyclic_module_string(alg, p)?;
        objects.push(Gproj {
            kind: GprojKind::Cyclic(p.clone()),
            dimension_vector: word_dims(q, &word),
            word: canonical_string(q, &word),
        });
    }
    Ok(GprojReport {
        cm_free: perfect.is_empty(),
        cm_finite: true,
        perfect_paths: perfect,
        sequences,
        objects,
    })
}

/// Longest nonzero path starting with the given arrow.
fn maximal_path_from(alg: &MonomialAlgebra<'_>, arrow: ArrowId) -> Path {
    let q = alg.quiver();
    let mut p = q.path(&[arrow]).expect("single arrow");
    while let Some(ext) = q
        .outgoing(p.target())
        .filter_map(|a| p.extended(q, a))
        .find(|e| alg.is_nonzero(e))
    {
        p = ext;
    }
    p
}

/// The projective `e_v A` as a string `p⁻¹·p'` through its top.
pub fn projective_string(alg: &MonomialAlgebra<'_>, v: VertexId) -> Word {
    let q = alg.quiver();
    let arms: Vec<Path> = q.outgoing(v).map(|a| maximal_path_from(alg, a)).collect();
    let mut word = Word::trivial(v);
    match arms.as_slice() {
        [] => {}
        [one] => word = Word::from_path(one),
        [left, right, ..] => {
            let mut letters: Vec<Letter> = Word::from_path(left).inverse(q).letters;
            letters.extend(Word::from_path(right).letters);
            word = Word {
                start: left.target(),
                letters,
            };
        }
    }
    canonical_string(q, &word)
}

pub(crate) fn word_dims(q: &Quiver, w: &Word) -> Vec<usize> {
    let mut dims = vec![0; q.vertex_count()];
    dims[w.start] += 1;
    for l in &w.letters {
        dims[l.target(q)] += 1;
    }
    dims
}

/// A perfect path sequence read off a relation cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteSequence {
    /// The chained relations `r_1, …, r_m`, each the product of two
    /// consecutive perfect paths.
    pub relations: Vec<Path>,
    pub perfect_paths: Vec<Path>,
}

/// Placement of a relation in lifted (unwrapped) cycle coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Placed {
    relation: usize,
    start: usize,
    len: usize,
}

/// Reads perfect path sequences off an oriented cycle by chaining relations
/// whose overlaps tile the cycle, keeping only chains whose junctions admit
/// no competing zero products on the branches leaving the cycle.
pub fn prs_route(alg: &MonomialAlgebra<'_>, cycle: &Path) -> Result<Vec<RouteSequence>> {
    let q = alg.quiver();
    let c = cycle.arrows();
    let n = c.len();
    if n == 0 || cycle.source() != cycle.target() {
        return Err(Error::NotACycle(q.label(cycle)));
    }
    let gens = alg.generators();
    let reads_at = |g: &Path, offset: usize| {
        g.arrows()
            .iter()
            .enumerate()
            .all(|(k, &a)| c[(offset + k) % n] == a)
    };
    // At most one minimal relation starts at each offset.
    let at_offset: Vec<Option<usize>> = (0..n)
        .map(|o| gens.iter().position(|g| reads_at(g, o)))
        .collect();
    let read = |start: usize, end: usize| -> Path {
        let arrows: Vec<ArrowId> = (start..end).map(|k| c[k % n]).collect();
        q.path(&arrows).expect("cycle segment composes")
    };
    // State: consecutive relations (prev, cur) with cur starting strictly
    // inside prev and ending strictly after it; normalized so prev.start < n.
    type State = (Placed, Placed);
    let normalize = |(a, b): State| -> State {
        let shift = (a.start / n) * n;
        (
            Placed {
                start: a.start - shift,
                ..a
            },
            Placed {
                start: b.start - shift,
                ..b
            },
        )
    };
    let next_state = |(prev, cur): State| -> Option<State> {
        let start = prev.start + prev.len;
        let relation = at_offset[start % n]?;
        let next = Placed {
            relation,
            start,
            len: gens[relation].len(),
        };
        let ok = cur.start < start
            && start < cur.start + cur.len
            && cur.start + cur.len < next.start + next.len;
        ok.then(|| normalize((cur, next)))
    };
    let mut states = Vec::new();
    for a in 0..n {
        let Some(ra) = at_offset[a] else { continue };
        let first = Placed {
            relation: ra,
            start: a,
            len: gens[ra].len(),
        };
        for b in a + 1..a + first.len {
            let Some(rb) = at_offset[b % n] else { continue };
            let second = Placed {
                relation: rb,
                start: b,
                len: gens[rb].len(),
            };
            if second.start + second.len > first.start + first.len {
                states.push((first, second));
            }
        }
    }
    let mut out = Vec::new();
    let mut done: HashMap<State, ()> = HashMap::new();
    for &s in &states {
        if done.contains_key(&s) {
            continue;
        }
        let mut seen: HashMap<State, usize> = HashMap::new();
        let mut walk = vec![s];
        let mut cur = s;
        let cycle_start = loop {
            seen.insert(cur, walk.len() - 1);
            match next_state(cur) {
                None => break None,
                Some(nx) => {
                    if let Some(&i) = seen.get(&nx) {
                        break Some(i);
                    }
                    if done.contains_key(&nx) {
                        break None;
                    }
                    walk.push(nx);
                    cur = nx;
                }
            }
        };
        for st in &walk {
            done.insert(*st, ());
        }
        let Some(i) = cycle_start else { continue };
        let orbit = &walk[i..];
        // The perfect path of state (prev, cur) is the overlap [cur.start, prev.end).
        let pieces: Vec<Path> = orbit
            .iter()
            .map(|(prev, cur)| read(cur.start, prev.start + prev.len))
            .collect();
        let relations: Vec<Path> = orbit
            .iter()
            .map(|(_, cur)| gens[cur.relation].clone())
            .collect();
        let m = pieces.len();
        let junctions_ok = (0..m).all(|k| junction_ok(alg, &pieces[k], &pieces[(k + 1) % m]));
        if !junctions_ok {
            continue;
        }
        for rot in 0..m {
            let mut ps = pieces.clone();
            ps.rotate_left(rot);
            let mut rs = relations.clone();
            rs.rotate_left(rot);
            out.push(RouteSequence {
                relations: rs,
                perfect_paths: ps,
            });
        }
    }
    out.sort_by(|a, b| a.perfect_paths.cmp(&b.perfect_paths));
    out.dedup();
    Ok(out)
}

/// At the junction `left → right` every branch leaving the cycle must stay
/// nonzero after `left` (and before `right`).
fn junction_ok(alg: &MonomialAlgebra<'_>, left: &Path, right: &Path) -> bool {
    let v = left.target();
    let forward = alg
        .starting_at(v)
        .filter(|w| w.first() != right.first())
        .all(|w| alg.multiply(left, w).is_some());
    let backward = alg
        .ending_at(v)
        .filter(|w| w.last() != left.last())
        .all(|w| alg.multiply(w, right).is_some());
    forward && backward
}

/// Relation cycles along which the closed path of a perfect path sequence
/// can be read cyclically.
pub fn hosting_cycles(p: &Presentation, sequence: &[Path]) -> Vec<RelationCycle> {
    let closed: Vec<ArrowId> = sequence
        .iter()
        .flat_map(|s| s.arrows().iter().copied())
        .collect();
    relation_cycles(p)
        .into_iter()
        .filter(|rc| {
            let c = rc.cycle.arrows();
            let n = c.len();
            closed.len().is_multiple_of(n)
                && (0..n).any(|o| closed.iter().enumerate().all(|(k, &a)| c[(o + k) % n] == a))
        })
        .collect()
}

/// Serializable summary of a [`GprojReport`].
#[derive(Debug, Clone, Serialize)]
pub struct GprojSummary {
    pub perfect_paths: Vec<String>,
    pub perfect_path_sequences: Vec<Vec<String>>,
    pub gprojectives: Vec<GprojEntry>,
    pub cm_free: bool,
    pub cm_finite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GprojEntry {
    pub kind: &'static str,
    pub label: String,
    pub string: String,
    pub dimension_vector: BTreeMap<String, usize>,
}

impl GprojReport {
    pub fn summary(&self, q: &Quiver) -> GprojSummary {
        GprojSummary {
            perfect_paths: self.perfect_paths.iter().map(|p| q.label(p)).collect(),
            perfect_path_sequences: self
                .sequences
                .iter()
                .map(|s| s.iter().map(|p| q.label(p)).collect())
                .collect(),
            gprojectives: self
                .objects
                .iter()
                .map(|g| GprojEntry {
                    kind: match g.kind {
                        GprojKind::Projective(_) => "projective",
                        GprojKind::Cyclic(_) => "nonprojective",
                    },
                    label: g.kind.label(q),
                    string: g.word.display(q),
                    dimension_vector: g
                        .dimension_vector
                        .iter()
                        .enumerate()
                        .map(|(v, &d)| (q.vertex_name(v).to_string(), d))
                        .collect(),
                })
                .collect(),
            cm_free: self.cm_free,
            cm_finite: self.cm_finite,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;

    fn labels(q: &Quiver, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| q.label(p)).collect()
    }

    #[test]
    fn gentle_triangle() {
        let p = parse("vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\nrel a.b\nrel b.c\nrel c.a\n").unwrap();
        let alg = MonomialAlgebra::new(&p).unwrap();
        let r = perfect_paths(&alg).unwrap();
        assert_eq!(labels(&p.quiver, &r.perfect_paths), ["a", "b", "c"]);
        assert_eq!(r.sequences.len(), 1);
        assert_eq!(r.objects.len(), 6);
        assert!(!r.cm_free);
    }

    #[test]
    fn linear_a4_is_cm_free() {
        let p = parse("vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\nrel a.b\nrel b.c\n").unwrap();
        let alg = MonomialAlgebra::new(&p).unwrap();
        let ab = p.quiver.path_from_str("a").unwrap();
        let b = p.quiver.path_from_str("b").unwrap();
        assert!(is_perfect_pair(&alg, &ab, &b).unwrap());
        let r = perfect_paths(&alg).unwrap();
        assert!(r.cm_free);
    }

    #[test]
    fn failure_witnesses() {
        let p = parse("vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\nrel a.b\nrel a.c\n").unwrap();
        let alg = MonomialAlgebra::new(&p).unwrap();
        let q = &p.quiver;
        let a = q.path_from_str("a").unwrap();
        let b = q.path_from_str("b").unwrap();
        let c = q.path_from_str("c").unwrap();
        assert_eq!(
            check_perfect_pair(&alg, &a, &b).unwrap(),
            Err(PairFailure::RightMinimality(c.clone()))
        );
        assert_eq!(
            check_perfect_pair(&alg, &b, &a).unwrap(),
            Err(PairFailure::EndpointMismatch)
        );
        assert!(check_perfect_pair(&alg, &q.path_from_str("ab").unwrap(), &b).is_err());
    }
}
