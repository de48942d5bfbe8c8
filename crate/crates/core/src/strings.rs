//! Strings, bands and their modules over a string algebra.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::quiver::{ArrowId, MonomialAlgebra, Path, Presentation, Quiver, VertexId};
use crate::rep::Representation;

/// A direct or inverse arrow. Direct letters sort before inverse ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub inverse: bool,
    pub arrow: ArrowId,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Self {
            inverse: false,
            arrow,
        }
    }

    pub fn inverse_of(arrow: ArrowId) -> Self {
        Self {
            inverse: true,
            arrow,
        }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            arrow: self.arrow,
        }
    }

    pub fn source(self, q: &Quiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, q: &Quiver) -> VertexId {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn display(self, q: &Quiver) -> String {
        let name = &q.arrow(self.arrow).name;
        if self.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }
}

/// A walk in the quiver; trivial words are anchored at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub start: VertexId,
    pub letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .cmp(&other.letters)
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            start: v,
            letters: Vec::new(),
        }
    }

    /// Builds a word from letters; the start is the first letter's source.
    pub fn from_letters(q: &Quiver, letters: Vec<Letter>) -> Result<Self> {
        let first = *letters.first().ok_or_else(|| Error::NotAString {
            word: String::new(),
            reason: "empty letter list".into(),
        })?;
        let w = Self {
            start: first.source(q),
            letters,
        };
        w.check_composable(q)?;
        Ok(w)
    }

    /// A direct word spelling a path.
    pub fn from_path(path: &Path) -> Self {
        Self {
            start: path.source(),
            letters: path.arrows().iter().map(|&a| Letter::direct(a)).collect(),
        }
    }

    /// Parses `a.b^-1.c`; a trivial word is written `e_<vertex>`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(v) = text
            .strip_prefix("e_")
            .filter(|_| q.arrow_id(text).is_none())
        {
            let v = q
                .vertex_id(v)
                .ok_or_else(|| Error::UnknownVertex(v.into()))?;
            return Ok(Self::trivial(v));
        }
        let letters = text
            .split('.')
            .map(|tok| {
                let (name, inverse) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let arrow = q
                    .arrow_id(name)
                    .ok_or_else(|| Error::UnknownArrow(name.into()))?;
                Ok(Letter { inverse, arrow })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(q, letters)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> VertexId {
        self.letters.last().map_or(self.start, |l| l.target(q))
    }

    pub fn inverse(&self, q: &Quiver) -> Self {
        Self {
            start: self.end(q),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| l.display(q))
            .collect::<Vec<_>>()
            .join(".")
    }

    fn check_composable(&self, q: &Quiver) -> Result<()> {
        let mut at = self.start;
        for l in &self.letters {
            if l.source(q) != at {
                return Err(Error::NotAString {
                    word: self.display(q),
                    reason: format!(
                        "letter {} does not start at {}",
                        l.display(q),
                        q.vertex_name(at)
                    ),
                });
            }
            at = l.target(q);
        }
        Ok(())
    }

    fn repeated(&self, times: usize) -> Self {
        Self {
            start: self.start,
            letters: self.letters.repeat(times),
        }
    }

    fn rotated(&self, q: &Quiver, k: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Self {
            start: letters[0].source(q),
            letters,
        }
    }
}

fn not_a_string(q: &Quiver, w: &Word, reason: impl Into<String>) -> Error {
    Error::NotAString {
        word: w.display(q),
        reason: reason.into(),
    }
}

/// Checks the string axioms directly: composable, reduced, and no direct or
/// inverse run contains a relation.
pub fn check_string(p: &Presentation, w: &Word) -> Result<()> {
    let q = &p.quiver;
    if w.start >= q.vertex_count() {
        return Err(Error::UnknownVertex(w.start.to_string()));
    }
    w.check_composable(q)?;
    for pair in w.letters.windows(2) {
        if pair[1] == pair[0].inv() {
            return Err(not_a_string(
                q,
                w,
                format!("{} is followed by its inverse", pair[0].display(q)),
            ));
        }
    }
    let gens = p.monomials();
    let mut i = 0;
    while i < w.letters.len() {
        let inverse = w.letters[i].inverse;
        let mut j = i;
        while j < w.letters.len() && w.letters[j].inverse == inverse {
            j += 1;
        }
        let mut run: Vec<ArrowId> = w.letters[i..j].iter().map(|l| l.arrow).collect();
        if inverse {
            run.reverse();
        }
        if let Some(g) = gens
            .iter()
            .find(|g| crate::quiver::contains_seq(&run, g.arrows()))
        {
            return Err(not_a_string(
                q,
                w,
                format!("contains the relation {}", q.label(g)),
            ));
        }
        i = j;
    }
    Ok(())
}

pub fn is_string(p: &Presentation, w: &Word) -> bool {
    check_string(p, w).is_ok()
}

/// `min(w, w⁻¹)`.
pub fn canonical_string(q: &Quiver, w: &Word) -> Word {
    let inv = w.inverse(q);
    if inv < *w {
        inv
    } else {
        w.clone()
    }
}

/// Least rotation of `w` or `w⁻¹`.
pub fn canonical_band(q: &Quiver, w: &Word) -> Word {
    let inv = w.inverse(q);
    (0..w.len())
        .flat_map(|k| [w.rotated(q, k), inv.rotated(q, k)])
        .min()
        .unwrap_or_else(|| w.clone())
}

/// Automaton state while reading a word letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WalkState {
    Start(VertexId),
    After {
        last: Letter,
        /// Longest suffix of the current run (in reading order) that is a
        /// proper prefix of a relation read in the run's direction.
        buffer: Vec<ArrowId>,
    },
}

/// Deterministic automaton accepting exactly the strings.
#[derive(Debug, Clone)]
pub struct WalkAutomaton<'a> {
    quiver: &'a Quiver,
    forward: Vec<Vec<ArrowId>>,
    backward: Vec<Vec<ArrowId>>,
}

impl<'a> WalkAutomaton<'a> {
    pub fn new(p: &'a Presentation) -> Self {
        let forward: Vec<Vec<ArrowId>> =
            p.monomials().iter().map(|g| g.arrows().to_vec()).collect();
        let backward = forward
            .iter()
            .map(|g| g.iter().rev().copied().collect())
            .collect();
        Self {
            quiver: &p.quiver,
            forward,
            backward,
        }
    }

    pub fn starts(&self) -> impl Iterator<Item = WalkState> {
        (0..self.quiver.vertex_count()).map(WalkState::Start)
    }

    pub fn position(&self, s: &WalkState) -> VertexId {
        match s {
            WalkState::Start(v) => *v,
            WalkState::After { last, .. } => last.target(self.quiver),
        }
    }

    /// The letters that can follow the state, in canonical order.
    pub fn letters_from(&self, s: &WalkState) -> Vec<Letter> {
        let v = self.position(s);
        let mut out: Vec<Letter> = self
            .quiver
            .outgoing(v)
            .map(Letter::direct)
            .chain(self.quiver.incoming(v).map(Letter::inverse_of))
            .collect();
        out.sort();
        out
    }

    pub fn step(&self, s: &WalkState, letter: Letter) -> Option<WalkState> {
        if letter.source(self.quiver) != self.position(s) {
            return None;
        }
        let mut run = Vec::new();
        if let WalkState::After { last, buffer } = s {
            if letter == last.inv() {
                return None;
            }
            if last.inverse == letter.inverse {
                run.extend_from_slice(buffer);
            }
        }
        run.push(letter.arrow);
        let patterns = if letter.inverse {
            &self.backward
        } else {
            &self.forward
        };
        if patterns.iter().any(|g| run.ends_with(g)) {
            return None;
        }
        let keep = (0..run.len())
            .find(|&k| {
                let suffix = &run[k..];
                patterns
                    .iter()
                    .any(|g| g.len() > suffix.len() && g.starts_with(suffix))
            })
            .unwrap_or(run.len());
        Some(WalkState::After {
            last: letter,
            buffer: run[keep..].to_vec(),
        })
    }

    /// Runs the automaton over a word from its start vertex.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut s = WalkState::Start(w.start);
        for &l in &w.letters {
            match self.step(&s, l) {
                Some(n) => s = n,
                None => return false,
            }
        }
        true
    }
}

/// All strings of length at most `max_len`, one per equivalence class, in
/// canonical form and sorted.
pub fn enumerate_strings(p: &Presentation, max_len: usize) -> Vec<Word> {
    let q = &p.quiver;
    let aut = WalkAutomaton::new(p);
    let mut found = BTreeSet::new();
    for s in aut.starts() {
        let WalkState::Start(v) = s else {
            unreachable!()
        };
        let mut stack = vec![(s, Word::trivial(v))];
        while let Some((state, word)) = stack.pop() {
            found.insert(canonical_string(q, &word));
            if word.len() == max_len {
                continue;
            }
            for l in aut.letters_from(&state) {
                if let Some(next) = aut.step(&state, l) {
                    let mut w = word.clone();
                    w.letters.push(l);
                    stack.push((next, w));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Every string up to equivalence, for algebras of finite type: lengths are
/// raised until no string of the next length exists. `None` for infinite type.
pub fn all_strings(p: &Presentation) -> Option<Vec<Word>> {
    if !representation_type(p).finite {
        return None;
    }
    let mut len = 0;
    let mut current = enumerate_strings(p, len);
    loop {
        let next = enumerate_strings(p, len + 1);
        if next.len() == current.len() {
            return Some(current);
        }
        current = next;
        len += 1;
    }
}

/// Outcome of the representation-type test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationType {
    pub finite: bool,
    /// A cyclic word read off a cycle of the automaton (canonical band form).
    pub witness: Option<Word>,
    pub witness_is_band: bool,
}

/// Finite type holds exactly when the reachable part of the walk automaton
/// has no cycle, i.e. there are finitely many strings and no bands.
pub fn representation_type(p: &Presentation) -> RepresentationType {
    let q = &p.quiver;
    let aut = WalkAutomaton::new(p);
    let mut graph: DiGraph<WalkState, Letter> = DiGraph::new();
    let mut index: HashMap<WalkState, NodeIndex> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in aut.starts() {
        let ix = graph.add_node(s.clone());
        index.insert(s.clone(), ix);
        queue.push_back(s);
    }
    while let Some(s) = queue.pop_front() {
        let from = index[&s];
        for l in aut.letters_from(&s) {
            if let Some(n) = aut.step(&s, l) {
                let to = *index.entry(n.clone()).or_insert_with(|| {
                    queue.push_back(n.clone());
                    graph.add_node(n)
                });
                graph.add_edge(from, to, l);
            }
        }
    }
    let cyclic = tarjan_scc(&graph)
        .into_iter()
        .find(|c| c.len() > 1 || graph.contains_edge(c[0], c[0]));
    let Some(component) = cyclic else {
        return RepresentationType {
            finite: true,
            witness: None,
            witness_is_band: false,
        };
    };
    let letters = cycle_letters(&graph, &component);
    let word = Word::from_letters(q, letters).expect("automaton cycle composes");
    let root = primitive_root(q, &word);
    let witness_is_band = check_band(p, &root).is_ok();
    RepresentationType {
        finite: false,
        witness: Some(canonical_band(q, &root)),
        witness_is_band,
    }
}

/// Letters along a shortest cycle through the first node of a strongly
/// connected component.
fn cycle_letters(graph: &DiGraph<WalkState, Letter>, component: &[NodeIndex]) -> Vec<Letter> {
    let inside: HashSet<NodeIndex> = component.iter().copied().collect();
    let root = component[0];
    let mut parent: HashMap<NodeIndex, (NodeIndex, Letter)> = HashMap::new();
    let mut queue = VecDeque::from([root]);
    let mut seen = HashSet::from([root]);
    while let Some(u) = queue.pop_front() {
        for e in graph.edges(u) {
            use petgraph::visit::EdgeRef;
            let v = e.target();
            if !inside.contains(&v) {
                continue;
            }
            if v == root {
                let mut letters = vec![*e.weight()];
                let mut at = u;
                while at != root {
                    let (prev, l) = parent[&at];
                    letters.push(l);
                    at = prev;
                }
                letters.reverse();
                return letters;
            }
            if seen.insert(v) {
                parent.insert(v, (u, *e.weight()));
                queue.push_back(v);
            }
        }
    }
    unreachable!("a strongly connected component with an edge has a cycle")
}

fn primitive_root(q: &Quiver, w: &Word) -> Word {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (0..n).all(|i| w.letters[i] == w.letters[i % d]) {
            return Word::from_letters(q, w.letters[..d].to_vec()).expect("prefix composes");
        }
    }
    w.clone()
}

fn not_a_band(q: &Quiver, w: &Word, reason: impl Into<String>) -> Error {
    Error::NotABand {
        word: w.display(q),
        reason: reason.into(),
    }
}

/// Checks that `w` is a band: a closed string, not a proper power, all of
/// whose powers are strings, with both direct and inverse letters.
pub fn check_band(p: &Presentation, w: &Word) -> Result<()> {
    let q = &p.quiver;
    if w.is_trivial() {
        return Err(not_a_band(q, w, "trivial word"));
    }
    w.check_composable(q)?;
    if w.end(q) != w.start {
        return Err(not_a_band(q, w, "not closed"));
    }
    check_string(p, w)?;
    if primitive_root(q, w).len() < w.len() {
        return Err(not_a_band(q, w, "proper power"));
    }
    // Enough repetitions that every window of relation length is covered.
    let longest = p.max_relation_len().max(1);
    let times = 2.max(longest.div_ceil(w.len()) + 1);
    if let Err(Error::NotAString { reason, .. }) = check_string(p, &w.repeated(times)) {
        return Err(not_a_band(
            q,
            w,
            format!("its powers are not strings: {reason}"),
        ));
    }
    let mixed = w.letters.iter().any(|l| l.inverse) && w.letters.iter().any(|l| !l.inverse);
    if !mixed {
        return Err(not_a_band(q, w, "needs both direct and inverse letters"));
    }
    Ok(())
}

/// The string module `M(w)`: one basis vector per point of the walk.
pub fn string_module(p: &Presentation, w: &Word) -> Result<Representation> {
    check_string(p, w)?;
    let q = &p.quiver;
    let mut dims = vec![0usize; q.vertex_count()];
    let mut slot = Vec::with_capacity(w.len() + 1);
    let mut at = w.start;
    slot.push(at);
    for l in &w.letters {
        at = l.target(q);
        slot.push(at);
    }
    let point_index: Vec<usize> = slot
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (i, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow].set(
            point_index[to],
            point_index[from],
            Rational::from_integer(1.into()),
        );
    }
    Ok(Representation { dims, maps })
}

/// The band module `M(b, λ, n)`: `n`-dimensional blocks at each point of the
/// band, identity maps everywhere except a Jordan block on the last letter.
pub fn band_module(
    p: &Presentation,
    b: &Word,
    lambda: &Rational,
    size: usize,
) -> Result<Representation> {
    let q = &p.quiver;
    check_band(p, b)?;
    if lambda.is_zero() {
        return Err(not_a_band(q, b, "the parameter must be nonzero"));
    }
    if size == 0 {
        return Err(not_a_band(q, b, "the block size must be positive"));
    }
    let n = b.len();
    let mut dims = vec![0usize; q.vertex_count()];
    let mut offset = Vec::with_capacity(n);
    let mut at = b.start;
    for l in &b.letters {
        offset.push(dims[at]);
        dims[at] += size;
        at = l.target(q);
    }
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (i, l) in b.letters.iter().enumerate() {
        let j = (i + 1) % n;
        let block = if i + 1 == n {
            Matrix::jordan(lambda, size)
        } else {
            Matrix::identity(size)
        };
        let (from, to) = if l.inverse { (j, i) } else { (i, j) };
        for r in 0..size {
            for c in 0..size {
                let v = block.get(r, c).clone();
                if !v.is_zero() {
                    maps[l.arrow].set(offset[to] + r, offset[from] + c, v);
                }
            }
        }
    }
    Ok(Representation { dims, maps })
}

/// The cyclic module `pA` as a direct string: the longest `q` from the end of
/// `p` with `p·q` nonzero.
pub fn cyclic_module_string(alg: &MonomialAlgebra<'_>, p: &Path) -> Result<Word> {
    let q = alg.quiver();
    if p.is_trivial() || alg.is_zero(p) {
        return Err(Error::NotNonzeroPath(q.label(p)));
    }
    let mut tail = Path::trivial(p.target());
    let mut whole = p.clone();
    loop {
        let next = q
            .outgoing(whole.target())
            .filter_map(|a| whole.extended(q, a))
            .find(|ext| alg.is_nonzero(ext));
        match next {
            Some(ext) => {
                tail = tail.extended(q, ext.last().unwrap()).unwrap();
                whole = ext;
            }
            None => return Ok(Word::from_path(&tail)),
        }
    }
}

/// Summary of a string for reports.
#[derive(Debug, Clone, Serialize)]
pub struct StringSummary {
    pub word: String,
    pub length: usize,
    pub dimension_vector: Vec<usize>,
}

pub fn summarize(p: &Presentation, w: &Word) -> StringSummary {
    let q = &p.quiver;
    let mut dims = vec![0; q.vertex_count()];
    dims[w.start] += 1;
    for l in &w.letters {
        dims[l.target(q)] += 1;
    }
    StringSummary {
        word: w.display(q),
        length: w.len(),
        dimension_vector: dims,
    }
}
