//! Presentations of Cohen-Macaulay Auslander algebras.
//!
//! Every arrow `i -> j` of the output stands for a morphism `G_j -> G_i`
//! between Gorenstein-projectives, sending the generator `g_j` to `g_i·w` for
//! a path `w` of the input algebra (its label). A path `π` from `i` then
//! evaluates to `g_i·W(π)`, where `W` concatenates labels; relations are read
//! off these values.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::export::presentation_json;
use crate::gentle::satisfies_g_condition;
use crate::gproj::{perfect_paths, GprojKind, GprojReport};
use crate::quiver::{
    classify, contains_seq, ArrowId, MonomialAlgebra, Path, Presentation, Quiver, Relation,
    VertexId, VertexKind,
};

/// Where a relation of the output comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationOrigin {
    /// Image of an input relation under arrow splitting.
    Starred,
    /// Minimal zero composite found by the semantic engine.
    ZeroComposite,
    /// Commutativity between two parallel paths with equal value.
    Commutativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmaPresentation {
    pub presentation: Presentation,
    /// The Gorenstein-projective behind each output vertex.
    pub objects: Vec<GprojKind>,
    /// Per output arrow, the connecting path in the input algebra.
    pub arrow_labels: Vec<Path>,
    pub relation_origins: Vec<RelationOrigin>,
    /// Anything the semantic cross-check flagged.
    pub diagnostics: Vec<String>,
}

impl CmaPresentation {
    /// Output vertex of a Gorenstein-projective, if present.
    pub fn vertex_of(&self, kind: &GprojKind) -> Option<VertexId> {
        self.objects.iter().position(|k| k == kind)
    }

    /// The presentation in the export schema plus `vertex_map` (the module
    /// behind each vertex), arrow labels and relation origins.
    pub fn to_json(&self, input: &Quiver) -> Value {
        let q = &self.presentation.quiver;
        let mut out = presentation_json(&self.presentation);
        out["vertex_map"] = (0..q.vertex_count())
            .map(|v| json!({ "id": q.vertex_name(v), "module": self.objects[v].label(input) }))
            .collect();
        out["arrow_labels"] = q
            .arrows()
            .iter()
            .zip(&self.arrow_labels)
            .map(|(a, w)| json!({ "name": a.name, "label": input.label(w) }))
            .collect();
        out["relation_origins"] = json!(self.relation_origins);
        out["diagnostics"] = json!(self.diagnostics);
        out
    }
}

fn require_string(pres: &Presentation) -> Result<()> {
    let report = classify(pres);
    if !report.is_string {
        let why = report
            .violations
            .iter()
            .find(|v| v.breaks_string())
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::NotStringAlgebra(why));
    }
    Ok(())
}

/// The CM-Auslander algebra of a string algebra.
pub fn build_cma(pres: &Presentation) -> Result<CmaPresentation> {
    require_string(pres)?;
    let alg = MonomialAlgebra::new(pres)?;
    let report = perfect_paths(&alg)?;
    construct(&alg, &report.perfect_paths, true)
}

/// The endomorphism algebra of `A` plus the modules `pA` for the perfect
/// paths of the chosen sequences only.
pub fn build_cma_relative(pres: &Presentation, sequences: &[Vec<Path>]) -> Result<CmaPresentation> {
    require_string(pres)?;
    let alg = MonomialAlgebra::new(pres)?;
    let report: GprojReport = perfect_paths(&alg)?;
    let mut chosen = Vec::new();
    for s in sequences {
        let known = report.sequences.iter().any(|t| {
            t.len() == s.len()
                && (0..t.len()).any(|k| (0..t.len()).all(|i| t[(i + k) % t.len()] == s[i]))
        });
        if !known {
            let labels: Vec<String> = s.iter().map(|p| pres.quiver.label(p)).collect();
            return Err(Error::NotNonzeroPath(format!(
                "({}) is not a perfect path sequence",
                labels.join(", ")
            )));
        }
        chosen.extend(s.iter().cloned());
    }
    chosen.sort();
    chosen.dedup();
    construct(&alg, &chosen, true)
}

/// Arrow-splitting construction for algebras satisfying the G-condition,
/// where every perfect path is a single arrow.
pub fn build_cma_split(pres: &Presentation) -> Result<CmaPresentation> {
    require_string(pres)?;
    let g = satisfies_g_condition(pres)?;
    if !g.ok {
        let q = &pres.quiver;
        let witness = g
            .witness
            .map(|rc| format!("relation cycle {} is not gentle", q.label(&rc.cycle)))
            .unwrap_or_else(|| "a perfect path lies on no gentle relation cycle".into());
        return Err(Error::GConditionFails(witness));
    }
    let alg = MonomialAlgebra::new(pres)?;
    let report = perfect_paths(&alg)?;
    debug_assert!(report.perfect_paths.iter().all(|p| p.len() == 1));
    construct(&alg, &report.perfect_paths, false)
}

struct Builder<'q> {
    input: &'q Quiver,
    quiver: Quiver,
    objects: Vec<GprojKind>,
    kinds: Vec<VertexKind>,
    labels: Vec<Path>,
}

impl Builder<'_> {
    fn vertex(&mut self, base: String, kind: GprojKind, vk: VertexKind) -> VertexId {
        let mut name = base;
        while self.quiver.vertex_id(&name).is_some() {
            name.push('\'');
        }
        self.objects.push(kind);
        self.kinds.push(vk);
        self.quiver.add_vertex(name).expect("fresh vertex name")
    }

    fn arrow(&mut self, base: String, s: VertexId, t: VertexId, label: Path) -> ArrowId {
        let mut name = base;
        while self.quiver.arrow_id(&name).is_some() {
            name.push('\'');
        }
        self.labels.push(label);
        self.quiver.add_arrow(name, s, t).expect("fresh arrow name")
    }

    fn name_of(&self, v: VertexId) -> String {
        match &self.objects[v] {
            GprojKind::Projective(x) => self.input.vertex_name(*x).to_string(),
            GprojKind::Cyclic(p) => self.input.label(p),
        }
    }
}

fn construct(
    alg: &MonomialAlgebra<'_>,
    perfect: &[Path],
    semantic: bool,
) -> Result<CmaPresentation> {
    let input = alg.quiver();
    let mut b = Builder {
        input,
        quiver: Quiver::new(),
        objects: Vec::new(),
        kinds: Vec::new(),
        labels: Vec::new(),
    };
    for v in 0..input.vertex_count() {
        b.vertex(
            input.vertex_name(v).to_string(),
            GprojKind::Projective(v),
            VertexKind::Original,
        );
    }
    let mut object_vertex: HashMap<Path, VertexId> = HashMap::new();
    for p in perfect {
        let v = b.vertex(
            format!("v({})", input.label(p)),
            GprojKind::Cyclic(p.clone()),
            VertexKind::Gproj,
        );
        object_vertex.insert(p.clone(), v);
    }
    // Split arrows replace the original ones in place.
    let mut split: HashMap<ArrowId, (ArrowId, ArrowId)> = HashMap::new();
    let mut retained: HashMap<ArrowId, ArrowId> = HashMap::new();
    for (a, arrow) in input.arrows().iter().enumerate() {
        let single = input.path(&[a]).expect("arrow");
        if let Some(&mid) = object_vertex.get(&single) {
            let minus = b.arrow(
                format!("{}-", arrow.name),
                arrow.source,
                mid,
                single.clone(),
            );
            let plus = b.arrow(
                format!("{}+", arrow.name),
                mid,
                arrow.target,
                Path::trivial(arrow.target),
            );
            split.insert(a, (minus, plus));
        } else {
            retained.insert(
                a,
                b.arrow(arrow.name.clone(), arrow.source, arrow.target, single),
            );
        }
    }
    for p in perfect.iter().filter(|p| p.len() >= 2) {
        let vp = object_vertex[p];
        let shorter = || perfect.iter().filter(|q| q.len() < p.len());
        let source = shorter()
            .filter(|q| p.starts_with(q))
            .max_by_key(|q| q.len());
        let (from, label) = match source {
            Some(q) => (object_vertex[q], p.slice(input, q.len(), p.len())),
            None => (p.source(), p.clone()),
        };
        let name = format!("a_{{{},{}}}", b.name_of(from), b.name_of(vp));
        b.arrow(name, from, vp, label);
        let target = shorter().filter(|q| p.ends_with(q)).max_by_key(|q| q.len());
        let to = target.map_or(p.target(), |q| object_vertex[q]);
        let name = format!("a_{{{},{}}}", b.name_of(vp), b.name_of(to));
        b.arrow(name, vp, to, Path::trivial(p.target()));
    }
    let Builder {
        quiver,
        objects,
        kinds,
        labels,
        ..
    } = b;

    // Starred images of the input relations.
    let mut starred = Vec::new();
    for g in alg.generators() {
        let n = g.len();
        let mut arrows = Vec::new();
        for (k, &a) in g.arrows().iter().enumerate() {
            match (split.get(&a), k == 0, k + 1 == n) {
                (None, _, _) => arrows.push(retained[&a]),
                (Some(&(_, plus)), true, _) => arrows.push(plus),
                (Some(&(minus, _)), false, true) => arrows.push(minus),
                (Some(&(minus, plus)), false, false) => {
                    arrows.push(minus);
                    arrows.push(plus);
                }
            }
        }
        starred.push(quiver.path(&arrows)?);
    }

    let engine = Engine {
        alg,
        quiver: &quiver,
        labels: &labels,
        generators: objects.iter().map(GprojKind::generator).collect(),
    };
    let mut diagnostics = Vec::new();
    for s in &starred {
        if engine.value(s).is_some() {
            diagnostics.push(format!(
                "starred relation {} does not vanish",
                quiver.dotted(s)
            ));
        }
    }
    let (binomials, zero_composites) = if semantic {
        engine.relations(&starred)?
    } else {
        (Vec::new(), Vec::new())
    };
    let mut relations = Vec::new();
    let mut origins = Vec::new();
    for s in starred {
        relations.push(Relation::zero(s));
        origins.push(RelationOrigin::Starred);
    }
    for z in zero_composites {
        relations.push(Relation::zero(z));
        origins.push(RelationOrigin::ZeroComposite);
    }
    for (l, r) in binomials {
        relations.push(Relation::commutativity(l, r));
        origins.push(RelationOrigin::Commutativity);
    }
    let before = relations.clone();
    let presentation = Presentation::with_kinds(quiver, relations, kinds)?;
    if presentation.relations.len() != before.len() {
        // Normalization dropped redundant zero relations; keep origins aligned.
        origins = before
            .iter()
            .zip(&origins)
            .filter(|(r, _)| presentation.relations.contains(r))
            .map(|(_, o)| *o)
            .collect();
    }
    Ok(CmaPresentation {
        presentation,
        objects,
        arrow_labels: labels,
        relation_origins: origins,
        diagnostics,
    })
}

/// Nonzero paths with their values, and boundary zero paths.
type Explored = (Vec<(Path, Path)>, Vec<Path>);

/// Evaluates paths of the output quiver as elements of the input algebra.
pub struct Engine<'a> {
    alg: &'a MonomialAlgebra<'a>,
    quiver: &'a Quiver,
    labels: &'a [Path],
    generators: Vec<Path>,
}

/// Bound on states explored when testing whether a zero path is implied.
const IMPLIED_SEARCH_LIMIT: usize = 10_000;

impl<'a> Engine<'a> {
    pub fn new(alg: &'a MonomialAlgebra<'a>, cma: &'a CmaPresentation) -> Self {
        Self {
            alg,
            quiver: &cma.presentation.quiver,
            labels: &cma.arrow_labels,
            generators: cma.objects.iter().map(GprojKind::generator).collect(),
        }
    }

    /// `g_i·W(π)`, or `None` when it vanishes.
    pub fn value(&self, path: &Path) -> Option<Path> {
        let mut v = self.generators[path.source()].clone();
        for &a in path.arrows() {
            v = self.alg.multiply(&v, &self.labels[a])?;
        }
        Some(v)
    }

    /// Whether a relation holds semantically.
    pub fn holds(&self, r: &Relation) -> bool {
        match (r.monomial(), r.binomial()) {
            (Some(m), _) => self.value(m).is_none(),
            (None, Some((l, r))) => {
                let (vl, vr) = (self.value(l), self.value(r));
                vl.is_some() && vl == vr
            }
            _ => false,
        }
    }

    /// Nonzero-valued paths (trivial ones included) and boundary zero paths:
    /// zero-valued paths whose longest proper prefix and suffix are nonzero.
    fn explore(&self) -> Result<Explored> {
        let cap =
            4 * (self.quiver.arrow_count() + 1) * (self.alg.presentation().max_relation_len() + 2);
        let mut nonzero = Vec::new();
        let mut boundary = Vec::new();
        let mut frontier: Vec<(Path, Path)> = (0..self.quiver.vertex_count())
            .map(|v| (Path::trivial(v), self.generators[v].clone()))
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (p, val) in &frontier {
                for a in self.quiver.outgoing(p.target()) {
                    let ext = p.extended(self.quiver, a).expect("outgoing arrow");
                    match self.alg.multiply(val, &self.labels[a]) {
                        Some(v) => {
                            if ext.len() > cap {
                                return Err(Error::Budget(format!(
                                    "nonzero output path longer than {cap}"
                                )));
                            }
                            next.push((ext, v));
                        }
                        None => {
                            let tail = ext.slice(self.quiver, 1, ext.len());
                            if tail.is_trivial() || self.value(&tail).is_some() {
                                boundary.push(ext);
                            }
                        }
                    }
                }
            }
            nonzero.append(&mut frontier);
            frontier = next;
        }
        boundary.sort();
        Ok((nonzero, boundary))
    }

    /// Chooses commutativity and zero relations greedily, shortest first,
    /// skipping candidates implied by those already chosen.
    fn relations(&self, starred: &[Path]) -> Result<Explored> {
        let (nonzero, boundary) = self.explore()?;
        let mut classes: BTreeMap<(VertexId, VertexId, Path), Vec<Path>> = BTreeMap::new();
        for (p, v) in nonzero {
            if !p.is_trivial() {
                classes
                    .entry((p.source(), p.target(), v))
                    .or_default()
                    .push(p);
            }
        }
        let mut candidates = Vec::new();
        for members in classes.values() {
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let (u, v) = (&members[i], &members[j]);
                    let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
                    candidates.push((hi.len(), lo.len(), lo.clone(), hi.clone()));
                }
            }
        }
        candidates.sort();
        let mut binomials: Vec<(Path, Path)> = Vec::new();
        for (_, _, lo, hi) in candidates {
            if !self.connected(&lo, &hi, &binomials) {
                binomials.push((lo, hi));
            }
        }
        let mut zeros: Vec<Path> = starred.to_vec();
        let mut chosen = Vec::new();
        for z in boundary {
            if !self.implied_zero(&z, &zeros, &binomials)? {
                zeros.push(z.clone());
                chosen.push(z);
            }
        }
        Ok((binomials, chosen))
    }

    /// Paths reachable from `p` by replacing one side of a binomial with the other.
    fn moves(&self, p: &Path, binomials: &[(Path, Path)]) -> Vec<Path> {
        let mut out = Vec::new();
        let arrows = p.arrows();
        for (l, r) in binomials {
            for (from, to) in [(l, r), (r, l)] {
                let f = from.arrows();
                if f.len() > arrows.len() {
                    continue;
                }
                for start in 0..=arrows.len() - f.len() {
                    if &arrows[start..start + f.len()] == f {
                        let mut new = arrows[..start].to_vec();
                        new.extend_from_slice(to.arrows());
                        new.extend_from_slice(&arrows[start + f.len()..]);
                        out.push(
                            self.quiver
                                .path(&new)
                                .expect("parallel replacement composes"),
                        );
                    }
                }
            }
        }
        out
    }

    fn connected(&self, u: &Path, v: &Path, binomials: &[(Path, Path)]) -> bool {
        let mut seen = HashSet::from([u.clone()]);
        let mut queue = VecDeque::from([u.clone()]);
        while let Some(p) = queue.pop_front() {
            if &p == v {
                return true;
            }
            for n in self.moves(&p, binomials) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        false
    }

    fn implied_zero(&self, z: &Path, zeros: &[Path], binomials: &[(Path, Path)]) -> Result<bool> {
        let slack = binomials
            .iter()
            .map(|(l, r)| l.len().abs_diff(r.len()))
            .max()
            .unwrap_or(0)
            + binomials
                .iter()
                .map(|(l, r)| l.len().max(r.len()))
                .max()
                .unwrap_or(0);
        let limit = z.len() + slack;
        let mut seen = HashSet::from([z.clone()]);
        let mut queue = VecDeque::from([z.clone()]);
        while let Some(p) = queue.pop_front() {
            if zeros.iter().any(|m| contains_seq(p.arrows(), m.arrows())) {
                return Ok(true);
            }
            for n in self.moves(&p, binomials) {
                if n.len() <= limit && seen.insert(n.clone()) {
                    if seen.len() > IMPLIED_SEARCH_LIMIT {
                        return Err(Error::Budget(format!(
                            "rewriting search from {} exceeded {IMPLIED_SEARCH_LIMIT} states",
                            self.quiver.dotted(z)
                        )));
                    }
                    queue.push_back(n);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{parse, to_dsl};

    #[test]
    fn gentle_triangle_becomes_a_hexagon() {
        let p = parse(fixtures::TRIANGLE_GENTLE).unwrap();
        let c = build_cma(&p).unwrap();
        let text = to_dsl(&c.presentation);
        assert!(text.contains("rel a+.b-"), "{text}");
        assert_eq!(c.presentation.quiver.vertex_count(), 6);
        assert_eq!(c.presentation.quiver.arrow_count(), 6);
        assert_eq!(c.presentation.relations.len(), 3);
        assert!(c.diagnostics.is_empty());
        assert_eq!(build_cma_split(&p).unwrap(), c);
    }

    #[test]
    fn cm_free_input_is_unchanged() {
        for text in [
            fixtures::SINGLE_ARROW,
            fixtures::KRONECKER,
            fixtures::LINEAR_A4,
        ] {
            let p = parse(text).unwrap();
            assert_eq!(build_cma(&p).unwrap().presentation, p);
        }
    }
}
