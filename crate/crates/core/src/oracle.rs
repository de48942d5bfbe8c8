//! Independent exact-arithmetic checks: Hom dimensions via intertwiners,
//! quotient-algebra dimensions via truncated row reduction, and the
//! end-to-end comparison for CM-Auslander algebras.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cma::{build_cma, Engine};
use crate::error::{Error, Result};
use crate::gproj::{perfect_paths, GprojKind};
use crate::linalg::{rank_of_rows, rational, Matrix, Rational, SparseEchelon};
use crate::quiver::{contains_seq, MonomialAlgebra, Path, Presentation, Quiver};
use crate::rep::Representation;

/// Unknown layout of an intertwiner `M -> N`: one block per vertex.
struct Intertwiner {
    offsets: Vec<usize>,
    unknowns: usize,
}

impl Intertwiner {
    fn new(m: &Representation, n: &Representation) -> Self {
        let mut offsets = Vec::with_capacity(m.dims.len());
        let mut unknowns = 0;
        for (dm, dn) in m.dims.iter().zip(&n.dims) {
            offsets.push(unknowns);
            unknowns += dm * dn;
        }
        Self { offsets, unknowns }
    }

    /// Index of `f_v[r][c]` (rows indexed by `N_v`, columns by `M_v`).
    fn at(&self, m: &Representation, v: usize, r: usize, c: usize) -> usize {
        self.offsets[v] + r * m.dims[v] + c
    }

    /// Rows of the system `f_t · M_α = N_α · f_s`.
    fn system(&self, q: &Quiver, m: &Representation, n: &Representation) -> Vec<Vec<Rational>> {
        let mut rows = Vec::new();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let (ma, na) = (&m.maps[a], &n.maps[a]);
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut row = vec![rational(0); self.unknowns];
                    for k in 0..m.dims[t] {
                        row[self.at(m, t, r, k)] += ma.get(k, c);
                    }
                    for k in 0..n.dims[s] {
                        row[self.at(m, s, k, c)] -= na.get(r, k);
                    }
                    if row.iter().any(|x| *x != rational(0)) {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Per-vertex matrices of a solution vector.
    fn blocks(&self, m: &Representation, n: &Representation, x: &[Rational]) -> Vec<Matrix> {
        (0..m.dims.len())
            .map(|v| {
                let mut f = Matrix::zeros(n.dims[v], m.dims[v]);
                for r in 0..n.dims[v] {
                    for c in 0..m.dims[v] {
                        f.set(r, c, x[self.at(m, v, r, c)].clone());
                    }
                }
                f
            })
            .collect()
    }
}

fn check_pair(pres: &Presentation, m: &Representation, n: &Representation) -> Result<()> {
    m.check_shape(&pres.quiver)?;
    n.check_shape(&pres.quiver)
}

/// `dim Hom(M, N)`.
pub fn hom_dim(pres: &Presentation, m: &Representation, n: &Representation) -> Result<usize> {
    check_pair(pres, m, n)?;
    let layout = Intertwiner::new(m, n);
    let rows = layout.system(&pres.quiver, m, n);
    Ok(layout.unknowns - rank_of_rows(rows, layout.unknowns))
}

/// A basis of `Hom(M, N)`, each element given by its per-vertex matrices.
pub fn hom_basis(
    pres: &Presentation,
    m: &Representation,
    n: &Representation,
) -> Result<Vec<Vec<Matrix>>> {
    check_pair(pres, m, n)?;
    let layout = Intertwiner::new(m, n);
    let rows = layout.system(&pres.quiver, m, n);
    let basis = if rows.is_empty() {
        (0..layout.unknowns)
            .map(|i| {
                (0..layout.unknowns)
                    .map(|j| rational(i64::from(i == j)))
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    Ok(basis.iter().map(|x| layout.blocks(m, n, x)).collect())
}

const ISO_SAMPLES: usize = 20;

fn combine(basis: &[Vec<Matrix>], coefficients: &[Rational]) -> Vec<Matrix> {
    let mut acc: Vec<Matrix> = basis[0]
        .iter()
        .map(|f| Matrix::zeros(f.rows(), f.cols()))
        .collect();
    for (element, c) in basis.iter().zip(coefficients) {
        for (a, f) in acc.iter_mut().zip(element) {
            *a = a.add(&f.scaled(c));
        }
    }
    acc
}

fn all_invertible(blocks: &[Matrix]) -> bool {
    blocks.iter().all(|f| f.rows() == 0 || f.is_invertible())
}

fn is_nilpotent(blocks: &[Matrix]) -> bool {
    blocks.iter().all(|f| {
        let mut p = f.clone();
        for _ in 1..f.rows().max(1) {
            p = p.mul(f);
        }
        f.rows() == 0 || p.is_zero()
    })
}

/// Whether `M ≅ N`. Random integer combinations of a Hom basis are tried
/// first; if none is invertible, an exact criterion for indecomposable `M`
/// decides: some composite `g∘f` of basis elements is not nilpotent.
pub fn rep_iso(pres: &Presentation, m: &Representation, n: &Representation) -> Result<bool> {
    check_pair(pres, m, n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let forward = hom_basis(pres, m, n)?;
    if forward.is_empty() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..ISO_SAMPLES {
        let coefficients: Vec<Rational> = (0..forward.len())
            .map(|_| rational(rng.gen_range(-3..=3)))
            .collect();
        if all_invertible(&combine(&forward, &coefficients)) {
            return Ok(true);
        }
    }
    let backward = hom_basis(pres, n, m)?;
    Ok(forward.iter().any(|f| {
        backward.iter().any(|g| {
            let composite: Vec<Matrix> = f.iter().zip(g).map(|(fv, gv)| gv.mul(fv)).collect();
            !is_nilpotent(&composite)
        })
    }))
}

/// The right ideal `gA` as a representation: basis the nonzero paths starting
/// with `g`, arrows acting by right multiplication.
pub fn ideal_module(alg: &MonomialAlgebra<'_>, generator: &Path) -> Representation {
    let q = alg.quiver();
    let basis: Vec<&Path> = alg
        .nonzero_paths()
        .iter()
        .filter(|w| w.starts_with(generator))
        .collect();
    let mut dims = vec![0; q.vertex_count()];
    let mut position = HashMap::new();
    for w in &basis {
        position.insert((*w).clone(), dims[w.target()]);
        dims[w.target()] += 1;
    }
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for w in &basis {
        for a in q.outgoing(w.target()) {
            if let Some(wa) = w.extended(q, a) {
                if let Some(&row) = position.get(&wa) {
                    maps[a].set(row, position[*w], rational(1));
                }
            }
        }
    }
    Representation { dims, maps }
}

/// The direct sum of the right ideals generated by `generators`.
pub fn ideal_sum(alg: &MonomialAlgebra<'_>, generators: &[Path]) -> Representation {
    generators
        .iter()
        .map(|g| ideal_module(alg, g))
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap_or_else(|| Representation::zero(alg.quiver()))
}

/// Generators of the first syzygy of `pA`: the minimal nonzero paths `w` from
/// `t(p)` with `p·w = 0` (the kernel of `e_{t(p)}A -> pA`, `x ↦ px`).
pub fn syzygy_generators(alg: &MonomialAlgebra<'_>, p: &Path) -> Vec<Path> {
    let killed: Vec<&Path> = alg
        .starting_at(p.target())
        .filter(|w| alg.multiply(p, w).is_none())
        .collect();
    killed
        .iter()
        .filter(|w| !killed.iter().any(|u| u.len() < w.len() && w.starts_with(u)))
        .map(|w| (*w).clone())
        .collect()
}

/// `dim Ext^1(N, A)` for `N = ⊕ gA`, from `0 -> ΩN -> P_0 -> N -> 0`:
/// `hom(ΩN, A) - hom(P_0, A) + hom(N, A)`.
pub fn ext1_into_algebra(alg: &MonomialAlgebra<'_>, generators: &[Path]) -> Result<usize> {
    let pres = alg.presentation();
    let q = alg.quiver();
    let regular = ideal_sum(
        alg,
        &(0..q.vertex_count()).map(Path::trivial).collect::<Vec<_>>(),
    );
    let n = ideal_sum(alg, generators);
    let p0 = ideal_sum(
        alg,
        &generators
            .iter()
            .map(|g| Path::trivial(g.target()))
            .collect::<Vec<_>>(),
    );
    let omega: Vec<Path> = generators
        .iter()
        .flat_map(|g| syzygy_generators(alg, g))
        .collect();
    let omega = ideal_sum(alg, &omega);
    let value = hom_dim(pres, &omega, &regular)? + hom_dim(pres, &n, &regular)?;
    Ok(value - hom_dim(pres, &p0, &regular)?)
}

/// Default truncation degree: `2·|arrows| + longest relation`.
pub fn default_degree_bound(pres: &Presentation) -> usize {
    2 * pres.quiver.arrow_count() + pres.max_relation_len()
}

/// Cap on the number of basis paths in a truncated computation.
const PATH_BUDGET: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraDimension {
    pub dimension: usize,
    /// Degree at which the truncation was found to be closed.
    pub degree: usize,
}

/// `dim kQ/I` for an admissible ideal, by exact row reduction in
/// `kQ/(I + J^{D+1})`. Degrees `D` are tried upwards to `degree_bound`; the
/// first `D` where every path of length `D` lies in the truncated ideal gives
/// `J^D ⊆ I + J^{D+1}`, hence (with `J^N ⊆ I`) `J^D ⊆ I` and the truncated
/// dimension is exact. Paths containing a monomial generator are zero from
/// the start; binomial generators are reduced linearly.
pub fn algebra_dim(pres: &Presentation, degree_bound: usize) -> Result<AlgebraDimension> {
    let start = pres.max_relation_len().max(1);
    for degree in start..=degree_bound.max(start) {
        if let Some(dimension) = truncated_dim(pres, degree)? {
            return Ok(AlgebraDimension { dimension, degree });
        }
    }
    Err(Error::TruncationNotClosed(degree_bound))
}

fn avoids(monomials: &[&Path], arrows: &[usize]) -> bool {
    !monomials.iter().any(|m| contains_seq(arrows, m.arrows()))
}

/// Dimension of `kQ/(I + J^{D+1})`, or `None` if `J^D` is not yet inside.
fn truncated_dim(pres: &Presentation, degree: usize) -> Result<Option<usize>> {
    let q = &pres.quiver;
    let monomials = pres.monomials();
    // Paths of length <= degree avoiding every monomial generator.
    let mut paths: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut frontier = paths.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.outgoing(p.target()) {
                let pa = p.extended(q, a).expect("outgoing arrow composes");
                if !monomials.iter().any(|m| pa.ends_with(m)) {
                    next.push(pa);
                }
            }
        }
        paths.extend(next.iter().cloned());
        if paths.len() > PATH_BUDGET {
            return Err(Error::Budget(format!(
                "more than {PATH_BUDGET} paths up to degree {degree}"
            )));
        }
        frontier = next;
    }
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut ending: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
    let mut starting: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
    for p in &paths {
        ending[p.target()].push(p);
        starting[p.source()].push(p);
    }

    let mut spans: BTreeMap<(usize, usize), SparseEchelon> = BTreeMap::new();
    for r in pres.relations.iter().filter(|r| !r.is_monomial()) {
        let shortest = r.terms.iter().map(|t| t.path.len()).min().unwrap_or(0);
        let (s, t) = (r.terms[0].path.source(), r.terms[0].path.target());
        for u in &ending[s] {
            if u.len() + shortest > degree {
                continue;
            }
            for v in &starting[t] {
                if u.len() + shortest + v.len() > degree {
                    continue;
                }
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for term in &r.terms {
                    let len = u.len() + term.path.len() + v.len();
                    if len > degree {
                        continue;
                    }
                    let arrows: Vec<usize> = u
                        .arrows()
                        .iter()
                        .chain(term.path.arrows())
                        .chain(v.arrows())
                        .copied()
                        .collect();
                    if !avoids(&monomials, &arrows) {
                        continue;
                    }
                    let w = q.path(&arrows)?;
                    let entry = row.entry(index[&w]).or_insert_with(|| rational(0));
                    *entry += rational(term.coefficient);
                    if *entry == rational(0) {
                        row.remove(&index[&w]);
                    }
                }
                if !row.is_empty() {
                    spans
                        .entry((u.source(), v.target()))
                        .or_default()
                        .insert(row);
                }
            }
        }
    }

    let closed = paths.iter().filter(|p| p.len() == degree).all(|p| {
        spans
            .get(&(p.source(), p.target()))
            .is_some_and(|e| e.contains(&BTreeMap::from([(index[p], rational(1))])))
    });
    if !closed {
        return Ok(None);
    }
    let rank: usize = spans.values().map(SparseEchelon::rank).sum();
    Ok(Some(paths.len() - rank))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: String,
    pub j: String,
    /// Arrows `i -> j` in the CM-Auslander quiver.
    pub arrows: usize,
    /// `dim Hom(G_j, G_i)`.
    pub homdim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub d1: usize,
    pub d2: usize,
    pub degree: usize,
    pub pass: bool,
    pub per_pair: Vec<PairCheck>,
    pub failures: Vec<String>,
}

/// Compares `dim A^CMA` computed from the presentation with
/// `Σ dim Hom(G_i, G_j)` computed from the modules, and checks arrow counts
/// and the semantic validity of every emitted relation.
pub fn verify_cma(pres: &Presentation) -> Result<VerificationReport> {
    verify_cma_with_bound(pres, None)
}

pub fn verify_cma_with_bound(
    pres: &Presentation,
    degree_bound: Option<usize>,
) -> Result<VerificationReport> {
    let cma = build_cma(pres)?;
    let alg = MonomialAlgebra::new(pres)?;
    let mut failures = Vec::new();

    let report = perfect_paths(&alg)?;
    let mut expected: Vec<GprojKind> = (0..pres.quiver.vertex_count())
        .map(GprojKind::Projective)
        .collect();
    expected.extend(report.perfect_paths.iter().cloned().map(GprojKind::Cyclic));
    let mut actual = cma.objects.clone();
    actual.sort();
    expected.sort();
    if actual != expected {
        failures.push("output vertices do not match the Gorenstein-projectives".into());
    }

    let modules: Vec<Representation> = cma
        .objects
        .iter()
        .map(|k| ideal_module(&alg, &k.generator()))
        .collect();
    let cq = &cma.presentation.quiver;
    let mut d2 = 0;
    let mut per_pair = Vec::new();
    for (i, gi) in modules.iter().enumerate() {
        for (j, gj) in modules.iter().enumerate() {
            let homdim = hom_dim(pres, gj, gi)?;
            d2 += homdim;
            let arrows = cq
                .arrows()
                .iter()
                .filter(|a| a.source == i && a.target == j)
                .count();
            if arrows > homdim {
                failures.push(format!(
                    "{} arrows {} -> {} exceed dim Hom = {}",
                    arrows,
                    cq.vertex_name(i),
                    cq.vertex_name(j),
                    homdim
                ));
            }
            if arrows > 0 || homdim > 0 {
                per_pair.push(PairCheck {
                    i: cq.vertex_name(i).to_string(),
                    j: cq.vertex_name(j).to_string(),
                    arrows,
                    homdim,
                });
            }
        }
    }

    let engine = Engine::new(&alg, &cma);
    for r in &cma.presentation.relations {
        if !engine.holds(r) {
            failures.push(format!("relation {} does not hold", r.display(cq)));
        }
    }
    failures.extend(cma.diagnostics.iter().cloned());

    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(&cma.presentation));
    let d1 = algebra_dim(&cma.presentation, bound)?;
    if d1.dimension != d2 {
        failures.push(format!(
            "dim A^CMA = {} but Σ dim Hom = {}",
            d1.dimension, d2
        ));
    }
    Ok(VerificationReport {
        d1: d1.dimension,
        d2,
        degree: d1.degree,
        pass: failures.is_empty(),
        per_pair,
        failures,
    })
}
