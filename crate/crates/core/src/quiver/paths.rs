//! Nonzero paths of monomial algebras and overlaps of paths.

use std::collections::HashSet;

use super::{Path, Presentation, Quiver, VertexId};
use crate::error::{Error, Result};

/// Length cap for nonzero-path enumeration: `4·|arrows| + longest relation`.
/// Any finite-dimensional string algebra has all nonzero paths below it.
pub fn path_cap(p: &Presentation) -> usize {
    4 * p.quiver.arrow_count() + p.max_relation_len()
}

/// A monomial algebra together with its (finite) basis of nonzero paths.
#[derive(Debug, Clone)]
pub struct MonomialAlgebra<'a> {
    pres: &'a Presentation,
    generators: Vec<Path>,
    nonzero: Vec<Path>,
    nonzero_set: HashSet<Path>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
}

impl<'a> MonomialAlgebra<'a> {
    pub fn new(pres: &'a Presentation) -> Result<Self> {
        Self::with_cap(pres, path_cap(pres))
    }

    pub fn with_cap(pres: &'a Presentation, cap: usize) -> Result<Self> {
        if let Some(i) = pres.relations.iter().position(|r| !r.is_monomial()) {
            return Err(Error::NotMonomial(i));
        }
        let generators: Vec<Path> = pres.monomials().into_iter().cloned().collect();
        let nonzero = enumerate_nonzero(&pres.quiver, &generators, cap)?;
        let n = pres.quiver.vertex_count();
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, p) in nonzero.iter().enumerate() {
            if !p.is_trivial() {
                by_source[p.source()].push(i);
                by_target[p.target()].push(i);
            }
        }
        let nonzero_set = nonzero.iter().cloned().collect();
        Ok(Self {
            pres,
            generators,
            nonzero,
            nonzero_set,
            by_source,
            by_target,
        })
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.pres
    }

    pub fn quiver(&self) -> &'a Quiver {
        &self.pres.quiver
    }

    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    /// All nonzero paths, trivial ones included, ordered by (length, arrows).
    pub fn nonzero_paths(&self) -> &[Path] {
        &self.nonzero
    }

    pub fn dimension(&self) -> usize {
        self.nonzero.len()
    }

    pub fn is_zero(&self, p: &Path) -> bool {
        !self.nonzero_set.contains(p)
    }

    pub fn is_nonzero(&self, p: &Path) -> bool {
        self.nonzero_set.contains(p)
    }

    /// Product in the algebra: `None` when it vanishes or is not composable.
    pub fn multiply(&self, p: &Path, q: &Path) -> Option<Path> {
        p.concat(q).filter(|pq| self.is_nonzero(pq))
    }

    /// Nonzero nontrivial paths starting at `v`, shortest first.
    pub fn starting_at(&self, v: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.by_source[v].iter().map(move |&i| &self.nonzero[i])
    }

    /// Nonzero nontrivial paths ending at `v`, shortest first.
    pub fn ending_at(&self, v: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.by_target[v].iter().map(move |&i| &self.nonzero[i])
    }

    /// Nonzero nontrivial paths, in order.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Path> + '_ {
        self.nonzero.iter().filter(|p| !p.is_trivial())
    }
}

fn enumerate_nonzero(quiver: &Quiver, generators: &[Path], cap: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in quiver.outgoing(p.target()) {
                let ext = p.extended(quiver, a).expect("outgoing arrow composes");
                // `p` is nonzero, so only a generator ending here can kill `ext`.
                if generators.iter().any(|g| ext.ends_with(g)) {
                    continue;
                }
                if ext.len() > cap {
                    return Err(Error::PathCapExceeded {
                        path: quiver.dotted(&ext),
                        cap,
                    });
                }
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    Ok(out)
}

/// An overlap of `p` and `q`: `p = p'·r` and `q = r·q'` with `r` nontrivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    /// Position in `p` where `q` starts.
    pub offset: usize,
    /// The shared part `r`.
    pub meet: Path,
    /// The path `p'·r·q'`.
    pub join: Path,
}

/// Every overlap of `p` followed by `q`, by increasing offset.
pub fn overlaps(quiver: &Quiver, p: &Path, q: &Path) -> Vec<Overlap> {
    let l = p.len();
    (0..l)
        .filter(|&i| q.len() >= l - i && q.arrows()[..l - i] == p.arrows()[i..])
        .map(|i| {
            let meet = p.slice(quiver, i, l);
            let head = p.slice(quiver, 0, i);
            let join = head.concat(q).expect("overlap composes");
            Overlap {
                offset: i,
                meet,
                join,
            }
        })
        .collect()
}

/// The unique overlap of `p` and `q`.
pub fn overlap(quiver: &Quiver, p: &Path, q: &Path) -> Result<Overlap> {
    let mut all = overlaps(quiver, p, q);
    match all.len() {
        0 => Err(Error::NoOverlap {
            first: quiver.label(p),
            second: quiver.label(q),
        }),
        1 => Ok(all.remove(0)),
        count => Err(Error::AmbiguousOverlap {
            first: quiver.label(p),
            second: quiver.label(q),
            count,
        }),
    }
}

/// The overlap of `p` and `q` with `q` starting at position `offset` of `p`.
pub fn overlap_at(quiver: &Quiver, p: &Path, q: &Path, offset: usize) -> Result<Overlap> {
    overlaps(quiver, p, q)
        .into_iter()
        .find(|o| o.offset == offset)
        .ok_or_else(|| Error::BadOverlapOffset {
            first: quiver.label(p),
            second: quiver.label(q),
            offset,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse;

    #[test]
    fn triangle_basis() {
        let p = parse("vertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\nrel a.b\nrel b.c\nrel c.a\n").unwrap();
        let alg = MonomialAlgebra::new(&p).unwrap();
        assert_eq!(alg.dimension(), 6);
        let ab = p.quiver.path_from_str("ab").unwrap();
        assert!(alg.is_zero(&ab));
    }

    #[test]
    fn cyclic_without_relations_is_capped() {
        let p = parse("vertices 1\narrow a: 1 -> 1\n").unwrap();
        assert!(matches!(
            MonomialAlgebra::new(&p),
            Err(Error::PathCapExceeded { cap: 4, .. })
        ));
    }

    #[test]
    fn overlap_of_relations() {
        let p = parse("vertices 1 2 3 4 5\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\narrow d: 4 -> 5\n").unwrap();
        let q = &p.quiver;
        let abc = q.path_from_str("abc").unwrap();
        let bcd = q.path_from_str("bcd").unwrap();
        let o = overlap(q, &abc, &bcd).unwrap();
        assert_eq!(q.label(&o.meet), "bc");
        assert_eq!(q.label(&o.join), "abcd");
        assert!(overlap(q, &bcd, &abc).is_err());
        let ab = q.path_from_str("ab").unwrap();
        let o = overlap(q, &ab, &abc).unwrap();
        assert_eq!((o.offset, q.label(&o.meet)), (0, "ab".into()));
    }

    #[test]
    fn ambiguous_overlaps_need_an_offset() {
        let p = parse("vertices 1\narrow x: 1 -> 1\n").unwrap();
        let q = &p.quiver;
        let xxx = q.path(&[0, 0, 0]).unwrap();
        assert!(matches!(
            overlap(q, &xxx, &xxx),
            Err(Error::AmbiguousOverlap { count: 3, .. })
        ));
        let o = overlap_at(q, &xxx, &xxx, 2).unwrap();
        assert_eq!(o.join.len(), 5);
    }
}
