//! Seeded generator of random string algebras for property tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stralg::quiver::{classify, parse};
use stralg::Presentation;

pub const SEED: u64 = 0x00c0_ffee;

/// A random string algebra on at most eight vertices. With `gentle`, all
/// relations have length two and the gentle axioms hold.
pub fn random_string_algebra(rng: &mut ChaCha8Rng, gentle: bool) -> Presentation {
    loop {
        if let Some(p) = attempt(rng, gentle) {
            return p;
        }
    }
}

/// `count` samples from a fixed seed; roughly one in three is gentle.
pub fn corpus(count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|i| random_string_algebra(&mut rng, i % 3 == 0))
        .collect()
}

pub fn gentle_corpus(count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9e37);
    (0..count)
        .map(|_| random_string_algebra(&mut rng, true))
        .collect()
}

fn attempt(rng: &mut ChaCha8Rng, gentle: bool) -> Option<Presentation> {
    let n = rng.gen_range(2..=8);
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut out_deg = vec![0; n];
    let mut in_deg = vec![0; n];
    let mut add = |s: usize, t: usize, arrows: &mut Vec<(usize, usize)>| {
        if out_deg[s] < 2 && in_deg[t] < 2 {
            out_deg[s] += 1;
            in_deg[t] += 1;
            arrows.push((s, t));
        }
    };
    if rng.gen_bool(0.75) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let k = rng.gen_range(1..=n);
        for i in 0..k {
            add(order[i], order[(i + 1) % k], &mut arrows);
        }
    }
    for _ in 0..rng.gen_range(0..=n + 2) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        add(s, t, &mut arrows);
    }
    if arrows.is_empty() {
        return None;
    }

    // Allowed compositions form a partial matching at each vertex; every
    // other composable pair is a zero relation.
    let mut next: Vec<Option<usize>> = vec![None; arrows.len()];
    let mut relations: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let mut ins: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].1 == v).collect();
        let mut outs: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].0 == v).collect();
        ins.shuffle(rng);
        outs.shuffle(rng);
        let forced = gentle && ins.len().max(outs.len()) == 2;
        for (&b, &a) in ins.iter().zip(&outs) {
            if forced || rng.gen_bool(0.6) {
                next[b] = Some(a);
            }
        }
        for &b in &ins {
            for &a in &outs {
                if next[b] != Some(a) {
                    relations.push(vec![b, a]);
                }
            }
        }
    }

    // Cycles of allowed compositions need a longer relation to keep the
    // algebra finite-dimensional; gentle samples must avoid them instead.
    let mut on_cycle = BTreeSet::new();
    for start in 0..arrows.len() {
        if on_cycle.contains(&start) {
            continue;
        }
        let mut walk = vec![start];
        let mut cur = start;
        let closes = loop {
            match next[cur] {
                Some(x) if x == start => break true,
                Some(x) if !walk.contains(&x) => {
                    walk.push(x);
                    cur = x;
                }
                _ => break false,
            }
        };
        if !closes {
            continue;
        }
        if gentle {
            return None;
        }
        on_cycle.extend(walk.iter().copied());
        let len = rng.gen_range(2..=walk.len() + 2);
        let offset = rng.gen_range(0..walk.len());
        relations.push((0..len).map(|i| walk[(offset + i) % walk.len()]).collect());
    }
    if !gentle && rng.gen_bool(0.3) {
        let mut path = vec![rng.gen_range(0..arrows.len())];
        while path.len() < rng.gen_range(3..=5) {
            match next[*path.last().unwrap()] {
                Some(x) => path.push(x),
                None => break,
            }
        }
        if path.len() >= 3 {
            relations.push(path);
        }
    }

    let mut text = String::from("vertices");
    for v in 0..n {
        text.push_str(&format!(" {}", v + 1));
    }
    text.push('\n');
    for (i, (s, t)) in arrows.iter().enumerate() {
        text.push_str(&format!("arrow a{i}: {} -> {}\n", s + 1, t + 1));
    }
    for r in &relations {
        let names: Vec<String> = r.iter().map(|a| format!("a{a}")).collect();
        text.push_str(&format!("rel {}\n", names.join(".")));
    }
    let p = parse(&text).unwrap_or_else(|e| panic!("generated text fails to parse: {e}\n{text}"));
    let report = classify(&p);
    assert!(
        report.is_string,
        "generated a non-string algebra:\n{text}\n{:?}",
        report.violations
    );
    assert!(
        !gentle || report.is_gentle,
        "generated a non-gentle algebra:\n{text}\n{:?}",
        report.violations
    );
    Some(p)
}

/// Violations of the structural corollaries on one input: partner
/// uniqueness, generator identity on sequences, route agreement, gentle
/// closure, string-ness of the CM-Auslander algebra versus the G-condition,
/// CM-freeness of the output, and idempotence on CM-free inputs.
pub fn structural_violations(p: &Presentation) -> Vec<String> {
    use stralg::cma::build_cma;
    use stralg::gentle::satisfies_g_condition;
    use stralg::gproj::{is_perfect_pair, perfect_paths, prs_route};
    use stralg::quiver::{relation_cycles, to_dsl, MonomialAlgebra};

    let mut bad = Vec::new();
    let text = to_dsl(p);
    let alg = MonomialAlgebra::new(p).expect("random samples are admissible");
    let nontrivial: Vec<_> = alg.nontrivial().cloned().collect();
    for x in &nontrivial {
        let partners = nontrivial
            .iter()
            .filter(|y| is_perfect_pair(&alg, x, y).unwrap())
            .count();
        if partners > 1 {
            bad.push(format!(
                "{} has {partners} perfect partners",
                p.quiver.label(x)
            ));
        }
    }
    let report = perfect_paths(&alg).unwrap();
    let generators = alg.generators();
    for seq in &report.sequences {
        for i in 0..seq.len() {
            let joined = seq[i]
                .concat(&seq[(i + 1) % seq.len()])
                .expect("consecutive perfect paths compose");
            if !generators.contains(&joined) {
                bad.push(format!("{} is not a generator", p.quiver.label(&joined)));
            }
        }
    }
    let mut routed = BTreeSet::new();
    for rc in relation_cycles(p) {
        for s in prs_route(&alg, &rc.cycle).unwrap() {
            routed.extend(s.perfect_paths);
        }
    }
    let defined: BTreeSet<_> = report.perfect_paths.iter().cloned().collect();
    if routed != defined {
        bad.push("definition route and relation-sequence route disagree".into());
    }
    let cma = build_cma(p).unwrap().presentation;
    let out = classify(&cma);
    if classify(p).is_gentle && !out.is_gentle {
        bad.push("CMA of a gentle algebra is not gentle".into());
    }
    let g = satisfies_g_condition(p).unwrap();
    if out.is_string != g.ok {
        bad.push(format!(
            "CMA string = {} but G-condition = {}",
            out.is_string, g.ok
        ));
    }
    if g.ok {
        let cma_alg = MonomialAlgebra::new(&cma).unwrap();
        if !perfect_paths(&cma_alg).unwrap().cm_free {
            bad.push("CMA of a G-condition algebra is not CM-free".into());
        }
    }
    if report.cm_free && cma != *p {
        bad.push("build_cma changes a CM-free input".into());
    }
    if !bad.is_empty() {
        bad.push(format!("input:\n{text}"));
    }
    bad
}
