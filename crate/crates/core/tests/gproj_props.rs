mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stralg::cma::build_cma;
use stralg::fixtures;
use stralg::gproj::{hosting_cycles, is_perfect_pair, perfect_partner, perfect_paths};
use stralg::oracle::{ext1_into_algebra, ideal_module, rep_iso, syzygy_generators};
use stralg::quiver::{classify, parse, MonomialAlgebra};
use stralg::Presentation;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(common::SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn string_fixtures() -> Vec<(&'static str, Presentation)> {
    fixtures::ALL
        .iter()
        .map(|(name, text)| (*name, parse(text).unwrap()))
        .filter(|(_, p)| classify(p).is_string)
        .collect()
}

/// Each perfect path generates a non-projective module whose syzygy is
/// generated by its partner and which has no self-extensions with A.
fn check_rigidity(p: &Presentation) {
    let alg = MonomialAlgebra::new(p).unwrap();
    let report = perfect_paths(&alg).unwrap();
    let projectives: Vec<_> = (0..p.quiver.vertex_count())
        .map(|v| ideal_module(&alg, &stralg::quiver::Path::trivial(v)))
        .collect();
    for x in &report.perfect_paths {
        let m = ideal_module(&alg, x);
        for proj in &projectives {
            assert!(
                !rep_iso(p, &m, proj).unwrap(),
                "{} is projective",
                p.quiver.label(x)
            );
        }
        let partner = perfect_partner(&alg, x)
            .unwrap()
            .expect("perfect paths have partners");
        assert_eq!(syzygy_generators(&alg, x), vec![partner]);
        assert_eq!(ext1_into_algebra(&alg, std::slice::from_ref(x)).unwrap(), 0);
    }
}

#[test]
fn fixtures_satisfy_structural_invariants() {
    for (name, p) in string_fixtures() {
        let bad = common::structural_violations(&p);
        assert!(bad.is_empty(), "{name}: {bad:#?}");
    }
}

#[test]
fn perfect_paths_are_rigid_on_fixtures() {
    for (_, p) in string_fixtures() {
        check_rigidity(&p);
    }
}

#[test]
fn perfect_sequences_lie_on_relation_cycles() {
    for (name, p) in string_fixtures() {
        let alg = MonomialAlgebra::new(&p).unwrap();
        for seq in perfect_paths(&alg).unwrap().sequences {
            assert!(!hosting_cycles(&p, &seq).is_empty(), "{name}");
        }
    }
}

#[test]
fn gentle_triangle_cma_has_pairs_without_perfect_paths() {
    let p = parse(fixtures::TRIANGLE_GENTLE).unwrap();
    let cma = build_cma(&p).unwrap().presentation;
    assert_eq!(cma.quiver.vertex_count(), 6);
    let alg = MonomialAlgebra::new(&cma).unwrap();
    let paths: Vec<_> = alg.nontrivial().cloned().collect();
    let pairs = paths
        .iter()
        .flat_map(|x| paths.iter().map(move |y| (x, y)))
        .filter(|(x, y)| is_perfect_pair(&alg, x, y).unwrap())
        .count();
    assert!(pairs > 0);
    let report = perfect_paths(&alg).unwrap();
    assert!(report.perfect_paths.is_empty());
    assert!(report.cm_free);
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn random_samples_satisfy_structural_invariants(seed in any::<u64>(), gentle in any::<bool>()) {
        let p = common::random_string_algebra(&mut ChaCha8Rng::seed_from_u64(seed), gentle);
        let bad = common::structural_violations(&p);
        prop_assert!(bad.is_empty(), "{:#?}", bad);
        let alg = MonomialAlgebra::new(&p).unwrap();
        for seq in perfect_paths(&alg).unwrap().sequences {
            prop_assert!(!hosting_cycles(&p, &seq).is_empty());
        }
    }

    #[test]
    fn random_perfect_paths_are_rigid(seed in any::<u64>()) {
        let p = common::random_string_algebra(&mut ChaCha8Rng::seed_from_u64(seed), false);
        check_rigidity(&p);
    }
}
