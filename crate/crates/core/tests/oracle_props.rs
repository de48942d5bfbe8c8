mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stralg::fixtures;
use stralg::oracle::{algebra_dim, default_degree_bound, hom_dim, ideal_module, verify_cma};
use stralg::quiver::{classify, parse, MonomialAlgebra, Path};
use stralg::Presentation;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(common::SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Hom(P(i), P(j)) is spanned by the nonzero paths from j to i, and these
/// dimensions add up to the dimension of the algebra.
fn check_projective_homs(p: &Presentation) {
    let alg = MonomialAlgebra::new(p).unwrap();
    let n = p.quiver.vertex_count();
    let projectives: Vec<_> = (0..n)
        .map(|v| ideal_module(&alg, &Path::trivial(v)))
        .collect();
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            let paths = alg
                .nonzero_paths()
                .iter()
                .filter(|x| x.source() == j && x.target() == i)
                .count();
            let h = hom_dim(p, &projectives[i], &projectives[j]).unwrap();
            assert_eq!(h, paths, "Hom(P{i}, P{j})");
            total += h;
        }
    }
    assert_eq!(total, alg.dimension());
    assert_eq!(
        algebra_dim(p, default_degree_bound(p)).unwrap().dimension,
        total
    );
    for x in alg.nonzero_paths() {
        let m = ideal_module(&alg, x);
        assert!(hom_dim(p, &m, &m).unwrap() >= 1);
    }
}

#[test]
fn projective_homs_on_fixtures() {
    for (_, text) in fixtures::ALL {
        let p = parse(text).unwrap();
        if classify(&p).is_monomial {
            check_projective_homs(&p);
        }
    }
}

#[test]
fn verification_passes_on_a_random_corpus() {
    for p in common::corpus(40) {
        let report = verify_cma(&p).unwrap();
        assert!(
            report.pass,
            "{:#?}\n{}",
            report.failures,
            stralg::quiver::to_dsl(&p)
        );
        assert_eq!(report.d1, report.d2);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn random_projective_homs(seed in any::<u64>(), gentle in any::<bool>()) {
        let p = common::random_string_algebra(&mut ChaCha8Rng::seed_from_u64(seed), gentle);
        check_projective_homs(&p);
    }
}
