use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use derdim::format::{
    algebra_to_string, certificate_to_string, complexes_to_string, module_to_string, parse_algebra,
    parse_certificate, parse_objects, parse_presentation, CertificateFile, ParseError,
};
use derdim_core::algebra::fixtures::{lambda0, lambda1, lambda2, lambda3, lambda4};
use derdim_core::algebra::{Algebra, AlgebraPresentation, Arrow, RelationTerm};
use derdim_core::homological::Generator;
use derdim_core::levels::{build_witness_han, verify_certificate};
use derdim_core::sampling::{random_complex, random_module};

fn fixture(k: usize) -> Arc<Algebra> {
    [lambda0, lambda1, lambda2, lambda3, lambda4][k]()
}

/// A quiver on up to three vertices where every length-two path is killed
/// by a relation with a random nonzero coefficient.
fn presentation() -> impl Strategy<Value = AlgebraPresentation> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=3)
        .prop_flat_map(|(p, nv)| {
            let arrows = prop::collection::vec((0..nv, 0..nv), 0..=3);
            (Just(p), Just(nv), arrows, prop::collection::vec(1..p, 9))
        })
        .prop_map(|(p, nv, ends, coeffs)| {
            let arrows: Vec<Arrow> =
                ends.iter().enumerate().map(|(k, &(s, t))| Arrow { name: format!("x{k}"), source: s, target: t }).collect();
            let mut relations = Vec::new();
            for (a, x) in arrows.iter().enumerate() {
                for (b, y) in arrows.iter().enumerate() {
                    if x.target == y.source {
                        let c = coeffs[relations.len() % coeffs.len()];
                        relations.push(vec![RelationTerm { coefficient: c, path: vec![a, b] }]);
                    }
                }
            }
            AlgebraPresentation {
                modulus: p,
                vertices: (0..nv).map(|v| format!("v{v}")).collect(),
                arrows,
                relations,
                path_length_cap: 2,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algebra_round_trips(pres in presentation()) {
        let alg = derdim_core::load_algebra(&pres).unwrap();
        let text = algebra_to_string(&alg);
        let back = parse_presentation(&text).unwrap();
        prop_assert_eq!(&back, &pres);
        let again = parse_algebra(&text).unwrap();
        prop_assert_eq!(algebra_to_string(&again), text);
        prop_assert_eq!(again.dim(), alg.dim());
    }

    #[test]
    fn module_round_trips(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let m = random_module(&alg, 6, &mut ChaCha8Rng::seed_from_u64(seed));
        let text = module_to_string("m", &m);
        let objs = parse_objects(&alg, &text).unwrap();
        prop_assert_eq!(objs.module("m").unwrap(), &m);
        prop_assert_eq!(module_to_string("m", objs.module("m").unwrap()), text);
    }

    #[test]
    fn complex_round_trips(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let items = vec![
            ("a".to_string(), random_complex(&alg, 4, 4, &mut rng)),
            ("b".to_string(), random_complex(&alg, 3, 3, &mut rng).shift(5)),
        ];
        let text = complexes_to_string(&items);
        let objs = parse_objects(&alg, &text).unwrap();
        prop_assert_eq!(&objs.complexes, &items);
        prop_assert_eq!(complexes_to_string(&objs.complexes), text);
    }

    #[test]
    fn certificate_round_trips(k in prop::sample::select(vec![0usize, 2, 3, 4]), seed in any::<u64>()) {
        // Finite global dimension, so add Λ has finite relative dimension.
        let alg = fixture(k);
        let g = Generator::projectives(&alg).unwrap();
        let a = random_complex(&alg, 3, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = build_witness_han(&a, &g, 32).unwrap();
        let file = CertificateFile { algebra: alg.clone(), generator: g, certificate: c };
        let text = certificate_to_string(&file);
        let back = parse_certificate(&text).unwrap();
        prop_assert_eq!(&back.certificate, &file.certificate);
        prop_assert_eq!(back.generator.module(), file.generator.module());
        prop_assert_eq!(certificate_to_string(&back), text);
        prop_assert!(verify_certificate(&back.certificate, &back.generator).is_accept());
    }
}

fn syntax_line(e: ParseError) -> usize {
    match e {
        ParseError::Syntax { line, .. } => line,
        other => panic!("expected a syntax error, got {other}"),
    }
}

#[test]
fn object_errors_carry_line_numbers() {
    let alg = lambda2();
    let cases = [
        ("module m\ndims 1 1\naction zz\nmatrix 1 1\n1\nend\n", 3),
        ("module m\ndims 1 1\naction a1\nmatrix 1 1\n2\nend\n", 5),
        ("module m\ndims 1\nend\n", 2),
        ("complex c\nterm 0 nosuch\nend\n", 2),
        ("complex c\nterm 0 @simple 9\nend\n", 2),
        ("generator g\nsummand @simple 1\nend\n", 1),
        ("widget w\n", 1),
    ];
    for (text, line) in cases {
        assert_eq!(syntax_line(parse_objects(&alg, text).unwrap_err()), line, "{text}");
    }
}

#[test]
fn non_chain_complex_is_rejected_on_input() {
    // Λ1 ---x---> Λ1 ---1---> Λ1 does not square to zero.
    let alg = lambda1();
    let text = "complex c\nterm 0 @regular\nterm 1 @regular\nterm 2 @regular\n\
                diff 1\nmatrix 2 2\n0 0\n1 0\ndiff 2\nmatrix 2 2\n1 0\n0 1\nend\n";
    assert_eq!(syntax_line(parse_objects(&alg, text).unwrap_err()), 1);
}

#[test]
fn shipped_fixtures_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for k in 0..5 {
        let alg = parse_algebra(&std::fs::read_to_string(dir.join(format!("lambda{k}.alg"))).unwrap()).unwrap();
        assert_eq!(alg.presentation(), fixture(k).presentation(), "lambda{k}");
        let objs = parse_objects(&alg, &std::fs::read_to_string(dir.join(format!("lambda{k}.objects"))).unwrap()).unwrap();
        assert!(objs.generator("proj").is_some());
    }
}
