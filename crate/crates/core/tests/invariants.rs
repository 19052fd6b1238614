use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use derdim_core::algebra::fixtures::*;
use derdim_core::algebra::Algebra;
use derdim_core::complexes::{cone, homology, is_quasi_iso, projective_epi, ChainMap, Complex};
use derdim_core::homological::{decompose, is_isomorphic, syzygy, xdim, Generator};
use derdim_core::module::{direct_sum, hom_space, projective_cover};
use derdim_core::sampling::{random_chain_map, random_complex, random_module};
use derdim_core::{Matrix, Modulus};

fn fixture(k: usize) -> Arc<Algebra> {
    [lambda0, lambda1, lambda2, lambda3, lambda4][k]()
}

fn matrix(p: u32) -> impl Strategy<Value = Matrix> {
    (0usize..6, 0usize..6).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..p, r * c)
            .prop_map(move |d| Matrix::from_vec(Modulus::new(p).unwrap(), r, c, d).unwrap())
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    prop::sample::select(vec![2u32, 3, 5, 7, 31]).prop_flat_map(matrix)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(a in any_matrix()) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let l = a.left_kernel_basis();
        prop_assert!((&l * &a).is_zero());
        prop_assert_eq!(l.rows() + a.rank(), a.rows());
    }

    #[test]
    fn solve_finds_a_preimage_exactly_when_one_exists(a in any_matrix(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = a.modulus();
        let x: Vec<u32> = (0..a.cols()).map(|_| rng.random_range(0..p.get())).collect();
        let x = Matrix::from_vec(p, a.cols(), 1, x).unwrap();
        let b = &a * &x;
        let y = a.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(&a * &y, b);
        // A vector outside the column space has no solution.
        let basis = a.column_space_basis();
        if basis.cols() < a.rows() {
            let e = (0..a.rows())
                .map(|i| {
                    let mut v = Matrix::zeros(p, a.rows(), 1);
                    v.set(i, 0, 1);
                    v
                })
                .find(|v| basis.hstack(v).rank() > basis.cols())
                .unwrap();
            prop_assert!(a.solve(&e).unwrap().is_none());
        }
    }

    #[test]
    fn inverse_is_two_sided(a in any_matrix()) {
        if let Some(inv) = a.inverse() {
            let id = Matrix::identity(a.modulus(), a.rows());
            prop_assert_eq!(&a * &inv, id.clone());
            prop_assert_eq!(&inv * &a, id);
        } else {
            prop_assert!(!a.is_square() || a.rank() < a.rows());
        }
    }

    #[test]
    fn decomposition_preserves_dimension_and_iso_class(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&alg, 6, &mut rng);
        let d = decompose(&m, seed);
        let mut total = vec![0; alg.num_vertices()];
        for (s, mult) in &d.summands {
            for (t, x) in total.iter_mut().zip(s.dims()) {
                *t += mult * x;
            }
            // Summands do not split again.
            prop_assert_eq!(decompose(s, seed ^ 1).summands.len(), 1);
        }
        prop_assert_eq!(&total, &m.dims().to_vec());
        prop_assert!(d.from_sum.compose(&d.to_sum).is_iso());
        // Another seed yields isomorphic summands.
        let other = decompose(&m, seed.wrapping_add(17));
        prop_assert_eq!(other.summands.len(), d.summands.len());
        prop_assert!(is_isomorphic(&m, &other.sum));
    }

    #[test]
    fn syzygy_is_additive(k in 1usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_module(&alg, 4, &mut rng);
        let b = random_module(&alg, 4, &mut rng);
        let ab = direct_sum(&alg, &[a.clone(), b.clone()]).unwrap().sum;
        let lhs = syzygy(&ab, 1).unwrap();
        let rhs = direct_sum(&alg, &[syzygy(&a, 1).unwrap(), syzygy(&b, 1).unwrap()]).unwrap().sum;
        prop_assert!(is_isomorphic(&lhs, &rhs));
        let cover = projective_cover(&a).unwrap();
        prop_assert_eq!(cover.projective.total_dim(), a.total_dim() + cover.kernel.total_dim());
    }

    #[test]
    fn hereditary_a2_has_xdim_at_most_one(seed in any::<u64>()) {
        let alg = lambda2();
        let g = Generator::projectives(&alg).unwrap();
        let m = random_module(&alg, 6, &mut ChaCha8Rng::seed_from_u64(seed));
        let v = xdim(&m, &g, 8).unwrap().value.finite().unwrap();
        prop_assert!(v <= 1);
        // Submodules of projectives are projective.
        prop_assert_eq!(xdim(&syzygy(&m, 1).unwrap(), &g, 8).unwrap().value.finite(), Some(0));
    }

    #[test]
    fn hom_dimension_is_additive(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_module(&alg, 4, &mut rng);
        let b = random_module(&alg, 4, &mut rng);
        let c = random_module(&alg, 4, &mut rng);
        let bc = direct_sum(&alg, &[b.clone(), c.clone()]).unwrap().sum;
        prop_assert_eq!(
            hom_space(&a, &bc).unwrap().len(),
            hom_space(&a, &b).unwrap().len() + hom_space(&a, &c).unwrap().len()
        );
    }

    #[test]
    fn shift_preserves_homology(k in 0usize..5, seed in any::<u64>(), s in -3i64..=3) {
        let alg = fixture(k);
        let a = random_complex(&alg, 4, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = a.shift(s);
        b.validate().unwrap();
        for n in a.degrees() {
            prop_assert_eq!(homology(&a, n).module.dims().to_vec(), homology(&b, n + s).module.dims().to_vec());
        }
        prop_assert_eq!(b.shift(-s), a);
    }

    #[test]
    fn euler_characteristic_equals_homology_alternating_sum(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let a = random_complex(&alg, 4, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut chi = vec![0i64; alg.num_vertices()];
        for n in a.degrees() {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            for (c, d) in chi.iter_mut().zip(homology(&a, n).module.dims()) {
                *c += sign * *d as i64;
            }
        }
        prop_assert_eq!(a.euler_characteristic(), chi);
    }

    #[test]
    fn projective_epi_gives_short_exact_sequences(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let a = random_complex(&alg, 4, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let pe = projective_epi(&a).unwrap();
        pe.ses.validate().unwrap();
        pe.epi.validate().unwrap();
        let (x, y, z) = (pe.l.euler_characteristic(), pe.p.euler_characteristic(), a.euler_characteristic());
        for v in 0..alg.num_vertices() {
            prop_assert_eq!(y[v], x[v] + z[v]);
        }
        // P is a sum of disks, hence acyclic.
        prop_assert!(pe.p.is_exact());
    }

    #[test]
    fn cone_of_a_quasi_isomorphism_is_acyclic(k in 0usize..5, seed in any::<u64>()) {
        let alg = fixture(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_complex(&alg, 3, 3, &mut rng);
        let b = random_complex(&alg, 3, 3, &mut rng);
        let id = ChainMap::identity(&a);
        prop_assert!(cone(&id).unwrap().cone.is_exact());
        let f = random_chain_map(&a, &b, &mut rng).unwrap();
        let c = cone(&f).unwrap();
        c.ses.validate().unwrap();
        prop_assert_eq!(c.cone.is_exact(), is_quasi_iso(&f));
    }
}

#[test]
fn zero_complex_has_no_support() {
    let alg = lambda2();
    let z = Complex::zero(&alg);
    assert!(z.support().is_none());
    assert!(z.is_exact());
}
