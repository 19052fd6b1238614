//! Seeded random modules, complexes and maps for tests and experiments.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::Algebra;
use crate::complexes::{chain_map_space, ChainMap, Complex, Degree, Piece};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::{cokernel, hom_space, map_from_projective, Module, ModuleMap};

fn random_matrix<R: Rng + ?Sized>(alg: &Algebra, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let p = alg.modulus();
    let data = (0..rows * cols).map(|_| rng.random_range(0..p.get())).collect();
    Matrix::from_vec(p, rows, cols, data).expect("entries reduced")
}

/// A uniformly random element of `Hom(a, b)`.
pub fn random_hom<R: Rng + ?Sized>(a: &Module, b: &Module, rng: &mut R) -> ModuleMap {
    let p = a.modulus().get();
    let mut f = ModuleMap::zero(a, b);
    for h in hom_space(a, b).expect("same algebra") {
        let c = rng.random_range(0..p);
        if c != 0 {
            f = f.add(&h.scale(c));
        }
    }
    f
}

/// A random nonzero module of total dimension at most `max_dim`, built as
/// the cokernel of a random map between sums of indecomposable projectives.
pub fn random_module<R: Rng + ?Sized>(alg: &Arc<Algebra>, max_dim: usize, rng: &mut R) -> Module {
    let nv = alg.num_vertices();
    for _ in 0..64 {
        let tops: Vec<usize> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(0..nv)).collect();
        let p0 = crate::module::free_module(alg, &tops).expect("vertices in range");
        let rels: Vec<usize> = (0..rng.random_range(0..=3)).map(|_| rng.random_range(0..nv)).collect();
        let images: Vec<Matrix> = rels.iter().map(|&v| random_matrix(alg, p0.dim_at(v), 1, rng)).collect();
        let f = map_from_projective(alg, &rels, &p0, &images).expect("images have the right shape");
        let m = cokernel(&f).0;
        if !m.is_zero() && m.total_dim() <= max_dim {
            return m;
        }
    }
    Module::simple(alg, rng.random_range(0..nv)).expect("vertex in range")
}

/// A random complex with at most `max_len` terms, each of total dimension at
/// most `max_dim`, starting in a random degree in `-1..=1`. Differentials
/// are uniform among maps killing the previous image.
pub fn random_complex<R: Rng + ?Sized>(alg: &Arc<Algebra>, max_len: usize, max_dim: usize, rng: &mut R) -> Complex {
    let len = rng.random_range(1..=max_len.max(1));
    let lo: Degree = rng.random_range(-1..=1);
    let terms: Vec<Module> = (0..len).map(|_| random_module(alg, max_dim, rng)).collect();
    // diffs[k]: terms[k+1] -> terms[k], chosen from the top down.
    let mut diffs: Vec<ModuleMap> = Vec::with_capacity(len.saturating_sub(1));
    let mut above: Option<ModuleMap> = None;
    for k in (0..len.saturating_sub(1)).rev() {
        let src = &terms[k + 1];
        let f = match &above {
            None => random_hom(src, &terms[k], rng),
            Some(prev) => {
                let (c, q) = cokernel(prev);
                random_hom(&c, &terms[k], rng).compose(&q)
            }
        };
        above = Some(f.clone());
        diffs.push(f);
    }
    diffs.reverse();
    Complex::new(alg, lo, terms, diffs).expect("random differentials square to zero")
}

/// A uniformly random chain map.
pub fn random_chain_map<R: Rng + ?Sized>(s: &Complex, t: &Complex, rng: &mut R) -> Result<ChainMap> {
    let p = s.algebra().modulus().get();
    let mut f = ChainMap::zero(s, t);
    for h in chain_map_space(s, t)? {
        let c = rng.random_range(0..p);
        if c != 0 {
            f = f.add(&h.scale(c));
        }
    }
    Ok(f)
}

/// Between one and `max_pieces` disks on random modules, with indices drawn
/// from `indices`.
pub fn random_disk_pieces<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    max_pieces: usize,
    indices: core::ops::RangeInclusive<Degree>,
    max_dim: usize,
    rng: &mut R,
) -> Vec<Piece> {
    let n = rng.random_range(1..=max_pieces.max(1));
    let mut pieces: Vec<Piece> = (0..n)
        .map(|_| Piece::disk(random_module(alg, max_dim, rng), rng.random_range(indices.clone())))
        .collect();
    pieces.sort_by_key(|p| p.degree);
    pieces
}
