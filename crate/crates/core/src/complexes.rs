//! Bounded complexes of modules, graded homologically: `f_n: A_n -> A_{n-1}`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::module::{
    cokernel, direct_sum, hom_space, kernel, lift_cover_through, projective_cover, same_algebra, Module, ModuleMap,
};

pub type Degree = i64;

/// A bounded complex. Terms cover degrees `lo..lo + terms.len()`, with
/// `diffs[k]` the differential `terms[k + 1] -> terms[k]`. Constructors trim
/// zero terms at both ends.
#[derive(Clone)]
pub struct Complex {
    alg: Arc<Algebra>,
    lo: Degree,
    terms: Vec<Module>,
    diffs: Vec<ModuleMap>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg)
            && self.terms == other.terms
            && self.diffs == other.diffs
            && (self.terms.is_empty() || self.lo == other.lo)
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[")?;
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " <- ")?;
            }
            write!(f, "{}:{:?}", self.lo + k as Degree, t.dims())?;
        }
        write!(f, "]")
    }
}

impl Complex {
    pub fn new(alg: &Arc<Algebra>, lo: Degree, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<Self> {
        let c = Complex::from_parts_unchecked(alg, lo, terms, diffs);
        c.validate()?;
        Ok(c.trimmed())
    }

    /// Builds without checks or trimming; see [`Complex::validate`].
    pub fn from_parts_unchecked(
        alg: &Arc<Algebra>,
        lo: Degree,
        terms: Vec<Module>,
        diffs: Vec<ModuleMap>,
    ) -> Self {
        Complex { alg: alg.clone(), lo, terms, diffs }
    }

    pub fn validate(&self) -> Result<()> {
        if self.diffs.len() != self.terms.len().saturating_sub(1) {
            return Err(invalid("complex", "one differential between each pair of adjacent terms"));
        }
        for t in &self.terms {
            if !same_algebra(&self.alg, t.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
            t.validate()?;
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let n = self.lo + k as Degree + 1;
            if d.source() != &self.terms[k + 1] || d.target() != &self.terms[k] {
                return Err(invalid("complex", format!("differential {n} has wrong endpoints")));
            }
            d.validate()?;
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].compose(&self.diffs[k]).is_zero() {
                let n = self.lo + k as Degree + 1;
                return Err(invalid("complex", format!("f_{} f_{} is not zero", n - 1, n)));
            }
        }
        Ok(())
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_zero()).count();
        if lead == self.terms.len() {
            self.terms.clear();
            self.diffs.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as Degree;
        }
        self
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Complex { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// Lowest and highest degree carrying a term, if any.
    pub fn support(&self) -> Option<(Degree, Degree)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as Degree - 1))
        }
    }

    pub fn lo(&self) -> Degree {
        self.lo
    }

    /// Stored terms (degrees `lo()..`).
    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    /// Stored differentials; entry `k` starts in degree `lo() + k + 1`.
    pub fn diffs(&self) -> &[ModuleMap] {
        &self.diffs
    }

    pub fn degrees(&self) -> core::ops::Range<Degree> {
        self.lo..self.lo + self.terms.len() as Degree
    }

    pub fn term(&self, n: Degree) -> Module {
        self.term_ref(n).cloned().unwrap_or_else(|| Module::zero(&self.alg))
    }

    fn term_ref(&self, n: Degree) -> Option<&Module> {
        let k = n.checked_sub(self.lo)?;
        if k < 0 {
            None
        } else {
            self.terms.get(k as usize)
        }
    }

    /// `f_n: A_n -> A_{n-1}`.
    pub fn diff(&self, n: Degree) -> ModuleMap {
        let k = n - self.lo - 1;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            ModuleMap::zero(&self.term(n), &self.term(n - 1))
        }
    }

    /// Per vertex, `Σ (−1)^n dim A_n`.
    pub fn euler_characteristic(&self) -> Vec<i64> {
        let mut chi = vec![0i64; self.alg.num_vertices()];
        for n in self.degrees() {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            for (v, c) in chi.iter_mut().enumerate() {
                *c += sign * self.term(n).dim_at(v) as i64;
            }
        }
        chi
    }

    /// `Σ^k A`: `(Σ^k A)_n = A_{n−k}` with differentials scaled by `(−1)^k`.
    pub fn shift(&self, k: Degree) -> Complex {
        let p = self.alg.modulus();
        let sign = if k.rem_euclid(2) == 0 { 1 } else { p.neg(1) };
        Complex {
            alg: self.alg.clone(),
            lo: if self.terms.is_empty() { 0 } else { self.lo + k },
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(sign)).collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|n| homology(self, n).module.is_zero())
    }
}

/// `S^i(M)`: `M` in degree `i`.
pub fn stalk(m: &Module, i: Degree) -> Complex {
    Complex::from_parts_unchecked(m.algebra(), i, vec![m.clone()], Vec::new()).trimmed()
}

/// The disk on `M` at `i`: `M` in degrees `i` and `i − 1`, identity between.
pub fn disk(m: &Module, i: Degree) -> Complex {
    Complex::from_parts_unchecked(m.algebra(), i - 1, vec![m.clone(), m.clone()], vec![ModuleMap::identity(m)])
        .trimmed()
}

/// The term in degree `i`.
pub fn evaluate(a: &Complex, i: Degree) -> Module {
    a.term(i)
}

/// `Z_n A = ker f_n` with its inclusion into `A_n`.
pub fn cycles(a: &Complex, n: Degree) -> (Module, ModuleMap) {
    kernel(&a.diff(n))
}

/// `B_n A = im f_{n+1}` with its inclusion into `A_n`.
pub fn boundaries(a: &Complex, n: Degree) -> (Module, ModuleMap) {
    let img = crate::module::image(&a.diff(n + 1));
    (img.image, img.mono)
}

/// `H_n A = Z_n / B_n` with the data needed to build induced maps.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: Module,
    pub cycles: Module,
    pub cycle_inclusion: ModuleMap,
    /// `Z_n -> H_n`.
    pub projection: ModuleMap,
    /// Per vertex, a linear section `H_n -> Z_n` of the projection.
    pub section: Vec<Matrix>,
}

pub fn homology(a: &Complex, n: Degree) -> Homology {
    let (z, z_incl) = cycles(a, n);
    let f = a.diff(n + 1);
    // f_{n+1} factored through Z_n.
    let comps: Vec<Matrix> = f
        .components()
        .iter()
        .zip(z_incl.components())
        .map(|(c, i)| i.solve(c).unwrap().expect("boundaries are cycles"))
        .collect();
    let into_z = ModuleMap::from_parts_unchecked(f.source().clone(), z.clone(), comps);
    let (h, q) = cokernel(&into_z);
    let section = q
        .components()
        .iter()
        .map(|c| {
            let id = Matrix::identity(c.modulus(), c.rows());
            c.solve(&id).unwrap().expect("projection is surjective")
        })
        .collect();
    Homology { module: h, cycles: z, cycle_inclusion: z_incl, projection: q, section }
}

/// A chain map, stored by its components on the source's support.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    comps: Vec<ModuleMap>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

impl ChainMap {
    /// `comps[k]` is the component in degree `source.lo() + k`.
    pub fn new(source: Complex, target: Complex, comps: Vec<ModuleMap>) -> Result<Self> {
        let f = ChainMap { source, target, comps };
        f.validate()?;
        Ok(f)
    }

    pub fn from_parts_unchecked(source: Complex, target: Complex, comps: Vec<ModuleMap>) -> Self {
        ChainMap { source, target, comps }
    }

    /// Builds from a per-degree function over the source's support.
    pub fn from_fn(source: &Complex, target: &Complex, mut f: impl FnMut(Degree) -> ModuleMap) -> Self {
        let comps = source.degrees().map(&mut f).collect();
        ChainMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn validate(&self) -> Result<()> {
        if !same_algebra(self.source.algebra(), self.target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if self.comps.len() != self.source.terms.len() {
            return Err(invalid("chain map", "one component per source degree required"));
        }
        for (k, c) in self.comps.iter().enumerate() {
            let n = self.source.lo + k as Degree;
            if c.source() != &self.source.term(n) || c.target() != &self.target.term(n) {
                return Err(invalid("chain map", format!("component {n} has wrong endpoints")));
            }
            c.validate()?;
        }
        for n in self.source.degrees() {
            let l = self.target.diff(n).compose(&self.component(n));
            let r = self.component(n - 1).compose(&self.source.diff(n));
            if l != r {
                return Err(invalid("chain map", format!("square at degree {n} does not commute")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn components(&self) -> &[ModuleMap] {
        &self.comps
    }

    pub fn component(&self, n: Degree) -> ModuleMap {
        let k = n - self.source.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            ModuleMap::zero(&self.source.term(n), &self.target.term(n))
        }
    }

    pub fn identity(a: &Complex) -> Self {
        ChainMap::from_fn(a, a, |n| ModuleMap::identity(&a.term(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap::from_fn(source, target, |n| ModuleMap::zero(&source.term(n), &target.term(n)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&inner.source, &self.target, |n| self.component(n).compose(&inner.component(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.component(n).add(&other.component(n)))
    }

    pub fn scale(&self, c: u32) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.component(n).scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Same components viewed between equal complexes built elsewhere.
    pub fn retarget(&self, source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::from_fn(source, target, |n| self.component(n).retarget(&source.term(n), &target.term(n)))
    }
}

/// Degrees where either complex has a term.
fn joint_degrees(a: &Complex, b: &Complex) -> core::ops::RangeInclusive<Degree> {
    let (lo, hi) = match (a.support(), b.support()) {
        (None, None) => (1, 0),
        (Some(s), None) | (None, Some(s)) => s,
        (Some(s), Some(t)) => (s.0.min(t.0), s.1.max(t.1)),
    };
    lo..=hi
}

/// The map `H_n(φ)` in the bases of [`homology`].
pub fn induced_homology_map(phi: &ChainMap, n: Degree) -> ModuleMap {
    let hs = homology(&phi.source, n);
    let ht = homology(&phi.target, n);
    induced_between(phi, n, &hs, &ht)
}

fn induced_between(phi: &ChainMap, n: Degree, hs: &Homology, ht: &Homology) -> ModuleMap {
    let f = phi.component(n);
    let comps = (0..hs.section.len())
        .map(|v| {
            let x = &(f.component(v) * hs.cycle_inclusion.component(v)) * &hs.section[v];
            let y = ht.cycle_inclusion.component(v).solve(&x).unwrap().expect("cycles map to cycles");
            ht.projection.component(v) * &y
        })
        .collect();
    ModuleMap::from_parts_unchecked(hs.module.clone(), ht.module.clone(), comps)
}

/// Whether every induced map on homology is an isomorphism.
pub fn is_quasi_iso(phi: &ChainMap) -> bool {
    joint_degrees(&phi.source, &phi.target).all(|n| {
        let hs = homology(&phi.source, n);
        let ht = homology(&phi.target, n);
        hs.module.dims() == ht.module.dims() && induced_between(phi, n, &hs, &ht).is_iso()
    })
}

/// Degreewise kernel of a chain map, with its inclusion.
pub fn kernel_of_chain_map(phi: &ChainMap) -> (Complex, ChainMap) {
    let src = &phi.source;
    let alg = src.algebra();
    let mut terms = Vec::new();
    let mut incls: Vec<ModuleMap> = Vec::new();
    for n in src.degrees() {
        let (k, i) = kernel(&phi.component(n));
        terms.push(k);
        incls.push(i);
    }
    let mut diffs = Vec::new();
    for k in 1..terms.len() {
        let n = src.lo + k as Degree;
        let f = src.diff(n).compose(&incls[k]);
        let comps = f
            .components()
            .iter()
            .zip(incls[k - 1].components())
            .map(|(c, i)| i.solve(c).unwrap().expect("kernel is a subcomplex"))
            .collect();
        diffs.push(ModuleMap::from_parts_unchecked(terms[k].clone(), terms[k - 1].clone(), comps));
    }
    let untrimmed = Complex::from_parts_unchecked(alg, src.lo, terms, diffs);
    let incl_untrimmed = ChainMap { source: untrimmed.clone(), target: src.clone(), comps: incls };
    let k = untrimmed.trimmed();
    let incl = ChainMap::from_fn(&k, src, |n| incl_untrimmed.component(n));
    (k, incl)
}

/// A degreewise short exact sequence `0 -> X -> Y -> Z -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    pub i: ChainMap,
    pub p: ChainMap,
}

impl ShortExactSeq {
    pub fn new(i: ChainMap, p: ChainMap) -> Result<Self> {
        let s = ShortExactSeq { i, p };
        s.validate()?;
        Ok(s)
    }

    pub fn sub(&self) -> &Complex {
        &self.i.source
    }

    pub fn middle(&self) -> &Complex {
        &self.i.target
    }

    pub fn quotient(&self) -> &Complex {
        &self.p.target
    }

    pub fn validate(&self) -> Result<()> {
        self.i.validate()?;
        self.p.validate()?;
        if self.i.target != self.p.source {
            return Err(invalid("short exact sequence", "maps do not share the middle term"));
        }
        let y = self.middle();
        let supports = [self.sub().support(), y.support(), self.quotient().support()];
        let lo = supports.iter().flatten().map(|s| s.0).min().unwrap_or(1);
        let hi = supports.iter().flatten().map(|s| s.1).max().unwrap_or(0);
        for n in lo..=hi {
            let a = self.i.component(n);
            let b = self.p.component(n);
            if !b.compose(&a).is_zero() {
                return Err(invalid("short exact sequence", format!("composite nonzero in degree {n}")));
            }
            for v in 0..y.algebra().num_vertices() {
                let (ra, rb) = (a.component(v).rank(), b.component(v).rank());
                if ra != a.component(v).cols() {
                    return Err(invalid("short exact sequence", format!("not injective in degree {n}")));
                }
                if rb != b.component(v).rows() {
                    return Err(invalid("short exact sequence", format!("not surjective in degree {n}")));
                }
                if ra + rb != y.term(n).dim_at(v) {
                    return Err(invalid("short exact sequence", format!("not exact in the middle in degree {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Shape of a summand of a piece sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Stalk,
    Disk,
}

/// `stalk(module, degree)` or `disk(module, degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub kind: PieceKind,
    pub module: Module,
    pub degree: Degree,
}

impl Piece {
    pub fn stalk(module: Module, degree: Degree) -> Self {
        Piece { kind: PieceKind::Stalk, module, degree }
    }

    pub fn disk(module: Module, degree: Degree) -> Self {
        Piece { kind: PieceKind::Disk, module, degree }
    }

    pub fn complex(&self) -> Complex {
        match self.kind {
            PieceKind::Stalk => stalk(&self.module, self.degree),
            PieceKind::Disk => disk(&self.module, self.degree),
        }
    }

    /// The chain map `piece -> target` determined by a module map
    /// `g: module -> target_degree` (for stalks `f_degree ∘ g` must vanish).
    pub fn map_into(&self, target: &Complex, g: &ModuleMap) -> ChainMap {
        let src = self.complex();
        let i = self.degree;
        let below = target.diff(i).compose(g);
        ChainMap::from_fn(&src, target, |n| {
            if n == i {
                g.retarget(&src.term(n), &target.term(n))
            } else {
                below.retarget(&src.term(n), &target.term(n))
            }
        })
    }
}

/// A finite direct sum of complexes with its biproduct maps.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub sum: Complex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

pub fn direct_sum_complexes(alg: &Arc<Algebra>, parts: &[Complex]) -> Result<ComplexSum> {
    for c in parts {
        if !same_algebra(alg, c.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let supports: Vec<(Degree, Degree)> = parts.iter().filter_map(|c| c.support()).collect();
    if supports.is_empty() {
        let zero = Complex::zero(alg);
        let injections = parts.iter().map(|c| ChainMap::zero(c, &zero)).collect();
        let projections = parts.iter().map(|c| ChainMap::zero(&zero, c)).collect();
        return Ok(ComplexSum { sum: zero, injections, projections });
    }
    let lo = supports.iter().map(|s| s.0).min().unwrap();
    let hi = supports.iter().map(|s| s.1).max().unwrap();
    let p = alg.modulus();
    let mut terms = Vec::new();
    let mut biproducts = Vec::new();
    for n in lo..=hi {
        let ms: Vec<Module> = parts.iter().map(|c| c.term(n)).collect();
        let ds = direct_sum(alg, &ms)?;
        terms.push(ds.sum.clone());
        biproducts.push(ds);
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let k = (n - lo) as usize;
        let comps = (0..alg.num_vertices())
            .map(|v| {
                let blocks: Vec<Matrix> = parts.iter().map(|c| c.diff(n).component(v).clone()).collect();
                Matrix::block_diag(p, &blocks)
            })
            .collect();
        diffs.push(ModuleMap::from_parts_unchecked(terms[k].clone(), terms[k - 1].clone(), comps));
    }
    let sum = Complex { alg: alg.clone(), lo, terms, diffs };
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (j, c) in parts.iter().enumerate() {
        injections.push(ChainMap::from_fn(c, &sum, |n| biproducts[(n - lo) as usize].injections[j].clone()));
        projections.push(ChainMap::from_fn(&sum, c, |n| biproducts[(n - lo) as usize].projections[j].clone()));
    }
    Ok(ComplexSum { sum, injections, projections })
}

/// The sum of the piece complexes, in the listed order.
pub fn piece_sum(alg: &Arc<Algebra>, pieces: &[Piece]) -> Result<ComplexSum> {
    let parts: Vec<Complex> = pieces.iter().map(|p| p.complex()).collect();
    direct_sum_complexes(alg, &parts)
}

/// The chain map out of a piece sum whose restriction to piece `k` is
/// `pieces[k].map_into(target, maps[k])`.
pub fn map_from_pieces(sum: &ComplexSum, pieces: &[Piece], target: &Complex, maps: &[ModuleMap]) -> ChainMap {
    let mut acc = ChainMap::zero(&sum.sum, target);
    for ((piece, g), proj) in pieces.iter().zip(maps).zip(&sum.projections) {
        acc = acc.add(&piece.map_into(target, g).compose(proj));
    }
    acc
}

/// The mapping cone of `u: L -> P`, with `Cone_n = P_n ⊕ L_{n−1}` and
/// `d(p, l) = (d p + u l, −d l)`, together with `0 -> P -> Cone -> ΣL -> 0`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub cone: Complex,
    pub ses: ShortExactSeq,
}

pub fn cone(u: &ChainMap) -> Result<Cone> {
    let (l, pc) = (&u.source, &u.target);
    let alg = pc.algebra().clone();
    let p = alg.modulus();
    let sl = l.shift(1);
    let range = joint_degrees(pc, &sl);
    if range.is_empty() {
        let z = Complex::zero(&alg);
        let ses = ShortExactSeq { i: ChainMap::zero(pc, &z), p: ChainMap::zero(&z, &sl) };
        return Ok(Cone { cone: z, ses });
    }
    let (lo, hi) = (*range.start(), *range.end());
    let mut terms = Vec::new();
    let mut sums = Vec::new();
    for n in lo..=hi {
        let ds = direct_sum(&alg, &[pc.term(n), l.term(n - 1)])?;
        terms.push(ds.sum.clone());
        sums.push(ds);
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let k = (n - lo) as usize;
        let comps = (0..alg.num_vertices())
            .map(|v| {
                let dp = pc.diff(n).component(v).clone();
                let uu = u.component(n - 1).component(v).clone();
                let dl = l.diff(n - 1).component(v).scale(p.neg(1));
                let top = dp.hstack(&uu);
                let bottom = Matrix::zeros(p, dl.rows(), dp.cols()).hstack(&dl);
                top.vstack(&bottom)
            })
            .collect();
        diffs.push(ModuleMap::from_parts_unchecked(terms[k].clone(), terms[k - 1].clone(), comps));
    }
    let c = Complex { alg: alg.clone(), lo, terms, diffs };
    c.validate().map_err(|e| Error::Diagnostic(format!("cone: {e}")))?;
    let i = ChainMap::from_fn(pc, &c, |n| sums[(n - lo) as usize].injections[0].clone());
    let pr = ChainMap::from_fn(&c, &sl, |n| {
        sums[(n - lo) as usize].projections[1].retarget(&c.term(n), &sl.term(n))
    });
    let c_trim = c.clone().trimmed();
    let i = i.retarget(pc, &c_trim);
    let pr = pr.retarget(&c_trim, &sl);
    let ses = ShortExactSeq::new(i, pr).map_err(|e| Error::Diagnostic(format!("cone sequence: {e}")))?;
    Ok(Cone { cone: c_trim, ses })
}

/// Output of [`projective_epi`].
#[derive(Clone, Debug)]
pub struct ProjectiveEpi {
    pub pieces: Vec<Piece>,
    pub p: Complex,
    pub epi: ChainMap,
    pub l: Complex,
    pub ses: ShortExactSeq,
}

/// Covers `A` by `⊕ disk(Q_i, i)`. The disk at `i + 1` already reaches
/// `B_i A`, so `Q_i` is the projective cover of `A_i / B_i A`, lifted into
/// `A_i`; the disk at `i` maps by `(σ_i, f_i σ_i)` into degrees `(i, i − 1)`.
pub fn projective_epi(a: &Complex) -> Result<ProjectiveEpi> {
    let alg = a.algebra().clone();
    let mut pieces = Vec::new();
    let mut maps = Vec::new();
    for n in a.degrees() {
        let (c, q) = cokernel(&a.diff(n + 1));
        if c.is_zero() {
            continue;
        }
        let cover = projective_cover(&c)?;
        let sigma = lift_cover_through(&cover, &q)?;
        pieces.push(Piece::disk(cover.projective.clone(), n));
        maps.push(sigma);
    }
    let sum = piece_sum(&alg, &pieces)?;
    let epi = map_from_pieces(&sum, &pieces, a, &maps);
    let (l, incl) = kernel_of_chain_map(&epi);
    let ses = ShortExactSeq::new(incl, epi.clone())
        .map_err(|e| Error::Diagnostic(format!("projective epi: {e}")))?;
    Ok(ProjectiveEpi { pieces, p: sum.sum, epi, l, ses })
}

/// Output of [`kernel_stalk_reduce`].
#[derive(Clone, Debug)]
pub struct StalkReduction {
    pub k: Complex,
    pub inclusion: ChainMap,
    pub h0: Module,
    /// `K -> stalk(H_0 K, 0)`, verified to be a quasi-isomorphism.
    pub rho: ChainMap,
}

/// Kernel of a map between disk sums with indices at least 1, reduced to its
/// degree-0 homology. Fails with a diagnostic when homology is not
/// concentrated in degree 0.
pub fn kernel_stalk_reduce(
    source_pieces: &[Piece],
    target_pieces: &[Piece],
    phi: &ChainMap,
) -> Result<StalkReduction> {
    for piece in source_pieces.iter().chain(target_pieces) {
        if piece.kind != PieceKind::Disk || piece.degree < 1 {
            return Err(Error::Precondition(format!(
                "expected disks with index at least 1, found {:?} at {}",
                piece.kind, piece.degree
            )));
        }
    }
    let alg = phi.source.algebra().clone();
    if piece_sum(&alg, source_pieces)?.sum != phi.source || piece_sum(&alg, target_pieces)?.sum != phi.target {
        return Err(Error::Precondition("map endpoints are not the given disk sums".into()));
    }
    phi.validate()?;
    let (k, inclusion) = kernel_of_chain_map(phi);
    let bad: Vec<Degree> = k.degrees().filter(|&n| n != 0 && !homology(&k, n).module.is_zero()).collect();
    if !bad.is_empty() {
        return Err(Error::Diagnostic(format!(
            "kernel homology not concentrated in degree 0: nonzero in degrees {bad:?}"
        )));
    }
    let h = homology(&k, 0);
    let target = stalk(&h.module, 0);
    // K_{-1} = 0 here, so K_0 = Z_0 and the projection is defined on K_0.
    let proj_on_k0 = ModuleMap::from_parts_unchecked(
        k.term(0),
        h.module.clone(),
        h.projection
            .components()
            .iter()
            .zip(h.cycle_inclusion.components())
            .map(|(q, i)| q * &i.inverse().expect("K_0 = Z_0"))
            .collect(),
    );
    let rho = ChainMap::from_fn(&k, &target, |n| {
        if n == 0 {
            proj_on_k0.clone()
        } else {
            ModuleMap::zero(&k.term(n), &target.term(n))
        }
    });
    rho.validate().map_err(|e| Error::Diagnostic(format!("stalk reduction: {e}")))?;
    if !is_quasi_iso(&rho) {
        return Err(Error::Diagnostic("stalk reduction is not a quasi-isomorphism".into()));
    }
    Ok(StalkReduction { k, inclusion, h0: h.module, rho })
}

/// A basis of the space of chain maps `source -> target`.
pub fn chain_map_space(source: &Complex, target: &Complex) -> Result<Vec<ChainMap>> {
    let alg = source.algebra();
    if !same_algebra(alg, target.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let p = alg.modulus();
    let degrees: Vec<Degree> = source.degrees().collect();
    let homs: Vec<Vec<ModuleMap>> = degrees
        .iter()
        .map(|&n| hom_space(&source.term(n), &target.term(n)))
        .collect::<Result<_>>()?;
    // Constraint for degree n: target.f_n φ_n − φ_{n−1} source.f_n, flattened.
    let flatten = |m: &ModuleMap| -> Vec<u32> {
        let mut out = Vec::new();
        for c in m.components() {
            out.extend_from_slice(c.data());
        }
        out
    };
    let constraint_len: Vec<usize> = degrees
        .iter()
        .map(|&n| {
            let s = source.term(n);
            let t = target.term(n - 1);
            (0..alg.num_vertices()).map(|v| s.dim_at(v) * t.dim_at(v)).sum()
        })
        .collect();
    let rows: usize = constraint_len.iter().sum();
    let mut offsets = vec![0usize];
    for l in &constraint_len {
        offsets.push(offsets.last().unwrap() + l);
    }
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut labels = Vec::new();
    for (k, &n) in degrees.iter().enumerate() {
        for (j, h) in homs[k].iter().enumerate() {
            let mut col = vec![0u32; rows];
            let a = flatten(&target.diff(n).compose(h));
            col[offsets[k]..offsets[k] + a.len()].copy_from_slice(&a);
            if k + 1 < degrees.len() {
                let b = flatten(&h.compose(&source.diff(n + 1)));
                for (x, y) in col[offsets[k + 1]..offsets[k + 1] + b.len()].iter_mut().zip(&b) {
                    *x = p.sub(*x, *y);
                }
            }
            columns.push(col);
            labels.push((k, j));
        }
    }
    let mut data = vec![0u32; rows * columns.len()];
    for (c, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            data[r * columns.len() + c] = x;
        }
    }
    let sys = Matrix::from_vec(p, rows, columns.len(), data)?;
    let kb = sys.kernel_basis();
    let mut out = Vec::with_capacity(kb.cols());
    for j in 0..kb.cols() {
        let mut comps: Vec<ModuleMap> =
            degrees.iter().map(|&n| ModuleMap::zero(&source.term(n), &target.term(n))).collect();
        for (r, &(k, h)) in labels.iter().enumerate() {
            let c = kb.get(r, j);
            if c != 0 {
                comps[k] = comps[k].add(&homs[k][h].scale(c));
            }
        }
        out.push(ChainMap { source: source.clone(), target: target.clone(), comps });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::module::{indecomposable_projective, regular_module};

    fn f2_space(n: usize) -> Module {
        Module::with_zero_action(&lambda0(), vec![n])
    }

    /// `0 -> P(2) -> P(1) -> 0` over A_2 in degrees 1, 0.
    fn radical_inclusion(l2: &Arc<Algebra>) -> Complex {
        let p1 = indecomposable_projective(l2, 0).unwrap();
        let p2 = indecomposable_projective(l2, 1).unwrap();
        let f = hom_space(&p2, &p1).unwrap().remove(0);
        Complex::new(l2, 0, vec![p1, p2], vec![f]).unwrap()
    }

    #[test]
    fn stalks_and_disks() {
        let l2 = lambda2();
        assert!(stalk(&Module::zero(&l2), 5).is_zero());
        assert!(disk(&Module::zero(&l2), 3).is_zero());
        let s1 = Module::simple(&l2, 0).unwrap();
        assert_eq!(stalk(&s1, 2).support(), Some((2, 2)));
        let st = stalk(&s1, 0);
        assert_eq!(homology(&st, 0).module, s1);
        assert!(homology(&st, 1).module.is_zero());
        let p = regular_module(&l2).unwrap();
        let d = disk(&p, 3);
        assert_eq!(d.support(), Some((2, 3)));
        assert_eq!(evaluate(&d, 3), p);
        assert_eq!(evaluate(&d, 2), p);
        assert!(evaluate(&d, 1).is_zero());
        assert!(d.is_exact());
        assert_eq!(evaluate(&st, 1), Module::zero(&l2));
    }

    #[test]
    fn homology_of_radical_inclusion() {
        let l2 = lambda2();
        let c = radical_inclusion(&l2);
        assert!(homology(&c, 1).module.is_zero());
        assert_eq!(homology(&c, 0).module.dims(), &[1, 0]);
        let s1 = Module::simple(&l2, 0).unwrap();
        let st = stalk(&s1, 0);
        let q = cokernel(&c.diff(1)).1;
        let phi = ChainMap::new(c.clone(), st.clone(), vec![q.retarget(&c.term(0), &s1), ModuleMap::zero(&c.term(1), &Module::zero(&l2))]).unwrap();
        assert!(is_quasi_iso(&phi));
        assert!(is_quasi_iso(&ChainMap::identity(&c)));
        assert!(!is_quasi_iso(&ChainMap::zero(&st, &st)));
    }

    #[test]
    fn d_squared_must_vanish() {
        let l0 = lambda0();
        let m = f2_space(1);
        let id = ModuleMap::identity(&m);
        let bad = Complex::new(&l0, 0, vec![m.clone(), m.clone(), m.clone()], vec![id.clone(), id]);
        assert!(matches!(bad, Err(Error::Invalid { .. })));
    }

    #[test]
    fn kernels_of_disk_maps() {
        let l0 = lambda0();
        let p = l0.modulus();
        let a = disk(&f2_space(2), 1);
        let b = disk(&f2_space(1), 1);
        let row = ModuleMap::new(f2_space(2), f2_space(1), vec![Matrix::from_rows(p, &[&[1, 1]])]).unwrap();
        let phi = ChainMap::new(a.clone(), b.clone(), vec![row.clone(), row]).unwrap();
        let (k, incl) = kernel_of_chain_map(&phi);
        assert_eq!(k, disk(&f2_space(1), 1));
        assert!(phi.compose(&incl).is_zero());
        let red = kernel_stalk_reduce(
            &[Piece::disk(f2_space(2), 1)],
            &[Piece::disk(f2_space(1), 1)],
            &phi,
        )
        .unwrap();
        assert!(red.h0.is_zero());

        let s = disk(&f2_space(1), 1);
        let t = disk(&f2_space(1), 2);
        let one = ModuleMap::identity(&f2_space(1));
        let phi = ChainMap::new(s.clone(), t.clone(), vec![ModuleMap::zero(&f2_space(1), &Module::zero(&l0)), one]).unwrap();
        let (k, _) = kernel_of_chain_map(&phi);
        assert_eq!(k, stalk(&f2_space(1), 0));
        let red = kernel_stalk_reduce(&[Piece::disk(f2_space(1), 1)], &[Piece::disk(f2_space(1), 2)], &phi).unwrap();
        assert_eq!(red.h0, f2_space(1));
        assert!(red.rho.components().iter().all(|c| c.is_iso()));
    }

    #[test]
    fn disk_kernel_concentration_fails_beyond_index_one() {
        // disk(F,2) -> disk(F,3) that is the identity in degree 2: the kernel
        // is F in degree 1, so its homology lives outside degree 0.
        let l0 = lambda0();
        let f = f2_space(1);
        let s = disk(&f, 2);
        let t = disk(&f, 3);
        let phi = ChainMap::new(s.clone(), t.clone(), vec![ModuleMap::zero(&f, &Module::zero(&l0)), ModuleMap::identity(&f)]).unwrap();
        let (k, _) = kernel_of_chain_map(&phi);
        assert_eq!(k, stalk(&f, 1));
        let r = kernel_stalk_reduce(&[Piece::disk(f.clone(), 2)], &[Piece::disk(f, 3)], &phi);
        assert!(matches!(r, Err(Error::Diagnostic(_))));
    }

    #[test]
    fn kernel_stalk_reduce_checks_shape() {
        let l0 = lambda0();
        let f = f2_space(1);
        let s = disk(&f, 0);
        let phi = ChainMap::identity(&s);
        assert!(matches!(
            kernel_stalk_reduce(&[Piece::disk(f.clone(), 0)], &[Piece::disk(f, 0)], &phi),
            Err(Error::Precondition(_))
        ));
        let _ = l0;
    }

    #[test]
    fn identity_kernel_is_zero() {
        let l0 = lambda0();
        let d = disk(&f2_space(2), 1);
        let (k, _) = kernel_of_chain_map(&ChainMap::identity(&d));
        assert!(k.is_zero());
        let red = kernel_stalk_reduce(&[Piece::disk(f2_space(2), 1)], &[Piece::disk(f2_space(2), 1)], &ChainMap::identity(&d)).unwrap();
        assert!(red.h0.is_zero());
        let _ = l0;
    }

    #[test]
    fn projective_epi_examples() {
        let l2 = lambda2();
        let s1 = Module::simple(&l2, 0).unwrap();
        let pe = projective_epi(&stalk(&s1, 0)).unwrap();
        let p1 = indecomposable_projective(&l2, 0).unwrap();
        let p2 = indecomposable_projective(&l2, 1).unwrap();
        assert_eq!(pe.p, disk(&p1, 0));
        assert_eq!(pe.l.support(), Some((-1, 0)));
        assert_eq!(pe.l.term(0), p2);
        assert_eq!(pe.l.term(-1), p1);

        let l1 = lambda1();
        let s = Module::simple(&l1, 0).unwrap();
        let pe = projective_epi(&stalk(&s, 0)).unwrap();
        assert_eq!(pe.p, disk(&regular_module(&l1).unwrap(), 0));
        assert_eq!(pe.l.term(0), s);
        assert_eq!(pe.l.term(-1).total_dim(), 2);

        let q = regular_module(&l2).unwrap();
        let pe = projective_epi(&disk(&q, 2)).unwrap();
        assert!(pe.l.is_zero());
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let l2 = lambda2();
        let c = radical_inclusion(&l2);
        let cn = cone(&ChainMap::identity(&c)).unwrap();
        assert!(cn.cone.is_exact());
        cn.ses.validate().unwrap();
    }

    #[test]
    fn shift_moves_homology() {
        let l2 = lambda2();
        let c = radical_inclusion(&l2);
        let s = c.shift(3);
        s.validate().unwrap();
        assert_eq!(homology(&s, 3).module, homology(&c, 0).module);
        assert_eq!(c.shift(1).shift(-1), c);
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let l2 = lambda2();
        let c = radical_inclusion(&l2);
        assert_eq!(c.euler_characteristic(), vec![1, 0]);
    }

    #[test]
    fn chain_maps_between_disks() {
        let l0 = lambda0();
        let f = f2_space(1);
        // Hom(disk(F,1), disk(F,2)) is one-dimensional: φ_1 free, φ_0 = 0.
        let basis = chain_map_space(&disk(&f, 1), &disk(&f, 2)).unwrap();
        assert_eq!(basis.len(), 1);
        basis[0].validate().unwrap();
        let basis = chain_map_space(&disk(&f, 1), &disk(&f, 1)).unwrap();
        assert_eq!(basis.len(), 1);
        let _ = l0;
    }
}
