//! Finite-dimensional modules as quiver representations, and their maps.
//!
//! A module assigns a vector space to each vertex and a matrix to each
//! arrow `a: v -> w`, mapping coordinates at `v` to coordinates at `w`
//! (column-vector convention). These are right modules over the path
//! algebra under the left-to-right path convention.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::error::{invalid, Error, Result};
use crate::linalg::{Matrix, Modulus};

#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)?;
        for (a, m) in self.action.iter().enumerate() {
            if m.rows() > 0 && m.cols() > 0 {
                write!(f, " {}={:?}", self.alg.arrow(a).name, m)?;
            }
        }
        Ok(())
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a.presentation() == b.presentation()
}

impl Module {
    /// Checked constructor: shapes must match and every relation must vanish.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = Module { alg: alg.clone(), dims, action };
        m.validate()?;
        Ok(m)
    }

    /// Builds without checking; call [`Module::validate`] before trusting it.
    pub fn from_parts_unchecked(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        Module { alg: alg.clone(), dims, action }
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        if self.dims.len() != alg.num_vertices() {
            return Err(invalid("module", "dimension vector length differs from vertex count"));
        }
        if self.action.len() != alg.num_arrows() {
            return Err(invalid("module", "one matrix per arrow required"));
        }
        for (ai, a) in alg.arrows().iter().enumerate() {
            let m = &self.action[ai];
            if m.modulus() != alg.modulus() {
                return Err(invalid("module", "matrix modulus differs from the algebra's"));
            }
            if m.shape() != (self.dims[a.target], self.dims[a.source]) {
                return Err(invalid(
                    "module",
                    format!("arrow {} has shape {:?}", a.name, m.shape()),
                ));
            }
        }
        for (ri, rel) in alg.presentation().relations.iter().enumerate() {
            let s = alg.arrow(rel[0].path[0]).source;
            let t = alg.arrow(*rel[0].path.last().unwrap()).target;
            let mut acc = Matrix::zeros(alg.modulus(), self.dims[t], self.dims[s]);
            for term in rel {
                acc = &acc + &self.path_matrix(&term.path).scale(term.coefficient);
            }
            if !acc.is_zero() {
                return Err(invalid("module", format!("relation {ri} does not vanish")));
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let p = alg.modulus();
        Module {
            alg: alg.clone(),
            dims: vec![0; alg.num_vertices()],
            action: (0..alg.num_arrows()).map(|_| Matrix::zeros(p, 0, 0)).collect(),
        }
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Result<Self> {
        alg.check_vertex(v)?;
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        Ok(Module::with_zero_action(alg, dims))
    }

    /// All arrows act by zero.
    pub fn with_zero_action(alg: &Arc<Algebra>, dims: Vec<usize>) -> Self {
        let p = alg.modulus();
        let action = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(p, dims[a.target], dims[a.source]))
            .collect();
        Module { alg: alg.clone(), dims, action }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn modulus(&self) -> Modulus {
        self.alg.modulus()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of a path given by arrow indices (left to right), from its
    /// source space to its target space. The empty path is not allowed here;
    /// use [`Module::basis_path_matrix`] for trivial paths.
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let mut acc = self.action[path[0]].clone();
        for &a in &path[1..] {
            acc = &self.action[a] * &acc;
        }
        acc
    }

    /// Matrix of an algebra basis path, including trivial ones.
    pub fn basis_path_matrix(&self, basis_index: usize) -> Matrix {
        let p = &self.alg.basis()[basis_index];
        if p.is_trivial() {
            Matrix::identity(self.modulus(), self.dims[p.source])
        } else {
            self.path_matrix(&p.arrows)
        }
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Submodule spanned vertex-wise by the columns of `bases` (each with full
    /// column rank), with its inclusion. Fails if the span is not closed.
    pub fn submodule(&self, bases: Vec<Matrix>) -> Result<(Module, ModuleMap)> {
        let alg = &self.alg;
        let mut action = Vec::with_capacity(alg.num_arrows());
        for (ai, a) in alg.arrows().iter().enumerate() {
            let image = &self.action[ai] * &bases[a.source];
            let x = bases[a.target]
                .solve(&image)?
                .ok_or_else(|| invalid("submodule", "span is not closed under arrows"))?;
            action.push(x);
        }
        let dims = bases.iter().map(|b| b.cols()).collect();
        let sub = Module { alg: alg.clone(), dims, action };
        let incl = ModuleMap { source: sub.clone(), target: self.clone(), comps: bases };
        Ok((sub, incl))
    }

    /// Quotient by the submodule spanned by the columns of `spans` (any
    /// spanning set per vertex), with the projection.
    pub fn quotient(&self, spans: &[Matrix]) -> Result<(Module, ModuleMap)> {
        let alg = &self.alg;
        let p = self.modulus();
        let q: Vec<Matrix> = spans.iter().map(|u| u.left_kernel_basis()).collect();
        let sections: Vec<Matrix> = q
            .iter()
            .map(|qv| {
                let id = Matrix::identity(p, qv.rows());
                qv.solve(&id).map(|s| s.expect("left kernel basis has full row rank"))
            })
            .collect::<core::result::Result<_, _>>()?;
        let mut action = Vec::with_capacity(alg.num_arrows());
        for (ai, a) in alg.arrows().iter().enumerate() {
            let x = &(&q[a.target] * &self.action[ai]) * &sections[a.source];
            action.push(x);
        }
        let dims = q.iter().map(|m| m.rows()).collect();
        let quo = Module { alg: alg.clone(), dims, action };
        let proj = ModuleMap::new(self.clone(), quo.clone(), q)
            .map_err(|_| invalid("quotient", "span is not a submodule"))?;
        Ok((quo, proj))
    }

    /// Vertex-wise spanning columns of the radical (sum of arrow images).
    pub fn radical_spans(&self) -> Vec<Matrix> {
        let alg = &self.alg;
        let p = self.modulus();
        (0..alg.num_vertices())
            .map(|w| {
                let blocks: Vec<Matrix> = alg.arrows_into(w).map(|a| self.action[a].clone()).collect();
                Matrix::hcat(p, self.dims[w], &blocks)
            })
            .collect()
    }
}

/// A morphism of modules given by one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap{:?}->{:?} {:?}", self.source.dims, self.target.dims, self.comps)
    }
}

impl ModuleMap {
    /// Checked constructor: shapes and intertwining.
    pub fn new(source: Module, target: Module, comps: Vec<Matrix>) -> Result<Self> {
        let f = ModuleMap { source, target, comps };
        f.validate()?;
        Ok(f)
    }

    pub fn from_parts_unchecked(source: Module, target: Module, comps: Vec<Matrix>) -> Self {
        ModuleMap { source, target, comps }
    }

    pub fn validate(&self) -> Result<()> {
        self.source.check_same_algebra(&self.target)?;
        let alg = self.source.algebra();
        if self.comps.len() != alg.num_vertices() {
            return Err(invalid("module map", "one component per vertex required"));
        }
        for v in 0..alg.num_vertices() {
            let c = &self.comps[v];
            if c.modulus() != alg.modulus()
                || c.shape() != (self.target.dims[v], self.source.dims[v])
            {
                return Err(invalid("module map", format!("component {v} has wrong shape")));
            }
        }
        for (ai, a) in alg.arrows().iter().enumerate() {
            let l = &self.target.action[ai] * &self.comps[a.source];
            let r = &self.comps[a.target] * &self.source.action[ai];
            if l != r {
                return Err(invalid(
                    "module map",
                    format!("does not intertwine arrow {}", a.name),
                ));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> Self {
        let p = m.modulus();
        let comps = m.dims.iter().map(|&d| Matrix::identity(p, d)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let p = source.modulus();
        let comps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(p, t, s))
            .collect();
        ModuleMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        assert_eq!(inner.target.dims, self.source.dims, "composition of incompatible maps");
        let comps = self.comps.iter().zip(&inner.comps).map(|(a, b)| a * b).collect();
        ModuleMap { source: inner.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Replaces source and target by equal-shaped modules (used when two
    /// constructions produce the same module independently).
    pub fn retarget(&self, source: &Module, target: &Module) -> ModuleMap {
        ModuleMap { source: source.clone(), target: target.clone(), comps: self.comps.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// `self^n` for an endomorphism.
    pub fn power(&self, n: usize) -> ModuleMap {
        let mut acc = ModuleMap::identity(&self.source);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases = f.comps.iter().map(|c| c.kernel_basis()).collect();
    f.source.submodule(bases).expect("kernel of a module map is a submodule")
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    f.target.quotient(&f.comps).expect("image of a module map is a submodule")
}

/// Epi-mono factorization `f = mono ∘ epi` through the image.
#[derive(Clone, Debug)]
pub struct Image {
    pub image: Module,
    pub epi: ModuleMap,
    pub mono: ModuleMap,
}

pub fn image(f: &ModuleMap) -> Image {
    let bases: Vec<Matrix> = f.comps.iter().map(|c| c.column_space_basis()).collect();
    let (img, mono) = f.target.submodule(bases).expect("image of a module map is a submodule");
    let epi_comps = f
        .comps
        .iter()
        .zip(mono.comps.iter())
        .map(|(c, b)| b.solve(c).unwrap().expect("f factors through its image"))
        .collect();
    let epi = ModuleMap { source: f.source.clone(), target: img.clone(), comps: epi_comps };
    Image { image: img, epi, mono }
}

/// Coefficient matrix of the intertwining system for `Hom(a, b)`, with the
/// arrow equations assembled in the given order. Unknowns are the entries of
/// the vertex components, vertex by vertex, each row-major.
pub fn hom_system_matrix(a: &Module, b: &Module, arrow_order: &[usize]) -> Matrix {
    let alg = a.algebra();
    let p = alg.modulus();
    let nv = alg.num_vertices();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + b.dims[v] * a.dims[v];
    }
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &ai in arrow_order {
        let arr = alg.arrow(ai);
        let (v, w) = (arr.source, arr.target);
        let (ba, aa) = (&b.action[ai], &a.action[ai]);
        // (B(a) X_v - X_w A(a))[r][c] = 0
        for r in 0..b.dims[w] {
            for c in 0..a.dims[v] {
                let mut row = vec![0u32; unknowns];
                for k in 0..b.dims[v] {
                    let coef = ba.get(r, k);
                    let idx = offsets[v] + k * a.dims[v] + c;
                    row[idx] = p.add(row[idx], coef);
                }
                for k in 0..a.dims[w] {
                    let coef = aa.get(k, c);
                    let idx = offsets[w] + r * a.dims[w] + k;
                    row[idx] = p.sub(row[idx], coef);
                }
                rows.push(row);
            }
        }
    }
    let mut flat = Vec::with_capacity(rows.len() * unknowns);
    for r in &rows {
        flat.extend_from_slice(r);
    }
    Matrix::from_vec(p, rows.len(), unknowns, flat).expect("entries reduced")
}

/// A deterministic basis of `Hom(a, b)`.
pub fn hom_space(a: &Module, b: &Module) -> Result<Vec<ModuleMap>> {
    a.check_same_algebra(b)?;
    let alg = a.algebra();
    let order: Vec<usize> = (0..alg.num_arrows()).collect();
    let sys = hom_system_matrix(a, b, &order);
    let kb = sys.kernel_basis();
    let nv = alg.num_vertices();
    let p = alg.modulus();
    let mut out = Vec::with_capacity(kb.cols());
    for j in 0..kb.cols() {
        let mut idx = 0;
        let mut comps = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut m = Matrix::zeros(p, b.dims[v], a.dims[v]);
            for r in 0..b.dims[v] {
                for c in 0..a.dims[v] {
                    m.set(r, c, kb.get(idx, j));
                    idx += 1;
                }
            }
            comps.push(m);
        }
        out.push(ModuleMap { source: a.clone(), target: b.clone(), comps });
    }
    Ok(out)
}

/// Biproduct data for a finite direct sum.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(alg: &Arc<Algebra>, modules: &[Module]) -> Result<DirectSum> {
    for m in modules {
        if !same_algebra(alg, m.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = alg.modulus();
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| modules.iter().map(|m| m.dims[v]).sum()).collect();
    let action = (0..alg.num_arrows())
        .map(|ai| {
            let blocks: Vec<Matrix> = modules.iter().map(|m| m.action[ai].clone()).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    let sum = Module { alg: alg.clone(), dims: dims.clone(), action };
    let mut injections = Vec::with_capacity(modules.len());
    let mut projections = Vec::with_capacity(modules.len());
    let mut offset = vec![0usize; nv];
    for m in modules {
        let mut inj = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = Matrix::zeros(p, dims[v], m.dims[v]);
            i.set_block(offset[v], 0, &Matrix::identity(p, m.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            offset[v] += m.dims[v];
        }
        injections.push(ModuleMap { source: m.clone(), target: sum.clone(), comps: inj });
        projections.push(ModuleMap { source: sum.clone(), target: m.clone(), comps: proj });
    }
    Ok(DirectSum { sum, injections, projections })
}

/// Map out of `⊕ P(v_k)` determined by images of the generators `e_{v_k}`.
/// Each image is a column vector in `target` at vertex `v_k`.
pub fn map_from_projective(
    alg: &Arc<Algebra>,
    vertices: &[usize],
    target: &Module,
    images: &[Matrix],
) -> Result<ModuleMap> {
    let source = free_module(alg, vertices)?;
    let p = alg.modulus();
    let nv = alg.num_vertices();
    let mut comps: Vec<Matrix> = (0..nv).map(|w| Matrix::zeros(p, target.dims[w], 0)).collect();
    for (&v, x) in vertices.iter().zip(images) {
        for (w, comp) in comps.iter_mut().enumerate() {
            let paths = alg.basis_paths_between(v, w);
            let cols: Vec<Matrix> = paths.iter().map(|&q| &target.basis_path_matrix(q) * x).collect();
            let block = Matrix::hcat(p, target.dims[w], &cols);
            *comp = comp.hstack(&block);
        }
    }
    ModuleMap::new(source, target.clone(), comps)
}

/// The indecomposable projective `P(v) = e_v Λ`; its space at `w` has the
/// basis paths from `v` to `w` as basis.
pub fn indecomposable_projective(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    alg.check_vertex(v)?;
    let p = alg.modulus();
    let nv = alg.num_vertices();
    let by_vertex: Vec<Vec<usize>> = (0..nv).map(|w| alg.basis_paths_between(v, w)).collect();
    let dims: Vec<usize> = by_vertex.iter().map(|b| b.len()).collect();
    let mut action = Vec::with_capacity(alg.num_arrows());
    for (ai, arr) in alg.arrows().iter().enumerate() {
        let (src, tgt) = (arr.source, arr.target);
        let mut m = Matrix::zeros(p, dims[tgt], dims[src]);
        let abi = alg.arrow_basis_index(ai);
        for (c, &q) in by_vertex[src].iter().enumerate() {
            for &(k, coef) in alg.multiply(q, abi) {
                let r = by_vertex[tgt].iter().position(|&x| x == k).expect("path lands at target");
                m.set(r, c, coef);
            }
        }
        action.push(m);
    }
    Module::new(alg, dims, action)
}

/// `⊕_k P(v_k)` in the listed order.
pub fn free_module(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Module> {
    let summands = vertices
        .iter()
        .map(|&v| indecomposable_projective(alg, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(direct_sum(alg, &summands)?.sum)
}

/// The regular module `Λ = ⊕_v P(v)`.
pub fn regular_module(alg: &Arc<Algebra>) -> Result<Module> {
    let vs: Vec<usize> = (0..alg.num_vertices()).collect();
    free_module(alg, &vs)
}

/// A projective cover together with its kernel.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Module,
    /// Vertex of each indecomposable summand of `projective`, in order.
    pub vertices: Vec<usize>,
    /// Image in the covered module of each summand's generator.
    pub generator_images: Vec<Matrix>,
    pub epi: ModuleMap,
    pub kernel: Module,
    pub inclusion: ModuleMap,
}

/// Columns of the identity that, together with `spans`, canonically extend
/// a basis of the column span of `spans` to the whole space.
fn complement_vectors(spans: &Matrix) -> Vec<usize> {
    let n = spans.rows();
    let aug = spans.hstack(&Matrix::identity(spans.modulus(), n));
    aug.rref().pivots.into_iter().filter(|&c| c >= spans.cols()).map(|c| c - spans.cols()).collect()
}

/// Minimal projective cover. Top basis vectors are the standard basis vectors
/// selected by rref against the radical, so the result is canonical.
pub fn projective_cover(a: &Module) -> Result<ProjectiveCover> {
    let alg = a.algebra();
    let p = alg.modulus();
    let rad = a.radical_spans();
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for j in complement_vectors(r) {
            let mut x = Matrix::zeros(p, a.dims[v], 1);
            x.set(j, 0, 1);
            vertices.push(v);
            images.push(x);
        }
    }
    let epi = map_from_projective(alg, &vertices, a, &images)?;
    if !epi.is_surjective() {
        return Err(Error::Diagnostic("projective cover is not surjective".into()));
    }
    let (kernel, inclusion) = self::kernel(&epi);
    let projective = epi.source().clone();
    // Minimality: the kernel sits inside the radical of the cover.
    let rad_p = projective.radical_spans();
    for (v, rad) in rad_p.iter().enumerate() {
        if rad.hstack(inclusion.component(v)).rank() != rad.rank() {
            return Err(Error::Diagnostic("projective cover kernel escapes the radical".into()));
        }
    }
    Ok(ProjectiveCover { projective, vertices, generator_images: images, epi, kernel, inclusion })
}

/// Lifts the generators of a cover `P -> B` through a surjection `s: A -> B`,
/// returning the map `P -> A` with `s ∘ lift = cover`.
pub fn lift_cover_through(cover: &ProjectiveCover, s: &ModuleMap) -> Result<ModuleMap> {
    let alg = s.source().algebra();
    let mut lifted = Vec::with_capacity(cover.vertices.len());
    for (&v, y) in cover.vertices.iter().zip(&cover.generator_images) {
        let x = s
            .component(v)
            .solve(y)?
            .ok_or_else(|| Error::Precondition("lift through a non-surjective map".into()))?;
        lifted.push(x);
    }
    let lift = map_from_projective(alg, &cover.vertices, s.source(), &lifted)?;
    Ok(lift.retarget(&cover.projective, s.source()))
}
