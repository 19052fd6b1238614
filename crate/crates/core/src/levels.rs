//! Level certificates for membership in `⟨𝓜⟩_n`, `𝓜 = S^0(M) ⊕ disk_0(M)`,
//! their builders, an independent verifier, and the derived-dimension bounds.
//!
//! A leaf presents its object by a quasi-isomorphism from a finite sum of
//! stalks and disks on modules in `add M`. An internal node carries a
//! degreewise exact sequence `0 -> X -> Y -> Z -> 0` and a quasi-isomorphism
//! `Y -> object`; the triangle `X -> Y -> Z -> ΣX` puts the object in
//! `⟨𝓜⟩_a ∗ ⟨𝓜⟩_b ⊆ ⟨𝓜⟩_{a+b}` when the children certify `X` at level `a`
//! and `Z` at level `b`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{
    boundaries, cone, cycles, homology, is_quasi_iso, kernel_of_chain_map, map_from_pieces,
    piece_sum, ChainMap, Complex, Degree, Piece, ShortExactSeq,
};
use crate::error::{Error, Result};
use crate::homological::{in_add, xdim, Generator, XDim};
use crate::linalg::Matrix;
use crate::module::{hom_space, image, lift_cover_through, projective_cover, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub object: Complex,
    pub pieces: Vec<Piece>,
    /// From the sum of the pieces to the object.
    pub presentation: ChainMap,
    /// Builder's add-membership verdict per piece; the verifier recomputes.
    pub in_add: Vec<bool>,
    pub claimed_level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Internal {
    pub object: Complex,
    pub ses: ShortExactSeq,
    /// From the middle term of `ses` to the object.
    pub to_object: ChainMap,
    pub left: alloc::boxed::Box<CertNode>,
    pub right: alloc::boxed::Box<CertNode>,
    pub claimed_level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertNode {
    Leaf(Leaf),
    Internal(Internal),
}

impl CertNode {
    pub fn object(&self) -> &Complex {
        match self {
            CertNode::Leaf(l) => &l.object,
            CertNode::Internal(n) => &n.object,
        }
    }

    pub fn claimed_level(&self) -> usize {
        match self {
            CertNode::Leaf(l) => l.claimed_level,
            CertNode::Internal(n) => n.claimed_level,
        }
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        match self {
            CertNode::Leaf(_) => 1,
            CertNode::Internal(n) => 1 + n.left.size() + n.right.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCertificate {
    pub root: CertNode,
}

impl LevelCertificate {
    pub fn claimed_level(&self) -> usize {
        self.root.claimed_level()
    }

    pub fn object(&self) -> &Complex {
        self.root.object()
    }
}

/// Largest relative dimension among all cycle and boundary modules.
pub fn max_cycle_boundary_xdim(a: &Complex, g: &Generator, cap: usize) -> Result<XDim> {
    let mut best = XDim::Finite(0);
    for n in a.degrees() {
        for m in [cycles(a, n).0, boundaries(a, n).0] {
            let v = xdim(&m, g, cap)?.value;
            if v > best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// Relative dimensions of `Z_n L` and `B_n L` for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: Degree,
    pub cycles: XDim,
    pub boundaries: XDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkReport {
    pub bound: usize,
    pub degrees: Vec<DegreeReport>,
    /// Degrees where the drop to `bound − 1` failed.
    pub violations: Vec<Degree>,
}

impl KkReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct KkStep {
    pub pieces: Vec<Piece>,
    pub p: Complex,
    pub epi: ChainMap,
    pub l: Complex,
    pub ses: ShortExactSeq,
    pub report: KkReport,
}

/// The cover `P -> A` used by the reduction step. For each degree `n` it has
/// `stalk(U_n, n)` with `U_n` a projective cover of `H_n A` lifted into
/// `Z_n A`, and `disk(V_{n−1}, n)` with `V_{n−1}` a projective cover of
/// `B_{n−1} A` lifted through `f_n`. Then `Z_n P -> Z_n A` and
/// `B_n P -> B_n A` are projective covers, so the kernel `L` has
/// `Z_n L ≅ Ω Z_n A ⊕ proj` and `B_n L ≅ Ω B_n A`.
fn kk_cover(a: &Complex) -> Result<(Vec<Piece>, Complex, ChainMap)> {
    let alg = a.algebra().clone();
    let mut pieces = Vec::new();
    let mut maps = Vec::new();
    for n in a.degrees() {
        let h = homology(a, n);
        if !h.module.is_zero() {
            let cover = projective_cover(&h.module)?;
            let lift = lift_cover_through(&cover, &h.projection)?;
            pieces.push(Piece::stalk(cover.projective.clone(), n));
            maps.push(h.cycle_inclusion.compose(&lift));
        }
        let img = image(&a.diff(n));
        if !img.image.is_zero() {
            let cover = projective_cover(&img.image)?;
            let sigma = lift_cover_through(&cover, &img.epi)?;
            pieces.push(Piece::disk(cover.projective.clone(), n));
            maps.push(sigma);
        }
    }
    let sum = piece_sum(&alg, &pieces)?;
    let epi = map_from_pieces(&sum, &pieces, a, &maps);
    Ok((pieces, sum.sum, epi))
}

fn kk_step_inner(a: &Complex, g: &Generator, d: usize, cap: usize) -> Result<KkStep> {
    let (pieces, p, epi) = kk_cover(a)?;
    let (l, incl) = kernel_of_chain_map(&epi);
    let ses = ShortExactSeq::new(incl, epi.clone())
        .map_err(|e| Error::Diagnostic(format!("reduction step cover: {e}")))?;
    let mut degrees = Vec::new();
    let mut violations = Vec::new();
    let target = d.saturating_sub(1);
    for n in l.degrees() {
        let zc = xdim(&cycles(&l, n).0, g, cap)?.value;
        let zb = xdim(&boundaries(&l, n).0, g, cap)?.value;
        let ok = |x: XDim| x.finite().is_some_and(|t| t <= target);
        if !ok(zc) || !ok(zb) {
            violations.push(n);
        }
        degrees.push(DegreeReport { degree: n, cycles: zc, boundaries: zb });
    }
    Ok(KkStep { pieces, p, epi, l, ses, report: KkReport { bound: d, degrees, violations } })
}

/// One reduction step: a cover `0 -> L -> P -> A -> 0` by a sum of stalks
/// and disks on projectives, with cycles and boundaries of `L` one step
/// lower in relative dimension. Violations of the drop are reported, not
/// raised; they refute the semi-resolving assumption on `G`.
pub fn kk_step(a: &Complex, g: &Generator, d: usize, cap: usize) -> Result<KkStep> {
    if d == 0 {
        return Err(Error::Precondition("reduction step requires d > 0".into()));
    }
    match max_cycle_boundary_xdim(a, g, cap)? {
        XDim::Finite(t) if t <= d => {}
        other => {
            return Err(Error::Precondition(format!(
                "cycles and boundaries must have relative dimension at most {d}, found {other:?}"
            )))
        }
    }
    kk_step_inner(a, g, d, cap)
}

fn add_verdicts(pieces: &[Piece], g: &Generator) -> Result<Vec<bool>> {
    pieces.iter().map(|p| Ok(in_add(&p.module, g)?.is_yes())).collect()
}

/// Leaf whose object is the piece sum itself.
fn identity_leaf(pieces: Vec<Piece>, g: &Generator) -> Result<Leaf> {
    let alg = g.algebra().clone();
    let sum = piece_sum(&alg, &pieces)?.sum;
    let in_add = add_verdicts(&pieces, g)?;
    if in_add.iter().any(|&b| !b) {
        return Err(Error::Diagnostic("leaf piece outside add M".into()));
    }
    let level = usize::from(!pieces.is_empty());
    Ok(Leaf { presentation: ChainMap::identity(&sum), object: sum, pieces, in_add, claimed_level: level })
}

/// `⊕ stalk(M_n, n)` presenting a complex with zero differentials.
fn stalk_leaf(a: &Complex, g: &Generator) -> Result<Leaf> {
    let pieces: Vec<Piece> =
        a.degrees().filter(|&n| !a.term(n).is_zero()).map(|n| Piece::stalk(a.term(n), n)).collect();
    let mut leaf = identity_leaf(pieces, g)?;
    leaf.presentation = leaf.presentation.retarget(&leaf.object, a);
    leaf.object = a.clone();
    Ok(leaf)
}

/// A module map `s: H -> Z` with `q ∘ s = id`, if one exists.
fn module_section(q: &ModuleMap) -> Result<Option<ModuleMap>> {
    let (z, h) = (q.source(), q.target());
    let basis = hom_space(h, z)?;
    let p = h.modulus();
    let flat = |m: &ModuleMap| -> Vec<u32> {
        let mut out = Vec::new();
        for c in m.components() {
            out.extend_from_slice(c.data());
        }
        out
    };
    let target = flat(&ModuleMap::identity(h));
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| flat(&q.compose(b))).collect();
    let mut data = vec![0u32; target.len() * cols.len()];
    for (c, col) in cols.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            data[r * cols.len() + c] = x;
        }
    }
    let sys = Matrix::from_vec(p, target.len(), cols.len(), data)?;
    let rhs = Matrix::column_vector(p, &target);
    Ok(sys.solve(&rhs)?.map(|x| {
        let mut s = ModuleMap::zero(h, z);
        for (k, b) in basis.iter().enumerate() {
            let c = x.get(k, 0);
            if c != 0 {
                s = s.add(&b.scale(c));
            }
        }
        s
    }))
}

/// A leaf `⊕ stalk(H_n A, n) -> A` when every homology module is in
/// `add M` and splits off its cycles.
fn formal_leaf(a: &Complex, g: &Generator) -> Result<Option<Leaf>> {
    let alg = g.algebra().clone();
    let mut pieces = Vec::new();
    let mut maps = Vec::new();
    for n in a.degrees() {
        let h = homology(a, n);
        if h.module.is_zero() {
            continue;
        }
        if !in_add(&h.module, g)?.is_yes() {
            return Ok(None);
        }
        let Some(s) = module_section(&h.projection)? else {
            return Ok(None);
        };
        pieces.push(Piece::stalk(h.module.clone(), n));
        maps.push(h.cycle_inclusion.compose(&s));
    }
    let sum = piece_sum(&alg, &pieces)?;
    let presentation = map_from_pieces(&sum, &pieces, a, &maps);
    if !is_quasi_iso(&presentation) {
        return Err(Error::Diagnostic("split homology does not present the complex".into()));
    }
    let level = usize::from(!pieces.is_empty());
    let in_add = vec![true; pieces.len()];
    Ok(Some(Leaf { object: a.clone(), pieces, presentation, in_add, claimed_level: level }))
}

/// The node for `A` from a reduction step: `0 -> P -> Cone(L -> P) -> ΣL -> 0`
/// with `Cone -> A` induced by the cover; `right` certifies `ΣL`.
fn step_node(a: &Complex, step: &KkStep, g: &Generator, right: CertNode) -> Result<CertNode> {
    let c = cone(&step.ses.i)?;
    let to_object = ChainMap::from_fn(&c.cone, a, |n| {
        let e = step.epi.component(n);
        let comps = e
            .components()
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let extra = c.cone.term(n).dim_at(v) - m.cols();
                m.hstack(&Matrix::zeros(m.modulus(), m.rows(), extra))
            })
            .collect();
        ModuleMap::from_parts_unchecked(c.cone.term(n), a.term(n), comps)
    });
    let left = CertNode::Leaf(identity_leaf(step.pieces.clone(), g)?);
    if left.object() != c.ses.sub() || right.object() != c.ses.quotient() {
        return Err(Error::Diagnostic("cone sequence does not match its children".into()));
    }
    let claimed_level = left.claimed_level() + right.claimed_level();
    Ok(CertNode::Internal(Internal {
        object: a.clone(),
        ses: c.ses,
        to_object,
        left: alloc::boxed::Box::new(left),
        right: alloc::boxed::Box::new(right),
        claimed_level,
    }))
}

fn han_node(a: &Complex, g: &Generator, d: usize, cap: usize) -> Result<CertNode> {
    let alg = g.algebra().clone();
    if d == 0 {
        if a.diffs().iter().all(|f| f.is_zero()) {
            return Ok(CertNode::Leaf(stalk_leaf(a, g)?));
        }
        // 0 -> (Z_n A, 0) -> A -> (B_{n−1} A, 0) -> 0.
        let mut kp = Vec::new();
        let mut kmaps = Vec::new();
        let mut ip = Vec::new();
        let mut imaps = Vec::new();
        for n in a.degrees() {
            let (z, zi) = cycles(a, n);
            if !z.is_zero() {
                kp.push(Piece::stalk(z, n));
                kmaps.push(zi);
            }
            let img = image(&a.diff(n));
            if !img.image.is_zero() {
                ip.push(Piece::stalk(img.image, n));
                imaps.push(img.epi);
            }
        }
        let k = identity_leaf(kp.clone(), g)?;
        let i = identity_leaf(ip.clone(), g)?;
        let ksum = piece_sum(&alg, &kp)?;
        let incl = map_from_pieces(&ksum, &kp, a, &kmaps);
        let proj = ChainMap::from_fn(a, &i.object, |n| match ip.iter().position(|p| p.degree == n) {
            Some(j) => imaps[j].retarget(&a.term(n), &i.object.term(n)),
            None => ModuleMap::zero(&a.term(n), &i.object.term(n)),
        });
        let ses = ShortExactSeq::new(incl, proj).map_err(|e| Error::Diagnostic(format!("base split: {e}")))?;
        let claimed_level = k.claimed_level + i.claimed_level;
        return Ok(CertNode::Internal(Internal {
            object: a.clone(),
            ses,
            to_object: ChainMap::identity(a),
            left: alloc::boxed::Box::new(CertNode::Leaf(k)),
            right: alloc::boxed::Box::new(CertNode::Leaf(i)),
            claimed_level,
        }));
    }
    let step = kk_step_inner(a, g, d, cap)?;
    if !step.report.holds() {
        return Err(Error::Diagnostic(format!(
            "relative dimension did not drop below {d} in degrees {:?}; generator is not semi-resolving",
            step.report.violations
        )));
    }
    let sl = step.l.shift(1);
    let next = match max_cycle_boundary_xdim(&sl, g, cap)? {
        XDim::Finite(t) => t,
        XDim::ExceedsCap(c) => return Err(Error::ExceedsCap { cap: c }),
    };
    let right = han_node(&sl, g, next, cap)?;
    step_node(a, &step, g, right)
}

/// Certificate of level at most `d + 2`, where `d` bounds the relative
/// dimension of all cycles and boundaries of `A`.
pub fn build_witness_han(a: &Complex, g: &Generator, cap: usize) -> Result<LevelCertificate> {
    let d = match max_cycle_boundary_xdim(a, g, cap)? {
        XDim::Finite(t) => t,
        XDim::ExceedsCap(c) => return Err(Error::ExceedsCap { cap: c }),
    };
    let root = han_node(a, g, d, cap)?;
    if root.claimed_level() > d + 2 {
        return Err(Error::Diagnostic(format!("level {} exceeds {}", root.claimed_level(), d + 2)));
    }
    Ok(LevelCertificate { root })
}

fn main_node(a: &Complex, g: &Generator, d: usize, steps_left: usize, cap: usize) -> Result<CertNode> {
    if let Some(leaf) = formal_leaf(a, g)? {
        return Ok(CertNode::Leaf(leaf));
    }
    if steps_left == 0 {
        return Err(Error::Diagnostic(format!(
            "after {d} reduction steps the homology is still not split in add M"
        )));
    }
    let step = kk_step_inner(a, g, steps_left, cap)?;
    if !step.report.holds() {
        return Err(Error::Diagnostic(format!(
            "relative dimension did not drop in degrees {:?}; generator is not semi-resolving",
            step.report.violations
        )));
    }
    let right = main_node(&step.l.shift(1), g, d, steps_left - 1, cap)?;
    step_node(a, &step, g, right)
}

/// Certificate of level at most `d + 1` for `d ≥ 2`. Reduction steps are
/// applied until the complex is quasi-isomorphic to the sum of its
/// homology stalks with all homology in `add M`; each step adds one level.
pub fn build_witness_main(a: &Complex, g: &Generator, d: usize, cap: usize) -> Result<LevelCertificate> {
    if d < 2 {
        return Err(Error::Precondition("main theorem requires d ≥ 2; use build_witness_han".into()));
    }
    match max_cycle_boundary_xdim(a, g, cap)? {
        XDim::Finite(t) if t <= d => {}
        other => {
            return Err(Error::Precondition(format!(
                "cycles and boundaries must have relative dimension at most {d}, found {other:?}"
            )))
        }
    }
    let root = main_node(a, g, d, d, cap)?;
    if root.claimed_level() > d + 1 {
        return Err(Error::Diagnostic(format!("level {} exceeds {}", root.claimed_level(), d + 1)));
    }
    Ok(LevelCertificate { root })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept { level: usize },
    Reject { path: String, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

/// Checks a certificate from its raw data alone.
pub fn verify_certificate(c: &LevelCertificate, g: &Generator) -> Verdict {
    let g = match Generator::with_seed(g.module().clone(), g.declared_semi_resolving(), g.seed()) {
        Ok(g) => g,
        Err(e) => return Verdict::Reject { path: "generator".into(), reason: e.to_string() },
    };
    match verify_node(&c.root, &g, "root") {
        Ok(()) => Verdict::Accept { level: c.root.claimed_level() },
        Err((path, reason)) => Verdict::Reject { path, reason },
    }
}

type NodeResult = core::result::Result<(), (String, String)>;

fn verify_node(node: &CertNode, g: &Generator, path: &str) -> NodeResult {
    let fail = |reason: String| Err((path.to_string(), reason));
    let alg = g.algebra();
    let obj = node.object();
    if !crate::module::same_algebra(obj.algebra(), alg) {
        return fail("object lives over a different algebra".into());
    }
    if let Err(e) = obj.validate() {
        return fail(format!("object: {e}"));
    }
    match node {
        CertNode::Leaf(leaf) => {
            for (k, piece) in leaf.pieces.iter().enumerate() {
                if let Err(e) = piece.module.validate() {
                    return fail(format!("piece {k}: {e}"));
                }
                match in_add(&piece.module, g) {
                    Ok(v) if v.is_yes() => {}
                    Ok(_) => return fail(format!("piece {k} is not in add M")),
                    Err(e) => return fail(format!("piece {k}: {e}")),
                }
            }
            let sum = match piece_sum(alg, &leaf.pieces) {
                Ok(s) => s.sum,
                Err(e) => return fail(format!("pieces: {e}")),
            };
            if leaf.presentation.source() != &sum {
                return fail("presentation does not start at the sum of the pieces".into());
            }
            if leaf.presentation.target() != obj {
                return fail("presentation does not end at the object".into());
            }
            if let Err(e) = leaf.presentation.validate() {
                return fail(format!("presentation: {e}"));
            }
            if !is_quasi_iso(&leaf.presentation) {
                return fail("presentation is not a quasi-isomorphism".into());
            }
            let floor = usize::from(!leaf.pieces.is_empty());
            if leaf.claimed_level < floor {
                return fail(format!("claimed level {} below {floor}", leaf.claimed_level));
            }
            Ok(())
        }
        CertNode::Internal(n) => {
            for (name, c) in [("sub", n.ses.sub()), ("middle", n.ses.middle()), ("quotient", n.ses.quotient())] {
                if let Err(e) = c.validate() {
                    return fail(format!("{name} term: {e}"));
                }
            }
            if n.ses.p.target() != n.right.object() || n.ses.i.source() != n.left.object() {
                return fail("sequence ends differ from the children's objects".into());
            }
            if let Err(e) = n.ses.validate() {
                return fail(format!("sequence: {e}"));
            }
            let (x, y, z) = (
                n.ses.sub().euler_characteristic(),
                n.ses.middle().euler_characteristic(),
                n.ses.quotient().euler_characteristic(),
            );
            if (0..y.len()).any(|v| y[v] != x[v] + z[v]) {
                return fail("Euler characteristics of the sequence do not add up".into());
            }
            if n.to_object.source() != n.ses.middle() || n.to_object.target() != obj {
                return fail("recorded map does not run from the middle term to the object".into());
            }
            if let Err(e) = n.to_object.validate() {
                return fail(format!("recorded map: {e}"));
            }
            if !is_quasi_iso(&n.to_object) {
                return fail("recorded map is not a quasi-isomorphism".into());
            }
            verify_node(&n.left, g, &format!("{path}/left"))?;
            verify_node(&n.right, g, &format!("{path}/right"))?;
            let need = n.left.claimed_level() + n.right.claimed_level();
            if n.claimed_level < need {
                return fail(format!("claimed level {} below {need}", n.claimed_level));
            }
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    Plain,
    Syzygy,
    Gorenstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimInput {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundLine {
    pub theorem: &'static str,
    pub hypothesis: String,
    /// `None` when the statement gives no finite bound.
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d: DimInput,
    pub mode: BoundMode,
    pub lines: Vec<BoundLine>,
}

impl BoundLine {
    pub fn render(&self) -> String {
        match self.bound {
            Some(b) => format!("{}: {} => dim D^b <= {}", self.theorem, self.hypothesis, b),
            None => format!("{}: {} => no bound", self.theorem, self.hypothesis),
        }
    }
}

fn main_line(d: usize) -> BoundLine {
    if d <= 1 {
        BoundLine { theorem: "main theorem (i)", hypothesis: format!("X-dim = {d} <= 1"), bound: Some(d + 1) }
    } else {
        BoundLine { theorem: "main theorem (ii)", hypothesis: format!("X-dim = {d} >= 2"), bound: Some(d) }
    }
}

/// Every applicable bound on the derived dimension, one line per statement.
pub fn derived_dim_bound(d: DimInput, mode: BoundMode) -> BoundReport {
    let mut lines = Vec::new();
    match (mode, d) {
        (BoundMode::Plain, DimInput::Finite(d)) => {
            lines.push(BoundLine {
                theorem: "relative dimension bound",
                hypothesis: format!("X-dim = {d}"),
                bound: Some(d + 1),
            });
            lines.push(main_line(d));
        }
        (BoundMode::Plain, DimInput::Infinite) => lines.push(BoundLine {
            theorem: "relative dimension bound",
            hypothesis: "X-dim infinite".into(),
            bound: None,
        }),
        (BoundMode::Syzygy, DimInput::Finite(d)) => {
            lines.push(BoundLine {
                theorem: "syzygy corollary",
                hypothesis: format!("Omega^{d} representation-finite"),
                bound: Some(d + 1),
            });
            let sharp = if d <= 1 { d + 1 } else { d };
            lines.push(BoundLine {
                theorem: if d <= 1 { "syzygy corollary (i)" } else { "syzygy corollary (ii)" },
                hypothesis: format!("Omega^{d} representation-finite, d = {d}"),
                bound: Some(sharp),
            });
        }
        (BoundMode::Syzygy, DimInput::Infinite) => lines.push(BoundLine {
            theorem: "syzygy corollary",
            hypothesis: "no representation-finite syzygy class".into(),
            bound: None,
        }),
        (BoundMode::Gorenstein, DimInput::Finite(d)) => {
            lines.push(BoundLine {
                theorem: "gorenstein corollary",
                hypothesis: format!("{d}-Gorenstein of finite CM-type"),
                bound: Some(d.max(2)),
            });
            lines.push(main_line(d));
        }
        (BoundMode::Gorenstein, DimInput::Infinite) => lines.push(BoundLine {
            theorem: "gorenstein corollary",
            hypothesis: "not Gorenstein".into(),
            bound: None,
        }),
    }
    BoundReport { d, mode, lines }
}
