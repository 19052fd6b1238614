//! Presented path algebras `kQ/I` over a prime field.
//!
//! Paths compose left to right: `[a, b]` means "first `a`, then `b`", so a
//! path is written in the order its arrows are traversed. The algebra is
//! computed inside the span of all paths of length at most the cap; the
//! loader insists that every path of cap length already lies in the ideal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Modulus};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term `coefficient * path` of a relation; `path` lists arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationTerm {
    pub coefficient: u32,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    pub modulus: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub path_length_cap: usize,
}

/// A path in the quiver. Trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse linear combination of basis elements, sorted by index.
pub type Combination = Vec<(usize, u32)>;

/// A loaded finite-dimensional algebra with an explicit path basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    presentation: AlgebraPresentation,
    modulus: Modulus,
    basis: Vec<Path>,
    /// `mult[i][j]` is the normal form of `basis[i] * basis[j]`.
    mult: Vec<Vec<Combination>>,
    trivial_index: Vec<usize>,
    arrow_index: Vec<usize>,
}

impl AlgebraPresentation {
    pub fn validate(&self) -> Result<Modulus> {
        let modulus = Modulus::new(self.modulus)
            .map_err(|_| Error::MalformedPresentation(format!("{} is not prime", self.modulus)))?;
        if self.vertices.is_empty() {
            return Err(Error::MalformedPresentation("no vertices".into()));
        }
        if self.path_length_cap == 0 {
            return Err(Error::MalformedPresentation("path_length_cap must be positive".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::MalformedPresentation(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::MalformedPresentation(format!(
                    "arrow {} has an endpoint outside the vertex set",
                    a.name
                )));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::MalformedPresentation(format!("duplicate arrow {}", a.name)));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(Error::MalformedPresentation(format!("relation {ri} is empty")));
            }
            let mut ends = None;
            for term in rel {
                if term.coefficient >= self.modulus {
                    return Err(Error::MalformedPresentation(format!(
                        "relation {ri}: coefficient {} not reduced mod {}",
                        term.coefficient, self.modulus
                    )));
                }
                if term.path.len() < 2 {
                    return Err(Error::MalformedPresentation(format!(
                        "relation {ri}: paths must have length at least 2"
                    )));
                }
                if let Some(&bad) = term.path.iter().find(|&&a| a >= self.arrows.len()) {
                    return Err(Error::MalformedPresentation(format!(
                        "relation {ri}: unknown arrow index {bad}"
                    )));
                }
                for w in term.path.windows(2) {
                    if self.arrows[w[0]].target != self.arrows[w[1]].source {
                        return Err(Error::MalformedPresentation(format!(
                            "relation {ri}: arrows {} and {} do not compose",
                            self.arrows[w[0]].name, self.arrows[w[1]].name
                        )));
                    }
                }
                let s = self.arrows[term.path[0]].source;
                let t = self.arrows[*term.path.last().unwrap()].target;
                match ends {
                    None => ends = Some((s, t)),
                    Some(e) if e != (s, t) => {
                        return Err(Error::MalformedPresentation(format!(
                            "relation {ri}: terms have different endpoints"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(modulus)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

fn enumerate_paths(pres: &AlgebraPresentation) -> Vec<Path> {
    let mut all: Vec<Path> = (0..pres.vertices.len()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = all.clone();
    for _ in 0..pres.path_length_cap {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in pres.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        next.sort_by(|x, y| x.arrows.cmp(&y.arrows));
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Loads a presentation: computes the reduced path basis and the
/// multiplication table, failing if the cap is too small.
pub fn load_algebra(pres: &AlgebraPresentation) -> Result<Algebra> {
    let modulus = pres.validate()?;
    let cap = pres.path_length_cap;
    let paths = enumerate_paths(pres);
    let n = paths.len();
    let index: BTreeMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();

    // Columns ordered longest path first so rref pivots land on leading terms.
    let col_of = |i: usize| n - 1 - i;
    let path_of_col = |c: usize| n - 1 - c;

    let mut gens: Vec<Vec<u32>> = Vec::new();
    for rel in &pres.relations {
        let s = pres.arrows[rel[0].path[0]].source;
        let t = pres.arrows[*rel[0].path.last().unwrap()].target;
        let min_len = rel.iter().map(|r| r.path.len()).min().unwrap();
        for u in paths.iter().filter(|u| u.target == s) {
            for w in paths.iter().filter(|w| w.source == t) {
                if u.len() + min_len + w.len() > cap {
                    continue;
                }
                let mut row = alloc::vec![0u32; n];
                for term in rel {
                    if u.len() + term.path.len() + w.len() > cap {
                        continue;
                    }
                    let mut arrows = u.arrows.clone();
                    arrows.extend_from_slice(&term.path);
                    arrows.extend_from_slice(&w.arrows);
                    let idx = index[&(u.source, arrows)];
                    let c = col_of(idx);
                    row[c] = modulus.add(row[c], term.coefficient);
                }
                if row.iter().any(|&x| x != 0) {
                    gens.push(row);
                }
            }
        }
    }
    let mut flat = Vec::with_capacity(gens.len() * n);
    for g in &gens {
        flat.extend_from_slice(g);
    }
    let ideal = Matrix::from_vec(modulus, gens.len(), n, flat)?;
    let rref = ideal.rref();

    // Every path of cap length must lie in the ideal (modulo longer paths).
    let top: Vec<usize> = (0..n).filter(|&i| paths[i].len() == cap).collect();
    {
        let mut with_top = ideal.clone();
        for &i in &top {
            let mut e = Matrix::zeros(modulus, 1, n);
            e.set(0, col_of(i), 1);
            with_top = with_top.vstack(&e);
        }
        if with_top.rank() != rref.rank {
            return Err(Error::NotFiniteDimensional { cap });
        }
    }

    let pivot_paths: Vec<usize> = rref.pivots.iter().map(|&c| path_of_col(c)).collect();
    let mut basis_ids: Vec<usize> = (0..n).filter(|i| !pivot_paths.contains(i)).collect();
    basis_ids.sort();
    let basis_pos: BTreeMap<usize, usize> =
        basis_ids.iter().enumerate().map(|(bi, &pi)| (pi, bi)).collect();

    // Normal forms of every enumerated path.
    let mut normal: Vec<Combination> = alloc::vec![Vec::new(); n];
    for (pi, nf) in normal.iter_mut().enumerate() {
        if let Some(&bi) = basis_pos.get(&pi) {
            *nf = alloc::vec![(bi, 1)];
        }
    }
    for (row, &pc) in rref.pivots.iter().enumerate() {
        let pi = path_of_col(pc);
        let mut comb: Combination = Vec::new();
        for (&qi, &bi) in &basis_pos {
            let v = rref.reduced.get(row, col_of(qi));
            if v != 0 {
                comb.push((bi, modulus.neg(v)));
            }
        }
        comb.sort();
        normal[pi] = comb;
    }

    let basis: Vec<Path> = basis_ids.iter().map(|&i| paths[i].clone()).collect();
    let mut mult = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for y in &basis {
            if x.target != y.source || x.len() + y.len() >= cap {
                row.push(Vec::new());
                continue;
            }
            let mut arrows = x.arrows.clone();
            arrows.extend_from_slice(&y.arrows);
            row.push(normal[index[&(x.source, arrows)]].clone());
        }
        mult.push(row);
    }

    let find = |p: &Path| basis.iter().position(|b| b == p);
    let trivial_index = (0..pres.vertices.len())
        .map(|v| find(&Path::trivial(v)).ok_or_else(|| Error::MalformedPresentation(format!("trivial path at vertex {v} vanishes"))))
        .collect::<Result<Vec<_>>>()?;
    let arrow_index = pres
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            find(&Path { source: a.source, target: a.target, arrows: alloc::vec![ai] }).ok_or_else(
                || Error::MalformedPresentation(format!("arrow {} vanishes in the algebra", a.name)),
            )
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Algebra { presentation: pres.clone(), modulus, basis, mult, trivial_index, arrow_index })
}

impl Algebra {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.presentation.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.presentation.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.presentation.arrows
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.presentation.vertices[v]
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.trivial_index[v]
    }

    pub fn arrow_basis_index(&self, a: usize) -> usize {
        self.arrow_index[a]
    }

    /// Normal form of `basis[i] * basis[j]`.
    pub fn multiply(&self, i: usize, j: usize) -> &Combination {
        &self.mult[i][j]
    }

    /// Product of two arbitrary combinations.
    pub fn multiply_combinations(&self, x: &Combination, y: &Combination) -> Combination {
        let m = self.modulus;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in &self.mult[i][j] {
                    let e = acc.entry(k).or_insert(0);
                    *e = m.add(*e, m.mul(m.mul(a, b), c));
                }
            }
        }
        acc.into_iter().filter(|&(_, v)| v != 0).collect()
    }

    /// Indices of basis paths from `v` to `w`, in basis order.
    pub fn basis_paths_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].source == v && self.basis[i].target == w)
            .collect()
    }

    /// Arrows ending at `w`.
    pub fn arrows_into(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.presentation.arrows.iter().enumerate().filter(move |(_, a)| a.target == w).map(|(i, _)| i)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Human-readable rendering of a path using arrow names.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertex_name(p.source))
        } else {
            let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrow(a).name.as_str()).collect();
            names.join("")
        }
    }
}

/// Small algebras over F_2 used throughout the tests and examples.
pub mod fixtures {
    use super::*;
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;

    fn arrow(name: &str, s: usize, t: usize) -> Arrow {
        Arrow { name: name.to_string(), source: s, target: t }
    }

    fn zero_rel(path: &[usize]) -> Vec<RelationTerm> {
        vec![RelationTerm { coefficient: 1, path: path.to_vec() }]
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    /// One vertex, no arrows.
    pub fn lambda0() -> Arc<Algebra> {
        Arc::new(
            load_algebra(&AlgebraPresentation {
                modulus: 2,
                vertices: names(1),
                arrows: vec![],
                relations: vec![],
                path_length_cap: 1,
            })
            .unwrap(),
        )
    }

    /// `F_2[x]/(x^2)`.
    pub fn lambda1() -> Arc<Algebra> {
        Arc::new(
            load_algebra(&AlgebraPresentation {
                modulus: 2,
                vertices: names(1),
                arrows: vec![arrow("a", 0, 0)],
                relations: vec![zero_rel(&[0, 0])],
                path_length_cap: 2,
            })
            .unwrap(),
        )
    }

    /// Linear `n`-vertex quiver with all length-2 compositions zero.
    pub fn linear_radical_square_zero(n: usize) -> Arc<Algebra> {
        let arrows: Vec<Arrow> = (0..n - 1)
            .map(|i| arrow(&alloc::format!("a{}", i + 1), i, i + 1))
            .collect();
        let relations = (0..n.saturating_sub(2)).map(|i| zero_rel(&[i, i + 1])).collect();
        Arc::new(
            load_algebra(&AlgebraPresentation {
                modulus: 2,
                vertices: names(n),
                arrows,
                relations,
                path_length_cap: if n >= 3 { 2 } else { n },
            })
            .unwrap(),
        )
    }

    pub fn lambda2() -> Arc<Algebra> {
        linear_radical_square_zero(2)
    }

    pub fn lambda3() -> Arc<Algebra> {
        linear_radical_square_zero(3)
    }

    pub fn lambda4() -> Arc<Algebra> {
        linear_radical_square_zero(4)
    }
}
