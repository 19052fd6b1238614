//! Line-oriented text formats for algebras, modules, complexes, generators
//! and level certificates.
//!
//! Every line is a keyword followed by whitespace-separated fields; `#`
//! starts a comment. A matrix is `matrix R C` followed by `R` lines of `C`
//! residues (no row lines when `C = 0`). Module references are names defined
//! earlier in the same file, or `@regular`, `@projective V`, `@simple V`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use derdim_core::algebra::{load_algebra, Algebra, AlgebraPresentation, Arrow, RelationTerm};
use derdim_core::complexes::{piece_sum, ChainMap, Complex, Degree, Piece, PieceKind, ShortExactSeq};
use derdim_core::homological::{Generator, DEFAULT_SEED};
use derdim_core::levels::{CertNode, Internal, Leaf, LevelCertificate};
use derdim_core::module::{direct_sum, indecomposable_projective, regular_module, Module, ModuleMap};
use derdim_core::Matrix;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("{0}")]
    Semantic(String),
}

type PResult<T> = Result<T, ParseError>;

struct Line {
    no: usize,
    tokens: Vec<String>,
}

/// Cursor over non-empty, comment-stripped lines.
pub struct Reader {
    lines: Vec<Line>,
    pos: usize,
}

impl Reader {
    pub fn new(text: &str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let tokens: Vec<String> = l.split_whitespace().map(str::to_string).collect();
                (!tokens.is_empty()).then_some(Line { no: i + 1, tokens })
            })
            .collect();
        Reader { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    fn next(&mut self, what: &str) -> PResult<&Line> {
        let l = self.lines.get(self.pos).ok_or_else(|| ParseError::Eof(what.to_string()))?;
        self.pos += 1;
        Ok(l)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn peek_keyword(&self) -> Option<&str> {
        self.peek().map(|l| l.tokens[0].as_str())
    }

    fn expect(&mut self, keyword: &str) -> PResult<(usize, Vec<String>)> {
        let l = self.next(keyword)?;
        if l.tokens[0] != keyword {
            return Err(err(l.no, format!("expected `{keyword}`, found `{}`", l.tokens[0])));
        }
        Ok((l.no, l.tokens[1..].to_vec()))
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn int<T: std::str::FromStr>(line: usize, s: &str) -> PResult<T> {
    s.parse().map_err(|_| err(line, format!("expected an integer, found `{s}`")))
}

fn fields(line: usize, toks: &[String], n: usize, what: &str) -> PResult<()> {
    if toks.len() != n {
        return Err(err(line, format!("`{what}` takes {n} field(s), found {}", toks.len())));
    }
    Ok(())
}

fn yes_no(line: usize, s: &str) -> PResult<bool> {
    match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(err(line, format!("expected yes or no, found `{s}`"))),
    }
}

// ---------------------------------------------------------------- algebra

/// Parses an algebra body. When `nested`, the body ends at `end`.
fn read_presentation(r: &mut Reader, nested: bool) -> PResult<AlgebraPresentation> {
    let mut modulus = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations = Vec::new();
    let mut cap = None;
    loop {
        if !nested && r.at_end() {
            break;
        }
        let l = r.next("algebra body")?;
        let (no, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        match kw.as_str() {
            "end" if nested => break,
            "modulus" => {
                fields(no, &rest, 1, "modulus")?;
                modulus = Some(int::<u32>(no, &rest[0])?);
            }
            "vertex" => {
                fields(no, &rest, 1, "vertex")?;
                if vertices.contains(&rest[0]) {
                    return Err(err(no, format!("duplicate vertex `{}`", rest[0])));
                }
                vertices.push(rest[0].clone());
            }
            "arrow" => {
                fields(no, &rest, 3, "arrow")?;
                let find = |v: &str| {
                    vertices.iter().position(|x| x == v).ok_or_else(|| err(no, format!("unknown vertex `{v}`")))
                };
                if arrows.iter().any(|a| a.name == rest[0]) {
                    return Err(err(no, format!("duplicate arrow `{}`", rest[0])));
                }
                arrows.push(Arrow { name: rest[0].clone(), source: find(&rest[1])?, target: find(&rest[2])? });
            }
            "relation" => {
                let mut terms = Vec::new();
                for chunk in rest.split(|t| t == "+") {
                    if chunk.len() < 2 {
                        return Err(err(no, "each relation term is a coefficient followed by arrows"));
                    }
                    let coefficient = int::<u32>(no, &chunk[0])?;
                    let path = chunk[1..]
                        .iter()
                        .map(|a| {
                            arrows
                                .iter()
                                .position(|x| &x.name == a)
                                .ok_or_else(|| err(no, format!("unknown arrow `{a}`")))
                        })
                        .collect::<PResult<Vec<_>>>()?;
                    terms.push(RelationTerm { coefficient, path });
                }
                relations.push(terms);
            }
            "cap" => {
                fields(no, &rest, 1, "cap")?;
                cap = Some(int::<usize>(no, &rest[0])?);
            }
            other => return Err(err(no, format!("unknown algebra field `{other}`"))),
        }
    }
    Ok(AlgebraPresentation {
        modulus: modulus.ok_or_else(|| ParseError::Semantic("algebra has no modulus".into()))?,
        vertices,
        arrows,
        relations,
        path_length_cap: cap.ok_or_else(|| ParseError::Semantic("algebra has no cap".into()))?,
    })
}

pub fn parse_presentation(text: &str) -> PResult<AlgebraPresentation> {
    read_presentation(&mut Reader::new(text), false)
}

pub fn parse_algebra(text: &str) -> PResult<Arc<Algebra>> {
    let pres = parse_presentation(text)?;
    load_algebra(&pres).map(Arc::new).map_err(|e| ParseError::Semantic(e.to_string()))
}

pub fn write_presentation(out: &mut String, pres: &AlgebraPresentation) {
    writeln!(out, "modulus {}", pres.modulus).unwrap();
    for v in &pres.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for a in &pres.arrows {
        writeln!(out, "arrow {} {} {}", a.name, pres.vertices[a.source], pres.vertices[a.target]).unwrap();
    }
    for rel in &pres.relations {
        let terms: Vec<String> = rel
            .iter()
            .map(|t| {
                let names: Vec<&str> = t.path.iter().map(|&a| pres.arrows[a].name.as_str()).collect();
                format!("{} {}", t.coefficient, names.join(" "))
            })
            .collect();
        writeln!(out, "relation {}", terms.join(" + ")).unwrap();
    }
    writeln!(out, "cap {}", pres.path_length_cap).unwrap();
}

pub fn algebra_to_string(alg: &Algebra) -> String {
    let mut s = String::new();
    write_presentation(&mut s, alg.presentation());
    s
}

// ---------------------------------------------------------------- matrices

fn read_matrix(r: &mut Reader, alg: &Algebra) -> PResult<Matrix> {
    let (no, toks) = r.expect("matrix")?;
    fields(no, &toks, 2, "matrix")?;
    let rows: usize = int(no, &toks[0])?;
    let cols: usize = int(no, &toks[1])?;
    let p = alg.modulus();
    let mut data = Vec::with_capacity(rows * cols);
    if cols > 0 {
        for _ in 0..rows {
            let l = r.next("matrix row")?;
            if l.tokens.len() != cols {
                return Err(err(l.no, format!("row has {} entries, expected {cols}", l.tokens.len())));
            }
            for t in &l.tokens {
                let x: u32 = int(l.no, t)?;
                if x >= p.get() {
                    return Err(err(l.no, format!("entry {x} is not a residue mod {}", p.get())));
                }
                data.push(x);
            }
        }
    }
    Matrix::from_vec(p, rows, cols, data).map_err(|e| err(no, e.to_string()))
}

fn write_matrix(out: &mut String, m: &Matrix) {
    writeln!(out, "matrix {} {}", m.rows(), m.cols()).unwrap();
    if m.cols() > 0 {
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
}

fn read_vertex_matrices(r: &mut Reader, alg: &Algebra) -> PResult<Vec<Matrix>> {
    (0..alg.num_vertices()).map(|_| read_matrix(r, alg)).collect()
}

fn write_map(out: &mut String, f: &ModuleMap) {
    for c in f.components() {
        write_matrix(out, c);
    }
}

// ---------------------------------------------------------------- objects

/// Named objects read from one file, all over the same algebra.
#[derive(Clone, Debug, Default)]
pub struct Objects {
    pub modules: Vec<(String, Module)>,
    pub complexes: Vec<(String, Complex)>,
    pub generators: Vec<(String, Generator)>,
}

impl Objects {
    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn complex(&self, name: &str) -> Option<&Complex> {
        self.complexes.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }
}

/// Whether parsed objects are checked (user input) or kept raw so that a
/// verifier can reject them (certificates).
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Checked,
    Raw,
}

fn resolve_module(
    alg: &Arc<Algebra>,
    modules: &[(String, Module)],
    no: usize,
    toks: &[String],
) -> PResult<Module> {
    let vertex = |name: &str| {
        alg.presentation().vertex_by_name(name).ok_or_else(|| err(no, format!("unknown vertex `{name}`")))
    };
    match toks {
        [r] if r == "@regular" => regular_module(alg).map_err(|e| err(no, e.to_string())),
        [r, v] if r == "@projective" => indecomposable_projective(alg, vertex(v)?).map_err(|e| err(no, e.to_string())),
        [r, v] if r == "@simple" => Module::simple(alg, vertex(v)?).map_err(|e| err(no, e.to_string())),
        [name] => modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| err(no, format!("unknown module `{name}`"))),
        _ => Err(err(no, "expected a module reference")),
    }
}

fn read_module_body(r: &mut Reader, alg: &Arc<Algebra>, no: usize, mode: Mode) -> PResult<Module> {
    let (dno, dims) = r.expect("dims")?;
    fields(dno, &dims, alg.num_vertices(), "dims")?;
    let dims: Vec<usize> = dims.iter().map(|t| int(dno, t)).collect::<PResult<_>>()?;
    let p = alg.modulus();
    let mut action: Vec<Option<Matrix>> = vec![None; alg.num_arrows()];
    loop {
        match r.peek_keyword() {
            Some("end") => {
                r.next("end")?;
                break;
            }
            Some("action") => {
                let (ano, toks) = r.expect("action")?;
                fields(ano, &toks, 1, "action")?;
                let a = alg
                    .presentation()
                    .arrow_by_name(&toks[0])
                    .ok_or_else(|| err(ano, format!("unknown arrow `{}`", toks[0])))?;
                if action[a].is_some() {
                    return Err(err(ano, format!("arrow `{}` given twice", toks[0])));
                }
                action[a] = Some(read_matrix(r, alg)?);
            }
            Some(other) => {
                let l = r.peek().unwrap().no;
                return Err(err(l, format!("unexpected `{other}` in module")));
            }
            None => return Err(ParseError::Eof("module".into())),
        }
    }
    let action: Vec<Matrix> = action
        .into_iter()
        .enumerate()
        .map(|(a, m)| {
            m.unwrap_or_else(|| {
                let arr = alg.arrow(a);
                Matrix::zeros(p, dims[arr.target], dims[arr.source])
            })
        })
        .collect();
    match mode {
        Mode::Checked => Module::new(alg, dims, action).map_err(|e| err(no, e.to_string())),
        Mode::Raw => Ok(Module::from_parts_unchecked(alg, dims, action)),
    }
}

fn write_module(out: &mut String, name: &str, m: &Module) {
    writeln!(out, "module {name}").unwrap();
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    writeln!(out, "dims {}", dims.join(" ")).unwrap();
    for (a, mat) in m.actions().iter().enumerate() {
        writeln!(out, "action {}", m.algebra().arrow(a).name).unwrap();
        write_matrix(out, mat);
    }
    writeln!(out, "end").unwrap();
}

fn read_complex_body(
    r: &mut Reader,
    alg: &Arc<Algebra>,
    modules: &[(String, Module)],
    no: usize,
    mode: Mode,
) -> PResult<Complex> {
    let mut terms: BTreeMap<Degree, Module> = BTreeMap::new();
    let mut diffs: BTreeMap<Degree, Vec<Matrix>> = BTreeMap::new();
    loop {
        let l = r.next("complex")?;
        let (lno, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        match kw.as_str() {
            "end" => break,
            "term" => {
                if rest.len() < 2 {
                    return Err(err(lno, "`term` takes a degree and a module reference"));
                }
                let n: Degree = int(lno, &rest[0])?;
                let m = resolve_module(alg, modules, lno, &rest[1..])?;
                if terms.insert(n, m).is_some() {
                    return Err(err(lno, format!("degree {n} given twice")));
                }
            }
            "diff" => {
                fields(lno, &rest, 1, "diff")?;
                let n: Degree = int(lno, &rest[0])?;
                let mats = read_vertex_matrices(r, alg)?;
                if diffs.insert(n, mats).is_some() {
                    return Err(err(lno, format!("differential {n} given twice")));
                }
            }
            other => return Err(err(lno, format!("unknown complex field `{other}`"))),
        }
    }
    let Some((&lo, _)) = terms.iter().next() else {
        if !diffs.is_empty() {
            return Err(err(no, "differentials on a complex without terms"));
        }
        return Ok(Complex::zero(alg));
    };
    let hi = *terms.keys().last().unwrap();
    let zero = Module::zero(alg);
    let term_list: Vec<Module> = (lo..=hi).map(|n| terms.get(&n).cloned().unwrap_or_else(|| zero.clone())).collect();
    for &n in diffs.keys() {
        if n <= lo || n > hi {
            return Err(err(no, format!("differential {n} leaves the support {lo}..{hi}")));
        }
    }
    let diff_list: Vec<ModuleMap> = (lo + 1..=hi)
        .map(|n| {
            let (s, t) = (&term_list[(n - lo) as usize], &term_list[(n - lo - 1) as usize]);
            match diffs.remove(&n) {
                Some(mats) => ModuleMap::from_parts_unchecked(s.clone(), t.clone(), mats),
                None => ModuleMap::zero(s, t),
            }
        })
        .collect();
    match mode {
        Mode::Checked => Complex::new(alg, lo, term_list, diff_list).map_err(|e| err(no, e.to_string())),
        Mode::Raw => Ok(Complex::from_parts_unchecked(alg, lo, term_list, diff_list)),
    }
}

/// Writes a complex whose terms are named by `name_of`.
fn write_complex(out: &mut String, name: &str, c: &Complex, name_of: &dyn Fn(&Module) -> String) {
    writeln!(out, "complex {name}").unwrap();
    for n in c.degrees() {
        writeln!(out, "term {n} {}", name_of(&c.term(n))).unwrap();
    }
    for n in c.degrees().skip(1) {
        writeln!(out, "diff {n}").unwrap();
        write_map(out, &c.diff(n));
    }
    writeln!(out, "end").unwrap();
}

/// Generator summands are always checked: the verifier trusts `add M`.
fn read_generator_body(
    r: &mut Reader,
    alg: &Arc<Algebra>,
    modules: &[(String, Module)],
    no: usize,
) -> PResult<Generator> {
    let mut summands = Vec::new();
    let mut declared = true;
    let mut seed = DEFAULT_SEED;
    loop {
        let l = r.next("generator")?;
        let (lno, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        match kw.as_str() {
            "end" => break,
            "summand" => summands.push(resolve_module(alg, modules, lno, &rest)?),
            "semi_resolving" => {
                fields(lno, &rest, 1, "semi_resolving")?;
                declared = yes_no(lno, &rest[0])?;
            }
            "seed" => {
                fields(lno, &rest, 1, "seed")?;
                seed = int(lno, &rest[0])?;
            }
            other => return Err(err(lno, format!("unknown generator field `{other}`"))),
        }
    }
    if summands.is_empty() {
        return Err(err(no, "generator needs at least one summand"));
    }
    let m = if summands.len() == 1 {
        summands.pop().unwrap()
    } else {
        direct_sum(alg, &summands).map_err(|e| err(no, e.to_string()))?.sum
    };
    m.validate().map_err(|e| err(no, e.to_string()))?;
    Generator::with_seed(m, declared, seed).map_err(|e| err(no, e.to_string()))
}

/// Reads an objects file: `module`, `complex` and `generator` blocks.
pub fn parse_objects(alg: &Arc<Algebra>, text: &str) -> PResult<Objects> {
    let mut r = Reader::new(text);
    let mut objs = Objects::default();
    while !r.at_end() {
        let l = r.next("object")?;
        let (no, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        fields(no, &rest, 1, &kw)?;
        let name = rest[0].clone();
        if name.starts_with('@') {
            return Err(err(no, "names starting with `@` are reserved"));
        }
        match kw.as_str() {
            "module" => {
                if objs.module(&name).is_some() {
                    return Err(err(no, format!("duplicate module `{name}`")));
                }
                let m = read_module_body(&mut r, alg, no, Mode::Checked)?;
                objs.modules.push((name, m));
            }
            "complex" => {
                let c = read_complex_body(&mut r, alg, &objs.modules, no, Mode::Checked)?;
                objs.complexes.push((name, c));
            }
            "generator" => {
                let g = read_generator_body(&mut r, alg, &objs.modules, no)?;
                objs.generators.push((name, g));
            }
            other => return Err(err(no, format!("unknown block `{other}`"))),
        }
    }
    Ok(objs)
}

pub fn module_to_string(name: &str, m: &Module) -> String {
    let mut s = String::new();
    write_module(&mut s, name, m);
    s
}

/// A module table plus complexes referencing it by name.
struct Tables {
    modules: Vec<Module>,
    complexes: Vec<Complex>,
}

impl Tables {
    fn module_id(&mut self, m: &Module) -> usize {
        match self.modules.iter().position(|x| x == m) {
            Some(i) => i,
            None => {
                self.modules.push(m.clone());
                self.modules.len() - 1
            }
        }
    }

    fn complex_id(&mut self, c: &Complex) -> usize {
        if let Some(i) = self.complexes.iter().position(|x| x == c) {
            return i;
        }
        for n in c.degrees() {
            self.module_id(&c.term(n));
        }
        self.complexes.push(c.clone());
        self.complexes.len() - 1
    }
}

/// Writes named complexes together with the modules they use.
pub fn complexes_to_string(items: &[(String, Complex)]) -> String {
    let mut t = Tables { modules: Vec::new(), complexes: Vec::new() };
    for (_, c) in items {
        for n in c.degrees() {
            t.module_id(&c.term(n));
        }
    }
    let mut s = String::new();
    for (i, m) in t.modules.iter().enumerate() {
        write_module(&mut s, &format!("m{i}"), m);
    }
    let modules = t.modules.clone();
    let name_of = move |m: &Module| format!("m{}", modules.iter().position(|x| x == m).unwrap());
    for (name, c) in items {
        write_complex(&mut s, name, c, &name_of);
    }
    s
}

// ---------------------------------------------------------------- certificates

pub const CERTIFICATE_HEADER: &str = "derdim-certificate 1";

/// Certificate together with the generator it claims membership for.
#[derive(Clone, Debug)]
pub struct CertificateFile {
    pub algebra: Arc<Algebra>,
    pub generator: Generator,
    pub certificate: LevelCertificate,
}

fn collect(node: &CertNode, t: &mut Tables) {
    t.complex_id(node.object());
    match node {
        CertNode::Leaf(l) => {
            for p in &l.pieces {
                t.module_id(&p.module);
            }
        }
        CertNode::Internal(n) => {
            t.complex_id(n.ses.middle());
            collect(&n.left, t);
            collect(&n.right, t);
        }
    }
}

fn write_chain_map(out: &mut String, f: &ChainMap, src: &str, tgt: &str) {
    writeln!(out, "chainmap {src} {tgt}").unwrap();
    for n in f.source().degrees() {
        writeln!(out, "component {n}").unwrap();
        write_map(out, &f.component(n));
    }
    writeln!(out, "end").unwrap();
}

fn write_node(out: &mut String, node: &CertNode, t: &mut Tables) {
    let cname = |t: &mut Tables, c: &Complex| format!("c{}", t.complex_id(c));
    match node {
        CertNode::Leaf(l) => {
            writeln!(out, "leaf {}", l.claimed_level).unwrap();
            let obj = cname(t, &l.object);
            writeln!(out, "object {obj}").unwrap();
            for (p, ok) in l.pieces.iter().zip(&l.in_add) {
                let kind = match p.kind {
                    PieceKind::Stalk => "stalk",
                    PieceKind::Disk => "disk",
                };
                let ok = if *ok { "yes" } else { "no" };
                writeln!(out, "piece {kind} m{} {} {ok}", t.module_id(&p.module), p.degree).unwrap();
            }
            writeln!(out, "presentation").unwrap();
            write_chain_map(out, &l.presentation, "@pieces", &obj);
            writeln!(out, "end").unwrap();
        }
        CertNode::Internal(n) => {
            writeln!(out, "internal {}", n.claimed_level).unwrap();
            let obj = cname(t, &n.object);
            let mid = cname(t, n.ses.middle());
            let sub = cname(t, n.ses.sub());
            let quo = cname(t, n.ses.quotient());
            writeln!(out, "object {obj}").unwrap();
            writeln!(out, "middle {mid}").unwrap();
            writeln!(out, "inclusion").unwrap();
            write_chain_map(out, &n.ses.i, &sub, &mid);
            writeln!(out, "projection").unwrap();
            write_chain_map(out, &n.ses.p, &mid, &quo);
            writeln!(out, "to_object").unwrap();
            write_chain_map(out, &n.to_object, &mid, &obj);
            writeln!(out, "left").unwrap();
            write_node(out, &n.left, t);
            writeln!(out, "right").unwrap();
            write_node(out, &n.right, t);
            writeln!(out, "end").unwrap();
        }
    }
}

pub fn certificate_to_string(file: &CertificateFile) -> String {
    let mut t = Tables { modules: Vec::new(), complexes: Vec::new() };
    let gm = t.module_id(file.generator.module());
    collect(&file.certificate.root, &mut t);
    let mut out = String::new();
    writeln!(out, "{CERTIFICATE_HEADER}").unwrap();
    writeln!(out, "algebra").unwrap();
    write_presentation(&mut out, file.algebra.presentation());
    writeln!(out, "end").unwrap();
    for (i, m) in t.modules.iter().enumerate() {
        write_module(&mut out, &format!("m{i}"), m);
    }
    let modules = t.modules.clone();
    let name_of = |m: &Module| format!("m{}", modules.iter().position(|x| x == m).unwrap());
    for (i, c) in t.complexes.iter().enumerate() {
        write_complex(&mut out, &format!("c{i}"), c, &name_of);
    }
    writeln!(out, "generator G").unwrap();
    writeln!(out, "summand m{gm}").unwrap();
    let sr = if file.generator.declared_semi_resolving() { "yes" } else { "no" };
    writeln!(out, "semi_resolving {sr}").unwrap();
    writeln!(out, "seed {}", file.generator.seed()).unwrap();
    writeln!(out, "end").unwrap();
    writeln!(out, "root").unwrap();
    write_node(&mut out, &file.certificate.root, &mut t);
    out
}

struct CertContext<'a> {
    alg: &'a Arc<Algebra>,
    modules: &'a [(String, Module)],
    complexes: &'a [(String, Complex)],
}

impl CertContext<'_> {
    fn complex(&self, no: usize, name: &str) -> PResult<Complex> {
        self.complexes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| err(no, format!("unknown complex `{name}`")))
    }
}

fn read_chain_map(r: &mut Reader, ctx: &CertContext, pieces_sum: Option<&Complex>) -> PResult<ChainMap> {
    let (no, toks) = r.expect("chainmap")?;
    fields(no, &toks, 2, "chainmap")?;
    let lookup = |name: &str| -> PResult<Complex> {
        if name == "@pieces" {
            pieces_sum.cloned().ok_or_else(|| err(no, "`@pieces` outside a leaf"))
        } else {
            ctx.complex(no, name)
        }
    };
    let (src, tgt) = (lookup(&toks[0])?, lookup(&toks[1])?);
    let mut comps: BTreeMap<Degree, Vec<Matrix>> = BTreeMap::new();
    loop {
        let l = r.next("chain map")?;
        let (lno, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        match kw.as_str() {
            "end" => break,
            "component" => {
                fields(lno, &rest, 1, "component")?;
                let n: Degree = int(lno, &rest[0])?;
                if !src.degrees().contains(&n) {
                    return Err(err(lno, format!("component {n} outside the source support")));
                }
                let mats = read_vertex_matrices(r, ctx.alg)?;
                if comps.insert(n, mats).is_some() {
                    return Err(err(lno, format!("component {n} given twice")));
                }
            }
            other => return Err(err(lno, format!("unknown chain map field `{other}`"))),
        }
    }
    let list = src
        .degrees()
        .map(|n| match comps.remove(&n) {
            Some(mats) => ModuleMap::from_parts_unchecked(src.term(n), tgt.term(n), mats),
            None => ModuleMap::zero(&src.term(n), &tgt.term(n)),
        })
        .collect();
    Ok(ChainMap::from_parts_unchecked(src, tgt, list))
}

fn read_node(r: &mut Reader, ctx: &CertContext) -> PResult<CertNode> {
    let l = r.next("certificate node")?;
    let (no, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
    fields(no, &rest, 1, &kw)?;
    let claimed_level: usize = int(no, &rest[0])?;
    match kw.as_str() {
        "leaf" => {
            let (ono, o) = r.expect("object")?;
            fields(ono, &o, 1, "object")?;
            let object = ctx.complex(ono, &o[0])?;
            let mut pieces = Vec::new();
            let mut in_add = Vec::new();
            while r.peek_keyword() == Some("piece") {
                let (pno, p) = r.expect("piece")?;
                fields(pno, &p, 4, "piece")?;
                let kind = match p[0].as_str() {
                    "stalk" => PieceKind::Stalk,
                    "disk" => PieceKind::Disk,
                    other => return Err(err(pno, format!("unknown piece kind `{other}`"))),
                };
                let module = resolve_module(ctx.alg, ctx.modules, pno, &p[1..2])?;
                pieces.push(Piece { kind, module, degree: int(pno, &p[2])? });
                in_add.push(yes_no(pno, &p[3])?);
            }
            r.expect("presentation")?;
            let sum = piece_sum(ctx.alg, &pieces).map_err(|e| err(no, e.to_string()))?.sum;
            let presentation = read_chain_map(r, ctx, Some(&sum))?;
            r.expect("end")?;
            Ok(CertNode::Leaf(Leaf { object, pieces, presentation, in_add, claimed_level }))
        }
        "internal" => {
            let (ono, o) = r.expect("object")?;
            fields(ono, &o, 1, "object")?;
            let object = ctx.complex(ono, &o[0])?;
            let (mno, m) = r.expect("middle")?;
            fields(mno, &m, 1, "middle")?;
            let middle = ctx.complex(mno, &m[0])?;
            r.expect("inclusion")?;
            let i = read_chain_map(r, ctx, None)?;
            r.expect("projection")?;
            let p = read_chain_map(r, ctx, None)?;
            r.expect("to_object")?;
            let to_object = read_chain_map(r, ctx, None)?;
            if i.target() != &middle || p.source() != &middle {
                return Err(err(mno, "sequence maps do not meet at the middle term"));
            }
            r.expect("left")?;
            let left = read_node(r, ctx)?;
            r.expect("right")?;
            let right = read_node(r, ctx)?;
            r.expect("end")?;
            Ok(CertNode::Internal(Internal {
                object,
                ses: ShortExactSeq { i, p },
                to_object,
                left: Box::new(left),
                right: Box::new(right),
                claimed_level,
            }))
        }
        other => Err(err(no, format!("expected `leaf` or `internal`, found `{other}`"))),
    }
}

/// Parses a certificate without validating its mathematics; run the
/// verifier on the result.
pub fn parse_certificate(text: &str) -> PResult<CertificateFile> {
    let mut r = Reader::new(text);
    let header = r.next("header")?;
    if header.tokens.join(" ") != CERTIFICATE_HEADER {
        return Err(err(header.no, format!("expected `{CERTIFICATE_HEADER}`")));
    }
    r.expect("algebra")?;
    let pres = read_presentation(&mut r, true)?;
    let alg = Arc::new(load_algebra(&pres).map_err(|e| ParseError::Semantic(e.to_string()))?);
    let mut modules: Vec<(String, Module)> = Vec::new();
    let mut complexes: Vec<(String, Complex)> = Vec::new();
    let mut generator = None;
    loop {
        let l = r.next("certificate body")?;
        let (no, kw, rest) = (l.no, l.tokens[0].clone(), l.tokens[1..].to_vec());
        match kw.as_str() {
            "module" => {
                fields(no, &rest, 1, "module")?;
                let m = read_module_body(&mut r, &alg, no, Mode::Raw)?;
                modules.push((rest[0].clone(), m));
            }
            "complex" => {
                fields(no, &rest, 1, "complex")?;
                let c = read_complex_body(&mut r, &alg, &modules, no, Mode::Raw)?;
                complexes.push((rest[0].clone(), c));
            }
            "generator" => {
                fields(no, &rest, 1, "generator")?;
                generator = Some(read_generator_body(&mut r, &alg, &modules, no)?);
            }
            "root" => break,
            other => return Err(err(no, format!("unknown certificate block `{other}`"))),
        }
    }
    let ctx = CertContext { alg: &alg, modules: &modules, complexes: &complexes };
    let root = read_node(&mut r, &ctx)?;
    if let Some(l) = r.peek() {
        return Err(err(l.no, "trailing input after the certificate tree"));
    }
    let generator = generator.ok_or_else(|| ParseError::Semantic("certificate has no generator".into()))?;
    Ok(CertificateFile { algebra: alg.clone(), generator, certificate: LevelCertificate { root } })
}
