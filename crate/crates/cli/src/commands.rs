//! Command implementations. Each returns an [`Outcome`]: human-readable
//! text, the same data as JSON, and an exit code.

use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use derdim_core::algebra::Algebra;
use derdim_core::homological::{check_semi_resolving_samples, decompose, syzygy, xdim, SampleVerdict, XDim};
use derdim_core::levels::{
    build_witness_han, build_witness_main, derived_dim_bound, verify_certificate, BoundMode, DimInput,
    Verdict,
};
use derdim_core::module::{indecomposable_projective, Module};
use derdim_core::sampling::random_module;

use crate::format::{
    certificate_to_string, module_to_string, parse_algebra, parse_certificate,
    CertificateFile,
};
use crate::workspace::{read_file, write_file, CliError, Workspace};

pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

impl Outcome {
    fn ok<T: Serialize>(text: String, data: &T) -> Self {
        Outcome { text, json: serde_json::to_value(data).expect("plain data"), code: 0 }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

fn dims_str(m: &Module) -> String {
    let d: Vec<String> = m.dims().iter().map(|x| x.to_string()).collect();
    format!("({})", d.join(","))
}

fn xdim_str(x: XDim) -> String {
    match x {
        XDim::Finite(t) => t.to_string(),
        XDim::ExceedsCap(c) => format!("exceeds cap {c}"),
    }
}

fn xdim_json(x: XDim) -> serde_json::Value {
    match x {
        XDim::Finite(t) => serde_json::json!(t),
        XDim::ExceedsCap(c) => serde_json::json!({ "exceeds_cap": c }),
    }
}

#[derive(Serialize)]
struct ProjectiveInfo {
    vertex: String,
    dim: usize,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct CheckReport {
    modulus: u32,
    dimension: usize,
    vertices: usize,
    arrows: usize,
    basis: Vec<String>,
    projectives: Vec<ProjectiveInfo>,
}

pub fn check_algebra(alg: &Arc<Algebra>) -> Result<Outcome, CliError> {
    let mut projectives = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = indecomposable_projective(alg, v)?;
        projectives.push(ProjectiveInfo {
            vertex: alg.vertex_name(v).to_string(),
            dim: p.total_dim(),
            dims: p.dims().to_vec(),
        });
    }
    let report = CheckReport {
        modulus: alg.modulus().get(),
        dimension: alg.dim(),
        vertices: alg.num_vertices(),
        arrows: alg.num_arrows(),
        basis: alg.basis().iter().map(|p| alg.path_name(p)).collect(),
        projectives,
    };
    let projs: Vec<String> = report.projectives.iter().map(|p| format!("P({}) dim {}", p.vertex, p.dim)).collect();
    let text = format!(
        "dimension {}, vertices {}, projectives: {}\nbasis: {}\n",
        report.dimension,
        report.vertices,
        projs.join(", "),
        report.basis.join(" ")
    );
    Ok(Outcome::ok(text, &report))
}

pub fn cmd_check(path: &Path) -> Result<Outcome, CliError> {
    let alg = parse_algebra(&read_file(path)?)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    check_algebra(&alg)
}

pub fn cmd_xdim(ws: &Workspace, module: &str, generator: &str) -> Result<Outcome, CliError> {
    let a = ws.module(module)?;
    let g = ws.generator(generator)?;
    let report = xdim(&a, &g, ws.cap)?;
    let alg = &ws.algebra;
    let mut text = match report.value {
        XDim::Finite(t) => format!("xdim = {t}\n"),
        XDim::ExceedsCap(c) => format!("xdim: exceeds cap {c}\n"),
    };
    let mut trace = Vec::new();
    for (t, step) in report.trace.iter().enumerate() {
        let verdict = if step.in_add { "in add M" } else { "not in add M" };
        let line = match &step.cover_vertices {
            None => format!("K_0 = A, dims {}, {verdict}", dims_str(&step.kernel)),
            Some(vs) => {
                let cover: Vec<String> = vs.iter().map(|&v| format!("P({})", alg.vertex_name(v))).collect();
                let cover = if cover.is_empty() { "0".to_string() } else { cover.join("+") };
                format!("K_{t} = ker({cover} -> K_{}), dims {}, {verdict}", t - 1, dims_str(&step.kernel))
            }
        };
        text.push_str(&line);
        text.push('\n');
        trace.push(serde_json::json!({
            "step": t,
            "dims": step.kernel.dims(),
            "cover": step.cover_vertices.as_ref().map(|vs| vs.iter().map(|&v| alg.vertex_name(v).to_string()).collect::<Vec<_>>()),
            "in_add": step.in_add,
        }));
    }
    if report.is_conditional() {
        text.push_str("note: generator not declared semi-resolving; value is an upper bound\n");
    }
    let json = serde_json::json!({
        "module": module,
        "generator": generator,
        "value": xdim_json(report.value),
        "conditional": report.is_conditional(),
        "trace": trace,
    });
    let code = if report.value.finite().is_some() { 0 } else { 1 };
    Ok(Outcome { text, json, code })
}

pub fn cmd_syzygy(ws: &Workspace, module: &str, n: usize, out: Option<&Path>) -> Result<Outcome, CliError> {
    let a = ws.module(module)?;
    let omega = syzygy(&a, n)?;
    let dec = decompose(&omega, ws.seed);
    let name = format!("omega{n}");
    let mut text = format!("Omega^{n} {module}: dims {}, total {}\n", dims_str(&omega), omega.total_dim());
    let mut summands = Vec::new();
    for (s, mult) in &dec.summands {
        text.push_str(&format!("summand dims {} x{mult}\n", dims_str(s)));
        summands.push(serde_json::json!({ "dims": s.dims(), "multiplicity": mult }));
    }
    let body = module_to_string(&name, &omega);
    match out {
        Some(p) => {
            write_file(p, &body)?;
            text.push_str(&format!("written to {}\n", p.display()));
        }
        None => text.push_str(&body),
    }
    let json = serde_json::json!({
        "module": module,
        "n": n,
        "dims": omega.dims(),
        "summands": summands,
        "file": body,
    });
    Ok(Outcome { text, json, code: 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum WitnessMode {
    Han,
    Main,
}

pub fn cmd_witness(
    ws: &Workspace,
    complex: &str,
    generator: &str,
    mode: WitnessMode,
    d: Option<usize>,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let a = ws.complex(complex)?;
    let g = ws.generator(generator)?;
    let cert = match mode {
        WitnessMode::Han => build_witness_han(&a, &g, ws.cap)?,
        WitnessMode::Main => {
            let d = d.ok_or_else(|| CliError::Usage("--mode main needs --d".into()))?;
            if d < 2 {
                return Err(CliError::Usage(format!("--mode main needs d >= 2 (got {d}); use --mode han")));
            }
            build_witness_main(&a, &g, d, ws.cap)?
        }
    };
    let verdict = verify_certificate(&cert, &g);
    let file = CertificateFile { algebra: ws.algebra.clone(), generator: g, certificate: cert };
    let body = certificate_to_string(&file);
    let level = file.certificate.claimed_level();
    let nodes = file.certificate.root.size();
    let mut text = format!("certificate for {complex}: level {level}, {nodes} nodes, self-check {}\n", verdict_word(&verdict));
    match out {
        Some(p) => {
            write_file(p, &body)?;
            text.push_str(&format!("written to {}\n", p.display()));
        }
        None => text.push_str(&body),
    }
    let json = serde_json::json!({
        "complex": complex,
        "generator": generator,
        "level": level,
        "nodes": nodes,
        "self_check": verdict_word(&verdict),
        "out": out.map(|p| p.display().to_string()),
    });
    Ok(Outcome { text, json, code: if verdict.is_accept() { 0 } else { 1 } })
}

fn verdict_word(v: &Verdict) -> &'static str {
    if v.is_accept() {
        "accept"
    } else {
        "reject"
    }
}

pub fn verify_text(text: &str) -> Result<Outcome, CliError> {
    let file = parse_certificate(text).map_err(|source| CliError::Parse { path: "certificate".into(), source })?;
    Ok(match verify_certificate(&file.certificate, &file.generator) {
        Verdict::Accept { level } => Outcome::ok(
            format!("accept: level {level}\n"),
            &serde_json::json!({ "verdict": "accept", "level": level }),
        ),
        Verdict::Reject { path, reason } => Outcome::ok(
            format!("reject at {path}: {reason}\n"),
            &serde_json::json!({ "verdict": "reject", "path": path, "reason": reason }),
        )
        .with_code(1),
    })
}

pub fn cmd_verify(path: &Path) -> Result<Outcome, CliError> {
    let text = read_file(path)?;
    verify_text(&text).map_err(|e| match e {
        CliError::Parse { source, .. } => CliError::Parse { path: path.display().to_string(), source },
        e => e,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundModeArg {
    Plain,
    Syzygy,
    Gorenstein,
}

/// `d` is a non-negative integer or `inf`.
pub fn parse_dim(s: &str) -> Result<DimInput, String> {
    match s {
        "inf" | "infinite" => Ok(DimInput::Infinite),
        _ => s.parse().map(DimInput::Finite).map_err(|_| format!("expected a number or `inf`, got `{s}`")),
    }
}

pub fn cmd_bound(d: DimInput, mode: BoundModeArg) -> Outcome {
    let mode = match mode {
        BoundModeArg::Plain => BoundMode::Plain,
        BoundModeArg::Syzygy => BoundMode::Syzygy,
        BoundModeArg::Gorenstein => BoundMode::Gorenstein,
    };
    let report = derived_dim_bound(d, mode);
    let mut text = String::new();
    let mut lines = Vec::new();
    for l in &report.lines {
        text.push_str(&l.render());
        text.push('\n');
        lines.push(serde_json::json!({ "theorem": l.theorem, "hypothesis": l.hypothesis, "bound": l.bound }));
    }
    let best = report.lines.iter().filter_map(|l| l.bound).min();
    Outcome::ok(text, &serde_json::json!({ "lines": lines, "best": best }))
}

pub fn cmd_semires_check(ws: &Workspace, generator: &str, samples: usize, max_dim: usize) -> Result<Outcome, CliError> {
    let g = ws.generator(generator)?;
    let mut modules: Vec<(String, Module)> = ws.objects.modules.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(ws.seed);
    for i in 0..samples {
        modules.push((format!("random{i}"), random_module(&ws.algebra, max_dim, &mut rng)));
    }
    let list: Vec<Module> = modules.iter().map(|(_, m)| m.clone()).collect();
    let results = check_semi_resolving_samples(&g, &list, ws.cap)?;
    let mut counts = [0usize; 3];
    let mut failures = Vec::new();
    let mut text = String::new();
    for ((name, m), r) in modules.iter().zip(&results) {
        let k = match r.verdict {
            SampleVerdict::Pass => 0,
            SampleVerdict::Fail => 1,
            SampleVerdict::Inconclusive => 2,
        };
        counts[k] += 1;
        if r.verdict == SampleVerdict::Fail {
            text.push_str(&format!(
                "counterexample {name}: xdim {} but kernel xdim {} ({})\n",
                xdim_str(r.xdim_sample),
                xdim_str(r.xdim_kernel),
                r.note
            ));
            text.push_str(&module_to_string(name, m));
            failures.push(serde_json::json!({
                "name": name,
                "dims": m.dims(),
                "xdim": xdim_json(r.xdim_sample),
                "kernel_xdim": xdim_json(r.xdim_kernel),
                "note": r.note,
            }));
        }
    }
    let verdict = if counts[1] > 0 {
        "refuted"
    } else if counts[2] > 0 {
        "inconclusive"
    } else {
        "no counterexample"
    };
    text.push_str(&format!(
        "{} samples: {} pass, {} fail, {} inconclusive; {verdict}\n",
        results.len(),
        counts[0],
        counts[1],
        counts[2]
    ));
    let json = serde_json::json!({
        "generator": generator,
        "samples": results.len(),
        "pass": counts[0],
        "fail": counts[1],
        "inconclusive": counts[2],
        "verdict": verdict,
        "failures": failures,
    });
    Ok(Outcome { text, json, code: if counts[1] > 0 { 1 } else { 0 } })
}
