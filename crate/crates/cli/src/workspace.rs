use std::path::Path;
use std::sync::Arc;

use derdim_core::algebra::Algebra;
use derdim_core::complexes::Complex;
use derdim_core::homological::{Generator, DEFAULT_CAP, DEFAULT_SEED};
use derdim_core::module::{indecomposable_projective, regular_module, Module};

use crate::format::{parse_algebra, parse_objects, Objects, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

impl From<derdim_core::Error> for CliError {
    fn from(e: derdim_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// One algebra and the named objects loaded over it.
pub struct Workspace {
    pub algebra: Arc<Algebra>,
    pub objects: Objects,
    pub seed: u64,
    pub cap: usize,
}

impl Workspace {
    pub fn new(algebra: Arc<Algebra>) -> Self {
        Workspace { algebra, objects: Objects::default(), seed: DEFAULT_SEED, cap: DEFAULT_CAP }
    }

    pub fn load(algebra: &Path, objects: Option<&Path>) -> Result<Self, CliError> {
        let alg = parse_algebra(&read_file(algebra)?)
            .map_err(|source| CliError::Parse { path: algebra.display().to_string(), source })?;
        let mut ws = Workspace::new(alg);
        if let Some(p) = objects {
            ws.objects = parse_objects(&ws.algebra, &read_file(p)?)
                .map_err(|source| CliError::Parse { path: p.display().to_string(), source })?;
        }
        Ok(ws)
    }

    fn vertex(&self, name: &str) -> Result<usize, CliError> {
        self.algebra
            .presentation()
            .vertex_by_name(name)
            .ok_or_else(|| CliError::Input(format!("unknown vertex `{name}`")))
    }

    /// A named module, or `@regular`, `@projective:V`, `@simple:V`.
    pub fn module(&self, name: &str) -> Result<Module, CliError> {
        if name == "@regular" {
            return Ok(regular_module(&self.algebra)?);
        }
        if let Some(v) = name.strip_prefix("@projective:") {
            return Ok(indecomposable_projective(&self.algebra, self.vertex(v)?)?);
        }
        if let Some(v) = name.strip_prefix("@simple:") {
            return Ok(Module::simple(&self.algebra, self.vertex(v)?)?);
        }
        self.objects.module(name).cloned().ok_or_else(|| CliError::Input(format!("no module named `{name}`")))
    }

    pub fn complex(&self, name: &str) -> Result<Complex, CliError> {
        self.objects.complex(name).cloned().ok_or_else(|| CliError::Input(format!("no complex named `{name}`")))
    }

    /// A named generator, or `@projectives` for `add Λ`; reseeded with the
    /// workspace seed.
    pub fn generator(&self, name: &str) -> Result<Generator, CliError> {
        let (m, declared) = if name == "@projectives" {
            (regular_module(&self.algebra)?, true)
        } else {
            let g = self
                .objects
                .generator(name)
                .ok_or_else(|| CliError::Input(format!("no generator named `{name}`")))?;
            (g.module().clone(), g.declared_semi_resolving())
        };
        Ok(Generator::with_seed(m, declared, self.seed)?)
    }
}
