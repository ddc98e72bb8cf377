//! Building chamber and flag complexes for the supported targets.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use flagkneser_core::projective::{opposition_row, ChamberComplex, Geometry, ProjectiveError};
use flagkneser_core::quadrangle::{
    h4_hermitian, q4_quadric, w_symplectic, ClassicalGq, FlagComplex, IncidenceGq, ModelError, NotGq, Thickness,
    TooManyFlags,
};

use crate::formats::{self, FormatError};

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("not a generalized quadrangle: {0}")]
    NotGq(NotGq),
    #[error(transparent)]
    TooManyFlags(#[from] TooManyFlags),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
}

/// Which quadrangle to load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GqSource {
    W(u32),
    Q4(u32),
    H4,
    File(PathBuf),
}

impl GqSource {
    /// Short label used in file names.
    pub fn label(&self) -> String {
        match self {
            GqSource::W(q) => format!("w-q{q}"),
            GqSource::Q4(q) => format!("q4-q{q}"),
            GqSource::H4 => "h4-q4".to_string(),
            GqSource::File(p) => {
                let stem = p.file_stem().map_or("gq".into(), |s| s.to_string_lossy().into_owned());
                format!("file-{stem}")
            }
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            GqSource::W(_) => "W(q)",
            GqSource::Q4(_) => "Q(4,q)",
            GqSource::H4 => "H(4,4)",
            GqSource::File(_) => "file",
        }
    }

    pub fn q(&self) -> Option<u32> {
        match self {
            GqSource::W(q) | GqSource::Q4(q) => Some(*q),
            GqSource::H4 => Some(4),
            GqSource::File(_) => None,
        }
    }
}

/// A loaded quadrangle, with its classical model when there is one.
#[derive(Debug, Clone)]
pub struct GqTarget {
    pub source: GqSource,
    pub model: Option<ClassicalGq>,
    pub gq: IncidenceGq,
}

pub fn load_gq(source: GqSource) -> Result<GqTarget, BuildError> {
    let model = match &source {
        GqSource::W(q) => Some(w_symplectic(*q)?),
        GqSource::Q4(q) => Some(q4_quadric(*q)?),
        GqSource::H4 => Some(h4_hermitian()?),
        GqSource::File(_) => None,
    };
    let gq = match (&model, &source) {
        (Some(m), _) => m.gq.clone(),
        (None, GqSource::File(path)) => read_gq_file(path)?,
        (None, _) => unreachable!("classical sources always have a model"),
    };
    if !gq.is_thick() {
        let (s, t) = gq.order();
        return Err(BuildError::NotGq(NotGq::NotThick { s, t }));
    }
    Ok(GqTarget { source, model, gq })
}

pub fn read_gq_file(path: &Path) -> Result<IncidenceGq, BuildError> {
    let file_err = |source| BuildError::File { path: path.to_path_buf(), source };
    let text = fs::read_to_string(path).map_err(|e| file_err(FormatError::Io(e)))?;
    let raw = formats::parse_gq(&text).map_err(file_err)?;
    IncidenceGq::verify(&raw, Thickness::Required).map_err(BuildError::NotGq)
}

pub fn flag_complex(target: &GqTarget) -> Result<FlagComplex, BuildError> {
    Ok(FlagComplex::new(target.gq.clone())?)
}

/// Chamber complex of PG(3, q) with rows built on the current rayon pool.
pub fn chamber_complex(q: u32, force: bool) -> Result<ChamberComplex, BuildError> {
    let geometry = Geometry::new(3, q)?;
    Ok(ChamberComplex::with_rows(geometry, force, |g, chambers| {
        (0..chambers.len()).into_par_iter().map(|i| opposition_row(g, chambers, i)).collect()
    })?)
}

/// Runs `f` on a pool with the given number of threads, or on the global
/// pool when `threads` is `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}
