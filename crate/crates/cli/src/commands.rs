//! Implementations of the command-line verbs.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use flagkneser_core::certificate::Certificate;
use flagkneser_core::constructions::pg_coloring;
use flagkneser_core::graph::Graph;
use flagkneser_core::solvers::{chromatic_number, max_independent_set};

use crate::budget::Budget;
use crate::checks::{coloring_hint, Options, SEARCH_MAX_VERTICES};
use crate::formats::{self, FormatError};
use crate::objects::{chamber_complex, flag_complex, load_gq, BuildError, GqSource};
use crate::report::{consolidate, Consolidated, Store};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Check(#[from] crate::checks::CheckError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What a command operates on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Pg(u32),
    Gq(GqSource),
    Dimacs(PathBuf),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Pg(q) => format!("pg-q{q}"),
            Target::Gq(s) => s.label(),
            Target::Dimacs(p) => {
                let stem = p.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
                format!("dimacs-{stem}")
            }
        }
    }
}

struct Built {
    graph: Graph,
    labels: Option<String>,
    hint: Option<Certificate>,
}

fn build_target(target: &Target, force: bool) -> Result<Built, CommandError> {
    Ok(match target {
        Target::Pg(q) => {
            let cc = chamber_complex(*q, force)?;
            let plane = cc.geometry.line_planes(0)[0];
            let (_, coloring) = pg_coloring(&cc, 0, plane).expect("plane contains the line");
            Built { labels: Some(formats::chamber_labels(&cc.chambers)), hint: Some(coloring), graph: cc.graph }
        }
        Target::Gq(source) => {
            let t = load_gq(source.clone())?;
            let fc = flag_complex(&t)?;
            let (hint, _, _) = coloring_hint(&t, &fc);
            Built { labels: Some(formats::flag_labels(&fc.flags)), hint, graph: fc.graph }
        }
        Target::Dimacs(path) => {
            let f = fs::File::open(path)?;
            Built { graph: formats::read_dimacs(BufReader::new(f))?, labels: None, hint: None }
        }
    })
}

/// Writes `<label>.dimacs`, `<label>.labels.tsv` and `<label>.fingerprint`.
pub fn build(target: &Target, out: &Path, force: bool) -> Result<Value, CommandError> {
    let b = build_target(target, force)?;
    fs::create_dir_all(out)?;
    let label = target.label();
    let dimacs = out.join(format!("{label}.dimacs"));
    fs::write(&dimacs, formats::dimacs_string(&b.graph))?;
    if let Some(l) = &b.labels {
        fs::write(out.join(format!("{label}.labels.tsv")), l)?;
    }
    let fp = b.graph.fingerprint();
    fs::write(out.join(format!("{label}.fingerprint")), format!("{fp}\n"))?;
    Ok(json!({
        "target": label,
        "vertices": b.graph.order(),
        "edges": b.graph.edge_count(),
        "regular_degree": b.graph.regular_degree(),
        "fingerprint": fp,
        "dimacs": dimacs.display().to_string(),
    }))
}

/// Chromatic number bracket with a stored coloring certificate.
pub fn color(target: &Target, opts: &Options, store: &Store) -> Result<Value, CommandError> {
    let b = build_target(target, opts.force)?;
    let g = &b.graph;
    store.put_graph(g)?;
    let alpha = if g.order() <= SEARCH_MAX_VERTICES {
        let r = max_independent_set(g, None, &mut Budget::new(opts.timeout, opts.max_nodes));
        r.optimal.then_some(r.value)
    } else {
        None
    };
    let r = chromatic_number(g, b.hint.as_ref(), None, alpha, &mut Budget::new(opts.timeout, opts.max_nodes));
    let path = store.put_certificate(&format!("{}.color", target.label()), &r.witness)?;
    Ok(json!({
        "target": target.label(),
        "vertices": g.order(),
        "alpha": alpha,
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact(),
        "certificate": path,
    }))
}

pub fn report(store: &Store) -> Result<Consolidated, CommandError> {
    Ok(consolidate(store)?)
}
