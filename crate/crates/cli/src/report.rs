//! Check reports, the on-disk output store and the consolidated report.
//!
//! Layout of an output directory:
//!
//! ```text
//! graphs/<fingerprint>.dimacs
//! certificates/<target>.<check>[.<n>].json
//! reports/<target>.<check>.json
//! ```
//!
//! Certificates name their graph by fingerprint, so any certificate can be
//! re-verified from the two files alone.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use flagkneser_core::certificate::Certificate;
use flagkneser_core::graph::Graph;

use crate::formats::{self, FormatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    ReportedOnly,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub expected: String,
    pub anchor: String,
}

/// Outcome of one check. Field order is the serialized key order; maps are
/// sorted by key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub claim: Claim,
    pub observed: Value,
    pub status: Status,
    /// Paths relative to the output directory.
    pub certificates: Vec<String>,
    pub runtime_ms: u64,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes graphs, certificates and reports below one directory.
#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

impl Store {
    pub fn create(root: impl Into<PathBuf>) -> io::Result<Store> {
        let root = root.into();
        for sub in ["graphs", "certificates", "reports"] {
            fs::create_dir_all(root.join(sub))?;
        }
        Ok(Store { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn graph_path(&self, fingerprint: &str) -> PathBuf {
        self.root.join("graphs").join(format!("{fingerprint}.dimacs"))
    }

    /// Writes the graph unless a file for its fingerprint exists.
    pub fn put_graph(&self, g: &Graph) -> io::Result<()> {
        let path = self.graph_path(&g.fingerprint());
        if !path.exists() {
            fs::write(&path, formats::dimacs_string(g))?;
        }
        Ok(())
    }

    /// Writes a certificate and returns its path relative to the root.
    pub fn put_certificate(&self, name: &str, c: &Certificate) -> io::Result<String> {
        let rel = format!("certificates/{name}.json");
        formats::write_certificate(&self.root.join(&rel), c)?;
        Ok(rel)
    }

    pub fn put_report(&self, target: &str, r: &Report) -> io::Result<()> {
        fs::write(self.root.join("reports").join(format!("{target}.{}.json", r.check_id)), to_json(r))
    }

    /// All reports, ordered by file name.
    pub fn reports(&self) -> Result<Vec<Report>, FormatError> {
        let dir = self.root.join("reports");
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
        paths.sort();
        paths.iter().map(|p| Ok(serde_json::from_str(&fs::read_to_string(p)?)?)).collect()
    }

    /// Re-verifies a stored certificate against its stored graph.
    pub fn reverify(&self, rel: &str) -> CertificateCheck {
        let path = self.root.join(rel);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) => return CertificateCheck::failed(rel, String::new(), e.to_string()),
        };
        let digest = hex(&Sha256::digest(&bytes));
        let cert: Certificate = match serde_json::from_slice(&bytes) {
            Ok(c) => c,
            Err(e) => return CertificateCheck::failed(rel, digest, e.to_string()),
        };
        let graph = match fs::File::open(self.graph_path(&cert.graph_fingerprint))
            .map_err(FormatError::from)
            .and_then(|f| formats::read_dimacs(BufReader::new(f)))
        {
            Ok(g) => g,
            Err(e) => return CertificateCheck::failed(rel, digest, format!("graph: {e}")),
        };
        match cert.verify(&graph) {
            Ok(()) => CertificateCheck { path: rel.to_string(), sha256: digest, reverified: true, violation: None },
            Err(v) => CertificateCheck::failed(rel, digest, v.to_string()),
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub path: String,
    pub sha256: String,
    pub reverified: bool,
    pub violation: Option<String>,
}

impl CertificateCheck {
    fn failed(path: &str, sha256: String, why: String) -> Self {
        CertificateCheck { path: path.to_string(), sha256, reverified: false, violation: Some(why) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Consolidated {
    pub reports: Vec<Report>,
    pub certificates: Vec<CertificateCheck>,
    pub summary: BTreeMap<String, usize>,
    /// False if a check was refuted or a certificate failed to re-verify.
    pub ok: bool,
}

pub fn consolidate(store: &Store) -> Result<Consolidated, FormatError> {
    let reports = store.reports()?;
    let mut paths: Vec<&String> = reports.iter().flat_map(|r| &r.certificates).collect();
    paths.sort();
    paths.dedup();
    let certificates: Vec<CertificateCheck> = paths.into_iter().map(|p| store.reverify(p)).collect();
    let mut summary = BTreeMap::new();
    for st in [Status::Verified, Status::Refuted, Status::ReportedOnly, Status::Timeout] {
        let key = serde_json::to_value(st).expect("status").as_str().expect("string").to_string();
        summary.insert(key, reports.iter().filter(|r| r.status == st).count());
    }
    let ok = reports.iter().all(|r| r.status != Status::Refuted) && certificates.iter().all(|c| c.reverified);
    Ok(Consolidated { reports, certificates, summary, ok })
}
