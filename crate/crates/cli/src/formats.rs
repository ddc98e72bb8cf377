//! Text formats: DIMACS graphs, GQ incidence files, certificate JSON and
//! vertex label tables.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use flagkneser_core::certificate::Certificate;
use flagkneser_core::graph::{Graph, GraphError};
use flagkneser_core::projective::Chamber;
use flagkneser_core::quadrangle::{Flag, IncidenceGq, RawIncidence};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid graph: {0:?}")]
    Graph(GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// `p edge n m` followed by one `e i j` line per edge, 1-based, i < j,
/// edges in row-major order.
pub fn write_dimacs(g: &Graph, mut w: impl Write) -> io::Result<()> {
    let mut buf = String::new();
    writeln!(buf, "p edge {} {}", g.order(), g.edge_count()).unwrap();
    for (i, j) in g.edges() {
        writeln!(buf, "e {} {}", i + 1, j + 1).unwrap();
    }
    w.write_all(buf.as_bytes())
}

pub fn dimacs_string(g: &Graph) -> String {
    let mut out = Vec::new();
    write_dimacs(g, &mut out).expect("write to memory");
    String::from_utf8(out).expect("ascii")
}

/// Reads a DIMACS edge file. `c` lines are comments; repeated edges are
/// accepted once.
pub fn read_dimacs(r: impl BufRead) -> Result<Graph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut declared = 0usize;
    for (no, line) in r.lines().enumerate() {
        let line = line?;
        let no = no + 1;
        let mut it = line.split_whitespace();
        match it.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(no, "second problem line"));
                }
                if it.next() != Some("edge") {
                    return Err(syntax(no, "expected `p edge n m`"));
                }
                let nv = parse_usize(it.next(), no)?;
                declared = parse_usize(it.next(), no)?;
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| syntax(no, "edge before problem line"))?;
                let a = parse_usize(it.next(), no)?;
                let b = parse_usize(it.next(), no)?;
                if a == 0 || b == 0 || a > nv || b > nv {
                    return Err(syntax(no, format!("vertex out of range 1..={nv}")));
                }
                if a == b {
                    return Err(syntax(no, "loop"));
                }
                edges.push((a - 1, b - 1));
            }
            Some(other) => return Err(syntax(no, format!("unknown line type `{other}`"))),
        }
        if it.next().is_some() {
            return Err(syntax(no, "trailing tokens"));
        }
    }
    let n = n.ok_or_else(|| syntax(0, "missing problem line"))?;
    let g = Graph::from_edges(n, edges).map_err(FormatError::Graph)?;
    if g.edge_count() != declared {
        return Err(syntax(0, format!("header declares {declared} edges, found {}", g.edge_count())));
    }
    Ok(g)
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing number"))?;
    tok.parse().map_err(|_| syntax(line, format!("not a number: `{tok}`")))
}

/// GQ incidence text: `gq <n_points> <n_lines>`, then one line of 0-based
/// point ids per GQ line. `#` starts a comment.
pub fn parse_gq(text: &str) -> Result<RawIncidence, FormatError> {
    let mut header = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        if header.is_none() {
            if it.next() != Some("gq") {
                return Err(syntax(no, "expected `gq <n_points> <n_lines>`"));
            }
            let np = parse_usize(it.next(), no)?;
            let nl = parse_usize(it.next(), no)?;
            if it.next().is_some() {
                return Err(syntax(no, "trailing tokens"));
            }
            header = Some((np, nl));
            continue;
        }
        let pts = it.map(|t| parse_usize(Some(t), no)).collect::<Result<Vec<_>, _>>()?;
        lines.push(pts);
    }
    let (n_points, n_lines) = header.ok_or_else(|| syntax(0, "missing header"))?;
    if lines.len() != n_lines {
        return Err(syntax(0, format!("header declares {n_lines} lines, found {}", lines.len())));
    }
    Ok(RawIncidence { n_points, lines })
}

pub fn gq_string(gq: &IncidenceGq) -> String {
    let mut s = format!("gq {} {}\n", gq.n_points(), gq.n_lines());
    for l in gq.lines() {
        let row: Vec<String> = l.iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Pretty JSON with a trailing newline. Key order follows the struct.
pub fn certificate_string(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("certificate serializes");
    s.push('\n');
    s
}

pub fn write_certificate(path: &Path, c: &Certificate) -> io::Result<()> {
    fs::write(path, certificate_string(c))
}

pub fn read_certificate(path: &Path) -> Result<Certificate, FormatError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn chamber_labels(chambers: &[Chamber]) -> String {
    let mut s = String::from("vertex\tpoint\tline\tplane\n");
    for (i, c) in chambers.iter().enumerate() {
        writeln!(s, "{}\t{}\t{}\t{}", i + 1, c.point, c.line, c.plane).unwrap();
    }
    s
}

pub fn flag_labels(flags: &[Flag]) -> String {
    let mut s = String::from("vertex\tpoint\tline\n");
    for (i, f) in flags.iter().enumerate() {
        writeln!(s, "{}\t{}\t{}", i + 1, f.point, f.line).unwrap();
    }
    s
}
