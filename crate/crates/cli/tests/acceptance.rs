//! Acceptance run: one line per criterion. Expected values are recomputed
//! here from closed formulas or naive oracles; the library output is only
//! ever compared against them.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use flagkneser::checks::{verify_gq, verify_pg, Options};
use flagkneser::formats::{read_certificate, read_dimacs};
use flagkneser::objects::{flag_complex, load_gq, with_threads, GqSource};
use flagkneser::report::{consolidate, Report, Status, Store};
use flagkneser_core::certificate::{Certificate, CertificateKind};
use flagkneser_core::graph::Graph;
use flagkneser_core::quadrangle::{FlagComplex, IncidenceGq};
use flagkneser_core::solvers::{chromatic_number, enumerate_maximal_independent_sets, max_independent_set, Unlimited};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Reports of one target, by check id, with the wall time of the run.
struct TargetRun {
    reports: BTreeMap<String, Report>,
    elapsed: Duration,
}

struct Suite {
    store: Store,
    targets: BTreeMap<String, TargetRun>,
}

const GQ_TARGETS: [GqSource; 5] = [GqSource::W(2), GqSource::Q4(2), GqSource::W(3), GqSource::Q4(3), GqSource::H4];
const PG_ORDERS: [u32; 3] = [2, 3, 4];

fn options() -> Options {
    Options { timeout: None, ..Options::default() }
}

fn run_suite(root: &Path, threads: usize) -> Suite {
    let store = Store::create(root).expect("store");
    let mut targets = BTreeMap::new();
    with_threads(Some(threads), || {
        for source in GQ_TARGETS.iter().cloned() {
            let start = Instant::now();
            let label = source.label();
            let target = load_gq(source).expect("classical quadrangle");
            let reports = verify_gq(&target, &options(), &store).expect("gq checks");
            targets.insert(label, TargetRun { reports: by_check(reports), elapsed: start.elapsed() });
        }
        for q in PG_ORDERS {
            let start = Instant::now();
            let reports = verify_pg(q, &options(), &store).expect("pg checks");
            targets.insert(format!("pg-q{q}"), TargetRun { reports: by_check(reports), elapsed: start.elapsed() });
        }
    });
    Suite { store, targets }
}

fn by_check(reports: Vec<Report>) -> BTreeMap<String, Report> {
    reports.into_iter().map(|r| (r.check_id.clone(), r)).collect()
}

impl Suite {
    fn report(&self, target: &str, check: &str) -> Result<&Report, String> {
        self.targets
            .get(target)
            .and_then(|t| t.reports.get(check))
            .ok_or_else(|| format!("{target}: no {check} report"))
    }

    fn elapsed(&self, target: &str) -> Duration {
        self.targets[target].elapsed
    }

    fn certificate(&self, report: &Report, index: usize) -> Result<Certificate, String> {
        let rel = report.certificates.get(index).ok_or_else(|| format!("{}: missing certificate", report.check_id))?;
        read_certificate(&self.store.root().join(rel)).map_err(|e| format!("{rel}: {e}"))
    }

    fn graph_of(&self, c: &Certificate) -> Result<Graph, String> {
        let path = self.store.graph_path(&c.graph_fingerprint);
        let text = fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        read_dimacs(text.as_slice()).map_err(|e| e.to_string())
    }
}

fn observed<'a>(r: &'a Report, key: &str) -> &'a Value {
    &r.observed[key]
}

fn observed_usize(r: &Report, key: &str) -> Result<usize, String> {
    observed(r, key).as_u64().map(|v| v as usize).ok_or_else(|| format!("{}: `{key}` is not a number", r.check_id))
}

fn ensure_status(r: &Report, status: Status) -> Result<(), String> {
    ensure!(r.status == status, "{}: status {:?}, expected {:?}", r.check_id, r.status, status);
    Ok(())
}

// Naive oracles on adjacency bitmasks (n <= 64).

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.order() <= 64);
    (0..g.order()).map(|i| (0..g.order()).filter(|&j| g.adjacent(i, j)).fold(0, |m, j| m | 1 << j)).collect()
}

fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(k, &a)| set[k + 1..].iter().all(|&b| a != b && !g.adjacent(a, b)))
}

fn is_maximal_independent(g: &Graph, set: &[usize]) -> bool {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    is_independent(g, set) && (0..g.order()).all(|v| inside.contains(&v) || set.iter().any(|&u| g.adjacent(u, v)))
}

fn oracle_alpha(adj: &[u64]) -> usize {
    let n = adj.len();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Every maximal independent set, each sorted, in lexicographic order.
fn oracle_maximal_sets(adj: &[u64]) -> Vec<Vec<usize>> {
    fn walk(adj: &[u64], v: usize, set: u64, out: &mut Vec<Vec<usize>>) {
        let n = adj.len();
        if v == n {
            let dominated = (0..n).all(|u| set >> u & 1 == 1 || adj[u] & set != 0);
            if dominated {
                out.push((0..n).filter(|&u| set >> u & 1 == 1).collect());
            }
            return;
        }
        if adj[v] & set == 0 {
            walk(adj, v + 1, set | 1 << v, out);
        }
        walk(adj, v + 1, set, out);
    }
    let mut out = Vec::new();
    walk(adj, 0, 0, &mut out);
    out.sort();
    out
}

fn oracle_chromatic(adj: &[u64]) -> usize {
    fn extend(adj: &[u64], colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == adj.len() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| colors[u] != c || adj[v] >> u & 1 == 0) {
                colors.push(c);
                if extend(adj, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=adj.len()).find(|&k| extend(adj, &mut Vec::new(), k)).expect("n colors always suffice")
}

fn check_coloring(g: &Graph, c: &Certificate) -> Result<(), String> {
    ensure!(c.kind == CertificateKind::ProperColoring, "kind {:?}", c.kind);
    let mut seen = vec![0usize; g.order()];
    for class in &c.vertex_sets {
        ensure!(is_independent(g, class), "a color class contains an edge");
        for &v in class {
            seen[v] += 1;
        }
    }
    ensure!(seen.iter().all(|&k| k == 1), "classes do not partition the vertices");
    Ok(())
}

fn check_cover(g: &Graph, c: &Certificate) -> Result<(), String> {
    let mut seen = vec![false; g.order()];
    for set in &c.vertex_sets {
        ensure!(is_independent(g, set), "a cover set contains an edge");
        for &v in set {
            seen[v] = true;
        }
    }
    ensure!(seen.iter().all(|&s| s), "cover misses a vertex");
    Ok(())
}

/// Flag opposition rebuilt from incidence: distinct non-collinear points on
/// disjoint lines.
fn oracle_flag_graph(fc: &FlagComplex) -> Graph {
    let gq = &fc.gq;
    let collinear = |a: usize, b: usize| gq.lines().iter().any(|l| l.contains(&a) && l.contains(&b));
    let meet = |a: usize, b: usize| gq.line(a).iter().any(|p| gq.line(b).contains(p));
    Graph::from_fn(fc.flags.len(), |i, j| {
        let (f, g) = (fc.flags[i], fc.flags[j]);
        !collinear(f.point, g.point) && !meet(f.line, g.line)
    })
}

/// Pencils of a quadrangle as sorted flag index sets: flags on a line
/// through a point, and flags with their point on a line.
fn oracle_pencils(fc: &FlagComplex) -> BTreeSet<Vec<usize>> {
    let gq: &IncidenceGq = &fc.gq;
    let mut out = BTreeSet::new();
    for p in 0..gq.n_points() {
        out.insert((0..fc.flags.len()).filter(|&i| gq.line(fc.flags[i].line).contains(&p)).collect());
    }
    for l in 0..gq.n_lines() {
        out.insert((0..fc.flags.len()).filter(|&i| gq.line(l).contains(&fc.flags[i].point)).collect());
    }
    out
}

fn gq_params(fc: &FlagComplex) -> (usize, usize) {
    let gq = &fc.gq;
    (gq.line(0).len() - 1, gq.lines_on(0).len() - 1)
}

fn criterion_1(suite: &Suite) -> Outcome {
    let fc = flag_complex(&load_gq(GqSource::W(2)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (s, t) = gq_params(&fc);
    let alpha = (s + 1) * (t + 1);
    let bound = (1 + s + 2 * t).max(1 + t + 2 * s);
    let chi = s * t + 1;
    let graph = oracle_flag_graph(&fc);
    ensure!(graph.order() == 45, "{} flags", graph.order());

    let r = suite.report("w-q2", "gq-alpha")?;
    ensure_status(r, Status::Verified)?;
    ensure!(observed_usize(r, "value")? == alpha, "alpha {}", observed(r, "value"));
    let witness = suite.certificate(r, 0)?;
    ensure!(
        suite.graph_of(&witness)?.fingerprint() == graph.fingerprint(),
        "stored graph differs from the oracle graph"
    );
    ensure!(witness.set().len() == alpha && is_independent(&graph, witness.set()), "alpha witness");

    let all = oracle_maximal_sets(&masks(&graph));
    ensure!(all.iter().map(Vec::len).max() == Some(alpha), "oracle alpha differs");
    ensure!(
        all.iter().all(|m| m.len() == alpha || m.len() <= bound),
        "oracle finds a maximal set of size in {}..{alpha}",
        bound + 1
    );
    let r = suite.report("w-q2", "gq-maximal-sets")?;
    ensure_status(r, Status::Verified)?;
    let mut sizes = BTreeMap::new();
    for m in &all {
        *sizes.entry(m.len().to_string()).or_insert(0u64) += 1;
    }
    ensure!(
        observed(r, "sizes") == &serde_json::to_value(&sizes).unwrap(),
        "size histogram {} vs oracle {sizes:?}",
        observed(r, "sizes")
    );

    let pencils = oracle_pencils(&fc);
    let maximum: Vec<&Vec<usize>> = all.iter().filter(|m| m.len() == alpha).collect();
    let pencil_count = maximum.iter().filter(|m| pencils.contains(**m)).count();
    ensure!(pencil_count == pencils.len(), "{pencil_count} of {} pencils are maximum sets", pencils.len());
    let others = maximum.len() - pencil_count;
    ensure!(observed_usize(r, "pencils")? == pencil_count, "pencil count");
    ensure!(
        observed_usize(r, "grid_sets")? == others && observed_usize(r, "other_maximum_sets")? == 0,
        "non-pencil maximum sets are not all grid sets"
    );

    let r = suite.report("w-q2", "gq-chromatic")?;
    ensure_status(r, Status::Verified)?;
    ensure!(observed_usize(r, "exact")? == chi, "chi {}", observed(r, "exact"));
    ensure!(observed(r, "upper_source") == "spread", "upper source {}", observed(r, "upper_source"));
    ensure!(observed(r, "lower_reason")["kind"] == "fractional", "lower reason {}", observed(r, "lower_reason"));
    ensure!(graph.order().div_ceil(alpha) == chi, "pigeonhole bound");
    let coloring = suite.certificate(r, 0)?;
    check_coloring(&graph, &coloring)?;
    ensure!(coloring.len() == chi, "{} colors", coloring.len());

    let elapsed = suite.elapsed("w-q2");
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!(
        "45 flags, alpha {alpha}, maximal sizes {sizes:?}, {pencil_count} pencils + {others} grid sets, chi {chi} ({elapsed:.2?})"
    ))
}

fn criterion_2(suite: &Suite) -> Outcome {
    let mut found = Vec::new();
    for (label, q) in [("q4-q2", 2usize), ("q4-q3", 3)] {
        let r = suite.report(label, "gq-sharpness")?;
        ensure_status(r, Status::Verified)?;
        let c = suite.certificate(r, 0)?;
        let g = suite.graph_of(&c)?;
        let (s, t) = (q, q);
        ensure!(c.set().len() == t + 1 + 2 * s, "{label}: size {}", c.set().len());
        ensure!(is_maximal_independent(&g, c.set()), "{label}: set is not maximal independent");
        ensure!(r.runtime_ms < 10_000, "{label}: {} ms", r.runtime_ms);
        found.push(format!("{label} size {}", c.set().len()));
    }
    Ok(found.join(", "))
}

fn criterion_3(suite: &Suite) -> Outcome {
    let mut found = Vec::new();
    for label in ["w-q3", "q4-q3"] {
        let (s, t) = (3usize, 3usize);
        let alpha = (s + 1) * (t + 1);
        let bound = (1 + s + 2 * t).max(1 + t + 2 * s);
        let flags = (s + 1) * (s * t + 1) * (t + 1);
        let chi = flags.div_ceil(alpha);

        let r = suite.report(label, "gq-alpha")?;
        ensure_status(r, Status::Verified)?;
        ensure!(observed_usize(r, "value")? == alpha, "{label}: alpha {}", observed(r, "value"));
        let w = suite.certificate(r, 0)?;
        let g = suite.graph_of(&w)?;
        ensure!(g.order() == flags, "{label}: {} flags", g.order());
        ensure!(w.set().len() == alpha && is_independent(&g, w.set()), "{label}: alpha witness");

        let r = suite.report(label, "gq-maximal-sets")?;
        ensure_status(r, Status::Verified)?;
        ensure!(observed(r, "complete") == true, "{label}: enumeration incomplete");
        ensure!(observed_usize(r, "threshold")? <= bound + 1, "{label}: threshold too high");
        let sizes = observed(r, "sizes").as_object().ok_or("sizes")?;
        let between: Vec<&String> = sizes.keys().filter(|k| (bound + 1..alpha).contains(&k.parse().unwrap())).collect();
        ensure!(between.is_empty(), "{label}: maximal sets of sizes {between:?}");

        let r = suite.report(label, "gq-chromatic")?;
        ensure_status(r, Status::Verified)?;
        ensure!(observed_usize(r, "exact")? == chi, "{label}: chi {}", observed(r, "exact"));
        ensure!(observed_usize(r, "nodes")? == 0, "{label}: coloring needed search");
        let c = suite.certificate(r, 0)?;
        check_coloring(&g, &c)?;
        ensure!(c.len() == chi, "{label}: {} colors", c.len());
        let elapsed = suite.elapsed(label);
        ensure!(elapsed < Duration::from_secs(1800), "{label}: took {elapsed:?}");
        found.push(format!(
            "{label}: alpha {alpha}, none of size {}..={}, chi {chi} by {}",
            bound + 1,
            alpha - 1,
            observed(r, "upper_source")
        ));
    }
    Ok(found.join("; "))
}

fn criterion_4(suite: &Suite) -> Outcome {
    let q = 2usize;
    let alpha = (q * q + q + 1) * (q + 1) * (q + 1);
    let pencils = 2 * (q * q + 1) * (q + 1);
    let classes = q * q + q;

    let r = suite.report("pg-q2", "pg-alpha")?;
    ensure_status(r, Status::Verified)?;
    ensure!(observed_usize(r, "value")? == alpha, "alpha {}", observed(r, "value"));
    let w = suite.certificate(r, 0)?;
    let g = suite.graph_of(&w)?;
    ensure!(g.order() == 315, "{} chambers", g.order());
    ensure!(w.set().len() == alpha && is_independent(&g, w.set()), "alpha witness");

    let r = suite.report("pg-q2", "pg-pencils")?;
    ensure_status(r, Status::Verified)?;
    ensure!(
        observed_usize(r, "maximal")? == pencils && observed_usize(r, "with_expected_size")? == pencils,
        "pencils {}",
        r.observed
    );
    let family = suite.certificate(r, 0)?;
    ensure!(family.len() == pencils, "{} pencil sets", family.len());
    ensure!(
        family.vertex_sets.iter().all(|p| p.len() == alpha && is_maximal_independent(&g, p)),
        "a pencil is not maximal independent"
    );

    let r = suite.report("pg-q2", "pg-coloring")?;
    ensure_status(r, Status::Verified)?;
    let coloring = r
        .certificates
        .iter()
        .enumerate()
        .find_map(|(i, _)| suite.certificate(r, i).ok().filter(|c| c.kind == CertificateKind::ProperColoring));
    let coloring = coloring.ok_or("no coloring certificate")?;
    check_coloring(&g, &coloring)?;
    ensure!(coloring.len() == classes, "{} classes", coloring.len());

    let r = suite.report("pg-q2", "pg-maximal-sets")?;
    ensure_status(r, Status::ReportedOnly)?;
    let largest = observed_usize(r, "largest_non_pencil_maximal_set")?;
    let c = suite.certificate(r, 0)?;
    ensure!(c.set().len() == largest && is_maximal_independent(&g, c.set()), "largest non-pencil witness");
    ensure!(!family.vertex_sets.iter().any(|p| p == c.set()), "witness is a pencil");
    Ok(format!("alpha {alpha}, {pencils} maximal pencils, {classes}-coloring proper, largest non-pencil maximal set {largest} (reported)"))
}

fn criterion_5(suite: &Suite) -> Outcome {
    let mut found = Vec::new();
    for q in [3usize, 4] {
        let label = format!("pg-q{q}");
        let chambers = (q * q * q + q * q + q + 1) * (q * q + q + 1) * (q + 1);
        let degree = q.pow(6);
        let r = suite.report(&label, "pg-coloring")?;
        ensure_status(r, Status::Verified)?;
        let coloring = r
            .certificates
            .iter()
            .enumerate()
            .find_map(|(i, _)| suite.certificate(r, i).ok().filter(|c| c.kind == CertificateKind::ProperColoring));
        let coloring = coloring.ok_or("no coloring certificate")?;
        let g = suite.graph_of(&coloring)?;
        ensure!(g.order() == chambers, "{label}: {} vertices", g.order());
        check_coloring(&g, &coloring)?;
        ensure!(coloring.len() == q * q + q, "{label}: {} classes", coloring.len());
        let irregular = (0..g.order()).filter(|&v| g.degree(v) != degree).count();
        ensure!(irregular == 0, "{label}: {irregular} vertices without degree {degree}");
        let r = suite.report(&label, "pg-regularity")?;
        ensure_status(r, Status::Verified)?;
        let elapsed = suite.elapsed(&label);
        ensure!(elapsed < Duration::from_secs(300), "{label}: took {elapsed:?}");
        found.push(format!("{label}: {} classes on {chambers} vertices, degree {degree}", coloring.len()));
    }
    Ok(found.join("; "))
}

fn criterion_6(suite: &Suite) -> Outcome {
    let mut found = Vec::new();
    for q in [2usize, 3] {
        let label = format!("pg-q{q}");
        let chambers = (q * q * q + q * q + q + 1) * (q * q + q + 1) * (q + 1);
        let r = suite.report(&label, "pg-klein")?;
        ensure_status(r, Status::Verified)?;
        ensure!(observed(r, "bijection") == true, "{label}: not a bijection");
        ensure!(
            observed_usize(r, "quadric_chambers")? == chambers,
            "{label}: quadric chambers {}",
            observed(r, "quadric_chambers")
        );
        ensure!(
            observed_usize(r, "pairs_checked")? == chambers * (chambers - 1) / 2,
            "{label}: pairs {}",
            observed(r, "pairs_checked")
        );
        ensure!(
            observed(r, "first_counterexample").is_null(),
            "{label}: counterexample {}",
            observed(r, "first_counterexample")
        );
        ensure!(observed_usize(r, "pencils_not_translating")? == 0, "{label}: pencils fail to translate");
        ensure!(r.runtime_ms < 600_000, "{label}: {} ms", r.runtime_ms);
        found.push(format!("{label}: {chambers} chambers, {} pairs agree", chambers * (chambers - 1) / 2));
    }
    Ok(found.join("; "))
}

fn criterion_7(suite: &Suite) -> Outcome {
    let (s, t) = (4usize, 8usize);
    let points = (s + 1) * (s * t + 1);
    let lines = (t + 1) * (s * t + 1);
    let flags = points * (t + 1);
    let fractional = flags.div_ceil((s + 1) * (t + 1));

    let r = suite.report("h4-q4", "gq-order")?;
    ensure_status(r, Status::Verified)?;
    for (key, want) in [("s", s), ("t", t), ("points", points), ("lines", lines), ("flags", flags)] {
        ensure!(observed_usize(r, key)? == want, "{key} = {}", observed(r, key));
    }
    let r = suite.report("h4-q4", "gq-chromatic")?;
    ensure_status(r, Status::ReportedOnly)?;
    ensure!(observed_usize(r, "lower")? == fractional, "fractional bound {}", observed(r, "lower"));
    ensure!(observed_usize(r, "upper")? == 36, "upper {}", observed(r, "upper"));
    ensure!(observed_usize(r, "cited_lower_bound")? == 34, "cited bound {}", observed(r, "cited_lower_bound"));
    let cover = suite.certificate(r, 0)?;
    let g = suite.graph_of(&cover)?;
    ensure!(g.order() == flags, "{} vertices", g.order());
    ensure!(cover.len() == 36, "{} cover sets", cover.len());
    check_cover(&g, &cover)?;
    let elapsed = suite.elapsed("h4-q4");
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!("order ({s},{t}), {points}/{lines}/{flags}, 36-pencil cover, bracket [{fractional}, 36] with 34 cited"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut alpha_graphs, mut chi_graphs) = (0, 0);
    for round in 0..120 {
        let n = rng.gen_range(0..=20usize);
        let p = rng.gen_range(0.05..0.95);
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
        let adj = masks(&g);

        let solved = max_independent_set(&g, None, &mut Unlimited);
        let want = oracle_alpha(&adj);
        ensure!(solved.optimal && solved.value == want, "round {round}: alpha {} vs oracle {want}", solved.value);
        ensure!(
            solved.witness.set().len() == want && is_independent(&g, solved.witness.set()),
            "round {round}: witness"
        );

        let mut listed = Vec::new();
        let e = enumerate_maximal_independent_sets(&g, 0, &mut Unlimited, |s| listed.push(s.to_vec()));
        listed.sort();
        ensure!(
            e.complete && listed == oracle_maximal_sets(&adj),
            "round {round}: maximal sets differ from the oracle"
        );
        alpha_graphs += 1;

        if n <= 12 {
            let r = chromatic_number(&g, None, None, Some(want), &mut Unlimited);
            let chi = oracle_chromatic(&adj);
            ensure!(r.exact() == Some(chi), "round {round}: chi [{}, {}] vs oracle {chi}", r.lower, r.upper);
            check_coloring(&g, &r.witness)?;
            ensure!(r.witness.len() == chi, "round {round}: witness uses {} colors", r.witness.len());
            chi_graphs += 1;
        }
    }
    Ok(format!("{alpha_graphs} graphs for alpha and maximal sets, {chi_graphs} for chi"))
}

/// Relative path to contents, with `runtime_ms` removed from reports.
fn snapshot(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    for dir in ["graphs", "certificates", "reports"] {
        let mut entries: Vec<PathBuf> =
            fs::read_dir(root.join(dir)).expect("store dir").map(|e| e.expect("entry").path()).collect();
        entries.sort();
        for path in entries {
            let mut bytes = fs::read(&path).expect("store file");
            if dir == "reports" {
                let mut v: Value = serde_json::from_slice(&bytes).expect("report json");
                v.as_object_mut().expect("object").remove("runtime_ms");
                bytes = serde_json::to_vec(&v).expect("json");
            }
            out.insert(path.strip_prefix(root).unwrap().to_path_buf(), bytes);
        }
    }
    out
}

fn criterion_9(suite: &Suite, threads: usize, scratch: &Path) -> Outcome {
    let other_threads = if threads == 1 { 4 } else { 1 };
    let second = run_suite(&scratch.join("second"), other_threads);
    let (a, b) = (snapshot(suite.store.root()), snapshot(second.store.root()));
    let names_a: Vec<&PathBuf> = a.keys().collect();
    let names_b: Vec<&PathBuf> = b.keys().collect();
    ensure!(names_a == names_b, "file sets differ");
    let differing: Vec<&PathBuf> = a.iter().filter(|(k, v)| b[*k] != **v).map(|(k, _)| k).collect();
    ensure!(differing.is_empty(), "files differ between {threads} and {other_threads} threads: {differing:?}");
    let consolidated = consolidate(&second.store).map_err(|e| e.to_string())?;
    ensure!(consolidated.ok, "re-verification from disk failed");
    Ok(format!(
        "{} files identical at {threads} and {other_threads} threads; {} certificates re-verified",
        a.len(),
        consolidated.certificates.len()
    ))
}

fn run(id: usize, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {id}: PASS  {detail}");
            true
        }
        Err(why) => {
            println!("criterion {id}: FAIL  {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let scratch = tempfile::tempdir().expect("temp dir");
    let threads = 4;
    let start = Instant::now();
    let suite = run_suite(&scratch.path().join("first"), threads);
    println!("suite ran in {:.1?} on {threads} threads", start.elapsed());

    let mut ok = true;
    ok &= run(1, || criterion_1(&suite));
    ok &= run(2, || criterion_2(&suite));
    ok &= run(3, || criterion_3(&suite));
    ok &= run(4, || criterion_4(&suite));
    ok &= run(5, || criterion_5(&suite));
    ok &= run(6, || criterion_6(&suite));
    ok &= run(7, || criterion_7(&suite));
    ok &= run(8, criterion_8);
    ok &= run(9, || criterion_9(&suite, threads, scratch.path()));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
