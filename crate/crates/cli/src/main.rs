use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flagkneser::checks::{self, Options};
use flagkneser::commands::{self, Target};
use flagkneser::objects::{load_gq, with_threads, GqSource};
use flagkneser::report::{to_json, Report, Status, Store};

#[derive(Parser)]
#[command(name = "flagkneser", version, about = "Opposition graphs of chambers and flags: build, verify, color")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as DIMACS with its vertex labels and fingerprint.
    Build {
        #[arg(value_enum)]
        target: Kind,
        #[command(flatten)]
        common: Common,
    },
    /// Run the checks on a generalized quadrangle.
    VerifyGq {
        #[arg(long, value_enum)]
        gq: GqKind,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: Search,
    },
    /// Run the checks on the chamber graph of PG(3, q).
    VerifyPg {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: Search,
    },
    /// Bracket the chromatic number and store the best coloring.
    Color {
        #[arg(long, value_enum)]
        gq: Option<GqKind>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: Search,
    },
    /// Consolidate stored reports and re-verify every certificate from disk.
    Report {
        #[arg(long, default_value = "flagkneser-out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    q: Option<u32>,
    /// GQ incidence file, or a DIMACS file for `color`.
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long, default_value = "flagkneser-out")]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    /// Allow the chamber graph of PG(3,5).
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct Search {
    #[arg(long)]
    min_size: Option<usize>,
    /// Exhaustive enumerations on graphs where they are slow.
    #[arg(long)]
    enumerate: bool,
    /// Per-search wall-clock limit; 0 disables it.
    #[arg(long, default_value_t = 300)]
    timeout_s: u64,
    /// Per-search node limit; 0 disables it.
    #[arg(long, default_value_t = 1 << 26)]
    max_nodes: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pg,
    W,
    Q4,
    H4,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum GqKind {
    W,
    Q4,
    H4,
    File,
}

struct Usage(String);

fn need_q(c: &Common) -> Result<u32, Usage> {
    c.q.ok_or_else(|| Usage("--q is required".into()))
}

fn gq_source(kind: GqKind, c: &Common) -> Result<GqSource, Usage> {
    Ok(match kind {
        GqKind::W => GqSource::W(need_q(c)?),
        GqKind::Q4 => GqSource::Q4(need_q(c)?),
        GqKind::H4 => GqSource::H4,
        GqKind::File => GqSource::File(c.path.clone().ok_or_else(|| Usage("--path is required".into()))?),
    })
}

fn options(s: &Search, force: bool) -> Options {
    Options {
        timeout: (s.timeout_s > 0).then(|| Duration::from_secs(s.timeout_s)),
        max_nodes: (s.max_nodes > 0).then_some(s.max_nodes),
        min_size: s.min_size,
        enumerate: s.enumerate,
        force,
    }
}

fn print_reports(reports: &[Report]) -> ExitCode {
    for r in reports {
        eprintln!("{:<18} {:?}", r.check_id, r.status);
    }
    println!("{}", to_json(&reports).trim_end());
    if reports.iter().any(|r| r.status == Status::Refuted) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Build { target, common } => {
            let t = match target {
                Kind::Pg => Target::Pg(need_q(&common)?),
                Kind::W => Target::Gq(gq_source(GqKind::W, &common)?),
                Kind::Q4 => Target::Gq(gq_source(GqKind::Q4, &common)?),
                Kind::H4 => Target::Gq(GqSource::H4),
                Kind::File => Target::Gq(gq_source(GqKind::File, &common)?),
            };
            let v = with_threads(common.threads, || commands::build(&t, &common.out, common.force))?;
            println!("{}", to_json(&v).trim_end());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyGq { gq, common, search } => {
            let source = gq_source(gq, &common)?;
            let opts = options(&search, common.force);
            let store = Store::create(&common.out)?;
            let reports = with_threads(common.threads, || {
                let target = load_gq(source)?;
                checks::verify_gq(&target, &opts, &store).map_err(Failure::from)
            })?;
            Ok(print_reports(&reports))
        }
        Command::VerifyPg { common, search } => {
            let q = need_q(&common)?;
            let opts = options(&search, common.force);
            let store = Store::create(&common.out)?;
            let reports = with_threads(common.threads, || checks::verify_pg(q, &opts, &store))?;
            Ok(print_reports(&reports))
        }
        Command::Color { gq, common, search } => {
            let target = match (gq, &common.path, common.q) {
                (Some(kind), _, _) => Target::Gq(gq_source(kind, &common)?),
                (None, Some(path), _) => Target::Dimacs(path.clone()),
                (None, None, Some(q)) => Target::Pg(q),
                (None, None, None) => return Err(Usage("give --q, --gq or --path".into()).into()),
            };
            let opts = options(&search, common.force);
            let store = Store::create(&common.out)?;
            let v = with_threads(common.threads, || commands::color(&target, &opts, &store))?;
            println!("{}", to_json(&v).trim_end());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { out } => {
            let store = Store::create(&out)?;
            let c = commands::report(&store)?;
            let text = to_json(&c);
            std::fs::write(out.join("report.json"), &text)?;
            print!("{text}");
            Ok(if c.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

enum Failure {
    Usage(String),
    Other(anyhow::Error),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Other(e.into())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
