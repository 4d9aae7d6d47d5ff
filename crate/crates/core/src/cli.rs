//! Command-line front end. `run` returns the process exit code: 0 on success
//! or a passing verdict, 1 on a failing verdict or runtime error, 2 on bad
//! usage or input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classification::classify;
use crate::constructions::{build_family, build_g, build_h, FamilyTag};
use crate::error::{Error, Result};
use crate::graph::{GraphJson, TwoTerminalGraph};
use crate::invariants::invariant_bundle;
use crate::reliability::{find_lmrttg_with_bounds, n_vector_with_bound, parse_rational, EnumBounds, ReliabilityPolynomial};
use crate::scan::{self, ScanReport};

#[derive(Parser, Debug)]
#[command(name = "lmrttg", version, about = "Locally most reliable two-terminal graphs")]
pub struct Cli {
    /// Worker threads for scans (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Omit timing fields so output is byte-stable.
    #[arg(long, global = true)]
    pub no_meta: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family member, H(n, m) or G(n, m).
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// c1, c2, c3, s1, s2, s3, h or g.
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants of a graph file or a constructed graph.
    Invariants {
        #[arg(long, conflicts_with_all = ["n", "m", "family"])]
        graph: Option<PathBuf>,
        #[arg(long, requires_all = ["m", "family"])]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Sign classification rows as CSV.
    Classify {
        /// `A` or `A..B`, inclusive.
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: Option<u64>,
        /// Only equality rows.
        #[arg(long)]
        istar_only: bool,
    },
    /// N-vector and exact reliability of a two-terminal graph file.
    Reliability {
        #[arg(long)]
        graph: PathBuf,
        /// `a/b` in [0, 1].
        #[arg(long)]
        at: Option<String>,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    /// Largest n for the brute-force winner check.
    #[arg(long, default_value_t = 6)]
    pub max_n: u64,
    #[arg(long)]
    pub m_cap: Option<u64>,
    /// Lift the m <= 12 cap at n = 7.
    #[arg(long)]
    pub deep: bool,
    #[arg(long, default_value_t = 8)]
    pub from: u64,
    #[arg(long, default_value_t = 436)]
    pub to: u64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    ClosedForms,
    Offsets,
    Classification,
    Brute,
    Sturm,
    Bounds,
    Kandkprime,
    #[value(name = "lemma7")]
    ExceptionalPairs,
    IstarScan,
    Spot,
    #[value(name = "theorem-main")]
    UniqueWinner,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Md,
}

enum Outcome {
    Ok,
    Fail,
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_) | Error::Parse(_) | Error::SizeBound { .. } | Error::DoesNotExist { .. } | Error::Json(_)
    )
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // Fails only if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn emit(out: &mut dyn Write, text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<GraphJson> {
    GraphJson::parse(&std::fs::read_to_string(path)?)
}

enum Built {
    Plain(crate::graph::Graph),
    Terminal(TwoTerminalGraph),
}

fn construct(n: u64, m: u64, family: &str) -> Result<Built> {
    Ok(match family.to_ascii_lowercase().as_str() {
        "h" => Built::Plain(build_h(n, m)?.graph),
        "g" => Built::Terminal(build_g(n, m)?),
        other => Built::Plain(build_family(n, m, other.parse::<FamilyTag>()?)?),
    })
}

fn parse_n_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("bad n range {s:?}; use A or A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Construct {
            n,
            m,
            family,
            format,
            out: path,
        } => {
            let built = construct(*n, *m, family)?;
            let text = match (&built, format) {
                (Built::Plain(g), GraphFormat::Json) => serde_json::to_string(&g.to_json())? + "\n",
                (Built::Terminal(g), GraphFormat::Json) => serde_json::to_string(&g.to_json())? + "\n",
                (Built::Plain(g), GraphFormat::Dot) => g.to_dot(),
                (Built::Terminal(g), GraphFormat::Dot) => g.to_dot(),
            };
            emit(out, &text, path.as_deref())?;
        }
        Command::Invariants { graph, n, m, family } => {
            let g = match (graph, n, m, family) {
                (Some(p), ..) => read_graph(p)?.to_graph()?,
                (None, Some(n), Some(m), Some(f)) => match construct(*n, *m, f)? {
                    Built::Plain(g) => g,
                    Built::Terminal(g) => g.graph().clone(),
                },
                _ => return Err(Error::Parse("give --graph or --n, --m and --family".into())),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&invariant_bundle(&g))?)?;
        }
        Command::Classify { n, m, istar_only } => {
            let (lo, hi) = parse_n_range(n)?;
            writeln!(out, "n,m,sign,in_j,m1_s1,m1_c1,k,j,kp,jp")?;
            for n in lo..=hi {
                let total = n * n.saturating_sub(1) / 2;
                let ms: Vec<u64> = match m {
                    Some(m) => vec![*m],
                    None => (0..=total).collect(),
                };
                for m in ms {
                    let c = classify(n, m)?;
                    if *istar_only && c.sign != Some(crate::PairSign::Star) {
                        continue;
                    }
                    let p = c.params;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{}",
                        n,
                        m,
                        c.sign.map(|s| s.to_string()).unwrap_or_default(),
                        c.in_j,
                        c.m1_s1,
                        c.m1_c1,
                        p.k,
                        p.j,
                        p.kp,
                        p.jp
                    )?;
                }
            }
        }
        Command::Reliability { graph, at } => {
            let g = read_graph(graph)?.to_two_terminal()?;
            let bounds = EnumBounds::from_env()?;
            let nv = n_vector_with_bound(&g, bounds.max_edges)?;
            let value = match at {
                Some(p) => {
                    let p = parse_rational(p)?;
                    Some(ReliabilityPolynomial::new(nv.clone()).eval(&p)?.to_string())
                }
                None => None,
            };
            let body = json!({ "m": nv.len(), "n_vector": nv, "reliability": value });
            writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        Command::Verify(args) => return verify(args, cli.no_meta, out),
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct BruteReport {
    n: u64,
    m: u64,
    winner_canonical: Vec<String>,
    unique: bool,
    unique_ordered: bool,
    matches_construction: bool,
    classes_examined: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

fn brute_pairs(max_n: u64, m_cap: Option<u64>, deep: bool) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for n in 4..=max_n {
        let mut top = n * (n - 1) / 2;
        if let Some(c) = m_cap {
            top = top.min(c);
        }
        if n >= 7 && !deep {
            top = top.min(12);
        }
        pairs.extend((5..=top).map(|m| (n, m)));
    }
    pairs
}

fn verify(args: &VerifyArgs, no_meta: bool, out: &mut dyn Write) -> Result<Outcome> {
    let bounds = EnumBounds::from_env()?;
    if args.suite == Suite::Brute {
        let (Some(n), Some(m)) = (args.n, args.m) else {
            return Err(Error::Parse("verify brute needs --n and --m".into()));
        };
        let start = Instant::now();
        let search = find_lmrttg_with_bounds(n, m, bounds)?;
        let expected = build_g(n, m)?.canonical_key()?;
        let rep = BruteReport {
            n,
            m,
            winner_canonical: search.winner_keys.iter().map(|k| k.to_string()).collect(),
            unique: search.unique(),
            unique_ordered: search.unique_ordered(),
            matches_construction: search.unique() && search.winner_keys[0] == expected,
            classes_examined: search.classes_examined,
            elapsed_ms: (!no_meta).then(|| start.elapsed().as_millis() as u64),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
        return Ok(if rep.matches_construction {
            Outcome::Ok
        } else {
            Outcome::Fail
        });
    }
    let mut reports: Vec<ScanReport> = Vec::new();
    let all = args.suite == Suite::All;
    let want = |s: Suite| all || args.suite == s;
    if want(Suite::ExceptionalPairs) {
        reports.push(scan::verify_exceptional_pairs()?);
    }
    if want(Suite::Sturm) {
        reports.push(scan::verify_sturm()?);
    }
    if want(Suite::Identities) {
        reports.push(scan::verify_identities(args.samples, args.seed, 12)?);
    }
    if want(Suite::ClosedForms) {
        reports.push(scan::verify_closed_forms(30)?);
    }
    if want(Suite::Offsets) {
        reports.push(scan::verify_offsets(20)?);
    }
    if want(Suite::Classification) {
        reports.push(scan::verify_classification(5, 60)?);
        reports.push(scan::verify_trivial_m(60)?);
    }
    if want(Suite::Bounds) {
        reports.push(scan::scan_bounds(8, 60)?);
    }
    if want(Suite::Kandkprime) {
        reports.push(scan::scan_kandkprime(200)?);
    }
    if want(Suite::IstarScan) {
        let (from, to) = if all { (8, 436) } else { (args.from, args.to) };
        if from > to {
            return Err(Error::Domain(format!("empty range {from}..{to}")));
        }
        reports.push(scan::scan_istar_j(from, to)?);
    }
    if want(Suite::Spot) {
        reports.push(scan::spot_check_large_n(&[437, 500, 1000])?);
    }
    if want(Suite::UniqueWinner) {
        let pairs = brute_pairs(args.max_n, args.m_cap, args.deep);
        reports.push(scan::verify_unique_winner_pairs(&pairs, bounds)?);
    }
    if no_meta {
        reports = reports.into_iter().map(ScanReport::without_meta).collect();
    }
    let pass = reports.iter().all(|r| r.pass);
    let text = match args.format {
        ReportFormat::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        ReportFormat::Json => serde_json::to_string_pretty(&reports)? + "\n",
        ReportFormat::Md => reports.iter().map(ScanReport::to_markdown).collect::<Vec<_>>().join("\n"),
    };
    out.write_all(text.as_bytes())?;
    Ok(if pass { Outcome::Ok } else { Outcome::Fail })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lmrttg").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("6").unwrap(), (6, 6));
        assert_eq!(parse_n_range("5..9").unwrap(), (5, 9));
        assert!(parse_n_range("9..5").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["construct", "--n", "6"]).0, 2);
        assert_eq!(run_str(&["construct", "--n", "6", "--m", "99", "--family", "c1"]).0, 2);
        assert_eq!(run_str(&["construct", "--n", "6", "--m", "7", "--family", "x9"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn classify_istar_rows() {
        let (code, out, _) = run_str(&["classify", "--n", "6..6", "--istar-only"]);
        assert_eq!(code, 0);
        let ms: Vec<u64> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(ms, vec![0, 1, 2, 3, 6, 7, 8, 9, 12, 13, 14, 15]);
    }
}
