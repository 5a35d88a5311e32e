//! Command-line front end.
//!
//! Exit codes: 0 success or witness found, 1 search exhausted without a
//! witness (or a sweep found counterexamples), 2 malformed input or a capacity
//! limit, reported as a JSON record `{"error": kind, "message": …}` on stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::gen::{gen_homogeneous_family, gen_random_family};
use crate::homogeneity::{check_homogeneous, extract_semi_homogeneous};
use crate::lemma16::verify_lemma16;
use crate::product::{is_zero, Family, Independence};
use crate::search::ramsey::MAX_RAMSEY_N;
use crate::search::{pipeline, Coloring, Mode, PipelineOutcome};
use crate::terms::Term;

#[derive(Debug, Parser)]
#[command(name = "ibalg", version, about = "Interval Boolean algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical endpoints of a point set.
    Canon {
        #[arg(long)]
        order: usize,
        /// Comma-separated points; empty for the empty set.
        #[arg(long, default_value = "")]
        points: String,
    },
    /// Evaluate a term on family members, coordinatewise.
    Eval {
        #[arg(long)]
        term: String,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_delimiter = ',')]
        assign: Vec<usize>,
    },
    /// Test independence of the members at the given indices.
    Independent {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
    },
    /// Homogeneity checks and semi-homogeneous extraction.
    Homog {
        #[command(subcommand)]
        action: HomogAction,
    },
    /// Exhaustive sweep over homogeneous triples.
    Lemma16 {
        #[command(subcommand)]
        action: Lemma16Action,
    },
    /// Certificate search on a family.
    Search {
        #[command(subcommand)]
        action: SearchAction,
    },
    /// Cross-equal quadruples in random pair colourings.
    Ramsey {
        #[command(subcommand)]
        action: RamseyAction,
    },
    /// Seeded family generators.
    Gen {
        #[command(subcommand)]
        action: GenAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomogAction {
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Extract {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Lemma16Action {
    Verify {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SearchAction {
    /// x0*x1*-x2*-x3*x4*-x5
    Sextuple(SearchArgs),
    /// (x0 ^ x1)*x2*(x3 ^ x4)*-x5
    SextupleSym(SearchArgs),
    /// (x0 ^ x1)*(x2 ^ x3)
    Quadruple(SearchArgs),
}

#[derive(Debug, Subcommand)]
pub enum RamseyAction {
    Quad {
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenAction {
    /// Per-coordinate nested chains.
    Homog {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        order_sizes: Vec<usize>,
        /// `|σ|` per coordinate.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform-ish random elements.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        kappa: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        order_sizes: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_intervals: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args`, runs, and reports; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", json!({ "error": "usage", "message": line }));
            return 2;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            2
        }
    }
}

fn read_family(path: &Path) -> Result<Family> {
    Family::from_json(&std::fs::read_to_string(path)?)
}

/// Writes `text` (plus a trailing newline) to `path` via a sibling temp file.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Prints a line to stdout; a closed pipe is not an error.
fn say(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => write_atomic(path, &text),
        None => say(&text),
    }
}

fn parse_points(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::input(format!("bad point {s:?}"))))
        .collect()
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Canon { order, points } => {
            let a = Element::from_point_set(order, parse_points(&points)?)?;
            say(&serde_json::to_string(a.endpoints())?)?;
            Ok(0)
        }
        Command::Eval { term, family, assign } => {
            let fam = read_family(&family)?;
            let t = Term::parse(&term)?;
            let value = fam.prod_eval(&t, &assign)?;
            let coords: Vec<_> = value.iter().map(Element::endpoints).collect();
            emit(&json!({ "value": coords, "zero": is_zero(&value) }), None)?;
            Ok(0)
        }
        Command::Independent { family, indices } => {
            let fam = read_family(&family)?;
            let report = match fam.is_independent(&indices)? {
                Independence::Independent => json!({ "independent": true }),
                Independence::Dependent(w) => json!({
                    "independent": false,
                    "signs": w.signs,
                    "gamma": w.gamma,
                    "nabla": w.nabla,
                }),
            };
            emit(&report, None)?;
            Ok(0)
        }
        Command::Homog { action } => match action {
            HomogAction::Check { family, out } => {
                let fam = read_family(&family)?;
                let coords: Vec<_> = (0..fam.kappa())
                    .map(|zeta| match check_homogeneous(&fam.coordinate(zeta)) {
                        Ok(t) => json!({
                            "zeta": zeta,
                            "homogeneous": true,
                            "ell": t.iter().map(|(a, b, l)| [a, b, l]).collect::<Vec<_>>(),
                        }),
                        Err(v) => json!({ "zeta": zeta, "homogeneous": false, "violation": v }),
                    })
                    .collect();
                let all = coords.iter().all(|c| c["homogeneous"] == true);
                emit(
                    &json!({ "seed": fam.seed(), "homogeneous": all, "coordinates": coords }),
                    out.as_deref(),
                )?;
                Ok(0)
            }
            HomogAction::Extract { family, out } => {
                let fam = read_family(&family)?;
                let ext = extract_semi_homogeneous(&fam);
                emit(
                    &json!({ "seed": fam.seed(), "parts": ext.parts, "subset": ext.subset }),
                    out.as_deref(),
                )?;
                Ok(0)
            }
        },
        Command::Lemma16 { action: Lemma16Action::Verify { max_order, max_k, out } } => {
            let report = verify_lemma16(max_order, max_k)?;
            emit(&report, out.as_deref())?;
            Ok(if report.counterexamples.is_empty() { 0 } else { 1 })
        }
        Command::Search { action } => {
            let (mode, args) = match action {
                SearchAction::Sextuple(a) => (Mode::Short, a),
                SearchAction::SextupleSym(a) => (Mode::Symmetric, a),
                SearchAction::Quadruple(a) => (Mode::Quadruple, a),
            };
            let fam = read_family(&args.family)?;
            match pipeline(&fam, mode)? {
                PipelineOutcome::Found(cert) => {
                    write_atomic(&args.out, &cert.to_json())?;
                    say(&json!({ "found": true, "indices": cert.indices }).to_string())?;
                    Ok(0)
                }
                PipelineOutcome::Insufficient(report) => {
                    emit(&*report, None)?;
                    Ok(1)
                }
            }
        }
        Command::Ramsey { action: RamseyAction::Quad { colors, n, seed, out } } => {
            if colors == 0 {
                return Err(Error::input("at least one colour is required"));
            }
            if n > MAX_RAMSEY_N {
                return Err(Error::Capacity { what: "ramsey N", got: n, limit: MAX_RAMSEY_N });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let quad = Coloring::random(&mut rng, n, colors).find_quad();
            emit(&json!({ "seed": seed, "colors": colors, "n": n, "quadruple": quad }), out.as_deref())?;
            Ok(if quad.is_some() { 0 } else { 1 })
        }
        Command::Gen { action } => {
            let (fam, out) = match action {
                GenAction::Homog { seed, order_sizes, k, n, out } => {
                    (gen_homogeneous_family(seed, &order_sizes, &k, n)?, out)
                }
                GenAction::Random { seed, kappa, order_sizes, n, max_intervals, out } => {
                    (gen_random_family(seed, kappa, &order_sizes, n, max_intervals)?, out)
                }
            };
            match out {
                Some(path) => write_atomic(&path, &fam.to_json())?,
                None => say(&fam.to_json())?,
            }
            Ok(0)
        }
    }
}
