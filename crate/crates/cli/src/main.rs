//! `hmn`: corpus generation, analysis, completion, equation checks and the
//! full property suite.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 resource
//! limit exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hmn::corpus::{self, to_dot, write_algebra_json, CorpusEntry};
use hmn::extension::DEFAULT_MAX_CARRIER;
use hmn::report::Report;
use hmn::suite::{self, Fault, SuiteConfig};
use hmn::terms::{named, parse_equation};
use hmn::{Error, FiniteLattice};

#[derive(Parser)]
#[command(
    name = "hmn",
    version,
    about = "Finite Heyting algebras, S(A) and hyper-MacNeille completions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write every downset algebra of posets up to N points, plus DOT files.
    Gen {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report center, Y, quotients, supplements and classification.
    Analyze {
        file: PathBuf,
        /// Also write the report here as report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build S(A) and A⁺ and cross-check them.
    Complete {
        file: PathBuf,
        /// Write S(A) and A⁺ as JSON and DOT into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
        max_carrier: usize,
    },
    /// Check an equation on a file or corpus directory.
    ///
    /// The equation is `--eq EXPR` or the first positional argument; a
    /// library name such as `bd2` is also accepted.
    Check {
        /// `[EQUATION] TARGET`, where TARGET is an algebra file or a corpus directory.
        #[arg(num_args = 1..=2, required = true, value_name = "ARG")]
        args: Vec<String>,
        /// Equation text or library name, when not given positionally.
        #[arg(long)]
        eq: Option<String>,
        /// Also write the report here as report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every property check over the corpus.
    Suite {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random posets added to the corpus.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
        max_carrier: usize,
        /// Also write the report here as report.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Implies,
    Pentagon,
    Frame,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::Implies => Fault::CorruptImplies,
            FaultArg::Pentagon => Fault::Pentagon,
            FaultArg::Frame => Fault::FaultyFrame,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::InvariantBreach { .. } => 1,
        _ => 2,
    }
}

fn emit(report: &Report, json: bool, out: Option<&Path>) -> Result<ExitCode, Error> {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), report.to_json())?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn write_algebra(dir: &Path, stem: &str, a: &FiniteLattice) -> Result<(), Error> {
    fs::write(dir.join(format!("{stem}.json")), write_algebra_json(a))?;
    fs::write(dir.join(format!("{stem}.dot")), to_dot(a, stem))?;
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or("input".into(), |s| s.to_string_lossy().into_owned())
}

fn load_target(path: &Path) -> Result<Vec<CorpusEntry>, Error> {
    if path.is_dir() {
        corpus::load(path)
    } else {
        let mut e = corpus::load_algebra_file(path)?;
        if e.id.is_empty() {
            e.id = stem(path);
        }
        Ok(vec![e])
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Gen { max_points, out } => {
            let entries = corpus::generate(max_points)?;
            corpus::save(&out, &entries)?;
            for e in &entries {
                fs::write(out.join(format!("{}.dot", e.id)), to_dot(&e.algebra, &e.id))?;
            }
            let mut r = Report::new(format!("gen (max points {max_points})"));
            r.fact("entries", entries.len());
            r.fact("out", out.display().to_string());
            emit(&r, cli.json, None)
        }
        Cmd::Analyze { file, out } => {
            let e = corpus::load_algebra_file(&file)?;
            let id = if e.id.is_empty() {
                stem(&file)
            } else {
                e.id.clone()
            };
            let r = suite::analyze(&id, &e.algebra)?;
            emit(&r, cli.json, out.as_deref())
        }
        Cmd::Complete {
            file,
            out,
            max_carrier,
        } => {
            let e = corpus::load_algebra_file(&file)?;
            let id = if e.id.is_empty() {
                stem(&file)
            } else {
                e.id.clone()
            };
            let c = suite::complete(&id, &e.algebra, max_carrier)?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                write_algebra(dir, &format!("{}-S", stem(&file)), &c.extension.algebra)?;
                write_algebra(dir, &format!("{}-plus", stem(&file)), &c.plus.algebra)?;
            }
            emit(&c.report, cli.json, out.as_deref())
        }
        Cmd::Check { args, eq, out } => {
            let (expr, target) = match (eq, args.as_slice()) {
                (Some(e), [t]) => (e, t.clone()),
                (None, [e, t]) => (e.clone(), t.clone()),
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "give an equation and a target".into(),
                    })
                }
            };
            let equation = match named(&expr) {
                Some(e) => e,
                None => parse_equation("input", &expr)?,
            };
            let entries = load_target(Path::new(&target))?;
            let r = suite::check_equation(&equation, &entries)?;
            emit(&r, cli.json, out.as_deref())
        }
        Cmd::Suite {
            max_points,
            seed,
            samples,
            max_carrier,
            out,
            inject_fault,
        } => {
            let cfg = SuiteConfig {
                max_points,
                seed,
                samples,
                max_carrier,
                fault: inject_fault.map(Fault::from),
                ..Default::default()
            };
            let r = suite::run_suite(&cfg)?;
            emit(&r, cli.json, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
