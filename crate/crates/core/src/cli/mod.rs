//! The `cxta` command-line front end.
//!
//! Exit codes: `check` and `takeuchi` exit 0, 1 or 2 for ADMISSIBLE,
//! RULED_OUT and INDETERMINATE (an irrational-ψ report exits 2). Malformed
//! input or flags exit 64, invalid candidate data 65, I/O failures 74.

mod cache;
mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::arith::{
    admissibility_test_with, admissible_right_triangles, classify_right_triangles, enumerate_nonuniform_with,
    equilateral_scan, irrational_psi_report, jacobsthal, smallest_coprime_prime, takeuchi_fuchsian_test,
    SPolicy, Status, Vertex,
};
use crate::cyclotomic::{subfield_degree, Sign};
use crate::error::TriangleError;
use crate::hermitian::Angle;
use crate::triangle::{e_triangle_generators_at, field_e_bounds, CandidateGroup, CandidateJson};

pub use cache::Cache;
pub use output::{
    takeuchi_field_degree, write_records, CandidateRecord, FuchsianRecord, Format, JacobsthalRecord, Record,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "cxta", version, about = "Arithmeticity obstructions for complex hyperbolic triangle groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, short, global = true)]
    jobs: Option<usize>,
    /// Cache directory (default: $CXTA_CACHE_DIR, then $XDG_CACHE_HOME/cxta, then ~/.cache/cxta).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test one candidate given as JSON (a file, or standard input).
    Check {
        /// Candidate file; `-` or absent reads standard input.
        file: Option<PathBuf>,
    },
    /// Classify the right triangles (2, q, r) by Takeuchi's criterion.
    ClassifyRight {
        #[arg(long, default_value_t = 2000)]
        max_denom: u32,
        /// List ruled-out triangles as well.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate the candidates allowed for a nonuniform lattice.
    EnumerateNonuniform,
    /// Scan the equilateral triangles with angles π/n.
    EquilateralScan {
        #[arg(long, default_value_t = 7)]
        n_min: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value_t = SPolicy::One)]
        s_policy: SPolicy,
    },
    /// Jacobsthal's function j(n).
    Jacobsthal {
        #[arg(long)]
        n: u64,
    },
    /// Takeuchi's criterion for the Fuchsian triangle (p, q, r); `ideal` marks a cusp.
    Takeuchi { p: String, q: String, r: String },
}

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub max_denom: Option<u32>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub s_policy: Option<SPolicy>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("CXTA_CACHE_DIR").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(d).join("cxta"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("cxta"))
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        let g = &cli.global;
        let mut cfg = RunConfig {
            command: String::new(),
            max_denom: None,
            n_min: None,
            n_max: None,
            s_policy: None,
            format: g.format,
            output: g.output.clone(),
            jobs: g.jobs,
            cache_dir: if g.no_cache { None } else { g.cache_dir.clone().or_else(default_cache_dir) },
        };
        if g.jobs == Some(0) {
            return Err("--jobs must be positive".into());
        }
        match &cli.command {
            Command::Check { .. } => cfg.command = "check".into(),
            Command::ClassifyRight { max_denom, .. } => {
                if *max_denom < 7 {
                    return Err("--max-denom must be at least 7".into());
                }
                cfg.command = "classify-right".into();
                cfg.max_denom = Some(*max_denom);
            }
            Command::EnumerateNonuniform => cfg.command = "enumerate-nonuniform".into(),
            Command::EquilateralScan { n_min, n_max, s_policy } => {
                if *n_min < 7 || n_min > n_max {
                    return Err(format!("need 7 ≤ --n-min ≤ --n-max, got {n_min} and {n_max}"));
                }
                cfg.command = "equilateral-scan".into();
                cfg.n_min = Some(*n_min);
                cfg.n_max = Some(*n_max);
                cfg.s_policy = Some(*s_policy);
            }
            Command::Jacobsthal { n } => {
                if *n == 0 {
                    return Err("--n must be positive".into());
                }
                cfg.command = "jacobsthal".into();
            }
            Command::Takeuchi { .. } => cfg.command = "takeuchi".into(),
        }
        Ok(cfg)
    }
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: m.into() }
    }
    fn data(e: impl ToString) -> Self {
        Self { code: EXIT_DATA, message: e.to_string() }
    }
    fn io(e: impl ToString) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

impl From<TriangleError> for Failure {
    fn from(e: TriangleError) -> Self {
        Self::data(e)
    }
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Admissible => 0,
        Status::RuledOut => 1,
        Status::Indeterminate => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(m) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
    };
    let cache = cfg.cache_dir.as_ref().and_then(|d| match Cache::open(d) {
        Ok(c) => Some(c),
        Err(e) => {
            eprintln!("warning: cache disabled ({}: {e})", d.display());
            None
        }
    });
    if let Some(c) = &cache {
        c.load_polynomials();
    }
    let result = match cfg.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &cfg, cache.as_ref())),
            Err(e) => Err(Failure::io(e)),
        },
        None => dispatch(&cli.command, &cfg, cache.as_ref()),
    };
    if let Some(c) = &cache {
        if let Err(e) = c.store_polynomials() {
            eprintln!("warning: could not write cache: {e}");
        }
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Output is buffered in full so a failing run never leaves a partial file.
fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<(), Failure> {
    match &cfg.output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(Failure::io)
        }
    }
}

fn render<R: Record>(cfg: &RunConfig, rows: &[R]) -> Result<(), Failure> {
    let mut buf = Vec::new();
    write_records(&mut buf, cfg.format, rows).map_err(Failure::io)?;
    emit(cfg, &buf)
}

fn dispatch(cmd: &Command, cfg: &RunConfig, cache: Option<&Cache>) -> Result<i32, Failure> {
    match cmd {
        Command::Check { file } => cmd_check(file.as_deref(), cfg, cache),
        Command::ClassifyRight { max_denom, all } => {
            let rows = if *all {
                classify_right_triangles(*max_denom)?
            } else {
                admissible_right_triangles(*max_denom)?
            };
            let records = rows.iter().map(FuchsianRecord::from_right).collect::<Result<Vec<_>, _>>()?;
            render(cfg, &records)?;
            if cfg.format == Format::Pretty {
                let admissible = rows.iter().filter(|r| r.status == Status::Admissible).count();
                // summary on stderr keeps the table itself diffable
                eprintln!("{admissible} admissible right triangles with denominators ≤ {max_denom}");
            }
            Ok(0)
        }
        Command::EnumerateNonuniform => {
            let entries = enumerate_nonuniform_with(&|shape| cache::profile_source(cache, shape))?;
            let records: Vec<CandidateRecord> = entries.iter().map(CandidateRecord::from).collect();
            render(cfg, &records)?;
            Ok(0)
        }
        Command::EquilateralScan { n_min, n_max, s_policy } => {
            let scan = equilateral_scan(*n_min, *n_max, *s_policy)?;
            let threshold = scan.threshold.map_or("none".to_string(), |t| t.to_string());
            let summary = format!(
                "threshold n* = {threshold}: every n in ({threshold}, {n_max}] has sign -1 ({} survivors, s policy {s_policy})",
                scan.survivors.len()
            );
            match cfg.format {
                Format::Json => {
                    let mut buf = Vec::new();
                    write_records(&mut buf, Format::Json, &scan.rows).map_err(Failure::io)?;
                    let tail = serde_json::json!({
                        "summary": {
                            "n_min": scan.n_min,
                            "n_max": scan.n_max,
                            "s_policy": scan.policy,
                            "threshold": scan.threshold,
                            "survivors": scan.survivors,
                        }
                    });
                    buf.extend(serde_json::to_vec(&tail).expect("serializable"));
                    buf.push(b'\n');
                    emit(cfg, &buf)?;
                }
                Format::Csv => {
                    render(cfg, &scan.rows)?;
                    eprintln!("{summary}");
                }
                Format::Pretty => {
                    let mut buf = Vec::new();
                    write_records(&mut buf, Format::Pretty, &scan.rows).map_err(Failure::io)?;
                    buf.extend(summary.as_bytes());
                    buf.push(b'\n');
                    emit(cfg, &buf)?;
                }
            }
            Ok(0)
        }
        Command::Jacobsthal { n } => {
            let rec = JacobsthalRecord {
                n: *n,
                jacobsthal: jacobsthal(*n)?,
                smallest_coprime_prime: smallest_coprime_prime(*n)?,
            };
            render(cfg, &[rec])?;
            Ok(0)
        }
        Command::Takeuchi { p, q, r } => {
            let v = [Vertex::parse(p)?, Vertex::parse(q)?, Vertex::parse(r)?];
            let verdict = takeuchi_fuchsian_test(v[0], v[1], v[2])?;
            let code = status_code(verdict.status);
            render(cfg, &[FuchsianRecord::new(v, verdict)?])?;
            Ok(code)
        }
    }
}

#[derive(Deserialize)]
struct IrrationalRequest {
    angles: [String; 3],
    #[serde(default)]
    nonuniform: bool,
}

fn read_input(file: Option<&std::path::Path>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(Failure::io)?;
            Ok(s)
        }
    }
}

/// Field data and verdict for one candidate.
pub fn check_candidate(c: &CandidateGroup, cache: Option<&Cache>) -> crate::error::Result<CandidateRecord> {
    let profile = cache::profile_source(cache, c.shape());
    let verdict = admissibility_test_with(c, &profile)?;
    let (lower, upper) = field_e_bounds(c)?;
    let tri = e_triangle_generators_at(c.shape(), c.level())?;
    let degrees = [subfield_degree(&lower)?, subfield_degree(&upper)?, subfield_degree(&tri)?];
    let det_sign = profile.sign(1).unwrap_or(Sign::Zero).as_i8();
    Ok(CandidateRecord::new(c, det_sign, degrees, verdict))
}

fn cmd_check(file: Option<&std::path::Path>, cfg: &RunConfig, cache: Option<&Cache>) -> Result<i32, Failure> {
    let text = read_input(file)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("malformed candidate JSON: {e}")))?;
    if value.get("psi").and_then(|p| p.as_str()) == Some("irrational") {
        let req: IrrationalRequest =
            serde_json::from_value(value).map_err(|e| Failure::usage(format!("malformed candidate JSON: {e}")))?;
        let angles = [Angle::parse(&req.angles[0])?, Angle::parse(&req.angles[1])?, Angle::parse(&req.angles[2])?];
        let report = irrational_psi_report(angles, req.nonuniform)?;
        let mut buf = Vec::new();
        match cfg.format {
            Format::Pretty => {
                for c in &report.constraints {
                    buf.extend(format!("[{}] {}\n", c.tag, c.statement).as_bytes());
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(["tag", "statement"]).map_err(Failure::io)?;
                for c in &report.constraints {
                    w.write_record([&c.tag, &c.statement]).map_err(Failure::io)?;
                }
                w.flush().map_err(Failure::io)?;
            }
            Format::Json => {
                buf.extend(serde_json::to_vec(&report).expect("serializable"));
                buf.push(b'\n');
            }
        }
        emit(cfg, &buf)?;
        return Ok(2);
    }
    let json: CandidateJson =
        serde_json::from_value(value).map_err(|e| Failure::usage(format!("malformed candidate JSON: {e}")))?;
    let candidate = CandidateGroup::try_from(&json)?;
    let record = check_candidate(&candidate, cache)?;
    let code = status_code(record.verdict.status);
    if cfg.format == Format::Pretty {
        let text = format!("{candidate}\n{}\n", record.verdict);
        emit(cfg, text.as_bytes())?;
    } else {
        render(cfg, &[record])?;
    }
    Ok(code)
}
