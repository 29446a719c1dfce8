//! `conelayer` command line: classify → unfold → groupoid → ktheory → fredholm.

pub mod domain_file;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use conelayer_core::geometry::{vertex_census, GeometryError};
use conelayer_core::groupoid::{build_abstract_groupoid, build_groupoid};
use conelayer_core::mellin::{fredholm_for_boundary, fredholm_for_wedge, FredholmParams, MellinError, ScanOptions};
use conelayer_core::unfold::{desingularize, unfold, UnfoldError};

pub use domain_file::{parse_domain_file, serialize_domain_file, DomainFile, ParseError};
pub use report::{emit_report, fmt_sig9, read_json_report, Format, Report};

use report::{AbstractBlock, CensusBlock, FredholmBlock, GroupoidBlock, KTheoryBlock, UnfoldBlock};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
    #[error(transparent)]
    Mellin(#[from] MellinError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "conelayer", version, about = "Boundary singularities, groupoid K-theory and Fredholm scans for planar conical domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex census: true conical points and singular crack points.
    Classify(FileArgs),
    /// Unfolded boundary and its desingularization.
    Unfold(FileArgs),
    /// Boundary groupoid strata and indicial algebras.
    Groupoid(FileArgs),
    /// K-groups of the boundary and indicial algebras.
    Ktheory(FileArgs),
    /// Mellin symbol scans of ½I + K at every vertex.
    Fredholm(FredholmArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
struct FileArgs {
    /// Domain description file.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct FredholmArgs {
    /// Domain description file; omit when using --preset.
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Real part a of the line Re z = a.
    #[arg(long, default_value_t = 0.5, value_parser = finite, allow_negative_numbers = true)]
    line: f64,
    #[arg(long, default_value_t = 40.0, value_parser = positive)]
    xi_max: f64,
    #[arg(long, default_value_t = 4001, value_parser = steps)]
    xi_steps: usize,
    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    tol: f64,
    /// Built-in operator, e.g. `wedge:1.5707963`.
    #[arg(long, value_parser = preset)]
    preset: Option<f64>,
    /// Caller's assertion that the principal symbol is elliptic.
    #[arg(long, required = true, action = ArgAction::Set)]
    elliptic: bool,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("must be finite".into())
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("must be positive".into())
    }
}

fn steps(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 2 {
        Ok(v)
    } else {
        Err("need at least 2 grid points".into())
    }
}

fn preset(s: &str) -> Result<f64, String> {
    let theta = s.strip_prefix("wedge:").ok_or_else(|| "expected wedge:<theta>".to_string())?;
    finite(theta)
}

struct Loaded {
    file: DomainFile,
    digest: String,
}

fn load(path: &PathBuf) -> Result<Loaded, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io {
        path: shown.clone(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })?;
    let file = parse_domain_file(&text).map_err(|source| CliError::Parse { path: shown, source })?;
    Ok(Loaded { file, digest })
}

#[derive(PartialEq, PartialOrd)]
enum Depth {
    Classify,
    Unfold,
    Groupoid,
    KTheory,
    Fredholm,
}

fn domain_report(mut r: Report, path: &PathBuf, depth: Depth, fredholm: Option<(bool, FredholmParams)>) -> Result<Report, CliError> {
    let Loaded { file, digest } = load(path)?;
    r.sha256 = Some(digest);
    r.census = Some(CensusBlock::new(&vertex_census(&file.domain)?));
    if depth >= Depth::Unfold {
        let m = desingularize(&unfold(&file.domain)?)?;
        r.unfold = Some(UnfoldBlock::new(&m));
        if depth >= Depth::Groupoid {
            let g = build_groupoid(&m);
            r.groupoid = Some(GroupoidBlock::new(&g));
            if depth >= Depth::KTheory {
                r.ktheory = Some(KTheoryBlock::new(&g));
            }
            if !file.cone_bases.is_empty() {
                let a = build_abstract_groupoid(&file.cone_bases);
                r.abstract_cones = Some(AbstractBlock { groupoid: GroupoidBlock::new(&a), ktheory: KTheoryBlock::new(&a) });
            }
        }
        if let Some((elliptic, params)) = fredholm {
            r.fredholm = Some(FredholmBlock::new(&fredholm_for_boundary(&m, elliptic, &params)?, &params));
        }
    }
    Ok(r)
}

fn execute(cli: Cli, command: String) -> Result<(Report, Format), CliError> {
    let r = Report::new(command);
    Ok(match cli.command {
        Command::Classify(a) => (domain_report(r, &a.file, Depth::Classify, None)?, a.format.into()),
        Command::Unfold(a) => (domain_report(r, &a.file, Depth::Unfold, None)?, a.format.into()),
        Command::Groupoid(a) => (domain_report(r, &a.file, Depth::Groupoid, None)?, a.format.into()),
        Command::Ktheory(a) => (domain_report(r, &a.file, Depth::KTheory, None)?, a.format.into()),
        Command::Fredholm(a) => {
            let params = FredholmParams {
                line: a.line,
                xi_max: a.xi_max,
                xi_steps: a.xi_steps,
                scan: ScanOptions { tol: a.tol, ..ScanOptions::default() },
                ..FredholmParams::default()
            };
            let report = match (a.preset, &a.file) {
                (Some(theta), _) => {
                    let mut r = r;
                    r.fredholm = Some(FredholmBlock::new(&fredholm_for_wedge(theta, a.elliptic, &params)?, &params));
                    r
                }
                (None, Some(path)) => domain_report(r, path, Depth::Fredholm, Some((a.elliptic, params)))?,
                (None, None) => return Err(CliError::Usage("fredholm needs a domain file or --preset".into())),
            };
            (report, a.format.into())
        }
    })
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match execute(cli, command) {
        Ok((r, f)) => RunOutput { code: 0, stdout: emit_report(&r, f), stderr: String::new() },
        Err(e) => {
            let mut msg = format!("error: {e}\n");
            if let CliError::Mellin(MellinError::DegenerateAngle(_)) = e {
                msg.push_str("note: crack tips carry coinciding boundary rays; no Fredholm verdict is issued for them\n");
            }
            RunOutput { code: e.exit_code(), stdout: String::new(), stderr: msg }
        }
    }
}
