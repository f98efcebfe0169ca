//! Command-line front end: decide, witness, verify and batch over instance files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hyperrigid::scalar::format_rational;
use hyperrigid::{
    decide_hyperrigid, parse_instance, verify_certificate, witness_for, Certificate, Error, FockConfig,
    GraphPresentation, Verdict, WitnessCertificate, WitnessHandle,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const EXIT_HYPERRIGID: i32 = 0;
pub const EXIT_NOT_HYPERRIGID: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_SYMBOLIC: i32 = 3;

const POSITIVE_NOTE: &str = "hyperrigidity is not computed directly: it follows from the non-degeneracy theorem, \
whose premise (the Katsura ideal acts non-degenerately on the correspondence) was machine-checked";

#[derive(Parser, Debug)]
#[command(name = "hyperrigid", version, about = "Hyperrigidity verdicts and dilation witnesses for graph correspondences")]
pub struct Cli {
    /// Top Fock level N used for witnesses.
    #[arg(long, global = true, default_value_t = 3)]
    pub fock_level: usize,
    /// Maximum number of Fock basis vectors.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub basis_budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide hyperrigidity of one instance.
    Decide { path: PathBuf },
    /// Emit a non-hyperrigidity certificate.
    Witness { path: PathBuf },
    /// Re-check a certificate against an instance.
    Verify { witness: PathBuf, instance: PathBuf },
    /// Decide every `*.json` instance in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, msg: impl Into<String>) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteRecord {
    /// Absent for interval graphs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nondegeneracy: Option<bool>,
    pub range_condition: bool,
    pub reg_preimage: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HandleRecord {
    Discrete { edge_class: String, atom: String, norm_sq: String, pairing: String, witness_finite: bool },
    Interval { edge_point: String, atom: String, fiber: Vec<String>, norm_sq: String, pairing: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    /// `"nondegeneracy-theorem"` or `"sigma-witness"`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<HandleRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub instance: String,
    pub kind: String,
    pub hyperrigid: bool,
    pub routes: RouteRecord,
    pub certificate: CertificateRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub verdict: VerdictRecord,
    pub certificate: WitnessCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<VerdictRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub files: usize,
    pub hyperrigid: usize,
    pub not_hyperrigid: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

fn kind_name(g: &GraphPresentation) -> &'static str {
    match g {
        GraphPresentation::Discrete(_) => "discrete",
        GraphPresentation::Interval(_) => "interval",
    }
}

fn handle_record(h: &WitnessHandle) -> HandleRecord {
    match h {
        WitnessHandle::Discrete { edge_class, atom, norm_sq, pairing, witness_finite } => HandleRecord::Discrete {
            edge_class: edge_class.clone(),
            atom: atom.clone(),
            norm_sq: format_rational(norm_sq),
            pairing: format_rational(pairing),
            witness_finite: *witness_finite,
        },
        WitnessHandle::Interval { edge_point, atom, fiber, norm_sq, pairing } => HandleRecord::Interval {
            edge_point: format_rational(edge_point),
            atom: format_rational(atom),
            fiber: fiber.iter().map(format_rational).collect(),
            norm_sq: format_rational(norm_sq),
            pairing: format_rational(pairing),
        },
    }
}

pub fn verdict_record(instance: &str, g: &GraphPresentation, v: &Verdict) -> VerdictRecord {
    let certificate = match &v.certificate {
        Certificate::NondegeneracyTheorem => CertificateRecord {
            kind: "nondegeneracy-theorem".into(),
            note: Some(POSITIVE_NOTE.into()),
            witness: None,
        },
        Certificate::SigmaWitness(h) => {
            CertificateRecord { kind: "sigma-witness".into(), note: None, witness: Some(handle_record(h)) }
        }
    };
    VerdictRecord {
        instance: instance.to_string(),
        kind: kind_name(g).into(),
        hyperrigid: v.hyperrigid,
        routes: RouteRecord {
            nondegeneracy: v.routes.nondegeneracy,
            range_condition: v.routes.range_condition,
            reg_preimage: v.routes.reg_preimage,
        },
        certificate,
    }
}

fn load(path: &Path) -> Result<GraphPresentation, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn decide_file(path: &Path, name: &str) -> Result<VerdictRecord, String> {
    let g = load(path)?;
    let v = decide_hyperrigid(&g).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(verdict_record(name, &g, &v))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn routes_text(r: &RouteRecord) -> String {
    let mut s = String::new();
    if let Some(n) = r.nondegeneracy {
        write!(s, "nondegeneracy={n} ").unwrap();
    }
    write!(s, "range_condition={} reg_preimage={}", r.range_condition, r.reg_preimage).unwrap();
    s
}

fn verdict_word(hyperrigid: bool) -> &'static str {
    if hyperrigid {
        "hyperrigid"
    } else {
        "not hyperrigid"
    }
}

pub fn verdict_text(v: &VerdictRecord) -> String {
    let mut s = String::new();
    writeln!(s, "instance: {}", v.instance).unwrap();
    writeln!(s, "kind: {}", v.kind).unwrap();
    writeln!(s, "verdict: {}", verdict_word(v.hyperrigid)).unwrap();
    writeln!(s, "routes: {}", routes_text(&v.routes)).unwrap();
    writeln!(s, "certificate: {}", v.certificate.kind).unwrap();
    if let Some(note) = &v.certificate.note {
        writeln!(s, "note: {note}").unwrap();
    }
    match &v.certificate.witness {
        Some(HandleRecord::Discrete { edge_class, atom, norm_sq, pairing, .. }) => {
            writeln!(s, "witness: edge {edge_class} at {atom}, norm² {norm_sq}, pairing {pairing}").unwrap();
        }
        Some(HandleRecord::Interval { edge_point, atom, norm_sq, pairing, .. }) => {
            writeln!(s, "witness: edge point {edge_point} at {atom}, norm² {norm_sq}, pairing {pairing}").unwrap();
        }
        None => {}
    }
    s
}

fn witness_text(w: &WitnessRecord) -> String {
    let c = &w.certificate;
    let mut s = verdict_text(&w.verdict);
    writeln!(s, "sigma: {}", c.sigma.join(" ")).unwrap();
    writeln!(s, "fock level: {}", c.fock_level).unwrap();
    let dims: Vec<String> = c.levels.iter().map(|l| l.len().to_string()).collect();
    writeln!(s, "level dimensions: {}", dims.join(" ")).unwrap();
    let mdims: Vec<String> = c.m.iter().map(|l| l.len().to_string()).collect();
    writeln!(s, "M0 dimension: {}", c.m0.len()).unwrap();
    writeln!(s, "M dimensions: {}", mdims.join(" ")).unwrap();
    for (name, r) in &c.residuals {
        writeln!(s, "residual {name}: {r}").unwrap();
    }
    writeln!(
        s,
        "non-reducing: generator {} on {}, projection norm² {}",
        c.non_reducing.generator, c.non_reducing.vacuum, c.non_reducing.projection_norm_sq
    )
    .unwrap();
    writeln!(s, "conclusion: {}", c.conclusion).unwrap();
    s
}

fn display_name(path: &Path) -> String {
    path.display().to_string()
}

pub fn cmd_decide(cli: &Cli, path: &Path) -> Outcome {
    match decide_file(path, &display_name(path)) {
        Ok(v) => {
            let code = if v.hyperrigid { EXIT_HYPERRIGID } else { EXIT_NOT_HYPERRIGID };
            let out = match cli.format {
                OutputFormat::Json => json(&v),
                OutputFormat::Text => verdict_text(&v),
            };
            Outcome::ok(code, out)
        }
        Err(e) => Outcome::err(EXIT_ERROR, e),
    }
}

pub fn cmd_witness(cli: &Cli, path: &Path) -> Outcome {
    let g = match load(path) {
        Ok(g) => g,
        Err(e) => return Outcome::err(EXIT_ERROR, e),
    };
    let v = match decide_hyperrigid(&g) {
        Ok(v) => v,
        Err(e) => return Outcome::err(EXIT_ERROR, e.to_string()),
    };
    if v.hyperrigid {
        return Outcome::err(
            EXIT_ERROR,
            format!("{}: the instance is hyperrigid, so no non-hyperrigidity witness exists", path.display()),
        );
    }
    let cfg = FockConfig { level: cli.fock_level, budget: cli.basis_budget };
    match witness_for(&g, cfg) {
        Ok(certificate) => {
            let w = WitnessRecord { verdict: verdict_record(&display_name(path), &g, &v), certificate };
            let out = match cli.format {
                OutputFormat::Json => json(&w),
                OutputFormat::Text => witness_text(&w),
            };
            Outcome::ok(EXIT_NOT_HYPERRIGID, out)
        }
        Err(e @ (Error::SymbolicOnly(_) | Error::Budget { .. })) => {
            Outcome::err(EXIT_SYMBOLIC, format!("symbolic verdict only (not hyperrigid): {e}"))
        }
        Err(e) => Outcome::err(EXIT_ERROR, e.to_string()),
    }
}

/// Accepts either a full witness record or a bare certificate.
fn read_certificate(path: &Path) -> Result<WitnessCertificate, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Ok(w) = serde_json::from_str::<WitnessRecord>(&text) {
        return Ok(w.certificate);
    }
    serde_json::from_str::<WitnessCertificate>(&text).map_err(|e| format!("{}: not a certificate: {e}", path.display()))
}

pub fn cmd_verify(cli: &Cli, witness: &Path, instance: &Path) -> Outcome {
    let cert = match read_certificate(witness) {
        Ok(c) => c,
        Err(e) => return Outcome::err(EXIT_ERROR, e),
    };
    let g = match load(instance) {
        Ok(g) => g,
        Err(e) => return Outcome::err(EXIT_ERROR, e),
    };
    let outcome = verify_certificate(&cert, &g, cli.basis_budget);
    let rec = VerifyRecord { ok: outcome.ok, failing: outcome.failing };
    let out = match cli.format {
        OutputFormat::Json => json(&rec),
        OutputFormat::Text => match &rec.failing {
            None => "verified\n".to_string(),
            Some(name) => format!("failed: {name}\n"),
        },
    };
    Outcome::ok(if rec.ok { 0 } else { 1 }, out)
}

pub fn batch_report(dir: &Path, jobs: usize) -> Result<BatchReport, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| e.to_string())?;
    let rows: Vec<BatchRow> = pool.install(|| {
        files
            .par_iter()
            .map(|p| {
                let file = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                match decide_file(p, &file) {
                    Ok(v) => BatchRow { file, verdict: Some(v), error: None },
                    Err(e) => BatchRow { file, verdict: None, error: Some(e) },
                }
            })
            .collect()
    });
    let mut summary = BatchSummary { files: rows.len(), ..Default::default() };
    for row in &rows {
        match &row.verdict {
            Some(v) if v.hyperrigid => summary.hyperrigid += 1,
            Some(_) => summary.not_hyperrigid += 1,
            None => summary.errors += 1,
        }
    }
    Ok(BatchReport { rows, summary })
}

fn batch_text(r: &BatchReport) -> String {
    let width = r.rows.iter().map(|row| row.file.len()).max().unwrap_or(0);
    let mut s = String::new();
    for row in &r.rows {
        match (&row.verdict, &row.error) {
            (Some(v), _) => {
                writeln!(s, "{:width$}  {:14}  {}", row.file, verdict_word(v.hyperrigid), routes_text(&v.routes))
                    .unwrap()
            }
            (None, Some(e)) => writeln!(s, "{:width$}  {:14}  {e}", row.file, "error").unwrap(),
            (None, None) => unreachable!("a row has a verdict or an error"),
        }
    }
    let m = &r.summary;
    writeln!(
        s,
        "files: {}  hyperrigid: {}  not hyperrigid: {}  errors: {}",
        m.files, m.hyperrigid, m.not_hyperrigid, m.errors
    )
    .unwrap();
    s
}

pub fn cmd_batch(cli: &Cli, dir: &Path, jobs: usize) -> Outcome {
    match batch_report(dir, jobs) {
        Ok(r) => Outcome::ok(
            0,
            match cli.format {
                OutputFormat::Json => json(&r),
                OutputFormat::Text => batch_text(&r),
            },
        ),
        Err(e) => Outcome::err(EXIT_ERROR, e),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decide { path } => cmd_decide(cli, path),
        Command::Witness { path } => cmd_witness(cli, path),
        Command::Verify { witness, instance } => cmd_verify(cli, witness, instance),
        Command::Batch { dir, jobs } => cmd_batch(cli, dir, *jobs),
    }
}
