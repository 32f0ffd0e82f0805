//! Command-line front end for `k3cliff`.
//!
//! Exit codes: 0 verified, 1 verification failure, 2 usage or range error.
//! Machine output goes to stdout, diagnostics to stderr.

pub mod document;

use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use k3cliff::{
    brute_force_cliff, check_l_nef, cliff_value, effective_side, h_profile, min_cliff, restriction_profile,
    safe_radius, sweep, CliffordError, DivisorClass, Realization, RealizationTable, SurfaceModel, TheoremError,
    TheoremQuery,
};

use crate::document::{side_name, CertificateDocument, TableDocument};

#[derive(Debug, Parser)]
#[command(name = "k3cliff", version, about = "Certify Clifford index and gonality of curves on rank-2 K3 surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one (genus, Clifford index) or (genus, gonality) pair.
    Verify(VerifyArgs),
    /// Certify every admissible pair over a genus range.
    Table(TableArgs),
    /// Report intersection numbers and the cohomology ledger of one class.
    Inspect(InspectArgs),
    /// Run the brute-force Clifford index oracle.
    Bruteforce(BruteforceArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["cliff", "gonality"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub genus: i64,
    #[arg(long)]
    pub cliff: Option<i64>,
    #[arg(long)]
    pub gonality: Option<i64>,
    /// Emit the certificate as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub genus_min: i64,
    #[arg(long)]
    pub genus_max: i64,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub genus: i64,
    #[arg(long)]
    pub degree: i64,
    /// Coordinates `X,Y` of the class `XL + YE`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_class)]
    pub class: DivisorClass,
}

#[derive(Debug, Args)]
pub struct BruteforceArgs {
    #[arg(long)]
    pub genus: i64,
    #[arg(long)]
    pub degree: i64,
    /// Search box radius for both coordinates; defaults to the safe radius.
    #[arg(long)]
    pub bound: Option<i64>,
}

pub fn parse_class(s: &str) -> Result<DivisorClass, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let coord = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad coordinate {t:?}: {e}"));
    Ok(DivisorClass::new(coord(x)?, coord(y)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified = 0,
    Failed = 1,
    Usage = 2,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: Status::Verified, stdout, stderr: String::new() }
    }

    fn fail(status: Status, stderr: impl Into<String>) -> Self {
        Outcome { status, stdout: String::new(), stderr: ensure_newline(stderr.into()) }
    }

    fn from_theorem_error(e: &TheoremError) -> Self {
        let status = if e.is_range_error() { Status::Usage } else { Status::Failed };
        Outcome::fail(status, format!("error: {e}"))
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Inspect(args) => cmd_inspect(&args),
        Command::Bruteforce(args) => cmd_bruteforce(&args),
    }
}

pub fn certificate_json(realization: &Realization) -> String {
    let doc = CertificateDocument::from(realization);
    let mut text = serde_json::to_string_pretty(&doc).expect("certificate serializes");
    text.push('\n');
    text
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let query = match (args.cliff, args.gonality) {
        (Some(c), None) => TheoremQuery::clifford(args.genus, c),
        (None, Some(k)) => TheoremQuery::gonality(args.genus, k),
        _ => return Outcome::fail(Status::Usage, "error: pass exactly one of --cliff and --gonality"),
    };
    let realization = match query.and_then(k3cliff::realize) {
        Ok(r) => r,
        Err(e) => return Outcome::from_theorem_error(&e),
    };
    if args.json {
        return Outcome::ok(certificate_json(&realization));
    }

    let cert = &realization.certificate;
    let mut out = String::new();
    let _ = writeln!(out, "verified: {}", realization.query);
    let _ = writeln!(out, "surface: g = {}, d = {}, gram {:?}", cert.genus, cert.degree_d, realization.surface.gram());
    let _ = writeln!(out, "min_cliff: {}", cert.min_cliff);
    let _ = writeln!(out, "gonality: {}", cert.gonality);
    let _ = writeln!(out, "witnesses: {}", join_classes(&cert.witnesses));
    let _ = writeln!(out, "nef: {}  bpf: {}  oracle_agrees: {}", realization.nef.holds(), realization.bpf.holds, cert.oracle_agrees);
    if let Some(branch) = cert.convention_branch {
        let _ = writeln!(out, "convention_branch: {branch}");
    }
    Outcome::ok(out)
}

fn join_classes(classes: &[DivisorClass]) -> String {
    classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

const TABLE_COLUMNS: [&str; 10] = [
    "genus",
    "kind",
    "target",
    "d",
    "min_cliff",
    "gonality",
    "oracle_agrees",
    "bpf",
    "nef",
    "convention",
];

pub fn render_table(genus_min: i64, genus_max: i64, table: &RealizationTable, format: Format) -> String {
    if format == Format::Json {
        let doc = TableDocument::new(genus_min, genus_max, table);
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        return text;
    }
    let cells: Vec<[String; 10]> = table
        .rows
        .iter()
        .map(|r| {
            [
                r.genus.to_string(),
                r.kind.as_str().to_string(),
                r.target.to_string(),
                r.degree.to_string(),
                r.min_cliff.to_string(),
                r.gonality.to_string(),
                r.oracle_agrees.to_string(),
                r.bpf_holds.to_string(),
                r.nef_holds.to_string(),
                r.convention_branch.map_or("-", |b| b.as_str()).to_string(),
            ]
        })
        .collect();

    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push_str(&TABLE_COLUMNS.join("\t"));
            out.push('\n');
            for row in &cells {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        Format::Md => {
            let _ = writeln!(out, "| {} |", TABLE_COLUMNS.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(TABLE_COLUMNS.len()));
            for row in &cells {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
        Format::Json => unreachable!(),
    }
    out
}

pub fn cmd_table(args: &TableArgs) -> Outcome {
    match sweep(args.genus_min, args.genus_max) {
        Ok(table) => Outcome::ok(render_table(args.genus_min, args.genus_max, &table, args.format)),
        Err(TheoremError::SweepFailed { table, failures }) => {
            let mut stderr = String::new();
            for f in &failures {
                let _ = writeln!(stderr, "failed: {}: {}", f.query, f.reason);
            }
            Outcome {
                status: Status::Failed,
                stdout: render_table(args.genus_min, args.genus_max, &table, args.format),
                stderr,
            }
        }
        Err(e) => Outcome::from_theorem_error(&e),
    }
}

pub fn cmd_inspect(args: &InspectArgs) -> Outcome {
    let surface = match SurfaceModel::new(args.genus, args.degree) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(Status::Usage, format!("error: {e}")),
    };
    let d = &args.class;
    let profile = h_profile(&surface, d);
    let restriction = restriction_profile(&surface, d);
    let self_int = surface.self_int(d);

    let mut out = String::new();
    let _ = writeln!(out, "surface: g = {}, d = {}, gram {:?}", surface.genus(), surface.degree(), surface.gram());
    let _ = writeln!(out, "class: {d}");
    let _ = writeln!(out, "D^2 = {self_int}");
    let _ = writeln!(out, "D.L = {}", surface.pair(d, &DivisorClass::L));
    let _ = writeln!(out, "D.E = {}", surface.pair(d, &DivisorClass::E));
    let _ = writeln!(out, "chi = {}", surface.chi(d));
    let _ = writeln!(out, "cliff = {}", cliff_value(&surface, d));
    let _ = writeln!(out, "root class: {}", if self_int == -2 { "yes" } else { "no" });
    let side = effective_side(&surface, d).map_or("zero class", side_name);
    let _ = writeln!(out, "effective side: {side}");
    let [h0, h1, h2] = profile.values();
    let _ = writeln!(out, "profile = ({h0}, {h1}, {h2})");
    for (name, entry) in [("h0", profile.h0), ("h1", profile.h1), ("h2", profile.h2)] {
        let _ = writeln!(out, "  {name} = {} [{}: {}]", entry.value, entry.rule, entry.rule.description());
    }
    let _ = writeln!(out, "restriction to C: degree {}", restriction.degree);
    for (name, entry) in [("h0", restriction.h0), ("h1", restriction.h1)] {
        let _ = writeln!(out, "  {name}(O_C(D)) = {} [{}: {}]", entry.value, entry.rule, entry.rule.description());
    }
    let nef = check_l_nef(&surface);
    let _ = writeln!(out, "L nef: {}", nef.holds());
    Outcome::ok(out)
}

pub fn cmd_bruteforce(args: &BruteforceArgs) -> Outcome {
    let surface = match SurfaceModel::new(args.genus, args.degree) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(Status::Usage, format!("error: {e}")),
    };
    let (x_bound, y_bound) = match args.bound {
        Some(n) => (n, n),
        None => safe_radius(&surface),
    };
    let report = match brute_force_cliff(&surface, x_bound, y_bound) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(Status::Usage, format!("error: {e}")),
    };
    let cert = match min_cliff(&surface) {
        Ok(c) => c,
        Err(e @ CliffordError::OutOfRange { .. }) => return Outcome::fail(Status::Usage, format!("error: {e}")),
        Err(e) => return Outcome::fail(Status::Failed, format!("error: {e}")),
    };

    let mut out = String::new();
    let minimum = report.minimum.map_or("none".to_string(), |m| m.to_string());
    let _ = writeln!(out, "box: |x| <= {x_bound}, |y| <= {y_bound}");
    let _ = writeln!(out, "minimum: {minimum}");
    if let Some(branch) = report.convention_branch {
        let _ = writeln!(out, "convention_branch: {branch}");
    }
    let _ = writeln!(out, "survivors: {}", join_classes(&report.survivors));
    let c = &report.census;
    let _ = writeln!(
        out,
        "census: examined={} passed_filter={} excluded={} certified={} indeterminate={} refuted={}",
        c.examined, c.passed_filter, c.excluded, c.certified, c.indeterminate, c.refuted
    );
    let _ = writeln!(out, "min_cliff: {}", cert.min_cliff);

    if report.minimum == Some(cert.min_cliff) {
        Outcome::ok(out)
    } else {
        Outcome {
            status: Status::Failed,
            stdout: out,
            stderr: format!("error: oracle minimum {minimum} disagrees with min_cliff {}\n", cert.min_cliff),
        }
    }
}
