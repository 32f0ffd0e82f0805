//! Realizing every admissible (genus, Clifford index) and (genus, gonality).
//!
//! A request for Clifford index `c` is answered by the surface with `d = c + 2`,
//! a request for gonality `k` by `d = k`. Each realization bundles the nef and
//! base-point-freeness certificates of `L` with the Clifford certificate.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::clifford::{min_cliff, CliffordCertificate, CliffordError, ConventionBranch};
use crate::lattice::{LatticeError, SurfaceModel};
use crate::linsys::{check_l_bpf, check_l_nef, BpfCertificate, NefCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryKind {
    CliffordRealization,
    GonalityRealization,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::CliffordRealization => "clifford",
            QueryKind::GonalityRealization => "gonality",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Largest gonality and Clifford index of a genus-`g` curve:
/// `(⌊(g+3)/2⌋, ⌊(g-1)/2⌋)`.
///
/// # Panics
///
/// If `genus < 2`.
pub fn bn_bounds(genus: i64) -> (i64, i64) {
    assert!(genus >= 2, "Brill-Noether bounds need g >= 2, got {genus}");
    ((genus + 3) / 2, (genus - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("genus g = {genus} is below the minimum {min} for a {kind} realization")]
    GenusTooSmall { kind: QueryKind, genus: i64, min: i64 },
    #[error("{symbol} = {value} must satisfy {low} <= {symbol} <= {bound} = {high} at g = {genus}")]
    TargetOutOfRange {
        symbol: &'static str,
        value: i64,
        low: i64,
        high: i64,
        bound: &'static str,
        genus: i64,
    },
    #[error("invalid genus range {g_min}..={g_max}: need 3 <= g_min <= g_max")]
    GenusRange { g_min: i64, g_max: i64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("{query} failed verification: {reason}")]
    Verification { query: TheoremQuery, reason: String },
    #[error("{} of the sweep's realizations failed verification", failures.len())]
    SweepFailed { table: RealizationTable, failures: Vec<SweepFailure> },
}

impl TheoremError {
    /// Whether the error is a rejected input rather than a failed check.
    pub fn is_range_error(&self) -> bool {
        match self {
            TheoremError::GenusTooSmall { .. }
            | TheoremError::TargetOutOfRange { .. }
            | TheoremError::GenusRange { .. }
            | TheoremError::Lattice(_) => true,
            TheoremError::Clifford(e) => {
                matches!(e, CliffordError::OutOfRange { .. } | CliffordError::RadiusTooSmall { .. })
            }
            TheoremError::Verification { .. } | TheoremError::SweepFailed { .. } => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TheoremQuery {
    pub genus: i64,
    pub kind: QueryKind,
    pub target: i64,
}

impl TheoremQuery {
    /// A curve of genus `g` and Clifford index `c`; genus 3 goes through the
    /// convention branch.
    pub fn clifford(genus: i64, c: i64) -> Result<Self, TheoremError> {
        let kind = QueryKind::CliffordRealization;
        if genus < 3 {
            return Err(TheoremError::GenusTooSmall { kind, genus, min: 3 });
        }
        let (_, max_cliff) = bn_bounds(genus);
        if !(0..=max_cliff).contains(&c) {
            return Err(TheoremError::TargetOutOfRange {
                symbol: "c",
                value: c,
                low: 0,
                high: max_cliff,
                bound: "floor((g-1)/2)",
                genus,
            });
        }
        Ok(TheoremQuery { genus, kind, target: c })
    }

    pub fn gonality(genus: i64, k: i64) -> Result<Self, TheoremError> {
        let kind = QueryKind::GonalityRealization;
        if genus < 3 {
            return Err(TheoremError::GenusTooSmall { kind, genus, min: 3 });
        }
        let (max_gonality, _) = bn_bounds(genus);
        if !(2..=max_gonality).contains(&k) {
            return Err(TheoremError::TargetOutOfRange {
                symbol: "k",
                value: k,
                low: 2,
                high: max_gonality,
                bound: "floor((g+3)/2)",
                genus,
            });
        }
        Ok(TheoremQuery { genus, kind, target: k })
    }

    /// `E.L` of the surface answering the query.
    pub fn degree(&self) -> i64 {
        match self.kind {
            QueryKind::CliffordRealization => self.target + 2,
            QueryKind::GonalityRealization => self.target,
        }
    }
}

impl fmt::Display for TheoremQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self.kind {
            QueryKind::CliffordRealization => "c",
            QueryKind::GonalityRealization => "k",
        };
        write!(f, "{} realization (g = {}, {symbol} = {})", self.kind, self.genus, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub query: TheoremQuery,
    pub surface: SurfaceModel,
    pub certificate: CliffordCertificate,
    pub nef: NefCertificate,
    pub bpf: BpfCertificate,
}

impl Realization {
    /// Every deviation from what the query asks for.
    pub fn deviations(&self) -> Vec<String> {
        let cert = &self.certificate;
        let (max_gonality, max_cliff) = bn_bounds(cert.genus);
        let mut out = Vec::new();
        if !self.nef.holds() {
            out.push(format!("L is not certified nef ({:?})", self.nef.verdict));
        }
        if !self.bpf.holds {
            out.push(format!("|L| has base-point obstructions {:?}", self.bpf.obstructions));
        }
        if !cert.oracle_agrees {
            out.push("brute-force oracle disagrees".to_string());
        }
        if !(0..=max_cliff).contains(&cert.min_cliff) {
            out.push(format!("Clifford index {} outside 0..={max_cliff}", cert.min_cliff));
        }
        if cert.gonality != cert.min_cliff + 2 || !(2..=max_gonality).contains(&cert.gonality) {
            out.push(format!("gonality {} inconsistent with bounds 2..={max_gonality}", cert.gonality));
        }
        let achieved = match self.query.kind {
            QueryKind::CliffordRealization => cert.min_cliff,
            QueryKind::GonalityRealization => cert.gonality,
        };
        if achieved != self.query.target {
            out.push(format!("achieved {achieved} instead of {}", self.query.target));
        }
        out
    }
}

/// Builds and certifies the surface answering `query`.
pub fn realize(query: TheoremQuery) -> Result<Realization, TheoremError> {
    let surface = SurfaceModel::new(query.genus, query.degree())?;
    let nef = check_l_nef(&surface);
    let bpf = check_l_bpf(&surface);
    let certificate = min_cliff(&surface)?;
    let realization = Realization { query, surface, certificate, nef, bpf };
    let deviations = realization.deviations();
    if deviations.is_empty() {
        Ok(realization)
    } else {
        Err(TheoremError::Verification { query, reason: deviations.join("; ") })
    }
}

pub fn realize_clifford(genus: i64, c: i64) -> Result<Realization, TheoremError> {
    realize(TheoremQuery::clifford(genus, c)?)
}

pub fn realize_gonality(genus: i64, k: i64) -> Result<Realization, TheoremError> {
    realize(TheoremQuery::gonality(genus, k)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationRow {
    pub genus: i64,
    pub kind: QueryKind,
    pub target: i64,
    pub degree: i64,
    pub min_cliff: i64,
    pub gonality: i64,
    pub oracle_agrees: bool,
    pub bpf_holds: bool,
    pub nef_holds: bool,
    pub convention_branch: Option<ConventionBranch>,
}

impl From<&Realization> for RealizationRow {
    fn from(r: &Realization) -> Self {
        RealizationRow {
            genus: r.query.genus,
            kind: r.query.kind,
            target: r.query.target,
            degree: r.certificate.degree_d,
            min_cliff: r.certificate.min_cliff,
            gonality: r.certificate.gonality,
            oracle_agrees: r.certificate.oracle_agrees,
            bpf_holds: r.bpf.holds,
            nef_holds: r.nef.holds(),
            convention_branch: r.certificate.convention_branch,
        }
    }
}

/// Rows sorted by `(genus, kind, target)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RealizationTable {
    pub rows: Vec<RealizationRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFailure {
    pub query: TheoremQuery,
    pub reason: String,
}

/// Every query named by the realization theorem for `g_min <= g <= g_max`,
/// Clifford rows before gonality rows within a genus.
pub fn sweep_queries(g_min: i64, g_max: i64) -> Result<Vec<TheoremQuery>, TheoremError> {
    if g_min < 3 || g_min > g_max {
        return Err(TheoremError::GenusRange { g_min, g_max });
    }
    let mut queries = Vec::new();
    for genus in g_min..=g_max {
        let (max_gonality, max_cliff) = bn_bounds(genus);
        for c in 0..=max_cliff {
            queries.push(TheoremQuery::clifford(genus, c)?);
        }
        for k in 2..=max_gonality {
            queries.push(TheoremQuery::gonality(genus, k)?);
        }
    }
    queries.sort();
    Ok(queries)
}

/// Certifies every query of [`sweep_queries`] in parallel.
pub fn sweep(g_min: i64, g_max: i64) -> Result<RealizationTable, TheoremError> {
    let queries = sweep_queries(g_min, g_max)?;
    let outcomes: Vec<Result<Realization, TheoremError>> = queries.par_iter().map(|&q| realize(q)).collect();

    let mut table = RealizationTable::default();
    let mut failures = Vec::new();
    for (query, outcome) in queries.into_iter().zip(outcomes) {
        match outcome {
            Ok(r) => table.rows.push(RealizationRow::from(&r)),
            Err(e) => failures.push(SweepFailure { query, reason: e.to_string() }),
        }
    }
    if failures.is_empty() {
        Ok(table)
    } else {
        Err(TheoremError::SweepFailed { table, failures })
    }
}
