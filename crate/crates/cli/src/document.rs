//! The JSON certificate schema.

use k3cliff::{
    bn_bounds, BruteForceReport, DivisorClass, Realization, RealizationRow, RealizationTable, Side, Verdict,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

/// A class as its `[x, y]` coordinates in the basis `(L, E)`.
pub type ClassDoc = [i64; 2];

fn class_doc(c: &DivisorClass) -> ClassDoc {
    [c.x, c.y]
}

fn narrow(n: i128) -> i64 {
    i64::try_from(n).expect("intersection number exceeds i64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub query: QueryDoc,
    pub surface: SurfaceDoc,
    pub results: ResultsDoc,
    pub checks: ChecksDoc,
    pub assumptions: Vec<String>,
    pub convention_branch: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryDoc {
    pub kind: String,
    pub genus: i64,
    pub target: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub genus: i64,
    pub d: i64,
    pub gram: [[i64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDoc {
    pub max_gonality: i64,
    pub max_cliff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichDoc {
    pub pencil_degree: i64,
    pub pencil_h0: String,
    pub lower_from_cliff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsDoc {
    pub min_cliff: i64,
    pub gonality: i64,
    pub witnesses: Vec<ClassDoc>,
    pub candidate_set: Vec<ClassDoc>,
    pub bounds: BoundsDoc,
    pub gonality_sandwich: SandwichDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDoc {
    pub class: ClassDoc,
    pub side: String,
    pub pairing_with_l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefDoc {
    pub holds: bool,
    pub verdict: String,
    pub l_squared: i64,
    pub roots: Vec<RootDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpfDoc {
    pub holds: bool,
    pub obstructions: Vec<ClassDoc>,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub x_bound: i64,
    pub y_bound: i64,
    pub minimum: Option<i64>,
    pub survivors: Vec<ClassDoc>,
    pub examined: u64,
    pub passed_filter: u64,
    pub excluded: u64,
    pub certified: u64,
    pub indeterminate: u64,
    pub refuted: u64,
}

impl From<&BruteForceReport> for CensusDoc {
    fn from(r: &BruteForceReport) -> Self {
        CensusDoc {
            x_bound: r.x_bound,
            y_bound: r.y_bound,
            minimum: r.minimum,
            survivors: r.survivors.iter().map(class_doc).collect(),
            examined: r.census.examined,
            passed_filter: r.census.passed_filter,
            excluded: r.census.excluded,
            certified: r.census.certified,
            indeterminate: r.census.indeterminate,
            refuted: r.census.refuted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksDoc {
    pub nef: NefDoc,
    pub bpf: BpfDoc,
    pub oracle_agrees: bool,
    pub census: CensusDoc,
    pub census_at_double_radius: CensusDoc,
}

pub fn side_name(side: Side) -> &'static str {
    match side {
        Side::Positive => "positive",
        Side::Negative => "negative",
        Side::Unknown => "unknown",
    }
}

fn verdict_name(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Undecided => "undecided",
    }
}

impl From<&Realization> for CertificateDocument {
    fn from(r: &Realization) -> Self {
        let cert = &r.certificate;
        let gram = r.surface.gram().map(|row| row.map(narrow));
        let (max_gonality, max_cliff) = bn_bounds(cert.genus);
        CertificateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            query: QueryDoc {
                kind: r.query.kind.as_str().to_string(),
                genus: r.query.genus,
                target: r.query.target,
            },
            surface: SurfaceDoc { genus: cert.genus, d: cert.degree_d, gram },
            results: ResultsDoc {
                min_cliff: cert.min_cliff,
                gonality: cert.gonality,
                witnesses: cert.witnesses.iter().map(class_doc).collect(),
                candidate_set: cert.candidate_set.iter().map(class_doc).collect(),
                bounds: BoundsDoc { max_gonality, max_cliff },
                gonality_sandwich: SandwichDoc {
                    pencil_degree: cert.sandwich.pencil_degree,
                    pencil_h0: cert.sandwich.pencil_sections.to_string(),
                    lower_from_cliff: cert.sandwich.lower_from_cliff,
                },
            },
            checks: ChecksDoc {
                nef: NefDoc {
                    holds: r.nef.holds(),
                    verdict: verdict_name(r.nef.verdict).to_string(),
                    l_squared: narrow(r.nef.l_squared),
                    roots: r
                        .nef
                        .evidence
                        .iter()
                        .map(|e| RootDoc {
                            class: class_doc(&e.root),
                            side: side_name(e.side).to_string(),
                            pairing_with_l: narrow(e.pairing_with_l),
                        })
                        .collect(),
                },
                bpf: BpfDoc {
                    holds: r.bpf.holds,
                    obstructions: r.bpf.obstructions.iter().map(class_doc).collect(),
                    method: r.bpf.method.to_string(),
                },
                oracle_agrees: cert.oracle_agrees,
                census: CensusDoc::from(&cert.oracle),
                census_at_double_radius: CensusDoc::from(&cert.oracle_doubled),
            },
            assumptions: cert.assumption_log.clone(),
            convention_branch: cert.convention_branch.map(|b| b.as_str().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowDoc {
    pub genus: i64,
    pub kind: String,
    pub target: i64,
    pub d: i64,
    pub min_cliff: i64,
    pub gonality: i64,
    pub oracle_agrees: bool,
    pub bpf_holds: bool,
    pub nef_holds: bool,
    pub convention_branch: Option<String>,
}

impl From<&RealizationRow> for TableRowDoc {
    fn from(r: &RealizationRow) -> Self {
        TableRowDoc {
            genus: r.genus,
            kind: r.kind.as_str().to_string(),
            target: r.target,
            d: r.degree,
            min_cliff: r.min_cliff,
            gonality: r.gonality,
            oracle_agrees: r.oracle_agrees,
            bpf_holds: r.bpf_holds,
            nef_holds: r.nef_holds,
            convention_branch: r.convention_branch.map(|b| b.as_str().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub schema_version: String,
    pub genus_min: i64,
    pub genus_max: i64,
    pub rows: Vec<TableRowDoc>,
}

impl TableDocument {
    pub fn new(genus_min: i64, genus_max: i64, table: &RealizationTable) -> Self {
        TableDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            genus_min,
            genus_max,
            rows: table.rows.iter().map(TableRowDoc::from).collect(),
        }
    }
}
