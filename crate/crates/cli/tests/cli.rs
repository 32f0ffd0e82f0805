use std::process::{Command, Output};

use k3cliff_cli::document::{CertificateDocument, TableDocument};

fn k3cliff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3cliff")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_clifford_json() {
    let out = k3cliff(&["verify", "--genus", "7", "--cliff", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: CertificateDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.results.min_cliff, 2);
    assert_eq!(doc.surface.d, 4);
    assert_eq!(doc.query.kind, "clifford");
    assert!(stderr(&out).is_empty());
}

#[test]
fn verify_gonality_out_of_range() {
    let out = k3cliff(&["verify", "--genus", "10", "--gonality", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(err.contains("floor((g+3)/2) = 6"), "{err}");
}

#[test]
fn verify_genus_three_convention() {
    let out = k3cliff(&["verify", "--genus", "3", "--cliff", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: CertificateDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.convention_branch.as_deref(), Some("hyperelliptic-g3"));

    let out = k3cliff(&["verify", "--genus", "3", "--cliff", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hyperelliptic-g3"));
}

#[test]
fn verify_needs_exactly_one_target() {
    assert_eq!(k3cliff(&["verify", "--genus", "7"]).status.code(), Some(2));
    let both = k3cliff(&["verify", "--genus", "7", "--cliff", "2", "--gonality", "4"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_an_error() {
    let out = k3cliff(&["verify", "--genus", "7", "--cliff", "2", "--verbose"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["verify", "--genus", "12", "--gonality", "5", "--json"];
    let first = stdout(&k3cliff(&args));
    assert_eq!(first, stdout(&k3cliff(&args)));
    let doc: CertificateDocument = serde_json::from_str(&first).unwrap();
    let mut again = serde_json::to_string_pretty(&doc).unwrap();
    again.push('\n');
    assert_eq!(again, first);
}

#[test]
fn table_tsv_all_verified() {
    let out = k3cliff(&["table", "--genus-min", "3", "--genus-max", "20", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("genus\tkind\ttarget\td\t"));
    let rows: Vec<_> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(!row.contains(' '), "{row:?}");
        let cells: Vec<_> = row.split('\t').collect();
        assert_eq!(cells.len(), 10);
        assert_eq!(&cells[6..9], ["true", "true", "true"]);
    }
}

#[test]
fn table_md_single_genus() {
    let out = k3cliff(&["table", "--genus-min", "4", "--genus-max", "4", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<_> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("| 4 | clifford | 0 |"));
    assert!(rows[3].starts_with("| 4 | gonality | 3 |"));
}

#[test]
fn table_json_parses() {
    let out = k3cliff(&["table", "--genus-min", "5", "--genus-max", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: TableDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((doc.genus_min, doc.genus_max), (5, 6));
    assert_eq!(doc.rows.len(), 6 + 6);
}

#[test]
fn table_inverted_range() {
    let out = k3cliff(&["table", "--genus-min", "5", "--genus-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn inspect_residual_class() {
    let out = k3cliff(&["inspect", "--genus", "7", "--degree", "4", "--class", "1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["D^2 = 4", "chi = 4", "cliff = 2", "D.L = 8", "D.E = 4"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn inspect_zero_class() {
    let out = k3cliff(&["inspect", "--genus", "5", "--degree", "3", "--class", "0,0"]);
    let text = stdout(&out);
    assert!(text.contains("chi = 2\n"));
    assert!(text.contains("profile = (1, 0, 1)\n"));
    assert!(text.contains("structure-sheaf"));
}

#[test]
fn inspect_root_class() {
    let out = k3cliff(&["inspect", "--genus", "6", "--degree", "3", "--class", "1,-2"]);
    let text = stdout(&out);
    assert!(text.contains("D^2 = -2\n"));
    assert!(text.contains("root class: yes\n"));
}

#[test]
fn inspect_malformed_class() {
    for bad in ["1", "1,2,3x", "x,1", ""] {
        let out = k3cliff(&["inspect", "--genus", "6", "--degree", "3", "--class", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn bruteforce_default_radius() {
    let out = k3cliff(&["bruteforce", "--genus", "9", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("minimum: 2\n"));
    assert!(text.contains("survivors: (0,1) (1,-1)\n"));
    assert!(text.contains("census: examined="));
}

#[test]
fn bruteforce_below_safe_radius() {
    let out = k3cliff(&["bruteforce", "--genus", "7", "--degree", "4", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("safe radius"));
}

#[test]
fn bruteforce_genus_three() {
    let out = k3cliff(&["bruteforce", "--genus", "3", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("minimum: 0\n"));
    assert!(text.contains("hyperelliptic-g3"));
}

#[test]
fn bruteforce_degree_out_of_range() {
    let out = k3cliff(&["bruteforce", "--genus", "9", "--degree", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
