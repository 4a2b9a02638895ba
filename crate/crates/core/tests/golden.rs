//! Golden canonical JSON, one fixed input per method. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p sutra-core --test golden`.

use std::fs;
use std::path::PathBuf;

use sutra_core::{build_trace, list_methods, BuildOptions, DigitString};

fn fixture(id: &str) -> Vec<&'static str> {
    match id.split('.').nth(1).unwrap() {
        "add" => vec!["987", "654", "321"],
        "subtract" => vec!["5003", "1278"],
        "multiply" => vec!["123", "456"],
        "sqrt" => vec!["11000"],
        other => panic!("no fixture for {other}"),
    }
}

fn golden_path(id: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{id}.json"))
}

#[test]
fn traces_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for method in list_methods() {
        let ops: Vec<DigitString> = fixture(&method.id).iter().map(|t| t.parse().unwrap()).collect();
        let bytes = build_trace(&method.id, &ops, &BuildOptions::default())
            .unwrap()
            .to_canonical_bytes();
        let path = golden_path(&method.id);
        if update {
            fs::write(&path, &bytes).unwrap();
        }
        let expected = fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(expected == bytes, "{} differs from its golden file", method.id);
    }
}

#[test]
fn three_by_three_column_grouping() {
    let ops: Vec<DigitString> = ["123", "456"].iter().map(|t| t.parse().unwrap()).collect();
    let t = build_trace("vedic.multiply.crisscross", &ops, &BuildOptions::default()).unwrap();
    let groups: Vec<&str> = t
        .steps
        .iter()
        .map(|s| s.description.split(':').next().unwrap())
        .collect();
    assert_eq!(
        groups,
        [
            "Multiply the units digits vertically",
            "Multiply crosswise within the 2 columns on the right and add",
            "Multiply crosswise across all 3 columns and add",
            "Multiply crosswise within the 2 columns on the left and add",
            "Multiply the digits in the highest place vertically",
        ]
    );
}
