//! Frozen outputs. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use dglie_core::hkr::{mc_bivector_workflow, so3_bivector};
use dglie_core::suite::sign_table_text;
use dglie_core::{truncated_poly_dga, DgaElem};

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} changed");
}

#[test]
fn sign_table() {
    golden("sign_table.json", &sign_table_text());
}

#[test]
fn so3_bivector_residue() {
    let a = std::sync::Arc::new(truncated_poly_dga(&[0], 3).unwrap());
    let hbar = DgaElem::basis(a.index_of("hbar").unwrap());
    let rep = mc_bivector_workflow(&so3_bivector(), &a, &hbar).unwrap();
    assert!(!rep.residue_zero);
    assert_eq!(rep.residue_min_order, Some(2));
    assert_eq!(rep.residue.keys().collect::<Vec<_>>(), ["hbar^2"]);
    golden("so3_residue.json", &(serde_json::to_string_pretty(&rep).unwrap() + "\n"));
}
