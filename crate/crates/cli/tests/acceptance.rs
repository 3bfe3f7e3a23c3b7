//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line with its case count and wall time against the limit.
//!
//! Criteria run one at a time so that wall times are not inflated by
//! sibling tests.

use std::io::Write;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dglie_core::parse::{parse_element, Element, Kind};
use dglie_core::random::{random_poly, random_polydiff, random_polyvec, rng};
use dglie_core::suite::{self, CriterionResult, DEFAULT_SEED};

static SERIAL: Mutex<()> = Mutex::new(());

fn gate(limit: Option<Duration>, run: impl FnOnce() -> CriterionResult) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let r = run();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = r.passed && in_time;
    let limit_text = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
    // written to stderr directly so the line survives output capture
    let line = format!(
        "{} {} {:>6} cases {:>8.2}s (limit {}) {}{}\n",
        r.id,
        if ok { "PASS" } else { "FAIL" },
        r.cases,
        elapsed.as_secs_f64(),
        limit_text,
        r.title,
        r.witness.as_ref().map(|w| format!(" | witness: {w}")).unwrap_or_default(),
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(r.passed, "{} failed: {:?}", r.id, r.witness);
    assert!(in_time, "{} exceeded {limit_text}: {elapsed:?}", r.id);
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn a1_schouten_axioms() {
    gate(secs(10), || suite::schouten_axioms(DEFAULT_SEED, 300));
}

#[test]
fn a2_hochschild_gerstenhaber() {
    gate(secs(20), || suite::hochschild_axioms(DEFAULT_SEED + 1, 200));
}

#[test]
fn a3_coalgebra_layer() {
    gate(secs(30), suite::coalgebra_checks);
}

#[test]
fn a4_mc_machinery() {
    gate(secs(30), || suite::mc_machinery(DEFAULT_SEED + 3, 100));
}

#[test]
fn a5_twisting() {
    gate(secs(60), || suite::twisting(DEFAULT_SEED + 4, 50));
}

#[test]
fn a6_sign_table() {
    gate(secs(20), || suite::sign_table(DEFAULT_SEED + 5, 100));
}

#[test]
fn a7_hkr_shadow() {
    gate(secs(60), || suite::hkr_checks(DEFAULT_SEED + 6, 100));
}

#[test]
fn a8_finiteness() {
    gate(secs(30), || suite::finiteness(DEFAULT_SEED + 7, 50));
}

#[test]
fn a9_negative_controls() {
    gate(None, || suite::negative_controls(DEFAULT_SEED + 8));
}

fn dglie(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dglie")).args(args).output().expect("run dglie");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Selftest through the binary, byte-identical reruns and round-trips.
fn cli_determinism() -> CriterionResult {
    let mut cases = 0;
    let mut witness = None;
    let mut fail = |w: String| {
        witness.get_or_insert(w);
    };

    let seed = DEFAULT_SEED.to_string();
    let start = Instant::now();
    let (code, first) = dglie(&["selftest", "--seed", &seed]);
    let selftest_time = start.elapsed();
    cases += 1;
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap_or_default();
    let criteria = report["criteria"].as_array().map_or(0, Vec::len);
    if code != 0 || report["passed"] != serde_json::Value::Bool(true) || criteria != 9 {
        fail(format!("selftest exit {code}, {criteria} criteria"));
    }
    if selftest_time >= Duration::from_secs(60) {
        fail(format!("selftest took {selftest_time:?}"));
    }
    let (_, second) = dglie(&["selftest", "--seed", &seed]);
    cases += 1;
    if first != second {
        fail("selftest reruns differ".into());
    }
    for args in [
        &["kontsevich-check", "--seed", "11"][..],
        &["hkr-report", "--n", "2", "--trunc", "2", "--order", "2"][..],
        &["u1", "t1*d1/\\d2 + d3"][..],
    ] {
        cases += 1;
        if dglie(args) != dglie(args) {
            fail(format!("rerun of {args:?} differs"));
        }
    }

    let mut r = rng(DEFAULT_SEED);
    for i in 0..500 {
        let n = 1 + i % 3;
        let p = (i % 4) as i32 - 1;
        let values = [
            (Kind::Poly, Element::Poly(random_poly(n, 3, 4, &mut r))),
            (Kind::PolyVec, Element::PolyVec(random_polyvec(n, p.min(n as i32 - 1), 2, 3, &mut r))),
            (Kind::PolyDiffOp, Element::PolyDiffOp(random_polydiff(n, p, 2, 2, 3, &mut r))),
        ];
        for (kind, x) in values {
            cases += 1;
            let text = x.to_string();
            match parse_element(&text, kind, Some(n)) {
                Ok(y) if y == x && y.to_string() == text => {}
                other => fail(format!("round-trip of `{text}`: {other:?}")),
            }
        }
    }
    // parse then serialize canonicalizes, in process and through the binary
    for (text, canonical) in [("d2/\\d1", "-d1/\\d2"), ("t2*d2 + t1*d1", "t1*d1 + t2*d2")] {
        cases += 1;
        let (code, out) = dglie(&["wedge", "--n", "2", text, "1"]);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
        if code != 0 || v["result"] != canonical {
            fail(format!("`{text}` printed as {}", v["result"]));
        }
    }
    for text in ["t1*D[1;1]", "D[2] - t1^2*D[0;1]"] {
        cases += 1;
        let x = dglie_core::parse::parse_polydiff(text, Some(1)).expect("grammar");
        let (code, out) = dglie(&["hochschild", "--n", "1", text]);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
        if code != 0 || v["result"] != x.hochschild_d().to_string() {
            fail(format!("hochschild of `{text}` printed as {}", v["result"]));
        }
    }
    CriterionResult {
        id: "A10".into(),
        title: "CLI determinism and round-trips".into(),
        passed: witness.is_none(),
        cases,
        witness,
        elapsed: Duration::ZERO,
    }
}

#[test]
fn a10_cli_determinism() {
    gate(None, cli_determinism);
}
