use std::io::Read;
use std::sync::Arc;

use serde_json::{json, Value};

use dglie_core::coalg::{CheckReport, CoalgElem};
use dglie_core::hkr::{self, FormalityPlugin, TruncationSpec};
use dglie_core::instance::{taylor_to_json, Instance, InstanceJson};
use dglie_core::linf::tensor::extend_multilinear;
use dglie_core::linf::{self, identity::linf_identity_check, LinfMorphism};
use dglie_core::parse::{parse_poly, parse_polydiff, parse_polyvec};
use dglie_core::{random, suite, truncated_poly_dga, DgaElem, Error, PolyDiffOp, PolyVec, Result};

use crate::{Cli, Outcome, Verb};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = match &cli.verb {
        Verb::Schouten { a, b } => polyvec_binary(cli, a, b, PolyVec::schouten),
        Verb::Wedge { a, b } => polyvec_binary(cli, a, b, PolyVec::wedge),
        Verb::Gerstenhaber { a, b } => {
            let (x, y) = pair(cli.n, a, b, parse_polydiff, PolyDiffOp::num_vars)?;
            Ok(Outcome::ok(diffop_report(&x.gerstenhaber(&y))))
        }
        Verb::Hochschild { a } => {
            let x = parse_polydiff(a, cli.n)?;
            Ok(Outcome::ok(diffop_report(&x.hochschild_d())))
        }
        Verb::Apply { op, args } => apply(cli, op, args),
        Verb::U1 { a } => {
            let x = parse_polyvec(a, cli.n)?;
            Ok(Outcome::ok(diffop_report(&hkr::u1(&x))))
        }
        Verb::Exp { instance } => exp_ln(cli, instance, true),
        Verb::Ln { instance } => exp_ln(cli, instance, false),
        Verb::McCheck { instance } => mc_check(cli, instance),
        Verb::McPush { instance } => mc_push(cli, instance),
        Verb::Twist { instance } => twist(cli, instance),
        Verb::TwistCheck { instance } => twist_check(cli, instance),
        Verb::LinfCheck { instance } => linf_check(cli, instance),
        Verb::Extend { instance } => extend(cli, instance),
        Verb::HkrReport { p_min, p_max } => hkr_report(cli, *p_min, *p_max),
        Verb::KontsevichCheck { bivector, samples } => kontsevich(cli, bivector.as_deref(), *samples),
        Verb::Selftest => {
            let results = suite::selftest(cli.seed);
            let passed = results.iter().all(|r| r.passed);
            Ok(Outcome {
                report: json!({ "seed": cli.seed, "criteria": results }),
                passed,
            })
        }
    }?;
    if let Value::Object(m) = &mut out.report {
        m.insert("passed".into(), Value::Bool(out.passed));
    }
    Ok(out)
}

/// Parses two expressions over a common number of variables.
fn pair<T>(
    n: Option<usize>,
    a: &str,
    b: &str,
    parse: fn(&str, Option<usize>) -> Result<T>,
    vars: fn(&T) -> usize,
) -> Result<(T, T)> {
    if n.is_some() {
        return Ok((parse(a, n)?, parse(b, n)?));
    }
    let (x, y) = (parse(a, None)?, parse(b, None)?);
    let m = vars(&x).max(vars(&y));
    Ok((parse(a, Some(m))?, parse(b, Some(m))?))
}

fn components(degrees: Vec<i32>) -> Value {
    degrees.into_iter().map(|p| json!({ "p": p, "arity": p + 1 })).collect()
}

fn polyvec_binary(cli: &Cli, a: &str, b: &str, f: fn(&PolyVec, &PolyVec) -> PolyVec) -> Result<Outcome> {
    let (x, y) = pair(cli.n, a, b, parse_polyvec, PolyVec::num_vars)?;
    let r = f(&x, &y);
    Ok(Outcome::ok(json!({
        "n": r.num_vars(),
        "result": r.to_string(),
        "components": components(r.degrees()),
    })))
}

fn diffop_report(r: &PolyDiffOp) -> Value {
    json!({
        "n": r.num_vars(),
        "result": r.to_string(),
        "components": components(r.degrees()),
        "order": r.order(),
    })
}

fn apply(cli: &Cli, op: &str, args: &[String]) -> Result<Outcome> {
    let mut n = cli.n;
    if n.is_none() {
        let mut m = parse_polydiff(op, None)?.num_vars();
        for a in args {
            m = m.max(parse_poly(a, None)?.num_vars());
        }
        n = Some(m);
    }
    let d = parse_polydiff(op, n)?;
    let fs = args.iter().map(|a| parse_poly(a, n)).collect::<Result<Vec<_>>>()?;
    let r = d.apply(&fs)?;
    Ok(Outcome::ok(json!({ "n": n, "result": r.to_string() })))
}

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Json(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Json(format!("cannot read {arg}: {e}")))
    }
}

const DEFAULT_ORDER: usize = 3;
const LOAD_CAP: usize = 64;

struct Loaded {
    inst: Instance,
    /// Word order for exhaustive checks.
    order: usize,
}

fn load(cli: &Cli, arg: &str) -> Result<Loaded> {
    let j: InstanceJson = serde_json::from_str(&read_input(arg)?)?;
    let mut inst = Instance::load(&j, cli.word_cap.unwrap_or(LOAD_CAP))?;
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let given = inst.omega.as_ref().map_or(0, CoalgElem::max_order);
    let cap = cli.word_cap.unwrap_or(linf::auto_cap(&inst.algebra, order).max(given));
    if let Some(w) = inst.omega.take() {
        inst.omega = Some(w.with_cap(cap)?);
    }
    Ok(Loaded { inst, order })
}

fn omega(l: &Loaded) -> Result<&CoalgElem> {
    l.inst.omega.as_ref().ok_or_else(|| Error::Json("instance has no `omega`".into()))
}

fn morphism(l: &Loaded) -> Result<&LinfMorphism> {
    l.inst.morphism.as_ref().ok_or_else(|| Error::Json("instance has no `morphism`".into()))
}

fn elem_json(e: &CoalgElem) -> Value {
    json!({ "text": e.format(), "terms": e.to_json() })
}

/// The first term of a nonzero element, as a witness.
fn witness(e: &CoalgElem) -> Option<String> {
    let m = e.module();
    e.terms()
        .next()
        .map(|(w, c)| format!("({}) {}", m.coeffs().format_elem(c), m.format_word(w)))
}

fn check_json(name: &str, r: &CheckReport) -> Value {
    json!({
        "check": name,
        "passed": r.passed,
        "witness": r.witness,
        "words_checked": r.words_checked,
    })
}

fn exp_ln(cli: &Cli, arg: &str, exp: bool) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let x = omega(&l)?;
    if exp {
        let e = x.exp()?;
        let grouplike = e.is_grouplike();
        Ok(Outcome {
            report: json!({ "exp": elem_json(&e), "grouplike": grouplike }),
            passed: grouplike,
        })
    } else {
        if !x.is_grouplike() {
            return Err(Error::Degree("ln takes a group-like element".into()));
        }
        let y = x.ln();
        let primitive = y.is_primitive();
        Ok(Outcome {
            report: json!({ "ln": elem_json(&y), "primitive": primitive }),
            passed: primitive,
        })
    }
}

fn mc_check(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let w = omega(&l)?;
    let r = linf::mc_residue(&l.inst.algebra, w)?;
    let via_exp = linf::mc_residue_via_exp(&l.inst.algebra, w)?;
    Ok(Outcome {
        report: json!({
            "residue": elem_json(&r),
            "paths_agree": r == via_exp,
            "witness": witness(&r),
        }),
        passed: r.is_zero() && r == via_exp,
    })
}

fn mc_push(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let psi = morphism(&l)?;
    let w2 = linf::mc_push(psi, omega(&l)?)?;
    let r = linf::mc_residue(psi.target(), &w2)?;
    Ok(Outcome {
        report: json!({
            "omega_prime": elem_json(&w2),
            "residue": elem_json(&r),
            "witness": witness(&r),
        }),
        passed: r.is_zero(),
    })
}

fn twist(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let w = omega(&l)?;
    let is_mc = linf::mc_residue(&l.inst.algebra, w)?.is_zero();
    let q = linf::twist_coder(&l.inst.algebra, w, cli.allow_non_mc)?;
    let mut report = json!({
        "maurer_cartan": is_mc,
        "coderivation": taylor_to_json(q.taylor()),
    });
    if let (Some(psi), true) = (&l.inst.morphism, is_mc) {
        let (m, w2) = linf::twist_morphism(psi, w)?;
        report["morphism"] = json!(taylor_to_json(m.taylor()));
        report["omega_prime"] = elem_json(&w2);
    }
    Ok(Outcome::ok(report))
}

fn twist_check(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let w = omega(&l)?;
    let a = &l.inst.algebra;
    let residue = linf::mc_residue(a, w)?;
    let q = linf::twist_coder(a, w, cli.allow_non_mc)?;
    let mut checks = vec![
        json!({
            "check": "maurer_cartan",
            "passed": residue.is_zero(),
            "witness": witness(&residue),
        }),
        check_json("square_zero", &q.check(l.order)?),
    ];
    let oracle = linf::conjugation_oracle(a, w, l.order)?;
    checks.push(check_json("conjugation_oracle", &oracle.agrees_with(&q.op(), l.order)?));
    if let (Some(psi), true) = (&l.inst.morphism, residue.is_zero()) {
        let (m, _) = linf::twist_morphism(psi, w)?;
        checks.push(check_json("morphism", &m.check(l.order)?));
        let oracle = linf::conjugation_oracle_morphism(psi, w, l.order)?;
        checks.push(check_json("morphism_oracle", &oracle.agrees_with(&m.op(), l.order)?));
    }
    Ok(checks_outcome(checks))
}

fn checks_outcome(checks: Vec<Value>) -> Outcome {
    let passed = checks.iter().all(|c| c["passed"] == Value::Bool(true));
    Outcome {
        report: json!({ "checks": checks }),
        passed,
    }
}

fn linf_check(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let mut checks = vec![check_json("algebra", &l.inst.algebra.check(l.order)?)];
    if let Some(psi) = &l.inst.morphism {
        checks.push(check_json("morphism", &psi.check(l.order)?));
        let target = l.inst.target.as_ref().expect("target loaded with the morphism");
        if l.inst.coeffs.dim() == 1 {
            let rep = linf_identity_check(&l.inst.dgla, target, psi, l.order)?;
            let w = rep.disagreement.clone().or(rep.explicit_witness.clone()).or(rep.coalgebra_witness.clone());
            checks.push(json!({
                "check": "explicit_identity",
                "passed": rep.passed(),
                "paths_agree": rep.paths_agree,
                "witness": w,
                "words_checked": rep.tuples_checked,
            }));
        }
    }
    Ok(checks_outcome(checks))
}

fn extend(cli: &Cli, arg: &str) -> Result<Outcome> {
    let l = load(cli, arg)?;
    let psi = morphism(&l)?;
    let a = l
        .inst
        .extend_over
        .as_ref()
        .ok_or_else(|| Error::Json("instance has no `extend_over`".into()))?;
    let target = l.inst.target.as_ref().expect("target loaded with the morphism");
    let ext = extend_multilinear(psi, &l.inst.dgla, target, a)?;
    let order = cli.order.unwrap_or(2);
    let rep = ext.morphism.check(order)?;
    Ok(Outcome {
        report: json!({
            "source_dim": ext.source.dim(),
            "target_dim": ext.target.dim(),
            "taylor": taylor_to_json(ext.morphism.taylor()),
            "checks": [check_json("morphism", &rep)],
        }),
        passed: rep.passed,
    })
}

fn hkr_report(cli: &Cli, p_min: i32, p_max: i32) -> Result<Outcome> {
    let spec = TruncationSpec::new(
        cli.n.unwrap_or(2),
        cli.trunc.unwrap_or(2) as u32,
        cli.order.unwrap_or(2) as u32,
        p_min,
        p_max,
    )?;
    let rows = hkr::hkr_report(&spec)?;
    let passed = rows.iter().filter(|r| r.window_reliable).all(|r| r.matches);
    Ok(Outcome {
        report: json!({ "spec": spec, "rows": rows }),
        passed,
    })
}

fn kontsevich(cli: &Cli, bivector: Option<&str>, samples: usize) -> Result<Outcome> {
    match bivector {
        Some(text) => {
            let pi = parse_polyvec(text, cli.n)?;
            let a = Arc::new(truncated_poly_dga(&[0], cli.trunc.unwrap_or(3))?);
            let hbar = DgaElem::basis(a.index_of("hbar").expect("generator hbar"));
            let rep = hkr::mc_bivector_workflow(&pi, &a, &hbar)?;
            let passed = rep.residue_zero;
            Ok(Outcome {
                report: serde_json::to_value(rep)?,
                passed,
            })
        }
        None => {
            let plugin = FormalityPlugin::u1_only(cli.n.unwrap_or(2));
            let mut rng = random::rng(cli.seed);
            let rep = hkr::kontsevich_conditions(&plugin, samples, cli.order.unwrap_or(2), &mut rng);
            let passed = rep.passed();
            Ok(Outcome {
                report: serde_json::to_value(rep)?,
                passed,
            })
        }
    }
}
