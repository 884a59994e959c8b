//! JSON renderings of check reports and verdicts.

use serde_json::{json, Value};

use valflock::algebraic::{FrobeniusAxiom, FrobeniusReport};
use valflock::flock::{FlockAxiom, FlockWindowReport, LemmaReport, LemmaViolation};
use valflock::json::{family_to_json, matroid_to_json, subset_to_json};
use valflock::lazarson::LazarsonCharReport;
use valflock::valuation::LeaderScan;
use valflock::{FpMatrix, GroundSet, IntVec, Valuation, ValuationCheck};

pub fn valuation_check(nu: &Valuation, c: &ValuationCheck) -> Value {
    let g = nu.ground();
    match c {
        ValuationCheck::Valid => json!({"valid": true}),
        ValuationCheck::NoFiniteValue => json!({"valid": false, "violation": "no finite value"}),
        ValuationCheck::Exchange { basis, other, out } => json!({
            "valid": false,
            "violation": "exchange",
            "basis": subset_to_json(g, *basis),
            "other": subset_to_json(g, *other),
            "out": g.label(*out),
        }),
    }
}

pub fn cell(nu: &Valuation, alpha: &IntVec) -> Value {
    let g = nu.ground();
    let sys = nu.cell_inequalities(alpha);
    let constraints: Vec<Value> = sys
        .constraints
        .iter()
        .map(|k| json!({"i": g.label(k.i), "j": g.label(k.j), "c": k.c}))
        .collect();
    json!({
        "alpha": alpha,
        "optimal_bases": family_to_json(g, sys.reference.bases()),
        "dimension": nu.cell_dimension(alpha),
        "constraints": constraints,
    })
}

pub fn leaders(scan: &LeaderScan) -> Value {
    json!({
        "radius": scan.radius,
        "complete": scan.complete,
        "leaders": scan
            .leaders
            .iter()
            .map(|l| json!({"alpha": l.alpha, "matroid": matroid_to_json(&l.matroid)}))
            .collect::<Vec<_>>(),
    })
}

fn flock_axiom(g: &GroundSet, a: &FlockAxiom) -> Value {
    match a {
        FlockAxiom::Minor(i) => json!({"minor": g.label(*i)}),
        FlockAxiom::Shift => json!("shift"),
        FlockAxiom::SetMinor(s) => json!({"set_minor": subset_to_json(g, *s)}),
    }
}

pub fn flock_window(g: &GroundSet, r: &FlockWindowReport) -> Value {
    let violation = r.violation.as_ref().map(|v| {
        json!({
            "alpha": v.alpha,
            "axiom": flock_axiom(g, &v.axiom),
            "left": matroid_to_json(&v.left),
            "right": matroid_to_json(&v.right),
        })
    });
    json!({
        "passed": r.passed(),
        "radius": r.radius,
        "minor_checks": r.minor_checks,
        "shift_checks": r.shift_checks,
        "set_checks": r.set_checks,
        "skipped": r.skipped,
        "violation": violation,
    })
}

pub fn lemmas(g: &GroundSet, r: &LemmaReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| match v {
            LemmaViolation::Triangle { alpha, i, j } => json!({
                "lemma": "triangle", "alpha": alpha,
                "i": subset_to_json(g, *i), "j": subset_to_json(g, *j),
            }),
            LemmaViolation::Rank { alpha, beta, set } => json!({
                "lemma": "rank", "alpha": alpha, "beta": beta, "set": subset_to_json(g, *set),
            }),
            LemmaViolation::Step { alpha, set } => json!({
                "lemma": "step", "alpha": alpha, "set": subset_to_json(g, *set),
            }),
            LemmaViolation::Walk { first, stranded } => json!({
                "lemma": "walk", "first": first, "stranded": stranded,
            }),
            LemmaViolation::Support { missing, extra } => json!({
                "lemma": "support",
                "missing": family_to_json(g, missing),
                "extra": family_to_json(g, extra),
            }),
        })
        .collect();
    json!({
        "passed": violations.is_empty(),
        "triangle_checks": r.triangle,
        "rank_checks": r.rank,
        "step_checks": r.step,
        "walk_regions": r.walk_regions,
        "violations": violations,
    })
}

pub fn fp_matrix(a: &FpMatrix) -> Value {
    json!({"p": a.p(), "rows": a.to_rows()})
}

pub fn frobenius(r: &FrobeniusReport) -> Value {
    let violation = r.violation.as_ref().map(|v| {
        let axiom = match v.axiom {
            FrobeniusAxiom::Minor(i) => json!({"minor": i + 1}),
            FrobeniusAxiom::Shift => json!("shift"),
        };
        json!({
            "alpha": v.alpha,
            "axiom": axiom,
            "left": fp_matrix(&v.left),
            "right": fp_matrix(&v.right),
        })
    });
    json!({
        "passed": r.passed(),
        "radius": r.radius,
        "minor_checks": r.minor_checks,
        "shift_checks": r.shift_checks,
        "skipped": r.skipped,
        "violation": violation,
    })
}

pub fn lazarson(r: &LazarsonCharReport) -> Value {
    json!({
        "n": r.n,
        "p": r.p,
        "det": r.det.to_string(),
        "expected": r.expected.to_string(),
        "det_matches": r.det_matches,
        "det_divisible_by_p": r.det_divisible_by_p,
        "p_divides_n": r.p_divides_n,
    })
}
