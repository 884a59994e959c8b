//! JSON documents for every input and output type.
//!
//! Sets are written as sorted label lists and families of sets in sorted
//! order, so equal objects serialize identically. Infinite values are the
//! string `"inf"`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebraic::{LinearizedParam, Term, ToricRep};
use crate::convex::WindowFunction;
use crate::error::{Error, Result};
use crate::flock::ExplicitFlock;
use crate::ground::{GroundSet, Label};
use crate::intvec::IntVec;
use crate::linalg::{format_rational, parse_rational, IntMatrix, RatMatrix};
use crate::matroid::{check_basis_axioms, BasisCheck, Matroid};
use crate::rigidity::RigidityVerdict;
use crate::subset::Subset;
use crate::valuation::{ExtInt, Valuation};

fn input<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Input(format!("{what}: {e}")))
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

fn ground_from(labels: Vec<Label>) -> Result<Arc<GroundSet>> {
    Ok(Arc::new(GroundSet::new(labels)?))
}

pub fn subset_to_json(ground: &GroundSet, s: Subset) -> Value {
    json!(ground.labels_of(s))
}

/// Sorted list of sets.
pub fn family_to_json(ground: &GroundSet, sets: &[Subset]) -> Value {
    let mut out: Vec<Vec<Label>> = sets.iter().map(|&s| ground.labels_of(s)).collect();
    out.sort();
    json!(out)
}

pub fn ext_to_json(v: ExtInt) -> Value {
    match v {
        ExtInt::Fin(x) => json!(x),
        ExtInt::Inf => json!("inf"),
    }
}

pub fn ext_from_json(v: &Value) -> Result<ExtInt> {
    match v {
        Value::String(s) if s == "inf" => Ok(ExtInt::Inf),
        Value::Number(n) => n
            .as_i64()
            .map(ExtInt::Fin)
            .ok_or_else(|| Error::Input(format!("value {n} is not a 64-bit integer"))),
        other => Err(Error::Input(format!("expected an integer or \"inf\", found {other}"))),
    }
}

/// Parses `"0,-2,-2,0"` into a vector.
pub fn parse_alpha(text: &str) -> Result<IntVec> {
    let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
    if trimmed.trim().is_empty() {
        return Ok(IntVec(Vec::new()));
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Input(format!("bad coordinate {s:?} in alpha")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntVec)
}

pub fn check_len(alpha: &IntVec, n: usize) -> Result<()> {
    if alpha.len() == n {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "alpha has {} coordinates, the ground set has {n}",
            alpha.len()
        )))
    }
}

// Matroids.

#[derive(Deserialize)]
struct MatroidDoc {
    ground: Vec<Label>,
    rank: usize,
    bases: Vec<Vec<Label>>,
}

/// A basis family read without checking the exchange axiom.
#[derive(Clone, Debug)]
pub struct RawMatroid {
    pub ground: Arc<GroundSet>,
    pub rank: usize,
    pub bases: Vec<Subset>,
}

impl RawMatroid {
    pub fn check(&self) -> Result<BasisCheck> {
        check_basis_axioms(&self.ground, self.rank, &self.bases)
    }

    pub fn into_matroid(self) -> Result<Matroid> {
        Matroid::new(self.ground, self.rank, self.bases)
    }
}

pub fn raw_matroid_from_json(v: &Value) -> Result<RawMatroid> {
    let doc: MatroidDoc = input(v, "matroid")?;
    let ground = ground_from(doc.ground)?;
    let bases = doc
        .bases
        .iter()
        .map(|b| ground.subset(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawMatroid {
        ground,
        rank: doc.rank,
        bases,
    })
}

pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    raw_matroid_from_json(v)?.into_matroid()
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    json!({
        "ground": m.ground().labels(),
        "rank": m.full_rank(),
        "bases": family_to_json(m.ground(), m.bases()),
    })
}

pub fn basis_check_to_json(ground: &GroundSet, c: &BasisCheck) -> Value {
    use crate::matroid::BasisViolation;
    match c {
        BasisCheck::Valid => json!({"valid": true}),
        BasisCheck::Violation(BasisViolation::Empty) => {
            json!({"valid": false, "violation": "empty basis family"})
        }
        BasisCheck::Violation(BasisViolation::Exchange { basis, other, out }) => json!({
            "valid": false,
            "violation": "exchange",
            "basis": subset_to_json(ground, *basis),
            "other": subset_to_json(ground, *other),
            "out": ground.label(*out),
        }),
    }
}

// Matrices.

#[derive(Deserialize)]
struct MatrixDoc {
    rows: Vec<Vec<Value>>,
    #[serde(default)]
    ground: Option<Vec<Label>>,
}

fn entry(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(BigInt::from(n.as_i64().unwrap()))),
        other => Err(Error::Input(format!("matrix entry {other} is not an integer or \"num/den\""))),
    }
}

/// The matrix and, when present, column labels (default `1..n`).
pub fn matrix_from_json(v: &Value) -> Result<(RatMatrix, Arc<GroundSet>)> {
    let doc: MatrixDoc = input(v, "matrix")?;
    let rows = doc
        .rows
        .iter()
        .map(|r| r.iter().map(entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let a = RatMatrix::new(rows)?;
    let ground = match doc.ground {
        Some(ls) => ground_from(ls)?,
        None => Arc::new(GroundSet::numbered(a.ncols())),
    };
    if ground.len() != a.ncols() {
        return Err(Error::Input(format!(
            "matrix has {} columns but {} labels",
            a.ncols(),
            ground.len()
        )));
    }
    Ok((a, ground))
}

pub fn matrix_to_json(a: &RatMatrix) -> Value {
    let rows: Vec<Vec<String>> = a
        .rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    json!({ "rows": rows })
}

// Valuations.

#[derive(Deserialize)]
struct ValuationEntry {
    basis: Vec<Label>,
    value: Value,
}

#[derive(Deserialize)]
struct ValuationDoc {
    ground: Vec<Label>,
    d: usize,
    values: Vec<ValuationEntry>,
}

pub fn valuation_from_json(v: &Value) -> Result<Valuation> {
    let doc: ValuationDoc = input(v, "valuation")?;
    let ground = ground_from(doc.ground)?;
    let entries = doc
        .values
        .iter()
        .map(|e| Ok((ground.subset(&e.basis)?, ext_from_json(&e.value)?)))
        .collect::<Result<Vec<_>>>()?;
    Valuation::from_entries(ground, doc.d, &entries, ExtInt::Inf)
}

/// Lists the finite values only; omitted bases read back as `∞`.
pub fn valuation_to_json(nu: &Valuation) -> Value {
    let g = nu.ground();
    let mut values: Vec<(Vec<Label>, i64)> = nu
        .finite_values()
        .iter()
        .map(|&(b, v)| (g.labels_of(b), v))
        .collect();
    values.sort();
    json!({
        "ground": g.labels(),
        "d": nu.d(),
        "values": values
            .into_iter()
            .map(|(b, v)| json!({"basis": b, "value": v}))
            .collect::<Vec<_>>(),
    })
}

// Window functions.

#[derive(Deserialize)]
struct PointEntry {
    x: Vec<i64>,
    v: Value,
}

#[derive(Deserialize)]
struct WindowDoc {
    n: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    values: Vec<PointEntry>,
}

pub fn window_from_json(v: &Value) -> Result<WindowFunction> {
    let doc: WindowDoc = input(v, "window function")?;
    if doc.lo.len() != doc.n || doc.hi.len() != doc.n {
        return Err(Error::Input(format!("lo and hi must have {} coordinates", doc.n)));
    }
    let mut table = HashMap::new();
    for e in &doc.values {
        if e.x.len() != doc.n {
            return Err(Error::Input(format!("point {:?} has the wrong length", e.x)));
        }
        table.insert(IntVec(e.x.clone()), ext_from_json(&e.v)?);
    }
    let f = WindowFunction::from_fn(IntVec(doc.lo), IntVec(doc.hi), |x| {
        table.get(x).copied().unwrap_or(ExtInt::Inf)
    })?;
    if let Some(x) = table.keys().find(|x| !f.contains(x)) {
        return Err(Error::Input(format!("point {x:?} lies outside the box")));
    }
    Ok(f)
}

/// Lists finite points only.
pub fn window_to_json(f: &WindowFunction) -> Value {
    json!({
        "n": f.n(),
        "lo": f.lo(),
        "hi": f.hi(),
        "values": f
            .domain()
            .into_iter()
            .map(|(x, v)| json!({"x": x, "v": v}))
            .collect::<Vec<_>>(),
    })
}

// Explicit flocks.

#[derive(Deserialize)]
struct FlockEntry {
    alpha: Vec<i64>,
    matroid: Value,
}

#[derive(Deserialize)]
struct FlockDoc {
    radius: i64,
    entries: Vec<FlockEntry>,
}

pub fn explicit_flock_from_json(v: &Value) -> Result<ExplicitFlock> {
    let doc: FlockDoc = input(v, "flock")?;
    let mut table = HashMap::new();
    let mut shape: Option<(Arc<GroundSet>, usize)> = None;
    for e in &doc.entries {
        let m = matroid_from_json(&e.matroid)?;
        let (ground, rank) = shape.get_or_insert_with(|| (m.ground().clone(), m.full_rank()));
        if m.ground() != ground || m.full_rank() != *rank {
            return Err(Error::Input(format!(
                "entry at {:?} has a different ground set or rank",
                e.alpha
            )));
        }
        let m = Matroid::from_bases_unchecked(ground.clone(), *rank, m.bases().to_vec());
        table.insert(IntVec(e.alpha.clone()), m);
    }
    let (ground, rank) = shape.ok_or_else(|| Error::Input("flock has no entries".into()))?;
    let flock = ExplicitFlock {
        ground,
        rank,
        radius: doc.radius,
        table,
    };
    flock.validate()?;
    Ok(flock)
}

pub fn explicit_flock_to_json(f: &ExplicitFlock) -> Value {
    let mut keys: Vec<&IntVec> = f.table.keys().collect();
    keys.sort();
    json!({
        "radius": f.radius,
        "entries": keys
            .into_iter()
            .map(|a| json!({"alpha": a, "matroid": matroid_to_json(&f.table[a])}))
            .collect::<Vec<_>>(),
    })
}

// Algebraic representations.

#[derive(Deserialize)]
struct LinearizedDoc {
    p: u64,
    params: Vec<String>,
    coords: Vec<Vec<Term>>,
}

/// Reads a parametrization; `p` overrides the document's prime when given.
pub fn linearized_from_json(v: &Value, p: Option<u64>) -> Result<LinearizedParam> {
    let doc: LinearizedDoc = input(v, "linearized parametrization")?;
    LinearizedParam::new(p.unwrap_or(doc.p), doc.params, doc.coords)
}

pub fn linearized_to_json(param: &LinearizedParam) -> Value {
    json!({
        "p": param.p(),
        "params": param.params(),
        "coords": param.coords(),
    })
}

#[derive(Deserialize)]
struct ToricDoc {
    #[serde(default)]
    p: Option<u64>,
    #[serde(rename = "A")]
    a: Vec<Vec<Value>>,
}

/// Reads a toric representation; `p` overrides the document's prime.
pub fn toric_from_json(v: &Value, p: Option<u64>) -> Result<ToricRep> {
    let doc: ToricDoc = input(v, "toric representation")?;
    let p = p
        .or(doc.p)
        .ok_or_else(|| Error::Input("no prime given; pass --p or set \"p\"".into()))?;
    let rows = doc
        .a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let q = entry(x)?;
                    if q.is_integer() {
                        Ok(q.to_integer())
                    } else {
                        Err(Error::Input(format!("toric entry {x} is not an integer")))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ToricRep::new(IntMatrix::new(rows)?, p)
}

pub fn toric_to_json(rep: &ToricRep) -> Value {
    let rows: Vec<Vec<Value>> = rep
        .matrix()
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v)))
                .collect()
        })
        .collect();
    json!({ "p": rep.p(), "A": rows })
}

// Rigidity.

pub fn rigidity_to_json(v: &RigidityVerdict) -> Value {
    match v {
        RigidityVerdict::Rigid => json!({"verdict": "rigid"}),
        RigidityVerdict::NotRigid(w) => {
            json!({"verdict": "not_rigid", "witness": valuation_to_json(w)})
        }
        RigidityVerdict::Inconclusive(dir) => json!({
            "verdict": "inconclusive",
            "direction": dir.iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

#[derive(Deserialize)]
struct VerdictDoc {
    verdict: String,
    #[serde(default)]
    witness: Option<Value>,
    #[serde(default)]
    direction: Option<Vec<String>>,
}

pub fn rigidity_from_json(v: &Value) -> Result<RigidityVerdict> {
    let doc: VerdictDoc = input(v, "rigidity verdict")?;
    match doc.verdict.as_str() {
        "rigid" => Ok(RigidityVerdict::Rigid),
        "not_rigid" => {
            let w = doc
                .witness
                .ok_or_else(|| Error::Input("not_rigid verdict without witness".into()))?;
            Ok(RigidityVerdict::NotRigid(valuation_from_json(&w)?))
        }
        "inconclusive" => Ok(RigidityVerdict::Inconclusive(
            doc.direction
                .unwrap_or_default()
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?,
        )),
        other => Err(Error::Input(format!("unknown verdict {other:?}"))),
    }
}
