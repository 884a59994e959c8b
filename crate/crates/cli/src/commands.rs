//! One handler per subcommand, each a thin shell over a library call.

use std::path::Path;

use serde_json::{json, Value};

use valflock::algebraic::{check_frobenius_axioms, lindstrom_toric, toric_matroid_at, FrobeniusFlockWindow};
use valflock::convex::{fenchel_dual, WindowFunction};
use valflock::flock::{check_flock_axioms, check_flock_lemmas, extract_valuation, FlockSource, MatroidFlock};
use valflock::json as io;
use valflock::lazarson::{lazarson, lazarson_char_check, LazarsonVariant};
use valflock::rigidity::rigidity_certificate;
use valflock::{IntVec, Valuation};

use crate::report;
use crate::{Command, Failure, Output};

type Outcome = Result<Output, Failure>;

fn read(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::parse(&text)?)
}

fn valuation(path: &Path) -> Result<Valuation, Failure> {
    Ok(io::valuation_from_json(&read(path)?)?)
}

fn alpha_for(text: &str, n: usize) -> Result<IntVec, Failure> {
    let a = io::parse_alpha(text)?;
    io::check_len(&a, n)?;
    Ok(a)
}

/// Builds a flock from whichever document the file holds: an explicit
/// table, a valuation, a toric matrix or a linearized parametrization.
fn flock(path: &Path, p: Option<u64>) -> Result<MatroidFlock, Failure> {
    let v = read(path)?;
    let has = |k: &str| v.get(k).is_some();
    if has("entries") {
        Ok(MatroidFlock::from_table(io::explicit_flock_from_json(&v)?))
    } else if has("coords") {
        Ok(MatroidFlock::from_linearized(io::linearized_from_json(&v, p)?))
    } else if has("A") {
        Ok(MatroidFlock::from_toric(io::toric_from_json(&v, p)?))
    } else if has("values") && has("d") {
        Ok(MatroidFlock::from_valuation(io::valuation_from_json(&v)?))
    } else {
        Err(Failure::Input(format!(
            "{}: expected a flock table, valuation, toric matrix or linearized parametrization",
            path.display()
        )))
    }
}

pub fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::CheckMatroid { file } => {
            let raw = io::raw_matroid_from_json(&read(file)?)?;
            let check = raw.check()?;
            Ok(Output::Json(io::basis_check_to_json(&raw.ground, &check)))
        }
        Command::CheckValuation { file } => {
            let nu = valuation(file)?;
            Ok(Output::Json(report::valuation_check(&nu, &nu.check_axioms())))
        }
        Command::Support { file } => {
            let nu = valuation(file)?;
            Ok(Output::Json(io::matroid_to_json(&nu.support_matroid())))
        }
        Command::MatroidAt { file, alpha } => {
            let nu = valuation(file)?;
            let a = alpha_for(alpha, nu.n())?;
            Ok(Output::Json(io::matroid_to_json(&nu.matroid_at(&a))))
        }
        Command::Cells { file, alpha, svg, radius } => {
            let nu = valuation(file)?;
            if *svg {
                return Ok(Output::Svg(crate::svg::cell_slice(&nu, *radius)?));
            }
            let a = match alpha {
                Some(t) => alpha_for(t, nu.n())?,
                None => IntVec::zeros(nu.n()),
            };
            Ok(Output::Json(report::cell(&nu, &a)))
        }
        Command::Leaders { file, radius } => {
            let nu = valuation(file)?;
            Ok(Output::Json(report::leaders(&nu.enumerate_leaders(*radius))))
        }
        Command::GValue { file, alpha } => {
            let nu = valuation(file)?;
            let a = alpha_for(alpha, nu.n())?;
            Ok(Output::Json(json!({"alpha": a, "g": nu.g_value(&a)})))
        }
        Command::Fenchel { file, lo, hi } => {
            let v = read(file)?;
            let h = if v.get("d").is_some() {
                WindowFunction::from_valuation(&io::valuation_from_json(&v)?)
            } else {
                io::window_from_json(&v)?
            };
            let n = h.n();
            let lo = match lo {
                Some(t) => alpha_for(t, n)?,
                None => IntVec(vec![-3; n]),
            };
            let hi = match hi {
                Some(t) => alpha_for(t, n)?,
                None => IntVec(vec![3; n]),
            };
            Ok(Output::Json(io::window_to_json(&fenchel_dual(&h, lo, hi)?)))
        }
        Command::CheckFlock { file, p, radius, sets, lemmas } => {
            let f = flock(file, *p)?;
            let axioms = check_flock_axioms(&f, *radius, *sets)?;
            let mut out = report::flock_window(f.ground(), &axioms);
            if *lemmas {
                let support = match f.source() {
                    FlockSource::FromValuation(nu) => Some(nu.support_matroid()),
                    _ => None,
                };
                let l = check_flock_lemmas(&f, *radius, support.as_ref())?;
                out["lemmas"] = report::lemmas(f.ground(), &l);
            }
            Ok(Output::Json(out))
        }
        Command::ExtractValuation { file, p, cutoff } => {
            let f = flock(file, *p)?;
            let ex = extract_valuation(&f, *cutoff)?;
            if !ex.hit_cutoff.is_empty() {
                eprintln!(
                    "warning: {} subsets reached the cutoff {} and were set to inf",
                    ex.hit_cutoff.len(),
                    ex.cutoff
                );
            }
            Ok(Output::Json(io::valuation_to_json(&ex.valuation)))
        }
        Command::LindstromToric { file, p } => {
            let rep = io::toric_from_json(&read(file)?, *p)?;
            Ok(Output::Json(io::valuation_to_json(&lindstrom_toric(&rep))))
        }
        Command::ToricMatroidAt { file, p, alpha } => {
            let rep = io::toric_from_json(&read(file)?, *p)?;
            let a = alpha_for(alpha, rep.n())?;
            Ok(Output::Json(io::matroid_to_json(&toric_matroid_at(&rep, &a))))
        }
        Command::FlockFromLinearized { file, p, alpha, tangent } => {
            let param = io::linearized_from_json(&read(file)?, *p)?;
            let a = alpha_for(alpha, param.n())?;
            if *tangent {
                Ok(Output::Json(report::fp_matrix(&param.tangent_space_at(&a)?)))
            } else {
                Ok(Output::Json(io::matroid_to_json(&param.matroid_at(&a)?)))
            }
        }
        Command::CheckFf { file, p, radius } => {
            let param = io::linearized_from_json(&read(file)?, *p)?;
            let w = FrobeniusFlockWindow::from_param(&param, *radius)?;
            Ok(Output::Json(report::frobenius(&check_frobenius_axioms(&w))))
        }
        Command::Rigidity { file } => {
            let m = io::matroid_from_json(&read(file)?)?;
            Ok(Output::Json(io::rigidity_to_json(&rigidity_certificate(&m))))
        }
        Command::Lazarson { n, variant } => {
            let variant: LazarsonVariant = variant.parse()?;
            Ok(Output::Json(io::matroid_to_json(&lazarson(*n, variant)?)))
        }
        Command::LazarsonCheck { n, p } => {
            Ok(Output::Json(report::lazarson(&lazarson_char_check(*n, *p)?)))
        }
    }
}
