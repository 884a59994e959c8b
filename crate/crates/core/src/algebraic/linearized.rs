//! Additive (linearized) parametrizations `x ↦ (Σ c x_v^{p^k})_i` over a
//! prime field, their Frobenius twists and tangent spaces.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::FpPoly;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::intvec::{box_points, IntVec};
use crate::linalg::{bareiss, check_prime, pow_mod, Domain, FpMatrix};
use crate::matroid::{matroid_from_fp_matrix, Matroid};
use crate::subset::{k_subsets, Subset};

/// The term `c x_v^{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub v: usize,
    pub k: i64,
    pub c: u64,
}

/// Coordinate `i` is `Σ c x_v^{p^k}` over the terms of `coords[i]`.
/// Coefficients lie in GF(p), where Frobenius acts trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedParam {
    p: u64,
    params: Vec<String>,
    coords: Vec<Vec<Term>>,
    generic_rank: usize,
}

impl LinearizedParam {
    pub fn new(p: u64, params: Vec<String>, coords: Vec<Vec<Term>>) -> Result<Self> {
        check_prime(p)?;
        if p >= 1 << 32 {
            return Err(Error::Input(format!("prime {p} is too large")));
        }
        if coords.is_empty() {
            return Err(Error::Input("parametrization has no coordinates".into()));
        }
        for (i, terms) in coords.iter().enumerate() {
            if terms.is_empty() {
                return Err(Error::Input(format!("coordinate {i} has no terms")));
            }
            let mut seen = HashSet::new();
            for t in terms {
                if t.v >= params.len() {
                    return Err(Error::Input(format!(
                        "coordinate {i} uses parameter {} of {}",
                        t.v,
                        params.len()
                    )));
                }
                if t.k < 0 {
                    return Err(Error::Input(format!("coordinate {i} has a negative exponent")));
                }
                if t.c == 0 || t.c >= p {
                    return Err(Error::Input(format!(
                        "coefficient {} of coordinate {i} is not a nonzero element of GF({p})",
                        t.c
                    )));
                }
                if !seen.insert((t.v, t.k)) {
                    return Err(Error::Input(format!(
                        "coordinate {i} repeats the term (v = {}, k = {})",
                        t.v, t.k
                    )));
                }
            }
        }
        let mut out = LinearizedParam {
            p,
            params,
            coords,
            generic_rank: 0,
        };
        out.normalize();
        out.generic_rank = bareiss(&out.poly_matrix()).0;
        Ok(out)
    }

    /// `(s, t, s + t, s + t^{p^g})`.
    pub fn example(p: u64, g: i64) -> Result<Self> {
        let t = |v, k| Term { v, k, c: 1 };
        Self::new(
            p,
            vec!["s".into(), "t".into()],
            vec![
                vec![t(0, 0)],
                vec![t(1, 0)],
                vec![t(0, 0), t(1, 0)],
                vec![t(0, 0), t(1, g)],
            ],
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn coords(&self) -> &[Vec<Term>] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn m(&self) -> usize {
        self.params.len()
    }

    /// Rank of the tangent space at a general point: the rank of the matrix
    /// of Frobenius polynomials over `GF(p)(F)`.
    pub fn generic_rank(&self) -> usize {
        self.generic_rank
    }

    /// Reparametrizes each `x_v` so its lowest Frobenius level is 0, and
    /// sorts terms.
    fn normalize(&mut self) {
        let mut low: HashMap<usize, i64> = HashMap::new();
        for t in self.coords.iter().flatten() {
            low.entry(t.v).and_modify(|k| *k = (*k).min(t.k)).or_insert(t.k);
        }
        for terms in self.coords.iter_mut() {
            for t in terms.iter_mut() {
                t.k -= low[&t.v];
            }
            terms.sort();
        }
    }

    /// Applies `F^{-α_i}` to coordinate `i`, then renormalizes.
    pub fn shift(&self, alpha: &IntVec) -> LinearizedParam {
        assert_eq!(alpha.len(), self.n(), "point has the wrong length");
        let mut out = self.clone();
        for (i, terms) in out.coords.iter_mut().enumerate() {
            for t in terms.iter_mut() {
                t.k -= alpha[i];
            }
        }
        out.normalize();
        out
    }

    /// The `m × n` Jacobian at the origin: coefficients of the `k = 0` terms.
    pub fn tangent(&self) -> FpMatrix {
        let mut a = FpMatrix::zeros(self.p, self.m(), self.n());
        for (i, terms) in self.coords.iter().enumerate() {
            for t in terms.iter().filter(|t| t.k == 0) {
                a.set(t.v, i, t.c);
            }
        }
        a
    }

    /// Entry `(v, i)` is `Σ c F^k` over the terms of coordinate `i` in `x_v`.
    pub fn poly_matrix(&self) -> Vec<Vec<FpPoly>> {
        let mut a = vec![vec![FpPoly::zero(self.p); self.n()]; self.m()];
        for (i, terms) in self.coords.iter().enumerate() {
            for t in terms {
                let mono = FpPoly::monomial(self.p, t.c, t.k as usize);
                a[t.v][i] = a[t.v][i].add(&mono);
            }
        }
        a
    }

    /// The algebraic matroid of the image: `B` is a basis when its columns of
    /// the polynomial matrix have full rank over `GF(p)(F)`.
    pub fn algebraic_matroid(&self) -> Matroid {
        let a = self.poly_matrix();
        let d = self.generic_rank;
        let bases = k_subsets(self.n(), d)
            .filter(|b| {
                let cols: Vec<usize> = b.iter().collect();
                let sub: Vec<Vec<FpPoly>> = a
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                    .collect();
                d == 0 || bareiss(&sub).0 == d
            })
            .collect();
        Matroid::from_bases_unchecked(Arc::new(GroundSet::numbered(self.n())), d, bases)
    }

    /// Tangent space `V_α` of the twist by `α`, row reduced.
    ///
    /// The twisted variety is the image of the polynomial matrix with column
    /// `i` scaled by `F^{-α_i}`. A parametrization whose differential has rank
    /// below the dimension is inseparable, so the rows are first replaced by
    /// a basis of their saturation in `GF(p)[F]^E`; the tangent space is that
    /// basis at `F = 0`.
    pub fn tangent_space_at(&self, alpha: &IntVec) -> Result<FpMatrix> {
        let shifted = self.shift(alpha);
        let red = saturated_tangent(self.p, &shifted.poly_matrix(), self.n());
        if red.nrows() != self.generic_rank {
            return Err(Error::Degenerate {
                alpha: alpha.0.clone(),
                found: red.nrows(),
                expected: self.generic_rank,
            });
        }
        Ok(red)
    }

    /// The matroid of `V_α`.
    pub fn matroid_at(&self, alpha: &IntVec) -> Result<Matroid> {
        let v = self.tangent_space_at(alpha)?;
        Ok(matroid_from_fp_matrix(
            &v,
            Arc::new(GroundSet::numbered(self.n())),
        ))
    }
}

/// Rows independent over `GF(p)(F)`.
fn independent_rows(rows: &[Vec<FpPoly>]) -> Vec<Vec<FpPoly>> {
    let mut chosen: Vec<Vec<FpPoly>> = Vec::new();
    for row in rows {
        chosen.push(row.clone());
        if bareiss(&chosen).0 < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

/// Column operations reduce the rows to `[H | 0]` over the Euclidean domain
/// `GF(p)[F]`, tracking the inverse of the unimodular transform; its first
/// `d` rows span the saturation. Returns their constant terms, row reduced.
fn saturated_tangent(p: u64, rows: &[Vec<FpPoly>], n: usize) -> FpMatrix {
    let mut a = independent_rows(rows);
    let d = a.len();
    let one = FpPoly::new(p, vec![1]);
    let mut inv: Vec<Vec<FpPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { FpPoly::zero(p) })
                .collect()
        })
        .collect();
    let swap = |a: &mut Vec<Vec<FpPoly>>, inv: &mut Vec<Vec<FpPoly>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        inv.swap(i, j);
    };
    for r in 0..d {
        for j in r + 1..n {
            while !a[r][j].is_nil() {
                if !a[r][r].is_nil() {
                    // col_r -= q col_j, inverse: row_j += q row_r
                    let (q, _) = a[r][r].div_rem(&a[r][j]);
                    for row in a.iter_mut() {
                        row[r] = row[r].sub(&q.mul(&row[j]));
                    }
                    let add: Vec<FpPoly> = inv[r].iter().map(|x| q.mul(x)).collect();
                    for (x, y) in inv[j].iter_mut().zip(add) {
                        *x = x.add(&y);
                    }
                }
                swap(&mut a, &mut inv, r, j);
            }
        }
    }
    let consts: Vec<Vec<u64>> = inv[..d]
        .iter()
        .map(|row| row.iter().map(|x| x.coeffs().first().copied().unwrap_or(0)).collect())
        .collect();
    if consts.is_empty() {
        return FpMatrix::zeros(p, 0, n);
    }
    FpMatrix::from_rows(p, &consts).rref().0
}

/// Entrywise Frobenius `x ↦ x^p`, the identity on a prime field.
fn frobenius(a: &FpMatrix) -> FpMatrix {
    let p = a.p();
    let rows: Vec<Vec<u64>> = a
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| pow_mod(x, p, p)).collect())
        .collect();
    if rows.is_empty() {
        return FpMatrix::zeros(p, 0, a.ncols());
    }
    FpMatrix::from_rows(p, &rows)
}

/// Tangent spaces `V_α` tabulated on `[-radius, radius + 1]^E`, so that
/// both axioms can be checked at every point of `[-radius, radius]^E`.
#[derive(Clone, Debug)]
pub struct FrobeniusFlockWindow {
    pub radius: i64,
    pub n: usize,
    pub spaces: HashMap<IntVec, FpMatrix>,
}

impl FrobeniusFlockWindow {
    pub fn from_param(param: &LinearizedParam, radius: i64) -> Result<Self> {
        use rayon::prelude::*;
        let n = param.n();
        let pts: Vec<IntVec> = box_points(&vec![-radius; n], &vec![radius + 1; n]).collect();
        let spaces = pts
            .into_par_iter()
            .map(|a| {
                let v = param.tangent_space_at(&a)?;
                Ok((a, v))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(FrobeniusFlockWindow { radius, n, spaces })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusAxiom {
    /// `V_α / i = V_{α+e_i} \ i`.
    Minor(usize),
    /// `V_{α+1} = F(V_α)`.
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusViolation {
    pub alpha: IntVec,
    pub axiom: FrobeniusAxiom,
    pub left: FpMatrix,
    pub right: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub radius: i64,
    pub minor_checks: u64,
    pub shift_checks: u64,
    pub skipped: u64,
    pub violation: Option<FrobeniusViolation>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks (FF1) as row-space identities and (FF2) against the entrywise
/// Frobenius at every `α ∈ [-radius, radius]^E`.
pub fn check_frobenius_axioms(w: &FrobeniusFlockWindow) -> FrobeniusReport {
    let mut report = FrobeniusReport {
        radius: w.radius,
        minor_checks: 0,
        shift_checks: 0,
        skipped: 0,
        violation: None,
    };
    let n = w.n;
    for alpha in box_points(&vec![-w.radius; n], &vec![w.radius; n]) {
        let Some(va) = w.spaces.get(&alpha) else {
            report.skipped += n as u64 + 1;
            continue;
        };
        for i in 0..n {
            let single = Subset::singleton(i);
            let Some(vb) = w.spaces.get(&alpha.plus_indicator(single, 1)) else {
                report.skipped += 1;
                continue;
            };
            let left = va.contract_away(single);
            let right = vb.project_away(single);
            if !left.same_row_space(&right) {
                report.violation = Some(FrobeniusViolation {
                    alpha,
                    axiom: FrobeniusAxiom::Minor(i),
                    left,
                    right,
                });
                return report;
            }
            report.minor_checks += 1;
        }
        let Some(up) = w.spaces.get(&(&alpha + &IntVec::ones(n))) else {
            report.skipped += 1;
            continue;
        };
        let twisted = frobenius(va);
        if !up.same_row_space(&twisted) {
            report.violation = Some(FrobeniusViolation {
                alpha,
                axiom: FrobeniusAxiom::Shift,
                left: up.clone(),
                right: twisted,
            });
            return report;
        }
        report.shift_checks += 1;
    }
    report
}
