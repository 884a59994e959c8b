//! Toric varieties of rational linear spaces: p-adic minor valuations and
//! the matroids of their twisted tangent spaces.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::intvec::IntVec;
use crate::linalg::{check_prime, val_p_int, val_p_rat, IntMatrix, RatMatrix};
use crate::matroid::{matroid_from_fp_matrix, Matroid};
use crate::subset::{k_subsets, Subset};
use crate::valuation::{ExtInt, Valuation};

/// Replaces columns `(i, j)` of `a` by `(s a_i + t b_j, -b/g a_i + a/g a_j)`
/// where `g = s a + t b` for the entries `a, b` of row `r`, and applies the
/// inverse operation to the rows of `inv`.
fn combine_columns(a: &mut [Vec<BigInt>], inv: &mut [Vec<BigInt>], r: usize, i: usize, j: usize) {
    let x = a[r][i].clone();
    let y = a[r][j].clone();
    let e = x.extended_gcd(&y);
    let (g, s, t) = (e.gcd, e.x, e.y);
    debug_assert_eq!(&s * &x + &t * &y, g);
    let xg = &x / &g;
    let yg = &y / &g;
    for row in a.iter_mut() {
        let ci = row[i].clone();
        let cj = row[j].clone();
        row[i] = &s * &ci + &t * &cj;
        row[j] = -&yg * &ci + &xg * &cj;
    }
    // inverse of [[s, -y/g], [t, x/g]] is [[x/g, y/g], [-t, s]]
    let ri = inv[i].clone();
    let rj = inv[j].clone();
    for c in 0..ri.len() {
        inv[i][c] = &xg * &ri[c] + &yg * &rj[c];
        inv[j][c] = -&t * &ri[c] + &s * &rj[c];
    }
}

/// Integer basis of `rowspace_Q(B) ∩ Z^n`, in row Hermite normal form.
///
/// Column operations bring `B` (denominators cleared) to `[H | 0]` with a
/// unimodular `U`; the saturated lattice is spanned by the first `d` rows of
/// `U^{-1}`.
pub fn saturate_lattice(b: &RatMatrix) -> Result<IntMatrix> {
    let d = b.nrows();
    let n = b.ncols();
    if b.rank() != d {
        return Err(Error::RankDeficient);
    }
    let (int, _) = b.clear_denominators();
    let mut a: Vec<Vec<BigInt>> = int.rows().to_vec();
    let mut inv: Vec<Vec<BigInt>> = IntMatrix::identity(n).rows().to_vec();
    for r in 0..d {
        if a[r][r].is_zero() {
            if let Some(j) = (r + 1..n).find(|&j| !a[r][j].is_zero()) {
                for row in a.iter_mut() {
                    row.swap(r, j);
                }
                inv.swap(r, j);
            }
        }
        for j in r + 1..n {
            if !a[r][j].is_zero() {
                combine_columns(&mut a, &mut inv, r, r, j);
            }
        }
        if a[r][r].is_zero() {
            return Err(Error::RankDeficient);
        }
    }
    inv.truncate(d);
    Ok(hermite_rows(&IntMatrix::new(inv)?))
}

/// Row Hermite normal form with zero rows removed: positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a: Vec<Vec<BigInt>> = m.rows().to_vec();
    let nrows = a.len();
    let ncols = m.ncols();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // gcd-combine every lower row into row r
        for i in r + 1..nrows {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let x = a[r][c].clone();
            let y = a[i][c].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xg = &x / &g;
            let yg = &y / &g;
            let (top, bottom): (Vec<BigInt>, Vec<BigInt>) = (0..ncols)
                .map(|k| {
                    (
                        &s * &a[r][k] + &t * &a[i][k],
                        -&yg * &a[r][k] + &xg * &a[i][k],
                    )
                })
                .unzip();
            a[r] = top;
            a[i] = bottom;
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -&*v;
            }
        }
        let piv = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in top[i].iter_mut().zip(&bottom[0]) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    if a.is_empty() {
        return IntMatrix::new(vec![]).expect("empty matrix");
    }
    IntMatrix::new(a).expect("rectangular")
}

/// The gcd of all maximal minors of a full-row-rank integer matrix.
pub fn maximal_minor_gcd(a: &IntMatrix) -> BigInt {
    k_subsets(a.ncols(), a.nrows()).fold(BigInt::zero(), |g, b| g.gcd(&a.minor(b)))
}

/// `val_p(det A_B)`, or `∞` when the minor vanishes.
pub fn padic_minor_valuation(a: &RatMatrix, b: Subset, p: u64) -> Result<ExtInt> {
    check_prime(p)?;
    if b.len() != a.nrows() {
        return Err(Error::Input(format!(
            "column set has {} elements, matrix has {} rows",
            b.len(),
            a.nrows()
        )));
    }
    if b.iter().any(|c| c >= a.ncols()) {
        return Err(Error::Input("column index out of range".into()));
    }
    Ok(match val_p_rat(&a.minor(b), p) {
        Some(v) => ExtInt::Fin(v),
        None => ExtInt::Inf,
    })
}

/// An integer `d × n` matrix whose rows generate a saturated lattice, with a
/// prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricRep {
    p: u64,
    a: IntMatrix,
}

impl ToricRep {
    pub fn new(a: IntMatrix, p: u64) -> Result<Self> {
        check_prime(p)?;
        if p >= 1 << 32 {
            return Err(Error::Input(format!("prime {p} is too large")));
        }
        if a.rank() != a.nrows() {
            return Err(Error::RankDeficient);
        }
        let g = maximal_minor_gcd(&a);
        if !g.is_one() {
            return Err(Error::Unsaturated(g.to_string()));
        }
        Ok(ToricRep { p, a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    pub fn rank(&self) -> usize {
        self.a.nrows()
    }

    /// Matroid of the tangent space of the twisted variety: saturate the rows
    /// of `A diag(p^{-α})` and reduce mod `p`.
    pub fn matroid_at(&self, alpha: &IntVec) -> Matroid {
        toric_matroid_at(self, alpha)
    }
}

/// `ν(B) = val_p(det A_B)`.
pub fn lindstrom_toric(rep: &ToricRep) -> Valuation {
    let ground = Arc::new(GroundSet::numbered(rep.n()));
    Valuation::from_fn(ground, rep.rank(), |b| match val_p_int(&rep.a.minor(b), rep.p) {
        Some(v) => ExtInt::Fin(v),
        None => ExtInt::Inf,
    })
}

pub fn toric_matroid_at(rep: &ToricRep, alpha: &IntVec) -> Matroid {
    assert_eq!(alpha.len(), rep.n(), "point has the wrong length");
    let top = alpha.max();
    let p = BigInt::from(rep.p);
    let scales: Vec<BigInt> = alpha
        .0
        .iter()
        .map(|&a| num_traits::pow(p.clone(), (top - a) as usize))
        .collect();
    let scaled: Vec<Vec<BigInt>> = rep
        .a
        .rows()
        .iter()
        .map(|row| row.iter().zip(&scales).map(|(v, s)| v * s).collect())
        .collect();
    let lattice = saturate_lattice(&IntMatrix::new(scaled).expect("rectangular").to_rat())
        .expect("column scaling keeps full row rank");
    let ground = Arc::new(GroundSet::numbered(rep.n()));
    matroid_from_fp_matrix(&lattice.reduce_mod(rep.p), ground)
}
