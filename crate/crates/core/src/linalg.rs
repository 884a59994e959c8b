//! Exact matrices over Z, Q and GF(p).
//!
//! Integer determinants and ranks use fraction-free (Bareiss) elimination,
//! generic over [`Domain`] so the same routine serves polynomial rings.
//! Rational solves use plain Gauss-Jordan over `BigRational`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// An integral domain with exact division, as needed by Bareiss elimination.
pub trait Domain: Clone {
    fn is_nil(&self) -> bool;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, where the division is known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
}

impl Domain for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

/// Fraction-free elimination on a copy of `rows`. Returns the rank and, for
/// square input, the determinant (zero when singular).
pub fn bareiss<T: Domain>(rows: &[Vec<T>]) -> (usize, Option<T>) {
    let m = rows.len();
    if m == 0 {
        return (0, None);
    }
    let n = rows[0].len();
    let square = m == n;
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut prev = a[0][0].one_like();
    let mut rank = 0;
    let mut negate = false;
    let mut col = 0;
    while rank < m && col < n {
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_nil()) else {
            col += 1;
            continue;
        };
        if piv != rank {
            a.swap(piv, rank);
            negate = !negate;
        }
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = a[rank][col].mul(&a[r][c]).sub(&a[r][col].mul(&a[rank][c]));
                a[r][c] = v.div_exact(&prev);
            }
            a[r][col] = a[r][col].zero_like();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    let det = if square {
        if rank == n {
            let d = a[n - 1][n - 1].clone();
            Some(if negate { d.neg() } else { d })
        } else {
            Some(a[0][0].zero_like())
        }
    } else {
        None
    };
    (rank, det)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn val_p_int(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        x = q;
        k += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn val_p_rat(x: &BigRational, p: u64) -> Option<i64> {
    Some(val_p_int(x.numer(), p)? - val_p_int(x.denom(), p)?)
}

/// Parses `"7"`, `"-3"` or `"1/2"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Input("matrix rows have different lengths".into()));
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn select_columns(&self, cols: Subset) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| cols.iter().map(|c| r[c].clone()).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss(&self.rows).0
    }

    /// Determinant of the square column submatrix on `cols`.
    pub fn minor(&self, cols: Subset) -> BigInt {
        debug_assert_eq!(cols.len(), self.nrows());
        if cols.is_empty() {
            return BigInt::one();
        }
        bareiss(&self.select_columns(cols)).1.expect("square")
    }

    pub fn det(&self) -> BigInt {
        self.minor(Subset::full(self.ncols))
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
                .collect(),
            ncols: self.ncols,
        }
    }

    pub fn reduce_mod(&self, p: u64) -> FpMatrix {
        let pb = BigInt::from(p);
        let data = self
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|v| v.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect();
        FpMatrix {
            p,
            nrows: self.nrows(),
            ncols: self.ncols,
            data,
        }
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_i64()).collect())
            .collect()
    }
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: Vec<Vec<BigRational>>,
    ncols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Input("matrix rows have different lengths".into()));
        }
        Ok(RatMatrix { rows, ncols })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            rows: vec![vec![BigRational::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.rows[r][c] = v;
    }

    /// Scales each row by the lcm of its denominators. The row space over Q
    /// is unchanged; `scales[r]` is the factor applied to row `r`.
    pub fn clear_denominators(&self) -> (IntMatrix, Vec<BigInt>) {
        let mut scales = Vec::with_capacity(self.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let l = r
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                let out = r
                    .iter()
                    .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
                    .collect();
                scales.push(l);
                out
            })
            .collect();
        (
            IntMatrix {
                rows,
                ncols: self.ncols,
            },
            scales,
        )
    }

    pub fn rank(&self) -> usize {
        self.clear_denominators().0.rank()
    }

    /// Determinant of the square column submatrix on `cols`.
    pub fn minor(&self, cols: Subset) -> BigRational {
        let (int, scales) = self.clear_denominators();
        let num = int.minor(cols);
        let den = scales.iter().fold(BigInt::one(), |a, s| a * s);
        BigRational::new(num, den)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut a = self.rows.clone();
        let m = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    /// A basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (row, &pc) in rref.iter().zip(&pivots) {
                    x[pc] = -row[f].clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.nrows());
        let aug = RatMatrix {
            rows: self
                .rows
                .iter()
                .zip(b)
                .map(|(r, v)| {
                    let mut r = r.clone();
                    r.push(v.clone());
                    r
                })
                .collect(),
            ncols: self.ncols + 1,
        };
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.ncols];
        for (row, &pc) in rref.iter().zip(&pivots) {
            x[pc] = row[self.ncols].clone();
        }
        Some(x)
    }

    /// Multiplies column `c` by `f`.
    pub fn scale_column(&mut self, c: usize, f: &BigRational) {
        for r in self.rows.iter_mut() {
            r[c] *= f;
        }
    }
}

/// Matrix over GF(p), `p < 2^32`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    nrows: usize,
    ncols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        FpMatrix {
            p,
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zeros(p, rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.ncols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.ncols + c] = v % self.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.nrows)
            .map(|r| (0..self.ncols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn select_columns(&self, cols: Subset) -> FpMatrix {
        let idx: Vec<usize> = cols.iter().collect();
        let mut m = FpMatrix::zeros(self.p, self.nrows, idx.len());
        for r in 0..self.nrows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn delete_columns(&self, cols: Subset) -> FpMatrix {
        self.select_columns(Subset::full(self.ncols).difference(cols))
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    /// Reduced row echelon form with zero rows dropped, and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == a.nrows {
                break;
            }
            let Some(piv) = (r..a.nrows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..a.ncols {
                    a.data.swap(piv * a.ncols + j, r * a.ncols + j);
                }
            }
            let inv = self.inv(a.get(r, c));
            for j in 0..a.ncols {
                let v = a.get(r, j) * inv % p;
                a.set(r, j, v);
            }
            for i in 0..a.nrows {
                let f = a.get(i, c);
                if i != r && f != 0 {
                    for j in 0..a.ncols {
                        let v = (a.get(i, j) + p - f * a.get(r, j) % p) % p;
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.data.truncate(r * a.ncols);
        a.nrows = r;
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Whether the two matrices have the same row space.
    pub fn same_row_space(&self, other: &FpMatrix) -> bool {
        self.p == other.p && self.ncols == other.ncols && self.rref().0 == other.rref().0
    }

    /// Row-space projection that forgets the coordinates in `cols`
    /// (the deletion `W \ I`).
    pub fn project_away(&self, cols: Subset) -> FpMatrix {
        self.delete_columns(cols).rref().0
    }

    /// The subspace of vectors vanishing on `cols`, with those coordinates
    /// removed (the contraction `W / I`).
    pub fn contract_away(&self, cols: Subset) -> FpMatrix {
        // reorder so the contracted coordinates come first, eliminate, and
        // keep the rows whose leading part vanished
        let keep = Subset::full(self.ncols).difference(cols);
        let order: Vec<usize> = cols.iter().chain(keep.iter()).collect();
        let mut perm = FpMatrix::zeros(self.p, self.nrows, self.ncols);
        for r in 0..self.nrows {
            for (j, &c) in order.iter().enumerate() {
                perm.set(r, j, self.get(r, c));
            }
        }
        let (red, _) = perm.rref();
        let k = cols.len();
        let rows: Vec<Vec<u64>> = (0..red.nrows)
            .filter(|&r| (0..k).all(|j| red.get(r, j) == 0))
            .map(|r| (k..self.ncols).map(|j| red.get(r, j)).collect())
            .collect();
        if rows.is_empty() {
            return FpMatrix::zeros(self.p, 0, self.ncols - k);
        }
        FpMatrix::from_rows(self.p, &rows).rref().0
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Field over which a linear matroid is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::PrimeField(p) = self {
            check_prime(p)?;
            if p >= 1 << 32 {
                return Err(Error::Input(format!("prime {p} exceeds the supported 32-bit range")));
            }
        }
        Ok(self)
    }
}
