//! Polynomials over GF(p), used as entries of matrices over `GF(p)[F]`.

use crate::linalg::{pow_mod, Domain};

/// A polynomial over GF(p), coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    /// `c F^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(p, coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        Self::new(self.p, c)
    }

    /// Long division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = other.degree().expect("division by the zero polynomial");
        let inv = pow_mod(other.coeffs[dd], p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let f = rem[top] * inv % p;
            let shift = top - dd;
            quot[shift] = f;
            for (i, &c) in other.coeffs.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + p - f * c % p) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (Self::new(p, quot), Self::new(p, rem))
    }
}

impl Domain for FpPoly {
    fn is_nil(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn one_like(&self) -> Self {
        Self::new(self.p, vec![1])
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(p, out)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_nil(), "inexact polynomial division");
        q
    }
}
