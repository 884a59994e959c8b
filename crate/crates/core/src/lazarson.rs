//! The Lazarson matroids `M_n^-` and `M_n` and their characteristic check.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Label};
use crate::linalg::{FieldSpec, IntMatrix};
use crate::matroid::{matroid_from_matrix_on, Matroid};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LazarsonVariant {
    /// The matroid of the matrix.
    Minus,
    /// The same bases without `{y_0, .., y_n}`.
    Full,
}

impl std::str::FromStr for LazarsonVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minus" => Ok(LazarsonVariant::Minus),
            "full" => Ok(LazarsonVariant::Full),
            _ => Err(Error::Input(format!("unknown variant {s:?}; use minus or full"))),
        }
    }
}

fn x(i: usize) -> Label {
    Label::Name(format!("x{i}"))
}

fn y(i: usize) -> Label {
    Label::Name(format!("y{i}"))
}

fn z() -> Label {
    Label::Name("z".into())
}

pub fn lazarson_ground(n: usize) -> Arc<GroundSet> {
    let mut labels: Vec<Label> = (0..=n).map(x).collect();
    labels.push(z());
    labels.extend((0..=n).map(y));
    Arc::new(GroundSet::new(labels).expect("distinct labels"))
}

/// The `(n + 1) × (2n + 3)` matrix `[I | 1 | J - I]` with columns in the
/// ground set's order.
pub fn lazarson_matrix(n: usize) -> (IntMatrix, Arc<GroundSet>) {
    let ground = lazarson_ground(n);
    let mut rows = vec![vec![0i64; ground.len()]; n + 1];
    let col = |l: Label| ground.index_of(&l).expect("label in ground set");
    for (i, row) in rows.iter_mut().enumerate() {
        row[col(x(i))] = 1;
        row[col(z())] = 1;
        for j in 0..=n {
            if j != i {
                row[col(y(j))] = 1;
            }
        }
    }
    (IntMatrix::from_i64(&rows).expect("rectangular"), ground)
}

fn all_y(ground: &GroundSet, n: usize) -> Subset {
    ground
        .subset(&(0..=n).map(y).collect::<Vec<_>>())
        .expect("labels in ground set")
}

pub fn lazarson(n: usize, variant: LazarsonVariant) -> Result<Matroid> {
    if n < 2 {
        return Err(Error::Input(format!("n = {n}; the family starts at n = 2")));
    }
    let (a, ground) = lazarson_matrix(n);
    let minus = matroid_from_matrix_on(&a.to_rat(), FieldSpec::Rationals, ground.clone())?;
    Ok(match variant {
        LazarsonVariant::Minus => minus,
        LazarsonVariant::Full => {
            let b1 = all_y(&ground, n);
            let bases = minus.bases().iter().copied().filter(|&b| b != b1).collect();
            Matroid::from_bases_unchecked(ground, n + 1, bases)
        }
    })
}

/// Bases `{x_i : i ∉ I} ∪ {y_i : i ∈ I}` of `M_n` with `|I| > 2`.
pub fn central_bases(n: usize) -> Result<Vec<Subset>> {
    let m = lazarson(n, LazarsonVariant::Full)?;
    let ground = m.ground().clone();
    let mut out = Vec::new();
    for bits in 0u64..(1 << (n + 1)) {
        let set = Subset::from_bits(bits);
        if set.len() <= 2 {
            continue;
        }
        let labels: Vec<Label> = (0..=n)
            .map(|i| if set.contains(i) { y(i) } else { x(i) })
            .collect();
        let b = ground.subset(&labels)?;
        if m.is_basis(b) {
            out.push(b);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazarsonCharReport {
    pub n: usize,
    pub p: u64,
    /// `det A_{B¹}` for `B¹ = {y_0, .., y_n}`.
    pub det: BigInt,
    pub expected: BigInt,
    pub det_matches: bool,
    pub det_divisible_by_p: bool,
    pub p_divides_n: bool,
}

pub fn lazarson_char_check(n: usize, p: u64) -> Result<LazarsonCharReport> {
    crate::linalg::check_prime(p)?;
    if n < 2 {
        return Err(Error::Input(format!("n = {n}; the family starts at n = 2")));
    }
    let (a, ground) = lazarson_matrix(n);
    let det = a.minor(all_y(&ground, n));
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let expected = BigInt::from(n as i64 * sign);
    let pb = BigInt::from(p);
    Ok(LazarsonCharReport {
        n,
        p,
        det_matches: det == expected,
        det_divisible_by_p: det.mod_floor(&pb).is_zero(),
        p_divides_n: (n as u64).is_multiple_of(p),
        det,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{named_matroid, NamedMatroid};

    #[test]
    fn small_cases() {
        let m2 = lazarson(2, LazarsonVariant::Full).unwrap();
        assert!(m2.check_axioms().is_valid());
        let fano = named_matroid(NamedMatroid::Fano).unwrap();
        assert!(m2.find_isomorphism(&fano).is_some());
        let m2m = lazarson(2, LazarsonVariant::Minus).unwrap();
        let nonfano = named_matroid(NamedMatroid::NonFano).unwrap();
        assert!(m2m.find_isomorphism(&nonfano).is_some());
        assert!(m2m.find_isomorphism(&fano).is_none());

        let m3 = lazarson(3, LazarsonVariant::Full).unwrap();
        let g = m3.ground().clone();
        assert!(!m3.is_basis(all_y(&g, 3)));
        let xs = g.subset(&(0..=3).map(x).collect::<Vec<_>>()).unwrap();
        assert!(m3.is_basis(xs));
        assert!(lazarson(1, LazarsonVariant::Full).is_err());
    }

    #[test]
    fn central() {
        assert!(central_bases(2).unwrap().is_empty());
        let m3 = lazarson(3, LazarsonVariant::Full).unwrap();
        let c3 = central_bases(3).unwrap();
        assert!(!c3.is_empty());
        assert!(c3.iter().all(|&b| m3.is_basis(b)));
    }

    #[test]
    fn determinants() {
        let r = lazarson_char_check(3, 3).unwrap();
        assert_eq!(r.det, BigInt::from(-3));
        assert!(r.det_matches && r.det_divisible_by_p);
        assert!(!lazarson_char_check(3, 2).unwrap().det_divisible_by_p);
        assert!(lazarson_char_check(2, 2).unwrap().det_divisible_by_p);
        assert!(lazarson_char_check(4, 2).unwrap().det_divisible_by_p);
    }
}
