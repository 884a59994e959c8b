//! Finite matroids given by an explicit list of bases.

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Label};
use crate::linalg::{FieldSpec, FpMatrix, IntMatrix, RatMatrix};
use crate::subset::{k_subsets, Subset};

/// Outcome of [`check_basis_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisCheck {
    Valid,
    Violation(BasisViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisViolation {
    /// (B1): the basis family is empty.
    Empty,
    /// (B2): no `j` in `other \ basis` exchanges with `out`.
    Exchange {
        basis: Subset,
        other: Subset,
        out: usize,
    },
}

impl BasisCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, BasisCheck::Valid)
    }
}

/// Checks (B1) and the symmetric exchange axiom (B2) exhaustively.
///
/// Malformed subsets (wrong size, elements outside `E`) are input errors.
pub fn check_basis_axioms(ground: &GroundSet, d: usize, bases: &[Subset]) -> Result<BasisCheck> {
    for &b in bases {
        ground.check_subset(b)?;
        if b.len() != d {
            return Err(Error::Input(format!(
                "basis {:?} has {} elements, expected {d}",
                ground.labels_of(b),
                b.len()
            )));
        }
    }
    let mut sorted = bases.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.is_empty() {
        return Ok(BasisCheck::Violation(BasisViolation::Empty));
    }
    let set: HashSet<Subset> = sorted.iter().copied().collect();
    for &b in &sorted {
        for &b2 in &sorted {
            for i in b.difference(b2).iter() {
                let ok = b2.difference(b).iter().any(|j| {
                    set.contains(&b.without(i).with(j)) && set.contains(&b2.with(i).without(j))
                });
                if !ok {
                    return Ok(BasisCheck::Violation(BasisViolation::Exchange {
                        basis: b,
                        other: b2,
                        out: i,
                    }));
                }
            }
        }
    }
    Ok(BasisCheck::Valid)
}

/// A matroid `(E, B)`. Bases are kept sorted and deduplicated, so equality is
/// equality of ground sets, ranks and basis families.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matroid {
    ground: Arc<GroundSet>,
    rank: usize,
    bases: Vec<Subset>,
}

impl Matroid {
    /// Validating constructor: fails on malformed input or an axiom violation.
    pub fn new(ground: Arc<GroundSet>, rank: usize, bases: Vec<Subset>) -> Result<Self> {
        match check_basis_axioms(&ground, rank, &bases)? {
            BasisCheck::Valid => Ok(Self::from_bases_unchecked(ground, rank, bases)),
            BasisCheck::Violation(v) => Err(Error::Domain(format!(
                "basis family violates the matroid axioms: {v:?}"
            ))),
        }
    }

    /// Builds a matroid without re-checking the exchange axiom. Callers must
    /// guarantee the basis family is valid.
    pub fn from_bases_unchecked(ground: Arc<GroundSet>, rank: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort();
        bases.dedup();
        Matroid {
            ground,
            rank,
            bases,
        }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full_rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, b: Subset) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    pub fn check_axioms(&self) -> BasisCheck {
        check_basis_axioms(&self.ground, self.rank, &self.bases).expect("well-formed by construction")
    }

    /// `r(J) = max |J ∩ B|`.
    pub fn rank(&self, j: Subset) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(j).len())
            .max()
            .unwrap_or(0)
    }

    pub fn rank_checked(&self, j: Subset) -> Result<usize> {
        self.ground.check_subset(j)?;
        Ok(self.rank(j))
    }

    /// `λ(J) = r(J) + r(E \ J) - r(E)`.
    pub fn connectivity(&self, j: Subset) -> usize {
        let co = j.complement(self.len());
        self.rank(j) + self.rank(co) - self.rank
    }

    pub fn connectivity_checked(&self, j: Subset) -> Result<usize> {
        self.ground.check_subset(j)?;
        Ok(self.connectivity(j))
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| !b.contains(i))
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| b.contains(i))
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.bases.iter().any(|b| s.is_subset_of(*b))
    }

    /// Bases of `M \ delete / contract`, still indexed by the original ground
    /// set (the removed elements simply never occur).
    pub fn minor_bases(&self, delete: Subset, contract: Subset) -> Vec<Subset> {
        let keep_max = |family: Vec<Subset>, score: &dyn Fn(Subset) -> usize| -> Vec<Subset> {
            let best = family.iter().map(|&b| score(b)).max().unwrap_or(0);
            family.into_iter().filter(|&b| score(b) == best).collect()
        };
        // deletion keeps the bases meeting `delete` least; contraction keeps
        // those meeting `contract` most
        let after_delete: Vec<Subset> = keep_max(self.bases.clone(), &|b| b.difference(delete).len())
            .into_iter()
            .map(|b| b.difference(delete))
            .collect();
        let mut out: Vec<Subset> = keep_max(after_delete, &|b| b.intersection(contract).len())
            .into_iter()
            .map(|b| b.difference(contract))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `M \ delete / contract` on the ground set `E \ (delete ∪ contract)`.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        self.ground.check_subset(delete)?;
        self.ground.check_subset(contract)?;
        let both = delete.intersection(contract);
        if !both.is_empty() {
            return Err(Error::Overlap(both));
        }
        let removed = delete.union(contract);
        let bases: Vec<Subset> = self
            .minor_bases(delete, contract)
            .into_iter()
            .map(|b| b.compress(removed))
            .collect();
        let rank = bases.first().map_or(0, |b| b.len());
        Ok(Matroid::from_bases_unchecked(
            Arc::new(self.ground.without(removed)),
            rank,
            bases,
        ))
    }

    pub fn delete(&self, set: Subset) -> Result<Matroid> {
        self.minor(set, Subset::EMPTY)
    }

    pub fn contract(&self, set: Subset) -> Result<Matroid> {
        self.minor(Subset::EMPTY, set)
    }

    /// The dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let n = self.len();
        Matroid::from_bases_unchecked(
            self.ground.clone(),
            n - self.rank,
            self.bases.iter().map(|b| b.complement(n)).collect(),
        )
    }

    /// Looks for a bijection `perm` of the ground set with
    /// `perm(B)` a basis of `other` exactly when `B` is a basis of `self`.
    pub fn find_isomorphism(&self, other: &Matroid) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.rank != other.rank || self.bases.len() != other.bases.len() {
            return None;
        }
        // elements must match in the number of bases containing them
        let degree = |m: &Matroid, i: usize| m.bases.iter().filter(|b| b.contains(i)).count();
        let da: Vec<usize> = (0..n).map(|i| degree(self, i)).collect();
        let db: Vec<usize> = (0..n).map(|i| degree(other, i)).collect();
        let target: HashSet<Subset> = other.bases.iter().copied().collect();
        (0..n).permutations(n).find(|perm| {
            (0..n).all(|i| da[i] == db[perm[i]])
                && self.bases.iter().all(|b| {
                    target.contains(&Subset::from_indices(b.iter().map(|i| perm[i])))
                })
        })
    }

    /// All circuits (minimal dependent sets); exponential, for small `n`.
    pub fn circuits(&self) -> Vec<Subset> {
        let n = self.len();
        let mut out = Vec::new();
        for k in 1..=self.rank + 1 {
            for s in k_subsets(n, k) {
                if !self.is_independent(s) && s.iter().all(|i| self.is_independent(s.without(i))) {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Builds the matroid whose bases are the column sets `B` with `A_B` of full
/// rank `d = rank(A)` over the given field.
pub fn matroid_from_matrix(a: &RatMatrix, field: FieldSpec) -> Result<Matroid> {
    matroid_from_matrix_on(a, field, Arc::new(GroundSet::numbered(a.ncols())))
}

/// As [`matroid_from_matrix`], with column `c` labelled by element `c` of
/// `ground` (labels are already in canonical order).
pub fn matroid_from_matrix_on(a: &RatMatrix, field: FieldSpec, ground: Arc<GroundSet>) -> Result<Matroid> {
    let field = field.validate()?;
    if ground.len() != a.ncols() {
        return Err(Error::Input(format!(
            "matrix has {} columns but the ground set has {} elements",
            a.ncols(),
            ground.len()
        )));
    }
    let (int, _) = a.clear_denominators();
    match field {
        FieldSpec::Rationals => Ok(matroid_from_int_matrix(&int, ground)),
        FieldSpec::PrimeField(p) => {
            for den in a.rows().iter().flatten().map(|v| v.denom()) {
                if crate::linalg::val_p_int(den, p).unwrap_or(0) > 0 {
                    return Err(Error::Input(format!(
                        "entry with denominator {den} is undefined over GF({p})"
                    )));
                }
            }
            // row scaling by p-free integers does not change the matroid
            let fp = reduce_rational_mod(a, p);
            Ok(matroid_from_fp_matrix(&fp, ground))
        }
    }
}

fn reduce_rational_mod(a: &RatMatrix, p: u64) -> FpMatrix {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let rows: Vec<Vec<u64>> = a
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    let n = v.numer().mod_floor(&pb).to_u64().unwrap();
                    let d = v.denom().mod_floor(&pb).to_u64().unwrap();
                    n * crate::linalg::pow_mod(d, p - 2, p) % p
                })
                .collect()
        })
        .collect();
    FpMatrix::from_rows(p, &rows)
}

pub fn matroid_from_int_matrix(a: &IntMatrix, ground: Arc<GroundSet>) -> Matroid {
    // a maximal set of independent rows spans the same row space
    let rows = row_basis(a);
    let d = rows.len();
    let bases = if d == 0 {
        vec![Subset::EMPTY]
    } else {
        let sub = IntMatrix::new(rows).expect("rectangular");
        k_subsets(a.ncols(), d)
            .filter(|&b| !num_traits::Zero::is_zero(&sub.minor(b)))
            .collect()
    };
    Matroid::from_bases_unchecked(ground, d, bases)
}

fn row_basis(a: &IntMatrix) -> Vec<Vec<num_bigint::BigInt>> {
    let mut chosen: Vec<Vec<num_bigint::BigInt>> = Vec::new();
    for row in a.rows() {
        chosen.push(row.clone());
        if crate::linalg::bareiss(&chosen).0 < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

pub fn matroid_from_fp_matrix(a: &FpMatrix, ground: Arc<GroundSet>) -> Matroid {
    let (red, _) = a.rref();
    let d = red.nrows();
    let bases = if d == 0 {
        vec![Subset::EMPTY]
    } else {
        k_subsets(a.ncols(), d)
            .filter(|&b| red.select_columns(b).rank() == d)
            .collect()
    };
    Matroid::from_bases_unchecked(ground, d, bases)
}

/// Fixture matroids on `{1, .., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedMatroid {
    Uniform { rank: usize, size: usize },
    Fano,
    NonFano,
}

/// Lines of the Fano plane on `{1..7}`; the non-Fano matroid drops `{4,5,6}`.
pub const FANO_LINES: [[i64; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 7],
    [1, 5, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 5],
    [3, 6, 7],
];

pub fn named_matroid(name: NamedMatroid) -> Result<Matroid> {
    match name {
        NamedMatroid::Uniform { rank, size } => uniform(rank, size),
        NamedMatroid::Fano => Ok(plane_minus_lines(&FANO_LINES)),
        NamedMatroid::NonFano => Ok(plane_minus_lines(
            &FANO_LINES
                .iter()
                .copied()
                .filter(|l| l != &[3, 4, 5])
                .collect::<Vec<_>>(),
        )),
    }
}

impl std::str::FromStr for NamedMatroid {
    type Err = Error;

    /// Accepts `fano`, `nonfano` and `uniform(d,n)` / `U(d,n)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace([' ', '_', '-'], "");
        match t.as_str() {
            "fano" | "f7" => return Ok(NamedMatroid::Fano),
            "nonfano" | "f7-" => return Ok(NamedMatroid::NonFano),
            _ => {}
        }
        let inner = t
            .strip_prefix("uniform(")
            .or_else(|| t.strip_prefix("u("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Input(format!("unknown matroid name {s:?}")))?;
        let (d, n) = inner
            .split_once(',')
            .ok_or_else(|| Error::Input(format!("unknown matroid name {s:?}")))?;
        let parse = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| Error::Input(format!("bad uniform parameter {x:?}")))
        };
        Ok(NamedMatroid::Uniform {
            rank: parse(d)?,
            size: parse(n)?,
        })
    }
}

pub fn uniform(d: usize, n: usize) -> Result<Matroid> {
    if d > n {
        return Err(Error::Input(format!("U({d},{n}) needs d <= n")));
    }
    Ok(Matroid::from_bases_unchecked(
        Arc::new(GroundSet::numbered(n)),
        d,
        k_subsets(n, d).collect(),
    ))
}

fn plane_minus_lines(lines: &[[i64; 3]]) -> Matroid {
    let ground = Arc::new(GroundSet::numbered(7));
    let lines: HashSet<Subset> = lines
        .iter()
        .map(|l| ground.subset_of_ints(l).expect("labels 1..7"))
        .collect();
    let bases = k_subsets(7, 3).filter(|b| !lines.contains(b)).collect();
    Matroid::from_bases_unchecked(ground, 3, bases)
}

/// Convenience: subset of a matroid's ground set from integer labels.
pub fn subset_of(m: &Matroid, labels: &[i64]) -> Subset {
    m.ground().subset_of_ints(labels).expect("labels in ground set")
}

pub fn labels(ls: &[&str]) -> Vec<Label> {
    ls.iter().map(|&s| Label::from(s)).collect()
}
