//! Integer lattice primitives: vectors in `Z^theta`, generalized Cartan
//! matrices, reflection matrices and word actions.
//!
//! All coordinates are arbitrary-precision integers. Finite examples stay
//! tiny, but enumeration intermediates on wild inputs must not wrap.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GcmError {
    #[error("not a generalized Cartan matrix at ({row},{col}): {reason}")]
    NotGcm {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("empty matrix: rank must be at least 1")]
    EmptyMatrix,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("matrix is not invertible over Z (determinant {det})")]
    NotUnimodular { det: BigInt },
}

/// Element of `Z^theta` written over the standard basis `alpha_1..alpha_theta`.
///
/// Ordering is lexicographic on coordinates; this is the canonical order
/// used for all sorted root sets and hash keys.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    coords: Vec<BigInt>,
}

impl RootVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RootVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RootVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Standard basis vector `alpha_i` (0-based index) of the given rank.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[i] = BigInt::one();
        RootVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        RootVector {
            coords: vec![BigInt::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    /// Positive means all coordinates `>= 0` and not all zero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|c| !c.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn negate(&self) -> Self {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        RootVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// The positive member of `{v, -v}`, if the pair has one.
    pub fn positive_representative(&self) -> Option<RootVector> {
        if self.is_positive() {
            Some(self.clone())
        } else if self.is_negative() {
            Some(self.negate())
        } else {
            None
        }
    }

    /// Sum of coordinates (the total degree for positive vectors).
    pub fn total_degree(&self) -> BigInt {
        self.coords.iter().sum()
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coords
            .iter()
            .map(|c| i64::try_from(c).expect("root coordinate exceeds i64"))
            .collect()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Generalized Cartan matrix: integer square matrix with `a_ii = 2`,
/// `a_ij <= 0` off the diagonal, and `a_ij = 0` iff `a_ji = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedCartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl GeneralizedCartanMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// Validates the three GCM axioms and wraps the matrix.
pub fn validate_gcm(entries: Vec<Vec<i64>>) -> Result<GeneralizedCartanMatrix, GcmError> {
    let rank = entries.len();
    if rank == 0 {
        return Err(GcmError::EmptyMatrix);
    }
    for (i, row) in entries.iter().enumerate() {
        if row.len() != rank {
            return Err(GcmError::NotSquare {
                row: i,
                len: row.len(),
                expected: rank,
            });
        }
    }
    for i in 0..rank {
        if entries[i][i] != 2 {
            return Err(GcmError::NotGcm {
                row: i,
                col: i,
                reason: format!("diagonal entry is {}, must be 2", entries[i][i]),
            });
        }
        for j in 0..rank {
            if i == j {
                continue;
            }
            if entries[i][j] > 0 {
                return Err(GcmError::NotGcm {
                    row: i,
                    col: j,
                    reason: format!("off-diagonal entry {} is positive", entries[i][j]),
                });
            }
            if (entries[i][j] == 0) != (entries[j][i] == 0) {
                return Err(GcmError::NotGcm {
                    row: i,
                    col: j,
                    reason: "zero-symmetry violated: a_ij = 0 iff a_ji = 0".into(),
                });
            }
        }
    }
    Ok(GeneralizedCartanMatrix { entries })
}

/// Invertible-over-Z endomorphism of `Z^theta`, stored column-wise as a
/// square matrix acting on coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    rank: usize,
    // m[i][j] = coefficient of alpha_i in the image of alpha_j
    m: Vec<Vec<BigInt>>,
}

impl LatticeMap {
    /// Wraps a matrix, checking it is invertible over `Z`.
    pub fn new(m: Vec<Vec<BigInt>>) -> Result<Self, GcmError> {
        let rank = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != rank {
                return Err(GcmError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: rank,
                });
            }
        }
        let map = LatticeMap { rank, m };
        let det = map.determinant();
        if det != BigInt::one() && det != -BigInt::one() {
            return Err(GcmError::NotUnimodular { det });
        }
        Ok(map)
    }

    pub fn identity(rank: usize) -> Self {
        let mut m = vec![vec![BigInt::zero(); rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        LatticeMap { rank, m }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.m[i][j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| {
                if i == j {
                    self.m[i][j].is_one()
                } else {
                    self.m[i][j].is_zero()
                }
            })
        })
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        assert_eq!(self.rank, v.rank(), "lattice map rank mismatch");
        let coords = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.m[i][j] * v.coord(j))
                    .sum::<BigInt>()
            })
            .collect();
        RootVector::new(coords)
    }

    /// Matrix product; `(self * other).apply(v) == self.apply(&other.apply(v))`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        assert_eq!(self.rank, other.rank, "lattice map rank mismatch");
        let n = self.rank;
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.m[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.m[k][j].is_zero() {
                        continue;
                    }
                    m[i][j] += &self.m[i][k] * &other.m[k][j];
                }
            }
        }
        LatticeMap { rank: n, m }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rank;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.m.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&p| !a[p][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn flatten(&self) -> Vec<BigInt> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| i64::try_from(c).expect("matrix entry exceeds i64"))
                    .collect()
            })
            .collect()
    }
}

/// The reflection `s_i` of a GCM: `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
///
/// 0-based `i`. The returned map squares to the identity and has
/// determinant -1.
pub fn reflection_matrix(
    a: &GeneralizedCartanMatrix,
    i: usize,
) -> Result<LatticeMap, GcmError> {
    let rank = a.rank();
    if i >= rank {
        return Err(GcmError::IndexOutOfRange { index: i, rank });
    }
    let mut m = vec![vec![BigInt::zero(); rank]; rank];
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = BigInt::one();
    }
    for j in 0..rank {
        // image of alpha_j gains -a_ij on the alpha_i coordinate
        m[i][j] -= BigInt::from(a.entry(i, j));
    }
    Ok(LatticeMap { rank, m })
}

/// Left-to-right composition applied to `v`: `apply_word(&[f, g], v) = f(g(v))`.
pub fn apply_word(maps: &[LatticeMap], v: &RootVector) -> Result<RootVector, GcmError> {
    let rank = v.rank();
    for map in maps {
        if map.rank() != rank {
            return Err(GcmError::RankMismatch {
                expected: rank,
                got: map.rank(),
            });
        }
    }
    let mut out = v.clone();
    for map in maps.iter().rev() {
        out = map.apply(&out);
    }
    Ok(out)
}
