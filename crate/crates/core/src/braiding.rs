//! Diagonal braiding matrices, their Cartan entries and reflections.
//!
//! A braiding matrix `q = (q_ij)` encodes the bicharacter
//! `chi(alpha_i, alpha_j) = q_ij`. Cartan entries come from the scalar
//! criterion below; it is cross-checked against the adjoint computation in
//! the oracle rather than trusted axiomatically.

use crate::gcm::{validate_gcm, GeneralizedCartanMatrix, RootVector};
use crate::scalar::{ScalarMode, ScalarValue};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidingError {
    #[error("braiding matrix must be square and non-empty")]
    BadShape,
    #[error("scalar mode mismatch at ({row},{col}): matrix mode is {expected}")]
    ModeMismatch {
        row: usize,
        col: usize,
        expected: ScalarMode,
    },
    #[error("unit self-braiding q_{i}{i} = 1 in root-of-unity mode (pass allow_unit_self_braiding to accept)")]
    UnitSelfBraiding { i: usize },
    #[error("Cartan entry bound exceeded at ({i},{j}): no admissible exponent m <= {bound}")]
    BoundExceeded { i: usize, j: usize, bound: u64 },
    #[error("undefined braiding entry at ({row},{col})")]
    UndefinedEntry { row: usize, col: usize },
}

/// Diagonal-type braiding matrix; all entries share one scalar mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidingMatrix {
    rank: usize,
    mode: ScalarMode,
    q: Vec<Vec<ScalarValue>>,
}

impl BraidingMatrix {
    /// Validates shape, single scalar mode, and (in root-of-unity mode)
    /// that no self-braiding is 1 unless explicitly allowed.
    pub fn new(q: Vec<Vec<ScalarValue>>, allow_unit_self_braiding: bool) -> Result<Self, BraidingError> {
        let rank = q.len();
        if rank == 0 || q.iter().any(|row| row.len() != rank) {
            return Err(BraidingError::BadShape);
        }
        let mode = q[0][0].mode();
        for (i, row) in q.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.mode() != mode {
                    return Err(BraidingError::ModeMismatch {
                        row: i,
                        col: j,
                        expected: mode,
                    });
                }
            }
        }
        if mode == ScalarMode::RootOfUnity && !allow_unit_self_braiding {
            for i in 0..rank {
                if q[i][i].is_one() {
                    return Err(BraidingError::UnitSelfBraiding { i });
                }
            }
        }
        Ok(BraidingMatrix { rank, mode, q })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarValue {
        &self.q[i][j]
    }

    pub fn entries(&self) -> &[Vec<ScalarValue>] {
        &self.q
    }

    /// Bicharacter extension `chi(v, w) = prod_{i,j} q_ij^{v_i w_j}`.
    pub fn bicharacter(&self, v: &RootVector, w: &RootVector) -> ScalarValue {
        assert_eq!(v.rank(), self.rank);
        assert_eq!(w.rank(), self.rank);
        let mut out = ScalarValue::one(self.mode);
        for i in 0..self.rank {
            for j in 0..self.rank {
                let e: BigInt = v.coord(i) * w.coord(j);
                if e != BigInt::from(0) {
                    out = out.mul(&self.q[i][j].pow(&e));
                }
            }
        }
        out
    }

    /// Twist-equivalence invariant: the diagonal together with the
    /// symmetrized products `q_ij q_ji`. Two braidings with equal twist
    /// keys have the same Nichols algebra data, so object identity in
    /// generated Cartan schemes is keyed on this.
    pub fn twist_key(&self) -> TwistKey {
        let diagonal = (0..self.rank).map(|i| self.q[i][i].clone()).collect();
        let mut symmetric = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                symmetric.push(self.q[i][j].mul(&self.q[j][i]));
            }
        }
        TwistKey {
            diagonal,
            symmetric,
        }
    }

    /// Full Cartan matrix of the braiding via [`diagonal_cartan_entry`].
    pub fn cartan_matrix(&self, bound: u64) -> Result<GeneralizedCartanMatrix, BraidingError> {
        let n = self.rank;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = diagonal_cartan_entry(self, i, j, bound)?;
            }
        }
        Ok(validate_gcm(rows).expect("Cartan entries always form a GCM"))
    }
}

/// Canonical object key for generated Cartan schemes: q_ii diagonal plus
/// the symmetric products q_ij q_ji (upper triangle, row-major).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistKey {
    diagonal: Vec<ScalarValue>,
    symmetric: Vec<ScalarValue>,
}

/// Cartan entry of a diagonal braiding:
/// `a_ij = -min{ m >= 0 : (m+1)_{q_ii} (q_ii^m q_ij q_ji - 1) = 0 }`,
/// `a_ii = 2`, evaluated exactly in the scalar mode.
///
/// Returns `BoundExceeded` when no such `m <= bound` exists, signalling
/// possible non-i-finiteness.
pub fn diagonal_cartan_entry(
    q: &BraidingMatrix,
    i: usize,
    j: usize,
    bound: u64,
) -> Result<i64, BraidingError> {
    assert!(i < q.rank() && j < q.rank(), "index out of range");
    assert!(bound >= 1, "bound must be at least 1");
    if i == j {
        return Ok(2);
    }
    let qii = q.entry(i, i);
    let qq = q.entry(i, j).mul(q.entry(j, i));
    for m in 0..=bound {
        let factor = qii.pow(&BigInt::from(m)).mul(&qq);
        if qii.q_integer_is_zero(m + 1) || factor.is_one() {
            return Ok(-(i64::try_from(m).expect("bound fits i64")));
        }
    }
    Err(BraidingError::BoundExceeded { i, j, bound })
}

/// Reflection of a braiding at index `i`:
/// `q'_jk = chi(s_i alpha_j, s_i alpha_k)
///        = q_jk q_ik^{-a_ij} q_ji^{-a_ik} q_ii^{a_ij a_ik}`,
/// the pull-back of the bicharacter along `s_i` computed from the supplied
/// Cartan row `a_row = (a_i1, ..., a_i theta)`.
pub fn reflect_braiding(
    q: &BraidingMatrix,
    i: usize,
    a_row: &[i64],
) -> Result<BraidingMatrix, BraidingError> {
    let n = q.rank();
    assert!(i < n, "index out of range");
    assert_eq!(a_row.len(), n, "Cartan row length mismatch");
    let mut out = vec![vec![ScalarValue::one(q.mode()); n]; n];
    for j in 0..n {
        for k in 0..n {
            let a_ij = a_row[j];
            let a_ik = a_row[k];
            out[j][k] = q
                .entry(j, k)
                .mul(&q.entry(i, k).pow_i64(-a_ij))
                .mul(&q.entry(j, i).pow_i64(-a_ik))
                .mul(&q.entry(i, i).pow_i64(a_ij * a_ik));
        }
    }
    // reflected matrices may legitimately carry unit self-braidings only
    // if the input did, so propagate the permissive flag
    BraidingMatrix::new(out, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn braiding(entries: &[&[ScalarValue]]) -> BraidingMatrix {
        BraidingMatrix::new(entries.iter().map(|r| r.to_vec()).collect(), false).unwrap()
    }

    /// Cartan-type braiding q_ij = q^{d_i a_ij} in generic mode.
    pub(crate) fn cartan_type_generic(a: &[&[i64]], d: &[i64]) -> BraidingMatrix {
        let n = a.len();
        let q: Vec<Vec<ScalarValue>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ScalarValue::generic_power(d[i] * a[i][j]))
                    .collect()
            })
            .collect();
        BraidingMatrix::new(q, false).unwrap()
    }

    #[test]
    fn cartan_entries_a2_generic() {
        // q_ii = q^2, q_12 q_21 = q^{-2}
        let q = cartan_type_generic(&[&[2, -1], &[-1, 2]], &[1, 1]);
        assert_eq!(diagonal_cartan_entry(&q, 0, 1, 8), Ok(-1));
        assert_eq!(diagonal_cartan_entry(&q, 1, 0, 8), Ok(-1));
        assert_eq!(diagonal_cartan_entry(&q, 0, 0, 8), Ok(2));
    }

    #[test]
    fn cartan_entry_decoupled() {
        let one = ScalarValue::generic_power(0);
        let q2 = ScalarValue::generic_power(2);
        let q = braiding(&[&[q2.clone(), one.clone()], &[one, q2]]);
        assert_eq!(diagonal_cartan_entry(&q, 0, 1, 8), Ok(0));
    }

    #[test]
    fn cartan_entry_minus_one_self_braiding() {
        // q_ii = -1 forces a_ij = -1 whenever q_ij q_ji != 1
        let m1 = ScalarValue::root_of_unity(1, 2);
        let z = ScalarValue::root_of_unity(1, 5);
        let q = braiding(&[&[m1.clone(), z.clone()], &[z, m1]]);
        assert_eq!(diagonal_cartan_entry(&q, 0, 1, 8), Ok(-1));
    }

    #[test]
    fn bound_exceeded_signals_non_i_finiteness() {
        // q_ii = 1 generic, coupled: no m ever works
        let one = ScalarValue::generic_power(0);
        let q1 = ScalarValue::generic_power(1);
        let q = braiding(&[&[one.clone(), q1.clone()], &[q1, one]]);
        assert_eq!(
            diagonal_cartan_entry(&q, 0, 1, 6),
            Err(BraidingError::BoundExceeded { i: 0, j: 1, bound: 6 })
        );
    }

    #[test]
    fn reflect_preserves_self_braiding() {
        let q = cartan_type_generic(&[&[2, -1], &[-2, 2]], &[2, 1]);
        let row: Vec<i64> = (0..2)
            .map(|j| diagonal_cartan_entry(&q, 0, j, 8).unwrap())
            .collect();
        let r = reflect_braiding(&q, 0, &row).unwrap();
        assert_eq!(r.entry(0, 0), q.entry(0, 0));
    }

    #[test]
    fn cartan_type_twist_key_fixed_by_reflection() {
        let q = cartan_type_generic(&[&[2, -1], &[-1, 2]], &[1, 1]);
        for i in 0..2 {
            let row: Vec<i64> = (0..2)
                .map(|j| diagonal_cartan_entry(&q, i, j, 8).unwrap())
                .collect();
            let r = reflect_braiding(&q, i, &row).unwrap();
            assert_eq!(r.twist_key(), q.twist_key());
        }
    }

    #[test]
    fn rank2_mixed_diagonal_changes_twist_key() {
        // q_11 = -1, q_22 generic-like root of unity of high order
        let m1 = ScalarValue::root_of_unity(1, 2);
        let q22 = ScalarValue::root_of_unity(1, 7);
        let q12 = ScalarValue::root_of_unity(1, 7);
        let one = ScalarValue::root_of_unity(0, 1);
        let q = BraidingMatrix::new(
            vec![vec![m1, q12], vec![one, q22]],
            false,
        )
        .unwrap();
        let row: Vec<i64> = (0..2)
            .map(|j| diagonal_cartan_entry(&q, 0, j, 8).unwrap())
            .collect();
        let r = reflect_braiding(&q, 0, &row).unwrap();
        assert_ne!(r.twist_key(), q.twist_key());
    }

    #[test]
    fn rejects_mixed_modes_and_unit_diagonal() {
        let err = BraidingMatrix::new(
            vec![
                vec![ScalarValue::generic_power(2), ScalarValue::rational(1, 2)],
                vec![ScalarValue::generic_power(0), ScalarValue::generic_power(2)],
            ],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, BraidingError::ModeMismatch { .. }));

        let one = ScalarValue::root_of_unity(0, 1);
        let m1 = ScalarValue::root_of_unity(1, 2);
        let err = BraidingMatrix::new(vec![vec![one.clone(), m1.clone()], vec![m1.clone(), one.clone()]], false)
            .unwrap_err();
        assert!(matches!(err, BraidingError::UnitSelfBraiding { i: 0 }));
        assert!(BraidingMatrix::new(vec![vec![one.clone(), m1.clone()], vec![m1, one]], true).is_ok());
    }
}
