//! Exact row-space bookkeeping over the oracle field: incremental rank
//! and span-membership tests via reduced row echelon form.

use super::field::FieldElement;

/// A subspace of coordinate space maintained in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = vi.sub(&c.mul(ri));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v.to_vec()).iter().all(FieldElement::is_zero)
    }

    /// Inserts a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
        // keep existing rows reduced against the new pivot
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = ri.sub(&c.mul(vi));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: impl IntoIterator<Item = Vec<FieldElement>>, dim: usize) -> usize {
    let mut space = RowSpace::new(dim);
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}
