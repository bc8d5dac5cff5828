use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::LatticeError;
use crate::rng::uniform_below;

/// Vector over `Z_q`, entries reduced into `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqVector {
    q: u64,
    entries: Vec<u64>,
}

impl ZqVector {
    /// Reduces every entry modulo `q`.
    pub fn new(q: u64, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|v| v % q).collect();
        Self { q, entries }
    }

    /// Reduces signed entries into `[0, q)`.
    pub fn from_signed(q: u64, entries: &[i64]) -> Self {
        Self { q, entries: entries.iter().map(|&v| reduce_signed(v, q)).collect() }
    }

    pub fn zero(q: u64, len: usize) -> Self {
        Self { q, entries: vec![0; len] }
    }

    pub fn uniform<R: RngCore + ?Sized>(q: u64, len: usize, rng: &mut R) -> Self {
        Self { q, entries: (0..len).map(|_| uniform_below(rng, q)).collect() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    /// `(self + signed) mod q`.
    pub fn add_signed(&self, other: &[i64]) -> Result<Self, LatticeError> {
        check_len(self.len(), other.len())?;
        let q = self.q as i64;
        let entries = self
            .entries
            .iter()
            .zip(other)
            .map(|(&a, &b)| (a as i64 + b).rem_euclid(q) as u64)
            .collect();
        Ok(Self { q: self.q, entries })
    }
}

/// Signed integer vector (Gaussian samples, lattice points).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|&v| (v as f64) * (v as f64)).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    pub fn dot(&self, other: &IntVector) -> i128 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as i128 * b as i128).sum()
    }
}

/// Row-major matrix over `Z_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqMatrix {
    rows: usize,
    cols: usize,
    q: u64,
    data: Vec<u64>,
}

impl ZqMatrix {
    /// Builds from row-major data, reducing every entry.
    pub fn from_row_major(
        rows: usize,
        cols: usize,
        q: u64,
        data: Vec<u64>,
    ) -> Result<Self, LatticeError> {
        check_len(rows * cols, data.len())?;
        Ok(Self { rows, cols, q, data: data.into_iter().map(|v| v % q).collect() })
    }

    pub fn zero(rows: usize, cols: usize, q: u64) -> Self {
        Self { rows, cols, q, data: vec![0; rows * cols] }
    }

    pub fn uniform<R: RngCore + ?Sized>(rows: usize, cols: usize, q: u64, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| uniform_below(rng, q)).collect();
        Self { rows, cols, q, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_row_major(&self) -> &[u64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> ZqVector {
        ZqVector { q: self.q, entries: (0..self.rows).map(|r| self.get(r, c)).collect() }
    }

    /// `(self * rhs) mod q` for an integer right-hand side.
    pub fn mul_int(&self, rhs: &IntMatrix) -> Result<ZqMatrix, LatticeError> {
        check_len(self.cols, rhs.rows())?;
        let q = self.q as i128;
        let mut out = ZqMatrix::zero(self.rows, rhs.cols(), self.q);
        for r in 0..self.rows {
            let row = self.row(r);
            for c in 0..rhs.cols() {
                let mut acc: i128 = 0;
                for (k, &a) in row.iter().enumerate() {
                    acc += a as i128 * rhs.get(k, c) as i128;
                }
                out.data[r * out.cols + c] = acc.rem_euclid(q) as u64;
            }
        }
        Ok(out)
    }

    /// `(self * v) mod q`.
    pub fn mul_int_vec(&self, v: &[i64]) -> Result<ZqVector, LatticeError> {
        check_len(self.cols, v.len())?;
        let q = self.q as i128;
        let entries = (0..self.rows)
            .map(|r| {
                let acc: i128 =
                    self.row(r).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                acc.rem_euclid(q) as u64
            })
            .collect();
        Ok(ZqVector { q: self.q, entries })
    }

    /// `(self^T * s) mod q`.
    pub fn transpose_mul(&self, s: &ZqVector) -> Result<ZqVector, LatticeError> {
        check_len(self.rows, s.len())?;
        let q = self.q as u128;
        let mut acc = vec![0u128; self.cols];
        for r in 0..self.rows {
            let sr = s.get(r) as u128;
            for (c, &a) in self.row(r).iter().enumerate() {
                acc[c] += a as u128 * sr;
            }
        }
        Ok(ZqVector { q: self.q, entries: acc.into_iter().map(|v| (v % q) as u64).collect() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

/// Row-major signed integer matrix; columns are the lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, LatticeError> {
        check_len(rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self, LatticeError> {
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (c, col) in columns.iter().enumerate() {
            check_len(rows, col.len())?;
            for (r, &v) in col.0.iter().enumerate() {
                data[r * cols + c] = v;
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_row_major(&self) -> &[i64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> IntVector {
        IntVector((0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        check_len(self.cols, rhs.rows)?;
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// `(self^T * v) mod q`.
    pub fn transpose_mul_mod(&self, v: &ZqVector) -> Result<ZqVector, LatticeError> {
        check_len(self.rows, v.len())?;
        let q = v.q() as i128;
        let mut acc = vec![0i128; self.cols];
        for r in 0..self.rows {
            let vr = v.get(r) as i128;
            for (c, &x) in self.row(r).iter().enumerate() {
                acc[c] += x as i128 * vr;
            }
        }
        Ok(ZqVector::new(v.q(), acc.into_iter().map(|a| a.rem_euclid(q) as u64).collect()))
    }

    pub fn max_column_norm(&self) -> f64 {
        (0..self.cols).map(|c| self.column(c).norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn reduce_signed(v: i64, q: u64) -> u64 {
    v.rem_euclid(q as i64) as u64
}

fn check_len(expected: usize, got: usize) -> Result<(), LatticeError> {
    if expected != got {
        return Err(LatticeError::DimensionMismatch { expected, got });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn reductions_and_products() {
        let a = ZqMatrix::from_row_major(2, 3, 7, vec![1, 2, 3, 4, 5, 13]).unwrap();
        assert_eq!(a.row(1), &[4, 5, 6]);
        let r = IntMatrix::from_row_major(3, 1, vec![-1, 2, 1]).unwrap();
        // [1*-1 + 2*2 + 3*1, 4*-1 + 5*2 + 6*1] = [6, 12] -> [6, 5]
        assert_eq!(a.mul_int(&r).unwrap().as_row_major(), &[6, 5]);
        assert_eq!(a.mul_int_vec(&[-1, 2, 1]).unwrap().entries(), &[6, 5]);
        let s = ZqVector::new(7, vec![1, 2]);
        // A^T s = [1+8, 2+10, 3+12] = [9, 12, 15] -> [2, 5, 1]
        assert_eq!(a.transpose_mul(&s).unwrap().entries(), &[2, 5, 1]);
        let rt = r.transpose_mul_mod(&ZqVector::new(7, vec![3, 1, 6])).unwrap();
        assert_eq!(rt.entries(), &[(-3 + 2 + 6i64).rem_euclid(7) as u64]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ZqMatrix::zero(2, 3, 7);
        assert_eq!(
            a.mul_int_vec(&[1, 2]),
            Err(LatticeError::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn uniform_entries_are_reduced() {
        let a = ZqMatrix::uniform(4, 64, 12289, &mut seeded(3));
        assert!(a.as_row_major().iter().all(|&v| v < 12289));
    }
}
