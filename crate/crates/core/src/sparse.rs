//! Compressed sparse row matrices bound to a semiring.
//!
//! The stored pattern is exactly the support: column indices are strictly
//! increasing within a row and no stored value equals `zero(semiring)`.

use crate::dense::{DenseMatrix, TropicalVector};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, TropicalValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    values: Vec<TropicalValue>,
    col_idx: Vec<u32>,
    row_ptr: Vec<u32>,
    semiring: Semiring,
}

impl CsrMatrix {
    /// Builds a CSR matrix from `(row, col, value)` triplets in any order.
    /// Duplicates are combined with ⊕ and entries equal to `zero(s)` dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, TropicalValue)>,
        s: Semiring,
    ) -> Result<Self> {
        check_dims(rows, cols)?;
        let mut triplets = Vec::new();
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            triplets.push((i, j, s.normalize(v)));
        }
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));

        let mut combined: Vec<(usize, usize, TropicalValue)> = Vec::with_capacity(triplets.len());
        for (i, j, v) in triplets {
            match combined.last_mut() {
                Some(last) if (last.0, last.1) == (i, j) => last.2 = s.add(last.2, v),
                _ => combined.push((i, j, v)),
            }
        }
        let zero = s.zero();
        combined.retain(|&(_, _, v)| v != zero);

        let mut row_ptr = vec![0u32; rows + 1];
        for &(i, _, _) in &combined {
            row_ptr[i + 1] += 1;
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx = combined.iter().map(|&(_, j, _)| j as u32).collect();
        let values: Vec<TropicalValue> = combined.into_iter().map(|(_, _, v)| v).collect();
        check_nnz(values.len())?;
        Ok(CsrMatrix { rows, cols, values, col_idx, row_ptr, semiring: s })
    }

    /// Keeps exactly the entries of `a` that differ from `zero(s)`.
    pub fn from_dense(a: &DenseMatrix, s: Semiring) -> Result<Self> {
        check_dims(a.rows(), a.cols())?;
        let zero = s.zero();
        let mut values = Vec::new();
        let mut col_idx = Vec::new();
        let mut row_ptr = Vec::with_capacity(a.rows() + 1);
        row_ptr.push(0u32);
        for i in 0..a.rows() {
            for (j, &v) in a.row(i).iter().enumerate() {
                let v = s.normalize(v);
                if v != zero {
                    values.push(v);
                    col_idx.push(j as u32);
                }
            }
            check_nnz(values.len())?;
            row_ptr.push(values.len() as u32);
        }
        Ok(CsrMatrix { rows: a.rows(), cols: a.cols(), values, col_idx, row_ptr, semiring: s })
    }

    /// Dense copy with absent entries set to `zero(semiring)`.
    pub fn to_dense(&self) -> DenseMatrix {
        let zero = self.semiring.zero();
        let mut data = vec![zero; self.rows * self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                data[i * self.cols + j] = v;
            }
        }
        DenseMatrix::new(self.rows, self.cols, data).expect("dimensions validated at construction")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn values(&self) -> &[TropicalValue] {
        &self.values
    }

    pub fn col_idx(&self) -> &[u32] {
        &self.col_idx
    }

    pub fn row_ptr(&self) -> &[u32] {
        &self.row_ptr
    }

    /// `(column, value)` pairs stored in row `i`, in column order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, TropicalValue)> + '_ {
        let range = self.row_ptr[i] as usize..self.row_ptr[i + 1] as usize;
        self.col_idx[range.clone()]
            .iter()
            .zip(&self.values[range])
            .map(|(&j, &v)| (j as usize, v))
    }

    /// Checks every structural invariant of the format.
    pub fn is_well_formed(&self) -> bool {
        let zero = self.semiring.zero();
        self.row_ptr.len() == self.rows + 1
            && self.row_ptr[0] == 0
            && self.row_ptr[self.rows] as usize == self.values.len()
            && self.col_idx.len() == self.values.len()
            && self.row_ptr.windows(2).all(|w| w[0] <= w[1])
            && (0..self.rows).all(|i| {
                let r = &self.col_idx[self.row_ptr[i] as usize..self.row_ptr[i + 1] as usize];
                r.windows(2).all(|w| w[0] < w[1]) && r.iter().all(|&j| (j as usize) < self.cols)
            })
            && self.values.iter().all(|&v| v != zero)
    }

    /// Bytes used by values, column indices and row pointers with 4-byte
    /// entries: `8·nnz + 4·rows + 4`.
    pub fn memory_bytes(&self) -> usize {
        8 * self.nnz() + 4 * self.rows + 4
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut counts = vec![0u32; self.cols + 1];
        for &j in &self.col_idx {
            counts[j as usize + 1] += 1;
        }
        for j in 0..self.cols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut values = vec![self.semiring.zero(); self.nnz()];
        let mut col_idx = vec![0u32; self.nnz()];
        // rows visited in order keep each transposed row sorted
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                let slot = next[j] as usize;
                values[slot] = v;
                col_idx[slot] = i as u32;
                next[j] += 1;
            }
        }
        CsrMatrix {
            rows: self.cols,
            cols: self.rows,
            values,
            col_idx,
            row_ptr,
            semiring: self.semiring,
        }
    }

    /// `y_i = ⊕_{(j, a) in row i} a ⊗ x_j`, starting from `zero(s)`.
    pub fn spmv(&self, x: &TropicalVector) -> Result<TropicalVector> {
        self.spmv_counted(x).map(|(y, _)| y)
    }

    /// [`CsrMatrix::spmv`] also returning how many ⊗ operations ran.
    pub fn spmv_counted(&self, x: &TropicalVector) -> Result<(TropicalVector, usize)> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "spmv",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: 1,
            });
        }
        let s = self.semiring;
        let x = x.as_slice();
        let mut muls = 0usize;
        let mut y = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut sum = s.zero();
            for p in self.row_ptr[i] as usize..self.row_ptr[i + 1] as usize {
                let prod = s.mul(self.values[p], x[self.col_idx[p] as usize]);
                muls += 1;
                sum = s.add(sum, prod);
            }
            y.push(sum);
        }
        Ok((TropicalVector::new(y)?, muls))
    }

    /// Sparse × sparse product in two phases: a symbolic pass fixes each
    /// result row's column pattern, then a numeric pass accumulates through a
    /// dense row scratch (Gustavson).
    pub fn spmm(&self, other: &CsrMatrix) -> Result<CsrMatrix> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch { left: self.semiring, right: other.semiring });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "spmm",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let s = self.semiring;
        let zero = s.zero();
        let cols = other.cols;

        // symbolic
        let mut marker = vec![usize::MAX; cols];
        let mut pattern: Vec<Vec<u32>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row_cols = Vec::new();
            for (k, _) in self.row(i) {
                for (j, _) in other.row(k) {
                    if marker[j] != i {
                        marker[j] = i;
                        row_cols.push(j as u32);
                    }
                }
            }
            row_cols.sort_unstable();
            pattern.push(row_cols);
        }

        // numeric
        let total: usize = pattern.iter().map(Vec::len).sum();
        let mut values = Vec::with_capacity(total);
        let mut col_idx = Vec::with_capacity(total);
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        row_ptr.push(0u32);
        let mut acc = vec![zero; cols];
        for (i, row_cols) in pattern.iter().enumerate() {
            for (k, a_ik) in self.row(i) {
                for (j, b_kj) in other.row(k) {
                    acc[j] = s.add(acc[j], s.mul(a_ik, b_kj));
                }
            }
            for &j in row_cols {
                let v = std::mem::replace(&mut acc[j as usize], zero);
                if v != zero {
                    values.push(v);
                    col_idx.push(j);
                }
            }
            check_nnz(values.len())?;
            row_ptr.push(values.len() as u32);
        }
        Ok(CsrMatrix { rows: self.rows, cols, values, col_idx, row_ptr, semiring: s })
    }

    /// `A*` as `(I ⊕ A)^(2^k)` with `2^k ≥ n`, by repeated [`spmm`]
    /// squaring. A vertex whose diagonal ends up strictly better than
    /// `one(s)` lies on an improving cycle and fails the call, as with the
    /// dense closure.
    ///
    /// [`spmm`]: CsrMatrix::spmm
    pub fn closure(&self) -> Result<CsrMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let (n, s) = (self.rows, self.semiring);
        let entries = (0..n)
            .flat_map(|i| self.row(i).map(move |(j, v)| (i, j, v)))
            .chain((0..n).map(|i| (i, i, s.one())));
        let mut m = CsrMatrix::from_triplets(n, n, entries, s)?;
        let mut walk = 1;
        while walk < n {
            m = m.spmm(&m)?;
            walk *= 2;
        }
        let divergent: Vec<usize> = (0..n)
            .filter(|&i| {
                let d = m.row(i).find(|&(j, _)| j == i).map_or(s.zero(), |(_, v)| v);
                s.add(d, s.one()) != s.one()
            })
            .collect();
        match (divergent.is_empty(), s) {
            (true, _) => Ok(m),
            (false, Semiring::MaxPlus) => Err(Error::PositiveCycleDetected { vertices: divergent }),
            (false, _) => Err(Error::NegativeCycleDetected { vertices: divergent }),
        }
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyDimension { rows, cols });
    }
    if rows > u32::MAX as usize || cols > u32::MAX as usize {
        return Err(Error::IndexOutOfRange { row: rows, col: cols, rows, cols });
    }
    Ok(())
}

fn check_nnz(nnz: usize) -> Result<()> {
    if nnz > u32::MAX as usize {
        return Err(Error::DataLength { rows: 0, cols: 0, len: nnz });
    }
    Ok(())
}
