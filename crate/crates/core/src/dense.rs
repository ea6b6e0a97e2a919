//! Dense row-major matrices and vectors over a semiring.
//!
//! Matrices carry no semiring of their own: every operation takes the
//! [`Semiring`] explicitly, so one adjacency matrix can be read as shortest
//! paths, longest paths or bottlenecks without copying.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semiring::{dispatch, Kernel, Semiring, TropicalValue};

/// Row-major `rows × cols` matrix of [`TropicalValue`]s, both dimensions ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TropicalValue>,
}

/// Non-empty vector of [`TropicalValue`]s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TropicalVector(Vec<TropicalValue>);

impl TropicalVector {
    pub fn new(values: Vec<TropicalValue>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDimension { rows: 0, cols: 1 });
        }
        Ok(TropicalVector(values))
    }

    pub fn from_values<V: Into<TropicalValue>>(values: impl IntoIterator<Item = V>) -> Result<Self> {
        Self::new(values.into_iter().map(Into::into).collect())
    }

    pub fn filled(len: usize, value: TropicalValue) -> Result<Self> {
        Self::new(vec![value; len])
    }

    /// The vector with `one(s)` at `index` and `zero(s)` elsewhere.
    pub fn unit(len: usize, index: usize, s: Semiring) -> Result<Self> {
        if index >= len {
            return Err(Error::VertexOutOfRange { vertex: index, n: len });
        }
        let mut values = vec![s.zero(); len];
        values[index] = s.one();
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> TropicalValue {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[TropicalValue] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<TropicalValue> {
        self.0
    }

    /// Elementwise ⊕.
    pub fn add(&self, other: &TropicalVector, s: Semiring) -> Result<TropicalVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                op: "vector add",
                left_rows: self.len(),
                left_cols: 1,
                right_rows: other.len(),
                right_cols: 1,
            });
        }
        Ok(TropicalVector(
            self.0.iter().zip(&other.0).map(|(&a, &b)| s.add(a, b)).collect(),
        ))
    }
}

impl fmt::Display for TropicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.0)
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[TropicalValue]) -> fmt::Result {
    for (j, v) in row.iter().enumerate() {
        if j > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Result of the Kleene-star closure.
///
/// `divergent` lists every vertex whose closed-walk value ended up strictly
/// above `one(s)` in the natural order. That only happens for `MinPlus` with a
/// negative cycle or `MaxPlus` with a positive one; the matrix is then not the
/// star of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub matrix: DenseMatrix,
    pub semiring: Semiring,
    pub divergent: Vec<usize>,
}

impl Closure {
    pub fn is_converged(&self) -> bool {
        self.divergent.is_empty()
    }

    /// The closure matrix, or the cycle condition that invalidates it.
    pub fn into_result(self) -> Result<DenseMatrix> {
        if self.divergent.is_empty() {
            return Ok(self.matrix);
        }
        let vertices = self.divergent;
        Err(match self.semiring {
            Semiring::MaxPlus => Error::PositiveCycleDetected { vertices },
            _ => Error::NegativeCycleDetected { vertices },
        })
    }
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<TropicalValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength { rows, cols, len: data.len() });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<R, V>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = V>,
        V: Into<TropicalValue>,
    {
        let mut data = Vec::new();
        let mut n_rows = 0;
        let mut n_cols = None;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            let width = data.len() - before;
            match n_cols {
                None => n_cols = Some(width),
                Some(c) if c != width => {
                    return Err(Error::DataLength {
                        rows: n_rows + 1,
                        cols: c,
                        len: data.len(),
                    })
                }
                _ => {}
            }
            n_rows += 1;
        }
        Self::new(n_rows, n_cols.unwrap_or(0), data)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TropicalValue,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn filled(rows: usize, cols: usize, value: TropicalValue) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    /// The all-`zero(s)` matrix.
    pub fn zeros(rows: usize, cols: usize, s: Semiring) -> Result<Self> {
        Self::filled(rows, cols, s.zero())
    }

    /// `E` with `one(s)` on the diagonal and `zero(s)` elsewhere.
    pub fn identity(n: usize, s: Semiring) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { s.one() } else { s.zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> TropicalValue {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[TropicalValue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[TropicalValue] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<TropicalValue> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub(crate) fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Applies `s.normalize` to every entry (Boolean: nonzero → 1).
    pub fn normalized(&self, s: Semiring) -> DenseMatrix {
        self.map(|v| s.normalize(v))
    }

    /// Boolean pattern of the entries that differ from `zero(s)`.
    pub fn support(&self, s: Semiring) -> DenseMatrix {
        let zero = s.zero();
        self.map(|v| TropicalValue((v != zero) as i32))
    }

    pub fn map(&self, f: impl Fn(TropicalValue) -> TropicalValue) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j]);
            }
        }
        DenseMatrix { rows: self.cols, cols: self.rows, data }
    }

    fn check_same_shape(&self, other: &DenseMatrix, op: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other, op));
        }
        Ok(())
    }

    fn mismatch(&self, other: &DenseMatrix, op: &'static str) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// `C_ij = A_ij ⊕ B_ij`.
    pub fn elementwise_add(&self, other: &DenseMatrix, s: Semiring) -> Result<DenseMatrix> {
        self.check_same_shape(other, "elementwise_add")?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| s.add(a, b))
                .collect(),
        })
    }

    /// `C_ij = ⊕_k A_ik ⊗ B_kj`.
    ///
    /// Monomorphized per semiring with an i-k-j loop so the inner loop runs at
    /// unit stride over rows of `B` and `C`; zero entries of `A` are skipped
    /// (they annihilate). Bit-identical to [`DenseMatrix::matmul_reference`].
    pub fn matmul(&self, other: &DenseMatrix, s: Semiring) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "matmul"));
        }
        let mut out = vec![s.zero(); self.rows * other.cols];
        dispatch!(s, K => matmul_kernel::<K>(&self.data, &other.data, &mut out, self.cols, other.cols));
        Ok(DenseMatrix { rows: self.rows, cols: other.cols, data: out })
    }

    /// Plain triple loop through [`Semiring::add`]/[`Semiring::mul`].
    pub fn matmul_reference(&self, other: &DenseMatrix, s: Semiring) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "matmul"));
        }
        DenseMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(s.zero(), |acc, k| {
                s.add(acc, s.mul(self.get(i, k), other.get(k, j)))
            })
        })
    }

    /// `y_i = ⊕_j A_ij ⊗ x_j`.
    pub fn matvec(&self, x: &TropicalVector, s: Semiring) -> Result<TropicalVector> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                op: "matvec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![s.zero(); self.rows];
        dispatch!(s, K => matvec_kernel::<K>(&self.data, x.as_slice(), &mut out));
        Ok(TropicalVector(out))
    }

    /// `y_j = ⊕_i x_i ⊗ A_ij`, the row-vector product `xᵀ ⊗ A`.
    pub fn vecmat(&self, x: &TropicalVector, s: Semiring) -> Result<TropicalVector> {
        if self.rows != x.len() {
            return Err(Error::DimensionMismatch {
                op: "vecmat",
                left_rows: 1,
                left_cols: x.len(),
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        let mut out = vec![s.zero(); self.cols];
        dispatch!(s, K => vecmat_kernel::<K>(&self.data, x.as_slice(), &mut out));
        Ok(TropicalVector(out))
    }

    /// `A^k` by repeated squaring; `A^0 = E`.
    pub fn matpow(&self, k: u32, s: Semiring) -> Result<DenseMatrix> {
        let n = self.order()?;
        let mut result = DenseMatrix::identity(n, s)?;
        if k == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = result.matmul(&base, s)?;
            }
            k >>= 1;
            if k == 0 {
                return Ok(result);
            }
            base = base.matmul(&base, s)?;
        }
    }

    /// Kleene star `A* = ⊕_{k≥0} A^k` via the Floyd-Warshall style triple loop.
    pub fn closure(&self, s: Semiring) -> Result<Closure> {
        self.clone().closure_in_place(s)
    }

    /// [`DenseMatrix::closure`] reusing this matrix's storage.
    pub fn closure_in_place(mut self, s: Semiring) -> Result<Closure> {
        let n = self.order()?;
        dispatch!(s, K => closure_kernel::<K>(&mut self.data, n));
        let one = s.one();
        let divergent = (0..n)
            .filter(|&i| s.add(self.data[i * n + i], one) != one)
            .collect();
        Ok(Closure { matrix: self, semiring: s, divergent })
    }
}

fn matmul_kernel<K: Kernel>(
    a: &[TropicalValue],
    b: &[TropicalValue],
    c: &mut [TropicalValue],
    inner: usize,
    cols: usize,
) {
    for (a_row, c_row) in a.chunks_exact(inner).zip(c.chunks_exact_mut(cols)) {
        for (k, &aik) in a_row.iter().enumerate() {
            if aik.0 == K::ZERO {
                continue;
            }
            let b_row = &b[k * cols..(k + 1) * cols];
            for (cij, &bkj) in c_row.iter_mut().zip(b_row) {
                cij.0 = K::add(cij.0, K::mul(aik.0, bkj.0));
            }
        }
    }
}

fn matvec_kernel<K: Kernel>(a: &[TropicalValue], x: &[TropicalValue], y: &mut [TropicalValue]) {
    for (a_row, yi) in a.chunks_exact(x.len()).zip(y.iter_mut()) {
        yi.0 = a_row
            .iter()
            .zip(x)
            .fold(K::ZERO, |acc, (aij, xj)| K::add(acc, K::mul(aij.0, xj.0)));
    }
}

fn vecmat_kernel<K: Kernel>(a: &[TropicalValue], x: &[TropicalValue], y: &mut [TropicalValue]) {
    for (a_row, xi) in a.chunks_exact(y.len()).zip(x) {
        if xi.0 == K::ZERO {
            continue;
        }
        for (yj, aij) in y.iter_mut().zip(a_row) {
            yj.0 = K::add(yj.0, K::mul(xi.0, aij.0));
        }
    }
}

fn closure_kernel<K: Kernel>(d: &mut [TropicalValue], n: usize) {
    for i in 0..n {
        d[i * n + i].0 = K::add(d[i * n + i].0, K::ONE);
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k].0;
            if dik == K::ZERO {
                continue;
            }
            if i == k {
                // row k reads itself; d_kk may change mid-row
                for j in 0..n {
                    let dkk = d[k * n + k].0;
                    d[k * n + j].0 = K::add(d[k * n + j].0, K::mul(dkk, d[k * n + j].0));
                }
                continue;
            }
            let (row_i, row_k) = if i < k {
                let (head, tail) = d.split_at_mut(k * n);
                (&mut head[i * n..(i + 1) * n], &tail[..n])
            } else {
                let (head, tail) = d.split_at_mut(i * n);
                (&mut tail[..n], &head[k * n..(k + 1) * n])
            };
            for (dij, dkj) in row_i.iter_mut().zip(row_k) {
                dij.0 = K::add(dij.0, K::mul(dik, dkj.0));
            }
        }
    }
}

impl fmt::Display for DenseMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            write_row(f, self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            write_row(f, self.row(i))?;
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: i32 = i32::MAX;
    const NINF: i32 = i32::MIN;

    fn m(rows: Vec<Vec<i32>>) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    fn product_pair() -> (DenseMatrix, DenseMatrix) {
        (
            m(vec![vec![2, 3, 1], vec![5, 0, 4]]),
            m(vec![vec![1, 2], vec![4, 0], vec![2, 3]]),
        )
    }

    fn walk_graph() -> DenseMatrix {
        m(vec![
            vec![INF, 3, 5, INF],
            vec![INF, INF, 4, 2],
            vec![INF, INF, INF, 1],
            vec![INF, INF, INF, INF],
        ])
    }

    fn dag3() -> DenseMatrix {
        m(vec![vec![INF, 2, 7], vec![INF, INF, 3], vec![INF, INF, INF]])
    }

    #[test]
    fn identity_layout() {
        assert_eq!(
            DenseMatrix::identity(2, Semiring::MaxPlus).unwrap(),
            m(vec![vec![0, NINF], vec![NINF, 0]])
        );
        assert_eq!(DenseMatrix::identity(1, Semiring::Boolean).unwrap(), m(vec![vec![1]]));
        assert!(DenseMatrix::identity(0, Semiring::MaxPlus).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            DenseMatrix::from_rows(vec![vec![1, 2], vec![3]]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(
            DenseMatrix::from_rows(Vec::<Vec<i32>>::new()),
            Err(Error::EmptyDimension { .. })
        ));
        assert!(TropicalVector::new(vec![]).is_err());
    }

    #[test]
    fn product_pair_products() {
        let (a, b) = product_pair();
        let max = a.matmul(&b, Semiring::MaxPlus).unwrap();
        let min = a.matmul(&b, Semiring::MinPlus).unwrap();
        assert_eq!(max.get(0, 0), TropicalValue::new(7));
        assert_eq!(min.get(0, 0), TropicalValue::new(3));
        assert_eq!(max, a.matmul_reference(&b, Semiring::MaxPlus).unwrap());
        assert!(matches!(
            a.matmul(&a, Semiring::MaxPlus),
            Err(Error::DimensionMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn elementwise_add_examples() {
        let a = m(vec![vec![2]]);
        let b = m(vec![vec![5]]);
        assert_eq!(a.elementwise_add(&b, Semiring::MinPlus).unwrap(), a);
        let (a, _) = product_pair();
        assert_eq!(a.elementwise_add(&a, Semiring::MaxPlus).unwrap(), a);
        let z = DenseMatrix::zeros(2, 3, Semiring::MaxMin).unwrap();
        assert_eq!(a.elementwise_add(&z, Semiring::MaxMin).unwrap(), a);
        assert!(a.elementwise_add(&m(vec![vec![1]]), Semiring::MaxPlus).is_err());
    }

    #[test]
    fn walk_graph_powers_are_paths() {
        let a = walk_graph();
        let a2 = a.matpow(2, Semiring::MinPlus).unwrap();
        let a3 = a.matpow(3, Semiring::MinPlus).unwrap();
        assert_eq!(a2.get(0, 3), TropicalValue::new(5));
        assert_eq!(a2.get(0, 2), TropicalValue::new(7));
        assert_eq!(a3.get(0, 3), TropicalValue::new(8));
        assert_eq!(
            a.matpow(0, Semiring::MinPlus).unwrap(),
            DenseMatrix::identity(4, Semiring::MinPlus).unwrap()
        );
        // repeated squaring agrees with consecutive products
        let a5 = a.matpow(5, Semiring::MaxMin).unwrap();
        let mut p = a.clone();
        for _ in 1..5 {
            p = p.matmul(&a, Semiring::MaxMin).unwrap();
        }
        assert_eq!(a5, p);
        assert!(matches!(
            product_pair().0.matpow(2, Semiring::MinPlus),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn dag3_closure() {
        let star = dag3().closure(Semiring::MinPlus).unwrap();
        assert!(star.is_converged());
        assert_eq!(
            star.into_result().unwrap(),
            m(vec![vec![0, 2, 5], vec![INF, 0, 3], vec![INF, INF, 0]])
        );
    }

    #[test]
    fn closure_of_zero_matrix_is_identity() {
        for s in Semiring::ALL {
            let z = DenseMatrix::zeros(4, 4, s).unwrap();
            assert_eq!(
                z.closure(s).unwrap().into_result().unwrap(),
                DenseMatrix::identity(4, s).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn closure_flags_negative_cycle() {
        let a = m(vec![vec![INF, 1], vec![-3, INF]]);
        let star = a.closure(Semiring::MinPlus).unwrap();
        assert!(!star.is_converged());
        assert_eq!(star.divergent, vec![0, 1]);
        assert!(matches!(
            star.into_result(),
            Err(Error::NegativeCycleDetected { .. })
        ));
        let b = m(vec![vec![NINF, 1], vec![2, NINF]]);
        assert!(matches!(
            b.closure(Semiring::MaxPlus).unwrap().into_result(),
            Err(Error::PositiveCycleDetected { .. })
        ));
    }

    #[test]
    fn closure_requires_square() {
        assert!(matches!(
            product_pair().0.closure(Semiring::MinPlus),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn vector_products() {
        let a = dag3();
        let s = Semiring::MinPlus;
        let e1 = TropicalVector::unit(3, 0, s).unwrap();
        assert_eq!(
            a.vecmat(&e1, s).unwrap(),
            TropicalVector::from_values([INF, 2, 7]).unwrap()
        );
        // matvec propagates against edge direction; vertex 0 has no in-edges
        let x = TropicalVector::from_values([0, INF, INF]).unwrap();
        assert_eq!(
            a.matvec(&x, s).unwrap(),
            TropicalVector::from_values([INF, INF, INF]).unwrap()
        );
        let id = DenseMatrix::identity(3, s).unwrap();
        let y = TropicalVector::from_values([4, -1, INF]).unwrap();
        assert_eq!(id.matvec(&y, s).unwrap(), y);
        assert_eq!(id.vecmat(&y, s).unwrap(), y);
        assert_eq!(a.vecmat(&y, s).unwrap(), a.transpose().matvec(&y, s).unwrap());
        assert!(a.matvec(&TropicalVector::from_values([1]).unwrap(), s).is_err());
        assert!(a.vecmat(&TropicalVector::from_values([1]).unwrap(), s).is_err());
    }

    #[test]
    fn matvec_matches_column_product() {
        let (a, b) = product_pair();
        for s in [Semiring::MaxPlus, Semiring::MinPlus, Semiring::MaxMin] {
            let col: Vec<TropicalValue> = (0..3).map(|k| b.get(k, 1)).collect();
            let x = TropicalVector::new(col.clone()).unwrap();
            let as_col = DenseMatrix::new(3, 1, col).unwrap();
            let y = a.matvec(&x, s).unwrap();
            let c = a.matmul(&as_col, s).unwrap();
            assert_eq!(y.as_slice(), c.as_slice());
        }
    }

    #[test]
    fn transpose_examples() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.transpose(), m(vec![vec![1, 3], vec![2, 4]]));
        assert_eq!(product_pair().0.transpose().transpose(), product_pair().0);
        let id = DenseMatrix::identity(3, Semiring::MaxMin).unwrap();
        assert_eq!(id.transpose(), id);
    }

    #[test]
    fn display_renders_sentinels() {
        assert_eq!(dag3().to_string(), "inf 2 7\ninf inf 3\ninf inf inf");
    }
}
