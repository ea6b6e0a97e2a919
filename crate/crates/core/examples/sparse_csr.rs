//! Building a CSR matrix from triplets, its memory footprint, and sparse
//! products checked against the dense path.

use tropical::{CsrMatrix, DenseMatrix, Semiring, TropicalValue, TropicalVector};

fn main() -> tropical::Result<()> {
    let s = Semiring::MinPlus;
    let n = 200;
    // a ring with a few chords
    let triplets = (0..n)
        .map(|i| (i, (i + 1) % n, TropicalValue::new(1)))
        .chain((0..n).step_by(17).map(|i| (i, (i + 50) % n, TropicalValue::new(20))));
    let a = CsrMatrix::from_triplets(n, n, triplets, s)?;
    let dense_bytes = n * n * std::mem::size_of::<TropicalValue>();
    println!("nnz {}  csr {} bytes  dense {} bytes", a.nnz(), a.memory_bytes(), dense_bytes);

    let x = TropicalVector::unit(n, 0, s)?;
    // Aᵀ ⊗ e₀ picks out row 0: one hop from vertex 0
    let (y, muls) = a.transpose().spmv_counted(&x)?;
    println!("spmv did {muls} multiplications; one hop 0 → 1 costs {}", y.get(1));

    let d: DenseMatrix = a.to_dense();
    let same = a.spmm(&a)?.to_dense() == d.matmul(&d, s)?;
    println!("A² sparse == dense: {same}");

    let star = a.closure()?;
    println!("distance 0 → 120 via closure: {}", star.to_dense().get(0, 120));
    Ok(())
}
