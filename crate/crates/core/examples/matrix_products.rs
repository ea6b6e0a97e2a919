//! Tropical matrix and vector products, plus powers as walk weights.

use tropical::{DenseMatrix, Semiring, TropicalVector};

fn main() -> tropical::Result<()> {
    let a = DenseMatrix::from_rows([[2, 3, 1], [5, 0, 4]])?;
    let b = DenseMatrix::from_rows([[1, 2], [4, 0], [2, 3]])?;

    for s in [Semiring::MaxPlus, Semiring::MinPlus] {
        println!("{s}: A ⊗ B =\n{}\n", a.matmul(&b, s)?);
    }

    let x = TropicalVector::from_values([0, 1, -2])?;
    println!("max-plus A ⊗ x = {}", a.matvec(&x, Semiring::MaxPlus)?);

    // (A^k)_ij is the best weight of a walk with exactly k edges
    let inf = i32::MAX;
    let g = DenseMatrix::from_rows([[inf, 1, 4], [inf, inf, 2], [1, inf, inf]])?;
    for k in 1..=3 {
        println!("\nmin-plus A^{k} =\n{}", g.matpow(k, Semiring::MinPlus)?);
    }
    Ok(())
}
