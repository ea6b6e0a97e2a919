//! Path, reachability and bottleneck solvers.
//!
//! Adjacency convention: entry `A[i][j]` is the weight of the edge from
//! vertex `i` to vertex `j`; an absent edge is `zero(s)`. All results read
//! "from row vertex to column vertex".

use crate::dense::{DenseMatrix, TropicalVector};
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::sparse::CsrMatrix;

/// Output of the single-source fixed-point iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleSource {
    pub distances: TropicalVector,
    /// Relaxation passes run, including the pass that observed the fixed
    /// point. At most `n - 1`.
    pub iterations: usize,
}

/// Optimal path values from `source` to every vertex.
///
/// Bellman-Ford as a fixed point: `d ← d ⊕ (dᵀ ⊗ A)` from the unit vector at
/// `source`, stopping once `d` no longer changes. Fails under `MinPlus`
/// (`MaxPlus`) if a negative (positive) cycle is reachable from the source.
pub fn sssp(a: &DenseMatrix, source: usize, s: Semiring) -> Result<TropicalVector> {
    single_source(a, source, s, true).map(|r| r.distances)
}

/// [`sssp`] with control over early termination.
pub fn single_source(
    a: &DenseMatrix,
    source: usize,
    s: Semiring,
    early_exit: bool,
) -> Result<SingleSource> {
    let n = a.order()?;
    iterate(n, source, s, early_exit, |d| a.vecmat(d, s))
}

/// [`sssp`] over a CSR adjacency matrix, using its own semiring.
pub fn sssp_sparse(a: &CsrMatrix, source: usize) -> Result<TropicalVector> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let incoming = a.transpose();
    iterate(a.rows(), source, a.semiring(), true, |d| incoming.spmv(d)).map(|r| r.distances)
}

fn iterate(
    n: usize,
    source: usize,
    s: Semiring,
    early_exit: bool,
    step: impl Fn(&TropicalVector) -> Result<TropicalVector>,
) -> Result<SingleSource> {
    let mut d = TropicalVector::unit(n, source, s)?;
    let mut iterations = 0;
    let mut stable = false;
    for _ in 1..n {
        iterations += 1;
        let next = d.add(&step(&d)?, s)?;
        if next == d {
            stable = true;
            if early_exit {
                break;
            }
        }
        d = next;
    }
    if !stable {
        let next = d.add(&step(&d)?, s)?;
        let changed: Vec<usize> = (0..n).filter(|&i| next.get(i) != d.get(i)).collect();
        if !changed.is_empty() {
            return Err(match s {
                Semiring::MaxPlus => Error::PositiveCycleDetected { vertices: changed },
                _ => Error::NegativeCycleDetected { vertices: changed },
            });
        }
    }
    Ok(SingleSource { distances: d, iterations })
}

/// All-pairs optimal path values, `A*` under `s`.
pub fn all_pairs_paths(a: &DenseMatrix, s: Semiring) -> Result<DenseMatrix> {
    a.closure(s)?.into_result()
}

/// Transitive closure: `1` at `(i, j)` iff `j` is reachable from `i`
/// (every vertex reaches itself). Nonzero entries count as edges.
pub fn reachability(a: &DenseMatrix) -> Result<DenseMatrix> {
    a.normalized(Semiring::Boolean)
        .closure_in_place(Semiring::Boolean)
        .map(|c| c.matrix)
}

/// All-pairs widest paths: the best over paths of the narrowest edge, with
/// absent edges as `NEG_INF` and `POS_INF` on the diagonal.
pub fn bottleneck_paths(a: &DenseMatrix) -> Result<DenseMatrix> {
    a.closure(Semiring::MaxMin).map(|c| c.matrix)
}

/// Whether every vertex reaches every other along entries differing from
/// `zero(s)`.
pub fn is_strongly_connected(a: &DenseMatrix, s: Semiring) -> Result<bool> {
    let reach = reachability(&a.support(s))?;
    Ok(reach.as_slice().iter().all(|v| v.raw() == 1))
}
