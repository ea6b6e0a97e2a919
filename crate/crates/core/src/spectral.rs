//! Max-plus spectral analysis: maximum cycle mean (the tropical eigenvalue),
//! eigenvectors by power iteration, and critical vertices.
//!
//! Everything here reads the matrix under `MaxPlus`: `NEG_INF` is an absent
//! edge and `POS_INF` is rejected as outside the domain.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph;
use crate::semiring::{Semiring, TropicalValue};

/// Exact rational cycle mean `weight / length`, kept in lowest terms with a
/// positive denominator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleMean {
    numerator: i64,
    denominator: i64,
}

impl CycleMean {
    /// # Panics
    /// If `denominator` is not positive.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator > 0, "cycle length must be positive");
        let g = gcd(numerator.unsigned_abs(), denominator as u64).max(1) as i64;
        CycleMean { numerator: numerator / g, denominator: denominator / g }
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn denominator(self) -> i64 {
        self.denominator
    }

    pub fn as_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// The mean shifted by an integer constant.
    pub fn shifted(self, c: i64) -> CycleMean {
        CycleMean::new(self.numerator + c * self.denominator, self.denominator)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ord for CycleMean {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as i128 * other.denominator as i128;
        let rhs = other.numerator as i128 * self.denominator as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for CycleMean {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycleMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Maximum cycle mean plus whether the eigenvalue is unique: outside a
/// strongly connected graph λ is still the largest cycle mean, but other
/// eigenvalues may exist.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxCycleMean {
    pub lambda: CycleMean,
    pub strongly_connected: bool,
}

fn finite_weights(a: &DenseMatrix) -> Result<Vec<Option<i64>>> {
    a.as_slice()
        .iter()
        .map(|&v| match v {
            TropicalValue::NEG_INF => Ok(None),
            TropicalValue::POS_INF => Err(Error::InvalidValue("inf".into())),
            v => Ok(Some(v.raw() as i64)),
        })
        .collect()
}

/// Karp's maximum cycle mean.
///
/// Builds `D_k(v)`, the heaviest `k`-edge walk ending at `v` from any start
/// (`D_0 = 0`), for `k = 0..=n`, one vector at a time, so memory stays
/// `O(n²)`. Then `λ = max_v min_k (D_n(v) − D_k(v)) / (n − k)`, skipping
/// pairs where either term is `NEG_INF`. All comparisons are exact.
pub fn max_cycle_mean(a: &DenseMatrix) -> Result<MaxCycleMean> {
    let n = a.order()?;
    let w = finite_weights(a)?;
    let walks = walk_weights(&w, n);
    let last = &walks[n];

    let mut best: Option<CycleMean> = None;
    for v in 0..n {
        let Some(top) = last[v] else { continue };
        let inner = (0..n)
            .filter_map(|k| walks[k][v].map(|dk| CycleMean::new(top - dk, (n - k) as i64)))
            .min()
            .expect("D_0 is finite everywhere");
        best = Some(best.map_or(inner, |b| b.max(inner)));
    }
    let lambda = best.ok_or(Error::NoCycle)?;
    Ok(MaxCycleMean {
        lambda,
        strongly_connected: graph::is_strongly_connected(a, Semiring::MaxPlus)?,
    })
}

fn walk_weights(w: &[Option<i64>], n: usize) -> Vec<Vec<Option<i64>>> {
    let mut walks = Vec::with_capacity(n + 1);
    walks.push(vec![Some(0i64); n]);
    for k in 1..=n {
        let prev: &Vec<Option<i64>> = &walks[k - 1];
        let mut next = vec![None; n];
        for (u, du) in prev.iter().enumerate() {
            let Some(du) = *du else { continue };
            for (v, slot) in next.iter_mut().enumerate() {
                if let Some(e) = w[u * n + v] {
                    let cand = du + e;
                    if slot.is_none_or(|cur| cand > cur) {
                        *slot = Some(cand);
                    }
                }
            }
        }
        walks.push(next);
    }
    walks
}

/// Vertices lying on a cycle whose mean equals λ.
///
/// With `λ = p/q`, the matrix `B = q·A − p` has maximum cycle mean 0 in exact
/// integers; `i` is critical iff the heaviest closed walk through `i` in `B`
/// weighs exactly 0.
pub fn critical_vertices(a: &DenseMatrix) -> Result<Vec<usize>> {
    let lambda = max_cycle_mean(a)?.lambda;
    let n = a.order()?;
    let (p, q) = (lambda.numerator(), lambda.denominator());
    let mut d: Vec<Option<i64>> = finite_weights(a)?
        .into_iter()
        .map(|e| e.map(|x| q * x - p))
        .collect();
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = d[i * n + k] else { continue };
            for j in 0..n {
                if let Some(dkj) = d[k * n + j] {
                    let cand = dik + dkj;
                    if d[i * n + j].is_none_or(|cur| cand > cur) {
                        d[i * n + j] = Some(cand);
                    }
                }
            }
        }
    }
    Ok((0..n).filter(|&i| d[i * n + i] == Some(0)).collect())
}

pub const DEFAULT_EPSILON: f64 = 1e-9;

pub fn default_max_iter(n: usize) -> usize {
    10 * n
}

/// A vector `v` with `A ⊗ v ≈ λ ⊗ v`, up to an additive constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eigenvector {
    pub values: Vec<f64>,
    /// `max_i |max_j(A_ij + v_j) − (λ + v_i)|` over all vertices.
    pub residual: f64,
    pub iterations: usize,
    /// Length of the orbit the normalized iterates settled into (1 for a
    /// plain fixed point).
    pub period: usize,
}

/// Tropical power iteration `v ← (A ⊗ v) − λ` from `v = 0`.
///
/// Stops when the new iterate is within `epsilon` (L∞) of the iterate `p`
/// steps back for some `p ≤ n`. For `p = 1` the previous iterate is returned;
/// when the critical graph is periodic the iterates cycle instead of settling
/// and the elementwise max over one period is returned, which the product
/// maps onto itself.
pub fn eigenvector(
    a: &DenseMatrix,
    lambda: CycleMean,
    epsilon: f64,
    max_iter: usize,
) -> Result<Eigenvector> {
    let n = a.order()?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidTolerance(epsilon));
    }
    finite_weights(a)?;
    let weights = float_weights(a);
    let lam = lambda.as_f64();

    let mut history: VecDeque<Vec<f64>> = VecDeque::with_capacity(n + 1);
    history.push_back(vec![0.0; n]);
    for iteration in 1..=max_iter {
        let current = history.back().expect("history is never empty");
        let next: Vec<f64> = apply(&weights, current, n).into_iter().map(|u| u - lam).collect();
        let period = (1..=history.len().min(n))
            .find(|&p| linf(&next, &history[history.len() - p]) < epsilon);
        if let Some(p) = period {
            let values = history
                .iter()
                .skip(history.len() - p)
                .fold(vec![f64::NEG_INFINITY; n], |acc, x| {
                    acc.iter().zip(x).map(|(a, b)| a.max(*b)).collect()
                });
            let residual = residual_on(&weights, lam, &values, n, 0..n);
            return Ok(Eigenvector { values, residual, iterations: iteration, period: p });
        }
        history.push_back(next);
        if history.len() > n {
            history.pop_front();
        }
    }
    let last = history.pop_back().expect("history is never empty");
    let residual = residual_on(&weights, lam, &last, n, 0..n);
    Err(Error::NotConverged { iterations: max_iter, residual, last })
}

/// `max_{i in vertices} |max_j(A_ij + v_j) − (λ + v_i)|`, counting
/// `−∞ = −∞` as exact.
pub fn eigen_residual(
    a: &DenseMatrix,
    lambda: CycleMean,
    v: &[f64],
    vertices: impl IntoIterator<Item = usize>,
) -> Result<f64> {
    let n = a.order()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            op: "eigen_residual",
            left_rows: n,
            left_cols: n,
            right_rows: v.len(),
            right_cols: 1,
        });
    }
    Ok(residual_on(&float_weights(a), lambda.as_f64(), v, n, vertices))
}

fn float_weights(a: &DenseMatrix) -> Vec<f64> {
    a.as_slice()
        .iter()
        .map(|&x| if x == TropicalValue::NEG_INF { f64::NEG_INFINITY } else { x.raw() as f64 })
        .collect()
}

fn apply(weights: &[f64], v: &[f64], n: usize) -> Vec<f64> {
    weights
        .chunks_exact(n)
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, x)| a + x)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| gap(x, y)).fold(0.0, f64::max)
}

fn residual_on(
    weights: &[f64],
    lam: f64,
    v: &[f64],
    n: usize,
    vertices: impl IntoIterator<Item = usize>,
) -> f64 {
    let image = apply(weights, v, n);
    vertices
        .into_iter()
        .map(|i| gap(image[i], lam + v[i]))
        .fold(0.0, f64::max)
}
