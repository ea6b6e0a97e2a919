//! Micro-benchmarks on seeded random matrices.
//!
//! Throughput is reported in MOPS, one semiring multiply-add counting as two
//! operations: `2n³` per matmul or closure, `2n²` per matvec. Timings are
//! measurements only; the checksum identifies the inputs so runs with the
//! same seed can be compared.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dense::{DenseMatrix, TropicalVector};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, TropicalValue};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchOp {
    Matmul,
    Matvec,
    Closure,
}

impl BenchOp {
    pub fn ops(self, n: usize) -> u64 {
        let n = n as u64;
        match self {
            BenchOp::Matmul | BenchOp::Closure => 2 * n * n * n,
            BenchOp::Matvec => 2 * n * n,
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchOp::Matmul => "matmul",
            BenchOp::Matvec => "matvec",
            BenchOp::Closure => "closure",
        })
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matmul" => Ok(BenchOp::Matmul),
            "matvec" => Ok(BenchOp::Matvec),
            "closure" => Ok(BenchOp::Closure),
            other => Err(Error::InvalidArgument(format!(
                "unknown operation `{other}` (expected matmul, matvec or closure)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub op: BenchOp,
    pub n: usize,
    pub semiring: Semiring,
    pub reps: usize,
    pub seed: u64,
    pub ops: u64,
    pub elapsed_us: Vec<f64>,
    pub mean_us: f64,
    pub mops: f64,
    /// FNV-1a over the raw input entries.
    pub checksum: u64,
}

/// Entries uniform in `[-1000, 1000]`, or `{0, 1}` for Boolean.
pub fn random_matrix(rows: usize, cols: usize, s: Semiring, rng: &mut impl Rng) -> Result<DenseMatrix> {
    let data = (0..rows * cols).map(|_| random_value(s, rng)).collect();
    DenseMatrix::new(rows, cols, data)
}

fn random_value(s: Semiring, rng: &mut impl Rng) -> TropicalValue {
    TropicalValue::new(match s {
        Semiring::Boolean => rng.gen_range(0..=1),
        _ => rng.gen_range(-1000..=1000),
    })
}

fn fnv1a<'a>(values: impl IntoIterator<Item = &'a TropicalValue>) -> u64 {
    values.into_iter().flat_map(|v| v.raw().to_le_bytes()).fold(
        0xcbf2_9ce4_8422_2325,
        |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3),
    )
}

pub fn bench(op: BenchOp, n: usize, s: Semiring, reps: usize, seed: u64) -> Result<BenchReport> {
    if n == 0 {
        return Err(Error::EmptyDimension { rows: 0, cols: 0 });
    }
    if reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(n, n, s, &mut rng)?;
    let (checksum, mut run): (u64, Box<dyn FnMut() -> Result<()>>) = match op {
        BenchOp::Matmul => {
            let b = random_matrix(n, n, s, &mut rng)?;
            let sum = fnv1a(a.as_slice().iter().chain(b.as_slice()));
            (sum, Box::new(move || a.matmul(&b, s).map(|c| drop(black_box(c)))))
        }
        BenchOp::Matvec => {
            let x = TropicalVector::new((0..n).map(|_| random_value(s, &mut rng)).collect())?;
            let sum = fnv1a(a.as_slice().iter().chain(x.as_slice()));
            (sum, Box::new(move || a.matvec(&x, s).map(|y| drop(black_box(y)))))
        }
        BenchOp::Closure => {
            let sum = fnv1a(a.as_slice());
            // divergence is irrelevant for timing, so the report is ignored
            (sum, Box::new(move || a.clone().closure_in_place(s).map(|c| drop(black_box(c)))))
        }
    };

    let mut elapsed_us = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        run()?;
        elapsed_us.push(t.elapsed().as_secs_f64() * 1e6);
    }
    let mean_us = (elapsed_us.iter().sum::<f64>() / reps as f64).max(1e-3);
    let ops = op.ops(n);
    Ok(BenchReport {
        op,
        n,
        semiring: s,
        reps,
        seed,
        ops,
        elapsed_us,
        mean_us,
        mops: ops as f64 / mean_us,
        checksum,
    })
}
