//! Throughput of the dense kernels for a few sizes, reproducible by seed.

use tropical::bench::{bench, BenchOp, DEFAULT_SEED};
use tropical::Semiring;

fn main() -> tropical::Result<()> {
    for op in [BenchOp::Matvec, BenchOp::Matmul, BenchOp::Closure] {
        for n in [64, 128, 256] {
            let r = bench(op, n, Semiring::MaxPlus, 3, DEFAULT_SEED)?;
            println!("{:<8} n={n:<4} mean {:>10.1} µs  {:>8.1} MOPS  checksum {:016x}", op.to_string(), r.mean_us, r.mops, r.checksum);
        }
    }
    Ok(())
}
