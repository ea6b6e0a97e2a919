//! One network, three questions: who can reach whom, the widest route, and
//! the route with the smallest worst link.

use tropical::graph::{bottleneck_paths, is_strongly_connected, reachability};
use tropical::{DenseMatrix, Semiring};

fn main() -> tropical::Result<()> {
    // link capacities in Mbit/s; 0 = no link in (max, min)
    let cap = DenseMatrix::from_rows([
        [0, 100, 20, 0],
        [0, 0, 30, 80],
        [0, 0, 0, 50],
        [10, 0, 0, 0],
    ])?;
    println!("strongly connected: {}", is_strongly_connected(&cap, Semiring::MaxMin)?);
    println!("\nreachability:\n{}", reachability(&cap.support(Semiring::MaxMin))?);
    println!("\nwidest-path capacity:\n{}", bottleneck_paths(&cap)?);

    // latency of the worst hop, minimized over routes
    let inf = i32::MAX;
    let lat = DenseMatrix::from_rows([[inf, 5, 9, inf], [inf, inf, 2, 7], [inf, inf, inf, 3], [4, inf, inf, inf]])?;
    let star = lat.closure(Semiring::MinMax)?.into_result()?;
    println!("\nminimax latency:\n{star}");
    Ok(())
}
