//! Single-source and all-pairs shortest paths over (min, +), and what
//! happens when a negative cycle is present.

use tropical::graph::{all_pairs_paths, single_source};
use tropical::io::parse_graph;
use tropical::{Error, Semiring};

const ROADS: &str = "\
# travel times between five depots
5 7 minplus
0 1 4
0 2 1
2 1 2
1 3 1
2 3 5
3 4 3
4 0 7
";

fn main() -> tropical::Result<()> {
    let a = parse_graph(ROADS)?.to_dense()?;
    let run = single_source(&a, 0, Semiring::MinPlus, true)?;
    println!("from depot 0: {} ({} iterations)", run.distances, run.iterations);
    println!("\nall pairs:\n{}", all_pairs_paths(&a, Semiring::MinPlus)?);

    let loopy = parse_graph("2 2 minplus\n0 1 2\n1 0 -3\n")?.to_dense()?;
    match loopy.closure(Semiring::MinPlus)?.into_result() {
        Err(Error::NegativeCycleDetected { vertices }) => println!("\nnegative cycle through {vertices:?}"),
        other => println!("\nunexpected: {other:?}"),
    }
    Ok(())
}
