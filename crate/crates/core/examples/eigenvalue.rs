//! Maximum cycle mean, critical vertices, and an eigenvector of a max-plus
//! matrix whose critical cycle has length three.

use tropical::io::parse_graph;
use tropical::spectral::{critical_vertices, default_max_iter, eigen_residual, eigenvector, max_cycle_mean, DEFAULT_EPSILON};

const GRAPH: &str = "\
4 5 maxplus
0 1 4
1 2 1
2 0 3
1 3 3
3 1 2
";

fn main() -> tropical::Result<()> {
    let a = parse_graph(GRAPH)?.to_dense()?;
    let m = max_cycle_mean(&a)?;
    println!("λ = {} ≈ {:.6}, strongly connected: {}", m.lambda, m.lambda.as_f64(), m.strongly_connected);

    let crit = critical_vertices(&a)?;
    println!("critical vertices: {crit:?}");

    let v = eigenvector(&a, m.lambda, DEFAULT_EPSILON, default_max_iter(4))?;
    println!("v = {:?}", v.values);
    println!("period {} after {} iterations", v.period, v.iterations);
    println!("residual on critical vertices: {:e}", eigen_residual(&a, m.lambda, &v.values, crit)?);
    Ok(())
}
