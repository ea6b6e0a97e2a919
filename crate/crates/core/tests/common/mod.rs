//! Brute-force oracles and random inputs shared by the integration tests.
//! Nothing here calls into the library's algorithms; only the value types
//! and the scalar semiring operations are reused.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use tropical::{DenseMatrix, Semiring, TropicalValue};

pub const NINF: i32 = i32::MIN;
pub const INF: i32 = i32::MAX;

pub fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

pub fn tv(x: i32) -> TropicalValue {
    TropicalValue::new(x)
}

/// Triple-loop product straight from the definition.
pub fn naive_matmul(a: &DenseMatrix, b: &DenseMatrix, s: Semiring) -> DenseMatrix {
    DenseMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(s.zero(), |acc, k| s.add(acc, s.mul(a.get(i, k), b.get(k, j))))
    })
    .unwrap()
}

/// `⊕_{k=0}^{n-1} A^k` with each power built by [`naive_matmul`].
pub fn power_sum_closure(a: &DenseMatrix, s: Semiring) -> DenseMatrix {
    let n = a.rows();
    let identity = DenseMatrix::from_fn(n, n, |i, j| if i == j { s.one() } else { s.zero() }).unwrap();
    let mut power = identity.clone();
    let mut sum = identity;
    for _ in 1..n {
        power = naive_matmul(&power, a, s);
        sum = DenseMatrix::from_fn(n, n, |i, j| s.add(sum.get(i, j), power.get(i, j))).unwrap();
    }
    sum
}

/// Classical edge-relaxation shortest paths in `i64`; `None` is unreachable.
pub fn bellman_ford(n: usize, edges: &[(usize, usize, i64)], source: usize) -> Vec<Option<i64>> {
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    for _ in 0..n {
        let mut changed = false;
        for &(u, v, w) in edges {
            if let Some(du) = dist[u] {
                if dist[v].is_none_or(|dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Edges of a matrix: every entry differing from `zero(s)`.
pub fn edges_of(a: &DenseMatrix, s: Semiring) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != s.zero() {
                out.push((i, j, a.get(i, j).raw() as i64));
            }
        }
    }
    out
}

/// Every elementary cycle as `(weight, length)`, each found once from its
/// smallest vertex.
pub fn elementary_cycles(a: &DenseMatrix) -> Vec<(i64, i64)> {
    let n = a.rows();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    fn dfs(
        a: &DenseMatrix,
        start: usize,
        u: usize,
        weight: i64,
        len: i64,
        on_path: &mut [bool],
        out: &mut Vec<(i64, i64)>,
    ) {
        for v in start..a.rows() {
            let w = a.get(u, v);
            if w == TropicalValue::NEG_INF {
                continue;
            }
            let w = w.raw() as i64;
            if v == start {
                out.push((weight + w, len + 1));
            } else if !on_path[v] {
                on_path[v] = true;
                dfs(a, start, v, weight + w, len + 1, on_path, out);
                on_path[v] = false;
            }
        }
    }
    for start in 0..n {
        on_path[start] = true;
        dfs(a, start, start, 0, 0, &mut on_path, &mut out);
        on_path[start] = false;
    }
    out
}

/// Maximum cycle mean by enumeration, as a reduced `(p, q)`.
pub fn max_cycle_mean_oracle(a: &DenseMatrix) -> Option<(i64, i64)> {
    let best = elementary_cycles(a)
        .into_iter()
        .max_by(|x, y| (x.0 as i128 * y.1 as i128).cmp(&(y.0 as i128 * x.1 as i128)))?;
    let g = gcd(best.0.unsigned_abs(), best.1 as u64) as i64;
    Some((best.0 / g, best.1 / g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Vertices on at least one elementary cycle that attains the maximum mean.
pub fn critical_vertices_oracle(a: &DenseMatrix) -> Vec<usize> {
    let Some((p, q)) = max_cycle_mean_oracle(a) else { return Vec::new() };
    let n = a.rows();
    let mut critical = vec![false; n];
    let mut path = Vec::new();
    fn dfs(a: &DenseMatrix, start: usize, u: usize, weight: i64, path: &mut Vec<usize>, pq: (i64, i64), critical: &mut [bool]) {
        for v in start..a.rows() {
            let w = a.get(u, v);
            if w == TropicalValue::NEG_INF {
                continue;
            }
            let w = weight + w.raw() as i64;
            if v == start {
                if w as i128 * pq.1 as i128 == pq.0 as i128 * path.len() as i128 {
                    for &x in path.iter() {
                        critical[x] = true;
                    }
                }
            } else if !path.contains(&v) {
                path.push(v);
                dfs(a, start, v, w, path, pq, critical);
                path.pop();
            }
        }
    }
    for start in 0..n {
        path.push(start);
        dfs(a, start, start, 0, &mut path, (p, q), &mut critical);
        path.pop();
    }
    (0..n).filter(|&i| critical[i]).collect()
}

/// Reachability by depth-first search from every vertex.
pub fn dfs_reachability(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if adj[u][v] && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Widest path over all simple paths; `i64::MAX` on the diagonal (the
/// empty path), `None` where unreachable.
pub fn widest_simple_paths(a: &DenseMatrix) -> Vec<Vec<Option<i64>>> {
    let n = a.rows();
    let mut best = vec![vec![None; n]; n];
    fn dfs(a: &DenseMatrix, u: usize, width: i64, seen: &mut [bool], row: &mut [Option<i64>]) {
        for v in 0..a.rows() {
            let w = a.get(u, v);
            if w == TropicalValue::NEG_INF || seen[v] {
                continue;
            }
            let width = width.min(if w == TropicalValue::POS_INF { i64::MAX } else { w.raw() as i64 });
            row[v] = Some(row[v].map_or(width, |b: i64| b.max(width)));
            seen[v] = true;
            dfs(a, v, width, seen, row);
            seen[v] = false;
        }
    }
    for s in 0..n {
        let mut seen = vec![false; n];
        seen[s] = true;
        dfs(a, s, i64::MAX, &mut seen, &mut best[s]);
        best[s][s] = Some(i64::MAX);
    }
    best
}

/// Earliest starts by relaxing edges in a topological order.
pub fn topological_starts(
    n: usize,
    ready: &[i64],
    edges: &[(usize, usize, i64)],
    order: &[usize],
) -> Vec<i64> {
    let mut start = ready.to_vec();
    for &u in order {
        for &(f, t, lag) in edges {
            if f == u {
                start[t] = start[t].max(start[u] + lag);
            }
        }
    }
    assert_eq!(start.len(), n);
    start
}

pub fn random_value(rng: &mut impl Rng, s: Semiring, lo: i32, hi: i32) -> TropicalValue {
    match s {
        Semiring::Boolean => tv(rng.gen_range(0..=1)),
        _ => tv(rng.gen_range(lo..=hi)),
    }
}

/// Square matrix where each entry is `zero(s)` with probability `sparsity`.
pub fn random_matrix(rng: &mut impl Rng, n: usize, s: Semiring, lo: i32, hi: i32, sparsity: f64) -> DenseMatrix {
    random_rect(rng, n, n, s, lo, hi, sparsity)
}

pub fn random_rect(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    s: Semiring,
    lo: i32,
    hi: i32,
    sparsity: f64,
) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(sparsity) {
            s.zero()
        } else {
            random_value(rng, s, lo, hi)
        }
    })
    .unwrap()
}

/// Random max-plus graph made strongly connected by a Hamiltonian cycle
/// through a shuffled vertex order.
pub fn random_strongly_connected(rng: &mut impl Rng, n: usize, density: f64) -> DenseMatrix {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rows = vec![vec![NINF; n]; n];
    for row in rows.iter_mut() {
        for cell in row.iter_mut() {
            if rng.gen_bool(density) {
                *cell = rng.gen_range(-100..=100);
            }
        }
    }
    for w in 0..n {
        let (u, v) = (order[w], order[(w + 1) % n]);
        if rows[u][v] == NINF {
            rows[u][v] = rng.gen_range(-100..=100);
        }
    }
    DenseMatrix::from_rows(rows).unwrap()
}

/// Random acyclic task set: edges only go from lower to higher position in
/// a shuffled order, so that order is topological.
pub struct RandomDag {
    pub durations: Vec<i64>,
    pub ready: Vec<i64>,
    /// `(from, to, lag)`; `None` lag means the default.
    pub edges: Vec<(usize, usize, Option<i64>)>,
    pub order: Vec<usize>,
}

pub fn random_dag(rng: &mut impl Rng, n: usize) -> RandomDag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let durations = (0..n).map(|_| rng.gen_range(0..=50)).collect();
    let ready = (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..=40) } else { 0 }).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.35) {
                let lag = if rng.gen_bool(0.5) { None } else { Some(rng.gen_range(0..=30)) };
                edges.push((order[a], order[b], lag));
            }
        }
    }
    RandomDag { durations, ready, edges, order }
}

/// Entries in `lo..=hi` (0/1 for Boolean), a quarter of them `zero(s)`.
pub fn entry(s: Semiring, lo: i32, hi: i32) -> impl proptest::strategy::Strategy<Value = TropicalValue> {
    use proptest::prelude::*;
    let finite = if s == Semiring::Boolean { (0..=1).boxed() } else { (lo..=hi).boxed() };
    prop_oneof![1 => Just(s.zero()), 3 => finite.prop_map(TropicalValue::new)]
}

pub fn square(
    s: Semiring,
    sizes: std::ops::RangeInclusive<usize>,
    lo: i32,
    hi: i32,
) -> impl proptest::strategy::Strategy<Value = DenseMatrix> {
    use proptest::prelude::*;
    sizes.prop_flat_map(move |n| {
        proptest::collection::vec(entry(s, lo, hi), n * n)
            .prop_map(move |data| DenseMatrix::new(n, n, data).unwrap())
    })
}

pub fn semiring() -> impl proptest::strategy::Strategy<Value = Semiring> {
    proptest::sample::select(Semiring::ALL.to_vec())
}

/// Value range on which closure is well defined for `s`: non-negative for
/// min-plus, non-positive for max-plus, anything otherwise.
pub fn safe_range(s: Semiring) -> (i32, i32) {
    match s {
        Semiring::MinPlus => (0, 100),
        Semiring::MaxPlus => (-100, 0),
        _ => (-100, 100),
    }
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
