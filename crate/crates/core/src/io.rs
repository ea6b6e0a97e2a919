//! Plain-text graph and schedule files.
//!
//! Graph file: a header `n m semiring`, then exactly `m` lines `u v w` with
//! 0-based vertices and `w` an integer, `inf` or `-inf`. Repeated edges are
//! combined with ⊕; missing edges are `zero(s)`.
//!
//! Schedule file: `task <id> <name> <duration> [ready]`,
//! `dep <from> <to> [lag]`, `feedback <from> <to> <lag>` and a bare `cyclic`
//! directive, in any order. Task ids must cover `0..n` exactly once.
//!
//! In both formats `#` starts a comment line and blank lines are skipped.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scheduler::{TaskGraph, Time};
use crate::semiring::{Semiring, TropicalValue};
use crate::sparse::CsrMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub semiring: Semiring,
    /// Edge records in file order, weights already normalized.
    pub edges: Vec<(usize, usize, TropicalValue)>,
}

impl GraphFile {
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let s = self.semiring;
        let mut data = vec![s.zero(); self.n * self.n];
        for &(u, v, w) in &self.edges {
            let slot = &mut data[u * self.n + v];
            *slot = s.add(*slot, w);
        }
        DenseMatrix::new(self.n, self.n, data)
    }

    pub fn to_sparse(&self) -> Result<CsrMatrix> {
        CsrMatrix::from_triplets(self.n, self.n, self.edges.iter().copied(), self.semiring)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn field<T: FromStr>(line: usize, what: &str, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = records(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m semiring`"))?;
    let [n, m, s] = header[..] else {
        return Err(parse_err(hline, "header must be `n m semiring`"));
    };
    let n: usize = field(hline, "vertex count", n)?;
    let m: usize = field(hline, "edge count", m)?;
    let semiring: Semiring = s.parse().map_err(|e: Error| parse_err(hline, e.to_string()))?;
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be at least 1"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the {m} declared edges")));
        }
        let [u, v, w] = tokens[..] else {
            return Err(parse_err(line, "edge must be `u v w`"));
        };
        let u: usize = field(line, "vertex", u)?;
        let v: usize = field(line, "vertex", v)?;
        for x in [u, v] {
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range for {n} vertices")));
            }
        }
        let w: TropicalValue = w.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        edges.push((u, v, semiring.normalize(w)));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Ok(GraphFile { n, semiring, edges })
}

/// Serializes every entry differing from `zero(s)`, row-major.
pub fn write_graph(a: &DenseMatrix, s: Semiring) -> Result<String> {
    let n = a.order()?;
    let edges: Vec<(usize, usize, TropicalValue)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, a.get(i, j)))
        .filter(|&(_, _, w)| w != s.zero())
        .collect();
    let mut out = format!("{n} {} {s}\n", edges.len());
    for (u, v, w) in edges {
        writeln!(out, "{u} {v} {w}").expect("writing to a String");
    }
    Ok(out)
}

enum Record<'a> {
    Task { line: usize, id: usize, name: &'a str, duration: Time, ready: Time },
    Dep { line: usize, from: usize, to: usize, lag: Option<Time> },
    Feedback { line: usize, from: usize, to: usize, lag: Time },
}

pub fn parse_schedule(text: &str) -> Result<TaskGraph> {
    let mut cyclic = false;
    let mut parsed = Vec::new();
    for (line, tokens) in records(text) {
        let record = match tokens[..] {
            ["cyclic"] => {
                cyclic = true;
                continue;
            }
            ["task", id, name, duration, ref rest @ ..] if rest.len() <= 1 => Record::Task {
                line,
                id: field(line, "task id", id)?,
                name,
                duration: field(line, "duration", duration)?,
                ready: rest.first().map_or(Ok(0), |r| field(line, "ready time", r))?,
            },
            ["dep", from, to, ref rest @ ..] if rest.len() <= 1 => Record::Dep {
                line,
                from: field(line, "task id", from)?,
                to: field(line, "task id", to)?,
                lag: rest.first().map(|l| field(line, "lag", l)).transpose()?,
            },
            ["feedback", from, to, lag] => Record::Feedback {
                line,
                from: field(line, "task id", from)?,
                to: field(line, "task id", to)?,
                lag: field(line, "lag", lag)?,
            },
            _ => {
                return Err(parse_err(
                    line,
                    "expected `task <id> <name> <duration> [ready]`, `dep <from> <to> [lag]`, \
                     `feedback <from> <to> <lag>` or `cyclic`",
                ))
            }
        };
        parsed.push(record);
    }

    let mut tasks: Vec<_> = parsed
        .iter()
        .filter_map(|r| match *r {
            Record::Task { line, id, name, duration, ready } => Some((id, line, name, duration, ready)),
            _ => None,
        })
        .collect();
    tasks.sort_by_key(|t| (t.0, t.1));
    let mut g = TaskGraph::new(cyclic);
    for (expected, (id, line, name, duration, ready)) in tasks.into_iter().enumerate() {
        if id != expected {
            let why = if id < expected { "duplicate" } else { "missing ids before" };
            return Err(parse_err(line, format!("task ids must be dense from 0 ({why} task {id})")));
        }
        g.add_task(name, duration, ready).map_err(|e| parse_err(line, e.to_string()))?;
    }
    for r in parsed {
        match r {
            Record::Task { .. } => {}
            Record::Dep { line, from, to, lag } => {
                g.add_constraint(from, to, lag).map_err(|e| parse_err(line, e.to_string()))?
            }
            Record::Feedback { line, from, to, lag } => {
                g.add_feedback(from, to, lag).map_err(|e| parse_err(line, e.to_string()))?
            }
        }
    }
    Ok(g)
}

pub fn write_schedule(g: &TaskGraph) -> String {
    let mut out = String::new();
    if g.is_cyclic() {
        out.push_str("cyclic\n");
    }
    for (id, ((name, d), r)) in g.names().iter().zip(g.durations()).zip(g.ready()).enumerate() {
        writeln!(out, "task {id} {name} {d} {r}").expect("writing to a String");
    }
    for e in g.edges() {
        let kind = if e.feedback { "feedback" } else { "dep" };
        match e.lag {
            Some(lag) => writeln!(out, "{kind} {} {} {lag}", e.from, e.to),
            None => writeln!(out, "{kind} {} {}", e.from, e.to),
        }
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DAG3: &str = "# three-vertex DAG\n3 3 minplus\n0 1 2\n1 2 3\n0 2 7\n";

    #[test]
    fn parses_small_graph() {
        let g = parse_graph(DAG3).unwrap();
        let a = g.to_dense().unwrap();
        assert_eq!(a.get(0, 1), TropicalValue::new(2));
        assert_eq!(a.get(1, 2), TropicalValue::new(3));
        assert_eq!(a.get(0, 2), TropicalValue::new(7));
        assert_eq!(a.get(1, 0), TropicalValue::POS_INF);
        assert_eq!(g.to_sparse().unwrap().to_dense(), a);
    }

    #[test]
    fn empty_edge_list_and_duplicates() {
        let a = parse_graph("2 0 maxplus").unwrap().to_dense().unwrap();
        assert_eq!(a, DenseMatrix::zeros(2, 2, Semiring::MaxPlus).unwrap());
        let dup = parse_graph("2 2 maxplus\n0 1 4\n0 1 6\n").unwrap().to_dense().unwrap();
        assert_eq!(dup.get(0, 1), TropicalValue::new(6));
    }

    #[test]
    fn sentinels_and_boolean_weights() {
        let a = parse_graph("2 2 minplus\n0 1 -inf\n1 0 inf\n").unwrap().to_dense().unwrap();
        assert_eq!(a.get(0, 1), TropicalValue::NEG_INF);
        let b = parse_graph("2 1 boolean\n0 1 5\n").unwrap().to_dense().unwrap();
        assert_eq!(b.get(0, 1), TropicalValue::new(1));
    }

    #[test]
    fn malformed_graphs_report_lines() {
        let cases = [
            ("", 1),
            ("3 1\n", 1),
            ("3 1 tropical\n0 1 2\n", 1),
            ("0 0 minplus\n", 1),
            ("3 1 minplus\n\n0 3 1\n", 3),
            ("3 1 minplus\n0 1 x\n", 2),
            ("3 1 minplus\n0 1\n", 2),
            ("3 2 minplus\n0 1 1\n", 2),
            ("3 1 minplus\n0 1 1\n1 2 1\n", 3),
            ("3 1 minplus\n0 1 99999999999\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn graph_round_trip() {
        let a = parse_graph(DAG3).unwrap().to_dense().unwrap();
        let text = write_graph(&a, Semiring::MinPlus).unwrap();
        assert_eq!(parse_graph(&text).unwrap().to_dense().unwrap(), a);
    }

    const LINE: &str = "cyclic\ntask 0 A 5\ntask 1 B 3 2\ndep 0 1\nfeedback 1 0 3\n";

    #[test]
    fn parses_schedule() {
        let g = parse_schedule(LINE).unwrap();
        assert!(g.is_cyclic());
        assert_eq!(g.names(), ["A", "B"]);
        assert_eq!(g.ready(), [0, 2]);
        assert_eq!(g.edges()[0].lag, None);
        assert_eq!(g.lag(&g.edges()[0]), 5);
        assert!(g.edges()[1].feedback);
        assert_eq!(parse_schedule(&write_schedule(&g)).unwrap(), g);
    }

    #[test]
    fn malformed_schedules() {
        let cases = [
            ("task 1 A 5\n", 1),
            ("task 0 A 5\ntask 0 B 5\n", 2),
            ("task 0 A -5\n", 1),
            ("task 0 A 5\ndep 0 1\n", 2),
            ("task 0 A 5\nfeedback 0 0 1\n", 2),
            ("task 0 A 5\nwait 0\n", 2),
            ("task 0 A 5 1 2\n", 1),
        ];
        for (text, line) in cases {
            match parse_schedule(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
