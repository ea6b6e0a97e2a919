//! Precedence-constrained scheduling in max-plus.
//!
//! An edge `from → to` with lag `l` means `start[to] ≥ start[from] + l`
//! (start-to-start). Omitting the lag defaults it to `duration[from]`, i.e.
//! the successor waits for the predecessor to finish.
//!
//! Feedback edges close the loop of a repeating process; they are ignored
//! by [`TaskGraph::solve`] and only feed [`TaskGraph::cycle_time`].

use serde::Serialize;

use crate::dense::{DenseMatrix, TropicalVector};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, TropicalValue};
use crate::spectral::{self, CycleMean};

pub type Time = i64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// `None` follows the current duration of `from`.
    pub lag: Option<Time>,
    pub feedback: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TaskGraph {
    names: Vec<String>,
    durations: Vec<Time>,
    ready: Vec<Time>,
    edges: Vec<Edge>,
    cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleResult {
    pub start: Vec<Time>,
    pub completion: Vec<Time>,
    pub makespan: Time,
    /// Update passes, including the one that found the fixed point.
    pub iterations: usize,
}

fn check_time(what: &'static str, value: Time) -> Result<Time> {
    if (0..=TropicalValue::MAX_FINITE.raw() as Time).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidTime { what, value })
    }
}

impl TaskGraph {
    /// An empty graph. Only cyclic graphs accept feedback edges.
    pub fn new(cyclic: bool) -> Self {
        TaskGraph { cyclic, ..Default::default() }
    }

    /// Adds a task and returns its id (ids are assigned densely from 0).
    pub fn add_task(&mut self, name: impl Into<String>, duration: Time, ready: Time) -> Result<usize> {
        check_time("duration", duration)?;
        check_time("ready time", ready)?;
        self.names.push(name.into());
        self.durations.push(duration);
        self.ready.push(ready);
        Ok(self.names.len() - 1)
    }

    pub fn add_constraint(&mut self, from: usize, to: usize, lag: Option<Time>) -> Result<()> {
        self.check_task(from)?;
        self.check_task(to)?;
        let lag = lag.map(|l| check_time("lag", l)).transpose()?;
        self.edges.push(Edge { from, to, lag, feedback: false });
        Ok(())
    }

    pub fn add_feedback(&mut self, from: usize, to: usize, lag: Time) -> Result<()> {
        if !self.cyclic {
            return Err(Error::FeedbackOnAcyclicGraph);
        }
        self.check_task(from)?;
        self.check_task(to)?;
        let lag = Some(check_time("lag", lag)?);
        self.edges.push(Edge { from, to, lag, feedback: true });
        Ok(())
    }

    fn check_task(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidTask { id, n: self.len() })
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn durations(&self) -> &[Time] {
        &self.durations
    }

    pub fn ready(&self) -> &[Time] {
        &self.ready
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lag(&self, e: &Edge) -> Time {
        e.lag.unwrap_or(self.durations[e.from])
    }

    pub fn set_duration(&mut self, id: usize, duration: Time) -> Result<()> {
        self.check_task(id)?;
        self.durations[id] = check_time("duration", duration)?;
        Ok(())
    }

    /// MaxPlus matrix with `A[to][from]` = the largest lag on `from → to`.
    pub fn constraint_matrix(&self, include_feedback: bool) -> Result<DenseMatrix> {
        let n = self.len();
        let mut data = vec![TropicalValue::NEG_INF; n * n];
        for e in self.edges.iter().filter(|e| include_feedback || !e.feedback) {
            let slot = &mut data[e.to * n + e.from];
            *slot = (*slot).max(TropicalValue::new(self.lag(e) as i32));
        }
        DenseMatrix::new(n, n, data)
    }

    /// Earliest start times: `s ← s ⊕ (A ⊗ s)` from the ready times shifted
    /// by `start_time`, until nothing changes.
    pub fn solve(&self, start_time: Time) -> Result<ScheduleResult> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyDimension { rows: 0, cols: 0 });
        }
        check_time("start time", start_time)?;
        self.check_acyclic()?;
        // every start is bounded by start_time + max ready + the sum of all lags
        let horizon = start_time
            + self.ready.iter().max().copied().unwrap_or(0)
            + self.edges.iter().filter(|e| !e.feedback).map(|e| self.lag(e)).sum::<Time>()
            + self.durations.iter().max().copied().unwrap_or(0);
        check_time("schedule horizon", horizon)?;

        let a = self.constraint_matrix(false)?;
        let init = self
            .ready
            .iter()
            .map(|&r| TropicalValue::new((r + start_time) as i32))
            .collect();
        let mut s = TropicalVector::new(init)?;
        let mut iterations = 0;
        for _ in 1..n {
            iterations += 1;
            let next = s.add(&a.matvec(&s, Semiring::MaxPlus)?, Semiring::MaxPlus)?;
            if next == s {
                break;
            }
            s = next;
        }

        let start: Vec<Time> = s.as_slice().iter().map(|v| v.raw() as Time).collect();
        let completion: Vec<Time> = start.iter().zip(&self.durations).map(|(s, d)| s + d).collect();
        let makespan = *completion.iter().max().expect("n >= 1");
        Ok(ScheduleResult { start, completion, makespan, iterations })
    }

    /// Kahn's algorithm over the non-feedback edges; on failure reports the
    /// tasks left with unresolved predecessors.
    fn check_acyclic(&self) -> Result<()> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in self.edges.iter().filter(|e| !e.feedback) {
            indegree[e.to] += 1;
            out[e.from].push(e.to);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop() {
            seen += 1;
            for &v in &out[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push(v);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            Err(Error::CycleInAcyclicGraph {
                tasks: (0..n).filter(|&i| indegree[i] > 0).collect(),
            })
        }
    }

    /// Chain of tight constraints ending at the task that sets the makespan.
    /// Ties go to the lowest task id, both for the final task and at every
    /// backward hop.
    pub fn critical_path(&self, result: &ScheduleResult) -> Vec<usize> {
        let Some(mut current) = result.completion.iter().position(|&c| c == result.makespan) else {
            return Vec::new();
        };
        let mut path = vec![current];
        while let Some(prev) = self
            .edges
            .iter()
            .filter(|e| !e.feedback && e.to == current)
            .filter(|e| result.start[e.from] + self.lag(e) == result.start[current])
            .map(|e| e.from)
            .min()
        {
            path.push(prev);
            current = prev;
        }
        path.reverse();
        path
    }

    /// Minimum period of the repeating process: the maximum cycle mean of the
    /// constraint graph including feedback edges.
    pub fn cycle_time(&self) -> Result<CycleMean> {
        if self.is_empty() {
            return Err(Error::NoCycle);
        }
        spectral::max_cycle_mean(&self.constraint_matrix(true)?).map(|m| m.lambda)
    }

    /// Items completed per time unit, `1/λ`.
    pub fn throughput(&self) -> Result<f64> {
        Ok(1.0 / self.cycle_time()?.as_f64())
    }
}
