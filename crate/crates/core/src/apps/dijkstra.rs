//! Shortest paths with sorter-backed neighbour selection.
//!
//! Every node's neighbour distances are encoded as half-precision floats and
//! sorted once by the configured strategy. The search then repeatedly takes,
//! over all settled nodes u, the sum `D_u + d(u, v)` for u's nearest
//! unsettled neighbour v, and settles the smallest sum.

use serde::Serialize;

use crate::crossarray::StrategyConfig;
use crate::datatypes::{encode, Direction, NumberFormat, Value};
use crate::engine::{RunMetrics, SortOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    /// Undirected edge. Distances must be positive and exact in half precision.
    pub fn add_edge(&mut self, u: usize, v: usize, d: f64) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::OutOfRange { index: x, limit: self.n });
            }
        }
        if u == v {
            return Err(Error::Config(format!("self loop on node {u}")));
        }
        if !(d > 0.0) {
            return Err(Error::Config(format!("edge {u}-{v}: distance must be positive, got {d}")));
        }
        NumberFormat::half().encode_value(Value::Float(d))?;
        if self.adj[u].iter().any(|&(w, _)| w == v) {
            return Err(Error::Config(format!("duplicate edge {u}-{v}")));
        }
        self.adj[u].push((v, d));
        self.adj[v].push((u, d));
        Ok(())
    }

    /// Text format: `#nodes=<n>` then `u v distance` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let Some(g) = graph.as_mut() else {
                let n = line
                    .strip_prefix("#nodes=")
                    .ok_or_else(|| perr("expected '#nodes=<n>' header".into()))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| perr(format!("bad node count: {e}")))?;
                graph = Some(Graph::new(n));
                continue;
            };
            if line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(perr(format!("expected 'u v distance', got '{line}'")));
            }
            let u = fields[0].parse::<usize>().map_err(|e| perr(format!("bad node '{}': {e}", fields[0])))?;
            let v = fields[1].parse::<usize>().map_err(|e| perr(format!("bad node '{}': {e}", fields[1])))?;
            let d = fields[2].parse::<f64>().map_err(|e| perr(format!("bad distance '{}': {e}", fields[2])))?;
            g.add_edge(u, v, d).map_err(|e| perr(e.to_string()))?;
        }
        graph.ok_or(Error::Parse { line: 1, msg: "missing '#nodes=' header".into() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DijkstraResult {
    pub distance: f64,
    pub path: Vec<usize>,
    /// Sorting work summed over all neighbour lists.
    pub metrics: RunMetrics,
    /// Candidate selections performed.
    pub iterations: usize,
}

pub fn sorter_dijkstra(g: &Graph, start: usize, end: usize, sorter: &StrategyConfig) -> Result<DijkstraResult> {
    for x in [start, end] {
        if x >= g.n {
            return Err(Error::OutOfRange { index: x, limit: g.n });
        }
    }
    let half = NumberFormat::half();
    let mut metrics = RunMetrics::default();
    let mut sorted: Vec<Vec<(usize, f64)>> = Vec::with_capacity(g.n);
    for u in 0..g.n {
        let list = &g.adj[u];
        let values: Vec<Value> = list.iter().map(|&(_, d)| Value::Float(d)).collect();
        let ds = encode(&values, half)?;
        let out = sorter.run(&ds, Direction::MinFirst, &SortOptions::default())?;
        metrics.accumulate(&out.metrics);
        sorted.push(out.order.iter().map(|&i| list[i]).collect());
    }

    let mut dist = vec![f64::INFINITY; g.n];
    let mut pred = vec![usize::MAX; g.n];
    let mut settled = vec![false; g.n];
    let mut cursor = vec![0usize; g.n];
    let mut order = vec![start];
    dist[start] = 0.0;
    settled[start] = true;
    let mut iterations = 0;
    while !settled[end] {
        // (sum, node, via)
        let mut best: Option<(f64, usize, usize)> = None;
        for &u in &order {
            let list = &sorted[u];
            while cursor[u] < list.len() && settled[list[cursor[u]].0] {
                cursor[u] += 1;
            }
            let Some(&(v, d)) = list.get(cursor[u]) else { continue };
            let cand = (dist[u] + d, v, u);
            if best.is_none_or(|b| (cand.0, cand.1, cand.2) < b) {
                best = Some(cand);
            }
        }
        let (s, v, u) = best.ok_or(Error::Unreachable { start, end })?;
        iterations += 1;
        dist[v] = s;
        pred[v] = u;
        settled[v] = true;
        order.push(v);
    }
    let mut path = vec![end];
    while *path.last().expect("non-empty") != start {
        path.push(pred[*path.last().expect("non-empty")]);
    }
    path.reverse();
    Ok(DijkstraResult { distance: dist[end], path, metrics, iterations })
}
