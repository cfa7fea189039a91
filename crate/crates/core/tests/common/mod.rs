//! Instance generators and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use msim::apps::Graph;
use msim::{FormatKind, NumberFormat, Value};
use rand::Rng;

pub const ALL_KINDS: [FormatKind; 4] =
    [FormatKind::Unsigned, FormatKind::TwosComplement, FormatKind::SignMagnitude, FormatKind::Float];

/// A format of `kind`; floats are always half precision.
pub fn format_for(kind: FormatKind, width: u32) -> NumberFormat {
    match kind {
        FormatKind::Unsigned => NumberFormat::unsigned(width).unwrap(),
        FormatKind::TwosComplement => NumberFormat::twos_complement(width).unwrap(),
        FormatKind::SignMagnitude => NumberFormat::sign_magnitude(width).unwrap(),
        FormatKind::Float => NumberFormat::half(),
    }
}

/// One random word of `fmt`, skipping the float inf/nan exponent.
pub fn random_word<R: Rng>(rng: &mut R, fmt: &NumberFormat) -> u64 {
    let mask = if fmt.width == 64 { u64::MAX } else { (1u64 << fmt.width) - 1 };
    loop {
        let w = rng.random::<u64>() & mask;
        if fmt.kind == FormatKind::Float {
            let exp = (w >> fmt.frac_bits) & ((1 << fmt.exp_bits) - 1);
            if exp == (1 << fmt.exp_bits) - 1 {
                continue;
            }
        }
        return w;
    }
}

/// Random values, sometimes drawn from a small pool so duplicates are common.
pub fn random_values<R: Rng>(rng: &mut R, fmt: &NumberFormat, n: usize) -> Vec<Value> {
    let pool: Vec<u64> = if rng.random_bool(0.3) {
        let k = rng.random_range(1..=4usize);
        (0..k).map(|_| random_word(rng, fmt)).collect()
    } else {
        Vec::new()
    };
    (0..n)
        .map(|_| {
            let w = if pool.is_empty() { random_word(rng, fmt) } else { pool[rng.random_range(0..pool.len())] };
            fmt.decode_word(w)
        })
        .collect()
}

/// Random split of `total` into `parts` positive sizes.
pub fn random_sizes<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let parts = parts.clamp(1, total);
    let mut cuts: Vec<usize> = (1..total).collect();
    for i in 0..parts - 1 {
        let j = rng.random_range(i..cuts.len());
        cuts.swap(i, j);
    }
    let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
    cuts.sort();
    let mut sizes = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        sizes.push(c - prev);
        prev = c;
    }
    sizes
}

/// Random connected undirected graph with distances in multiples of 1/16.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::new(n);
    let dist = |rng: &mut R| rng.random_range(1..=64u32) as f64 / 16.0;
    for v in 1..n {
        let u = rng.random_range(0..v);
        let d = dist(rng);
        g.add_edge(u, v, d).unwrap();
    }
    let extra = rng.random_range(0..=2 * n);
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.neighbors(u).iter().any(|&(w, _)| w == v) {
            let d = dist(rng);
            g.add_edge(u, v, d).unwrap();
        }
    }
    g
}

/// Classical binary-heap Dijkstra. Distances are non-negative so their bit
/// patterns order like the values.
pub fn dijkstra_oracle(g: &Graph, start: usize, end: usize) -> Option<f64> {
    let mut dist = vec![f64::INFINITY; g.n_nodes()];
    let mut heap = BinaryHeap::new();
    dist[start] = 0.0;
    heap.push(Reverse((0f64.to_bits(), start)));
    while let Some(Reverse((bits, u))) = heap.pop() {
        let d = f64::from_bits(bits);
        if d > dist[u] {
            continue;
        }
        if u == end {
            return Some(d);
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd.to_bits(), v)));
            }
        }
    }
    None
}

/// Sum of edge lengths along `path`, or `None` if some hop is not an edge.
pub fn path_cost(g: &Graph, path: &[usize]) -> Option<f64> {
    let mut total = 0.0;
    for hop in path.windows(2) {
        let &(_, d) = g.neighbors(hop[0]).iter().find(|&&(v, _)| v == hop[1])?;
        total += d;
    }
    Some(total)
}

/// Indices of the `m` smallest |w|, ties by index.
pub fn bottom_by_magnitude(weights: &[Value], m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..weights.len()).collect();
    idx.sort_by(|&a, &b| weights[a].as_f64().abs().total_cmp(&weights[b].as_f64().abs()).then(a.cmp(&b)));
    idx.truncate(m);
    idx
}
