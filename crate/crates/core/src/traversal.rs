//! One-to-all distance engine: BFS for unit weights, Dijkstra otherwise.
//!
//! This is the only way the algorithms touch the graph, and every sweep is
//! charged to a [`QueryCounter`] — the cost model everything else is
//! measured in.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};

pub const UNREACHED: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Counts one-to-all distance queries. Forward and backward sweeps cost one
/// unit each.
#[derive(Debug, Default, Clone)]
pub struct QueryCounter {
    sweeps: u64,
}

impl QueryCounter {
    pub fn new() -> QueryCounter {
        QueryCounter::default()
    }

    #[inline]
    pub fn charge(&mut self) {
        self.sweeps += 1;
    }

    pub fn sweeps(&self) -> u64 {
        self.sweeps
    }

    pub fn reset(&mut self) {
        self.sweeps = 0;
    }
}

/// Distances from (or to) a single source, with the derived eccentricity and
/// antipode.
#[derive(Debug, Clone)]
pub struct DistanceRow {
    pub source: usize,
    pub direction: Direction,
    pub dist: Vec<u64>,
    /// max over `dist`
    pub ecc: u64,
    /// lexicographic argmax of (distance, rank)
    pub antipode: usize,
}

impl DistanceRow {
    fn empty() -> DistanceRow {
        DistanceRow {
            source: 0,
            direction: Direction::Forward,
            dist: Vec::new(),
            ecc: 0,
            antipode: 0,
        }
    }
}

/// One-to-all distances from `source` in the requested orientation.
///
/// Backward sweeps on directed graphs walk the precomputed reverse
/// adjacency and yield `dist[v] = d(v, source)`; on undirected graphs the
/// direction is immaterial. Errors with [`Error::Unreachable`] when some
/// node has no finite distance — the graph was not core-restricted.
pub fn dist_from(
    g: &Graph,
    ranking: &Ranking,
    source: usize,
    direction: Direction,
    counter: &mut QueryCounter,
) -> Result<DistanceRow> {
    let mut row = DistanceRow::empty();
    dist_from_into(g, ranking, source, direction, counter, &mut row)?;
    Ok(row)
}

/// Same as [`dist_from`] but reuses the row's buffer, keeping per-sweep
/// allocation flat across many sweeps.
pub fn dist_from_into(
    g: &Graph,
    ranking: &Ranking,
    source: usize,
    direction: Direction,
    counter: &mut QueryCounter,
    row: &mut DistanceRow,
) -> Result<()> {
    assert!(source < g.n(), "source out of range");
    counter.charge();
    // Undirected graphs have no backward orientation; normalize so the row
    // advertises what it actually holds.
    let direction = if g.directed() {
        direction
    } else {
        Direction::Forward
    };
    row.source = source;
    row.direction = direction;
    row.dist.clear();
    row.dist.resize(g.n(), UNREACHED);

    if g.unit_weights() {
        bfs(g, source, direction, &mut row.dist);
    } else {
        dijkstra(g, source, direction, &mut row.dist);
    }

    let mut ecc = 0u64;
    let mut antipode = source;
    let mut best_rank = ranking.rank_of(source);
    for (v, &d) in row.dist.iter().enumerate() {
        if d == UNREACHED {
            return Err(Error::Unreachable(v));
        }
        let r = ranking.rank_of(v);
        if d > ecc || (d == ecc && r > best_rank) {
            ecc = d;
            antipode = v;
            best_rank = r;
        }
    }
    row.ecc = ecc;
    row.antipode = antipode;
    Ok(())
}

fn bfs(g: &Graph, source: usize, direction: Direction, dist: &mut [u64]) {
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let backward = direction == Direction::Backward;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &(v, _) in g.arc_slice(u, backward) {
            let v = v as usize;
            if dist[v] == UNREACHED {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

fn dijkstra(g: &Graph, source: usize, direction: Direction, dist: &mut [u64]) {
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0, source)));
    let backward = direction == Direction::Backward;
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.arc_slice(u, backward) {
            let v = v as usize;
            let nd = d + w as u64;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
}

/// Multi-source variant: `dist[v] = min over sources s of d(s, v)` along the
/// requested orientation. Used by the covering heuristics to prune
/// candidates; it is charged as a single sweep.
pub fn multi_source_dist(
    g: &Graph,
    sources: &[usize],
    direction: Direction,
    counter: &mut QueryCounter,
) -> Vec<u64> {
    counter.charge();
    let mut dist = vec![UNREACHED; g.n()];
    if g.unit_weights() {
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = 0;
            queue.push_back(s);
        }
        let backward = direction == Direction::Backward;
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &(v, _) in g.arc_slice(u, backward) {
                let v = v as usize;
                if dist[v] == UNREACHED {
                    dist[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    } else {
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0;
            heap.push(Reverse((0, s)));
        }
        let backward = direction == Direction::Backward;
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in g.arc_slice(u, backward) {
                let v = v as usize;
                let nd = d + w as u64;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
    dist
}
