//! Synthetic graph families for tests and benchmarks. Every generator is
//! deterministic in its parameters and seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn gen_path(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::BadGenParams("path needs k >= 1".into()));
    }
    let edges: Vec<(usize, usize, u64)> = (0..k.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect();
    Graph::from_edges(k, false, &edges)
}

pub fn gen_cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::BadGenParams("cycle needs k >= 3".into()));
    }
    let edges: Vec<(usize, usize, u64)> = (0..k).map(|i| (i, (i + 1) % k, 1)).collect();
    Graph::from_edges(k, false, &edges)
}

/// Star with `k` leaves on center 0.
pub fn gen_star(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::BadGenParams("star needs k >= 1".into()));
    }
    let edges: Vec<(usize, usize, u64)> = (1..=k).map(|i| (0, i, 1)).collect();
    Graph::from_edges(k + 1, false, &edges)
}

/// k x k grid with an exact fraction of its edges deleted uniformly at
/// random. The result may be disconnected; callers core-restrict.
pub fn gen_grid(k: usize, deletion_fraction: f64, seed: u64) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadGenParams("grid needs k >= 2".into()));
    }
    if !(0.0..1.0).contains(&deletion_fraction) {
        return Err(Error::BadGenParams("deletion fraction must be in [0, 1)".into()));
    }
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let id = i * k + j;
            if j + 1 < k {
                edges.push((id, id + 1, 1));
            }
            if i + 1 < k {
                edges.push((id, id + k, 1));
            }
        }
    }
    if deletion_fraction > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        edges.shuffle(&mut rng);
        let keep = edges.len() - (deletion_fraction * edges.len() as f64).floor() as usize;
        edges.truncate(keep);
        edges.sort_unstable();
    }
    Graph::from_edges(k * k, false, &edges)
}

/// k x k grid where each edge gets a uniformly random orientation and a
/// uniform weight in 0..=9. Callers restrict to the largest strongly
/// connected component.
pub fn gen_weighted_directed_grid(k: usize, seed: u64) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadGenParams("grid needs k >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let id = i * k + j;
            let mut push = |a: usize, b: usize, rng: &mut ChaCha8Rng| {
                let w = rng.gen_range(0..=9u64);
                if rng.gen_bool(0.5) {
                    edges.push((a, b, w));
                } else {
                    edges.push((b, a, w));
                }
            };
            if j + 1 < k {
                push(id, id + 1, &mut rng);
            }
            if i + 1 < k {
                push(id, id + k, &mut rng);
            }
        }
    }
    Graph::from_edges(k * k, true, &edges)
}

/// Two-lobe family with pinned certificate structure, for p >= 2 and
/// q >= 6:
///
/// * hubs `a`, `b` joined by three parallel routes of length `2q - 2`;
/// * `p` pendant paths of length `q` on each hub (their leaves realize the
///   diameter `4q - 2` across lobes, and force basic upper-bound-driven
///   diameter search to sweep a ball of radius zero per leaf);
/// * a center `c` hanging off both hubs through two doubled stems of
///   length `q + 1`, carrying a pendant path of length 8 that keeps every
///   route middle eccentric; `e(c) = 2q + 1` is the radius.
///
/// Node count is `2q(p + 5) + 2`.
pub fn gen_bowtie(p: usize, q: usize) -> Result<Graph> {
    if p < 2 || q < 6 {
        return Err(Error::BadGenParams("bow-tie needs p >= 2 and q >= 6".into()));
    }
    let n = 2 * q * (p + 5) + 2;
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    let a = 0usize;
    let b = 1usize;
    let c = 2usize;
    let mut next = 3usize;

    // Chain of `len` fresh nodes from `from` to `to` (path length len + 1),
    // or a pendant path when `to` is None.
    let mut chain = |from: usize, to: Option<usize>, len: usize, edges: &mut Vec<(usize, usize, u64)>| {
        let mut prev = from;
        for _ in 0..len {
            edges.push((prev, next, 1));
            prev = next;
            next += 1;
        }
        if let Some(t) = to {
            edges.push((prev, t, 1));
        }
    };

    // Two stems c-a and c-b, doubled: length q + 1 each (q internal nodes).
    for hub in [a, b] {
        for _ in 0..2 {
            chain(c, Some(hub), q, &mut edges);
        }
    }
    // Three a-b routes of length 2q - 2 (2q - 3 internal nodes).
    for _ in 0..3 {
        chain(a, Some(b), 2 * q - 3, &mut edges);
    }
    // Pendant path of length 8 at the center.
    chain(c, None, 8, &mut edges);
    // p pendant paths of length q per hub; leaves take the highest ids.
    for hub in [a, b] {
        for _ in 0..p {
            chain(hub, None, q, &mut edges);
        }
    }
    debug_assert_eq!(next, n);
    Graph::from_edges(n, false, &edges)
}

/// Power-law graph by the configuration model: degree counts proportional
/// to `k^-exponent`, stubs matched uniformly, then simplified. Retries with
/// derived seeds if the matching degenerates.
pub fn gen_powerlaw(n: usize, exponent: f64, seed: u64) -> Result<Graph> {
    if n < 10 {
        return Err(Error::BadGenParams("power law needs n >= 10".into()));
    }
    if exponent <= 1.0 {
        return Err(Error::BadGenParams("exponent must exceed 1".into()));
    }
    let max_degree = ((n as f64).sqrt() as usize).max(2);
    let weights: Vec<f64> = (1..=max_degree).map(|k| (k as f64).powf(-exponent)).collect();
    let total: f64 = weights.iter().sum();

    let mut degrees: Vec<usize> = Vec::with_capacity(n);
    for (i, w) in weights.iter().enumerate() {
        let count = (w / total * n as f64).round() as usize;
        for _ in 0..count {
            degrees.push(i + 1);
        }
    }
    degrees.truncate(n);
    while degrees.len() < n {
        degrees.push(1);
    }

    const RETRIES: usize = 10;
    for attempt in 0..RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut stubs: Vec<usize> = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            for _ in 0..d {
                stubs.push(v);
            }
        }
        if stubs.len() % 2 == 1 {
            stubs.pop();
        }
        stubs.shuffle(&mut rng);
        let mut seen = std::collections::HashSet::new();
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                edges.push((key.0, key.1, 1));
            }
        }
        if edges.len() * 5 >= stubs.len() {
            return Graph::from_edges(n, false, &edges);
        }
    }
    Err(Error::InfeasibleDegrees(RETRIES))
}

/// Unit-disk graph: `n` uniform points in the unit square, connected within
/// the radius that makes the expected average degree hit the target.
pub fn gen_udg(n: usize, target_avg_degree: f64, seed: u64) -> Result<Graph> {
    if n < 10 {
        return Err(Error::BadGenParams("unit disk needs n >= 10".into()));
    }
    if target_avg_degree <= 0.0 {
        return Err(Error::BadGenParams("target degree must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let r = (target_avg_degree / (std::f64::consts::PI * (n as f64 - 1.0))).sqrt();
    let r2 = r * r;

    // Bucket points on a grid of cell size r; only neighboring cells can
    // hold edges.
    let cells = ((1.0 / r).ceil() as usize).max(1);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in pts.iter().enumerate() {
        buckets[cell_of(y) * cells + cell_of(x)].push(i);
    }
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for cy in 0..cells {
        for cx in 0..cells {
            for &i in &buckets[cy * cells + cx] {
                for dy in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
                    for dx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
                        for &j in &buckets[dy * cells + dx] {
                            if j <= i {
                                continue;
                            }
                            let (xi, yi) = pts[i];
                            let (xj, yj) = pts[j];
                            let dx2 = (xi - xj) * (xi - xj) + (yi - yj) * (yi - yj);
                            if dx2 <= r2 {
                                edges.push((i, j, 1));
                            }
                        }
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    Graph::from_edges(n, false, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChordalKind {
    KTree,
    Interval,
}

/// Chordal test instances: k-trees by repeated clique attachment, or
/// interval graphs from random intervals.
pub fn gen_chordal(kind: ChordalKind, n: usize, param: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ChordalKind::KTree => {
            let k = param.max(1);
            if n < k + 1 {
                return Err(Error::BadGenParams("k-tree needs n >= k + 1".into()));
            }
            let mut edges: Vec<(usize, usize, u64)> = Vec::new();
            for i in 0..=k {
                for j in i + 1..=k {
                    edges.push((i, j, 1));
                }
            }
            // Cliques of size k available for attachment.
            let mut cliques: Vec<Vec<usize>> = Vec::new();
            let base: Vec<usize> = (0..=k).collect();
            for skip in 0..=k {
                let cl: Vec<usize> = base.iter().copied().filter(|&v| v != skip).collect();
                cliques.push(cl);
            }
            for v in k + 1..n {
                let idx = rng.gen_range(0..cliques.len());
                let attach = cliques[idx].clone();
                for &u in &attach {
                    edges.push((u, v, 1));
                }
                for skip in 0..attach.len() {
                    let mut cl: Vec<usize> = attach
                        .iter()
                        .copied()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, u)| u)
                        .collect();
                    cl.push(v);
                    cliques.push(cl);
                }
            }
            Graph::from_edges(n, false, &edges)
        }
        ChordalKind::Interval => {
            let _ = param;
            let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(n);
            for _ in 0..n {
                let a = rng.gen::<f64>();
                let b = rng.gen::<f64>();
                intervals.push((a.min(b), a.max(b)));
            }
            let mut edges: Vec<(usize, usize, u64)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let (li, ri) = intervals[i];
                    let (lj, rj) = intervals[j];
                    if li <= rj && lj <= ri {
                        edges.push((i, j, 1));
                    }
                }
            }
            Graph::from_edges(n, false, &edges)
        }
    }
}
