//! Shared instance corpus and oracles for the integration suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ecc_core::generators::{self, ChordalKind};
use ecc_core::graph::Graph;

/// One test instance: a label, the core-restricted graph, and whether the
/// chordal procedures apply.
pub struct Instance {
    pub label: String,
    pub graph: Graph,
    /// Read by the acceptance suite; other suites share this module.
    #[allow(dead_code)]
    pub chordal: bool,
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, 1));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1.min(n - 1), 1));
    }
    Graph::from_edges(n, false, &edges).unwrap()
}

pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v, 1));
    }
    Graph::from_edges(n, false, &edges).unwrap()
}

fn core(g: Graph) -> Graph {
    g.restrict_to_core().unwrap().graph
}

/// The deterministic instance corpus: Erdos-Renyi graphs, grids with and
/// without deletions, random trees, weighted directed grids (restricted to
/// their largest strongly connected component) and chordal instances.
pub fn corpus() -> Vec<Instance> {
    let mut out: Vec<Instance> = Vec::new();
    let mut push = |label: String, g: Graph, chordal: bool| {
        if g.n() >= 3 {
            out.push(Instance {
                label,
                graph: g,
                chordal,
            });
        }
    };

    for &p in &[0.05f64, 0.1, 0.3] {
        for &n in &[12usize, 20, 30, 40, 50, 60] {
            for seed in 0..6u64 {
                let g = core(erdos_renyi(n, p, 1000 + seed + n as u64 * 17));
                push(format!("er n={n} p={p} seed={seed}"), g, false);
            }
        }
    }
    for k in 2..=8usize {
        let g = core(generators::gen_grid(k, 0.0, 0).unwrap());
        push(format!("grid {k}x{k}"), g, false);
        for seed in 0..3u64 {
            let g = core(generators::gen_grid(k, 0.1, seed).unwrap());
            push(format!("grid {k}x{k} del=0.1 seed={seed}"), g, false);
        }
    }
    for &n in &[10usize, 40, 90, 140, 200] {
        for seed in 0..6u64 {
            let g = random_tree(n, 300 + seed);
            push(format!("tree n={n} seed={seed}"), g, true);
        }
    }
    for &k in &[3usize, 5, 8, 12, 16, 20] {
        for seed in 0..4u64 {
            let g = core(generators::gen_weighted_directed_grid(k, seed).unwrap());
            push(format!("wgrid k={k} seed={seed}"), g, false);
        }
    }
    for seed in 0..10u64 {
        let n = 20 + (seed as usize) * 3;
        let g = generators::gen_chordal(ChordalKind::KTree, n, 1 + (seed as usize % 3), seed).unwrap();
        push(format!("ktree n={n} seed={seed}"), g, true);
        let g = core(generators::gen_chordal(ChordalKind::Interval, n.min(50), 0, seed).unwrap());
        push(format!("interval seed={seed}"), g, true);
    }
    out
}
