//! Structural measurements: antipode and furthest-node counts, greedy ball
//! coverings with reduced radii, center concentration, and the one-row
//! profile that assembles them.

use crate::certificates::{verify_radius_certificate, RadiusAudit};
use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};
use crate::solvers::{self, DiameterVariant};
use crate::traversal::{dist_from, multi_source_dist, Direction, QueryCounter};

/// Streams one forward sweep per source over `threads` workers and merges
/// the per-row marks each worker produced. Memory stays at one row per
/// worker; the union is schedule-independent.
fn marked_by_sweeps<M>(g: &Graph, ranking: &Ranking, threads: usize, mark: M) -> Result<Vec<usize>>
where
    M: Fn(&crate::traversal::DistanceRow, &mut [bool]) + Sync,
{
    let n = g.n();
    let threads = threads.clamp(1, n.max(1));
    let chunk = n.div_ceil(threads);
    let mut marks = vec![false; n];
    let results: Vec<Result<Vec<bool>>> = std::thread::scope(|scope| {
        let mark = &mark;
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(n);
            handles.push(scope.spawn(move || {
                let mut local = vec![false; n];
                let mut counter = QueryCounter::new();
                for s in lo..hi {
                    let row = dist_from(g, ranking, s, Direction::Forward, &mut counter)?;
                    mark(&row, &mut local);
                }
                Ok(local)
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for local in results {
        let local = local?;
        for v in 0..n {
            if local[v] {
                marks[v] = true;
            }
        }
    }
    Ok((0..n).filter(|&v| marks[v]).collect())
}

/// Nodes that are the antipode of at least one node, by one sweep per node.
pub fn count_antipodes(g: &Graph, ranking: &Ranking, threads: usize) -> Result<Vec<usize>> {
    marked_by_sweeps(g, ranking, threads, |row, marks| {
        marks[row.antipode] = true;
    })
}

/// Nodes that are a furthest node of at least one node.
pub fn count_furthest(g: &Graph, threads: usize) -> Result<Vec<usize>> {
    let ranking = Ranking::id(g.n());
    marked_by_sweeps(g, &ranking, threads, |row, marks| {
        for (v, &d) in row.dist.iter().enumerate() {
            if d == row.ecc {
                marks[v] = true;
            }
        }
    })
}

/// Radius-bounded backward traversal used by the covering heuristic: visits
/// exactly the nodes within `radius` of the center and resets only what it
/// touched, so repeated calls cost the region size, not `n`.
struct BallScanner {
    dist: Vec<u64>,
    touched: Vec<usize>,
}

impl BallScanner {
    fn new(n: usize) -> BallScanner {
        BallScanner {
            dist: vec![UNREACHED_LOCAL; n],
            touched: Vec::new(),
        }
    }

    /// Returns the nodes with `d(v, center) <= radius`.
    fn ball(&mut self, g: &Graph, center: usize, radius: u64, counter: &mut QueryCounter) -> &[usize] {
        counter.charge();
        for &v in &self.touched {
            self.dist[v] = UNREACHED_LOCAL;
        }
        self.touched.clear();
        self.dist[center] = 0;
        self.touched.push(center);
        if g.unit_weights() {
            let mut head = 0;
            while head < self.touched.len() {
                let u = self.touched[head];
                head += 1;
                let du = self.dist[u];
                if du == radius {
                    continue;
                }
                for &(v, _) in g.arc_slice(u, g.directed()) {
                    let v = v as usize;
                    if self.dist[v] == UNREACHED_LOCAL {
                        self.dist[v] = du + 1;
                        self.touched.push(v);
                    }
                }
            }
        } else {
            let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, usize)>> =
                std::collections::BinaryHeap::new();
            heap.push(std::cmp::Reverse((0, center)));
            while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
                if d > self.dist[u] {
                    continue;
                }
                for &(v, w) in g.arc_slice(u, g.directed()) {
                    let v = v as usize;
                    let nd = d + w as u64;
                    if nd <= radius && (self.dist[v] == UNREACHED_LOCAL || nd < self.dist[v]) {
                        if self.dist[v] == UNREACHED_LOCAL {
                            self.touched.push(v);
                        }
                        self.dist[v] = nd;
                        heap.push(std::cmp::Reverse((nd, v)));
                    }
                }
            }
        }
        &self.touched
    }
}

const UNREACHED_LOCAL: u64 = u64::MAX;

/// Greedy covering of the node set with closed balls
/// `B[u, floor(beta * (diam - e(u)))]`; the optional special center keeps
/// its full radius `diam - e(c)`. Repeatedly takes the ball covering the
/// most uncovered nodes (ties to the smallest center id). The result's size
/// upper-bounds the minimum covering size for that family.
pub fn greedy_ball_cover(
    g: &Graph,
    ranking: &Ranking,
    ecc: &[u64],
    beta_num: u64,
    beta_den: u64,
    special_center: Option<usize>,
    counter: &mut QueryCounter,
) -> Result<Vec<usize>> {
    let _ = ranking;
    if beta_num == 0 || beta_den == 0 || beta_num > beta_den {
        return Err(Error::InvalidAlpha);
    }
    let n = g.n();
    assert_eq!(ecc.len(), n);
    let diam = *ecc.iter().max().expect("nonempty");
    let ball_radius = |u: usize| -> u64 {
        let slack = diam - ecc[u];
        if special_center == Some(u) {
            slack
        } else {
            beta_num * slack / beta_den
        }
    };

    let mut uncovered = vec![true; n];
    let mut left = n;
    let mut chosen = Vec::new();
    let mut scanner = BallScanner::new(n);
    let mut best_region: Vec<usize> = Vec::new();
    while left > 0 {
        let sources: Vec<usize> = (0..n).filter(|&v| uncovered[v]).collect();
        // A ball can help only if its center is within its radius of some
        // uncovered node; one multi-source sweep prunes the rest.
        let reach = multi_source_dist(g, &sources, Direction::Forward, counter);
        let mut best: Option<(usize, usize)> = None; // (covered count, center)
        best_region.clear();
        for u in 0..n {
            let r = ball_radius(u);
            if reach[u] > r {
                continue;
            }
            if r == 0 {
                if uncovered[u] && best.is_none() {
                    best = Some((1, u));
                    best_region.clear();
                    best_region.push(u);
                }
                continue;
            }
            let region = scanner.ball(g, u, r, counter);
            let covered = region.iter().filter(|&&v| uncovered[v]).count();
            if covered > 0 && best.map_or(true, |(c, _)| covered > c) {
                best = Some((covered, u));
                best_region.clear();
                best_region.extend_from_slice(region);
            }
            if let Some((c, _)) = best {
                if c == left {
                    break;
                }
            }
        }
        let (_, u) = best.expect("every uncovered node covers itself");
        for &v in &best_region {
            if uncovered[v] {
                uncovered[v] = false;
                left -= 1;
            }
        }
        chosen.push(u);
    }
    Ok(chosen)
}

/// Fraction of nodes within `diam - rad` of the center (distance toward the
/// center on directed graphs). Verifies `e(c) = rad` first.
pub fn center_concentration(
    g: &Graph,
    ranking: &Ranking,
    center: usize,
    diam: u64,
    rad: u64,
    counter: &mut QueryCounter,
) -> Result<(usize, usize)> {
    let fwd = dist_from(g, ranking, center, Direction::Forward, counter)?;
    if fwd.ecc != rad {
        return Err(Error::StaleEcc {
            node: center,
            claimed: rad,
            actual: fwd.ecc,
        });
    }
    let row = if g.directed() {
        dist_from(g, ranking, center, Direction::Backward, counter)?
    } else {
        fwd
    };
    let slack = diam - rad;
    let count = row.dist.iter().filter(|&&d| d <= slack).count();
    Ok((count, g.n()))
}

/// Checks that a queried node set, closed under antipodes, certifies the
/// radius. Costs one forward sweep per queried node plus the audit sweeps.
pub fn antipode_closure_check(
    g: &Graph,
    ranking: &Ranking,
    queried: &[usize],
    rad: u64,
    counter: &mut QueryCounter,
) -> Result<RadiusAudit> {
    let mut set: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.n()];
    for &s in queried {
        if !seen[s] {
            seen[s] = true;
            set.push(s);
        }
        let row = dist_from(g, ranking, s, Direction::Forward, counter)?;
        if !seen[row.antipode] {
            seen[row.antipode] = true;
            set.push(row.antipode);
        }
    }
    verify_radius_certificate(g, ranking, &set, rad, counter)
}

/// One profile row: solver outputs, certificate sizes, covering bounds and
/// concentration, plus the quadratic antipode/furthest counts when `full`.
#[derive(Debug, Clone)]
pub struct GraphProfile {
    pub n: usize,
    pub arc_count: usize,
    pub directed: bool,
    pub weighted: bool,
    pub rad: u64,
    pub diam: u64,
    pub center: usize,
    pub diameter_cert_size: usize,
    pub cover_08: usize,
    pub cover_13: usize,
    pub concentrated: usize,
    pub radius_cert_size: usize,
    pub antipodes: Option<usize>,
    pub furthest: Option<usize>,
    pub sweeps: u64,
}

impl GraphProfile {
    pub fn ratio(&self) -> f64 {
        self.diam as f64 / self.rad as f64
    }

    pub fn csv_header() -> &'static str {
        "type,name,n,m/n,d,w,diam/rad,D,pi_c_0.8,pi_c_1/3,nc/n,R,A_ID,F"
    }

    pub fn csv_row(&self, kind: &str, name: &str) -> String {
        let opt = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
        format!(
            "{},{},{},{:.2},{},{},{:.2},{},{},{},{:.4},{},{},{}",
            kind,
            name,
            self.n,
            self.arc_count as f64 / self.n as f64,
            self.directed as u8,
            self.weighted as u8,
            self.ratio(),
            self.diameter_cert_size,
            self.cover_08,
            self.cover_13,
            self.concentrated as f64 / self.n as f64,
            self.radius_cert_size,
            opt(self.antipodes),
            opt(self.furthest),
        )
    }
}

/// Assembles the profile: a center-initialized delegate diameter run (which
/// embeds the radius run), an all-eccentricities run for the covering
/// bounds, the concentration sweep, and optionally the quadratic counters.
pub fn profile(g: &Graph, ranking: &Ranking, full: bool, threads: usize) -> Result<GraphProfile> {
    let d = solvers::diameter(g, ranking, DiameterVariant::CenterInitDelegate)?;
    let seed = d.seed_radius.as_ref().expect("center-initialized run");
    let all = solvers::all_eccentricities(g, ranking)?;
    let mut counter = QueryCounter::new();
    let (concentrated, _) =
        center_concentration(g, ranking, seed.center, d.diameter, seed.radius, &mut counter)?;
    let cover_08 = greedy_ball_cover(g, ranking, &all.ecc, 8, 10, Some(seed.center), &mut counter)?;
    let cover_13 = greedy_ball_cover(g, ranking, &all.ecc, 1, 3, Some(seed.center), &mut counter)?;
    let mut extra_sweeps = 0u64;
    let (antipodes, furthest) = if full {
        let a = count_antipodes(g, ranking, threads)?;
        let f = count_furthest(g, threads)?;
        extra_sweeps = 2 * g.n() as u64;
        (Some(a.len()), Some(f.len()))
    } else {
        (None, None)
    };
    Ok(GraphProfile {
        n: g.n(),
        arc_count: g.arc_count(),
        directed: g.directed(),
        weighted: g.weighted(),
        rad: seed.radius,
        diam: d.diameter,
        center: seed.center,
        diameter_cert_size: d.upper.len(),
        cover_08: cover_08.len(),
        cover_13: cover_13.len(),
        concentrated,
        radius_cert_size: seed.lower_size,
        antipodes,
        furthest,
        sweeps: d.report.sweeps + all.report.sweeps + counter.sweeps() + extra_sweeps,
    })
}
