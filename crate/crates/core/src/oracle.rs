//! Brute-force references for property testing: all-pairs distances, exact
//! minimum certificates on tiny graphs, the tight-upper-certificate order,
//! and exact packings.
//!
//! Everything here is guarded to small instances and optimized for
//! obviousness, not speed.

use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};
use crate::traversal::{dist_from, Direction, QueryCounter};

const APSP_CAP: usize = 5000;
const EXACT_CAP: usize = 24;

/// Dense all-pairs distance matrix, row-major: `dist(u, v) = d(u -> v)`.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u64>,
}

impl DistanceMatrix {
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u64 {
        self.d[u * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// All-pairs distances plus all eccentricities, by one sweep per node.
pub fn apsp(g: &Graph) -> Result<(DistanceMatrix, Vec<u64>)> {
    let n = g.n();
    if n > APSP_CAP {
        return Err(Error::GuardExceeded { n, cap: APSP_CAP });
    }
    let ranking = Ranking::id(n);
    let mut counter = QueryCounter::new();
    let mut d = vec![0u64; n * n];
    let mut ecc = vec![0u64; n];
    for u in 0..n {
        let row = dist_from(g, &ranking, u, Direction::Forward, &mut counter)?;
        d[u * n..(u + 1) * n].copy_from_slice(&row.dist);
        ecc[u] = row.ecc;
    }
    Ok((DistanceMatrix { n, d }, ecc))
}

pub fn radius_of(ecc: &[u64]) -> u64 {
    *ecc.iter().min().expect("nonempty")
}

pub fn diameter_of(ecc: &[u64]) -> u64 {
    *ecc.iter().max().expect("nonempty")
}

pub fn centers(ecc: &[u64]) -> Vec<usize> {
    let r = radius_of(ecc);
    (0..ecc.len()).filter(|&v| ecc[v] == r).collect()
}

pub fn diametral_nodes(ecc: &[u64]) -> Vec<usize> {
    let d = diameter_of(ecc);
    (0..ecc.len()).filter(|&v| ecc[v] == d).collect()
}

/// Furthest nodes of `u`: every `v` with `d(u, v) = e(u)`.
pub fn furthest_of(m: &DistanceMatrix, ecc: &[u64], u: usize) -> Vec<usize> {
    (0..m.n()).filter(|&v| m.dist(u, v) == ecc[u]).collect()
}

/// The furthest node of `u` with highest rank.
pub fn antipode_of(m: &DistanceMatrix, ecc: &[u64], ranking: &Ranking, u: usize) -> usize {
    furthest_of(m, ecc, u)
        .into_iter()
        .max_by_key(|&v| ranking.rank_of(v))
        .expect("nonempty")
}

/// Maximal elements of the tight-upper-certificate relation
/// (`u <= x` iff `e(u) = d(u, x) + e(x)`), after checking that the relation
/// really is a partial order on this instance.
pub fn preceq_maximals(m: &DistanceMatrix, ecc: &[u64]) -> Result<Vec<usize>> {
    let n = m.n();
    let leq = |u: usize, x: usize| ecc[u] == m.dist(u, x) + ecc[x];
    for u in 0..n {
        if !leq(u, u) {
            return Err(Error::PartialOrderViolation(format!("not reflexive at {u}")));
        }
        for x in 0..n {
            if u != x && leq(u, x) && leq(x, u) {
                return Err(Error::PartialOrderViolation(format!(
                    "antisymmetry fails for {u}, {x}"
                )));
            }
        }
    }
    for u in 0..n {
        for x in 0..n {
            if !leq(u, x) {
                continue;
            }
            for z in 0..n {
                if leq(x, z) && !leq(u, z) {
                    return Err(Error::PartialOrderViolation(format!(
                        "transitivity fails for {u} <= {x} <= {z}"
                    )));
                }
            }
        }
    }
    Ok((0..n)
        .filter(|&u| (0..n).all(|x| x == u || !leq(u, x)))
        .collect())
}

/// Minimum set cover by branch and bound. `sets[i]` lists the elements the
/// i-th candidate covers; elements are `0..n_elements`. Returns candidate
/// indices, or `None` when the candidates cannot cover everything.
/// Deterministic: candidates are explored in index order.
fn min_cover(sets: &[Vec<usize>], n_elements: usize) -> Option<Vec<usize>> {
    assert!(n_elements <= EXACT_CAP);
    let full: u32 = if n_elements == 32 {
        u32::MAX
    } else {
        (1u32 << n_elements) - 1
    };
    let masks: Vec<u32> = sets
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &e| m | (1 << e)))
        .collect();
    let union = masks.iter().fold(0u32, |a, &b| a | b);
    if union & full != full {
        return None;
    }
    // Greedy first solution as the initial bound.
    let mut best: Vec<usize> = {
        let mut covered = 0u32;
        let mut chosen = Vec::new();
        while covered != full {
            let (i, _) = masks
                .iter()
                .enumerate()
                .max_by_key(|(i, &m)| ((m & !covered).count_ones(), usize::MAX - i))
                .unwrap();
            if masks[i] & !covered == 0 {
                break;
            }
            covered |= masks[i];
            chosen.push(i);
        }
        chosen
    };

    fn search(
        masks: &[u32],
        full: u32,
        covered: u32,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if covered == full {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= best.len() {
            // Even one more set cannot beat the incumbent unless it finishes
            // the cover; handle that single case below.
            let missing = full & !covered;
            if chosen.len() + 1 == best.len() {
                return;
            }
            for (i, &m) in masks.iter().enumerate() {
                if missing & !m == 0 {
                    chosen.push(i);
                    if chosen.len() < best.len() {
                        *best = chosen.clone();
                    }
                    chosen.pop();
                    break;
                }
            }
            return;
        }
        // Branch on the uncovered element with the fewest covering sets.
        let mut pick = None;
        let mut pick_count = usize::MAX;
        for e in 0..32 {
            let bit = 1u32 << e;
            if full & bit == 0 || covered & bit != 0 {
                continue;
            }
            let cnt = masks.iter().filter(|&&m| m & bit != 0).count();
            if cnt < pick_count {
                pick_count = cnt;
                pick = Some(bit);
            }
        }
        let Some(bit) = pick else { return };
        if pick_count == 0 {
            return;
        }
        for (i, &m) in masks.iter().enumerate() {
            if m & bit != 0 {
                chosen.push(i);
                search(masks, full, covered | m, chosen, best);
                chosen.pop();
            }
        }
    }

    let mut chosen = Vec::new();
    search(&masks, full, 0, &mut chosen, &mut best);
    Some(best)
}

/// Exact minimum radius certificate: a smallest hitting set of the coballs
/// of radius `rad(G)`.
pub fn min_radius_certificate_exact(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > EXACT_CAP {
        return Err(Error::GuardExceeded { n, cap: EXACT_CAP });
    }
    let (m, ecc) = apsp(g)?;
    let rad = radius_of(&ecc);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&u| m.dist(u, x) >= rad).collect())
        .collect();
    min_cover(&sets, n).ok_or_else(|| Error::PartialOrderViolation("coballs cannot cover".into()))
}

/// Exact minimum diameter certificate: a smallest covering with the balls
/// `B[x, diam(G) - e(x)]`.
pub fn min_diameter_certificate_exact(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > EXACT_CAP {
        return Err(Error::GuardExceeded { n, cap: EXACT_CAP });
    }
    let (m, ecc) = apsp(g)?;
    let diam = diameter_of(&ecc);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let radius = diam - ecc[x];
            (0..n).filter(|&u| m.dist(u, x) <= radius).collect()
        })
        .collect();
    min_cover(&sets, n).ok_or_else(|| Error::PartialOrderViolation("balls cannot cover".into()))
}

/// Ball families used by packings and coverings. Radii scale the slack
/// `diam - e(u)`; scaled families use open balls.
#[derive(Debug, Clone, Copy)]
pub enum BallFamily {
    /// Open balls `B(u, alpha * (diam - e(u)))`.
    OpenScaled { num: u64, den: u64 },
    /// Closed balls `B[u, diam - e(u)]`.
    ClosedFull,
    /// Open scaled balls, except the designated center keeps factor 1.
    CenterSpecial { num: u64, den: u64, center: usize },
}

fn family_member(
    fam: BallFamily,
    m: &DistanceMatrix,
    ecc: &[u64],
    diam: u64,
    u: usize,
    v: usize,
) -> bool {
    let slack = diam - ecc[u];
    let d = m.dist(v, u);
    match fam {
        BallFamily::OpenScaled { num, den } => (d as u128) * (den as u128) < (num as u128) * (slack as u128),
        BallFamily::ClosedFull => d <= slack,
        BallFamily::CenterSpecial { num, den, center } => {
            if u == center {
                d < slack
            } else {
                (d as u128) * (den as u128) < (num as u128) * (slack as u128)
            }
        }
    }
}

/// Exact maximum packing for a ball family: a largest node set such that no
/// family ball contains two of its members. Also checks weak duality
/// against the exact minimum covering with the same family when a covering
/// exists.
pub fn max_packing_exact(g: &Graph, fam: BallFamily) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > EXACT_CAP {
        return Err(Error::GuardExceeded { n, cap: EXACT_CAP });
    }
    let (m, ecc) = apsp(g)?;
    let diam = diameter_of(&ecc);

    // conflict(u, v): some ball contains both.
    let mut conflict = vec![false; n * n];
    for w in 0..n {
        let members: Vec<usize> = (0..n)
            .filter(|&v| family_member(fam, &m, &ecc, diam, w, v))
            .collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                conflict[a * n + b] = true;
                conflict[b * n + a] = true;
            }
        }
    }

    // Max independent set, branch and bound over node inclusion.
    fn search(
        n: usize,
        conflict: &[bool],
        v: usize,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + (n - v) <= best.len() {
            return;
        }
        if v == n {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.iter().all(|&u| !conflict[u * n + v]) {
            current.push(v);
            search(n, conflict, v + 1, current, best);
            current.pop();
        }
        search(n, conflict, v + 1, current, best);
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    search(n, &conflict, 0, &mut current, &mut best);

    // Weak duality against the exact cover with the same family.
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|w| {
            (0..n)
                .filter(|&v| family_member(fam, &m, &ecc, diam, w, v))
                .collect()
        })
        .collect();
    if let Some(cover) = min_cover(&sets, n) {
        assert!(
            best.len() <= cover.len(),
            "packing {} exceeds covering {}",
            best.len(),
            cover.len()
        );
    }
    Ok((best.len(), best))
}

/// Exact minimum covering size with a ball family, if the family covers V.
pub fn min_cover_exact(g: &Graph, fam: BallFamily) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > EXACT_CAP {
        return Err(Error::GuardExceeded { n, cap: EXACT_CAP });
    }
    let (m, ecc) = apsp(g)?;
    let diam = diameter_of(&ecc);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|w| {
            (0..n)
                .filter(|&v| family_member(fam, &m, &ecc, diam, w, v))
                .collect()
        })
        .collect();
    Ok(min_cover(&sets, n))
}
