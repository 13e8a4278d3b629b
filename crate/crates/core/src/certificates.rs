//! Eccentricity bound maintenance and independent certificate audits.
//!
//! A lower certificate `L` gives `e_L(v) = max_{x in L} d(v, x) <= e(v)`;
//! an upper certificate `U` of nodes with known eccentricities gives
//! `e^U(v) = min_{x in U} d(v, x) + e(x) >= e(v)`. The verifiers here
//! recompute everything by fresh sweeps so they stay sound against
//! adversarial bundles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};
use crate::traversal::{dist_from, Direction, DistanceRow, QueryCounter};

/// Per-node lower/upper eccentricity bounds plus the certificate node sets
/// they derive from.
#[derive(Debug, Clone)]
pub struct BoundState {
    inf: u64,
    lower: Vec<usize>,
    in_lower: Vec<bool>,
    ecc_lower: Vec<u64>,
    upper: Vec<(usize, u64)>,
    in_upper: Vec<bool>,
    ecc_upper: Vec<u64>,
    zero_depth: Option<Vec<u32>>,
    /// Also fold `e(a) - d(v, a)` into the lower bound. Off by default;
    /// the guarantees in `solvers` are stated for the plain bound.
    pub tighter_lower: bool,
}

impl BoundState {
    pub fn new(g: &Graph) -> BoundState {
        let n = g.n();
        // Strictly above any d(v, x) + e(x) a connected instance can produce.
        let inf = 2 * (n as u64) * g.max_weight() + 1;
        BoundState {
            inf,
            lower: Vec::new(),
            in_lower: vec![false; n],
            ecc_lower: vec![0; n],
            upper: Vec::new(),
            in_upper: vec![false; n],
            ecc_upper: vec![inf; n],
            zero_depth: g.zero_weight_depth(),
            tighter_lower: false,
        }
    }

    pub fn infinity(&self) -> u64 {
        self.inf
    }

    /// Selection tie-break rank: nodes deeper on a zero-weight chain rank
    /// higher, so a minimal tied candidate never has a zero-length path to
    /// another tied candidate.
    #[inline]
    pub(crate) fn zero_rank(&self, v: usize) -> u32 {
        self.zero_depth.as_ref().map_or(0, |d| d[v])
    }

    pub fn lower_members(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper_members(&self) -> &[(usize, u64)] {
        &self.upper
    }

    pub fn ecc_lower(&self) -> &[u64] {
        &self.ecc_lower
    }

    pub fn ecc_upper(&self) -> &[u64] {
        &self.ecc_upper
    }

    pub fn lower_contains(&self, v: usize) -> bool {
        self.in_lower[v]
    }

    pub fn upper_contains(&self, v: usize) -> bool {
        self.in_upper[v]
    }

    /// Folds a new lower-certificate member `a` in. `row` must hold
    /// `d(v, a)` for every `v` (backward sweep from `a` on directed graphs).
    /// Re-adding a member warns and is otherwise a no-op.
    pub fn lower_update(&mut self, a: usize, row: &DistanceRow) {
        if self.in_lower[a] {
            log::warn!("node {a} is already in the lower certificate");
            return;
        }
        self.in_lower[a] = true;
        self.lower.push(a);
        let ecc_a = row.ecc;
        for (v, bound) in self.ecc_lower.iter_mut().enumerate() {
            let d = row.dist[v];
            let mut cand = d;
            if self.tighter_lower {
                cand = cand.max(ecc_a.saturating_sub(d));
            }
            if cand > *bound {
                *bound = cand;
            }
        }
    }

    /// Folds a new upper-certificate member `x` with true eccentricity
    /// `ecc_x` in. `row` must hold `d(v, x)` for every `v`. When the row is
    /// x's own forward sweep its maximum must agree with `ecc_x`.
    pub fn upper_update(&mut self, x: usize, ecc_x: u64, row: &DistanceRow) -> Result<()> {
        if row.source == x && row.direction == Direction::Forward && row.ecc != ecc_x {
            return Err(Error::StaleEcc {
                node: x,
                claimed: ecc_x,
                actual: row.ecc,
            });
        }
        if self.in_upper[x] {
            log::warn!("node {x} is already in the upper certificate");
            return Ok(());
        }
        self.in_upper[x] = true;
        self.upper.push((x, ecc_x));
        for (v, bound) in self.ecc_upper.iter_mut().enumerate() {
            let cand = row.dist[v] + ecc_x;
            if cand < *bound {
                *bound = cand;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertKind {
    #[serde(rename = "radius")]
    Radius,
    #[serde(rename = "diameter")]
    Diameter,
    #[serde(rename = "all-ecc")]
    AllEcc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperEntry {
    pub node: usize,
    pub ecc: u64,
}

/// A self-contained claim (radius, diameter, or all eccentricities) with the
/// node sets needed to audit it against a graph. Field order is fixed so
/// serializations hash reproducibly.
///
/// Conventions: radius bundles carry the center witness in `upper` (one
/// entry, ecc = r); diameter bundles carry the diametral witness in `lower`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub kind: CertKind,
    pub n: usize,
    pub arc_count: usize,
    pub graph_sha256: String,
    pub ranking: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none", default)]
    pub diam: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ecc: Option<Vec<u64>>,
    #[serde(rename = "L")]
    pub lower: Vec<usize>,
    #[serde(rename = "U")]
    pub upper: Vec<UpperEntry>,
}

impl CertificateBundle {
    fn base(g: &Graph, ranking: &Ranking, kind: CertKind) -> CertificateBundle {
        CertificateBundle {
            kind,
            n: g.n(),
            arc_count: g.arc_count(),
            graph_sha256: g.fingerprint(),
            ranking: ranking.descriptor().to_string(),
            r: None,
            diam: None,
            ecc: None,
            lower: Vec::new(),
            upper: Vec::new(),
        }
    }

    pub fn radius(
        g: &Graph,
        ranking: &Ranking,
        r: u64,
        center: usize,
        lower: Vec<usize>,
    ) -> CertificateBundle {
        let mut b = CertificateBundle::base(g, ranking, CertKind::Radius);
        b.r = Some(r);
        b.lower = lower;
        b.upper = vec![UpperEntry {
            node: center,
            ecc: r,
        }];
        b
    }

    pub fn diameter(
        g: &Graph,
        ranking: &Ranking,
        d: u64,
        witness: usize,
        upper: Vec<(usize, u64)>,
    ) -> CertificateBundle {
        let mut b = CertificateBundle::base(g, ranking, CertKind::Diameter);
        b.diam = Some(d);
        b.lower = vec![witness];
        b.upper = upper
            .into_iter()
            .map(|(node, ecc)| UpperEntry { node, ecc })
            .collect();
        b
    }

    pub fn all_ecc(
        g: &Graph,
        ranking: &Ranking,
        ecc: Vec<u64>,
        lower: Vec<usize>,
        upper: Vec<(usize, u64)>,
    ) -> CertificateBundle {
        let mut b = CertificateBundle::base(g, ranking, CertKind::AllEcc);
        b.ecc = Some(ecc);
        b.lower = lower;
        b.upper = upper
            .into_iter()
            .map(|(node, ecc)| UpperEntry { node, ecc })
            .collect();
        b
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<CertificateBundle> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the graph identity fields.
    pub fn fingerprint_matches(&self, g: &Graph) -> Result<()> {
        if self.n != g.n() {
            return Err(Error::FingerprintMismatch(format!(
                "n: bundle {} vs graph {}",
                self.n,
                g.n()
            )));
        }
        if self.arc_count != g.arc_count() {
            return Err(Error::FingerprintMismatch(format!(
                "arc count: bundle {} vs graph {}",
                self.arc_count,
                g.arc_count()
            )));
        }
        let fp = g.fingerprint();
        if self.graph_sha256 != fp {
            return Err(Error::FingerprintMismatch("content hash".to_string()));
        }
        Ok(())
    }
}

/// Outcome of a radius-certificate coverage audit.
#[derive(Debug, Clone)]
pub struct RadiusAudit {
    pub accepted: bool,
    /// Smallest node whose lower bound stayed below `r`.
    pub first_uncovered: Option<usize>,
    /// Per node, a member of `L` witnessing distance >= r.
    pub witness: Vec<Option<usize>>,
    pub sweeps: u64,
}

/// Audits `max_{x in L} d(u, x) >= r` for every node `u`, with exactly
/// `|L|` sweeps.
pub fn verify_radius_certificate(
    g: &Graph,
    ranking: &Ranking,
    lower: &[usize],
    r: u64,
    counter: &mut QueryCounter,
) -> Result<RadiusAudit> {
    let before = counter.sweeps();
    let n = g.n();
    let mut witness: Vec<Option<usize>> = vec![None; n];
    // Lower bounds start at zero, so r = 0 is certified by an empty set.
    let mut bound = vec![0u64; n];
    for &x in lower {
        let row = dist_from(g, ranking, x, Direction::Backward, counter)?;
        for v in 0..n {
            if witness[v].is_none() && row.dist[v] >= r {
                witness[v] = Some(x);
            }
            bound[v] = bound[v].max(row.dist[v]);
        }
    }
    let first_uncovered = bound.iter().position(|&b| b < r);
    Ok(RadiusAudit {
        accepted: first_uncovered.is_none(),
        first_uncovered,
        witness,
        sweeps: counter.sweeps() - before,
    })
}

/// Outcome of a diameter-certificate audit.
#[derive(Debug, Clone)]
pub struct DiameterAudit {
    pub accepted: bool,
    pub first_uncovered: Option<usize>,
    /// A member whose stored eccentricity disagreed with its sweep.
    pub stale: Option<(usize, u64, u64)>,
    pub sweeps: u64,
}

/// Audits that every node lies in some ball `B[x, d - e(x)]` for `x` in the
/// certificate, re-verifying each stored eccentricity by a fresh sweep.
pub fn verify_diameter_certificate(
    g: &Graph,
    ranking: &Ranking,
    upper: &[(usize, u64)],
    d: u64,
    counter: &mut QueryCounter,
) -> Result<DiameterAudit> {
    let before = counter.sweeps();
    let n = g.n();
    let mut covered = vec![false; n];
    for &(x, claimed) in upper {
        let fwd = dist_from(g, ranking, x, Direction::Forward, counter)?;
        if fwd.ecc != claimed {
            return Ok(DiameterAudit {
                accepted: false,
                first_uncovered: None,
                stale: Some((x, claimed, fwd.ecc)),
                sweeps: counter.sweeps() - before,
            });
        }
        let Some(radius) = d.checked_sub(claimed) else {
            // e(x) > d: the ball is empty, and the claimed diameter is
            // already refuted by x itself; report x as stale coverage.
            return Ok(DiameterAudit {
                accepted: false,
                first_uncovered: Some(x),
                stale: None,
                sweeps: counter.sweeps() - before,
            });
        };
        let to_x = if g.directed() {
            dist_from(g, ranking, x, Direction::Backward, counter)?
        } else {
            fwd
        };
        for v in 0..n {
            if to_x.dist[v] <= radius {
                covered[v] = true;
            }
        }
    }
    let first_uncovered = covered.iter().position(|&c| !c);
    Ok(DiameterAudit {
        accepted: first_uncovered.is_none(),
        first_uncovered,
        stale: None,
        sweeps: counter.sweeps() - before,
    })
}

/// Outcome of an all-eccentricities audit.
#[derive(Debug, Clone)]
pub struct AllEccAudit {
    pub accepted: bool,
    /// Nodes where the recomputed bounds fail to pin the claimed value.
    pub mismatches: Vec<usize>,
    pub sweeps: u64,
}

/// Audits a claimed eccentricity vector: the lower certificate must be
/// tight at the claimed values and the upper certificate must pin them from
/// above (member eccentricities re-verified by sweeps).
pub fn verify_all_ecc_certificate(
    g: &Graph,
    ranking: &Ranking,
    bundle: &CertificateBundle,
    counter: &mut QueryCounter,
) -> Result<AllEccAudit> {
    let before = counter.sweeps();
    let n = g.n();
    let claimed = bundle.ecc.as_deref().unwrap_or(&[]);
    if claimed.len() != n {
        return Ok(AllEccAudit {
            accepted: false,
            mismatches: Vec::new(),
            sweeps: 0,
        });
    }
    let mut low = vec![0u64; n];
    for &x in &bundle.lower {
        if x >= n {
            return Ok(AllEccAudit {
                accepted: false,
                mismatches: vec![x],
                sweeps: counter.sweeps() - before,
            });
        }
        let row = dist_from(g, ranking, x, Direction::Backward, counter)?;
        for v in 0..n {
            low[v] = low[v].max(row.dist[v]);
        }
    }
    let inf = 2 * (n as u64) * g.max_weight() + 1;
    let mut up = vec![inf; n];
    for entry in &bundle.upper {
        let (x, ecc_x) = (entry.node, entry.ecc);
        if x >= n {
            return Ok(AllEccAudit {
                accepted: false,
                mismatches: vec![x],
                sweeps: counter.sweeps() - before,
            });
        }
        let fwd = dist_from(g, ranking, x, Direction::Forward, counter)?;
        if fwd.ecc != ecc_x {
            return Ok(AllEccAudit {
                accepted: false,
                mismatches: vec![x],
                sweeps: counter.sweeps() - before,
            });
        }
        let to_x = if g.directed() {
            dist_from(g, ranking, x, Direction::Backward, counter)?
        } else {
            fwd
        };
        for v in 0..n {
            up[v] = up[v].min(to_x.dist[v] + ecc_x);
        }
    }
    let mismatches: Vec<usize> = (0..n)
        .filter(|&v| low[v] != claimed[v] || up[v] != claimed[v])
        .collect();
    Ok(AllEccAudit {
        accepted: mismatches.is_empty(),
        mismatches,
        sweeps: counter.sweeps() - before,
    })
}

/// Combined verdict for a serialized bundle.
#[derive(Debug, Clone)]
pub struct BundleVerdict {
    pub accepted: bool,
    pub reason: Option<String>,
    pub sweeps: u64,
}

/// Full audit of a bundle against a graph: fingerprint, witness
/// eccentricities, and the coverage conditions of its kind. A fingerprint
/// mismatch is an error (distinct from rejection); everything else yields a
/// verdict.
pub fn verify_bundle(
    g: &Graph,
    ranking: &Ranking,
    bundle: &CertificateBundle,
    counter: &mut QueryCounter,
) -> Result<BundleVerdict> {
    bundle.fingerprint_matches(g)?;
    let before = counter.sweeps();
    let reject = |reason: String, sweeps: u64| {
        Ok(BundleVerdict {
            accepted: false,
            reason: Some(reason),
            sweeps,
        })
    };
    match bundle.kind {
        CertKind::Radius => {
            let Some(r) = bundle.r else {
                return reject("radius bundle lacks r".into(), 0);
            };
            let Some(center) = bundle.upper.first() else {
                return reject("radius bundle lacks a center witness".into(), 0);
            };
            if center.node >= g.n() || bundle.lower.iter().any(|&x| x >= g.n()) {
                return reject("node id out of range".into(), 0);
            }
            let row = dist_from(g, ranking, center.node, Direction::Forward, counter)?;
            if row.ecc != r || center.ecc != r {
                return reject(
                    format!(
                        "center {} has eccentricity {}, claim was {r}",
                        center.node, row.ecc
                    ),
                    counter.sweeps() - before,
                );
            }
            let audit = verify_radius_certificate(g, ranking, &bundle.lower, r, counter)?;
            if !audit.accepted {
                return reject(
                    format!(
                        "node {} is closer than {r} to every certificate node",
                        audit.first_uncovered.unwrap()
                    ),
                    counter.sweeps() - before,
                );
            }
            Ok(BundleVerdict {
                accepted: true,
                reason: None,
                sweeps: counter.sweeps() - before,
            })
        }
        CertKind::Diameter => {
            let Some(d) = bundle.diam else {
                return reject("diameter bundle lacks D".into(), 0);
            };
            let Some(&witness) = bundle.lower.first() else {
                return reject("diameter bundle lacks a diametral witness".into(), 0);
            };
            if witness >= g.n() || bundle.upper.iter().any(|e| e.node >= g.n()) {
                return reject("node id out of range".into(), 0);
            }
            let row = dist_from(g, ranking, witness, Direction::Forward, counter)?;
            if row.ecc != d {
                return reject(
                    format!("witness {witness} has eccentricity {}, claim was {d}", row.ecc),
                    counter.sweeps() - before,
                );
            }
            let pairs: Vec<(usize, u64)> =
                bundle.upper.iter().map(|e| (e.node, e.ecc)).collect();
            let audit = verify_diameter_certificate(g, ranking, &pairs, d, counter)?;
            if !audit.accepted {
                let reason = match audit.stale {
                    Some((x, claimed, actual)) => {
                        format!("member {x} claims eccentricity {claimed} but has {actual}")
                    }
                    None => format!(
                        "node {} is not covered by any certificate ball",
                        audit.first_uncovered.unwrap()
                    ),
                };
                return reject(reason, counter.sweeps() - before);
            }
            Ok(BundleVerdict {
                accepted: true,
                reason: None,
                sweeps: counter.sweeps() - before,
            })
        }
        CertKind::AllEcc => {
            let audit = verify_all_ecc_certificate(g, ranking, bundle, counter)?;
            if !audit.accepted {
                return reject(
                    format!(
                        "bounds fail to pin the claimed eccentricities at {} node(s), first {:?}",
                        audit.mismatches.len(),
                        audit.mismatches.first()
                    ),
                    counter.sweeps() - before,
                );
            }
            Ok(BundleVerdict {
                accepted: true,
                reason: None,
                sweeps: counter.sweeps() - before,
            })
        }
    }
}
