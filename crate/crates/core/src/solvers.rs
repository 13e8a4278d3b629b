//! Exact radius, diameter and all-eccentricity solvers, plus the
//! doubling-oriented diameter variant and budgeted approximation modes.
//!
//! All of them follow the same primal-dual scheme: grow a packing `K` of
//! swept nodes and a certificate (`L` below, `U` above) until the bounds
//! close, and return the certificate with the answer. Sweep counts come
//! from a [`QueryCounter`] and are reported per run.

use std::time::{Duration, Instant};

use crate::certificates::{BoundState, CertificateBundle};
use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};
use crate::select::{arg_min_ecc, Score};
use crate::traversal::{dist_from, Direction, QueryCounter};

/// One solver iteration: which node was selected, the bound that drove the
/// selection, its true eccentricity, and what the iteration added.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub selected: usize,
    pub bound: u64,
    pub ecc: u64,
    pub lower_added: Option<usize>,
    pub upper_added: Option<usize>,
}

/// Query accounting for a run; every complexity claim is tested against it.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub sweeps: u64,
    pub lower_size: usize,
    pub upper_size: usize,
    pub packing_size: usize,
    /// Sources of every sweep the run performed, in order (filled by the
    /// radius-style runs; used for the queried-set-plus-antipodes check).
    pub queried: Vec<usize>,
    pub trace: Vec<IterationRecord>,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct RadiusResult {
    pub radius: u64,
    pub center: usize,
    /// The radius certificate L.
    pub lower: Vec<usize>,
    /// Swept candidates with pairwise-distinct antipodes.
    pub packing: Vec<usize>,
    pub bundle: CertificateBundle,
    pub report: RunReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterVariant {
    Basic,
    CenterInit,
    Delegate,
    CenterInitDelegate,
}

impl DiameterVariant {
    fn center_init(self) -> bool {
        matches!(
            self,
            DiameterVariant::CenterInit | DiameterVariant::CenterInitDelegate
        )
    }

    fn delegate(self) -> bool {
        matches!(
            self,
            DiameterVariant::Delegate | DiameterVariant::CenterInitDelegate
        )
    }
}

impl std::str::FromStr for DiameterVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "basic" => Ok(DiameterVariant::Basic),
            "center_init" => Ok(DiameterVariant::CenterInit),
            "delegate" => Ok(DiameterVariant::Delegate),
            "center_init_delegate" => Ok(DiameterVariant::CenterInitDelegate),
            other => Err(format!(
                "unknown variant '{other}' (expected basic | center_init | delegate | center_init_delegate)"
            )),
        }
    }
}

/// Compact record of the radius run a center-initialized diameter run
/// performed.
#[derive(Debug, Clone)]
pub struct RadiusSummary {
    pub radius: u64,
    pub center: usize,
    pub lower_size: usize,
    pub sweeps: u64,
}

#[derive(Debug, Clone)]
pub struct DiameterResult {
    pub diameter: u64,
    pub witness: usize,
    /// The diameter certificate U with member eccentricities.
    pub upper: Vec<(usize, u64)>,
    pub packing: Vec<usize>,
    pub seed_radius: Option<RadiusSummary>,
    pub bundle: CertificateBundle,
    pub report: RunReport,
}

#[derive(Debug, Clone)]
pub struct AllEccResult {
    pub ecc: Vec<u64>,
    /// Tight lower certificate.
    pub lower: Vec<usize>,
    /// Tight upper certificate with member eccentricities.
    pub upper: Vec<(usize, u64)>,
    /// Absent when the computation route cannot claim a verifiable
    /// lower+upper pair (the center-ball route).
    pub bundle: Option<CertificateBundle>,
    pub report: RunReport,
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub node: usize,
    pub ecc: u64,
    /// True when the run terminated exactly within the budget.
    pub exact: bool,
    pub report: RunReport,
}

pub(crate) struct RadiusCore {
    pub radius: u64,
    pub center: usize,
    pub packing: Vec<usize>,
    pub trace: Vec<IterationRecord>,
    pub queried: Vec<usize>,
}

/// The radius loop, shared by `radius`, the center-initialized diameter
/// variants and the budgeted approximation. Iteratively sweeps a node with
/// minimal lower bound; a tight bound proves it is a center, otherwise its
/// antipode joins the lower certificate. Also stops as soon as no lower
/// bound is below the best eccentricity seen.
pub(crate) fn radius_core(
    g: &Graph,
    ranking: &Ranking,
    bounds: &mut BoundState,
    counter: &mut QueryCounter,
    budget: Option<usize>,
) -> Result<(Option<RadiusCore>, Vec<(usize, u64)>)> {
    let n = g.n();
    let mut packing: Vec<usize> = Vec::new();
    let mut known: Vec<(usize, u64)> = Vec::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut queried: Vec<usize> = Vec::new();

    loop {
        if let Some(cap) = budget {
            if trace.len() >= cap {
                return Ok((None, known));
            }
        }
        let lower = bounds.ecc_lower();
        let mut u = 0usize;
        for v in 1..n {
            if lower[v] < lower[u] {
                u = v;
            }
        }
        let bound = lower[u];
        let row = dist_from(g, ranking, u, Direction::Forward, counter)?;
        queried.push(u);
        if row.ecc == bound {
            trace.push(IterationRecord {
                selected: u,
                bound,
                ecc: row.ecc,
                lower_added: None,
                upper_added: None,
            });
            return Ok((
                Some(RadiusCore {
                    radius: row.ecc,
                    center: u,
                    packing,
                    trace,
                    queried,
                }),
                known,
            ));
        }
        let antipode = row.antipode;
        debug_assert!(
            !bounds.lower_contains(antipode),
            "loose bound with antipode already present"
        );
        packing.push(u);
        known.push((u, row.ecc));
        let back = dist_from(g, ranking, antipode, Direction::Backward, counter)?;
        queried.push(antipode);
        bounds.lower_update(antipode, &back);
        trace.push(IterationRecord {
            selected: u,
            bound,
            ecc: row.ecc,
            lower_added: Some(antipode),
            upper_added: None,
        });

        let min_lower = bounds.ecc_lower().iter().copied().min().unwrap();
        let (c, ec) = known
            .iter()
            .copied()
            .min_by_key(|&(v, e)| (e, v))
            .expect("known nonempty after an untight iteration");
        if min_lower >= ec {
            return Ok((
                Some(RadiusCore {
                    radius: ec,
                    center: c,
                    packing,
                    trace,
                    queried,
                }),
                known,
            ));
        }
    }
}

/// Exact radius, a center, and a radius certificate `L` drawn from the
/// antipodes, within `2|L| + 1` sweeps.
pub fn radius(g: &Graph, ranking: &Ranking) -> Result<RadiusResult> {
    let start = Instant::now();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let (core, _) = radius_core(g, ranking, &mut bounds, &mut counter, None)?;
    let core = core.expect("unbudgeted run terminates");
    let lower = bounds.lower_members().to_vec();
    let bundle = CertificateBundle::radius(g, ranking, core.radius, core.center, lower.clone());
    Ok(RadiusResult {
        radius: core.radius,
        center: core.center,
        packing: core.packing.clone(),
        bundle,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: lower.len(),
            upper_size: 0,
            packing_size: core.packing.len(),
            queried: core.queried,
            trace: core.trace,
            wall: start.elapsed(),
        },
        lower,
    })
}

/// Exact diameter, a diametral witness, and a diameter certificate `U`.
///
/// Variants: `Basic` uses each selected node as its own certificate;
/// `Delegate` replaces it by a minimum-eccentricity tight upper certificate
/// found through minimum-eccentricity selection; the `CenterInit` variants
/// first run the radius solver and seed `U` with the center.
pub fn diameter(g: &Graph, ranking: &Ranking, variant: DiameterVariant) -> Result<DiameterResult> {
    let start = Instant::now();
    let n = g.n();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut upper: Vec<(usize, u64)> = Vec::new();
    let mut packing: Vec<usize> = Vec::new();
    let mut known: Vec<(usize, u64)> = Vec::new();

    let seed_radius = if variant.center_init() {
        let before = counter.sweeps();
        let (core, _) = radius_core(g, ranking, &mut bounds, &mut counter, None)?;
        let core = core.expect("unbudgeted run terminates");
        let cov = dist_from(
            g,
            ranking,
            core.center,
            if g.directed() {
                Direction::Backward
            } else {
                Direction::Forward
            },
            &mut counter,
        )?;
        bounds.upper_update(core.center, core.radius, &cov)?;
        upper.push((core.center, core.radius));
        Some(RadiusSummary {
            radius: core.radius,
            center: core.center,
            lower_size: bounds.lower_members().len(),
            sweeps: counter.sweeps() - before,
        })
    } else {
        None
    };

    loop {
        let up = bounds.ecc_upper();
        let mut u = 0usize;
        for v in 1..n {
            if up[v] > up[u] {
                u = v;
            }
        }
        let bound = up[u];
        let row_u = dist_from(g, ranking, u, Direction::Forward, &mut counter)?;
        let ecc_u = row_u.ecc;
        packing.push(u);
        known.push((u, ecc_u));

        // The certificate may already cap every upper bound; then the best
        // eccentricity seen is the diameter and no new member is needed.
        let cap = bounds.ecc_upper().iter().copied().max().unwrap();
        let best = known.iter().map(|&(_, e)| e).max().unwrap();
        if best >= cap {
            trace.push(IterationRecord {
                selected: u,
                bound,
                ecc: ecc_u,
                lower_added: None,
                upper_added: None,
            });
            break;
        }

        let (x, ecc_x, row_x) = if variant.delegate() {
            let du = row_u.dist.clone();
            let sel = arg_min_ecc(
                g,
                ranking,
                &mut bounds,
                &mut |v, l, _| {
                    if du[v] + l <= ecc_u {
                        Score::Finite(l as i64)
                    } else {
                        Score::Infinite
                    }
                },
                &mut counter,
            )?;
            let (x, row_x) = sel.expect("the selected node is always eligible");
            let e = row_x.ecc;
            (x, e, row_x)
        } else {
            (u, ecc_u, row_u)
        };

        let cov;
        let cov_ref = if g.directed() {
            cov = dist_from(g, ranking, x, Direction::Backward, &mut counter)?;
            &cov
        } else {
            &row_x
        };
        bounds.upper_update(x, ecc_x, cov_ref)?;
        upper.push((x, ecc_x));
        trace.push(IterationRecord {
            selected: u,
            bound,
            ecc: ecc_u,
            lower_added: None,
            upper_added: Some(x),
        });

        let cap = bounds.ecc_upper().iter().copied().max().unwrap();
        if best >= cap {
            break;
        }
    }

    let (witness, diam) = known
        .iter()
        .copied()
        .max_by_key(|&(v, e)| (e, std::cmp::Reverse(v)))
        .expect("at least one iteration ran");
    let bundle = CertificateBundle::diameter(g, ranking, diam, witness, upper.clone());
    Ok(DiameterResult {
        diameter: diam,
        witness,
        packing: packing.clone(),
        seed_radius,
        bundle,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: bounds.lower_members().len(),
            upper_size: upper.len(),
            packing_size: packing.len(),
            queried: Vec::new(),
            trace,
            wall: start.elapsed(),
        },
        upper,
    })
}

/// All eccentricities with a tight lower certificate and the minimum tight
/// upper certificate, within `|U| + 2|L|` sweeps (plus one backward sweep
/// per upper member on directed graphs).
pub fn all_eccentricities(g: &Graph, ranking: &Ranking) -> Result<AllEccResult> {
    let start = Instant::now();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut upper: Vec<(usize, u64)> = Vec::new();

    loop {
        let sel = arg_min_ecc(
            g,
            ranking,
            &mut bounds,
            &mut |_, l, up| {
                if l < up {
                    Score::Finite(l as i64)
                } else {
                    Score::Infinite
                }
            },
            &mut counter,
        )?;
        let Some((u, row_u)) = sel else { break };
        let ecc_u = row_u.ecc;
        let cov;
        let cov_ref = if g.directed() {
            cov = dist_from(g, ranking, u, Direction::Backward, &mut counter)?;
            &cov
        } else {
            &row_u
        };
        bounds.upper_update(u, ecc_u, cov_ref)?;
        upper.push((u, ecc_u));
        trace.push(IterationRecord {
            selected: u,
            bound: ecc_u,
            ecc: ecc_u,
            lower_added: None,
            upper_added: Some(u),
        });
    }

    let ecc = bounds.ecc_lower().to_vec();
    debug_assert_eq!(&ecc[..], bounds.ecc_upper());
    let lower = bounds.lower_members().to_vec();
    let bundle = CertificateBundle::all_ecc(g, ranking, ecc.clone(), lower.clone(), upper.clone());
    Ok(AllEccResult {
        ecc,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: lower.len(),
            upper_size: upper.len(),
            packing_size: upper.len(),
            queried: Vec::new(),
            trace,
            wall: start.elapsed(),
        },
        lower,
        bundle: Some(bundle),
        upper,
    })
}

/// A positive rational strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: u64,
    pub den: u64,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Result<Frac> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidAlpha);
        }
        Ok(Frac { num, den })
    }

    /// Accepts `a/b` or a plain decimal such as `0.75`.
    pub fn parse(s: &str) -> Result<Frac> {
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse::<u64>().map_err(|_| Error::InvalidAlpha)?;
            let den = b.trim().parse::<u64>().map_err(|_| Error::InvalidAlpha)?;
            return Frac::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int = if int.is_empty() {
                0
            } else {
                int.parse::<u64>().map_err(|_| Error::InvalidAlpha)?
            };
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::InvalidAlpha);
            }
            let den = 10u64.pow(frac.len() as u32);
            let num = int * den + frac.parse::<u64>().map_err(|_| Error::InvalidAlpha)?;
            return Frac::new(num, den);
        }
        Err(Error::InvalidAlpha)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact diameter through the ball-shrinking scheme: after each maximal
/// upper-bound sweep from `u`, nodes whose upper-bound slack exceeds
/// `(1 - alpha) / (2 alpha)` times their distance from `u` are certified
/// too, furthest first, until none is left. Effective on graphs whose balls
/// have small doubling constants.
pub fn diameter_doubling(g: &Graph, ranking: &Ranking, alpha: Frac) -> Result<DiameterResult> {
    let start = Instant::now();
    let n = g.n();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut upper: Vec<(usize, u64)> = Vec::new();
    let mut packing: Vec<usize> = Vec::new();
    let mut known: Vec<(usize, u64)> = Vec::new();

    loop {
        if !known.is_empty() {
            let cap = bounds.ecc_upper().iter().copied().max().unwrap();
            let best = known.iter().map(|&(_, e)| e).max().unwrap();
            if best >= cap {
                break;
            }
        }
        let up = bounds.ecc_upper();
        let mut u = 0usize;
        for v in 1..n {
            if up[v] > up[u] {
                u = v;
            }
        }
        let bound = up[u];
        let row_u = dist_from(g, ranking, u, Direction::Forward, &mut counter)?;
        let ecc_u = row_u.ecc;
        packing.push(u);
        known.push((u, ecc_u));
        let du = row_u.dist.clone();
        let cov;
        let cov_ref = if g.directed() {
            cov = dist_from(g, ranking, u, Direction::Backward, &mut counter)?;
            &cov
        } else {
            &row_u
        };
        bounds.upper_update(u, ecc_u, cov_ref)?;
        upper.push((u, ecc_u));
        trace.push(IterationRecord {
            selected: u,
            bound,
            ecc: ecc_u,
            lower_added: None,
            upper_added: Some(u),
        });

        let num = alpha.num as u128;
        let den = alpha.den as u128;
        loop {
            let sel = arg_min_ecc(
                g,
                ranking,
                &mut bounds,
                &mut |v, l, up| {
                    let slack = (up - l) as u128;
                    if 2 * num * slack > (den - num) * (du[v] as u128) {
                        Score::Finite(-(du[v] as i64))
                    } else {
                        Score::Infinite
                    }
                },
                &mut counter,
            )?;
            let Some((v, row_v)) = sel else { break };
            let ecc_v = row_v.ecc;
            let cov;
            let cov_ref = if g.directed() {
                cov = dist_from(g, ranking, v, Direction::Backward, &mut counter)?;
                &cov
            } else {
                &row_v
            };
            bounds.upper_update(v, ecc_v, cov_ref)?;
            upper.push((v, ecc_v));
            known.push((v, ecc_v));
            trace.push(IterationRecord {
                selected: v,
                bound: ecc_v,
                ecc: ecc_v,
                lower_added: None,
                upper_added: Some(v),
            });
        }
    }

    let (witness, diam) = known
        .iter()
        .copied()
        .max_by_key(|&(v, e)| (e, std::cmp::Reverse(v)))
        .expect("at least one iteration ran");
    let bundle = CertificateBundle::diameter(g, ranking, diam, witness, upper.clone());
    Ok(DiameterResult {
        diameter: diam,
        witness,
        packing: packing.clone(),
        seed_radius: None,
        bundle,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: bounds.lower_members().len(),
            upper_size: upper.len(),
            packing_size: packing.len(),
            queried: Vec::new(),
            trace,
            wall: start.elapsed(),
        },
        upper,
    })
}

/// Runs the radius loop for at most `budget` iterations and returns the
/// minimum-eccentricity node seen with its true eccentricity. No
/// certificate is claimed unless the run terminated exactly.
pub fn radius_approx(
    g: &Graph,
    ranking: &Ranking,
    epsilon: f64,
    budget: usize,
) -> Result<ApproxResult> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon);
    }
    if budget < 1 {
        return Err(Error::InvalidBudget);
    }
    let start = Instant::now();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let (core, known) = radius_core(g, ranking, &mut bounds, &mut counter, Some(budget))?;
    let (node, ecc, exact, trace, queried, packing) = match core {
        Some(core) => (
            core.center,
            core.radius,
            true,
            core.trace,
            core.queried,
            core.packing,
        ),
        None => {
            let (node, ecc) = known
                .iter()
                .copied()
                .min_by_key(|&(v, e)| (e, v))
                .expect("budget >= 1 sweeps at least one node");
            (node, ecc, false, Vec::new(), Vec::new(), Vec::new())
        }
    };
    Ok(ApproxResult {
        node,
        ecc,
        exact,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: bounds.lower_members().len(),
            upper_size: 0,
            packing_size: packing.len(),
            queried,
            trace,
            wall: start.elapsed(),
        },
    })
}

/// Runs the basic diameter loop for at most `budget` iterations and returns
/// the maximum-eccentricity node seen with its true eccentricity.
pub fn diameter_approx(
    g: &Graph,
    ranking: &Ranking,
    epsilon: f64,
    budget: usize,
) -> Result<ApproxResult> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon);
    }
    if budget < 1 {
        return Err(Error::InvalidBudget);
    }
    let start = Instant::now();
    let n = g.n();
    let mut bounds = BoundState::new(g);
    let mut counter = QueryCounter::new();
    let mut known: Vec<(usize, u64)> = Vec::new();
    let mut exact = false;

    for _ in 0..budget {
        let up = bounds.ecc_upper();
        let mut u = 0usize;
        for v in 1..n {
            if up[v] > up[u] {
                u = v;
            }
        }
        let row_u = dist_from(g, ranking, u, Direction::Forward, &mut counter)?;
        let ecc_u = row_u.ecc;
        known.push((u, ecc_u));
        let cap = bounds.ecc_upper().iter().copied().max().unwrap();
        let best = known.iter().map(|&(_, e)| e).max().unwrap();
        if best >= cap {
            exact = true;
            break;
        }
        let cov;
        let cov_ref = if g.directed() {
            cov = dist_from(g, ranking, u, Direction::Backward, &mut counter)?;
            &cov
        } else {
            &row_u
        };
        bounds.upper_update(u, ecc_u, cov_ref)?;
        let cap = bounds.ecc_upper().iter().copied().max().unwrap();
        if best >= cap {
            exact = true;
            break;
        }
    }

    let (node, ecc) = known
        .iter()
        .copied()
        .max_by_key(|&(v, e)| (e, std::cmp::Reverse(v)))
        .expect("budget >= 1 sweeps at least one node");
    Ok(ApproxResult {
        node,
        ecc,
        exact,
        report: RunReport {
            sweeps: counter.sweeps(),
            lower_size: bounds.lower_members().len(),
            upper_size: bounds.upper_members().len(),
            packing_size: known.len(),
            queried: Vec::new(),
            trace: Vec::new(),
            wall: start.elapsed(),
        },
    })
}
