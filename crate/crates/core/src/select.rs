//! Minimum eccentricity selection.
//!
//! Returns a node `u` minimizing `f(u, e(u))` without computing all
//! eccentricities, for any objective `f` that is non-decreasing in its
//! second argument. Lower bounds stand in for true eccentricities; whenever
//! the selected node's bound is loose, a sweep from its antipode tightens
//! the shared lower certificate and the selection retries. Across `k`
//! successful calls sharing one [`BoundState`] this costs at most
//! `k + 2 * |added lower members|` sweeps.

use crate::certificates::BoundState;
use crate::error::{Error, Result};
use crate::graph::{Graph, Ranking};
use crate::traversal::{dist_from, Direction, DistanceRow, QueryCounter};

/// Extended-integer objective value. `Finite` orders by value and everything
/// is below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Score {
    Finite(i64),
    Infinite,
}

impl Score {
    pub fn is_finite(self) -> bool {
        matches!(self, Score::Finite(_))
    }
}

/// Objectives see `(node, lower bound, upper bound)`; the upper bound is
/// passed for objectives that consult it and is otherwise ignorable.
pub type Objective<'a> = dyn FnMut(usize, u64, u64) -> Score + 'a;

/// Selects a node `u` with `f(u, e(u))` minimal, enhancing the shared lower
/// certificate as a side effect. On return `e_L(u) = e(u)` and
/// `f(v, e_L(v)) >= f(u, e(u))` for every `v`; the selected node's forward
/// distance row is returned alongside it.
///
/// Returns `None` without any sweep when `f(v, e_L(v))` is infinite for all
/// `v` — monotonicity then forces `f(v, e(v))` to be infinite as well.
pub fn arg_min_ecc(
    g: &Graph,
    ranking: &Ranking,
    bounds: &mut BoundState,
    f: &mut Objective,
    counter: &mut QueryCounter,
) -> Result<Option<(usize, DistanceRow)>> {
    loop {
        // Ties break toward shallow zero-weight depth, then smallest id;
        // the depth keeps distance-zero chains from shadowing their ends.
        let mut best: Option<(Score, u32, usize)> = None;
        {
            let lo = bounds.ecc_lower();
            let up = bounds.ecc_upper();
            for v in 0..g.n() {
                let s = f(v, lo[v], up[v]);
                if s.is_finite() {
                    let key = (s, bounds.zero_rank(v), v);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, u)) = best else {
            return Ok(None);
        };
        let row = dist_from(g, ranking, u, Direction::Forward, counter)?;
        if row.ecc == bounds.ecc_lower()[u] {
            return Ok(Some((u, row)));
        }
        let antipode = row.antipode;
        if bounds.lower_contains(antipode) {
            // A loose bound with the antipode already present means the
            // objective lied about monotonicity.
            return Err(Error::MonotonicityViolation { node: u, antipode });
        }
        let back = dist_from(g, ranking, antipode, Direction::Backward, counter)?;
        bounds.lower_update(antipode, &back);
    }
}

/// Value counterpart of [`arg_min_ecc`]: the minimal `f(u, e(u))`, or
/// `Infinite` when every node scores infinite.
pub fn min_ecc(
    g: &Graph,
    ranking: &Ranking,
    bounds: &mut BoundState,
    f: &mut Objective,
    counter: &mut QueryCounter,
) -> Result<Score> {
    match arg_min_ecc(g, ranking, bounds, f, counter)? {
        None => Ok(Score::Infinite),
        Some((u, _)) => {
            let lo = bounds.ecc_lower()[u];
            let up = bounds.ecc_upper()[u];
            Ok(f(u, lo, up))
        }
    }
}
