use serde::Serialize;
use thiserror::Error;

use crate::flagged::{FlaggedTableau, Orientation};
use crate::tableau::{Coord, HookValuedTableau};
use crate::uncrowding::InsertionPath;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum CrowdError {
    #[error("crowding bump precondition fails at ({row},{col}): {reason}")]
    PreconditionViolated { row: usize, col: usize, reason: String },
    #[error("not in the crowding domain: weight drops at step j={j}, s={s}")]
    NotInKLambda { j: usize, s: usize, expected: Vec<usize>, found: Vec<usize> },
    #[error("intermediate tableau at j={j}, s={s} is not semistandard: {detail}")]
    NotSemistandard { j: usize, s: usize, detail: String },
    #[error("input mismatch: {detail}")]
    InputMismatch { detail: String },
}

/// Filled cells of a column-flagged tableau in crowding order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrowdingPlan {
    pub order: Vec<Coord>,
    pub alphas: Vec<u32>,
    pub destinations: Vec<usize>,
}

/// Destination column ascending, then column descending.
pub fn crowding_plan(f: &FlaggedTableau) -> CrowdingPlan {
    let mut cells: Vec<(usize, Coord, u32)> =
        f.entries().iter().map(|(&(r, c), &v)| (c - v as usize, (r, c), v)).collect();
    cells.sort_by_key(|&(d, (r, c), _)| (d, std::cmp::Reverse(c), r));
    CrowdingPlan {
        order: cells.iter().map(|x| x.1).collect(),
        alphas: cells.iter().map(|x| x.2).collect(),
        destinations: cells.iter().map(|x| x.0).collect(),
    }
}

fn violated(r: usize, c: usize, reason: impl Into<String>) -> CrowdError {
    CrowdError::PreconditionViolated { row: r, col: c, reason: reason.into() }
}

/// One crowding bump at `cell`: moves one letter into column `c - 1` and returns the new target cell.
/// The result is not validated; it may lose a letter.
pub fn crowd_bump(h: &HookValuedTableau, cell: Coord) -> Result<(HookValuedTableau, Coord), CrowdError> {
    let (r, c) = cell;
    let e = h.get(r, c).ok_or_else(|| violated(r, c, "no such cell"))?;
    if c <= 1 {
        return Err(violated(r, c, "cell is in the first column"));
    }
    if e.arm.len() > 1 {
        return Err(violated(r, c, "arm has more than one letter"));
    }
    if e.arm.is_empty() && !h.shape().is_corner(r, c) {
        return Err(violated(r, c, "empty arm at a cell that is not a corner"));
    }
    let lplus = e.extended_leg();
    let (m, b) = match e.arm.first() {
        Some(&m) => (m, *lplus.iter().filter(|&&x| x <= m).max().unwrap()),
        None => (e.hook, *lplus.last().unwrap()),
    };
    let rp = (1..=h.col_len(c - 1))
        .filter(|&rr| h.get(rr, c - 1).unwrap().hook <= b)
        .max()
        .ok_or_else(|| violated(r, c, "no landing row in the previous column"))?;
    let q = if rp == r { e.hook } else { b };
    let arm_nonempty = !e.arm.is_empty();
    let mut out = h.clone();
    out.get_mut(rp, c - 1).unwrap().arm.push(q);
    if rp == r {
        if arm_nonempty {
            let src = out.get_mut(r, c).unwrap();
            let moved: Vec<_> = src.leg.iter().copied().filter(|&x| q < x && x <= m).collect();
            src.leg.retain(|&x| !(q < x && x <= m));
            src.arm.clear();
            src.hook = m;
            let dst = out.get_mut(rp, c - 1).unwrap();
            for x in moved {
                dst.insert_leg(x);
            }
        } else {
            let moved = std::mem::take(&mut out.get_mut(r, c).unwrap().leg);
            let dst = out.get_mut(rp, c - 1).unwrap();
            for x in moved {
                dst.insert_leg(x);
            }
            remove_corner(&mut out, r);
        }
    } else if arm_nonempty {
        let src = out.get_mut(r, c).unwrap();
        if src.hook == q {
            src.hook = m;
        } else {
            let pos = src.leg.iter().position(|&x| x == q).unwrap();
            src.leg[pos] = m;
        }
        src.arm.clear();
    } else {
        remove_corner(&mut out, r);
    }
    Ok((out, (rp, c - 1)))
}

fn remove_corner(t: &mut HookValuedTableau, r: usize) {
    let rows = t.rows_mut();
    rows[r - 1].pop();
    if rows[r - 1].is_empty() {
        rows.remove(r - 1);
    }
}

/// Snapshots and insertion paths of a crowding run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrowdingTrace {
    pub plan: CrowdingPlan,
    /// `snapshots[j][s]` is the tableau after `s` bumps of step `j` (0-based).
    pub snapshots: Vec<Vec<HookValuedTableau>>,
    pub paths: Vec<InsertionPath>,
}

fn run(
    s: &HookValuedTableau,
    f: &FlaggedTableau,
    validate_each: bool,
) -> Result<(HookValuedTableau, CrowdingTrace), CrowdError> {
    if !s.is_set_valued() {
        return Err(CrowdError::InputMismatch { detail: "S has nonzero arm excess".into() });
    }
    if f.orientation() != Orientation::ColumnFlagged {
        return Err(CrowdError::InputMismatch { detail: "F must be column-flagged".into() });
    }
    if *f.outer() != s.shape() {
        return Err(CrowdError::InputMismatch { detail: format!("outer shape {} differs from shape {}", f.outer(), s.shape()) });
    }
    let plan = crowding_plan(f);
    let target = s.weight();
    let mut cur = s.clone();
    let mut snapshots = Vec::with_capacity(plan.order.len());
    let mut paths = Vec::with_capacity(plan.order.len());
    for (j, (&start, &alpha)) in plan.order.iter().zip(&plan.alphas).enumerate() {
        let mut cell = start;
        let mut snaps = vec![cur.clone()];
        let mut path = vec![cell];
        for step in 1..=alpha as usize {
            let (next, to) = crowd_bump(&cur, cell)?;
            let w = next.weight();
            if w != target {
                return Err(CrowdError::NotInKLambda { j, s: step, expected: target, found: w });
            }
            if validate_each {
                next.validate().map_err(|e| CrowdError::NotSemistandard { j, s: step, detail: e.to_string() })?;
            }
            cur = next;
            cell = to;
            snaps.push(cur.clone());
            path.push(cell);
        }
        snapshots.push(snaps);
        paths.push(path);
    }
    cur.validate().map_err(|e| CrowdError::NotSemistandard {
        j: plan.order.len(),
        s: 0,
        detail: e.to_string(),
    })?;
    Ok((cur, CrowdingTrace { plan, snapshots, paths }))
}

/// The crowding map. Every intermediate is validated in debug builds, only the result in release builds.
pub fn crowd(s: &HookValuedTableau, f: &FlaggedTableau) -> Result<(HookValuedTableau, CrowdingTrace), CrowdError> {
    run(s, f, cfg!(debug_assertions))
}

/// Like [`crowd`] but validates every intermediate tableau regardless of build profile.
pub fn crowd_checked(s: &HookValuedTableau, f: &FlaggedTableau) -> Result<(HookValuedTableau, CrowdingTrace), CrowdError> {
    run(s, f, true)
}

/// True iff every bump of the crowding run is defined and keeps the weight of `s`.
pub fn k_lambda_member(s: &HookValuedTableau, f: &FlaggedTableau) -> bool {
    !matches!(
        run(s, f, false),
        Err(CrowdError::NotInKLambda { .. } | CrowdError::PreconditionViolated { .. } | CrowdError::InputMismatch { .. })
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn t(s: &str) -> HookValuedTableau {
        s.parse().unwrap()
    }

    #[test]
    fn single_entry_plan() {
        let f = FlaggedTableau::new(
            "1".parse().unwrap(),
            "3".parse().unwrap(),
            Orientation::ColumnFlagged,
            BTreeMap::from([((1, 2), 1), ((1, 3), 2)]),
        )
        .unwrap();
        let plan = crowding_plan(&f);
        assert_eq!(plan.order, vec![(1, 3), (1, 2)]);
        assert_eq!(plan.destinations, vec![1, 1]);
        assert!(crowding_plan(&FlaggedTableau::empty("2".parse().unwrap(), Orientation::ColumnFlagged))
            .order
            .is_empty());
    }

    #[test]
    fn corner_without_leg_keeps_weight() {
        let h = t("1|2 / 3");
        let (out, to) = crowd_bump(&h, (1, 2)).unwrap();
        assert_eq!(to, (1, 1));
        assert_eq!(out, t("1+2 / 3"));
        let h = t("1|3 / 2");
        let (out, to) = crowd_bump(&h, (1, 2)).unwrap();
        assert_eq!(to, (2, 1));
        assert_eq!(out, t("1 / 2+3"));
        assert_eq!(out.weight(), h.weight());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(crowd_bump(&t("1+2,3"), (1, 1)), Err(CrowdError::PreconditionViolated { .. })));
        assert!(matches!(crowd_bump(&t("1|1+2,3"), (1, 2)), Err(CrowdError::PreconditionViolated { .. })));
        assert!(matches!(crowd_bump(&t("1|1|1 / 2|2"), (1, 2)), Err(CrowdError::PreconditionViolated { .. })));
    }

    #[test]
    fn empty_recording_is_identity() {
        let s = t("1^2|2 / 3");
        let f = FlaggedTableau::empty(s.shape(), Orientation::ColumnFlagged);
        assert_eq!(crowd(&s, &f).unwrap().0, s);
        assert!(k_lambda_member(&s, &f));
    }
}
