use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::crystal::reading_word_with_provenance;
use crate::flagged::{skew_cells, FlaggedTableau, Orientation};
use crate::partition::Partition;
use crate::tableau::{Coord, HookEntry, HookValuedTableau, Letter};
use crate::word::rsk_insert;

/// Cells visited by one insertion, starting at the bump origin and ending at the new box.
pub type InsertionPath = Vec<Coord>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncrowdResult {
    #[serde(rename = "P")]
    pub p: HookValuedTableau,
    #[serde(rename = "Q")]
    pub q: FlaggedTableau,
    pub paths: Vec<InsertionPath>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum UncrowdError {
    #[error("input has nonzero arm excess")]
    NotSetValued,
    #[error("input has nonzero excess")]
    NotSemistandard,
    #[error("recording tableau does not fit: {detail}")]
    RecordingMismatch { detail: String },
    #[error("reverse bumping failed: {detail}")]
    ReverseBumpFailed { detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Bump {
    origin: Coord,
    target: Coord,
    grew: bool,
}

fn add_cell(t: &mut HookValuedTableau, row: usize, col: usize, e: HookEntry) {
    let rows = t.rows_mut();
    if row == rows.len() + 1 {
        assert_eq!(col, 1, "new row must start in column 1");
        rows.push(vec![e]);
    } else {
        assert_eq!(rows[row - 1].len() + 1, col, "new cell ({row},{col}) is not addable");
        rows[row - 1].push(e);
    }
}

/// One arm bump. Returns None when the arm excess is zero.
fn arm_bump(t: &mut HookValuedTableau) -> Option<Bump> {
    let (r, c) = t
        .cells()
        .filter(|(_, e)| !e.arm.is_empty())
        .map(|(rc, _)| rc)
        .max_by_key(|&(r, c)| (c, r))?;
    let src = t.get(r, c).unwrap();
    let a = *src.arm.last().unwrap();
    let mut found = None;
    for rr in 1..=t.col_len(c + 1) {
        if let Some(k) = t.get(rr, c + 1).unwrap().letters().filter(|&x| x >= a).min() {
            found = Some((rr, k));
            break;
        }
    }
    let (rt, k) = match found {
        Some((rr, k)) => (rr, Some(k)),
        None => (t.col_len(c + 1) + 1, None),
    };
    if rt != r {
        t.get_mut(r, c).unwrap().arm.pop();
        match k {
            None => add_cell(t, rt, c + 1, HookEntry::single(a)),
            Some(k) => {
                let cell = t.get_mut(rt, c + 1).unwrap();
                if cell.hook == k {
                    cell.hook = a;
                } else {
                    let pos = cell.leg.iter().position(|&x| x == k).expect("bumped letter lies in the extended leg");
                    cell.leg[pos] = a;
                }
                cell.insert_arm(k);
            }
        }
    } else {
        let src = t.get_mut(r, c).unwrap();
        src.arm.pop();
        let split = src.leg.partition_point(|&x| x <= a);
        let moved: Vec<Letter> = src.leg.drain(split..).collect();
        match k {
            None => add_cell(t, r, c + 1, HookEntry::new(a, Vec::new(), moved)),
            Some(k) => {
                let cell = t.get_mut(r, c + 1).unwrap();
                assert_eq!(cell.hook, k, "same-row bump must displace the hook");
                cell.hook = a;
                for x in moved {
                    cell.insert_leg(x);
                }
                cell.insert_arm(k);
            }
        }
    }
    Some(Bump { origin: (r, c), target: (rt, c + 1), grew: k.is_none() })
}

/// One leg bump (rows and columns exchanged). Returns None when the leg excess is zero.
fn leg_bump(t: &mut HookValuedTableau) -> Option<Bump> {
    let (r, c) = t
        .cells()
        .filter(|(_, e)| !e.leg.is_empty())
        .map(|(rc, _)| rc)
        .max_by_key(|&(r, c)| (r, c))?;
    let ell = *t.get(r, c).unwrap().leg.last().unwrap();
    let mut found = None;
    for cc in 1..=t.row_len(r + 1) {
        if let Some(k) = t.get(r + 1, cc).unwrap().letters().filter(|&x| x > ell).min() {
            found = Some((cc, k));
            break;
        }
    }
    let (ct, k) = match found {
        Some((cc, k)) => (cc, Some(k)),
        None => (t.row_len(r + 1) + 1, None),
    };
    if ct != c {
        t.get_mut(r, c).unwrap().leg.pop();
        match k {
            None => add_cell(t, r + 1, ct, HookEntry::single(ell)),
            Some(k) => {
                let cell = t.get_mut(r + 1, ct).unwrap();
                if cell.hook == k {
                    cell.hook = ell;
                } else {
                    assert!(cell.remove_arm(k), "bumped letter lies in the hook or arm");
                    cell.insert_arm(ell);
                }
                cell.insert_leg(k);
            }
        }
    } else {
        let src = t.get_mut(r, c).unwrap();
        src.leg.pop();
        let split = src.arm.partition_point(|&x| x < ell);
        let moved: Vec<Letter> = src.arm.drain(split..).collect();
        match k {
            None => add_cell(t, r + 1, c, HookEntry::new(ell, moved, Vec::new())),
            Some(k) => {
                let cell = t.get_mut(r + 1, c).unwrap();
                assert_eq!(cell.hook, k, "same-column bump must displace the hook");
                cell.hook = ell;
                for x in moved {
                    cell.insert_arm(x);
                }
                cell.insert_leg(k);
            }
        }
    }
    Some(Bump { origin: (r, c), target: (r + 1, ct), grew: k.is_none() })
}

fn checked(t: HookValuedTableau, what: &str) -> HookValuedTableau {
    if let Err(err) = t.validate() {
        panic!("{what} produced an invalid tableau {t}: {err}");
    }
    t
}

/// A single arm bump; returns the input unchanged when there is no arm excess.
pub fn uncrowd_bump(t: &HookValuedTableau) -> HookValuedTableau {
    let mut out = t.clone();
    arm_bump(&mut out);
    checked(out, "arm bump")
}

/// Arm bumps until a box is added. Also returns every intermediate tableau (input first).
fn insert_with(
    t: &HookValuedTableau,
    bump: fn(&mut HookValuedTableau) -> Option<Bump>,
    what: &str,
) -> (Vec<HookValuedTableau>, InsertionPath) {
    let mut cur = t.clone();
    let mut steps = vec![cur.clone()];
    let mut path = Vec::new();
    let limit = t.num_cols() + t.num_rows() + 2;
    while let Some(b) = bump(&mut cur) {
        if path.is_empty() {
            path.push(b.origin);
        }
        assert_eq!(path.last(), Some(&b.origin), "{what}: bump origin left the insertion path");
        path.push(b.target);
        steps.push(checked(cur.clone(), what));
        if b.grew {
            return (steps, path);
        }
        assert!(path.len() <= limit, "{what}: insertion did not add a box on {t}");
    }
    (steps, path)
}

pub fn uncrowd_insert(t: &HookValuedTableau) -> (HookValuedTableau, InsertionPath) {
    let (mut steps, path) = insert_with(t, arm_bump, "arm insertion");
    (steps.pop().unwrap(), path)
}

/// Every arm-bump intermediate of one insertion, input first.
pub fn uncrowd_insert_trace(t: &HookValuedTableau) -> Vec<HookValuedTableau> {
    insert_with(t, arm_bump, "arm insertion").0
}

/// One recorded stage of an uncrowding run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncrowdStep {
    #[serde(rename = "P")]
    pub p: HookValuedTableau,
    #[serde(rename = "Q")]
    pub q: FlaggedTableau,
    pub bumps: Vec<HookValuedTableau>,
}

fn uncrowd_with(
    t: &HookValuedTableau,
    bump: fn(&mut HookValuedTableau) -> Option<Bump>,
    orientation: Orientation,
) -> (UncrowdResult, Vec<UncrowdStep>) {
    let inner = t.shape();
    let excess = match orientation {
        Orientation::ColumnFlagged => t.arm_excess(),
        Orientation::RowFlagged => t.leg_excess(),
    };
    let mut cur = t.clone();
    let mut entries = BTreeMap::new();
    let mut paths = Vec::with_capacity(excess);
    let mut steps = vec![UncrowdStep {
        p: cur.clone(),
        q: FlaggedTableau::empty(inner.clone(), orientation),
        bumps: Vec::new(),
    }];
    for _ in 0..excess {
        let (mut bumps, path) = insert_with(&cur, bump, "uncrowding insertion");
        let next = bumps.last().unwrap().clone();
        assert!(next.shape().size() == cur.shape().size() + 1, "uncrowding insertion did not grow the shape of {cur}");
        let (start, end) = (path[0], *path.last().unwrap());
        let value = match orientation {
            Orientation::ColumnFlagged => end.1 - start.1,
            Orientation::RowFlagged => end.0 - start.0,
        };
        entries.insert(end, value as u32);
        paths.push(path);
        cur = next;
        bumps.remove(0);
        let q = FlaggedTableau::new(inner.clone(), cur.shape(), orientation, entries.clone())
            .unwrap_or_else(|e| panic!("recording tableau is not flagged for {t}: {e}"));
        steps.push(UncrowdStep { p: cur.clone(), q, bumps });
    }
    let q = steps.last().unwrap().q.clone();
    (UncrowdResult { p: cur, q, paths }, steps)
}

/// Arm uncrowding: a set-valued tableau and a column-flagged recording tableau.
pub fn uncrowd(t: &HookValuedTableau) -> UncrowdResult {
    uncrowd_with(t, arm_bump, Orientation::ColumnFlagged).0
}

/// Every stage (P_k, Q_k) of the arm uncrowding, starting from (T, empty).
pub fn uncrowd_steps(t: &HookValuedTableau) -> Vec<UncrowdStep> {
    uncrowd_with(t, arm_bump, Orientation::ColumnFlagged).1
}

/// A single leg bump; returns the input unchanged when there is no leg excess.
pub fn multiset_uncrowd_bump(t: &HookValuedTableau) -> HookValuedTableau {
    let mut out = t.clone();
    leg_bump(&mut out);
    checked(out, "leg bump")
}

pub fn multiset_uncrowd_insert(t: &HookValuedTableau) -> (HookValuedTableau, InsertionPath) {
    let (mut steps, path) = insert_with(t, leg_bump, "leg insertion");
    (steps.pop().unwrap(), path)
}

/// Leg uncrowding: a multiset-valued tableau and a row-flagged recording tableau.
pub fn multiset_uncrowd(t: &HookValuedTableau) -> UncrowdResult {
    uncrowd_with(t, leg_bump, Orientation::RowFlagged).0
}

pub fn multiset_uncrowd_steps(t: &HookValuedTableau) -> Vec<UncrowdStep> {
    uncrowd_with(t, leg_bump, Orientation::RowFlagged).1
}

/// Uncrowding of a set-valued tableau by RSK row bumping into the rows above.
pub fn uncrowd_svt(s: &HookValuedTableau) -> Result<(HookValuedTableau, FlaggedTableau), UncrowdError> {
    if !s.is_set_valued() {
        return Err(UncrowdError::NotSetValued);
    }
    let inner = s.shape();
    let mut rows: Vec<Vec<HookEntry>> = s.rows().to_vec();
    let mut entries = BTreeMap::new();
    loop {
        let Some(r) = (0..rows.len()).rev().find(|&r| rows[r].iter().any(|e| !e.leg.is_empty())) else {
            break;
        };
        let c = (0..rows[r].len()).rev().find(|&c| !rows[r][c].leg.is_empty()).unwrap();
        let mut carry = rows[r][c].leg.pop().unwrap();
        let mut i = r + 1;
        let grown = loop {
            if i == rows.len() {
                rows.push(vec![HookEntry::single(carry)]);
                break (i, 0);
            }
            let pos = rows[i].partition_point(|e| e.hook <= carry);
            if pos == rows[i].len() {
                rows[i].push(HookEntry::single(carry));
                break (i, pos);
            }
            std::mem::swap(&mut rows[i][pos].hook, &mut carry);
            i += 1;
        };
        entries.insert((grown.0 + 1, grown.1 + 1), (grown.0 - r) as u32);
    }
    let t = checked(HookValuedTableau::from_rows_unchecked(rows), "set-valued uncrowding");
    let f = FlaggedTableau::new(inner, t.shape(), Orientation::RowFlagged, entries)
        .unwrap_or_else(|e| panic!("set-valued uncrowding of {s} recorded a non-flagged tableau: {e}"));
    Ok((t, f))
}

/// Inverse of [`uncrowd_svt`]: reverse bumping ordered by the recording tableau.
pub fn uncrowd_svt_inverse(t: &HookValuedTableau, f: &FlaggedTableau) -> Result<HookValuedTableau, UncrowdError> {
    if !t.is_semistandard_young() {
        return Err(UncrowdError::NotSemistandard);
    }
    if f.orientation() != Orientation::RowFlagged || *f.outer() != t.shape() {
        return Err(UncrowdError::RecordingMismatch { detail: format!("{f} against shape {}", t.shape()) });
    }
    let mut order: Vec<(usize, usize, usize)> =
        f.entries().iter().map(|(&(r, c), &v)| (r, c, v as usize)).collect();
    order.sort_by_key(|&(r, _, v)| (r - v, std::cmp::Reverse(r)));
    let mut rows: Vec<Vec<HookEntry>> = t.rows().to_vec();
    for (row, col, v) in order {
        let start = row - v;
        if rows.len() < row || rows[row - 1].len() != col || rows.get(row).is_some_and(|a| a.len() >= col) {
            return Err(UncrowdError::ReverseBumpFailed { detail: format!("({row},{col}) is not a corner") });
        }
        let mut y = rows[row - 1].pop().unwrap().hook;
        if rows[row - 1].is_empty() {
            rows.pop();
        }
        for k in (start + 1..row).rev() {
            let pos = rows[k - 1].partition_point(|e| e.hook < y);
            if pos == 0 {
                return Err(UncrowdError::ReverseBumpFailed { detail: format!("no entry below {y} in row {k}") });
            }
            std::mem::swap(&mut rows[k - 1][pos - 1].hook, &mut y);
        }
        let pos = rows[start - 1].partition_point(|e| e.hook < y);
        if pos == 0 {
            return Err(UncrowdError::ReverseBumpFailed { detail: format!("no cell of row {start} can take {y}") });
        }
        let cell = &mut rows[start - 1][pos - 1];
        if cell.max_letter() >= y {
            return Err(UncrowdError::ReverseBumpFailed { detail: format!("{y} is not the largest letter of its cell") });
        }
        cell.leg.push(y);
    }
    let s = HookValuedTableau::from_rows_unchecked(rows);
    s.validate().map_err(|e| UncrowdError::ReverseBumpFailed { detail: e.to_string() })?;
    Ok(s)
}

/// Stages (U_k, F_k) of the RSK-based uncrowding of a multiset-valued tableau, k from the last column down to 1.
pub fn uncrowd_mvt_steps(m: &HookValuedTableau) -> Vec<(HookValuedTableau, FlaggedTableau)> {
    assert!(m.is_multiset_valued(), "uncrowd_mvt expects zero leg excess");
    let shape = m.shape();
    let ncols = m.num_cols();
    let mut col_words: Vec<Vec<Letter>> = vec![Vec::new(); ncols + 1];
    for l in reading_word_with_provenance(m) {
        col_words[l.col].push(l.letter);
    }
    let mut prev: BTreeMap<Coord, u32> = BTreeMap::new();
    let mut out = Vec::new();
    for k in (1..=ncols).rev() {
        let word: Vec<Letter> = col_words[k..].concat();
        let u = rsk_insert(&word);
        let inner = Partition::from_padded(shape.parts().iter().map(|&p| (p + 1).saturating_sub(k)).collect())
            .unwrap();
        let mut entries: BTreeMap<Coord, u32> = prev.iter().map(|(&(r, c), &v)| ((r, c + 1), v)).collect();
        for (r, c) in skew_cells(&inner, &u.shape()) {
            entries.entry((r, c)).or_insert(c as u32 - 1);
        }
        let f = FlaggedTableau::new(inner, u.shape(), Orientation::ColumnFlagged, entries.clone())
            .unwrap_or_else(|e| panic!("column suffix {k} of {m} gives a non-flagged recording: {e}"));
        prev = entries;
        out.push((u, f));
    }
    out
}

/// RSK-based uncrowding of a multiset-valued tableau.
pub fn uncrowd_mvt(m: &HookValuedTableau) -> UncrowdResult {
    match uncrowd_mvt_steps(m).pop() {
        Some((p, q)) => UncrowdResult { p, q, paths: Vec::new() },
        None => UncrowdResult {
            p: m.clone(),
            q: FlaggedTableau::empty(m.shape(), Orientation::ColumnFlagged),
            paths: Vec::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> HookValuedTableau {
        s.parse().unwrap()
    }

    #[test]
    fn single_cell_insertion() {
        let (p, path) = uncrowd_insert(&t("1+1"));
        assert_eq!(p, t("1|1"));
        assert_eq!(path, vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn single_cell_two_insertions() {
        let res = uncrowd(&t("1+1,1"));
        assert_eq!(res.p, t("1|1|1"));
        assert_eq!(res.q.entries().iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>(), vec![((1, 2), 1), ((1, 3), 2)]);
    }

    #[test]
    fn svt_is_fixed() {
        let s = t("1^2|2^3");
        assert_eq!(uncrowd_bump(&s), s);
        let res = uncrowd(&s);
        assert_eq!(res.p, s);
        assert!(res.q.is_empty());
    }

    #[test]
    fn leg_single_cell() {
        let res = multiset_uncrowd(&t("1^2"));
        assert_eq!(res.p, t("1 / 2"));
        assert_eq!(res.q.get(2, 1), Some(1));
    }

    #[test]
    fn svt_uncrowding_examples() {
        let (p, f) = uncrowd_svt(&t("1|1^2")).unwrap();
        assert_eq!(p, t("1|1 / 2"));
        assert_eq!(f.get(2, 1), Some(1));
        let (p, f) = uncrowd_svt(&t("1^2,3")).unwrap();
        assert_eq!(p, t("1 / 2 / 3"));
        assert_eq!((f.get(2, 1), f.get(3, 1)), (Some(1), Some(2)));
        assert_eq!(uncrowd_svt_inverse(&p, &f).unwrap(), t("1^2,3"));
    }

    #[test]
    fn mvt_already_semistandard() {
        let m = t("1|2 / 3");
        let r = uncrowd_mvt(&m);
        assert_eq!(r.p, m);
        assert!(r.q.is_empty());
    }
}
