use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

pub type Letter = u32;

/// 1-based (row, column); row 1 is the bottom row.
pub type Coord = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum TableauError {
    #[error("cell ({row},{col}) is not a hook: {reason}")]
    CellNotHook { row: usize, col: usize, reason: String },
    #[error("row condition fails between ({row},{col}) and ({row},{next})", next = col + 1)]
    RowViolation { row: usize, col: usize },
    #[error("column condition fails between ({row},{col}) and ({above},{col})", above = row + 1)]
    ColumnViolation { row: usize, col: usize },
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },
    #[error("malformed input: {detail}")]
    Malformed { detail: String },
}

/// One cell: a hook-shaped semistandard tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HookEntry {
    pub hook: Letter,
    #[serde(default)]
    pub arm: Vec<Letter>,
    #[serde(default)]
    pub leg: Vec<Letter>,
}

impl HookEntry {
    pub fn single(hook: Letter) -> Self {
        HookEntry { hook, arm: Vec::new(), leg: Vec::new() }
    }

    pub fn new(hook: Letter, arm: Vec<Letter>, leg: Vec<Letter>) -> Self {
        HookEntry { hook, arm, leg }
    }

    /// Set-valued cell from a strictly increasing list.
    pub fn set(letters: &[Letter]) -> Self {
        HookEntry { hook: letters[0], arm: Vec::new(), leg: letters[1..].to_vec() }
    }

    pub fn check(&self) -> Result<(), String> {
        if self.hook == 0 || self.arm.contains(&0) || self.leg.contains(&0) {
            return Err("letters must be positive".into());
        }
        if self.arm.windows(2).any(|w| w[0] > w[1]) {
            return Err("arm not weakly increasing".into());
        }
        if self.arm.first().is_some_and(|&a| a < self.hook) {
            return Err("arm entry below hook".into());
        }
        if self.leg.windows(2).any(|w| w[0] >= w[1]) {
            return Err("leg not strictly increasing".into());
        }
        if self.leg.first().is_some_and(|&l| l <= self.hook) {
            return Err("leg entry not above hook".into());
        }
        Ok(())
    }

    pub fn min_letter(&self) -> Letter {
        self.hook
    }

    pub fn max_letter(&self) -> Letter {
        let a = self.arm.last().copied().unwrap_or(0);
        let l = self.leg.last().copied().unwrap_or(0);
        self.hook.max(a).max(l)
    }

    pub fn len(&self) -> usize {
        1 + self.arm.len() + self.leg.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Hook followed by the leg.
    pub fn extended_leg(&self) -> Vec<Letter> {
        let mut v = Vec::with_capacity(1 + self.leg.len());
        v.push(self.hook);
        v.extend_from_slice(&self.leg);
        v
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        std::iter::once(self.hook).chain(self.arm.iter().copied()).chain(self.leg.iter().copied())
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.hook == x || self.arm.contains(&x) || self.leg.contains(&x)
    }

    pub fn in_extended_leg(&self, x: Letter) -> bool {
        self.hook == x || self.leg.contains(&x)
    }

    pub(crate) fn insert_arm(&mut self, x: Letter) {
        let pos = self.arm.partition_point(|&y| y <= x);
        self.arm.insert(pos, x);
    }

    pub(crate) fn insert_leg(&mut self, x: Letter) {
        let pos = self.leg.partition_point(|&y| y < x);
        self.leg.insert(pos, x);
    }

    pub(crate) fn remove_arm(&mut self, x: Letter) -> bool {
        match self.arm.iter().position(|&y| y == x) {
            Some(p) => {
                self.arm.remove(p);
                true
            }
            None => false,
        }
    }

    /// Removes `x` from the extended leg; the next leg letter becomes the hook.
    /// Returns false if `x` is absent or is the only letter of the extended leg.
    pub(crate) fn remove_extended_leg(&mut self, x: Letter) -> bool {
        if self.hook == x {
            if self.leg.is_empty() {
                return false;
            }
            self.hook = self.leg.remove(0);
            true
        } else if let Some(p) = self.leg.iter().position(|&y| y == x) {
            self.leg.remove(p);
            true
        } else {
            false
        }
    }

    /// Inserts `x` into the extended leg; a new minimum becomes the hook.
    pub(crate) fn insert_extended_leg(&mut self, x: Letter) {
        if x < self.hook {
            let old = self.hook;
            self.hook = x;
            self.leg.insert(0, old);
        } else {
            self.insert_leg(x);
        }
    }

    fn compact(&self) -> String {
        let mut s = self.hook.to_string();
        if !self.arm.is_empty() {
            s.push('+');
            s.push_str(&join(&self.arm, ","));
        }
        if !self.leg.is_empty() {
            s.push('^');
            s.push_str(&join(&self.leg, ","));
        }
        s
    }

    fn parse_compact(s: &str) -> Result<HookEntry, String> {
        let num = |t: &str| t.trim().parse::<Letter>().map_err(|e| format!("{t:?}: {e}"));
        let list = |t: &str| -> Result<Vec<Letter>, String> {
            if t.trim().is_empty() {
                Ok(Vec::new())
            } else {
                t.split(',').map(num).collect()
            }
        };
        let (pre, leg) = match s.split_once('^') {
            Some((a, b)) => (a, list(b)?),
            None => (s, Vec::new()),
        };
        let (hook, arm) = match pre.split_once('+') {
            Some((h, a)) => (num(h)?, list(a)?),
            None => (num(pre)?, Vec::new()),
        };
        Ok(HookEntry { hook, arm, leg })
    }
}

fn join(v: &[Letter], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Raw cell record as it appears in the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCell {
    pub row: usize,
    pub col: usize,
    pub hook: Letter,
    #[serde(default)]
    pub arm: Vec<Letter>,
    #[serde(default)]
    pub leg: Vec<Letter>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableauJson {
    shape: Partition,
    cells: Vec<RawCell>,
}

/// Hook-valued tableau on a straight shape. `rows[0]` is the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct HookValuedTableau {
    rows: Vec<Vec<HookEntry>>,
}

/// Tableau with zero arm excess.
pub type SetValuedTableau = HookValuedTableau;
/// Tableau with zero leg excess.
pub type MultisetValuedTableau = HookValuedTableau;

impl TryFrom<TableauJson> for HookValuedTableau {
    type Error = TableauError;
    fn try_from(j: TableauJson) -> Result<Self, TableauError> {
        validate_hvt(&j.shape, j.cells)
    }
}

impl From<HookValuedTableau> for TableauJson {
    fn from(t: HookValuedTableau) -> TableauJson {
        TableauJson { shape: t.shape(), cells: t.raw_cells() }
    }
}

/// Builds a tableau from raw cells covering `shape` exactly, checking every condition.
pub fn validate_hvt(shape: &Partition, cells: Vec<RawCell>) -> Result<HookValuedTableau, TableauError> {
    let mut rows: Vec<Vec<Option<HookEntry>>> =
        shape.parts().iter().map(|&p| vec![None; p]).collect();
    for c in cells {
        if !shape.contains_cell(c.row, c.col) {
            return Err(TableauError::ShapeMismatch { detail: format!(
                "cell ({},{}) outside shape {shape}",
                c.row, c.col
            ) });
        }
        let slot = &mut rows[c.row - 1][c.col - 1];
        if slot.is_some() {
            return Err(TableauError::ShapeMismatch { detail: format!("cell ({},{}) given twice", c.row, c.col) });
        }
        *slot = Some(HookEntry { hook: c.hook, arm: c.arm, leg: c.leg });
    }
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.into_iter().enumerate() {
        let mut v = Vec::with_capacity(row.len());
        for (c, e) in row.into_iter().enumerate() {
            match e {
                Some(e) => v.push(e),
                None => {
                    return Err(TableauError::ShapeMismatch { detail: format!("cell ({},{}) missing", r + 1, c + 1) })
                }
            }
        }
        out.push(v);
    }
    HookValuedTableau::from_rows(out)
}

impl HookValuedTableau {
    pub fn empty() -> Self {
        HookValuedTableau { rows: Vec::new() }
    }

    /// Validating constructor; `rows[0]` is the bottom row.
    pub fn from_rows(rows: Vec<Vec<HookEntry>>) -> Result<Self, TableauError> {
        let t = HookValuedTableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<HookEntry>>) -> Self {
        HookValuedTableau { rows }
    }

    /// Semistandard Young tableau from rows of single letters.
    pub fn from_letter_rows(rows: &[Vec<Letter>]) -> Result<Self, TableauError> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| HookEntry::single(x)).collect()).collect(),
        )
    }

    /// Compact text form: rows bottom to top separated by `/`, cells by `|`,
    /// each cell `hook[+arm,..][^leg,..]`, e.g. `1+1^2 | 3+3,4^4 / 5`.
    pub fn parse_compact(s: &str) -> Result<Self, TableauError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let mut rows = Vec::new();
        for (r, row) in s.split('/').enumerate() {
            let mut v = Vec::new();
            for (c, cell) in row.split('|').enumerate() {
                let e = HookEntry::parse_compact(cell).map_err(|reason| TableauError::CellNotHook {
                    row: r + 1,
                    col: c + 1,
                    reason,
                })?;
                v.push(e);
            }
            rows.push(v);
        }
        Self::from_rows(rows)
    }

    pub fn to_compact(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.compact()).collect::<Vec<_>>().join("|"))
            .collect::<Vec<_>>()
            .join(" / ")
    }

    pub fn validate(&self) -> Result<(), TableauError> {
        let lens: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if Partition::new(lens.clone()).is_err() {
            return Err(TableauError::ShapeMismatch { detail: format!("row lengths {lens:?} are not a partition") });
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                e.check().map_err(|reason| TableauError::CellNotHook { row: r + 1, col: c + 1, reason })?;
                if c + 1 < row.len() && e.max_letter() > row[c + 1].min_letter() {
                    return Err(TableauError::RowViolation { row: r + 1, col: c + 1 });
                }
                if let Some(above) = self.rows.get(r + 1).and_then(|a| a.get(c)) {
                    if e.max_letter() >= above.min_letter() {
                        return Err(TableauError::ColumnViolation { row: r + 1, col: c + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<HookEntry>] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<HookEntry>> {
        &mut self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect()).expect("tableau rows form a partition")
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.rows.get(row.wrapping_sub(1)).map_or(0, |r| r.len())
    }

    pub fn col_len(&self, col: usize) -> usize {
        self.rows.iter().take_while(|r| r.len() >= col).count()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Cell at 1-based (row, col).
    pub fn get(&self, row: usize, col: usize) -> Option<&HookEntry> {
        if row == 0 || col == 0 {
            return None;
        }
        self.rows.get(row - 1)?.get(col - 1)
    }

    pub(crate) fn get_mut(&mut self, row: usize, col: usize) -> Option<&mut HookEntry> {
        if row == 0 || col == 0 {
            return None;
        }
        self.rows.get_mut(row - 1)?.get_mut(col - 1)
    }

    /// Cells in (row, col) order.
    pub fn cells(&self) -> impl Iterator<Item = (Coord, &HookEntry)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, e)| ((r + 1, c + 1), e)))
    }

    pub fn raw_cells(&self) -> Vec<RawCell> {
        self.cells()
            .map(|((row, col), e)| RawCell { row, col, hook: e.hook, arm: e.arm.clone(), leg: e.leg.clone() })
            .collect()
    }

    pub fn arm_excess(&self) -> usize {
        self.cells().map(|(_, e)| e.arm.len()).sum()
    }

    pub fn leg_excess(&self) -> usize {
        self.cells().map(|(_, e)| e.leg.len()).sum()
    }

    /// (arm excess, leg excess).
    pub fn excess(&self) -> (usize, usize) {
        (self.arm_excess(), self.leg_excess())
    }

    pub fn is_set_valued(&self) -> bool {
        self.arm_excess() == 0
    }

    pub fn is_multiset_valued(&self) -> bool {
        self.leg_excess() == 0
    }

    pub fn is_semistandard_young(&self) -> bool {
        self.excess() == (0, 0)
    }

    pub fn letter_count(&self) -> usize {
        self.cells().map(|(_, e)| e.len()).sum()
    }

    pub fn max_letter(&self) -> Letter {
        self.cells().map(|(_, e)| e.max_letter()).max().unwrap_or(0)
    }

    /// Entry `i - 1` counts letter `i`; length is the largest letter present.
    pub fn weight(&self) -> Vec<usize> {
        let mut w = vec![0; self.max_letter() as usize];
        for (_, e) in self.cells() {
            for x in e.letters() {
                w[x as usize - 1] += 1;
            }
        }
        w
    }

    /// Single letters of a tableau with zero excess, bottom row first.
    pub fn letter_rows(&self) -> Vec<Vec<Letter>> {
        self.rows.iter().map(|r| r.iter().map(|e| e.hook).collect()).collect()
    }

    /// Paper-style picture: leg stacked above the hook, arm to its right, top row first.
    pub fn to_ascii(&self) -> String {
        if self.rows.is_empty() {
            return "(empty)\n".into();
        }
        let wide = self.max_letter() >= 10;
        let sep = if wide { " " } else { "" };
        let base = |e: &HookEntry| {
            let mut v = vec![e.hook];
            v.extend_from_slice(&e.arm);
            join(&v, sep)
        };
        let ncols = self.num_cols();
        let mut widths = vec![1; ncols];
        for ((_, c), e) in self.cells() {
            let w = &mut widths[c - 1];
            *w = (*w).max(base(e).len());
            for l in &e.leg {
                *w = (*w).max(l.to_string().len());
            }
        }
        let mut out = String::new();
        for row in self.rows.iter().rev() {
            let height = row.iter().map(|e| e.leg.len() + 1).max().unwrap_or(1);
            for line in 0..height {
                let mut parts = Vec::new();
                for (c, e) in row.iter().enumerate() {
                    let from_bottom = height - 1 - line;
                    let text = if from_bottom == 0 {
                        base(e)
                    } else if from_bottom <= e.leg.len() {
                        e.leg[from_bottom - 1].to_string()
                    } else {
                        String::new()
                    };
                    parts.push(format!("{:<w$}", text, w = widths[c]));
                }
                out.push_str(parts.join(" | ").trim_end_matches([' ', '|']));
                out.push('\n');
            }
            let rule: Vec<String> = widths[..row.len()].iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("-+-"));
            out.push('\n');
        }
        out
    }

    /// Canonical JSON (pretty, cells sorted by row then column).
    /// Reads the JSON format, keeping the structured reason when validation fails.
    pub fn from_json(s: &str) -> Result<Self, TableauError> {
        let j: TableauJson = serde_json::from_str(s).map_err(|e| TableauError::Malformed { detail: e.to_string() })?;
        validate_hvt(&j.shape, j.cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tableau serializes")
    }
}

impl fmt::Display for HookValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

impl std::str::FromStr for HookValuedTableau {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, TableauError> {
        Self::parse_compact(s)
    }
}

/// All tableaux of `shape` with entries at most `max_entry` and exactly the given excesses,
/// in canonical order.
pub fn enumerate_hvt(shape: &Partition, max_entry: Letter, arm: usize, leg: usize) -> Vec<HookValuedTableau> {
    let cells = shape.cells();
    let mut rows: Vec<Vec<HookEntry>> = shape.parts().iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut out = Vec::new();
    fill_hvt(&cells, 0, &mut rows, max_entry, arm, leg, &mut out);
    out.sort();
    out
}

fn fill_hvt(
    cells: &[Coord],
    k: usize,
    rows: &mut Vec<Vec<HookEntry>>,
    m: Letter,
    arm: usize,
    leg: usize,
    out: &mut Vec<HookValuedTableau>,
) {
    if k == cells.len() {
        if arm == 0 && leg == 0 {
            out.push(HookValuedTableau { rows: rows.clone() });
        }
        return;
    }
    let (r, c) = cells[k];
    let mut lo = 1;
    if c > 1 {
        lo = lo.max(rows[r - 1][c - 2].max_letter());
    }
    if r > 1 {
        lo = lo.max(rows[r - 2][c - 1].max_letter() + 1);
    }
    for e in hook_entries(lo, m, arm, leg) {
        let (da, dl) = (e.arm.len(), e.leg.len());
        rows[r - 1].push(e);
        fill_hvt(cells, k + 1, rows, m, arm - da, leg - dl, out);
        rows[r - 1].pop();
    }
}

/// Every hook entry with letters in [lo, m], arm length at most `arm`, leg length at most `leg`.
pub fn hook_entries(lo: Letter, m: Letter, arm: usize, leg: usize) -> Vec<HookEntry> {
    let mut out = Vec::new();
    for h in lo..=m {
        let mut legs = Vec::new();
        subsets(h + 1, m, leg, &mut Vec::new(), &mut legs);
        let mut arms = Vec::new();
        multisets(h, m, arm, &mut Vec::new(), &mut arms);
        for l in &legs {
            for a in &arms {
                out.push(HookEntry { hook: h, arm: a.clone(), leg: l.clone() });
            }
        }
    }
    out
}

fn subsets(from: Letter, m: Letter, max_len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    out.push(cur.clone());
    if cur.len() == max_len {
        return;
    }
    for x in from..=m {
        cur.push(x);
        subsets(x + 1, m, max_len, cur, out);
        cur.pop();
    }
}

fn multisets(from: Letter, m: Letter, max_len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
    out.push(cur.clone());
    if cur.len() == max_len {
        return;
    }
    for x in from..=m {
        cur.push(x);
        multisets(x, m, max_len, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn row_violation() {
        let err = HookValuedTableau::parse_compact("3|2").unwrap_err();
        assert_eq!(err, TableauError::RowViolation { row: 1, col: 1 });
    }

    #[test]
    fn column_violation() {
        let err = HookValuedTableau::parse_compact("1^2 / 2").unwrap_err();
        assert_eq!(err, TableauError::ColumnViolation { row: 1, col: 1 });
    }

    #[test]
    fn not_hook() {
        assert!(matches!(
            HookValuedTableau::parse_compact("2+1"),
            Err(TableauError::CellNotHook { .. })
        ));
        assert!(matches!(
            HookValuedTableau::parse_compact("2^3,3"),
            Err(TableauError::CellNotHook { .. })
        ));
    }

    #[test]
    fn shape_mismatch() {
        let cells = vec![RawCell { row: 1, col: 1, hook: 1, arm: vec![], leg: vec![] }];
        assert!(matches!(validate_hvt(&p("2"), cells), Err(TableauError::ShapeMismatch { .. })));
    }

    #[test]
    fn excess_of_single_cell() {
        let t = HookValuedTableau::parse_compact("2+2,3^4").unwrap();
        assert_eq!(t.excess(), (2, 1));
        assert_eq!(t.weight(), vec![0, 2, 1, 1]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_hvt(&p("1"), 2, 0, 0).len(), 2);
        assert_eq!(enumerate_hvt(&p("1"), 2, 1, 0).len(), 3);
        let l = enumerate_hvt(&p("1"), 2, 0, 1);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].to_compact(), "1^2");
        assert_eq!(enumerate_hvt(&Partition::empty(), 3, 0, 0).len(), 1);
        assert!(enumerate_hvt(&Partition::empty(), 3, 1, 0).is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let t = HookValuedTableau::parse_compact("1+1^2|3+3,4^4|4+4,4,5 / 3+3^4|5").unwrap();
        let s = t.to_json();
        let back: HookValuedTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn ascii_layout() {
        let t = HookValuedTableau::parse_compact("1+1^2|2").unwrap();
        assert_eq!(t.to_ascii(), "2\n11 | 2\n---+--\n");
    }
}
