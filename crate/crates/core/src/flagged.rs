use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::tableau::Coord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Row `i` entries are at most `i - 1`.
    RowFlagged,
    /// Column `j` entries are at most `j - 1`.
    ColumnFlagged,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::RowFlagged => Orientation::ColumnFlagged,
            Orientation::ColumnFlagged => Orientation::RowFlagged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum FlaggedError {
    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    ShapeNotNested { inner: String, outer: String },
    #[error("{detail}")]
    NotFlagged { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct EntryJson {
    row: usize,
    col: usize,
    value: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FlaggedJson {
    inner: Partition,
    outer: Partition,
    orientation: Orientation,
    entries: Vec<EntryJson>,
}

/// Strictly increasing filling of `outer / inner` with a flag bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FlaggedJson", into = "FlaggedJson")]
pub struct FlaggedTableau {
    inner: Partition,
    outer: Partition,
    orientation: Orientation,
    entries: BTreeMap<Coord, u32>,
}

impl TryFrom<FlaggedJson> for FlaggedTableau {
    type Error = FlaggedError;
    fn try_from(j: FlaggedJson) -> Result<Self, FlaggedError> {
        let entries = j.entries.into_iter().map(|e| ((e.row, e.col), e.value)).collect();
        FlaggedTableau::new(j.inner, j.outer, j.orientation, entries)
    }
}

impl From<FlaggedTableau> for FlaggedJson {
    fn from(f: FlaggedTableau) -> FlaggedJson {
        FlaggedJson {
            inner: f.inner,
            outer: f.outer,
            orientation: f.orientation,
            entries: f
                .entries
                .into_iter()
                .map(|((row, col), value)| EntryJson { row, col, value })
                .collect(),
        }
    }
}

impl FlaggedTableau {
    pub fn new(
        inner: Partition,
        outer: Partition,
        orientation: Orientation,
        entries: BTreeMap<Coord, u32>,
    ) -> Result<Self, FlaggedError> {
        let f = FlaggedTableau { inner, outer, orientation, entries };
        f.validate()?;
        Ok(f)
    }

    /// The unique filling of an empty skew shape.
    pub fn empty(shape: Partition, orientation: Orientation) -> Self {
        FlaggedTableau { inner: shape.clone(), outer: shape, orientation, entries: BTreeMap::new() }
    }

    pub(crate) fn new_unchecked(
        inner: Partition,
        outer: Partition,
        orientation: Orientation,
        entries: BTreeMap<Coord, u32>,
    ) -> Self {
        FlaggedTableau { inner, outer, orientation, entries }
    }

    pub fn validate(&self) -> Result<(), FlaggedError> {
        if !self.outer.contains(&self.inner) {
            return Err(FlaggedError::ShapeNotNested {
                inner: self.inner.to_string(),
                outer: self.outer.to_string(),
            });
        }
        let skew = skew_cells(&self.inner, &self.outer);
        if skew.len() != self.entries.len() || skew.iter().any(|c| !self.entries.contains_key(c)) {
            return Err(FlaggedError::NotFlagged { detail: "entries do not cover the skew shape".into() });
        }
        match self.orientation {
            Orientation::RowFlagged => {
                if self.inner.first_part() != self.outer.first_part() {
                    return Err(FlaggedError::NotFlagged { detail: "first parts differ".into() });
                }
            }
            Orientation::ColumnFlagged => {
                if self.inner.len() != self.outer.len() {
                    return Err(FlaggedError::NotFlagged { detail: "numbers of rows differ".into() });
                }
            }
        }
        for (&(r, c), &v) in &self.entries {
            let flag = match self.orientation {
                Orientation::RowFlagged => r - 1,
                Orientation::ColumnFlagged => c - 1,
            };
            if v == 0 || v as usize > flag {
                return Err(FlaggedError::NotFlagged { detail: format!("entry {v} at ({r},{c}) exceeds its flag") });
            }
            if let Some(&right) = self.entries.get(&(r, c + 1)) {
                if right <= v {
                    return Err(FlaggedError::NotFlagged { detail: format!("row not increasing at ({r},{c})") });
                }
            }
            if let Some(&above) = self.entries.get(&(r + 1, c)) {
                if above <= v {
                    return Err(FlaggedError::NotFlagged { detail: format!("column not increasing at ({r},{c})") });
                }
            }
        }
        Ok(())
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn entries(&self) -> &BTreeMap<Coord, u32> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.entries.get(&(row, col)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> FlaggedTableau {
        FlaggedTableau {
            inner: self.inner.conjugate(),
            outer: self.outer.conjugate(),
            orientation: self.orientation.flip(),
            entries: self.entries.iter().map(|(&(r, c), &v)| ((c, r), v)).collect(),
        }
    }

    pub fn to_ascii(&self) -> String {
        if self.outer.is_empty() {
            return "(empty)\n".into();
        }
        let w = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for r in (1..=self.outer.len()).rev() {
            let cells: Vec<String> = (1..=self.outer.row_len(r))
                .map(|c| match self.get(r, c) {
                    Some(v) => format!("{v:>w$}"),
                    None => format!("{:>w$}", "*"),
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for FlaggedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|((r, c), v)| format!("({r},{c})={v}")).collect();
        write!(f, "{}/{} [{}]", self.outer, self.inner, e.join(" "))
    }
}

/// Cells of `outer / inner` sorted by row then column.
pub fn skew_cells(inner: &Partition, outer: &Partition) -> Vec<Coord> {
    (1..=outer.len())
        .flat_map(|r| (inner.row_len(r) + 1..=outer.row_len(r)).map(move |c| (r, c)))
        .collect()
}

/// Every flagged filling of `outer / inner`.
pub fn enumerate_flagged(
    inner: &Partition,
    outer: &Partition,
    orientation: Orientation,
) -> Result<Vec<FlaggedTableau>, FlaggedError> {
    if !outer.contains(inner) {
        return Err(FlaggedError::ShapeNotNested { inner: inner.to_string(), outer: outer.to_string() });
    }
    if orientation == Orientation::ColumnFlagged {
        let t = enumerate_flagged(&inner.conjugate(), &outer.conjugate(), Orientation::RowFlagged)?;
        let mut out: Vec<_> = t.iter().map(|f| f.transpose()).collect();
        out.sort();
        return Ok(out);
    }
    if inner.first_part() != outer.first_part() {
        return Ok(Vec::new());
    }
    let cells = skew_cells(inner, outer);
    let mut out = Vec::new();
    fill(&cells, 0, &mut BTreeMap::new(), inner, outer, &mut out);
    out.sort();
    Ok(out)
}

fn fill(
    cells: &[Coord],
    k: usize,
    cur: &mut BTreeMap<Coord, u32>,
    inner: &Partition,
    outer: &Partition,
    out: &mut Vec<FlaggedTableau>,
) {
    if k == cells.len() {
        out.push(FlaggedTableau::new_unchecked(inner.clone(), outer.clone(), Orientation::RowFlagged, cur.clone()));
        return;
    }
    let (r, c) = cells[k];
    let mut lo = 1;
    if let Some(&left) = cur.get(&(r, c - 1)) {
        lo = lo.max(left + 1);
    }
    if r > 1 {
        if let Some(&below) = cur.get(&(r - 1, c)) {
            lo = lo.max(below + 1);
        }
    }
    for v in lo..=(r as u32 - 1) {
        cur.insert((r, c), v);
        fill(cells, k + 1, cur, inner, outer, out);
        cur.remove(&(r, c));
    }
}

/// Flagged fillings of `outer` over every admissible inner shape.
pub fn enumerate_flagged_any_inner(outer: &Partition, orientation: Orientation) -> Vec<FlaggedTableau> {
    let mut out = Vec::new();
    for inner in Partition::empty().between(outer) {
        out.extend(enumerate_flagged(&inner, outer, orientation).unwrap());
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn full_inner_gives_empty_filling() {
        let l = enumerate_flagged(&p("2,1,1"), &p("2,1,1"), Orientation::RowFlagged).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l[0].is_empty());
    }

    #[test]
    fn outer_211_over_all_inner_shapes() {
        assert_eq!(enumerate_flagged_any_inner(&p("2,1,1"), Orientation::RowFlagged).len(), 4);
        assert_eq!(enumerate_flagged(&p("2"), &p("2,1,1"), Orientation::RowFlagged).unwrap().len(), 1);
    }

    #[test]
    fn not_nested() {
        assert!(matches!(
            enumerate_flagged(&p("3"), &p("2,1"), Orientation::RowFlagged),
            Err(FlaggedError::ShapeNotNested { .. })
        ));
    }

    #[test]
    fn transpose_swaps_orientation() {
        for f in enumerate_flagged(&p("2,1"), &p("3,2,1"), Orientation::ColumnFlagged).unwrap() {
            let t = f.transpose();
            assert_eq!(t.orientation(), Orientation::RowFlagged);
            t.validate().unwrap();
        }
    }
}
