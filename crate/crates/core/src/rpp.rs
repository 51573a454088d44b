use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::tableau::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum RppError {
    #[error("rows do not form a partition shape")]
    ShapeMismatch,
    #[error("entry at ({row},{col}) breaks weak increase")]
    NotWeaklyIncreasing { row: usize, col: usize },
    #[error("entries must be positive")]
    ZeroEntry,
}

/// Reverse plane partition; `rows[0]` is the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Letter>>", into = "Vec<Vec<Letter>>")]
pub struct ReversePlanePartition {
    rows: Vec<Vec<Letter>>,
}

impl ReversePlanePartition {
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<Self, RppError> {
        if Partition::new(rows.iter().map(|r| r.len()).collect()).is_err() {
            return Err(RppError::ShapeMismatch);
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == 0 {
                    return Err(RppError::ZeroEntry);
                }
                let left_ok = c == 0 || row[c - 1] <= x;
                let below_ok = r == 0 || rows[r - 1][c] <= x;
                if !left_ok || !below_ok {
                    return Err(RppError::NotWeaklyIncreasing { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(ReversePlanePartition { rows })
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect()).unwrap()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Letter> {
        self.rows.get(row.checked_sub(1)?)?.get(col.checked_sub(1)?).copied()
    }
}

impl TryFrom<Vec<Vec<Letter>>> for ReversePlanePartition {
    type Error = RppError;
    fn try_from(v: Vec<Vec<Letter>>) -> Result<Self, RppError> {
        Self::new(v)
    }
}

impl From<ReversePlanePartition> for Vec<Vec<Letter>> {
    fn from(r: ReversePlanePartition) -> Self {
        r.rows
    }
}

/// All reverse plane partitions of `shape` with entries at most `max_entry`.
pub fn enumerate_rpp(shape: &Partition, max_entry: Letter) -> Vec<ReversePlanePartition> {
    fn go(cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<Letter>>, m: Letter, out: &mut Vec<ReversePlanePartition>) {
        if k == cells.len() {
            out.push(ReversePlanePartition { rows: rows.clone() });
            return;
        }
        let (r, c) = cells[k];
        let mut lo = 1;
        if c > 1 {
            lo = lo.max(rows[r - 1][c - 2]);
        }
        if r > 1 {
            lo = lo.max(rows[r - 2][c - 1]);
        }
        for x in lo..=m {
            rows[r - 1].push(x);
            go(cells, k + 1, rows, m, out);
            rows[r - 1].pop();
        }
    }
    let mut rows = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    go(&shape.cells(), 0, &mut rows, max_entry, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(enumerate_rpp(&p("1"), 3).len(), 3);
        assert_eq!(enumerate_rpp(&p("2"), 2).len(), 3);
        assert_eq!(enumerate_rpp(&p("1,1"), 2).len(), 3);
    }

    #[test]
    fn column_may_repeat() {
        assert!(ReversePlanePartition::new(vec![vec![1], vec![1]]).is_ok());
        assert!(ReversePlanePartition::new(vec![vec![2], vec![1]]).is_err());
    }
}
