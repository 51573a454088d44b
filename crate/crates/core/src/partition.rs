use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a partition: {0:?}")]
pub struct PartitionError(pub Vec<usize>);

/// Weakly decreasing list of positive parts. Row 1 (index 0) is the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError(parts));
        }
        Ok(Partition(parts))
    }

    /// Drops trailing zeros before validating.
    pub fn from_padded(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row `r` (1-based), zero beyond the last row.
    pub fn row_len(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    /// Height of column `c` (1-based).
    pub fn col_len(&self, c: usize) -> usize {
        if c == 0 {
            return 0;
        }
        self.0.iter().take_while(|&&p| p >= c).count()
    }

    pub fn first_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.row_len(row) >= col
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        Partition((1..=self.first_part()).map(|c| self.col_len(c)).collect())
    }

    /// Cells (row, col), 1-based, sorted by row then column.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (1..=p).map(move |c| (r + 1, c)))
            .collect()
    }

    pub fn is_corner(&self, row: usize, col: usize) -> bool {
        self.row_len(row) == col && self.row_len(row + 1) < col
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions fitting in a `rows` x `cols` box.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Partitions `mu` with `self` contained in `mu` contained in `outer`.
    pub fn between(&self, outer: &Partition) -> Vec<Partition> {
        fn go(
            inner: &Partition,
            outer: &Partition,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            let r = cur.len() + 1;
            if r > outer.len() {
                out.push(Partition::from_padded(cur.clone()).unwrap());
                return;
            }
            let hi = match cur.last() {
                Some(&prev) => outer.row_len(r).min(prev),
                None => outer.row_len(r),
            };
            let lo = inner.row_len(r);
            for p in lo..=hi {
                cur.push(p);
                go(inner, outer, cur, out);
                cur.pop();
            }
        }
        if !outer.contains(self) {
            return Vec::new();
        }
        let mut out = Vec::new();
        go(self, outer, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn conjugate_and_columns() {
        let p = Partition::new(vec![3, 2, 2]).unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 3, 1]);
        assert_eq!(p.col_len(3), 1);
        assert_eq!(p.col_len(4), 0);
        assert!(p.is_corner(3, 2));
        assert!(!p.is_corner(2, 2));
    }

    #[test]
    fn counts() {
        assert_eq!(Partition::all_of_size(5).len(), 7);
        assert_eq!(Partition::all_in_box(2, 2).len(), 6);
        let inner: Partition = "2".parse().unwrap();
        let outer: Partition = "2,1,1".parse().unwrap();
        assert_eq!(inner.between(&outer).len(), 3);
    }
}
