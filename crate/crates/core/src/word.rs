use crate::tableau::{HookValuedTableau, Letter};

pub type Word = Vec<Letter>;

/// Row-insertion tableau of `w` as rows of letters, bottom row first.
pub fn rsk_rows(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    for &x in w {
        row_insert(&mut rows, 0, x);
    }
    rows
}

/// Bumps `x` into `rows[start..]`; returns the (0-based) cell where the shape grew.
pub(crate) fn row_insert(rows: &mut Vec<Vec<Letter>>, start: usize, x: Letter) -> (usize, usize) {
    let mut carry = x;
    let mut r = start;
    loop {
        if r == rows.len() {
            rows.push(vec![carry]);
            return (r, 0);
        }
        let row = &mut rows[r];
        let pos = row.partition_point(|&y| y <= carry);
        if pos == row.len() {
            row.push(carry);
            return (r, pos);
        }
        std::mem::swap(&mut row[pos], &mut carry);
        r += 1;
    }
}

/// RSK row-insertion tableau P(w).
pub fn rsk_insert(w: &[Letter]) -> HookValuedTableau {
    HookValuedTableau::from_letter_rows(&rsk_rows(w)).expect("row insertion yields a semistandard tableau")
}

pub fn knuth_equivalent(a: &[Letter], b: &[Letter]) -> bool {
    rsk_rows(a) == rsk_rows(b)
}

/// Subword of letters `i` and `i + 1`.
pub fn restrict_to_pair(w: &[Letter], i: Letter) -> Word {
    w.iter().copied().filter(|&x| x == i || x == i + 1).collect()
}

pub fn format_word(w: &[Letter]) -> String {
    if w.iter().all(|&x| x < 10) {
        w.iter().map(|x| x.to_string()).collect()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Parses `432113` (digit per letter) or `10 2 3` / `10,2,3`.
pub fn parse_word(s: &str) -> Result<Word, String> {
    let s = s.trim();
    if s.contains([' ', ',']) {
        s.split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Letter>().map_err(|e| format!("{t:?}: {e}")))
            .collect()
    } else {
        s.chars()
            .map(|ch| ch.to_digit(10).filter(|&d| d > 0).ok_or_else(|| format!("bad letter {ch:?}")))
            .collect()
    }
}
