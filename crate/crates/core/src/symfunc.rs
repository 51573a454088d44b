use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::crowding::k_lambda_member;
use crate::crystal::is_highest_weight;
use crate::flagged::{enumerate_flagged, Orientation};
use crate::partition::Partition;
use crate::rpp::{enumerate_rpp, ReversePlanePartition};
use crate::tableau::{enumerate_hvt, HookValuedTableau, Letter};
use crate::uncrowding::uncrowd_svt_inverse;
use crate::word::{rsk_insert, Word};

/// Integer polynomial in the two markers α (arm) and β (leg), keyed by (α exponent, β exponent).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientAB(BTreeMap<(u32, u32), BigInt>);

impl CoefficientAB {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(a: u32, b: u32, c: i64) -> Self {
        let mut out = Self::default();
        out.add_term(a, b, BigInt::from(c));
        out
    }

    /// Parses sums like `1 + 2a + ab^2 - b` (also accepting α and β).
    pub fn parse(s: &str) -> Result<Self, String> {
        let s: String = s.replace('α', "a").replace('β', "b").replace(' ', "").replace('−', "-");
        let mut out = Self::zero();
        if s.is_empty() || s == "0" {
            return Ok(out);
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.trim_start_matches('+')),
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut rest = &body[digits.len()..];
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|e| format!("{e}"))? };
            let (mut a, mut b) = (0u32, 0u32);
            while let Some(var) = rest.chars().next() {
                rest = &rest[1..];
                let mut pow = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let d: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                    pow = d.parse().map_err(|_| format!("bad exponent in {t:?}"))?;
                    rest = &r[d.len()..];
                }
                match var {
                    'a' => a += pow,
                    'b' => b += pow,
                    _ => return Err(format!("unexpected {var:?} in {t:?}")),
                }
            }
            out.add_term(a, b, BigInt::from(sign * coeff));
        }
        Ok(out)
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry((a, b)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, a: u32, b: u32) -> BigInt {
        self.0.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.0.iter()
    }

    /// Keeps the terms whose exponents satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(u32, u32) -> bool) -> Self {
        CoefficientAB(self.0.iter().filter(|(&(a, b), _)| keep(a, b)).map(|(k, v)| (*k, v.clone())).collect())
    }

    /// Substitutes β = `beta` and keeps the α exponents.
    pub fn substitute_beta(&self, beta: i64) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.0 {
            out.add_term(a, 0, c * BigInt::from(beta).pow(b));
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.0 {
            out.add_term(a, b, c * k);
        }
        out
    }
}

impl AddAssign<&CoefficientAB> for CoefficientAB {
    fn add_assign(&mut self, rhs: &CoefficientAB) {
        for (&(a, b), c) in &rhs.0 {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add for &CoefficientAB {
    type Output = CoefficientAB;
    fn add(self, rhs: &CoefficientAB) -> CoefficientAB {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &CoefficientAB {
    type Output = CoefficientAB;
    fn neg(self) -> CoefficientAB {
        CoefficientAB(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
}

impl Sub for &CoefficientAB {
    type Output = CoefficientAB;
    fn sub(self, rhs: &CoefficientAB) -> CoefficientAB {
        self + &(-rhs)
    }
}

impl Mul for &CoefficientAB {
    type Output = CoefficientAB;
    fn mul(self, rhs: &CoefficientAB) -> CoefficientAB {
        let mut out = CoefficientAB::zero();
        for (&(a1, b1), c1) in &self.0 {
            for (&(a2, b2), c2) in &rhs.0 {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for CoefficientAB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let marker = |name: &str, e: u32| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        for (k, (&(a, b), c)) in self.0.iter().enumerate() {
            let vars = format!("{}{}", marker("α", a), marker("β", b));
            let mag = c.abs();
            let body = if vars.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                vars
            } else {
                format!("{mag}{vars}")
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CoefficientAB {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (&(a, b), c) in &self.0 {
            seq.serialize_element(&serde_json::json!({"alpha": a, "beta": b, "coefficient": c.to_string()}))?;
        }
        seq.end()
    }
}

// JSON object keys must be strings, so term maps go out as lists of records.
fn monomial_list<S: Serializer>(terms: &BTreeMap<Vec<u32>, CoefficientAB>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Term<'a> {
        exponents: &'a [u32],
        coefficient: &'a CoefficientAB,
    }
    s.collect_seq(terms.iter().map(|(k, c)| Term { exponents: k, coefficient: c }))
}

fn shape_list<S: Serializer>(terms: &BTreeMap<Partition, CoefficientAB>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Term<'a> {
        shape: &'a Partition,
        coefficient: &'a CoefficientAB,
    }
    s.collect_seq(terms.iter().map(|(k, c)| Term { shape: k, coefficient: c }))
}

/// Polynomial in `num_vars` variables with exact α, β coefficients; terms above `max_degree` are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSymmetricPolynomial {
    pub num_vars: usize,
    pub max_degree: Option<usize>,
    #[serde(serialize_with = "monomial_list")]
    pub terms: BTreeMap<Vec<u32>, CoefficientAB>,
}

impl TruncatedSymmetricPolynomial {
    pub fn new(num_vars: usize, max_degree: Option<usize>) -> Self {
        TruncatedSymmetricPolynomial { num_vars, max_degree, terms: BTreeMap::new() }
    }

    fn exponent(&self, weight: &[usize]) -> Vec<u32> {
        assert!(weight.len() <= self.num_vars, "letter exceeds the number of variables");
        let mut e: Vec<u32> = weight.iter().map(|&x| x as u32).collect();
        e.resize(self.num_vars, 0);
        e
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: &CoefficientAB) {
        let deg: u32 = exponent.iter().sum();
        if self.max_degree.is_some_and(|d| deg as usize > d) || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn add_weight(&mut self, weight: &[usize], c: &CoefficientAB) {
        let e = self.exponent(weight);
        self.add_term(e, c);
    }

    pub fn add_scaled(&mut self, other: &TruncatedSymmetricPolynomial, c: &CoefficientAB) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), &(v * c));
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&CoefficientAB) -> CoefficientAB) -> Self {
        let mut out = Self::new(self.num_vars, self.max_degree);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &f(v));
        }
        out
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut out = Self::new(self.num_vars, Some(max_degree));
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars.saturating_sub(1)).all(|k| {
            self.terms.iter().all(|(e, v)| {
                let mut s = e.clone();
                s.swap(k, k + 1);
                self.terms.get(&s) == Some(v)
            })
        })
    }

    /// Monomial list, one `coefficient<TAB>exponents` line per term.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("exponent\tcoefficient\n");
        for (e, v) in &self.terms {
            let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{}\t{}\n", e.join(","), v));
        }
        s
    }
}

impl fmt::Display for TruncatedSymmetricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, v)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, p) })
                    .collect();
                format!("({v}){}", mono.join(""))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Semistandard tableaux of `shape` with entries at most `m`, as letter rows.
fn ssyt_rows(shape: &Partition, m: Letter) -> Vec<Vec<Vec<Letter>>> {
    fn go(cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<Letter>>, m: Letter, out: &mut Vec<Vec<Vec<Letter>>>) {
        if k == cells.len() {
            out.push(rows.clone());
            return;
        }
        let (r, c) = cells[k];
        let mut lo = 1;
        if c > 1 {
            lo = lo.max(rows[r - 1][c - 2]);
        }
        if r > 1 {
            lo = lo.max(rows[r - 2][c - 1] + 1);
        }
        for x in lo..=m {
            rows[r - 1].push(x);
            go(cells, k + 1, rows, m, out);
            rows[r - 1].pop();
        }
    }
    let mut out = Vec::new();
    go(&shape.cells(), 0, &mut vec![Vec::new(); shape.len()], m, &mut out);
    out
}

fn content(letters: impl Iterator<Item = Letter>, m: usize) -> Vec<usize> {
    let mut w = vec![0; m];
    for x in letters {
        w[x as usize - 1] += 1;
    }
    w
}

pub fn schur_poly(lambda: &Partition, m: usize, max_degree: Option<usize>) -> TruncatedSymmetricPolynomial {
    let mut p = TruncatedSymmetricPolynomial::new(m, max_degree);
    for t in ssyt_rows(lambda, m as Letter) {
        p.add_weight(&content(t.into_iter().flatten(), m), &CoefficientAB::one());
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BetaValue {
    Formal,
    MinusOne,
}

/// Set-valued fillings as bitmask rows (bit `x-1` set when letter `x` is present), at most `max_letters` letters.
fn svt_masks(shape: &Partition, m: Letter, max_letters: usize) -> Vec<Vec<u32>> {
    fn go(
        cells: &[(usize, usize)],
        k: usize,
        rows: &mut Vec<Vec<u32>>,
        m: Letter,
        budget: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == cells.len() {
            out.push(rows.iter().flatten().copied().collect());
            return;
        }
        let (r, c) = cells[k];
        let remaining_cells = cells.len() - k - 1;
        let mut lo = 1;
        if c > 1 {
            lo = lo.max(32 - rows[r - 1][c - 2].leading_zeros());
        }
        if r > 1 {
            lo = lo.max(33 - rows[r - 2][c - 1].leading_zeros());
        }
        for mask in 1u32..(1 << m) {
            let min = mask.trailing_zeros() + 1;
            let n = mask.count_ones() as usize;
            if min < lo || n + remaining_cells > budget {
                continue;
            }
            rows[r - 1].push(mask);
            go(cells, k + 1, rows, m, budget - n, out);
            rows[r - 1].pop();
        }
    }
    let mut out = Vec::new();
    go(&shape.cells(), 0, &mut vec![Vec::new(); shape.len()], m, max_letters, &mut out);
    out
}

/// Set-valued tableau generating function, letters at most `m`, at most `max_degree` letters.
pub fn stable_grothendieck(mu: &Partition, m: usize, max_degree: usize, beta: BetaValue) -> TruncatedSymmetricPolynomial {
    let mut p = TruncatedSymmetricPolynomial::new(m, Some(max_degree));
    for cells in svt_masks(mu, m as Letter, max_degree) {
        let mut w = vec![0; m];
        let mut n = 0;
        for mask in &cells {
            for (k, slot) in w.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *slot += 1;
                    n += 1;
                }
            }
        }
        let extra = (n - mu.size()) as u32;
        let c = match beta {
            BetaValue::Formal => CoefficientAB::monomial(0, extra, 1),
            BetaValue::MinusOne => CoefficientAB::monomial(0, 0, if extra % 2 == 0 { 1 } else { -1 }),
        };
        p.add_weight(&w, &c);
    }
    p
}

/// Reverse plane partition generating function by column evaluation.
pub fn dual_grothendieck(mu: &Partition, m: usize) -> TruncatedSymmetricPolynomial {
    let mut p = TruncatedSymmetricPolynomial::new(m, None);
    for r in enumerate_rpp(mu, m as Letter) {
        let (ev, _) = rpp_eval_and_word(&r);
        p.add_weight(&ev, &CoefficientAB::one());
    }
    p
}

/// Multiset-valued tableau generating function with α marking the extra letters.
pub fn mvt_generating_function(lambda: &Partition, m: usize, max_letters: usize) -> TruncatedSymmetricPolynomial {
    fn multisets(lo: Letter, m: Letter, max_len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for x in lo..=m {
            cur.push(x);
            multisets(x, m, max_len, cur, out);
            cur.pop();
        }
    }
    fn go(
        cells: &[(usize, usize)],
        k: usize,
        rows: &mut Vec<Vec<Vec<Letter>>>,
        m: Letter,
        budget: usize,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if k == cells.len() {
            out.push(rows.iter().flatten().flatten().copied().collect());
            return;
        }
        let (r, c) = cells[k];
        let remaining = cells.len() - k - 1;
        let mut lo = 1;
        if c > 1 {
            lo = lo.max(*rows[r - 1][c - 2].last().unwrap());
        }
        if r > 1 {
            lo = lo.max(rows[r - 2][c - 1].last().unwrap() + 1);
        }
        if budget <= remaining {
            return;
        }
        let mut cands = Vec::new();
        multisets(lo, m, budget - remaining, &mut Vec::new(), &mut cands);
        for ms in cands {
            let n = ms.len();
            rows[r - 1].push(ms);
            go(cells, k + 1, rows, m, budget - n, out);
            rows[r - 1].pop();
        }
    }
    let mut p = TruncatedSymmetricPolynomial::new(m, Some(max_letters));
    let mut fillings = Vec::new();
    go(&lambda.cells(), 0, &mut vec![Vec::new(); lambda.len()], m as Letter, max_letters, &mut fillings);
    for letters in fillings {
        let extra = (letters.len() - lambda.size()) as u32;
        p.add_weight(&content(letters.into_iter(), m), &CoefficientAB::monomial(extra, 0, 1));
    }
    p
}

/// Hook-valued generating function: α per arm letter, β per leg letter, at most `max_letters` letters.
pub fn canonical_grothendieck(lambda: &Partition, m: usize, max_letters: usize) -> TruncatedSymmetricPolynomial {
    let mut p = TruncatedSymmetricPolynomial::new(m, Some(max_letters));
    let n0 = lambda.size();
    if n0 > max_letters {
        return p;
    }
    let pairs: Vec<(usize, usize)> =
        (0..=max_letters - n0).flat_map(|a| (0..=max_letters - n0 - a).map(move |l| (a, l))).collect();
    let parts: Vec<TruncatedSymmetricPolynomial> = pairs
        .par_iter()
        .map(|&(a, l)| {
            let mut q = TruncatedSymmetricPolynomial::new(m, Some(max_letters));
            let c = CoefficientAB::monomial(a as u32, l as u32, 1);
            for t in enumerate_hvt(lambda, m as Letter, a, l) {
                q.add_weight(&t.weight(), &c);
            }
            q
        })
        .collect();
    for q in parts {
        p.add_scaled(&q, &CoefficientAB::one());
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schur,
    #[serde(rename = "G")]
    BigG,
    #[serde(rename = "g")]
    SmallG,
}

impl std::str::FromStr for Basis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "schur" | "s" => Ok(Basis::Schur),
            "G" | "bigG" | "grothendieck" => Ok(Basis::BigG),
            "g" | "smallg" | "dual" => Ok(Basis::SmallG),
            _ => Err(format!("unknown basis {s:?} (expected schur, G or g)")),
        }
    }
}

/// Partition-indexed expansion; shapes beyond `truncation_bound` were not explored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisExpansion {
    pub basis: Basis,
    #[serde(serialize_with = "shape_list")]
    pub terms: BTreeMap<Partition, CoefficientAB>,
    pub truncation_bound: usize,
}

impl BasisExpansion {
    pub fn coefficient(&self, shape: &Partition) -> CoefficientAB {
        self.terms.get(shape).cloned().unwrap_or_default()
    }

    /// Rows `shape  alpha  beta  coefficient`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("shape\talpha\tbeta\tcoefficient\n");
        for (p, c) in &self.terms {
            for (&(a, b), v) in c.terms() {
                s.push_str(&format!("{p}\t{a}\t{b}\t{v}\n"));
            }
        }
        s
    }

    /// Evaluates the expansion in `m` variables up to `max_degree` using the given basis functions.
    pub fn evaluate(&self, m: usize, max_degree: usize) -> TruncatedSymmetricPolynomial {
        let mut p = TruncatedSymmetricPolynomial::new(m, Some(max_degree));
        for (shape, c) in &self.terms {
            let f = match self.basis {
                Basis::Schur => schur_poly(shape, m, Some(max_degree)),
                Basis::BigG => stable_grothendieck(shape, m, max_degree, BetaValue::MinusOne),
                Basis::SmallG => dual_grothendieck(shape, m).truncate(max_degree),
            };
            p.add_scaled(&f, c);
        }
        p
    }
}

/// Schur expansion of a symmetric polynomial by peeling off lexicographically leading monomials.
/// Exact when the number of variables is at least the degree of every term.
pub fn schur_decompose(p: &TruncatedSymmetricPolynomial) -> Result<BTreeMap<Partition, CoefficientAB>, String> {
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let shape = Partition::from_padded(lead.iter().map(|&x| x as usize).collect())
            .map_err(|_| format!("leading exponent {lead:?} is not a partition; polynomial is not symmetric"))?;
        let s = schur_poly(&shape, p.num_vars, p.max_degree);
        rest.add_scaled(&s, &(-&c));
        out.insert(shape, c);
    }
    Ok(out)
}

/// Highest-weight hook-valued tableaux of shape `lambda`, grouped by weight.
pub fn schur_expansion_canonical(lambda: &Partition, max_shape_size: usize) -> BasisExpansion {
    let n0 = lambda.size();
    let mut terms: BTreeMap<Partition, CoefficientAB> = BTreeMap::new();
    if n0 <= max_shape_size {
        let m = max_shape_size.max(1) as Letter;
        let pairs: Vec<(usize, usize)> = (0..=max_shape_size - n0)
            .flat_map(|a| (0..=max_shape_size - n0 - a).map(move |l| (a, l)))
            .collect();
        let found: Vec<(Partition, CoefficientAB)> = pairs
            .par_iter()
            .flat_map_iter(|&(a, l)| {
                enumerate_hvt(lambda, m, a, l)
                    .into_iter()
                    .filter(|t| is_highest_weight(t, Some(m)))
                    .map(move |t| {
                        let nu = Partition::from_padded(t.weight()).expect("highest weight is a partition");
                        (nu, CoefficientAB::monomial(a as u32, l as u32, 1))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        for (nu, c) in found {
            *terms.entry(nu).or_default() += &c;
        }
    }
    BasisExpansion { basis: Basis::Schur, terms, truncation_bound: max_shape_size }
}

/// Rows top to bottom; in each row the non-minimal letters in decreasing order, then the cell minima increasing.
pub fn svt_reading_word(s: &HookValuedTableau) -> Word {
    assert!(s.is_set_valued(), "reading word of a set-valued tableau");
    let mut w = Vec::with_capacity(s.letter_count());
    for row in s.rows().iter().rev() {
        let mut extra: Vec<Letter> = row.iter().flat_map(|e| e.leg.iter().copied()).collect();
        extra.sort_unstable_by(|a, b| b.cmp(a));
        w.extend(extra);
        w.extend(row.iter().map(|e| e.hook));
    }
    w
}

/// Column evaluation and reading word of a reverse plane partition: a letter is circled at its
/// bottommost occurrence in each column; circled letters are read top row first, left to right.
pub fn rpp_eval_and_word(r: &ReversePlanePartition) -> (Vec<usize>, Word) {
    let rows = r.rows();
    let max = rows.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut ev = vec![0; max];
    let mut circled = vec![Vec::new(); rows.len()];
    for (k, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            if k == 0 || rows[k - 1][c] != x {
                ev[x as usize - 1] += 1;
                circled[k].push(x);
            }
        }
    }
    let word = circled.into_iter().rev().flatten().collect();
    (ev, word)
}

/// Number of column-flagged recordings `F` of shape `shape(s) / lambda` for which `(s, F)` lies in the crowding domain.
pub fn phi_lambda(s: &HookValuedTableau, lambda: &Partition) -> usize {
    let mu = s.shape();
    match enumerate_flagged(lambda, &mu, Orientation::ColumnFlagged) {
        Ok(fs) => fs.iter().filter(|f| k_lambda_member(s, f)).count(),
        Err(_) => 0,
    }
}

/// Weight of a highest-weight tableau `t` in the tableaux Schur expansion of the canonical function for `lambda`.
pub fn wt_lambda(t: &HookValuedTableau, lambda: &Partition) -> CoefficientAB {
    let nu = t.shape();
    let mut out = CoefficientAB::zero();
    for mu in lambda.between(&nu) {
        let qs = enumerate_flagged(&mu, &nu, Orientation::RowFlagged).unwrap_or_default();
        let mut count = 0usize;
        for q in &qs {
            let s = uncrowd_svt_inverse(t, q)
                .unwrap_or_else(|e| panic!("inverse set-valued uncrowding failed on {t} with {q}: {e}"));
            count += phi_lambda(&s, lambda);
        }
        let a = (mu.size() - lambda.size()) as u32;
        let b = (nu.size() - mu.size()) as u32;
        out.add_term(a, b, BigInt::from(count));
    }
    out
}

/// Highest-weight semistandard tableau of shape `nu`: row `i` filled with `i`.
pub fn highest_weight_ssyt(nu: &Partition) -> HookValuedTableau {
    let rows: Vec<Vec<Letter>> = nu.parts().iter().enumerate().map(|(k, &p)| vec![k as Letter + 1; p]).collect();
    HookValuedTableau::from_letter_rows(&rows).unwrap()
}

fn wt_cache(shapes: BTreeSet<Partition>, lambda: &Partition) -> HashMap<Partition, CoefficientAB> {
    shapes
        .into_par_iter()
        .map(|nu| {
            let c = wt_lambda(&highest_weight_ssyt(&nu), lambda);
            (nu, c)
        })
        .collect()
}

/// Expansion in the stable Grothendieck basis at β = -1 or the dual basis at β = 1.
///
/// For `BigG`, `size_bound` caps the size of the plane partition shapes (and with it the word
/// length); for `SmallG` it caps the number of letters of the set-valued tableaux.
pub fn expand_in_basis(lambda: &Partition, basis: Basis, size_bound: usize) -> BasisExpansion {
    // (basis shape, sign, insertion tableau shape) for every contributing object
    let mut hits: Vec<(Partition, i64, Partition)> = Vec::new();
    let keep = |w: &Word| -> Option<Partition> {
        let p = rsk_insert(w);
        let shape = p.shape();
        (shape.contains(lambda) && is_highest_weight(&p, None)).then_some(shape)
    };
    match basis {
        Basis::Schur => return schur_expansion_canonical(lambda, size_bound),
        Basis::BigG => {
            for n in 1..=size_bound {
                for shape in Partition::all_of_size(n) {
                    let found: Vec<_> = enumerate_rpp(&shape, n as Letter)
                        .par_iter()
                        .filter_map(|r| keep(&rpp_eval_and_word(r).1))
                        .collect();
                    hits.extend(found.into_iter().map(|nu| (shape.clone(), 1, nu)));
                }
            }
        }
        Basis::SmallG => {
            for n in 1..=size_bound {
                for shape in Partition::all_of_size(n) {
                    for extra in 0..=size_bound - n {
                        let sign = if extra % 2 == 0 { 1 } else { -1 };
                        let found: Vec<_> = enumerate_hvt(&shape, size_bound as Letter, 0, extra)
                            .par_iter()
                            .filter_map(|s| keep(&svt_reading_word(s)))
                            .collect();
                        hits.extend(found.into_iter().map(|nu| (shape.clone(), sign, nu)));
                    }
                }
            }
        }
    }
    let wts = wt_cache(hits.iter().map(|h| h.2.clone()).collect(), lambda);
    let mut terms: BTreeMap<Partition, CoefficientAB> = BTreeMap::new();
    for (shape, sign, nu) in hits {
        let c = wts[&nu].scale(&BigInt::from(sign));
        let e = terms.entry(shape).or_default();
        *e += &c;
    }
    terms.retain(|_, c| !c.is_zero());
    BasisExpansion { basis, terms, truncation_bound: size_bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(m: usize, terms: &[(&[u32], &str)]) -> TruncatedSymmetricPolynomial {
        let mut q = TruncatedSymmetricPolynomial::new(m, None);
        for (e, c) in terms {
            q.add_term(e.to_vec(), &CoefficientAB::parse(c).unwrap());
        }
        q
    }

    #[test]
    fn schur_small() {
        let s = schur_poly(&p("2,1"), 2, None);
        assert_eq!(s.terms, poly(2, &[(&[2, 1], "1"), (&[1, 2], "1")]).terms);
        assert_eq!(schur_poly(&p("2"), 2, None).terms.len(), 3);
    }

    #[test]
    fn grothendieck_single_cell() {
        let g = stable_grothendieck(&p("1"), 2, 2, BetaValue::Formal);
        assert_eq!(g.terms, poly(2, &[(&[1, 0], "1"), (&[0, 1], "1"), (&[1, 1], "b")]).terms);
        let g = stable_grothendieck(&p("1"), 1, 5, BetaValue::Formal);
        assert_eq!(g.terms, poly(1, &[(&[1], "1")]).terms);
    }

    #[test]
    fn canonical_single_cell() {
        let g = canonical_grothendieck(&p("1"), 1, 2);
        assert_eq!(g.terms, poly(1, &[(&[1], "1"), (&[2], "a")]).terms);
    }

    #[test]
    fn coefficient_display_and_parse() {
        let c = CoefficientAB::parse("1 + 2a - ab^2").unwrap();
        assert_eq!(c.to_string(), "1 + 2α - αβ^2");
        assert_eq!(CoefficientAB::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn rpp_word() {
        let r = ReversePlanePartition::new(vec![vec![1, 1, 3], vec![1, 2]]).unwrap();
        assert_eq!(rpp_eval_and_word(&r), (vec![2, 1, 1], vec![2, 1, 1, 3]));
        let col = ReversePlanePartition::new(vec![vec![1], vec![1]]).unwrap();
        assert_eq!(rpp_eval_and_word(&col), (vec![1], vec![1]));
    }

    #[test]
    fn svt_word_small() {
        let s: HookValuedTableau = "1|1^2".parse().unwrap();
        assert_eq!(svt_reading_word(&s), vec![2, 1, 1]);
    }

    #[test]
    fn trivial_expansions() {
        for basis in [Basis::BigG, Basis::SmallG] {
            let e = expand_in_basis(&p("1"), basis, 1);
            assert_eq!(e.terms.len(), 1);
            assert_eq!(e.coefficient(&p("1")), CoefficientAB::one());
        }
        let e = schur_expansion_canonical(&p("1"), 1);
        assert_eq!(e.terms.len(), 1);
    }
}
