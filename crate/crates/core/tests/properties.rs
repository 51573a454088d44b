use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use proptest::prelude::*;

use hooktab::crowding::crowd;
use hooktab::crystal::{column_reading_word, e, epsilon, f, pair_word, phi};
use hooktab::uncrowding::{multiset_uncrowd, uncrowd, uncrowd_mvt, uncrowd_svt, uncrowd_svt_inverse};
use hooktab::word::{knuth_equivalent, rsk_rows};
use hooktab::{enumerate_hvt, HookValuedTableau, Letter, Partition};

/// Unmatched `i` count: the largest prefix surplus of `i` over `i+1`.
fn bracket_phi(w: &[Letter], i: Letter) -> usize {
    let mut best = 0i64;
    let mut run = 0i64;
    for &x in w {
        run += (x == i) as i64 - (x == i + 1) as i64;
        best = best.max(run);
    }
    best as usize
}

fn bracket_epsilon(w: &[Letter], i: Letter) -> usize {
    let mut best = 0i64;
    let mut run = 0i64;
    for &x in w.iter().rev() {
        run += (x == i + 1) as i64 - (x == i) as i64;
        best = best.max(run);
    }
    best as usize
}

/// Knuth class by breadth-first search over the elementary relations.
fn knuth_class(w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for k in 0..v.len().saturating_sub(2) {
            let (a, b, c) = (v[k], v[k + 1], v[k + 2]);
            let mut moves = Vec::new();
            // x z y <-> z x y  with x <= y < z
            if a <= c && c < b {
                moves.push((b, a, c));
            }
            if b <= c && c < a {
                moves.push((b, a, c));
            }
            // y x z <-> y z x  with x < y <= z
            if b < a && a <= c {
                moves.push((a, c, b));
            }
            if c < a && a <= b {
                moves.push((a, c, b));
            }
            for (x, y, z) in moves {
                let mut u = v.clone();
                u[k] = x;
                u[k + 1] = y;
                u[k + 2] = z;
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

/// Tableaux on shapes of size 4 with letters up to 4 and excess up to 3, enumerated once.
fn pool() -> &'static Vec<HookValuedTableau> {
    static POOL: OnceLock<Vec<HookValuedTableau>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for shape in Partition::all_of_size(4) {
            for arm in 0..=3 {
                for leg in 0..=3 - arm {
                    out.extend(enumerate_hvt(&shape, 4, arm, leg));
                }
            }
        }
        out
    })
}

fn any_tableau() -> impl Strategy<Value = HookValuedTableau> {
    (0..pool().len()).prop_map(|k| pool()[k].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pairing_matches_bracket_count(w in prop::collection::vec(1u32..=4, 0..14), i in 1u32..4) {
        let r = pair_word(&w, i);
        prop_assert_eq!(r.phi(), bracket_phi(&w, i));
        prop_assert_eq!(r.epsilon(), bracket_epsilon(&w, i));
    }

    #[test]
    fn rsk_equivalence_matches_knuth_moves(w in prop::collection::vec(1u32..=3, 0..7)) {
        let class = knuth_class(&w);
        for v in &class {
            prop_assert!(knuth_equivalent(&w, v));
        }
        let target = rsk_rows(&w);
        let same_content: Vec<Vec<Letter>> = permutations(&w);
        for v in same_content {
            prop_assert_eq!(rsk_rows(&v) == target, class.contains(&v));
        }
    }

    #[test]
    fn text_and_json_round_trip(t in any_tableau()) {
        prop_assert_eq!(t.to_compact().parse::<HookValuedTableau>().unwrap(), t.clone());
        let back: HookValuedTableau = serde_json::from_str(&t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn crystal_operators_are_partial_inverses(t in any_tableau(), i in 1u32..4) {
        let w = column_reading_word(&t);
        prop_assert_eq!(phi(&t, i), bracket_phi(&w, i));
        prop_assert_eq!(epsilon(&t, i), bracket_epsilon(&w, i));
        if let Some(u) = f(&t, i) {
            prop_assert_eq!(e(&u, i), Some(t.clone()));
            let (a, b) = (t.weight(), u.weight());
            let at = |v: &Vec<usize>, k: u32| v.get(k as usize - 1).copied().unwrap_or(0);
            prop_assert_eq!(at(&b, i) + 1, at(&a, i));
            prop_assert_eq!(at(&b, i + 1), at(&a, i + 1) + 1);
        }
        if let Some(u) = e(&t, i) {
            prop_assert_eq!(f(&u, i), Some(t.clone()));
        }
    }

    #[test]
    fn uncrowding_round_trips_on_larger_shapes(t in any_tableau()) {
        let u = uncrowd(&t);
        prop_assert!(u.p.is_set_valued());
        prop_assert_eq!(u.p.weight(), t.weight());
        let (back, _) = crowd(&u.p, &u.q).unwrap();
        prop_assert_eq!(back, t.clone());
        let v = multiset_uncrowd(&t);
        prop_assert!(v.p.is_multiset_valued());
        prop_assert_eq!(v.p.weight(), t.weight());
        if t.is_multiset_valued() {
            let r = uncrowd_mvt(&t);
            prop_assert_eq!((r.p, r.q), (u.p, u.q));
        }
    }

    #[test]
    fn set_valued_uncrowding_inverts(t in any_tableau()) {
        if t.is_set_valued() {
            let (y, q) = uncrowd_svt(&t).unwrap();
            prop_assert!(y.is_semistandard_young());
            prop_assert_eq!(uncrowd_svt_inverse(&y, &q).unwrap(), t);
        }
    }
}

/// Distinct rearrangements of `w`.
fn permutations(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut v = w.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    loop {
        let Some(k) = (0..v.len().saturating_sub(1)).rev().find(|&k| v[k] < v[k + 1]) else { break };
        let j = (k + 1..v.len()).rev().find(|&j| v[j] > v[k]).unwrap();
        v.swap(k, j);
        v[k + 1..].reverse();
        out.push(v.clone());
    }
    out
}

#[test]
fn pool_is_nontrivial() {
    assert!(pool().len() > 1000, "{}", pool().len());
}

#[test]
fn single_cell_counts() {
    // hook h, arm a multiset from [h, m], leg an l-subset of (h, m]
    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }
    let one: Partition = "1".parse().unwrap();
    for m in 1..=5usize {
        for a in 0..=3 {
            for l in 0..=3 {
                let want: usize = (1..=m).map(|h| binom(m - h + a, a) * if m - h >= l { binom(m - h, l) } else { 0 }).sum();
                assert_eq!(enumerate_hvt(&one, m as Letter, a, l).len(), want, "m={m} a={a} l={l}");
            }
        }
    }
}
