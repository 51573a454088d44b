use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::partition::Partition;
use crate::tableau::{enumerate_hvt, HookValuedTableau, Letter};
use crate::word::Word;

/// Which part of a cell a reading-word letter came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    Hook,
    Arm(usize),
    Leg(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReadingLetter {
    pub letter: Letter,
    pub row: usize,
    pub col: usize,
    pub part: Part,
}

/// Column reading word with the cell each letter came from.
///
/// Columns left to right; in each column the extended legs top to bottom
/// (cells visited top to bottom), then every arm letter of the column in
/// weakly increasing order.
pub fn reading_word_with_provenance(t: &HookValuedTableau) -> Vec<ReadingLetter> {
    let mut out = Vec::with_capacity(t.letter_count());
    for col in 1..=t.num_cols() {
        let height = t.col_len(col);
        let mut arms = Vec::new();
        for row in (1..=height).rev() {
            let e = t.get(row, col).unwrap();
            for (k, &x) in e.leg.iter().enumerate().rev() {
                out.push(ReadingLetter { letter: x, row, col, part: Part::Leg(k) });
            }
            out.push(ReadingLetter { letter: e.hook, row, col, part: Part::Hook });
            for (k, &x) in e.arm.iter().enumerate() {
                arms.push(ReadingLetter { letter: x, row, col, part: Part::Arm(k) });
            }
        }
        arms.sort_by_key(|l| l.letter);
        out.extend(arms);
    }
    out
}

pub fn column_reading_word(t: &HookValuedTableau) -> Word {
    reading_word_with_provenance(t).into_iter().map(|l| l.letter).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingResult {
    pub i: Letter,
    /// (position of the i+1, position of the i) for each bracketed pair.
    pub paired: Vec<(usize, usize)>,
    pub unpaired_minus: Vec<usize>,
    pub unpaired_plus: Vec<usize>,
}

impl PairingResult {
    pub fn phi(&self) -> usize {
        self.unpaired_minus.len()
    }

    pub fn epsilon(&self) -> usize {
        self.unpaired_plus.len()
    }
}

/// Brackets each `i+1` with the nearest free `i` to its right.
pub fn pair_word(w: &[Letter], i: Letter) -> PairingResult {
    let mut stack = Vec::new();
    let mut paired = Vec::new();
    let mut unpaired_minus = Vec::new();
    for (p, &x) in w.iter().enumerate() {
        if x == i + 1 {
            stack.push(p);
        } else if x == i {
            match stack.pop() {
                Some(q) => paired.push((q, p)),
                None => unpaired_minus.push(p),
            }
        }
    }
    PairingResult { i, paired, unpaired_minus, unpaired_plus: stack }
}

pub fn pair(t: &HookValuedTableau, i: Letter) -> PairingResult {
    pair_word(&column_reading_word(t), i)
}

pub fn phi(t: &HookValuedTableau, i: Letter) -> usize {
    pair(t, i).phi()
}

pub fn epsilon(t: &HookValuedTableau, i: Letter) -> usize {
    pair(t, i).epsilon()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// f_i
    Lower,
    /// e_i
    Raise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CrystalOutcome {
    Tableau(HookValuedTableau),
    Annihilated,
}

impl CrystalOutcome {
    pub fn into_option(self) -> Option<HookValuedTableau> {
        match self {
            CrystalOutcome::Tableau(t) => Some(t),
            CrystalOutcome::Annihilated => None,
        }
    }

    pub fn is_annihilated(&self) -> bool {
        matches!(self, CrystalOutcome::Annihilated)
    }
}

/// Which local rule an operator application used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    M,
    S,
    N,
}

pub fn apply_crystal(t: &HookValuedTableau, i: Letter, dir: Direction) -> CrystalOutcome {
    match apply_with_rule(t, i, dir) {
        Some((t, _)) => CrystalOutcome::Tableau(t),
        None => CrystalOutcome::Annihilated,
    }
}

pub fn f(t: &HookValuedTableau, i: Letter) -> Option<HookValuedTableau> {
    apply_with_rule(t, i, Direction::Lower).map(|(t, _)| t)
}

pub fn e(t: &HookValuedTableau, i: Letter) -> Option<HookValuedTableau> {
    apply_with_rule(t, i, Direction::Raise).map(|(t, _)| t)
}

/// Applies f_i or e_i and reports the rule that fired.
pub fn apply_with_rule(t: &HookValuedTableau, i: Letter, dir: Direction) -> Option<(HookValuedTableau, Rule)> {
    assert!(i >= 1, "crystal index must be positive");
    let word = reading_word_with_provenance(t);
    let letters: Vec<Letter> = word.iter().map(|l| l.letter).collect();
    let pr = pair_word(&letters, i);
    let mut out = t.clone();
    let rule = match dir {
        Direction::Lower => {
            let pos = *pr.unpaired_minus.last()?;
            lower_at(&mut out, word[pos], i)
        }
        Direction::Raise => {
            let pos = *pr.unpaired_plus.first()?;
            raise_at(&mut out, word[pos], i)
        }
    };
    if let Err(err) = out.validate() {
        panic!("crystal operator broke semistandardness ({dir:?}, i={i}, rule {rule:?}) on {t}: {err}");
    }
    Some((out, rule))
}

fn lower_at(t: &mut HookValuedTableau, at: ReadingLetter, i: Letter) -> Rule {
    let (r, c) = (at.row, at.col);
    if t.get(r + 1, c).is_some_and(|up| up.contains(i + 1)) {
        let b = t.get_mut(r, c).unwrap();
        assert!(b.remove_arm(i), "rule (M) for f_{i}: no {i} in the arm of ({r},{c})");
        t.get_mut(r + 1, c).unwrap().insert_arm(i + 1);
        return Rule::M;
    }
    if t.get(r, c + 1).is_some_and(|right| right.in_extended_leg(i)) {
        let right = t.get_mut(r, c + 1).unwrap();
        assert!(right.remove_extended_leg(i), "rule (S) for f_{i}: cannot empty the cell ({r},{})", c + 1);
        t.get_mut(r, c).unwrap().insert_leg(i + 1);
        return Rule::S;
    }
    let b = t.get_mut(r, c).unwrap();
    match at.part {
        Part::Hook => b.hook = i + 1,
        Part::Leg(k) => b.leg[k] = i + 1,
        Part::Arm(_) => {
            b.remove_arm(i);
            b.insert_arm(i + 1);
        }
    }
    Rule::N
}

fn raise_at(t: &mut HookValuedTableau, at: ReadingLetter, i: Letter) -> Rule {
    let (r, c) = (at.row, at.col);
    if r > 1 && t.get(r - 1, c).is_some_and(|down| down.contains(i)) {
        let b = t.get_mut(r, c).unwrap();
        assert!(b.remove_arm(i + 1), "rule (M) for e_{i}: no {} in the arm of ({r},{c})", i + 1);
        t.get_mut(r - 1, c).unwrap().insert_arm(i);
        return Rule::M;
    }
    if c > 1 && t.get(r, c - 1).is_some_and(|left| left.leg.contains(&(i + 1))) {
        let left = t.get_mut(r, c - 1).unwrap();
        left.leg.retain(|&x| x != i + 1);
        t.get_mut(r, c).unwrap().insert_extended_leg(i);
        return Rule::S;
    }
    let b = t.get_mut(r, c).unwrap();
    match at.part {
        Part::Hook => b.hook = i,
        Part::Leg(k) => b.leg[k] = i,
        Part::Arm(_) => {
            b.remove_arm(i + 1);
            b.insert_arm(i);
        }
    }
    Rule::N
}

/// True when every e_i with `i <= max_i` annihilates `t`; `max_i` defaults to the largest letter.
pub fn is_highest_weight(t: &HookValuedTableau, max_i: Option<Letter>) -> bool {
    let max_i = max_i.unwrap_or_else(|| t.max_letter());
    let word = column_reading_word(t);
    (1..=max_i).all(|i| pair_word(&word, i).unpaired_plus.is_empty())
}

#[derive(Debug, Clone, Serialize)]
pub struct CrystalGraph {
    pub vertices: Vec<HookValuedTableau>,
    /// (source, target, i) with f_i(source) = target.
    pub edges: Vec<(usize, usize, Letter)>,
    pub max_entry: Letter,
}

/// Graph on all tableaux with the given shape, entry bound and excesses, with every f_i edge, i < max_entry.
pub fn build_crystal_graph(shape: &Partition, max_entry: Letter, arm: usize, leg: usize) -> CrystalGraph {
    let vertices = enumerate_hvt(shape, max_entry, arm, leg);
    graph_on(vertices, max_entry)
}

pub fn graph_on(vertices: Vec<HookValuedTableau>, max_entry: Letter) -> CrystalGraph {
    let index: HashMap<&HookValuedTableau, usize> = vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut edges: Vec<(usize, usize, Letter)> = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, v)| {
            (1..max_entry)
                .filter_map(|i| {
                    let w = f(v, i)?;
                    let target = *index.get(&w).unwrap_or_else(|| panic!("f_{i}({v}) = {w} left the vertex set"));
                    Some((k, target, i))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    edges.sort();
    CrystalGraph { vertices, edges, max_entry }
}

impl CrystalGraph {
    /// Connected components (ignoring edge direction), each sorted, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for &v in &adj[comp[k]] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn highest_weight_vertices(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.vertices.len()];
        for &(_, v, _) in &self.edges {
            has_in[v] = true;
        }
        (0..self.vertices.len()).filter(|&k| !has_in[k]).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (k, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{k} [label=\"{}\"];\n", v.to_compact()));
        }
        for &(u, v, i) in &self.edges {
            s.push_str(&format!("  v{u} -> v{v} [label=\"{i}\", colorscheme=set19, color={}];\n", (i - 1) % 9 + 1));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_entry": self.max_entry,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(u, v, i)| serde_json::json!({"source": u, "target": v, "i": i})).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of comparing every component with the crystal on semistandard tableaux of its highest weight.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub vertices: usize,
    pub components: usize,
    pub failures: Vec<String>,
}

/// Checks that each component has one highest-weight vertex of partition weight `nu` and that the
/// component is isomorphic, as an edge-coloured graph, to the crystal of SSYT(nu) with entries at most
/// `max_entry`, via a weight-preserving bijection.
pub fn check_components(graph: &CrystalGraph) -> ComponentReport {
    let m = graph.max_entry;
    let comps = graph.components();
    let hws = graph.highest_weight_vertices();
    let mut ssyt_cache: HashMap<Partition, CrystalGraph> = HashMap::new();
    let mut failures = Vec::new();
    for comp in &comps {
        let tops: Vec<usize> = comp.iter().copied().filter(|v| hws.binary_search(v).is_ok()).collect();
        if tops.len() != 1 {
            failures.push(format!("component of {} has {} highest-weight vertices", graph.vertices[comp[0]], tops.len()));
            continue;
        }
        let top = &graph.vertices[tops[0]];
        let nu = match Partition::from_padded(top.weight()) {
            Ok(p) => p,
            Err(_) => {
                failures.push(format!("highest weight of {top} is not a partition"));
                continue;
            }
        };
        let ssyt = ssyt_cache.entry(nu.clone()).or_insert_with(|| build_crystal_graph(&nu, m, 0, 0));
        if let Err(msg) = isomorphic_from(graph, comp, tops[0], ssyt) {
            failures.push(format!("component of {top}: {msg}"));
        }
    }
    ComponentReport { vertices: graph.vertices.len(), components: comps.len(), failures }
}

fn isomorphic_from(g: &CrystalGraph, comp: &[usize], top: usize, h: &CrystalGraph) -> Result<(), String> {
    if comp.len() != h.vertices.len() {
        return Err(format!("{} vertices against {} in the tableau crystal", comp.len(), h.vertices.len()));
    }
    let h_tops = h.highest_weight_vertices();
    if h_tops.len() != 1 {
        return Err("tableau crystal is not connected".into());
    }
    let out_edges = |gr: &CrystalGraph| {
        let mut m: HashMap<(usize, Letter), usize> = HashMap::new();
        let mut inn: HashMap<(usize, Letter), usize> = HashMap::new();
        for &(u, v, i) in &gr.edges {
            m.insert((u, i), v);
            inn.insert((v, i), u);
        }
        (m, inn)
    };
    let (g_out, g_in) = out_edges(g);
    let (h_out, h_in) = out_edges(h);
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut back: HashMap<usize, usize> = HashMap::new();
    map.insert(top, h_tops[0]);
    back.insert(h_tops[0], top);
    let mut queue = VecDeque::from([top]);
    while let Some(u) = queue.pop_front() {
        let hu = map[&u];
        if g.vertices[u].weight() != h.vertices[hu].weight() {
            return Err(format!("weight differs at {}", g.vertices[u]));
        }
        for i in 1..g.max_entry {
            for (ge, he) in [(&g_out, &h_out), (&g_in, &h_in)] {
                match (ge.get(&(u, i)), he.get(&(hu, i))) {
                    (None, None) => {}
                    (Some(&v), Some(&hv)) => match (map.get(&v), back.get(&hv)) {
                        (None, None) => {
                            map.insert(v, hv);
                            back.insert(hv, v);
                            queue.push_back(v);
                        }
                        (Some(&x), Some(&y)) if x == hv && y == v => {}
                        _ => return Err(format!("inconsistent {i}-edge at {}", g.vertices[u])),
                    },
                    _ => return Err(format!("{i}-edge present on one side only at {}", g.vertices[u])),
                }
            }
        }
    }
    if map.len() != comp.len() {
        return Err(format!("only {} of {} vertices reached", map.len(), comp.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> HookValuedTableau {
        s.parse().unwrap()
    }

    #[test]
    fn single_cell_word() {
        assert_eq!(column_reading_word(&t("1+1^2")), vec![2, 1, 1]);
        assert_eq!(column_reading_word(&t("1")), vec![1]);
    }

    #[test]
    fn pairing_counts() {
        let p = pair_word(&[2, 1, 1, 2], 1);
        assert_eq!(p.phi(), 1);
        assert_eq!(p.epsilon(), 1);
        assert_eq!(pair_word(&[], 3).phi(), 0);
    }

    #[test]
    fn highest_weight_examples() {
        assert!(is_highest_weight(&t("1|1^2"), None));
        assert!(!is_highest_weight(&t("2"), None));
    }

    #[test]
    fn small_graphs() {
        let g = build_crystal_graph(&"1".parse().unwrap(), 2, 0, 0);
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
        let g = build_crystal_graph(&"2".parse().unwrap(), 2, 0, 0);
        assert_eq!(g.vertices.len(), 3);
        assert!(g.edges.iter().all(|e| e.2 == 1));
        assert_eq!(g.edges.len(), 2);
        let g = build_crystal_graph(&"1".parse().unwrap(), 3, 0, 1);
        let names: Vec<String> = g.vertices.iter().map(|v| v.to_compact()).collect();
        assert_eq!(names, vec!["1^2", "1^3", "2^3"]);
        assert_eq!(g.edges, vec![(0, 1, 2), (1, 2, 1)]);
        assert!(check_components(&g).failures.is_empty());
    }
}
