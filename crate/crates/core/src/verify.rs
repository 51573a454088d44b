use rayon::prelude::*;
use serde::Serialize;

use crate::crowding::{crowd, k_lambda_member};
use crate::crystal::{build_crystal_graph, check_components, column_reading_word, Direction, apply_crystal};
use crate::flagged::{enumerate_flagged, Orientation};
use crate::partition::Partition;
use crate::tableau::{enumerate_hvt, HookValuedTableau, Letter};
use crate::uncrowding::{multiset_uncrowd, uncrowd, uncrowd_bump, uncrowd_mvt, UncrowdResult};
use crate::word::{restrict_to_pair, rsk_insert};

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.instances += other.instances;
        self.failures += other.failures;
        self.first_failure = self.first_failure.or(other.first_failure);
        self
    }

    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.name,
            self.instances,
            self.failures,
            self.first_failure.as_deref().unwrap_or("-")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Roundtrip,
    Intertwine,
    Knuth,
    MvtAgree,
    Stembridge,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Roundtrip, Suite::Intertwine, Suite::Knuth, Suite::MvtAgree, Suite::Stembridge];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Intertwine => "intertwine",
            Suite::Knuth => "knuth",
            Suite::MvtAgree => "mvt-agree",
            Suite::Stembridge => "stembridge",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected roundtrip, intertwine, knuth, mvt-agree or stembridge)"))
    }
}

/// Instance bounds of a suite run: one shape, letters up to `max_entry`, exact arm and leg excess.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub shape: Partition,
    pub max_entry: Letter,
    pub arm: usize,
    pub leg: usize,
}

/// Runs `check` on every item in parallel; a check returns an error message on failure.
fn tally<T: Sync>(name: &str, items: &[T], check: impl Fn(&T) -> Result<(), String> + Sync) -> VerifyReport {
    let failures: Vec<String> = items.par_iter().filter_map(|x| check(x).err()).collect();
    VerifyReport {
        name: name.to_string(),
        instances: items.len(),
        failures: failures.len(),
        first_failure: failures.into_iter().next(),
    }
}

pub fn run_suite(suite: Suite, scope: &Scope) -> VerifyReport {
    match suite {
        Suite::Roundtrip => roundtrip(scope),
        Suite::Intertwine => intertwine(scope),
        Suite::Knuth => knuth(scope),
        Suite::MvtAgree => mvt_agree(scope),
        Suite::Stembridge => stembridge(scope),
    }
}

fn instances(scope: &Scope) -> Vec<HookValuedTableau> {
    enumerate_hvt(&scope.shape, scope.max_entry, scope.arm, scope.leg)
}

fn uncrowd_invariants(t: &HookValuedTableau, u: &UncrowdResult, orientation: Orientation) -> Result<(), String> {
    if u.p.weight() != t.weight() {
        return Err(format!("{t}: uncrowding changed the weight"));
    }
    if u.q.orientation() != orientation || u.q.validate().is_err() {
        return Err(format!("{t}: recording tableau {} is not {orientation:?}", u.q));
    }
    if *u.q.inner() != t.shape() || *u.q.outer() != u.p.shape() {
        return Err(format!("{t}: recording tableau {} has the wrong shapes", u.q));
    }
    let kind_ok = match orientation {
        Orientation::ColumnFlagged => u.p.is_set_valued(),
        Orientation::RowFlagged => u.p.is_multiset_valued(),
    };
    if !kind_ok {
        return Err(format!("{t}: uncrowded tableau {} still has excess", u.p));
    }
    Ok(())
}

/// Crowding undoes uncrowding on every tableau; uncrowding undoes crowding on every member of the crowding domain.
/// Also checks the flag conditions and weight preservation of both uncrowding variants.
pub fn roundtrip(scope: &Scope) -> VerifyReport {
    let ts = instances(scope);
    let forward = tally("roundtrip C(U(T))=T", &ts, |t| {
        let u = uncrowd(t);
        uncrowd_invariants(t, &u, Orientation::ColumnFlagged)?;
        uncrowd_invariants(t, &multiset_uncrowd(t), Orientation::RowFlagged)?;
        match crowd(&u.p, &u.q) {
            Ok((back, _)) if back == *t => Ok(()),
            Ok((back, _)) => Err(format!("{t}: crowding returned {back}")),
            Err(e) => Err(format!("{t}: crowding failed: {e}")),
        }
    });
    let mut pairs = Vec::new();
    let target = scope.shape.size() + scope.arm;
    for mu in Partition::all_of_size(target).into_iter().filter(|mu| mu.contains(&scope.shape)) {
        let Ok(fs) = enumerate_flagged(&scope.shape, &mu, Orientation::ColumnFlagged) else { continue };
        if fs.is_empty() {
            continue;
        }
        for s in enumerate_hvt(&mu, scope.max_entry, 0, scope.leg) {
            for f in &fs {
                pairs.push((s.clone(), f.clone()));
            }
        }
    }
    let members: Vec<_> = pairs.into_par_iter().filter(|(s, f)| k_lambda_member(s, f)).collect();
    let backward = tally("roundtrip U(C(S,F))=(S,F)", &members, |(s, f)| {
        let (t, _) = crowd(s, f).map_err(|e| format!("{s} with {f}: {e}"))?;
        if t.weight() != s.weight() {
            return Err(format!("{s} with {f}: crowding changed the weight"));
        }
        let u = uncrowd(&t);
        if u.p == *s && u.q == *f {
            Ok(())
        } else {
            Err(format!("{s} with {f}: crowded to {t}, uncrowded to {} with {}", u.p, u.q))
        }
    });
    // each enumerated tableau is one instance; its crowding-domain partner is checked alongside
    let mut report = VerifyReport { name: "roundtrip".into(), ..forward.merge(backward) };
    report.instances = ts.len();
    if members.len() != ts.len() {
        report.failures += 1;
        report.first_failure.get_or_insert(format!(
            "{} tableaux but {} members of the crowding domain",
            ts.len(),
            members.len()
        ));
    }
    report
}

fn intertwine_one(
    t: &HookValuedTableau,
    i: Letter,
    dir: Direction,
    map: fn(&HookValuedTableau) -> UncrowdResult,
) -> Result<(), String> {
    let u = map(t);
    let moved_t = apply_crystal(t, i, dir).into_option();
    let moved_p = apply_crystal(&u.p, i, dir).into_option();
    match (moved_t, moved_p) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) => {
            let ua = map(&a);
            if ua.p != b {
                Err(format!("{t}, {dir:?}_{i}: P of image is {}, image of P is {b}", ua.p))
            } else if ua.q != u.q {
                Err(format!("{t}, {dir:?}_{i}: recording tableau changed"))
            } else {
                Ok(())
            }
        }
        (a, b) => Err(format!("{t}, {dir:?}_{i}: annihilation differs (tableau {}, uncrowded {})", a.is_some(), b.is_some())),
    }
}

/// Both uncrowding maps commute with every e_i and f_i.
pub fn intertwine(scope: &Scope) -> VerifyReport {
    let ts = instances(scope);
    let m = scope.max_entry;
    tally("intertwine", &ts, |t| {
        for i in 1..m {
            for dir in [Direction::Lower, Direction::Raise] {
                intertwine_one(t, i, dir, uncrowd)?;
                intertwine_one(t, i, dir, multiset_uncrowd)?;
            }
        }
        Ok(())
    })
}

/// A single arm bump preserves the Knuth class of every two-letter restriction of the reading word.
pub fn knuth(scope: &Scope) -> VerifyReport {
    let ts = instances(scope);
    tally("knuth", &ts, |t| {
        let next = uncrowd_bump(t);
        let (a, b) = (column_reading_word(t), column_reading_word(&next));
        for i in 1..t.max_letter().max(1) {
            if rsk_insert(&restrict_to_pair(&a, i)) != rsk_insert(&restrict_to_pair(&b, i)) {
                return Err(format!("{t}: restriction to {i},{} changes Knuth class after bumping to {next}", i + 1));
            }
        }
        Ok(())
    })
}

/// Bumping and RSK uncrowding agree on multiset-valued tableaux. Scopes with leg excess are empty.
pub fn mvt_agree(scope: &Scope) -> VerifyReport {
    let ts = if scope.leg == 0 { instances(scope) } else { Vec::new() };
    tally("mvt-agree", &ts, |t| {
        let (a, b) = (uncrowd(t), uncrowd_mvt(t));
        if a.p == b.p && a.q == b.q {
            Ok(())
        } else {
            Err(format!("{t}: bumping gives {} / {}, RSK gives {} / {}", a.p, a.q, b.p, b.q))
        }
    })
}

/// Every crystal component is a copy of a semistandard crystal.
pub fn stembridge(scope: &Scope) -> VerifyReport {
    let g = build_crystal_graph(&scope.shape, scope.max_entry, scope.arm, scope.leg);
    let r = check_components(&g);
    VerifyReport {
        name: "stembridge".into(),
        instances: r.components,
        failures: r.failures.len(),
        first_failure: r.failures.into_iter().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scope_passes_everything() {
        let scope = Scope { shape: "2,1".parse().unwrap(), max_entry: 3, arm: 1, leg: 1 };
        for suite in Suite::ALL {
            let r = run_suite(suite, &scope);
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
