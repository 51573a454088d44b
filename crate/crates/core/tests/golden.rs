use std::collections::BTreeMap;

use hooktab::uncrowding::{uncrowd, uncrowd_mvt_steps, uncrowd_svt};
use hooktab::{enumerate_flagged, enumerate_flagged_any_inner, HookValuedTableau, Orientation, Partition};

fn t(s: &str) -> HookValuedTableau {
    s.parse().unwrap()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn rsk_uncrowding_of_multiset_tableau() {
    let m = t("1|1+1|4 / 2+3,3|3+4,5 / 4+5");
    let steps = uncrowd_mvt_steps(&m);
    let got: Vec<(HookValuedTableau, BTreeMap<(usize, usize), u32>, Partition)> =
        steps.iter().map(|(u, f)| (u.clone(), f.entries().clone(), f.inner().clone())).collect();
    let want = vec![
        (t("4"), BTreeMap::new(), p("1")),
        (t("1|1|4|4 / 3|5"), BTreeMap::from([((1, 3), 2), ((1, 4), 3), ((2, 2), 1)]), p("2,1")),
        (
            t("1|1|1|3|4|4 / 2|3|3|5 / 4|5"),
            BTreeMap::from([((1, 4), 2), ((1, 5), 3), ((1, 6), 5), ((2, 3), 1), ((2, 4), 3), ((3, 2), 1)]),
            p("3,2,1"),
        ),
    ];
    assert_eq!(got, want);
    let u = uncrowd(&m);
    assert_eq!((&u.p, &u.q), (&steps[2].0, &steps[2].1));
}

#[test]
fn recording_of_uncrowding_example_has_outer_shape_632() {
    let u = uncrowd(&t("1|1+1^2|5^7 / 2+3,3^4,5|6+6 / 6+7^8"));
    assert_eq!(*u.q.outer(), p("6,3,2"));
    assert_eq!(u.paths.len(), 5);
    assert_eq!(u.paths[0], vec![(2, 2), (1, 3), (1, 4)]);
}

#[test]
fn set_valued_uncrowding_records_rows() {
    let (y, q) = uncrowd_svt(&t("1^2|2^3 / 3")).unwrap();
    assert!(y.is_semistandard_young());
    assert_eq!(y.weight(), vec![1, 2, 2]);
    assert_eq!(q.orientation(), Orientation::RowFlagged);
    assert_eq!(q.len(), 2);
}

#[test]
fn flagged_enumeration_counts() {
    // with a fixed inner shape only the all-ones column works
    assert_eq!(enumerate_flagged(&p("2"), &p("2,1,1"), Orientation::RowFlagged).unwrap().len(), 1);
    // over every admissible inner shape
    assert_eq!(enumerate_flagged_any_inner(&p("2,1,1"), Orientation::RowFlagged).len(), 4);
    assert_eq!(enumerate_flagged(&p("2,1"), &p("2,1"), Orientation::ColumnFlagged).unwrap().len(), 1);
}

#[test]
fn ascii_layout() {
    let x = t("1+1^2|2 / 3");
    assert_eq!(x.to_ascii(), "3\n--\n2\n11 | 2\n---+--\n");
}
