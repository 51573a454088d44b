use std::collections::BTreeMap;

use hooktab::symfunc::{
    canonical_grothendieck, expand_in_basis, highest_weight_ssyt, phi_lambda, schur_decompose,
    schur_expansion_canonical, wt_lambda, Basis, BasisExpansion, CoefficientAB,
};
use hooktab::{HookValuedTableau, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn shapes_up_to(n: usize) -> Vec<Partition> {
    (1..=n).flat_map(Partition::all_of_size).collect()
}

// The crowding route (wt) and the crystal route (highest-weight tableaux) must agree on every Schur coefficient.
#[test]
fn weight_function_matches_highest_weight_count() {
    for lambda in shapes_up_to(3) {
        let bound = lambda.size() + 2;
        let hw = schur_expansion_canonical(&lambda, bound);
        for nu in shapes_up_to(bound) {
            let by_crowding = if nu.contains(&lambda) {
                wt_lambda(&highest_weight_ssyt(&nu), &lambda)
            } else {
                CoefficientAB::zero()
            };
            assert_eq!(by_crowding, hw.coefficient(&nu), "lambda={lambda} nu={nu}");
        }
    }
}

#[test]
fn small_weights() {
    let y = |s: &str| highest_weight_ssyt(&p(s));
    assert_eq!(wt_lambda(&y("1,1"), &p("1,1")), CoefficientAB::one());
    assert_eq!(wt_lambda(&y("2,1"), &p("2")), CoefficientAB::parse("b").unwrap());
    assert_eq!(wt_lambda(&y("3"), &p("2")), CoefficientAB::parse("2a").unwrap());
    assert_eq!(wt_lambda(&y("2,1,1"), &p("2")), CoefficientAB::parse("b^2").unwrap());
    assert_eq!(wt_lambda(&y("1,1,1"), &p("2")), CoefficientAB::zero());
}

#[test]
fn phi_counts_domain_members() {
    // (1,2) can only carry flag 1, and crowding 1|2 into 1+2 keeps the weight
    let s: HookValuedTableau = "1|2".parse().unwrap();
    assert_eq!(phi_lambda(&s, &p("1")), 1);
    let s: HookValuedTableau = "1^2|2^3 / 3".parse().unwrap();
    assert_eq!(phi_lambda(&s, &p("1,1")), 0);
    assert_eq!(phi_lambda(&"1|1".parse().unwrap(), &p("2")), 1);
}

// Schur-decomposing the monomial generating function reproduces the highest-weight expansion.
#[test]
fn schur_decomposition_of_generating_function() {
    for lambda in [p("1"), p("2"), p("1,1")] {
        let bound = 4;
        let poly = canonical_grothendieck(&lambda, bound, bound);
        assert!(poly.is_symmetric());
        let got = schur_decompose(&poly).unwrap();
        assert_eq!(got, schur_expansion_canonical(&lambda, bound).terms, "lambda={lambda}");
    }
}

// Every monomial of degree at most the bound is determined by plane partitions of size at most the bound.
#[test]
fn grothendieck_expansion_is_exact_below_bound() {
    for lambda in [p("1"), p("2"), p("1,1")] {
        for m in 2..=3 {
            let bound = 4;
            let e = expand_in_basis(&lambda, Basis::BigG, bound);
            assert_eq!(
                e.evaluate(m, bound),
                canonical_grothendieck(&lambda, m, bound),
                "lambda={lambda} m={m}"
            );
        }
    }
}

// The dual expansion does not truncate by degree, so compare one (α, β) bidegree at a time.
#[test]
fn dual_expansion_per_bidegree() {
    for lambda in [p("1"), p("2"), p("1,1")] {
        for total in 0..=2u32 {
            let n = lambda.size() + total as usize;
            let e = expand_in_basis(&lambda, Basis::SmallG, n);
            let m = 3;
            let lhs = canonical_grothendieck(&lambda, m, n);
            for a in 0..=total {
                let b = total - a;
                let pick = |x: &CoefficientAB| x.restrict(|i, j| i == a && j == b);
                let part = BasisExpansion {
                    basis: Basis::SmallG,
                    terms: e
                        .terms
                        .iter()
                        .map(|(k, v)| (k.clone(), pick(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect::<BTreeMap<_, _>>(),
                    truncation_bound: n,
                };
                assert_eq!(
                    part.evaluate(m, n),
                    lhs.map_coefficients(pick),
                    "lambda={lambda} alpha^{a} beta^{b}"
                );
            }
        }
    }
}
