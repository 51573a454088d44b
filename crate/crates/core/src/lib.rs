//! Hook-valued tableaux and the maps between them: column reading words and crystal operators,
//! arm and leg uncrowding, crowding, and the symmetric-function expansions they produce.
//!
//! Coordinates are 1-based `(row, col)` with row 1 at the bottom.

pub mod crowding;
pub mod crystal;
pub mod flagged;
pub mod partition;
pub mod rpp;
pub mod symfunc;
pub mod tableau;
pub mod uncrowding;
pub mod verify;
pub mod word;

pub use crowding::{crowd, crowd_bump, crowd_checked, crowding_plan, k_lambda_member, CrowdError, CrowdingPlan, CrowdingTrace};
pub use crystal::{
    apply_crystal, build_crystal_graph, check_components, column_reading_word, e, epsilon, f, is_highest_weight, pair,
    phi, CrystalGraph, CrystalOutcome, Direction, PairingResult,
};
pub use flagged::{enumerate_flagged, enumerate_flagged_any_inner, FlaggedError, FlaggedTableau, Orientation};
pub use partition::Partition;
pub use rpp::{enumerate_rpp, ReversePlanePartition};
pub use symfunc::{
    canonical_grothendieck, dual_grothendieck, expand_in_basis, mvt_generating_function, phi_lambda, rpp_eval_and_word,
    schur_decompose, schur_expansion_canonical, schur_poly, stable_grothendieck, svt_reading_word, wt_lambda, Basis,
    BasisExpansion, BetaValue, CoefficientAB, TruncatedSymmetricPolynomial,
};
pub use tableau::{enumerate_hvt, Coord, HookEntry, HookValuedTableau, Letter, MultisetValuedTableau, SetValuedTableau, TableauError};
pub use uncrowding::{
    multiset_uncrowd, uncrowd, uncrowd_mvt, uncrowd_svt, uncrowd_svt_inverse, InsertionPath, UncrowdError, UncrowdResult,
};
pub use verify::{run_suite, Scope, Suite, VerifyReport};
pub use word::{knuth_equivalent, rsk_insert, Word};
