//! Step-by-step versions of the cycle-merging arguments, each returning an
//! auditable [`Trace`] next to its result.

mod knots;
mod lotsknots;
mod multijoin;
mod multimerge;
mod provider;
mod ramsey;
mod trace;
mod verify;

pub use knots::{
    a2_bound, knot_extract, verify_ty, wprime_build, Candidate, KnotExtraction, TyReport, WPrime,
    WPrimeCase,
};
pub use lotsknots::{
    b_count, f_value, knots_driver, lambda_for_alpha, lotsknots, CountMode, DriverResult,
    LotsKnots, Schedule, StageBudget,
};
pub use multijoin::{
    complete_pattern_budget, complete_pattern_build, multijoin, JoinResult, PartitionedLink,
};
pub use multimerge::{
    bipartite_pattern_build, bipartite_ring_count, multimerge, BipartiteResult, MergeBranch,
    MergeResult,
};
pub use provider::{FillRule, GeometricProvider, LinkingProvider, SyntheticProvider};
pub use ramsey::{
    find_monochromatic_clique, ramsey_monochromatic_link, Coloring, MonochromaticLink,
};
pub use trace::{Trace, TraceStep};
pub use verify::{
    verify_cg6, verify_cg7, verify_cor3, verify_prop2, verify_ty_random, Cor3Report, Prop2Report,
    TrialFailure, VerifyReport,
};

use crate::cycles::{build_connecting_cycle, ConnectingCycleSpec, OrientedCycle, Traversal};
use crate::error::Result;

/// Joins `cycles` in order into one cycle whose path on each input is the
/// input's least edge run backwards, adding connector edges as needed.
pub(crate) fn connecting_cycle(
    p: &mut LinkingProvider,
    cycles: &[OrientedCycle],
) -> Result<OrientedCycle> {
    let mut spec =
        ConnectingCycleSpec::with_default_ends(p.graph(), cycles.to_vec(), Traversal::Against);
    spec.connectors = p.connect_all(&spec.connector_pairs())?;
    build_connecting_cycle(p.graph(), &spec)
}

/// Index of the class to keep: the largest, ties going to the class whose
/// first member comes first.
pub(crate) fn majority<K: PartialEq + Copy>(labels: &[K]) -> Option<K> {
    let mut classes: Vec<(K, usize)> = Vec::new();
    for &l in labels {
        match classes.iter_mut().find(|(k, _)| *k == l) {
            Some((_, c)) => *c += 1,
            None => classes.push((l, 1)),
        }
    }
    let mut best: Option<(K, usize)> = None;
    for (k, c) in classes {
        if best.is_none_or(|(_, b)| c > b) {
            best = Some((k, c));
        }
    }
    best.map(|(k, _)| k)
}
