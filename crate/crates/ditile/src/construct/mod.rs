//! Proof procedures run as algorithms with verified pre- and postconditions:
//! the local-swap augmentation to a T₃-factor, nested dominant-neighbourhood
//! tournament building, tiling extension and blow-up iteration, semi-degree
//! preserving random splits, round-based cycle tilings and the recursive
//! cycle partition.

mod augment;
mod extend;
mod nested;
mod recurse;
mod rounds;
mod split;

pub use augment::{t3_augment, AugmentStep, AugmentTrace, StepKind};
pub use extend::{
    blowup_iterate, expand_tiling, tiling_extend, tournament_blowup_factor, BlowupOutcome,
    BlowupParams, ExtendOutcome, RoundRecord,
};
pub use nested::greedy_tr_nested;
pub use recurse::{recursive_cycle_partition, RecurseParams};
pub use rounds::{cycle_multiset_tiling, round_cycle_tiling, QSpec, RoundTiling, RoundTilingParams};
pub use split::{random_split, random_split_subset, split_bound_holds, Split};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;

/// min(|N⁺(v) ∩ set|, |N⁻(v) ∩ set|).
pub(crate) fn semi_degree_within(g: &Digraph, v: usize, set: &VertexSet) -> usize {
    g.out_neighbors(v)
        .intersection_len(set)
        .min(g.in_neighbors(v).intersection_len(set))
}

/// δ⁰ of the subdigraph induced by `set`, computed in place.
pub(crate) fn delta_semi_within(g: &Digraph, set: &VertexSet) -> usize {
    set.iter()
        .map(|v| semi_degree_within(g, v, set))
        .min()
        .unwrap_or(0)
}
