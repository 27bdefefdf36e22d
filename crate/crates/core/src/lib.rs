//! Exact combinatorics for cross-intersecting families of `k`-subsets.
//!
//! The crate covers subset orders (lex, colex, reversed colex) with
//! rank/unrank, shadows and the Kruskal–Katona minimum, lex compression of
//! cross-intersecting pairs, the closed-form product bounds together with the
//! families attaining them, and brute-force verifiers in [`oracle`] that check
//! every bound at small parameters.
//!
//! Subsets are 1-based at the API boundary and limited to ground sets of at
//! most 64 elements. All bound values are exact integers.

pub mod binom;
pub mod cross;
pub mod error;
pub mod exact;
pub mod family;
pub mod matching;
pub mod oracle;
pub mod orders;
pub mod shadows;

pub use binom::{binom, layer_size, MAX_N};
pub use cross::{
    build_extremal_pair, build_lemma7_decomposition, build_prop1_graph, check_proof_inequalities,
    find_block_matching, hilton_compress, is_cross_intersecting, is_cross_union, lemma7_bound,
    max_compatible_b, prop1_sum_bound, pyber_bound, thm1_bound, thm2_bound, BoundReport,
    ExtremalPair, Lemma7Decomposition, Relation, ReportVerdict, Thm2Bound,
};
pub use error::{Error, Result};
pub use family::{complement, family_complement, restrict, KSubset, Params, SetFamily};
pub use matching::BipartiteGraph;
pub use orders::{compare, initial_segment, rank, rank_duality_check, unrank, OrderKind, SegmentSpec};
pub use shadows::{
    kk_min_shadow, lovasz_bound, lovasz_root, mors_bound, shadow, LovaszRoot, ShadowQuery,
};
