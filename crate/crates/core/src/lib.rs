//! Laboratory for multiparametric random simplicial complexes.
//!
//! The crate provides:
//!
//! * finite simplicial complexes on a labeled vertex set with per-dimension
//!   face storage ([`complex`]),
//! * the multiparametric random model in which an `i`-simplex is kept with
//!   probability `p_i` once its boundary is present, together with the
//!   closed-form probability of sandwich events `A <= Y <= B` ([`model`]),
//! * rigid expansions: repeatedly adjoining every vertex that is uniquely
//!   determined by a subset of the current vertex set ([`expansion`]),
//! * the chain-with-external-vertices pattern pair and the combinatorial
//!   intersection predicates built on exchangeable vertices ([`pattern`]),
//! * closed-form and Monte Carlo expectation reports for clique embeddings
//!   and pattern occurrences ([`expectation`]),
//! * a small `key = value` parameter-file format shared with the CLI
//!   ([`config`]).

pub mod complex;
pub mod config;
pub mod error;
pub mod expansion;
pub mod expectation;
pub mod model;
pub mod numeric;
pub mod pattern;

pub use complex::{flag_completion, ComplexBuilder, Simplex, SimplicialComplex};
pub use config::ParamFile;
pub use error::Error;
pub use expansion::{
    expand_once, expand_to_fixpoint, is_seed, uniquely_determined, ExpansionTrace, Witnesses,
};
pub use expectation::{
    event_expectation, log_expected_ch, log_expected_clique_embeddings, log_pattern_probability,
    mc_estimate, taylor_tail, ExpectationReport, McEstimate, McEvent, TailComparison,
};
pub use model::{
    check_conditions, psi, sample_complex, sandwich_probability, ConditionReport, Level,
    ModelParams, ModelParamsBuilder,
};
pub use pattern::{
    adjacency_graph, build_pattern, count_pattern_occurrences, exchangeable, intersection_one,
    intersection_zero, is_closed_chain, separates_torus, PatternCounts, PatternPair, StarPattern,
};
