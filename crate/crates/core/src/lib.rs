//! A laboratory for Hopcroft's DFA minimization algorithm.
//!
//! The algorithm's open choices (splitter-list order, equal-size ties and the
//! placement of re-split queued blocks) are explicit parameters, each run is
//! instrumented with the total splitter mass, and decisions can be recorded,
//! replayed and searched exhaustively. The crate also carries the
//! cover-automata variant of the algorithm with a brute-force similarity
//! oracle.

pub mod cover;
pub mod debruijn;
pub mod dfa;
pub mod dot;
pub mod error;
pub mod hopcroft;
pub mod oracle;
pub mod partition;
pub mod random;
pub mod report;
pub mod worklist;

pub use cover::{
    is_cover_automaton, korner_minimize, merge_similar, merge_to_fixpoint, minimal_dfca_check, right_language_lengths,
    similar_states, state_levels, CoverMinimization, CoverPipeline, CoverSpec, LevelMap,
};
pub use debruijn::{cyclic_automaton, de_bruijn_sequence, is_de_bruijn, state_signature, BinaryWord};
pub use dfa::{validate_dfa, Dfa};
pub use error::{Error, Result};
pub use hopcroft::{
    hopcroft_minimize, quotient, run_with_trace, ChoiceTrace, Decision, DecisionSite, EqualSizeChoice, Hopcroft,
    Minimization, Placement, RunStats, Side, SiteKind, SplitEvent, SplitterRecord, TiePolicy,
};
pub use oracle::{
    dfa_equivalent, enumerate_cyclic, exhaustive_tie_search, moore_partition, CyclicRow, Objective, SearchOptions,
    SearchResult,
};
pub use partition::{BlockId, RefinablePartition};
pub use random::{random_dfa, random_lasso};
pub use worklist::{SplitterEntry, Strategy, Worklist};
