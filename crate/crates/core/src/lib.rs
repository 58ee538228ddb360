//! Iterated local model tournaments.
//!
//! Each step clones every node of a tournament, wires the clone like its
//! parent, points it at the parent, and orients the clone block either like
//! the original (a 1-step) or reversed (a 0-step). This crate generates the
//! iterates and measures them: motif counts and densities, diameter,
//! connectivity, domination, colouring, cop number, and embeddings of small
//! tournaments into iterates.
//!
//! ```
//! use ilmt::{fixtures, generate, census3, GeneratingSequence};
//!
//! let s: GeneratingSequence = "0".parse().unwrap();
//! let (g1, _) = generate(&fixtures::d3(), &s, 1).unwrap();
//! assert_eq!(census3(&g1).a, 8);
//! ```

pub mod bits;
pub mod census;
pub mod edgelist;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod iso;
pub mod props;
pub mod pursuit;
pub mod rational;
pub mod tournament;
pub mod verify;

pub use census::{
    census3, census3_naive, census3_recurrence, census4, census4_enumerate, d3_proportion_limit,
    density, distinguish_sequences, markov_model, quasirandom_trace, Census3, Census4,
    DensityReport, FourType, LimitRegime, MarkovModel,
};
pub use embed::{embed, embed_full, universality_sweep, verify_embedding, EmbeddingMap};
pub use error::{Error, Result};
pub use generator::{
    generate, generate_oriented, ilmt_step, oriented_step, CloneMap, GeneratingSequence,
    Generator, StepKind,
};
pub use iso::{automorphism_count, is_isomorphic};
pub use props::{analyze, AnalyzeOptions, InvariantReport};
pub use pursuit::{cop_number, cops_win, SolveResult};
pub use rational::Ratio;
pub use tournament::{DegreeProfile, OrientedGraph, Tournament};
pub use verify::{run_suite, Suite, VerifyReport};
