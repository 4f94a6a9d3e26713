//! Sign sequences, pair partitions and the maps between them.

mod enumerate;
mod epsilon;
mod partition;

pub use enumerate::{
    enumerate_ncpp, enumerate_pp, enumerate_pp_eps, enumerate_pp_of, pp_eps_count_formula, Pairings,
};
pub use epsilon::{all_words, plus_sequences, EpsilonClass, EpsilonSequence};
pub use partition::{counterpart, counterpart_on, glue, ComponentDecomposition, PairPartition};
