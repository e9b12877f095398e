//! Balanced sequences with prescribed letter frequencies.
//!
//! [`builder`] produces, for any positive exact frequency vector over `d`
//! letters, a sequence that is `⌈log₂ d⌉`-balanced, by recursively
//! colouring 1-balanced mechanical words. [`analyzers`] measures balance,
//! factor complexity, frequencies, discrepancy and periods of finite
//! words, and [`oracle`] recomputes the same quantities by brute force.

pub mod analyzers;
pub mod builder;
pub mod cli;
pub mod colouring;
pub mod constant_gap;
pub mod error;
pub mod exact_arith;
pub mod mechanical;
pub mod oracle;
pub mod sequences;
mod suffix_automaton;

pub use error::{Error, Result};
pub use exact_arith::FieldElement;
pub use sequences::{Alphabet, FrequencyVector, SequenceStream, Symbol, Word};
