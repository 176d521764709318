//! Zimin types of words, online and in logarithmic time on Fibonacci words.
//!
//! The Zimin patterns `Z_1 = x_1`, `Z_k = Z_{k-1} x_k Z_{k-1}` are the
//! canonical unavoidable patterns; the *Zimin type* of a word is the largest
//! rank that embeds onto the whole word. This crate computes Zimin types
//! online in linear time via short-border arrays ([`borders`], [`ztype`]),
//! searches Zimin patterns inside words in quadratic time ([`search`]),
//! answers type and embedding queries about the infinite Fibonacci word in
//! `O(log n)` through the Zeckendorf numeration system ([`fibonacci`]), and
//! determines exact avoidance thresholds `f(n,k)` and minimal-word counts
//! `m(n,k)` by exhaustive search plus closed-form bounds ([`avoidance`]).
//! Definition-driven reference implementations live in [`oracle`].

pub mod avoidance;
pub mod borders;
pub mod error;
pub mod fibonacci;
pub mod oracle;
pub mod pattern;
pub mod search;
pub mod word;
pub mod ztype;

pub use borders::{border_array, short_border_array, BorderState, PushStep};
pub use error::{Error, Result};
pub use pattern::{apply_morphism, iterate_morphism, zimin_word, Morphism, ZiminPattern};
pub use search::{max_factor_ztype, search_zimin, Occurrence};
pub use word::Word;
pub use ztype::{decompose, max_sequence_value, ztype, ztype_prefixes};
