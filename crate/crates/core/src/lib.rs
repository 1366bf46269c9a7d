//! The permutation code `b`: a bijection between permutations of length `n`
//! and subexcedant sequences of length `n` that carries
//! `(Des, Ides, LrM, Lrm, RlM)` to `(Asc, Row, Pos0, Max, Rlm)`.
//!
//! - [`word`]: permutations, subexcedant sequences and set-valued statistics.
//! - [`lehmer`]: the Lehmer code and Dumont's statistic.
//! - [`slicer`]: the lambda classification, slices, profiles and `b` itself.
//! - [`inverse`]: `b^-1`, reconstructed from labels and profile sizes.
//! - [`enumerate`]: exhaustive generators, distribution tables and verifiers.

pub mod enumerate;
pub mod error;
pub mod inverse;
pub mod lehmer;
pub mod slicer;
pub mod word;

pub use enumerate::{DistTable, Options, Report, Side};
pub use error::{Error, Result};
pub use inverse::{b_decode, roundtrip_check};
pub use lehmer::{dumont_stat, lehmer_decode, lehmer_encode};
pub use slicer::{b_encode, lambda_perm, lambda_seq, profiles, slices, LambdaClass};
pub use word::{FiveTuple, Permutation, PositionSet, SubexcedantSeq};
