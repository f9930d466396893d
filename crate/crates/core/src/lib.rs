//! Codes correcting transpositions of consecutive symbols in q-ary strings.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstring`]: strings over `Z_q`, run structure, and the disjoint and
//!   successive transposition channels.
//! * [`metric`]: exact descendant sets, the transposition distance, balls,
//!   error-correction predicates and exhaustive optimal-code search.
//! * [`single_codes`]: the syndrome construction over any alphabet and the
//!   binary construction built on a substitution-correcting inner code,
//!   with their single-transposition decoders.
//! * [`zero_error`]: block-concatenation codes that correct every pattern of
//!   transpositions, their decoder, size recurrence and growth rate.
//! * [`asymptotics`]: exact counting formulas, ball-size bounds, growth
//!   exponents and the Gilbert-Varshamov style rate curves.

pub mod asymptotics;
pub mod combin;
pub mod error;
pub mod metric;
pub mod qstring;
pub mod single_codes;
pub mod zero_error;

pub use error::{Error, Result};
pub use metric::{Code, Distance};
pub use qstring::{ChannelModel, QaryString, TranspositionPattern};

/// Largest `q^n` any enumeration will touch without an explicit override.
pub const ENUMERATION_LIMIT: u128 = 1 << 22;

/// A block code with a decoder for transposition errors.
pub trait TranspositionCode {
    fn alphabet(&self) -> usize;
    fn length(&self) -> usize;
    fn contains(&self, x: &QaryString) -> Result<bool>;
    /// Maps a received string back to the transmitted codeword, or fails with
    /// [`Error::Uncorrectable`].
    fn decode(&self, y: &QaryString) -> Result<QaryString>;
    fn enumerate(&self) -> Result<Code>;
}
