//! Exact arithmetic for the Tribonacci family.
//!
//! Three integer sequences share the characteristic polynomial
//! `x³ - x² - x - 1`:
//!
//! * `T_n`, the Tribonacci numbers (0, 1, 1, 2, 4, ...),
//! * `S_n = α^n + β^n + γ^n` (3, 1, 3, 7, 11, ...),
//! * `C_n = (αβ)^n + (αγ)^n + (βγ)^n` (3, -1, -1, 5, -5, ...).
//!
//! The crate evaluates them by recurrence ([`seqcore`]), by powers of the
//! 3×3 Tribomatrix ([`tribomatrix`]), by Binet sums with certified rounding
//! ([`analytic`]) and by generating-function expansion ([`genfunc`]). The
//! [`identities`] module checks a catalogue of identities between them over
//! exact index ranges, and [`oeis`] reads and writes OEIS b-files.

pub mod analytic;
pub mod genfunc;
pub mod identities;
pub mod oeis;
pub mod seqcore;
pub mod tribomatrix;

mod error;

pub use error::{Error, Result};
pub use seqcore::{c_even, c_seq, s_lucas, sequence_range, tribonacci, SequenceKind};
