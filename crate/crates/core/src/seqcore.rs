//! Exact evaluation of the Tribonacci family on all of ℤ.
//!
//! Every sequence here satisfies an order-3 linear recurrence whose last
//! coefficient is ±1, so the recurrence can be run backwards without
//! division. That is how negative indices are defined: the unique
//! bi-infinite extension through the three seed values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The three sequences the library knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `T_n`, seeds 0, 1, 1.
    Tribonacci,
    /// `S_n = α^n + β^n + γ^n`, seeds 3, 1, 3.
    GeneralizedLucas,
    /// `C_n = (αβ)^n + (αγ)^n + (βγ)^n`, seeds 3, -1, -1.
    MinorSum,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [
        SequenceKind::Tribonacci,
        SequenceKind::GeneralizedLucas,
        SequenceKind::MinorSum,
    ];

    /// Single-letter symbol (`T`, `S`, `C`).
    pub fn symbol(self) -> &'static str {
        match self {
            SequenceKind::Tribonacci => "T",
            SequenceKind::GeneralizedLucas => "S",
            SequenceKind::MinorSum => "C",
        }
    }

    /// The OEIS entry the sequence is filed under.
    pub fn oeis_id(self) -> &'static str {
        match self {
            SequenceKind::Tribonacci => "A000073",
            SequenceKind::GeneralizedLucas => "A001644",
            SequenceKind::MinorSum => "A073145",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseKindError(String);

impl fmt::Display for ParseKindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown sequence `{}` (expected T, S or C)", self.0)
    }
}

impl std::error::Error for ParseKindError {}

impl FromStr for SequenceKind {
    type Err = ParseKindError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t" | "tribonacci" => Ok(SequenceKind::Tribonacci),
            "s" | "lucas" | "generalizedlucas" => Ok(SequenceKind::GeneralizedLucas),
            "c" | "minorsum" => Ok(SequenceKind::MinorSum),
            _ => Err(ParseKindError(s.to_string())),
        }
    }
}

/// An order-3 recurrence `a_n = c1·a_{n-1} + c2·a_{n-2} + c3·a_{n-3}` with
/// `c3 = ±1` and seeds `a_0, a_1, a_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence3 {
    coeffs: [i64; 3],
    seeds: [BigInt; 3],
}

impl Recurrence3 {
    /// # Panics
    ///
    /// Panics if the last coefficient is not ±1; the backward step relies on it.
    pub fn new(coeffs: [i64; 3], seeds: [BigInt; 3]) -> Self {
        assert!(
            coeffs[2] == 1 || coeffs[2] == -1,
            "last recurrence coefficient must be ±1"
        );
        Recurrence3 { coeffs, seeds }
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.coeffs
    }

    pub fn seeds(&self) -> &[BigInt; 3] {
        &self.seeds
    }

    /// Values at indices 0, 1, 2, ...
    pub fn forward(&self) -> Forward<'_> {
        Forward {
            rec: self,
            index: 0,
            window: self.seeds.clone(),
        }
    }

    /// Values at indices -1, -2, -3, ...
    pub fn backward(&self) -> Backward<'_> {
        Backward {
            rec: self,
            index: 0,
            window: self.seeds.clone(),
        }
    }

    /// Exact value at a single index.
    pub fn value(&self, n: i64) -> BigInt {
        if n >= 0 {
            self.forward().nth(n as usize).map(|(_, v)| v)
        } else {
            self.backward().nth((-(n + 1)) as usize).map(|(_, v)| v)
        }
        .expect("recurrence iterators are infinite")
    }

    /// Values for every index in `[lo, hi]`, in increasing index order.
    pub fn range(&self, lo: i64, hi: i64) -> Result<Vec<(i64, BigInt)>> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        if lo < 0 {
            let mut neg: Vec<_> = self
                .backward()
                .skip_while(|(i, _)| *i > hi)
                .take_while(|(i, _)| *i >= lo)
                .collect();
            neg.reverse();
            out.extend(neg);
        }
        if hi >= 0 {
            out.extend(
                self.forward()
                    .skip_while(|(i, _)| *i < lo)
                    .take_while(|(i, _)| *i <= hi),
            );
        }
        Ok(out)
    }
}

/// Forward walk of a [`Recurrence3`].
#[derive(Debug, Clone)]
pub struct Forward<'a> {
    rec: &'a Recurrence3,
    index: i64,
    /// `[a_i, a_{i+1}, a_{i+2}]`
    window: [BigInt; 3],
}

impl Iterator for Forward<'_> {
    type Item = (i64, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let [c1, c2, c3] = self.rec.coeffs;
        let [a0, a1, a2] = &self.window;
        let next = a2 * c1 + a1 * c2 + a0 * c3;
        let out = std::mem::replace(&mut self.window[0], next);
        self.window.rotate_left(1);
        let i = self.index;
        self.index += 1;
        Some((i, out))
    }
}

/// Backward walk of a [`Recurrence3`].
#[derive(Debug, Clone)]
pub struct Backward<'a> {
    rec: &'a Recurrence3,
    /// index of `window[0]`
    index: i64,
    window: [BigInt; 3],
}

impl Iterator for Backward<'_> {
    type Item = (i64, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let [c1, c2, c3] = self.rec.coeffs;
        let [a0, a1, a2] = &self.window;
        // a_{i+2} = c1·a_{i+1} + c2·a_i + c3·a_{i-1}, and c3 = ±1 is its own inverse
        let prev = (a2 - a1 * c1 - a0 * c2) * c3;
        self.window[2] = prev.clone();
        self.window.rotate_right(1);
        self.index -= 1;
        Some((self.index, prev))
    }
}

/// Seed values for the three sequences.
///
/// The default is the published one; other values exist for fault
/// injection in the verification engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    pub t: [BigInt; 3],
    pub s: [BigInt; 3],
    pub c: [BigInt; 3],
}

impl Default for SeedSet {
    fn default() -> Self {
        SeedSet {
            t: [0.into(), 1.into(), 1.into()],
            s: [3.into(), 1.into(), 3.into()],
            c: [3.into(), (-1).into(), (-1).into()],
        }
    }
}

impl SeedSet {
    pub fn seeds_mut(&mut self, kind: SequenceKind) -> &mut [BigInt; 3] {
        match kind {
            SequenceKind::Tribonacci => &mut self.t,
            SequenceKind::GeneralizedLucas => &mut self.s,
            SequenceKind::MinorSum => &mut self.c,
        }
    }

    pub fn recurrence(&self, kind: SequenceKind) -> Recurrence3 {
        match kind {
            SequenceKind::Tribonacci => Recurrence3::new([1, 1, 1], self.t.clone()),
            SequenceKind::GeneralizedLucas => Recurrence3::new([1, 1, 1], self.s.clone()),
            SequenceKind::MinorSum => Recurrence3::new([-1, -1, 1], self.c.clone()),
        }
    }
}

/// The defining recurrence of `kind` with the published seeds.
pub fn recurrence(kind: SequenceKind) -> Recurrence3 {
    SeedSet::default().recurrence(kind)
}

/// `C_{2k}` from the even-index recurrence `C_{2k} = -C_{2k-2} - 3C_{2k-4} + C_{2k-6}`.
fn even_recurrence() -> Recurrence3 {
    Recurrence3::new([-1, -3, 1], [3.into(), (-1).into(), (-5).into()])
}

pub fn tribonacci(n: i64) -> BigInt {
    recurrence(SequenceKind::Tribonacci).value(n)
}

pub fn s_lucas(n: i64) -> BigInt {
    recurrence(SequenceKind::GeneralizedLucas).value(n)
}

pub fn c_seq(n: i64) -> BigInt {
    recurrence(SequenceKind::MinorSum).value(n)
}

pub fn value(kind: SequenceKind, n: i64) -> BigInt {
    recurrence(kind).value(n)
}

/// `C_{2k}` computed only from the even-index recurrence and `C_0, C_2, C_4`.
pub fn c_even(k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeIndex {
            op: "c_even",
            index: k,
        });
    }
    Ok(even_recurrence().value(k))
}

/// `C_{2k}` for every `k` in `[0, count)`.
pub fn c_even_prefix(count: usize) -> Vec<BigInt> {
    even_recurrence()
        .forward()
        .take(count)
        .map(|(_, v)| v)
        .collect()
}

/// Exact values over `[lo, hi]` in one linear pass.
pub fn sequence_range(kind: SequenceKind, lo: i64, hi: i64) -> Result<Vec<(i64, BigInt)>> {
    recurrence(kind).range(lo, hi)
}

/// Linear forms of `S_n` in Tribonacci numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SForm {
    /// `T_n + 2T_{n-1} + 3T_{n-2}` (trace of `A^n`).
    MinorForm,
    /// `3T_{n+1} - 2T_n - T_{n-1}` (read off the generating function).
    OgfForm,
}

/// Quadratic forms of `C_n` in Tribonacci numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CForm {
    /// Sum of the three order-2 principal minors of `A^n`, expanded.
    MinorExpansion,
    /// The same quantity regrouped into squares and cross terms of `T_n, T_{n-1}, T_{n-2}`.
    SquareForm,
}

/// Evaluates an `S` form given any source of Tribonacci values.
pub fn s_form_with(form: SForm, n: i64, t: impl Fn(i64) -> BigInt) -> BigInt {
    match form {
        SForm::MinorForm => t(n) + t(n - 1) * 2 + t(n - 2) * 3,
        SForm::OgfForm => t(n + 1) * 3 - t(n) * 2 - t(n - 1),
    }
}

/// Evaluates a `C` form given any source of Tribonacci values.
pub fn c_form_with(form: CForm, n: i64, t: impl Fn(i64) -> BigInt) -> BigInt {
    match form {
        CForm::MinorExpansion => {
            let (t1, t0, tm1, tm2, tm3) = (t(n + 1), t(n), t(n - 1), t(n - 2), t(n - 3));
            &t1 * &tm2 * 2 + &t1 * &tm1 - &t0 * &t0 - &t0 * &tm1 * 2 - &tm1 * &tm3 + &tm2 * &tm2
        }
        CForm::SquareForm => {
            let (t0, tm1, tm2) = (t(n), t(n - 1), t(n - 2));
            -(&t0 * &t0) + &tm1 * &tm1 * 2 + &tm2 * &tm2 * 3 - &t0 * &tm1 * 2
                + &t0 * &tm2 * 2
                + &tm1 * &tm2 * 4
        }
    }
}

/// Window `T_{n-3} ..= T_{n+1}` as a lookup closure.
fn t_window(n: i64) -> impl Fn(i64) -> BigInt {
    let values =
        sequence_range(SequenceKind::Tribonacci, n - 3, n + 1).expect("window bounds are ordered");
    move |i| values[(i - (n - 3)) as usize].1.clone()
}

/// `S_n` through one of its Tribonacci forms.
pub fn s_from_t(n: i64, form: SForm) -> BigInt {
    s_form_with(form, n, t_window(n))
}

/// `C_n` through one of its Tribonacci forms.
pub fn c_from_t(n: i64, form: CForm) -> BigInt {
    c_form_with(form, n, t_window(n))
}
