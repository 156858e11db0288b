//! Rational ordinary generating functions `N(x)/D(x)` with `D(0) = 1`.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<_> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", list.join(","))
    }
}

/// `numerator / denominator` as a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalOgf {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalOgf {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        let c0 = denominator.coeff(0);
        if !c0.is_one() {
            return Err(Error::DenominatorConstant(c0.to_string()));
        }
        if denominator.degree().unwrap_or(0) < 1 {
            return Err(Error::DenominatorDegree);
        }
        Ok(RationalOgf {
            numerator,
            denominator,
        })
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        RationalOgf::new(
            IntPolynomial::from_i64(numerator),
            IntPolynomial::from_i64(denominator),
        )
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }
}

/// The generating functions with closed forms in the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinOgf {
    /// `S_n`
    S,
    /// `C_n`
    C,
    /// `C_{2n}`
    CEven,
}

impl BuiltinOgf {
    pub const ALL: [BuiltinOgf; 3] = [BuiltinOgf::S, BuiltinOgf::C, BuiltinOgf::CEven];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinOgf::S => "S",
            BuiltinOgf::C => "C",
            BuiltinOgf::CEven => "CEven",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "s" => Some(BuiltinOgf::S),
            "c" => Some(BuiltinOgf::C),
            "ceven" | "c2n" => Some(BuiltinOgf::CEven),
            _ => None,
        }
    }
}

pub fn builtin_ogf(kind: BuiltinOgf) -> RationalOgf {
    let (num, den): (&[i64], &[i64]) = match kind {
        BuiltinOgf::S => (&[3, -2, -1], &[1, -1, -1, -1]),
        BuiltinOgf::C => (&[3, 2, 1], &[1, 1, 1, -1]),
        BuiltinOgf::CEven => (&[3, 2, 3], &[1, 1, 3, -1]),
    };
    RationalOgf::from_i64(num, den).expect("builtin generating functions are well formed")
}

/// First `count` series coefficients, from `a_n = num_n - Σ_{k≥1} den_k·a_{n-k}`.
pub fn expand(ogf: &RationalOgf, count: usize) -> Result<Vec<BigInt>> {
    if count == 0 {
        return Err(Error::ZeroCount);
    }
    let den = ogf.denominator.coeffs();
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for n in 0..count {
        let mut a = ogf.numerator.coeff(n);
        for (k, d) in den.iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                a -= d * &out[n - k];
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// Linear recurrence read off a rational generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    /// `c_k` in `a_n = Σ_{k=1..d} c_k·a_{n-k}`, starting at `k = 1`.
    pub coefficients: Vec<BigInt>,
    /// Initial terms; the recurrence holds for every later index.
    pub seeds: Vec<BigInt>,
}

impl LinearRecurrence {
    /// First `count` terms from the seeds and coefficients.
    pub fn run(&self, count: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.seeds.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| c * &out[n - 1 - k])
                .sum();
            out.push(next);
        }
        out
    }
}

pub fn recurrence_of(ogf: &RationalOgf) -> Result<LinearRecurrence> {
    let den = ogf.denominator.coeffs();
    let coefficients: Vec<BigInt> = den[1..].iter().map(|d| -d).collect();
    let num_len = ogf.numerator.degree().map_or(0, |d| d + 1);
    let seed_count = num_len.max(coefficients.len());
    Ok(LinearRecurrence {
        coefficients,
        seeds: expand(ogf, seed_count.max(1))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expansions() {
        let s = RationalOgf::from_i64(&[3, -2, -1], &[1, -1, -1, -1]).unwrap();
        assert_eq!(expand(&s, 5).unwrap(), ints(&[3, 1, 3, 7, 11]));
        let c = RationalOgf::from_i64(&[3, 2, 1], &[1, 1, 1, -1]).unwrap();
        assert_eq!(expand(&c, 4).unwrap(), ints(&[3, -1, -1, 5]));
        let ce = RationalOgf::from_i64(&[3, 2, 3], &[1, 1, 3, -1]).unwrap();
        assert_eq!(expand(&ce, 4).unwrap(), ints(&[3, -1, -5, 11]));
        assert_eq!(expand(&s, 0), Err(Error::ZeroCount));
    }

    #[test]
    fn builtins() {
        let s = builtin_ogf(BuiltinOgf::S);
        assert_eq!(s.numerator().coeffs(), ints(&[3, -2, -1]));
        assert_eq!(s.denominator().coeffs(), ints(&[1, -1, -1, -1]));
        let c = builtin_ogf(BuiltinOgf::C);
        assert_eq!(c.numerator().coeffs(), ints(&[3, 2, 1]));
        assert_eq!(c.denominator().coeffs(), ints(&[1, 1, 1, -1]));
        let ce = builtin_ogf(BuiltinOgf::CEven);
        assert_eq!(ce.numerator().coeffs(), ints(&[3, 2, 3]));
        assert_eq!(ce.denominator().coeffs(), ints(&[1, 1, 3, -1]));
    }

    #[test]
    fn recurrences() {
        let c = recurrence_of(&builtin_ogf(BuiltinOgf::C)).unwrap();
        assert_eq!(c.coefficients, ints(&[-1, -1, 1]));
        assert_eq!(c.seeds, ints(&[3, -1, -1]));
        let s = recurrence_of(&builtin_ogf(BuiltinOgf::S)).unwrap();
        assert_eq!(s.coefficients, ints(&[1, 1, 1]));
        assert_eq!(s.seeds, ints(&[3, 1, 3]));
        let ce = recurrence_of(&builtin_ogf(BuiltinOgf::CEven)).unwrap();
        assert_eq!(ce.coefficients, ints(&[-1, -3, 1]));
        assert_eq!(ce.seeds, ints(&[3, -1, -5]));
    }

    #[test]
    fn invalid_denominators() {
        assert_eq!(
            RationalOgf::from_i64(&[1], &[2, 1]),
            Err(Error::DenominatorConstant("2".into()))
        );
        assert_eq!(
            RationalOgf::from_i64(&[1], &[0, 1]),
            Err(Error::DenominatorConstant("0".into()))
        );
        assert_eq!(
            RationalOgf::from_i64(&[1], &[1]),
            Err(Error::DenominatorDegree)
        );
        assert_eq!(
            RationalOgf::from_i64(&[1], &[1, 0, 0]),
            Err(Error::DenominatorDegree)
        );
    }

    #[test]
    fn long_numerator_gets_extra_seeds() {
        // (1 + x^4) / (1 - x): 1, 1, 1, 1, 2, 2, ...
        let g = RationalOgf::from_i64(&[1, 0, 0, 0, 1], &[1, -1]).unwrap();
        let r = recurrence_of(&g).unwrap();
        assert_eq!(r.seeds.len(), 5);
        assert_eq!(r.run(8), expand(&g, 8).unwrap());
    }
}
