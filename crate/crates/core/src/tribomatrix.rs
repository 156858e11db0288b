//! Exact 3×3 integer matrices and powers of the Tribomatrix
//!
//! ```text
//!     | 1 1 0 |
//! A = | 1 0 1 |
//!     | 1 0 0 |
//! ```
//!
//! whose characteristic polynomial is `x³ - x² - x - 1`. The trace of `A^n`
//! is `S_n` and the sum of its order-2 principal minors is `C_n`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::seqcore::{sequence_range, SequenceKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix3(pub [[BigInt; 3]; 3]);

impl Matrix3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Matrix3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn zero() -> Self {
        Matrix3::from_i64([[0; 3]; 3])
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.0[row][col]
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Determinant of the principal 2×2 minor on (0-based) indices `i < j`.
    pub fn principal_minor(&self, i: usize, j: usize) -> BigInt {
        let m = &self.0;
        &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i]
    }

    pub fn minor_report(&self) -> MinorSumReport {
        MinorSumReport::new(
            self.principal_minor(0, 1),
            self.principal_minor(0, 2),
            self.principal_minor(1, 2),
        )
    }
}

impl Mul for &Matrix3 {
    type Output = Matrix3;

    fn mul(self, rhs: &Matrix3) -> Matrix3 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Matrix3::zero();
        for (i, row) in out.0.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j];
            }
        }
        out
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Order-2 principal minors of a 3×3 matrix. Subsets are named with
/// 1-based row/column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSumReport {
    pub minor_12: BigInt,
    pub minor_13: BigInt,
    pub minor_23: BigInt,
    pub total: BigInt,
}

impl MinorSumReport {
    fn new(minor_12: BigInt, minor_13: BigInt, minor_23: BigInt) -> Self {
        let total = &minor_12 + &minor_13 + &minor_23;
        MinorSumReport {
            minor_12,
            minor_13,
            minor_23,
            total,
        }
    }
}

pub fn tribomatrix() -> Matrix3 {
    Matrix3::from_i64([[1, 1, 0], [1, 0, 1], [1, 0, 0]])
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    a * b
}

fn check_non_negative(op: &'static str, n: i64) -> Result<()> {
    if n < 0 {
        Err(Error::NegativeIndex { op, index: n })
    } else {
        Ok(())
    }
}

/// `m^n` by square-and-multiply.
pub fn pow_binary(m: &Matrix3, mut n: u64) -> Matrix3 {
    let mut result = Matrix3::identity();
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    result
}

/// `m^n` by `n` successive multiplications; the baseline strategy.
pub fn pow_naive(m: &Matrix3, n: u64) -> Matrix3 {
    (0..n).fold(Matrix3::identity(), |acc, _| &acc * m)
}

/// `A^n` for `n ≥ 0`.
pub fn mat_pow(n: i64) -> Result<Matrix3> {
    check_non_negative("mat_pow", n)?;
    Ok(pow_binary(&tribomatrix(), n as u64))
}

/// `A^n` assembled entrywise from Tribonacci numbers:
///
/// ```text
/// | T_{n+1}          T_n              T_{n-1}         |
/// | T_n + T_{n-1}    T_{n-1} + T_{n-2} T_{n-2} + T_{n-3} |
/// | T_n              T_{n-1}          T_{n-2}         |
/// ```
pub fn entries_from_tribonacci(n: i64) -> Result<Matrix3> {
    check_non_negative("entries_from_tribonacci", n)?;
    let window = sequence_range(SequenceKind::Tribonacci, n - 3, n + 1)?;
    let t = |i: i64| window[(i - (n - 3)) as usize].1.clone();
    Ok(Matrix3([
        [t(n + 1), t(n), t(n - 1)],
        [t(n) + t(n - 1), t(n - 1) + t(n - 2), t(n - 2) + t(n - 3)],
        [t(n), t(n - 1), t(n - 2)],
    ]))
}

/// `tr(A^n)`, which is `S_n`.
pub fn trace_pow(n: i64) -> Result<BigInt> {
    check_non_negative("trace_pow", n)?;
    Ok(mat_pow(n)?.trace())
}

/// Order-2 principal minors of `A^n`; the total is `C_n`.
pub fn minor_sum(n: i64) -> Result<MinorSumReport> {
    check_non_negative("minor_sum", n)?;
    Ok(mat_pow(n)?.minor_report())
}

/// Value of `kind` at `n ≥ 0` read off `A^n`.
pub fn value_by_matrix(kind: SequenceKind, n: i64) -> Result<BigInt> {
    check_non_negative("value_by_matrix", n)?;
    let p = mat_pow(n)?;
    Ok(match kind {
        SequenceKind::Tribonacci => p.get(0, 1).clone(),
        SequenceKind::GeneralizedLucas => p.trace(),
        SequenceKind::MinorSum => p.minor_report().total,
    })
}

impl Default for Matrix3 {
    fn default() -> Self {
        Matrix3::zero()
    }
}

impl Matrix3 {
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Matrix3 {
        Matrix3::from_i64([[2, 1, 1], [2, 1, 0], [1, 1, 0]])
    }

    #[test]
    fn constant_matrix() {
        let a = tribomatrix();
        assert_eq!(a, Matrix3::from_i64([[1, 1, 0], [1, 0, 1], [1, 0, 0]]));
        assert_eq!(a.trace(), BigInt::from(1));
        assert_eq!(a.det(), BigInt::from(1));
    }

    #[test]
    fn products() {
        let a = tribomatrix();
        assert_eq!(mat_mul(&a, &Matrix3::identity()), a);
        assert_eq!(mat_mul(&a, &a), a2());
        assert_eq!(mat_mul(&mat_mul(&a, &a), &a), mat_mul(&a, &mat_mul(&a, &a)));
    }

    #[test]
    fn powers() {
        assert!(mat_pow(0).unwrap().is_identity());
        assert_eq!(mat_pow(1).unwrap(), tribomatrix());
        assert_eq!(mat_pow(2).unwrap(), a2());
        assert_eq!(
            mat_pow(-1),
            Err(Error::NegativeIndex {
                op: "mat_pow",
                index: -1
            })
        );
    }

    #[test]
    fn entry_formula() {
        assert_eq!(entries_from_tribonacci(1).unwrap(), tribomatrix());
        assert_eq!(entries_from_tribonacci(2).unwrap(), a2());
        assert!(entries_from_tribonacci(0).unwrap().is_identity());
        assert!(entries_from_tribonacci(-2).is_err());
    }

    #[test]
    fn trace_and_minors() {
        assert_eq!(trace_pow(1).unwrap(), BigInt::from(1));
        assert_eq!(trace_pow(0).unwrap(), BigInt::from(3));
        assert_eq!(trace_pow(5).unwrap(), BigInt::from(21));
        assert!(trace_pow(-1).is_err());

        let r1 = minor_sum(1).unwrap();
        assert_eq!(
            (r1.minor_12, r1.minor_13, r1.minor_23, r1.total),
            (
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(0),
                BigInt::from(-1)
            )
        );
        let r0 = minor_sum(0).unwrap();
        assert_eq!(
            (r0.minor_12, r0.minor_13, r0.minor_23, r0.total),
            (
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(3)
            )
        );
        assert_eq!(minor_sum(4).unwrap().total, BigInt::from(-5));
        assert!(minor_sum(-3).is_err());
    }

    #[test]
    fn binary_matches_naive() {
        let a = tribomatrix();
        for n in 0..=64 {
            assert_eq!(pow_binary(&a, n), pow_naive(&a, n), "n = {n}");
        }
    }

    #[test]
    fn display_rows() {
        assert_eq!(a2().to_string(), "2 1 1\n2 1 0\n1 1 0");
    }
}
