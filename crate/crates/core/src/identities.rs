//! Catalogue of the identities linking `S_n`, `C_n` and `T_n`, and an exact
//! verification engine over index ranges.
//!
//! Each identity is data: a domain predicate, a left side and one or more
//! right sides, all evaluated from a shared table of sequence values.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seqcore::{c_form_with, s_form_with, CForm, Recurrence3, SForm, SeedSet, SequenceKind};

/// Windows larger than this fall back to per-index evaluation.
const MAX_TABLE_LEN: i64 = 4_000_000;

/// Precomputed sequence values over an index window, with on-demand
/// evaluation outside it.
#[derive(Debug, Clone)]
pub struct Terms {
    lo: i64,
    recs: [Recurrence3; 3],
    tables: [Vec<BigInt>; 3],
}

impl Terms {
    /// Tables for `T`, `S`, `C` over `[lo, hi]` built from `seeds`.
    pub fn new(seeds: &SeedSet, lo: i64, hi: i64) -> Self {
        let recs = SequenceKind::ALL.map(|k| seeds.recurrence(k));
        let hi = hi.max(lo).min(lo + MAX_TABLE_LEN);
        let tables = std::array::from_fn(|i| {
            recs[i]
                .range(lo, hi)
                .expect("window is ordered")
                .into_iter()
                .map(|(_, v)| v)
                .collect()
        });
        Terms { lo, recs, tables }
    }

    fn get(&self, slot: usize, i: i64) -> BigInt {
        let table = &self.tables[slot];
        match usize::try_from(i - self.lo) {
            Ok(k) if k < table.len() => table[k].clone(),
            _ => self.recs[slot].value(i),
        }
    }

    pub fn t(&self, i: i64) -> BigInt {
        self.get(0, i)
    }

    pub fn s(&self, i: i64) -> BigInt {
        self.get(1, i)
    }

    pub fn c(&self, i: i64) -> BigInt {
        self.get(2, i)
    }
}

/// Maps `(n, m)` to a value; unary identities ignore `m`.
pub type Evaluator = fn(&Terms, i64, i64) -> BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Unary,
    Binary,
}

impl Arity {
    pub fn count(self) -> usize {
        match self {
            Arity::Unary => 1,
            Arity::Binary => 2,
        }
    }
}

/// One right-hand side of an identity.
#[derive(Clone, Copy)]
pub struct Side {
    pub label: &'static str,
    pub eval: Evaluator,
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub arity: Arity,
    /// Human-readable statement.
    pub statement: &'static str,
    /// Where the identity comes from, in words.
    pub citation: &'static str,
    /// Domain as text, for reports.
    pub domain_text: &'static str,
    pub domain: fn(i64, i64) -> bool,
    pub lhs: Evaluator,
    /// Every right side must equal `lhs` on the domain.
    pub rhs: Vec<Side>,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("arity", &self.arity)
            .field("statement", &self.statement)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    pub fn in_domain(&self, n: i64, m: i64) -> bool {
        (self.domain)(n, m)
    }

    /// Smallest domain point in lexicographic order within `[-8, 8]²`.
    pub fn first_domain_point(&self) -> Option<(i64, i64)> {
        let ms: &[i64] = match self.arity {
            Arity::Unary => &[0],
            Arity::Binary => &[-8, -7, -6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 7, 8],
        };
        (-8..=8)
            .flat_map(|n| ms.iter().map(move |&m| (n, m)))
            .find(|&(n, m)| self.in_domain(n, m))
    }
}

fn all(_: i64, _: i64) -> bool {
    true
}

fn s_t(t: &Terms, form: SForm, n: i64) -> BigInt {
    s_form_with(form, n, |i| t.t(i))
}

fn c_t(t: &Terms, form: CForm, n: i64) -> BigInt {
    c_form_with(form, n, |i| t.t(i))
}

/// Right side of the product formula for `n ≥ m`.
pub fn prod_ge_rhs(t: &Terms, n: i64, m: i64) -> BigInt {
    t.s(2 * n + m) + t.s(m) * t.c(n) - t.c(n - m)
}

/// Right side of the product formula for `n < m`.
pub fn prod_lt_rhs(t: &Terms, n: i64, m: i64) -> BigInt {
    t.s(2 * n + m) + t.s(m) * t.c(n) - t.s(m - n)
}

fn prod_lhs(t: &Terms, n: i64, m: i64) -> BigInt {
    t.s(n) * t.s(n + m)
}

fn pow4(x: BigInt) -> BigInt {
    let sq = &x * &x;
    &sq * &sq
}

/// The full catalogue, in a fixed order.
pub fn registry() -> Vec<IdentityRecord> {
    use Arity::*;
    vec![
        IdentityRecord {
            id: "REC_C",
            arity: Unary,
            statement: "C_n = -C_{n-1} - C_{n-2} + C_{n-3}",
            citation: "recurrence for C_n",
            domain_text: "all n",
            domain: all,
            lhs: |t, n, _| t.c(n),
            rhs: vec![Side {
                label: "recurrence",
                eval: |t, n, _| -t.c(n - 1) - t.c(n - 2) + t.c(n - 3),
            }],
        },
        IdentityRecord {
            id: "REC_CEVEN",
            arity: Unary,
            statement: "C_{2n} = -C_{2n-2} - 3C_{2n-4} + C_{2n-6}",
            citation: "recurrence for C_{2n}",
            domain_text: "all n",
            domain: all,
            lhs: |t, n, _| t.c(2 * n),
            rhs: vec![Side {
                label: "recurrence",
                eval: |t, n, _| -t.c(2 * n - 2) - t.c(2 * n - 4) * 3 + t.c(2 * n - 6),
            }],
        },
        IdentityRecord {
            id: "PROD_GE",
            arity: Binary,
            statement: "S_n S_{n+m} = S_{2n+m} + S_m C_n - C_{n-m}",
            citation: "product formula, case n >= m",
            domain_text: "n >= m >= 0",
            domain: |n, m| n >= m && m >= 0,
            lhs: prod_lhs,
            rhs: vec![Side {
                label: "product",
                eval: prod_ge_rhs,
            }],
        },
        IdentityRecord {
            id: "PROD_LT",
            arity: Binary,
            statement: "S_n S_{n+m} = S_{2n+m} + S_m C_n - S_{m-n}",
            citation: "product formula, case n < m",
            domain_text: "0 <= n < m",
            domain: |n, m| 0 <= n && n < m,
            lhs: prod_lhs,
            rhs: vec![Side {
                label: "product",
                eval: prod_lt_rhs,
            }],
        },
        IdentityRecord {
            id: "CONS_1",
            arity: Unary,
            statement: "S_n S_{n-1} = S_{2n-1} + C_{n-1} - C_{n-2}",
            citation: "product formula with n -> n-1, m = 1",
            domain_text: "n >= 1",
            domain: |n, _| n >= 1,
            lhs: |t, n, _| t.s(n) * t.s(n - 1),
            rhs: vec![Side {
                label: "shifted",
                eval: |t, n, _| t.s(2 * n - 1) + t.c(n - 1) - t.c(n - 2),
            }],
        },
        IdentityRecord {
            id: "CONS_2",
            arity: Unary,
            statement: "S_n S_{2n} = S_{3n} + S_n C_n - 3",
            citation: "product formula with m = n",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| t.s(n) * t.s(2 * n),
            rhs: vec![Side {
                label: "diagonal",
                eval: |t, n, _| t.s(3 * n) + t.s(n) * t.c(n) - 3,
            }],
        },
        IdentityRecord {
            id: "CONS_3",
            arity: Binary,
            statement: "S_n S_{nm} = S_{n(m+1)} + S_{n(m-1)} C_n - S_{n(m-2)}",
            citation: "general multiple-index product",
            domain_text: "n >= 0, m >= 2",
            domain: |n, m| n >= 0 && m >= 2,
            lhs: cons3_lhs,
            rhs: vec![Side {
                label: "multiple",
                eval: cons3_rhs,
            }],
        },
        IdentityRecord {
            id: "SQUARE",
            arity: Unary,
            statement: "S_n^2 = S_{2n} + 2C_n",
            citation: "product formula with m = 0",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| {
                let s = t.s(n);
                &s * &s
            },
            rhs: vec![Side {
                label: "square",
                eval: square_rhs,
            }],
        },
        IdentityRecord {
            id: "CUBE",
            arity: Unary,
            statement: "S_n^3 = S_{3n} + 3S_n C_n - 3",
            citation: "cube of S_n",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| {
                let s = t.s(n);
                &s * &s * &s
            },
            rhs: vec![Side {
                label: "cube",
                eval: |t, n, _| t.s(3 * n) + t.s(n) * t.c(n) * 3 - 3,
            }],
        },
        IdentityRecord {
            id: "QUARTIC_A",
            arity: Unary,
            statement: "S_n^4 = S_{4n} + 2C_{2n} + 4C_n^2 + 4S_{2n}C_n",
            citation: "fourth power via the square twice",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| pow4(t.s(n)),
            rhs: vec![Side {
                label: "square-of-square",
                eval: quartic_a_rhs,
            }],
        },
        IdentityRecord {
            id: "QUARTIC_B",
            arity: Unary,
            statement: "S_n^4 = S_{4n} - 4S_n + 4S_{2n}C_n + 6C_n^2",
            citation: "fourth power via the cube",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| pow4(t.s(n)),
            rhs: vec![Side {
                label: "cube-times-first",
                eval: quartic_b_rhs,
            }],
        },
        IdentityRecord {
            id: "CN2",
            arity: Unary,
            statement: "2S_n = C_n^2 - C_{2n}",
            citation: "difference of the two fourth-power forms",
            domain_text: "n >= 0",
            domain: |n, _| n >= 0,
            lhs: |t, n, _| t.s(n) * 2,
            rhs: vec![Side {
                label: "minor-square",
                eval: |t, n, _| {
                    let c = t.c(n);
                    &c * &c - t.c(2 * n)
                },
            }],
        },
        IdentityRecord {
            id: "S_T_FORMS",
            arity: Unary,
            statement: "S_n = T_n + 2T_{n-1} + 3T_{n-2} = 3T_{n+1} - 2T_n - T_{n-1}",
            citation: "trace of A^n and the generating function of S_n",
            domain_text: "all n",
            domain: all,
            lhs: |t, n, _| t.s(n),
            rhs: vec![
                Side {
                    label: "minor-form",
                    eval: |t, n, _| s_t(t, SForm::MinorForm, n),
                },
                Side {
                    label: "ogf-form",
                    eval: |t, n, _| s_t(t, SForm::OgfForm, n),
                },
            ],
        },
        IdentityRecord {
            id: "C_T_FORMS",
            arity: Unary,
            statement: "C_n = (principal-minor expansion in T) = (square form in T)",
            citation: "order-2 principal minors of A^n",
            domain_text: "all n",
            domain: all,
            lhs: |t, n, _| t.c(n),
            rhs: vec![
                Side {
                    label: "minor-expansion",
                    eval: |t, n, _| c_t(t, CForm::MinorExpansion, n),
                },
                Side {
                    label: "square-form",
                    eval: |t, n, _| c_t(t, CForm::SquareForm, n),
                },
            ],
        },
    ]
}

pub fn cons3_lhs(t: &Terms, n: i64, m: i64) -> BigInt {
    t.s(n) * t.s(n * m)
}

pub fn cons3_rhs(t: &Terms, n: i64, m: i64) -> BigInt {
    t.s(n * (m + 1)) + t.s(n * (m - 1)) * t.c(n) - t.s(n * (m - 2))
}

pub fn square_rhs(t: &Terms, n: i64, _: i64) -> BigInt {
    t.s(2 * n) + t.c(n) * 2
}

pub fn quartic_a_rhs(t: &Terms, n: i64, _: i64) -> BigInt {
    let c = t.c(n);
    t.s(4 * n) + t.c(2 * n) * 2 + &c * &c * 4 + t.s(2 * n) * &c * 4
}

pub fn quartic_b_rhs(t: &Terms, n: i64, _: i64) -> BigInt {
    let c = t.c(n);
    t.s(4 * n) - t.s(n) * 4 + t.s(2 * n) * &c * 4 + &c * &c * 6
}

pub fn find(id: &str) -> Option<IdentityRecord> {
    registry()
        .into_iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
}

/// Inclusive index bounds for `n` and `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub n: (i64, i64),
    pub m: (i64, i64),
}

impl Bounds {
    pub fn new(n: (i64, i64), m: (i64, i64)) -> Self {
        Bounds { n, m }
    }

    /// `n, m ∈ [lo, hi]`.
    pub fn square(lo: i64, hi: i64) -> Self {
        Bounds::new((lo, hi), (lo, hi))
    }

    fn describe(&self, arity: Arity) -> String {
        match arity {
            Arity::Unary => format!("n in [{}, {}]", self.n.0, self.n.1),
            Arity::Binary => format!(
                "n in [{}, {}], m in [{}, {}]",
                self.n.0, self.n.1, self.m.0, self.m.1
            ),
        }
    }

    /// Index window covering every term the catalogue touches for these bounds.
    fn window(&self) -> (i64, i64) {
        let n_hi = self.n.1.max(0);
        let m_hi = self.m.1.max(0);
        let hi = (4 * n_hi)
            .max(n_hi.saturating_mul(m_hi + 1))
            .max(2 * n_hi + m_hi)
            + 2;
        let lo = 2 * self.n.0.min(self.m.0).min(0) - 8;
        (lo, hi)
    }

    fn tuples(&self, arity: Arity) -> Vec<(i64, i64)> {
        let (n_lo, n_hi) = self.n;
        match arity {
            Arity::Unary => (n_lo..=n_hi).map(|n| (n, 0)).collect(),
            Arity::Binary => {
                let (m_lo, m_hi) = self.m;
                (n_lo..=n_hi)
                    .flat_map(|n| (m_lo..=m_hi).map(move |m| (n, m)))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// `[n]` or `[n, m]`.
    pub indices: Vec<i64>,
    /// Which right side disagreed.
    pub side: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub range: String,
    pub cases_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn check_record(record: &IdentityRecord, bounds: &Bounds, terms: &Terms) -> VerificationReport {
    let tuples: Vec<(i64, i64)> = bounds
        .tuples(record.arity)
        .into_iter()
        .filter(|&(n, m)| record.in_domain(n, m))
        .collect();
    let counterexamples: Vec<Counterexample> = tuples
        .par_iter()
        .flat_map_iter(|&(n, m)| {
            let lhs = (record.lhs)(terms, n, m);
            record
                .rhs
                .iter()
                .filter_map(|side| {
                    let rhs = (side.eval)(terms, n, m);
                    (rhs != lhs).then(|| Counterexample {
                        indices: match record.arity {
                            Arity::Unary => vec![n],
                            Arity::Binary => vec![n, m],
                        },
                        side: side.label.to_string(),
                        lhs: lhs.clone(),
                        rhs,
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    VerificationReport {
        id: record.id.to_string(),
        range: bounds.describe(record.arity),
        cases_checked: tuples.len() as u64,
        counterexamples,
    }
}

fn validate(bounds: &Bounds) -> Result<()> {
    for (lo, hi) in [bounds.n, bounds.m] {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
    }
    Ok(())
}

/// Checks one identity with custom seeds.
pub fn verify_with_seeds(id: &str, bounds: Bounds, seeds: &SeedSet) -> Result<VerificationReport> {
    let record = find(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    validate(&bounds)?;
    let (lo, hi) = bounds.window();
    let terms = Terms::new(seeds, lo, hi);
    Ok(check_record(&record, &bounds, &terms))
}

/// Checks one identity at every domain point inside `bounds`.
pub fn verify(id: &str, bounds: Bounds) -> Result<VerificationReport> {
    verify_with_seeds(id, bounds, &SeedSet::default())
}

/// Checks the whole catalogue with custom seeds. Reports follow registry order.
pub fn verify_all_with_seeds(bounds: Bounds, seeds: &SeedSet) -> Result<Vec<VerificationReport>> {
    validate(&bounds)?;
    let (lo, hi) = bounds.window();
    let terms = Terms::new(seeds, lo, hi);
    Ok(registry()
        .par_iter()
        .map(|record| check_record(record, &bounds, &terms))
        .collect())
}

pub fn verify_all(bounds: Bounds) -> Result<Vec<VerificationReport>> {
    verify_all_with_seeds(bounds, &SeedSet::default())
}

/// At `n = m` both product formulas apply; their right sides must agree
/// because `C_0 = S_0 = 3`. Checked for `n ∈ [0, 50]`.
pub fn boundary_consistency() -> VerificationReport {
    boundary_consistency_with_seeds(&SeedSet::default(), 50)
}

pub fn boundary_consistency_with_seeds(seeds: &SeedSet, max_n: i64) -> VerificationReport {
    let terms = Terms::new(seeds, -8, 3 * max_n.max(0) + 2);
    let counterexamples = (0..=max_n)
        .filter_map(|n| {
            let ge = prod_ge_rhs(&terms, n, n);
            let lt = prod_lt_rhs(&terms, n, n);
            (ge != lt).then(|| Counterexample {
                indices: vec![n, n],
                side: "PROD_LT at n = m".to_string(),
                lhs: ge,
                rhs: lt,
            })
        })
        .collect();
    VerificationReport {
        id: "PROD_BOUNDARY".to_string(),
        range: format!("n = m in [0, {max_n}]"),
        cases_checked: (max_n.max(-1) + 1) as u64,
        counterexamples,
    }
}
