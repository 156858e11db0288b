//! Wall-clock comparison of the evaluation strategies for one large index.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use tribokit::analytic::{binet_round_with_bound, char_roots};
use tribokit::tribomatrix::value_by_matrix;
use tribokit::{seqcore, Error, SequenceKind};

#[derive(Debug, Clone, PartialEq)]
pub enum BenchValue {
    Exact(BigInt),
    Binet {
        value: BigInt,
        bound: f64,
    },
    /// The strategy declined; the message says why.
    Refused(String),
}

impl BenchValue {
    pub fn integer(&self) -> Option<&BigInt> {
        match self {
            BenchValue::Exact(v) | BenchValue::Binet { value: v, .. } => Some(v),
            BenchValue::Refused(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StrategyTiming {
    pub strategy: &'static str,
    /// Fastest of the repetitions.
    pub best: Duration,
    pub value: BenchValue,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub kind: SequenceKind,
    pub n: i64,
    pub repetitions: u32,
    pub precision: u32,
    pub timings: Vec<StrategyTiming>,
    /// Recurrence and matrix values are identical.
    pub agreement: bool,
}

fn time_min<T>(reps: u32, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        last = Some(v);
    }
    (best, last.expect("at least one repetition"))
}

/// Runs every strategy `repetitions` times at index `n ≥ 0`.
pub fn run_bench(
    kind: SequenceKind,
    n: i64,
    repetitions: u32,
    precision: u32,
) -> Result<BenchReport, Error> {
    if n < 0 {
        return Err(Error::NegativeIndex {
            op: "bench",
            index: n,
        });
    }
    let (t_rec, rec) = time_min(repetitions, || seqcore::value(kind, n));
    let (t_mat, mat) = time_min(repetitions, || value_by_matrix(kind, n));
    let mat = mat?;
    let roots = char_roots(precision)?;
    let (t_bin, bin) = time_min(repetitions, || binet_round_with_bound(kind, n, &roots));
    let binet = match bin {
        Ok(r) => BenchValue::Binet {
            value: r.value,
            bound: r.bound,
        },
        Err(
            e @ (Error::IndexBeyondCap { .. }
            | Error::BoundExceeded { .. }
            | Error::BinetUnsupported(_)),
        ) => BenchValue::Refused(e.to_string()),
        Err(e) => return Err(e),
    };
    let agreement = rec == mat;
    Ok(BenchReport {
        kind,
        n,
        repetitions: repetitions.max(1),
        precision,
        timings: vec![
            StrategyTiming {
                strategy: "recurrence",
                best: t_rec,
                value: BenchValue::Exact(rec),
            },
            StrategyTiming {
                strategy: "matrix",
                best: t_mat,
                value: BenchValue::Exact(mat),
            },
            StrategyTiming {
                strategy: "binet",
                best: t_bin,
                value: binet,
            },
        ],
        agreement,
    })
}
