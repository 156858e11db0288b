//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion is reported even
//! when an earlier one fails. Exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;
use tribokit::analytic::{binet_round, binet_round_with_bound, char_roots, vieta_check};
use tribokit::genfunc::{builtin_ogf, expand, BuiltinOgf};
use tribokit::identities::{verify_all, verify_all_with_seeds, Bounds};
use tribokit::seqcore::{c_even_prefix, SeedSet};
use tribokit::tribomatrix::{entries_from_tribonacci, mat_pow, value_by_matrix};
use tribokit::{c_seq, s_lucas, sequence_range, tribonacci, Error, SequenceKind};
use tribokit_cli::bench::run_bench;

/// Collects failed sub-checks for one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect()
}

/// Runs a command line through the CLI entry point.
fn tribokit(args: &[&str]) -> (i32, String) {
    let out = tribokit_cli::run(std::iter::once("tribokit").chain(args.iter().copied()));
    (out.code, out.stdout)
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn initial_values(c: &mut Checks) {
    let first3 = |f: fn(i64) -> BigInt| (0..3).map(f).collect::<Vec<_>>();
    c.check(
        first3(s_lucas) == [big(3), big(1), big(3)],
        "S_0..2 = 3, 1, 3",
    );
    c.check(
        first3(tribonacci) == [big(0), big(1), big(1)],
        "T_0..2 = 0, 1, 1",
    );
    c.check(
        first3(c_seq) == [big(3), big(-1), big(-1)],
        "C_0..2 = 3, -1, -1",
    );
    c.check(c_seq(4) == big(-5), "C_4 = -5");
}

fn identity_suite(c: &mut Checks) {
    match verify_all(Bounds::square(0, 100)) {
        Ok(reports) => {
            c.check(
                reports.len() == 14,
                format!("14 identities, got {}", reports.len()),
            );
            let cases: u64 = reports.iter().map(|r| r.cases_checked).sum();
            c.note(format!("{cases} cases"));
            for r in &reports {
                c.check(
                    r.verified(),
                    format!("{} has {} counterexamples", r.id, r.counterexamples.len()),
                );
                c.check(r.cases_checked > 0, format!("{} checked no cases", r.id));
            }
        }
        Err(e) => c.check(false, format!("verify_all failed: {e}")),
    }
}

fn matrix_conformance(c: &mut Checks) {
    for n in 0..=64 {
        let m = mat_pow(n).expect("n >= 0");
        c.check(
            Ok(&m) == entries_from_tribonacci(n).as_ref(),
            format!("A^{n} entry formula"),
        );
        c.check(m.trace() == s_lucas(n), format!("tr A^{n} = S_{n}"));
        c.check(
            m.minor_report().total == c_seq(n),
            format!("minor sum of A^{n} = C_{n}"),
        );
        c.check(m.det() == big(1), format!("det A^{n} = 1"));
    }
}

fn ogf_conformance(c: &mut Checks) {
    let column = |k| {
        sequence_range(k, 0, 499)
            .unwrap()
            .into_iter()
            .map(|(_, v)| v)
            .collect::<Vec<_>>()
    };
    let cases = [
        (BuiltinOgf::S, column(SequenceKind::GeneralizedLucas)),
        (BuiltinOgf::C, column(SequenceKind::MinorSum)),
        (BuiltinOgf::CEven, c_even_prefix(500)),
    ];
    for (ogf, expected) in cases {
        let got = expand(&builtin_ogf(ogf), 500).expect("500 terms");
        c.check(
            got == expected,
            format!("{} expands to its sequence", ogf.name()),
        );
    }
}

/// Checks that `value` agrees with the printed `printed` to every digit shown.
fn agrees_to_printed_digits(value: &tribokit::analytic::Real, printed: &str) -> (bool, String) {
    let digits = printed.split_once('.').map_or(0, |(_, f)| f.len());
    let rounded = value.to_decimal(digits);
    (rounded == printed, rounded)
}

fn analytic_conformance(c: &mut Checks) {
    let roots = match char_roots(15) {
        Ok(r) => r,
        Err(e) => return c.check(false, format!("char_roots(15): {e}")),
    };
    let (ok, got) = agrees_to_printed_digits(roots.alpha(), "1.8392286");
    c.check(
        ok,
        format!("alpha agrees with printed 1.8392286 (computed {got})"),
    );
    let (ok, got) = agrees_to_printed_digits(&roots.modulus_beta(), "0.737353");
    c.check(
        ok,
        format!("|beta| agrees with printed 0.737353 (computed {got})"),
    );
    let res = vieta_check(&roots);
    c.check(
        res.max() < 1e-12,
        format!("Vieta residuals < 1e-12 (max {:e})", res.max()),
    );

    let roots30 = char_roots(30).expect("precision 30");
    for n in 0..=40 {
        c.check(
            binet_round(SequenceKind::GeneralizedLucas, n, &roots30).ok() == Some(s_lucas(n)),
            format!("binet S_{n}"),
        );
        c.check(
            binet_round(SequenceKind::MinorSum, n, &roots30).ok() == Some(c_seq(n)),
            format!("binet C_{n}"),
        );
    }
    let cap = roots30.index_cap();
    c.check(
        matches!(
            binet_round(SequenceKind::GeneralizedLucas, cap + 1, &roots30),
            Err(Error::IndexBeyondCap { .. })
        ),
        "refuses beyond the index cap",
    );

    // With the cap lifted, every answer must be exact until the bound refuses.
    let wide = char_roots(15).expect("precision 15").with_index_cap(300);
    let mut refused_at = None;
    for n in 0..=300 {
        for kind in [SequenceKind::GeneralizedLucas, SequenceKind::MinorSum] {
            match binet_round_with_bound(kind, n, &wide) {
                Ok(r) => c.check(
                    r.value == tribokit::seqcore::value(kind, n),
                    format!("mis-rounded {kind}_{n}"),
                ),
                Err(Error::BoundExceeded { .. }) => {
                    refused_at.get_or_insert(n);
                }
                Err(e) => c.check(false, format!("{kind}_{n}: {e}")),
            }
        }
    }
    c.check(
        refused_at.is_some(),
        "bound refusal reached with the cap lifted",
    );
    if let Some(n) = refused_at {
        c.note(format!("first bound refusal at n = {n} (precision 15)"));
    }
}

fn strategy_equivalence(c: &mut Checks) {
    for (kind, ogf) in [
        (SequenceKind::GeneralizedLucas, BuiltinOgf::S),
        (SequenceKind::MinorSum, BuiltinOgf::C),
    ] {
        let rec = sequence_range(kind, 0, 500).unwrap();
        let series = expand(&builtin_ogf(ogf), 501).unwrap();
        for (n, v) in &rec {
            c.check(
                value_by_matrix(kind, *n).ok().as_ref() == Some(v),
                format!("matrix {kind}_{n}"),
            );
            c.check(&series[*n as usize] == v, format!("ogf {kind}_{n}"));
        }
    }
    match run_bench(SequenceKind::GeneralizedLucas, 100_000, 1, 30) {
        Ok(r) => {
            c.check(r.agreement, "bench S 100000: recurrence = matrix");
            for t in &r.timings {
                c.note(format!(
                    "{} {:.1} ms",
                    t.strategy,
                    t.best.as_secs_f64() * 1e3
                ));
            }
        }
        Err(e) => c.check(false, format!("bench failed: {e}")),
    }
}

fn oeis_crosscheck(c: &mut Checks) {
    for (kind, file) in [
        ("S", "b001644.txt"),
        ("T", "b000073.txt"),
        ("C", "b073145.txt"),
    ] {
        let path = fixture(file);
        let (code, out) = tribokit(&[
            "crosscheck",
            kind,
            path.to_str().unwrap(),
            "50",
            "--format",
            "json",
        ]);
        let report: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
        c.check(code == 0, format!("{file}: exit {code}"));
        c.check(
            report["rows_compared"].as_u64() >= Some(50),
            format!("{file}: at least 50 rows"),
        );
        c.check(
            report["mismatches"].as_array().is_some_and(Vec::is_empty),
            format!("{file}: zero mismatches"),
        );
    }
    let path = fixture("b073145_corrupted.txt");
    let (code, out) = tribokit(&[
        "crosscheck",
        "C",
        path.to_str().unwrap(),
        "50",
        "--format",
        "json",
    ]);
    let report: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    let rows: Vec<i64> = report["mismatches"]
        .as_array()
        .map(|m| m.iter().filter_map(|r| r["index"].as_i64()).collect())
        .unwrap_or_default();
    c.check(code == 3, format!("corrupted fixture: exit {code}"));
    c.check(
        rows == [17],
        format!("corrupted fixture flags exactly row 17, got {rows:?}"),
    );
}

fn fault_sensitivity(c: &mut Checks) {
    let bounds = Bounds::square(0, 20);
    for kind in SequenceKind::ALL {
        for i in 0..3 {
            for delta in [1, -1] {
                let mut seeds = SeedSet::default();
                seeds.seeds_mut(kind)[i] += delta;
                let caught = verify_all_with_seeds(bounds, &seeds)
                    .map(|rs| rs.iter().any(|r| !r.verified()))
                    .unwrap_or(false);
                c.check(caught, format!("{kind}_{i} {delta:+} not detected"));
            }
        }
    }
    let mut seeds = SeedSet::default();
    seeds.seeds_mut(SequenceKind::MinorSum)[1] = big(1);
    let caught = verify_all_with_seeds(bounds, &seeds)
        .map(|rs| rs.iter().any(|r| !r.verified()))
        .unwrap_or(false);
    c.check(caught, "C_1 -> +1 not detected");
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    run: fn(&mut Checks),
}

fn main() {
    let criteria = [
        Criterion {
            number: 1,
            title: "initial values",
            budget: Duration::from_secs(1),
            run: initial_values,
        },
        Criterion {
            number: 2,
            title: "identity suite n, m in [0, 100]",
            budget: Duration::from_secs(10),
            run: identity_suite,
        },
        Criterion {
            number: 3,
            title: "matrix conformance n in [0, 64]",
            budget: Duration::from_secs(1),
            run: matrix_conformance,
        },
        Criterion {
            number: 4,
            title: "generating functions, 500 terms",
            budget: Duration::from_secs(1),
            run: ogf_conformance,
        },
        Criterion {
            number: 5,
            title: "analytic conformance",
            budget: Duration::from_secs(1),
            run: analytic_conformance,
        },
        Criterion {
            number: 6,
            title: "cross-strategy equivalence",
            budget: Duration::from_secs(30),
            run: strategy_equivalence,
        },
        Criterion {
            number: 7,
            title: "OEIS crosscheck",
            budget: Duration::from_secs(1),
            run: oeis_crosscheck,
        },
        Criterion {
            number: 8,
            title: "fault sensitivity",
            budget: Duration::from_secs(10),
            run: fault_sensitivity,
        },
    ];

    let mut failed = 0;
    for cr in &criteria {
        let mut checks = Checks::default();
        let start = Instant::now();
        (cr.run)(&mut checks);
        let elapsed = start.elapsed();
        if elapsed > cr.budget {
            checks
                .failures
                .push(format!("took {elapsed:.2?}, budget {:?}", cr.budget));
        }
        let status = if checks.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "criterion {} {status}: {} ({elapsed:.2?})",
            cr.number, cr.title
        );
        if !checks.notes.is_empty() {
            line.push_str(&format!(" [{}]", checks.notes.join("; ")));
        }
        println!("{line}");
        for f in checks.failures.iter().take(10) {
            println!("    failed: {f}");
        }
        if checks.failures.len() > 10 {
            println!("    ... {} more", checks.failures.len() - 10);
        }
        if !checks.failures.is_empty() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
