use num_bigint::BigInt;
use proptest::prelude::*;

use tribokit::analytic::{binet_round_with_bound, char_roots, vieta_check};
use tribokit::genfunc::{builtin_ogf, expand, recurrence_of, BuiltinOgf, RationalOgf};
use tribokit::identities::{
    self, find, prod_ge_rhs, quartic_a_rhs, quartic_b_rhs, registry, square_rhs, Bounds, Terms,
};
use tribokit::oeis::{format_bfile, parse_bfile, OeisError};
use tribokit::seqcore::{
    c_from_t, c_seq, recurrence, s_from_t, s_lucas, sequence_range, tribonacci, CForm, SForm,
    SeedSet,
};
use tribokit::tribomatrix::{
    entries_from_tribonacci, mat_mul, mat_pow, minor_sum, pow_naive, trace_pow, tribomatrix,
};
use tribokit::{c_even, SequenceKind};

/// Naive i128 table over `[-span, span]`, independent of the library walkers.
fn oracle(seeds: [i128; 3], coeffs: [i128; 3], span: i64) -> impl Fn(i64) -> i128 {
    let span_u = span as usize;
    let mut fwd = seeds.to_vec();
    while fwd.len() <= span_u {
        let k = fwd.len();
        fwd.push(coeffs[0] * fwd[k - 1] + coeffs[1] * fwd[k - 2] + coeffs[2] * fwd[k - 3]);
    }
    // back[j] is the value at index -(j + 1)
    let mut back: Vec<i128> = Vec::new();
    let at = |fwd: &Vec<i128>, back: &Vec<i128>, i: i64| -> i128 {
        if i >= 0 {
            fwd[i as usize]
        } else {
            back[(-i - 1) as usize]
        }
    };
    for i in (-span..0).rev() {
        // a_{i+3} = c1 a_{i+2} + c2 a_{i+1} + c3 a_i, with c3 = ±1
        let v = (at(&fwd, &back, i + 3)
            - coeffs[0] * at(&fwd, &back, i + 2)
            - coeffs[1] * at(&fwd, &back, i + 1))
            * coeffs[2];
        back.push(v);
    }
    move |i| at(&fwd, &back, i)
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

#[test]
fn recurrences_match_naive_oracle() {
    let t = oracle([0, 1, 1], [1, 1, 1], 120);
    let s = oracle([3, 1, 3], [1, 1, 1], 120);
    let c = oracle([3, -1, -1], [-1, -1, 1], 120);
    for n in -120..=120 {
        assert_eq!(tribonacci(n), big(t(n)), "T_{n}");
        assert_eq!(s_lucas(n), big(s(n)), "S_{n}");
        assert_eq!(c_seq(n), big(c(n)), "C_{n}");
    }
}

#[test]
fn forward_and_backward_windows_agree() {
    for kind in SequenceKind::ALL {
        let whole = sequence_range(kind, -200, 200).unwrap();
        let rec = recurrence(kind);
        let [c1, c2, c3] = rec.coeffs();
        for w in whole.windows(4) {
            assert_eq!(w[3].1, &w[2].1 * c1 + &w[1].1 * c2 + &w[0].1 * c3);
        }
        for (i, v) in whole.iter().step_by(37) {
            assert_eq!(*v, rec.value(*i));
        }
        let neg = sequence_range(kind, -200, -1).unwrap();
        let pos = sequence_range(kind, 0, 200).unwrap();
        assert_eq!([neg, pos].concat(), whole);
    }
}

#[test]
fn closed_forms_agree() {
    for n in -100..=100 {
        let s = s_lucas(n);
        assert_eq!(s_from_t(n, SForm::MinorForm), s, "n = {n}");
        assert_eq!(s_from_t(n, SForm::OgfForm), s, "n = {n}");
        let c = c_seq(n);
        assert_eq!(c_from_t(n, CForm::MinorExpansion), c, "n = {n}");
        assert_eq!(c_from_t(n, CForm::SquareForm), c, "n = {n}");
    }
}

#[test]
fn even_recurrence_matches() {
    for k in 0..=100 {
        assert_eq!(c_even(k).unwrap(), c_seq(2 * k));
    }
}

#[test]
fn reflected_lucas_is_minor_sum() {
    for n in 0..=100 {
        assert_eq!(s_lucas(-n), c_seq(n));
    }
}

#[test]
fn matrix_powers() {
    let a = tribomatrix();
    for n in 0..=64 {
        let p = mat_pow(n).unwrap();
        assert_eq!(p, entries_from_tribonacci(n).unwrap(), "n = {n}");
        assert_eq!(p, pow_naive(&a, n as u64));
        assert_eq!(trace_pow(n).unwrap(), s_lucas(n));
        let minors = minor_sum(n).unwrap();
        assert_eq!(minors.total, c_seq(n));
        assert_eq!(
            minors.total,
            &minors.minor_12 + &minors.minor_13 + &minors.minor_23
        );
        assert_eq!(p.det(), BigInt::from(1));
    }
    for i in 0..=32 {
        for j in 0..=32 {
            assert_eq!(
                mat_pow(i + j).unwrap(),
                mat_mul(&mat_pow(i).unwrap(), &mat_pow(j).unwrap())
            );
        }
    }
}

#[test]
fn vieta_residual_scaling() {
    for p in [15u32, 30] {
        let v = vieta_check(&char_roots(p).unwrap());
        let limit = 10f64.powf(1.0 - p as f64 / 2.0);
        assert!(v.max() < limit, "precision {p}: {v:?}");
        assert!(v.sum_res >= 0.0 && v.pair_res >= 0.0 && v.prod_res >= 0.0);
    }
}

#[test]
fn residuals_do_not_grow_with_precision() {
    let precisions: Vec<u32> = (15..=60).chain([75, 90, 120]).collect();
    let res: Vec<_> = precisions
        .iter()
        .map(|&p| vieta_check(&char_roots(p).unwrap()))
        .collect();
    for w in res.windows(2) {
        assert!(w[1].sum_res <= 10.0 * w[0].sum_res);
        assert!(w[1].pair_res <= 10.0 * w[0].pair_res);
        assert!(w[1].prod_res <= 10.0 * w[0].prod_res);
    }
}

#[test]
fn binet_rounding_is_exact_and_bound_is_tame() {
    let roots = char_roots(30).unwrap();
    let b0 = binet_round_with_bound(SequenceKind::GeneralizedLucas, 0, &roots)
        .unwrap()
        .bound;
    for n in 0..=40 {
        let s = binet_round_with_bound(SequenceKind::GeneralizedLucas, n, &roots).unwrap();
        assert_eq!(s.value, s_lucas(n), "S_{n}");
        if n > 0 {
            assert!(s.bound < b0 + n as f64 * 1e-12, "bound at {n}: {}", s.bound);
        }
        let c = binet_round_with_bound(SequenceKind::MinorSum, n, &roots).unwrap();
        assert_eq!(c.value, c_seq(n), "C_{n}");
    }
}

#[test]
fn builtin_ogfs_expand_to_sequences() {
    let s = expand(&builtin_ogf(BuiltinOgf::S), 500).unwrap();
    let c = expand(&builtin_ogf(BuiltinOgf::C), 500).unwrap();
    let ce = expand(&builtin_ogf(BuiltinOgf::CEven), 500).unwrap();
    for n in 0..500 {
        assert_eq!(s[n], s_lucas(n as i64));
        assert_eq!(c[n], c_seq(n as i64));
        assert_eq!(ce[n], c_seq(2 * n as i64));
    }
}

#[test]
fn expansion_is_linear_in_the_numerator() {
    for kind in BuiltinOgf::ALL {
        let base = builtin_ogf(kind);
        for other in BuiltinOgf::ALL {
            let num2 = builtin_ogf(other).numerator().clone();
            let sum =
                RationalOgf::new(base.numerator() + &num2, base.denominator().clone()).unwrap();
            let second = RationalOgf::new(num2, base.denominator().clone()).unwrap();
            let lhs = expand(&sum, 100).unwrap();
            let a = expand(&base, 100).unwrap();
            let b = expand(&second, 100).unwrap();
            let rhs: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn recurrence_reproduces_expansion() {
    for kind in BuiltinOgf::ALL {
        let ogf = builtin_ogf(kind);
        let rec = recurrence_of(&ogf).unwrap();
        assert_eq!(rec.run(200), expand(&ogf, 200).unwrap());
    }
}

#[test]
fn full_catalogue_holds() {
    let reports = identities::verify_all(Bounds::square(0, 100)).unwrap();
    let ids: Vec<_> = reports.iter().map(|r| r.id.as_str()).collect();
    let expected: Vec<_> = registry().iter().map(|r| r.id).collect();
    assert_eq!(ids, expected);
    for r in &reports {
        assert!(r.verified(), "{}: {:?}", r.id, r.counterexamples.first());
    }
    let prod_ge = reports.iter().find(|r| r.id == "PROD_GE").unwrap();
    assert_eq!(prod_ge.cases_checked, 101 * 102 / 2);
    let cons3 = reports.iter().find(|r| r.id == "CONS_3").unwrap();
    assert_eq!(cons3.cases_checked, 101 * 99);

    let again = identities::verify_all(Bounds::square(0, 100)).unwrap();
    assert_eq!(reports, again);
}

#[test]
fn product_formula_at_m_zero_is_the_square() {
    let terms = Terms::new(&SeedSet::default(), -8, 210);
    let square = find("SQUARE").unwrap();
    for n in 0..=100 {
        assert_eq!(prod_ge_rhs(&terms, n, 0), square_rhs(&terms, n, 0));
        assert_eq!((square.lhs)(&terms, n, 0), prod_ge_rhs(&terms, n, 0));
    }
}

#[test]
fn quartic_forms_agree() {
    let terms = Terms::new(&SeedSet::default(), -8, 410);
    for n in 0..=100 {
        let a = quartic_a_rhs(&terms, n, 0);
        let b = quartic_b_rhs(&terms, n, 0);
        assert_eq!(a, b, "n = {n}");
        // their difference is twice the C_n^2 - C_{2n} - 2S_n relation
        let c = terms.c(n);
        assert_eq!(&a - &b, (terms.c(2 * n) * 2 + terms.s(n) * 4 - &c * &c * 2));
    }
}

#[test]
fn multiple_index_product_extends_to_small_m() {
    let terms = Terms::new(&SeedSet::default(), -220, 220);
    for n in 0..=100 {
        for m in [0i64, 1] {
            assert_eq!(
                identities::cons3_lhs(&terms, n, m),
                identities::cons3_rhs(&terms, n, m),
                "({n}, {m})"
            );
        }
    }
}

#[test]
fn bfile_round_trip() {
    for kind in SequenceKind::ALL {
        let text = format_bfile(kind, 0, 100).unwrap();
        let parsed = parse_bfile(kind.oeis_id(), &text).unwrap();
        assert_eq!(
            parsed.rows(),
            sequence_range(kind, 0, 100).unwrap().as_slice()
        );
    }
}

proptest! {
    #[test]
    fn range_matches_pointwise(lo in -150i64..150, len in 0i64..60) {
        for kind in SequenceKind::ALL {
            let rows = sequence_range(kind, lo, lo + len).unwrap();
            prop_assert_eq!(rows.len() as i64, len + 1);
            for (i, v) in rows {
                prop_assert_eq!(v, recurrence(kind).value(i));
            }
        }
    }

    #[test]
    fn parser_reports_exact_bad_line(rows in 1usize..40, bad_at in 0usize..40, junk in "[a-z]{1,6}") {
        let bad_at = bad_at % rows;
        let mut lines: Vec<String> = (0..rows).map(|i| format!("{i} {}", i * 7)).collect();
        lines[bad_at] = format!("{bad_at} {junk}");
        let text = format!("# header\n{}\n", lines.join("\n"));
        let err = parse_bfile("A000001", &text).unwrap_err();
        prop_assert_eq!(err, OeisError::Malformed { line: bad_at + 2, content: lines[bad_at].clone() });
    }

    #[test]
    fn format_parse_inverse(lo in 0i64..200, len in 0i64..100) {
        for kind in SequenceKind::ALL {
            let text = format_bfile(kind, lo, lo + len).unwrap();
            let b = parse_bfile(kind.oeis_id(), &text).unwrap();
            let expected = sequence_range(kind, lo, lo + len).unwrap();
            prop_assert_eq!(b.rows(), expected.as_slice());
        }
    }
}
