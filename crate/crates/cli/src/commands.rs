use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use serde_json::{json, Value};
use tribokit::analytic::{binet_round_with_bound, char_roots, vieta_check, Complex, MIN_PRECISION};
use tribokit::genfunc::{builtin_ogf, expand, BuiltinOgf, RationalOgf};
use tribokit::identities::{self, Bounds, VerificationReport};
use tribokit::oeis::{self, crosscheck, parse_bfile, CrosscheckReport};
use tribokit::seqcore::SeedSet;
use tribokit::tribomatrix::{mat_pow, tribomatrix, Matrix3};
use tribokit::{sequence_range, SequenceKind};

use crate::bench::{run_bench, BenchReport, BenchValue};
use crate::config::{CliConfig, OutputFormat};
use crate::transport::HttpTransport;
use crate::{
    BenchArgs, Command, CrosscheckArgs, EvalArgs, ExpandArgs, Outcome, Strategy, VerifyArgs,
};

const DEFAULT_CROSSCHECK_ROWS: usize = 50;
const COUNTEREXAMPLES_SHOWN: usize = 10;

pub(crate) fn dispatch(command: Command, config: &CliConfig, format: OutputFormat) -> Outcome {
    match command {
        Command::Eval(a) => cmd_eval(a, config, format),
        Command::Verify(a) => cmd_verify(a, config, format),
        Command::Expand(a) => cmd_expand(a, format),
        Command::Matrix { n } => cmd_matrix(n, format),
        Command::Roots { precision } => cmd_roots(precision.unwrap_or(config.precision), format),
        Command::Crosscheck(a) => cmd_crosscheck(a, config, format),
        Command::Bench(a) => cmd_bench(a, config, format),
    }
}

fn no_bfile(command: &str) -> Outcome {
    Outcome::usage(format!(
        "--format bfile is only available for eval and expand, not {command}"
    ))
}

fn strs(values: &[BigInt]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn check_precision(precision: u32) -> Result<(), Outcome> {
    if precision < MIN_PRECISION {
        Err(Outcome::usage(format!(
            "precision must be at least {MIN_PRECISION} digits, got {precision}"
        )))
    } else {
        Ok(())
    }
}

fn matrix_value(kind: SequenceKind, m: &Matrix3) -> BigInt {
    match kind {
        SequenceKind::Tribonacci => m.get(0, 1).clone(),
        SequenceKind::GeneralizedLucas => m.trace(),
        SequenceKind::MinorSum => m.minor_report().total,
    }
}

fn eval_values(a: &EvalArgs, config: &CliConfig) -> Result<Vec<(i64, BigInt)>, Outcome> {
    if a.lo > a.hi {
        return Err(Outcome::usage(format!(
            "empty range: lo {} > hi {}",
            a.lo, a.hi
        )));
    }
    match a.strategy {
        Strategy::Recurrence => {
            sequence_range(a.kind, a.lo, a.hi).map_err(|e| Outcome::usage(e.to_string()))
        }
        Strategy::Matrix => {
            if a.lo < 0 {
                return Err(Outcome::usage(format!(
                    "matrix strategy requires lo >= 0, got lo = {}",
                    a.lo
                )));
            }
            let step = tribomatrix();
            let mut m = mat_pow(a.lo).map_err(|e| Outcome::usage(e.to_string()))?;
            let mut out = Vec::with_capacity((a.hi - a.lo + 1) as usize);
            for n in a.lo..=a.hi {
                out.push((n, matrix_value(a.kind, &m)));
                if n < a.hi {
                    m = &m * &step;
                }
            }
            Ok(out)
        }
        Strategy::Binet => {
            if a.kind == SequenceKind::Tribonacci {
                return Err(Outcome::usage(
                    "binet strategy supports S and C only, not T",
                ));
            }
            let precision = a.precision.unwrap_or(config.precision);
            check_precision(precision)?;
            let roots = char_roots(precision).map_err(|e| Outcome::usage(e.to_string()))?;
            let cap = roots.index_cap();
            let widest = a.lo.unsigned_abs().max(a.hi.unsigned_abs());
            if widest > cap as u64 {
                return Err(Outcome::usage(format!(
                    "binet strategy requires |n| <= {cap} at precision {precision}; range {}:{} exceeds it",
                    a.lo, a.hi
                )));
            }
            (a.lo..=a.hi)
                .map(|n| {
                    binet_round_with_bound(a.kind, n, &roots)
                        .map(|r| (n, r.value))
                        .map_err(|e| Outcome::usage(format!("binet strategy: {e}")))
                })
                .collect()
        }
    }
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Recurrence => "recurrence",
        Strategy::Matrix => "matrix",
        Strategy::Binet => "binet",
    }
}

fn cmd_eval(a: EvalArgs, config: &CliConfig, format: OutputFormat) -> Outcome {
    let values = match eval_values(&a, config) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let sym = a.kind.symbol();
    let mut out = String::new();
    match format {
        OutputFormat::Plain => {
            for (n, v) in &values {
                let _ = writeln!(out, "{sym}_{n} = {v}");
            }
        }
        OutputFormat::Csv => {
            out.push_str("n,value\n");
            for (n, v) in &values {
                let _ = writeln!(out, "{n},{v}");
            }
        }
        OutputFormat::Bfile => {
            if a.lo < 0 {
                return Outcome::usage("bfile output requires lo >= 0");
            }
            let _ = writeln!(
                out,
                "# {} ({sym}_n), n = {}..{}",
                a.kind.oeis_id(),
                a.lo,
                a.hi
            );
            for (n, v) in &values {
                let _ = writeln!(out, "{n} {v}");
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = values
                .iter()
                .map(|(n, v)| json!({ "n": n, "value": v.to_string() }))
                .collect();
            out = json_text(&json!({
                "kind": sym,
                "strategy": strategy_name(a.strategy),
                "values": rows,
            }));
        }
    }
    Outcome::ok(out)
}

fn render_reports(reports: &[VerificationReport], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            let items: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "range": r.range,
                        "cases_checked": r.cases_checked,
                        "verified": r.verified(),
                        "counterexamples": r.counterexamples.iter().map(|c| json!({
                            "indices": c.indices,
                            "side": c.side,
                            "lhs": c.lhs.to_string(),
                            "rhs": c.rhs.to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out = json_text(&Value::Array(items));
        }
        OutputFormat::Csv => {
            out.push_str("id,range,cases_checked,counterexamples\n");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{},\"{}\",{},{}",
                    r.id,
                    r.range,
                    r.cases_checked,
                    r.counterexamples.len()
                );
            }
        }
        OutputFormat::Plain | OutputFormat::Bfile => {
            for r in reports {
                let status = if r.verified() {
                    "ok".to_string()
                } else {
                    format!("FAILED, {} counterexamples", r.counterexamples.len())
                };
                let _ = writeln!(
                    out,
                    "{:<14} {:<34} {:>6} cases  {status}",
                    r.id, r.range, r.cases_checked
                );
                for c in r.counterexamples.iter().take(COUNTEREXAMPLES_SHOWN) {
                    let idx: Vec<String> = c.indices.iter().map(ToString::to_string).collect();
                    let _ = writeln!(
                        out,
                        "    at ({}): lhs = {}, {} = {}",
                        idx.join(", "),
                        c.lhs,
                        c.side,
                        c.rhs
                    );
                }
                if r.counterexamples.len() > COUNTEREXAMPLES_SHOWN {
                    let _ = writeln!(
                        out,
                        "    ... {} more",
                        r.counterexamples.len() - COUNTEREXAMPLES_SHOWN
                    );
                }
            }
        }
    }
    out
}

fn cmd_verify(a: VerifyArgs, config: &CliConfig, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Bfile {
        return no_bfile("verify");
    }
    let n = a.n.unwrap_or(config.default_range);
    let m = a.m.unwrap_or(config.default_range);
    let bounds = Bounds::new((n.lo, n.hi), (m.lo, m.hi));
    let result = if a.id.eq_ignore_ascii_case("all") {
        identities::verify_all(bounds)
    } else if a.id.eq_ignore_ascii_case("boundary") || a.id.eq_ignore_ascii_case("prod_boundary") {
        Ok(vec![identities::boundary_consistency_with_seeds(
            &SeedSet::default(),
            n.hi,
        )])
    } else {
        identities::verify(&a.id, bounds).map(|r| vec![r])
    };
    let reports = match result {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let out = render_reports(&reports, format);
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.verified())
        .map(|r| r.id.as_str())
        .collect();
    if failed.is_empty() {
        Outcome::ok(out)
    } else {
        Outcome::failed(
            out,
            format!("counterexamples found for {}", failed.join(", ")),
        )
    }
}

fn cmd_expand(a: ExpandArgs, format: OutputFormat) -> Outcome {
    let (ogf, count_arg): (RationalOgf, &str) = match (&a.num, &a.den, a.args.as_slice()) {
        (Some(num), Some(den), [count]) => match RationalOgf::from_i64(num, den) {
            Ok(o) => (o, count),
            Err(e) => return Outcome::usage(format!("invalid generating function: {e}")),
        },
        (Some(_), Some(_), _) => {
            return Outcome::usage("with --num/--den give only the term count")
        }
        (_, _, [name, count]) => match BuiltinOgf::from_name(name) {
            Some(b) => (builtin_ogf(b), count),
            None => {
                return Outcome::usage(format!(
                    "unknown generating function `{name}` (S, C, CEven)"
                ))
            }
        },
        _ => {
            return Outcome::usage(
                "expected `expand NAME COUNT` or `expand --num .. --den .. COUNT`",
            )
        }
    };
    let count: usize = match count_arg.parse() {
        Ok(c) => c,
        Err(_) => return Outcome::usage(format!("invalid term count `{count_arg}`")),
    };
    let coeffs = match expand(&ogf, count) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let mut out = String::new();
    match format {
        OutputFormat::Plain => {
            let _ = writeln!(out, "{}", strs(&coeffs).join(", "));
        }
        OutputFormat::Csv => {
            out.push_str("k,coefficient\n");
            for (k, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{k},{c}");
            }
        }
        OutputFormat::Bfile => {
            for (k, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{k} {c}");
            }
        }
        OutputFormat::Json => {
            out = json_text(&json!({
                "numerator": strs(ogf.numerator().coeffs()),
                "denominator": strs(ogf.denominator().coeffs()),
                "coefficients": strs(&coeffs),
            }));
        }
    }
    Outcome::ok(out)
}

fn cmd_matrix(n: i64, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Bfile {
        return no_bfile("matrix");
    }
    if n < 0 {
        return Outcome::usage(format!("matrix power requires n >= 0, got {n}"));
    }
    let m = match mat_pow(n) {
        Ok(m) => m,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let minors = m.minor_report();
    let trace = m.trace();
    let det = m.det();
    let out = match format {
        OutputFormat::Json => json_text(&json!({
            "n": n,
            "entries": m.rows().iter().map(|r| strs(r)).collect::<Vec<_>>(),
            "trace": trace.to_string(),
            "minors": {
                "m12": minors.minor_12.to_string(),
                "m13": minors.minor_13.to_string(),
                "m23": minors.minor_23.to_string(),
                "total": minors.total.to_string(),
            },
            "det": det.to_string(),
        })),
        OutputFormat::Csv => {
            let mut s = String::from("field,value\n");
            for (i, row) in m.rows().iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(s, "a{}{},{v}", i + 1, j + 1);
                }
            }
            let _ = writeln!(s, "trace,{trace}\nminors,{}\ndet,{det}", minors.total);
            s
        }
        _ => format!(
            "A^{n} =\n{m}\ntrace  = {trace}\nminors = {} (M12 = {}, M13 = {}, M23 = {})\ndet    = {det}\n",
            minors.total, minors.minor_12, minors.minor_13, minors.minor_23
        ),
    };
    Outcome::ok(out)
}

fn complex_text(z: &Complex, digits: usize) -> String {
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!(
        "{} {sign} {}i",
        z.re.to_decimal(digits),
        z.im.abs().to_decimal(digits)
    )
}

fn cmd_roots(precision: u32, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Bfile {
        return no_bfile("roots");
    }
    if let Err(o) = check_precision(precision) {
        return o;
    }
    let roots = match char_roots(precision) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let res = vieta_check(&roots);
    let digits = precision as usize;
    let alpha = roots.alpha().to_decimal(digits);
    let modulus = roots.modulus_beta().to_decimal(digits);
    let (beta, gamma) = (roots.beta(), roots.gamma());
    let out = match format {
        OutputFormat::Json => json_text(&json!({
            "precision": precision,
            "alpha": alpha,
            "beta": { "re": beta.re.to_decimal(digits), "im": beta.im.to_decimal(digits) },
            "gamma": { "re": gamma.re.to_decimal(digits), "im": gamma.im.to_decimal(digits) },
            "modulus_beta": modulus,
            "residuals": { "sum": res.sum_res, "pair": res.pair_res, "prod": res.prod_res },
        })),
        OutputFormat::Csv => format!(
            "field,value\nprecision,{precision}\nalpha,{alpha}\nbeta_re,{}\nbeta_im,{}\ngamma_re,{}\ngamma_im,{}\nmodulus_beta,{modulus}\nsum_res,{:e}\npair_res,{:e}\nprod_res,{:e}\n",
            beta.re.to_decimal(digits),
            beta.im.to_decimal(digits),
            gamma.re.to_decimal(digits),
            gamma.im.to_decimal(digits),
            res.sum_res,
            res.pair_res,
            res.prod_res
        ),
        _ => format!(
            "precision {precision}\nalpha     {alpha}\nbeta      {}\ngamma     {}\n|beta|    {modulus}\nsum_res   {:.3e}\npair_res  {:.3e}\nprod_res  {:.3e}\n",
            complex_text(beta, digits),
            complex_text(gamma, digits),
            res.sum_res,
            res.pair_res,
            res.prod_res
        ),
    };
    Outcome::ok(out)
}

fn render_crosscheck(kind: SequenceKind, r: &CrosscheckReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json_text(&json!({
            "kind": kind.symbol(),
            "sequence_id": r.sequence_id,
            "offset_used": r.offset_used,
            "rows_compared": r.rows_compared,
            "mismatches": r.mismatches.iter().map(|m| json!({
                "index": m.index,
                "local": m.local.to_string(),
                "bfile": m.bfile.to_string(),
            })).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut s = String::from("index,local,bfile\n");
            for m in &r.mismatches {
                let _ = writeln!(s, "{},{},{}", m.index, m.local, m.bfile);
            }
            s
        }
        _ => {
            let mut s = format!(
                "{} vs {}: {} rows compared, offset {}, {} mismatches\n",
                r.sequence_id,
                kind.symbol(),
                r.rows_compared,
                r.offset_used,
                r.mismatches.len()
            );
            for m in &r.mismatches {
                let _ = writeln!(
                    s,
                    "  row {}: computed {}, b-file {}",
                    m.index, m.local, m.bfile
                );
            }
            s
        }
    }
}

fn cmd_crosscheck(a: CrosscheckArgs, config: &CliConfig, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Bfile {
        return no_bfile("crosscheck");
    }
    let id = a.kind.oeis_id();
    let (fixture, rows) = match (a.fetch, a.fixture, a.rows) {
        // `crosscheck S --fetch 20`: the lone positional is the row count.
        (true, Some(f), None) if f.parse::<usize>().is_ok() => (None, f.parse().ok()),
        (_, f, r) => (f, r),
    };
    let rows = rows.unwrap_or(DEFAULT_CROSSCHECK_ROWS);
    let bfile = if a.fetch {
        if fixture.is_some() {
            return Outcome::usage("--fetch does not take a fixture path");
        }
        let endpoint = a.endpoint.unwrap_or_else(|| config.oeis_endpoint.clone());
        match oeis::fetch_bfile(id, &HttpTransport::new(endpoint)) {
            Ok(b) => b,
            Err(e) => return Outcome::usage(e.to_string()),
        }
    } else {
        let path = fixture
            .map(PathBuf::from)
            .unwrap_or_else(|| config.fixture_dir.join(format!("b{}.txt", &id[1..])));
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(format!("cannot read {}: {e}", path.display())),
        };
        match parse_bfile(id, &text) {
            Ok(b) => b,
            Err(e) => return Outcome::usage(format!("{}: {e}", path.display())),
        }
    };
    let report = crosscheck(a.kind, &bfile, rows);
    let out = render_crosscheck(a.kind, &report, format);
    if report.matches() {
        Outcome::ok(out)
    } else {
        Outcome::failed(
            out,
            format!(
                "{} rows of {id} disagree with {}",
                report.mismatches.len(),
                a.kind.symbol()
            ),
        )
    }
}

fn abbreviate(v: &BigInt) -> String {
    let s = v.to_string();
    let digits = s.trim_start_matches('-').len();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...{} ({digits} digits)", &s[..12], &s[s.len() - 12..])
    }
}

fn render_bench(r: &BenchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let rows: Vec<Value> = r
                .timings
                .iter()
                .map(|t| {
                    let mut o = json!({
                        "strategy": t.strategy,
                        "best_seconds": t.best.as_secs_f64(),
                    });
                    match &t.value {
                        BenchValue::Exact(v) => o["value"] = json!(v.to_string()),
                        BenchValue::Binet { value, bound } => {
                            o["value"] = json!(value.to_string());
                            o["bound"] = json!(bound);
                        }
                        BenchValue::Refused(why) => o["refused"] = json!(why),
                    }
                    o
                })
                .collect();
            json_text(&json!({
                "kind": r.kind.symbol(),
                "n": r.n,
                "repetitions": r.repetitions,
                "precision": r.precision,
                "agreement": r.agreement,
                "strategies": rows,
            }))
        }
        OutputFormat::Csv => {
            let mut s = String::from("strategy,best_seconds,value,bound,note\n");
            for t in &r.timings {
                let secs = t.best.as_secs_f64();
                let _ = match &t.value {
                    BenchValue::Exact(v) => writeln!(s, "{},{secs:.9},{v},,", t.strategy),
                    BenchValue::Binet { value, bound } => {
                        writeln!(s, "{},{secs:.9},{value},{bound:e},", t.strategy)
                    }
                    BenchValue::Refused(why) => writeln!(s, "{},{secs:.9},,,\"{why}\"", t.strategy),
                };
            }
            s
        }
        _ => {
            let mut s = format!(
                "bench {} n = {}, repetitions = {}, precision = {}\n{:<12} {:>12}  result\n",
                r.kind.symbol(),
                r.n,
                r.repetitions,
                r.precision,
                "strategy",
                "best_ms"
            );
            for t in &r.timings {
                let result = match &t.value {
                    BenchValue::Exact(v) => abbreviate(v),
                    BenchValue::Binet { value, bound } => {
                        format!("{} (bound {bound:.2e})", abbreviate(value))
                    }
                    BenchValue::Refused(why) => format!("cap/bound exceeded: {why}"),
                };
                let _ = writeln!(
                    s,
                    "{:<12} {:>12.3}  {result}",
                    t.strategy,
                    t.best.as_secs_f64() * 1e3
                );
            }
            let _ = writeln!(s, "agreement (recurrence = matrix): {}", r.agreement);
            s
        }
    }
}

fn cmd_bench(a: BenchArgs, config: &CliConfig, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Bfile {
        return no_bfile("bench");
    }
    if a.kind == SequenceKind::Tribonacci {
        return Outcome::usage("bench supports S and C only");
    }
    if a.n < 0 {
        return Outcome::usage(format!("bench requires n >= 0, got {}", a.n));
    }
    let precision = a.precision.unwrap_or(config.precision);
    if let Err(o) = check_precision(precision) {
        return o;
    }
    match run_bench(a.kind, a.n, a.repetitions, precision) {
        Ok(r) => Outcome::ok(render_bench(&r, format)),
        Err(e) => Outcome::usage(e.to_string()),
    }
}
