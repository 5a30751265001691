use std::error::Error;
use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use rookdecomp::closedforms::{
    asymptotic_ratio, estimate_ck, format_ratio, growth_constant_from_gf, parity_report,
    periodicity_check, proven_growth_constant, rk_closed, ClosedFormSource, GfSource,
};
use rookdecomp::decomposition::{
    build_table_with, f_series_check, ramanujan_check, rook_equivalence_check,
    verify_decomposition,
};
use rookdecomp::oeis::{check_known_sequences, default_fixture_dir, FetchMode};
use rookdecomp::partitions::enumerate_partitions;
use rookdecomp::qseries::{gf_durfee_square_series, gf_durfee_triangle, SeriesPrefix};
use rookdecomp::report::{json_int, Check, Report};
use rookdecomp::rook::{is_unimodal, rectangular_rook_profile, rook_numbers_with_limit, Board};
use rookdecomp::Execution;

use crate::args::{Cli, Command, Format, GfArgs, KRange, NRange, PeriodArgs};

type CmdResult = Result<Outcome, Box<dyn Error>>;

pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, passed: true }
    }
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Table(a) => table(cli, a.n),
        Command::Verify(a) => verify(cli, a.n),
        Command::Gf(a) => gf(cli, a),
        Command::Formula(a) => formula(cli, a),
        Command::Parity(a) => parity(cli, a),
        Command::Period(a) => period(cli, a),
        Command::Asym(a) => asym(cli, a),
        Command::OeisCheck(a) => oeis_check(cli, a.network),
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn to_u32(n: u64) -> Result<u32, Box<dyn Error>> {
    u32::try_from(n).map_err(|_| format!("n = {n} is too large").into())
}

fn render_reports(cli: &Cli, reports: &[Report]) -> Outcome {
    let passed = reports.iter().all(Report::passed);
    let output = match cli.format {
        Format::Json => pretty(&json!({
            "passed": passed,
            "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for r in reports {
                writeln!(out, "{r}\n").unwrap();
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(
                out,
                "{}: {} of {} suites passed",
                if failed == 0 { "OK" } else { "FAILED" },
                reports.len() - failed,
                reports.len()
            )
            .unwrap();
            out
        }
    };
    Outcome { output, passed }
}

fn table(cli: &Cli, n: NRange) -> CmdResult {
    let t = build_table_with(to_u32(n.end)?, cli.max_table_n, Execution::default())?;
    Ok(Outcome::ok(match cli.format {
        Format::Text => t.to_text(),
        Format::Csv => t.to_csv(),
        Format::Json => pretty(&t.to_json()),
    }))
}

fn laguerre_report(max_cells: usize, max_weight: u32) -> Result<Report, Box<dyn Error>> {
    let mut report = Report::new(format!(
        "rook profiles: rectangles up to 5x5, Ferrers boards of weight <= {max_weight}"
    ));
    for m in 1..=5u32 {
        for n in 1..=m {
            let closed = rectangular_rook_profile(m, n)?;
            let recursion = rook_numbers_with_limit(&Board::rectangle(m, n), max_cells)?;
            report.push(Check::new(
                format!("laguerre {m}x{n}"),
                closed == recursion && is_unimodal(&closed),
                format!("{:?}", recursion.to_u64_vec().unwrap_or_default()),
            ));
        }
    }
    let mut boards = 0usize;
    let mut bad = None;
    for w in 0..=max_weight {
        for p in enumerate_partitions(w) {
            boards += 1;
            if !is_unimodal(&rook_numbers_with_limit(&Board::ferrers(&p), max_cells)?) && bad.is_none() {
                bad = Some(p.to_string());
            }
        }
    }
    report.push(Check::new(
        "ferrers unimodality",
        bad.is_none(),
        bad.map_or_else(|| format!("{boards} profiles unimodal"), |p| format!("{p} is not unimodal")),
    ));
    Ok(report)
}

fn verify(cli: &Cli, n: NRange) -> CmdResult {
    let n = to_u32(n.end)?;
    let t = build_table_with(n, cli.max_table_n, Execution::default())?;
    let reports = vec![
        verify_decomposition(&t),
        rook_equivalence_check(n, Execution::default()),
        f_series_check(n as usize, n),
        laguerre_report(cli.max_board_cells, n.min(15))?,
        ramanujan_check(n),
    ];
    Ok(render_reports(cli, &reports))
}

fn series_output(cli: &Cli, label: &str, k: u32, series: &SeriesPrefix) -> String {
    match cli.format {
        Format::Text => series.to_bfile(0),
        Format::Csv => {
            let mut out = format!("n,{label}\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                writeln!(out, "{n},{c}").unwrap();
            }
            out
        }
        Format::Json => pretty(&json!({
            "k": k,
            "statistic": label,
            "coefficients": series.to_json(),
        })),
    }
}

fn gf(cli: &Cli, a: &GfArgs) -> CmdResult {
    let order = usize::try_from(a.n.end)?;
    let (label, series) = if a.square {
        ("durfee_square", gf_durfee_square_series(a.k, order))
    } else {
        ("durfee_triangle", gf_durfee_triangle(a.k)?.expand(order))
    };
    Ok(Outcome::ok(series_output(cli, label, a.k, &series)))
}

fn formula(cli: &Cli, a: &KRange) -> CmdResult {
    // every value is computed before anything is printed
    let values = (a.n.first()..=a.n.end)
        .map(|n| rk_closed(a.k, n).map(|v| (n, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let output = match cli.format {
        Format::Text => values.iter().map(|(n, v)| format!("{n} {v}\n")).collect(),
        Format::Csv => std::iter::once(format!("n,R{}\n", a.k))
            .chain(values.iter().map(|(n, v)| format!("{n},{v}\n")))
            .collect(),
        Format::Json => pretty(&json!({
            "k": a.k,
            "values": values
                .iter()
                .map(|(n, v)| json!({"n": n, "value": json_int(v)}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(output))
}

fn parity(cli: &Cli, a: &KRange) -> CmdResult {
    let order = usize::try_from(a.n.end)?;
    let source = GfSource::new([a.k], order);
    let report = parity_report(a.k, a.n.end, &source)?;
    Ok(render_reports(cli, &[report]))
}

fn period(cli: &Cli, a: &PeriodArgs) -> CmdResult {
    let moduli = a.p.map_or_else(|| vec![2, 3, 5, 7], |p| vec![p]);
    let mut report = Report::new(format!("periodicity of R_{} modulo p, n <= {}", a.k, a.n.end));
    for p in moduli {
        let period = if a.k == 3 { 3 * p } else { 12 * p };
        let ok = periodicity_check(a.k, p, a.n.end, &ClosedFormSource)?;
        report.push(Check::new(
            format!("p={p}"),
            ok,
            format!("R_{k}(n + {period}) = R_{k}(n) mod {p}", k = a.k),
        ));
    }
    Ok(render_reports(cli, &[report]))
}

fn asym(cli: &Cli, a: &KRange) -> CmdResult {
    let ratios: Vec<(u64, BigRational)> = if proven_growth_constant(a.k).is_ok() {
        (a.n.first()..=a.n.end)
            .map(|n| asymptotic_ratio(a.k, n).map(|r| (n, r)))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let source = GfSource::new([a.k], usize::try_from(a.n.end)?);
    let estimate = estimate_ck(a.k, a.n.end, &source)?;
    let oracle = growth_constant_from_gf(a.k)?;
    let passed = estimate == oracle;

    let output = match cli.format {
        Format::Text => {
            let c = proven_growth_constant(a.k).map(|c| c.to_string()).unwrap_or_default();
            let mut out = String::new();
            for (n, r) in &ratios {
                writeln!(out, "ratio R_{}({n}) / (({c}) n^{}) = {}", a.k, a.k - 1, format_ratio(r)).unwrap();
            }
            writeln!(out, "estimate c_{} (N = {}) = {}", a.k, a.n.end, format_ratio(&estimate)).unwrap();
            writeln!(out, "generating function c_{} = {}", a.k, format_ratio(&oracle)).unwrap();
            writeln!(out, "{}", if passed { "OK: estimate matches" } else { "FAILED: estimate differs" }).unwrap();
            out
        }
        Format::Csv => {
            let mut out = String::from("n,ratio,decimal\n");
            for (n, r) in &ratios {
                let decimal = format_ratio(r);
                let decimal = decimal.rsplit(' ').next().unwrap_or_default();
                writeln!(out, "{n},{r},{decimal}").unwrap();
            }
            out
        }
        Format::Json => pretty(&json!({
            "k": a.k,
            "ratios": ratios
                .iter()
                .map(|(n, r)| json!({"n": n, "numerator": json_int(r.numer()), "denominator": json_int(r.denom()), "display": format_ratio(r)}))
                .collect::<Vec<_>>(),
            "estimate": rational_json(&estimate),
            "gf_constant": rational_json(&oracle),
            "passed": passed,
        })),
    };
    Ok(Outcome { output, passed })
}

fn rational_json(r: &BigRational) -> Value {
    let numer: &BigInt = r.numer();
    json!({"numerator": json_int(numer), "denominator": json_int(r.denom()), "display": format_ratio(r)})
}

fn oeis_check(cli: &Cli, network: bool) -> CmdResult {
    let mode = if network { FetchMode::Network } else { FetchMode::Fixture };
    let dir = cli.fixture_dir.clone().unwrap_or_else(default_fixture_dir);
    let report = check_known_sequences(mode, &dir)?;
    Ok(render_reports(cli, &[report]))
}
