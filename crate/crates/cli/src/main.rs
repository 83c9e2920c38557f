use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qinv_core::generators::{
    char2_generator_set, char3_generator_set, classify_module, verify_free_generation, GeneratorSet,
};
use qinv_core::hilbert::{default_budget, series_char0_for, series_closed_form, series_empirical, TruncatedSeries};
use qinv_core::quasi::{dim_component, is_m_quasi_invariant, quasi_order, symmetric_dimension, QuasiOrder};
use qinv_core::renxu::{minimal_counterexample, staircase_table};
use qinv_core::{format_poly, parse_poly, Error, PrimeField};

/// Largest m for which `staircase --verify` runs the oracle.
const STAIRCASE_VERIFY_LIMIT: u32 = 12;

#[derive(Parser, Debug)]
#[command(name = "qinv", version, about = "Quasi-invariant polynomials in three variables over F2 and F3")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Characteristic, 2 or 3.
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,

    /// Integer order m (for `staircase`, the largest m listed).
    #[arg(long, global = true, conflicts_with = "m_half")]
    m: Option<u32>,

    /// Half-integer order given as 2m, which must be odd (p = 2 only).
    #[arg(long = "m-half", global = true)]
    m_half: Option<u32>,

    #[arg(long, global = true)]
    degree: Option<u32>,

    /// Number of series coefficients.
    #[arg(long, global = true)]
    terms: Option<usize>,

    #[arg(long = "max-degree", global = true)]
    max_degree: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Cross-check against the linear-algebra oracle.
    #[arg(long, global = true)]
    verify: bool,

    #[arg(long, global = true, value_enum)]
    compare: Option<Compare>,

    /// Polynomial in x1, x2, x3.
    #[arg(long, global = true)]
    poly: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Dimension of one graded component.
    Dim,
    /// Closed-form Hilbert series, optionally against the oracle or characteristic 0.
    Hilbert,
    /// Quasi-invariance of a polynomial.
    Check,
    /// Explicit generators of Q_m.
    Generators,
    /// Minimal-degree counterexample in characteristic 3.
    Counterexample,
    /// Generator degrees in characteristic 3 for m = 0..M.
    Staircase,
    /// Label of the S3-module spanned by the orbit of a polynomial.
    Classify,
    /// Degree-by-degree check that the generators are free.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Compare {
    Empirical,
    Char0,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(msg) => Failure::Usage(format!("budget exceeded: {msg}")),
            Error::Syntax { pos, msg } => Failure::Usage(format!("--poly: {msg} at byte {pos}")),
            Error::InvalidOrder(msg) | Error::NotRepresentable(msg) => Failure::Usage(msg),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Rendered text plus whether a mathematical check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

impl Cli {
    fn order(&self) -> Result<QuasiOrder, Failure> {
        if self.p != 2 && self.p != 3 {
            return usage(format!("--p must be 2 or 3, got {}", self.p));
        }
        let twice_m = match (self.m, self.m_half) {
            (Some(m), None) => 2 * m,
            (None, Some(h)) => {
                if h % 2 == 0 {
                    return usage(format!("--m-half takes 2m and must be odd, got {h}; use --m {}", h / 2));
                }
                if self.p != 2 {
                    return usage("--m-half is only allowed with --p 2");
                }
                h
            }
            (None, None) => return usage("--m or --m-half is required"),
            (Some(_), Some(_)) => return usage("--m and --m-half are mutually exclusive"),
        };
        Ok(QuasiOrder::new(self.p, twice_m)?)
    }

    fn field(&self) -> Result<PrimeField, Failure> {
        Ok(PrimeField::new(self.p)?)
    }

    fn poly_text(&self) -> Result<&str, Failure> {
        match &self.poly {
            Some(t) => Ok(t),
            None => usage("--poly is required"),
        }
    }

    fn positive(&self, name: &str, v: Option<usize>) -> Result<Option<usize>, Failure> {
        match v {
            Some(0) => usage(format!("--{name} must be positive")),
            v => Ok(v),
        }
    }
}

fn m2(m: &QuasiOrder) -> u32 {
    m.twice_m()
}

fn series_json(s: &TruncatedSeries) -> Value {
    json!(s.coeffs)
}

fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| if f.contains(',') || f.contains('"') { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect::<Vec<_>>()
        .join(",")
}

fn render(format: Format, plain: String, value: Value, csv: Vec<Vec<String>>) -> String {
    match format {
        Format::Plain => plain,
        Format::Json => value.to_string(),
        Format::Csv => csv.iter().map(|r| csv_row(r)).collect::<Vec<_>>().join("\n"),
    }
}

fn dim(cli: &Cli) -> Outcome {
    let m = cli.order()?;
    let Some(d) = cli.degree else { return usage("--degree is required") };
    let n = dim_component(&m, d)?;
    Ok(Output::ok(render(
        cli.format,
        format!("dim Q_{m}(3, F_{})[{d}] = {n}", m.characteristic()),
        json!({"p": m.characteristic(), "m2": m2(&m), "degree": d, "dimension": n}),
        vec![
            vec!["p".into(), "m2".into(), "degree".into(), "dimension".into()],
            vec![m.characteristic().to_string(), m2(&m).to_string(), d.to_string(), n.to_string()],
        ],
    )))
}

fn hilbert(cli: &Cli) -> Outcome {
    let m = cli.order()?;
    let terms = cli.positive("terms", cli.terms)?.unwrap_or_else(|| default_budget(&m));
    let closed = series_closed_form(&m, terms)?;
    let empirical = match cli.compare {
        Some(Compare::Empirical) => {
            let budget = default_budget(&m);
            if terms > budget {
                return usage(format!("--terms {terms} exceeds the oracle budget of {budget} for this order"));
            }
            eprintln!("computing {terms} graded components with the oracle");
            Some(series_empirical(&m, terms, None)?)
        }
        _ => None,
    };
    let char0 = (cli.compare == Some(Compare::Char0)).then(|| series_char0_for(&m, terms));
    let compared = empirical.as_ref().or(char0.as_ref());
    let matched = compared.map_or(true, |s| *s == closed);
    let status = if matched { "MATCH" } else { "MISMATCH" };

    let mut plain = format!("closed_form: {closed}");
    let mut csv = vec![vec!["series".to_string()], vec!["closed_form".to_string()]];
    csv[1].extend(closed.coeffs.iter().map(u64::to_string));
    for (name, s) in [("empirical", &empirical), ("char0", &char0)] {
        if let Some(s) = s {
            plain.push_str(&format!("\n{name}: {s}"));
            let mut row = vec![name.to_string()];
            row.extend(s.coeffs.iter().map(u64::to_string));
            csv.push(row);
        }
    }
    csv[0].extend((0..terms).map(|d| format!("t{d}")));
    if compared.is_some() {
        plain.push_str(&format!("\nstatus: {status}"));
    }
    let value = json!({
        "closed_form": series_json(&closed),
        "empirical": empirical.as_ref().map(series_json),
        "char0": char0.as_ref().map(series_json),
        "match": matched,
    });
    Ok(Output {
        text: render(cli.format, plain, value, csv),
        // only disagreement with the oracle is a failed check
        failed: empirical.is_some() && !matched,
    })
}

fn check(cli: &Cli) -> Outcome {
    let m = cli.order()?;
    let k = parse_poly(cli.poly_text()?, &cli.field()?)?;
    let order = quasi_order(&k)?;
    let holds = is_m_quasi_invariant(&k, &m)?;
    let order_text = order.map_or("inf".to_string(), |o| o.to_string());
    Ok(Output {
        text: render(
            cli.format,
            format!("quasi_order={order_text}, m-quasi-invariant: {holds}"),
            json!({"p": m.characteristic(), "m2": m2(&m), "quasi_order": order, "quasi_invariant": holds}),
            vec![
                vec!["p".into(), "m2".into(), "quasi_order".into(), "quasi_invariant".into()],
                vec![m.characteristic().to_string(), m2(&m).to_string(), order_text, holds.to_string()],
            ],
        ),
        failed: !holds,
    })
}

fn generator_set(m: &QuasiOrder) -> Result<GeneratorSet, Failure> {
    Ok(match m.characteristic() {
        2 => char2_generator_set(m)?,
        _ => char3_generator_set(m)?,
    })
}

fn verify_report(cli: &Cli, set: &GeneratorSet) -> Result<qinv_core::generators::FreenessReport, Failure> {
    let max = cli.max_degree.unwrap_or(set.m.top_degree() + 3);
    eprintln!("verifying free generation through degree {max}");
    Ok(verify_free_generation(set, max)?)
}

fn generators(cli: &Cli) -> Outcome {
    let m = cli.order()?;
    let set = generator_set(&m)?;
    let report = if cli.verify { Some(verify_report(cli, &set)?) } else { None };
    let rows: Vec<(String, u32, String)> =
        set.entries.iter().map(|e| (format_poly(&e.poly), e.degree, e.rep.to_string())).collect();
    let mut plain: Vec<String> = rows.iter().map(|(p, d, r)| format!("{d:>4}  {r:<15} {p}")).collect();
    if let Some(r) = &report {
        plain.push(r.to_string());
    }
    let value = Value::Array(rows.iter().map(|(p, d, r)| json!({"poly": p, "degree": d, "rep": r})).collect());
    let mut csv = vec![vec!["degree".to_string(), "rep".to_string(), "poly".to_string()]];
    csv.extend(rows.iter().map(|(p, d, r)| vec![d.to_string(), r.clone(), p.clone()]));
    if let (Some(r), Format::Json | Format::Csv) = (&report, cli.format) {
        eprintln!("{r}");
    }
    Ok(Output {
        text: render(cli.format, plain.join("\n"), value, csv),
        failed: report.is_some_and(|r| !r.is_success()),
    })
}

fn counterexample(cli: &Cli) -> Outcome {
    if cli.m_half.is_some() || cli.p != 3 {
        return usage("counterexample is defined for --p 3 and integer --m");
    }
    let Some(mi) = cli.m else { return usage("--m is required") };
    let (plain, value, csv) = match minimal_counterexample(mi) {
        None => (
            format!("m={mi}: none (no base-3 digit 1)"),
            json!({"none": true}),
            vec![vec!["none".to_string()], vec!["true".to_string()]],
        ),
        Some(c) => {
            let poly = format_poly(&c.polynomial()?);
            (
                format!("m={mi}: a={} k={} b={} degree={}\n{poly}", c.a, c.k, c.b, c.degree),
                json!({"a": c.a, "k": c.k, "b": c.b, "degree": c.degree, "poly": poly}),
                vec![
                    ["a", "k", "b", "degree", "poly"].map(String::from).to_vec(),
                    vec![c.a.to_string(), c.k.to_string(), c.b.to_string(), c.degree.to_string(), poly],
                ],
            )
        }
    };
    Ok(Output::ok(render(cli.format, plain, value, csv)))
}

fn staircase(cli: &Cli) -> Outcome {
    if cli.m_half.is_some() {
        return usage("staircase takes an integer --m");
    }
    let max_m = cli.m.unwrap_or(12);
    if cli.verify && max_m > STAIRCASE_VERIFY_LIMIT {
        return usage(format!("--verify is limited to --m <= {STAIRCASE_VERIFY_LIMIT} by the oracle budget"));
    }
    let rows = staircase_table(max_m)?;
    let mut mismatches = Vec::new();
    if cli.verify {
        for r in &rows {
            eprintln!("checking m={} with the oracle", r.m);
            let m = QuasiOrder::integer(3, r.m)?;
            let first = (0..=r.lower).find(|&d| dim_component(&m, d).map_or(false, |n| n > symmetric_dimension(d)));
            if first != Some(r.lower) {
                mismatches.push(format!("m={}: oracle gives {first:?}, table gives {}", r.m, r.lower));
            }
        }
    }
    let mut csv = vec![["m", "lower", "upper", "in_X", "phase"].map(String::from).to_vec()];
    csv.extend(rows.iter().map(|r| {
        vec![r.m.to_string(), r.lower.to_string(), r.upper.to_string(), r.in_x.to_string(), r.phase.to_string()]
    }));
    let mut plain: Vec<String> = vec![format!("{:>4} {:>6} {:>6}  {:<5} phase", "m", "lower", "upper", "in_X")];
    plain.extend(rows.iter().map(|r| format!("{:>4} {:>6} {:>6}  {:<5} {}", r.m, r.lower, r.upper, r.in_x, r.phase)));
    if cli.verify {
        plain.push(if mismatches.is_empty() { "oracle: all lower degrees confirmed".into() } else { mismatches.join("\n") });
    }
    let value = Value::Array(
        rows.iter()
            .map(|r| json!({"m": r.m, "lower": r.lower, "upper": r.upper, "in_X": r.in_x, "phase": r.phase.to_string()}))
            .collect(),
    );
    for line in &mismatches {
        eprintln!("{line}");
    }
    Ok(Output {
        text: render(cli.format, plain.join("\n"), value, csv),
        failed: !mismatches.is_empty(),
    })
}

fn classify(cli: &Cli) -> Outcome {
    let k = parse_poly(cli.poly_text()?, &cli.field()?)?;
    if k.is_zero() {
        return usage("--poly must be nonzero");
    }
    let c = classify_module(&k)?;
    Ok(Output::ok(render(
        cli.format,
        format!("{} (dim={}, fixed_dim={}, sign_dim={})", c.label, c.dim, c.fixed_dim, c.sign_dim),
        json!({"dim": c.dim, "fixed_dim": c.fixed_dim, "sign_dim": c.sign_dim, "label": c.label.to_string()}),
        vec![
            ["dim", "fixed_dim", "sign_dim", "label"].map(String::from).to_vec(),
            vec![c.dim.to_string(), c.fixed_dim.to_string(), c.sign_dim.to_string(), c.label.to_string()],
        ],
    )))
}

fn verify(cli: &Cli) -> Outcome {
    let m = cli.order()?;
    let set = generator_set(&m)?;
    let r = verify_report(cli, &set)?;
    let failure = r.failure.as_ref().map(ToString::to_string);
    Ok(Output {
        text: render(
            cli.format,
            r.to_string(),
            json!({
                "p": m.characteristic(),
                "m2": m2(&m),
                "max_degree": r.max_degree,
                "module_degrees": r.module_degrees,
                "success": r.is_success(),
                "failure": failure,
            }),
            vec![
                ["p", "m2", "max_degree", "success", "failure"].map(String::from).to_vec(),
                vec![
                    m.characteristic().to_string(),
                    m2(&m).to_string(),
                    r.max_degree.to_string(),
                    r.is_success().to_string(),
                    failure.clone().unwrap_or_default(),
                ],
            ],
        ),
        failed: !r.is_success(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dim => dim(&cli),
        Command::Hilbert => hilbert(&cli),
        Command::Check => check(&cli),
        Command::Generators => generators(&cli),
        Command::Counterexample => counterexample(&cli),
        Command::Staircase => staircase(&cli),
        Command::Classify => classify(&cli),
        Command::Verify => verify(&cli),
    };
    match outcome {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
