use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use qexc::error::Error;
use qexc::freudenthal::{quartic, w_dim, FreudenthalVector};
use qexc::jordan::{CubicDescriptor, JordanElement};
use qexc::verify::{dims_table, run_suite, Level, RunReport, Suite};
use qexc::whittaker::{admissible_f64, fourier_eval, vanishing_witness, whittaker_value, Admissibility, Component, FourierDatum, LeviPoint};

/// Exact g(J) constructions and generalized Whittaker functions.
#[derive(Parser)]
#[command(name = "qexc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Evaluate the Whittaker function of a character at a point.
    Whittaker(WhittakerArgs),
    /// Evaluate a Fourier datum at one or more points.
    Fourier(FourierArgs),
    /// Classify a character.
    Admissible(AdmissibleArgs),
    /// Print dim g(J) for the built-in descriptors.
    Dims(DimsArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// g2, f4, e6, e7, e8 or so:R.
    #[arg(long)]
    algebra: String,
    /// axioms, jacobi, killing, cartan, cayley, iso32, isoSO, schmid, or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value = "quick")]
    level: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct PointArgs {
    /// `w,x₁,…,x_d,y₁,…,y_d` in the coordinate order of the descriptor.
    #[arg(long, allow_hyphen_values = true)]
    point: Vec<String>,
    /// Evaluate on the w₀ component.
    #[arg(long)]
    w0: bool,
}

#[derive(Args)]
struct WhittakerArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    n: usize,
    /// `a,b…,c…,d` inline, or a file holding a JSON array.
    #[arg(long = "char", allow_hyphen_values = true)]
    character: String,
    #[command(flatten)]
    point: PointArgs,
    /// A single component v ∈ [−n, n].
    #[arg(long, allow_hyphen_values = true, conflicts_with = "all")]
    v: Option<i64>,
    /// All components (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FourierArgs {
    #[arg(long)]
    input: String,
    #[command(flatten)]
    point: PointArgs,
    /// Unipotent coordinates x ∈ W_J; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long)]
    allow_inadmissible: bool,
}

#[derive(Args)]
struct AdmissibleArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long = "char", allow_hyphen_values = true)]
    character: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DimsArgs {
    /// Largest r for the so:r rows.
    #[arg(long, default_value_t = 3)]
    so_max: usize,
}

enum Failure {
    Usage(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownAlgebra(_) | Error::Dimension { .. } | Error::Mismatch(_) => Failure::Usage(e.to_string()),
            Error::NotPositiveDefinite(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(json!({ "error": e.to_string() })),
        }
    }
}

type Outcome = Result<Vec<Value>, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Command::Verify(a) => cmd_verify(a),
        Command::Whittaker(a) => cmd_whittaker(a),
        Command::Fourier(a) => cmd_fourier(a),
        Command::Admissible(a) => cmd_admissible(a),
        Command::Dims(a) => Ok(cmd_dims(a)),
    };
    match out {
        Ok(lines) => {
            lines.iter().for_each(|l| println!("{l}"));
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            println!("{v}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `qexc --help` for usage.");
            ExitCode::from(2)
        }
    }
}

fn report_json(r: &RunReport, timing: bool) -> Value {
    let mut r = r.clone();
    if !timing {
        r.elapsed_ms = None;
    }
    serde_json::to_value(r).expect("reports serialize")
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let desc = CubicDescriptor::from_name(&a.algebra)?;
    let level: Level = a.level.parse()?;
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.into_iter().filter(|s| *s != Suite::IsoSo || a.algebra.starts_with("so:")).collect()
    } else {
        a.suite.split(',').map(str::parse).collect::<Result<_, _>>()?
    };
    let mut lines = Vec::new();
    for s in suites {
        let r = run_suite(&desc, s, level, a.seed)?;
        let line = report_json(&r, a.timing);
        if !r.ok() {
            lines.iter().for_each(|l| println!("{l}"));
            return Err(Failure::Check(line));
        }
        lines.push(line);
    }
    Ok(lines)
}

fn parse_numbers(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("cannot parse number `{s}`"))))
        .collect()
}

fn parse_character(desc: &CubicDescriptor, text: &str) -> Result<FreudenthalVector<f64>, Failure> {
    let values: Vec<f64> = if Path::new(text).is_file() {
        let body = std::fs::read_to_string(text).map_err(|e| Failure::Usage(format!("{text}: {e}")))?;
        serde_json::from_str(&body).map_err(|e| Failure::Usage(format!("{text}: {e}")))?
    } else {
        parse_numbers(text)?
    };
    let wd = w_dim(desc);
    if values.len() != wd {
        return Err(Error::Dimension { expected: wd, got: values.len() }.into());
    }
    Ok(FreudenthalVector::from_vec(&values))
}

fn parse_point(desc: &CubicDescriptor, text: &str, w0: bool) -> Result<LeviPoint, Failure> {
    let v = parse_numbers(text)?;
    let d = desc.dim();
    if v.len() != 1 + 2 * d {
        return Err(Error::Dimension { expected: 1 + 2 * d, got: v.len() }.into());
    }
    let p = LeviPoint::new(desc, v[0], JordanElement(v[1..=d].to_vec()), JordanElement(v[d + 1..].to_vec()))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(if w0 { p.with_component(Component::W0) } else { p })
}

fn point_json(p: &LeviPoint) -> Value {
    json!({
        "w": p.w,
        "x": p.x.0,
        "y": p.y.0,
        "component": if p.component == Component::W0 { "w0" } else { "identity" },
    })
}

fn complex_json(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(|c| json!([c.re, c.im])).collect())
}

fn classify(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>) -> Result<(Admissibility, Value), Failure> {
    let a = admissible_f64(desc, omega)?;
    let rank = match a {
        Admissibility::Trivial => 0,
        Admissibility::DegenerateRank(r) => r,
        _ => 4,
    };
    let q = quartic(desc, omega);
    Ok((a, json!({ "classification": a.label(), "rank": rank, "q": q })))
}

fn witness_json(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, seed: u64) -> Value {
    match vanishing_witness(desc, omega, seed) {
        Some(z) => json!({
            "x": z.0.iter().map(|c| c.re).collect::<Vec<_>>(),
            "y": z.0.iter().map(|c| c.im).collect::<Vec<_>>(),
        }),
        None => Value::Null,
    }
}

fn cmd_whittaker(a: WhittakerArgs) -> Outcome {
    let desc = CubicDescriptor::from_name(&a.algebra)?;
    let omega = parse_character(&desc, &a.character)?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let (class, mut head) = classify(&desc, &omega)?;
    match class {
        Admissibility::Trivial => return Err(Failure::Usage("the character is zero".into())),
        Admissibility::Vanishing => {
            head["witness"] = witness_json(&desc, &omega, a.seed);
            return Err(Failure::Check(head));
        }
        Admissibility::DegenerateRank(r) => {
            eprintln!("warning: rank {r} character; |p(Z)| is not bounded away from 0 on the symmetric space");
        }
        Admissibility::Positive => {}
    }
    let ni = a.n as i64;
    let vs: Vec<i64> = match a.v {
        Some(v) if v.abs() > ni => return Err(Failure::Usage(format!("--v must lie in [-{ni}, {ni}]"))),
        Some(v) => vec![v],
        None => (-ni..=ni).collect(),
    };
    if a.point.point.is_empty() {
        return Err(Failure::Usage("at least one --point is required".into()));
    }
    let mut lines = Vec::new();
    for text in &a.point.point {
        let p = parse_point(&desc, text, a.point.w0)?;
        let values = vs.iter().map(|&v| whittaker_value(&desc, a.n, &omega, v, &p)).collect::<Result<Vec<_>, _>>()?;
        let mut rec = head.clone();
        rec["point"] = point_json(&p);
        rec["v"] = json!(vs);
        rec["values"] = complex_json(&values);
        lines.push(rec);
    }
    Ok(lines)
}

fn cmd_fourier(a: FourierArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.input).map_err(|e| Failure::Usage(format!("{}: {e}", a.input)))?;
    let (desc, mut datum) = FourierDatum::from_json(&text)?;
    datum.allow_inadmissible = a.allow_inadmissible;
    let x = match &a.x {
        Some(s) => parse_character(&desc, s)?,
        None => FreudenthalVector::zero(desc.dim()),
    };
    if a.point.point.is_empty() {
        return Err(Failure::Usage("at least one --point is required".into()));
    }
    let mut lines = Vec::new();
    for text in &a.point.point {
        let p = parse_point(&desc, text, a.point.w0)?;
        let values = fourier_eval(&desc, &datum, &x, &p)?;
        lines.push(json!({ "point": point_json(&p), "values": complex_json(&values) }));
    }
    Ok(lines)
}

fn cmd_admissible(a: AdmissibleArgs) -> Outcome {
    let desc = CubicDescriptor::from_name(&a.algebra)?;
    let omega = parse_character(&desc, &a.character)?;
    let (class, mut rec) = classify(&desc, &omega)?;
    if class == Admissibility::Vanishing {
        rec["witness"] = witness_json(&desc, &omega, a.seed);
    }
    Ok(vec![rec])
}

fn cmd_dims(a: DimsArgs) -> Vec<Value> {
    dims_table(a.so_max).into_iter().map(|(name, dim)| json!({ "algebra": name, "dim": dim })).collect()
}
