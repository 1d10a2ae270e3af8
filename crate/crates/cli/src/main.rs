use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use cliffop::fock::{self, FischerRoute};
use cliffop::maxwell::{maxwell_solution, MaxwellJson, MaxwellSolution, SeedKind};
use cliffop::poly::PolynomialJson;
use cliffop::scalar::format_rational;
use cliffop::verify::{self, CheckError, IdentityReport};
use cliffop::{parse, Polynomial, Rational, Signature, WeightedFunction};

/// Exact operator-identity checker and generator for Clifford-valued polynomials.
#[derive(Debug, Parser)]
#[command(name = "cliffop", version)]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "CLIFFOP_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that an operator expression (or a named suite) vanishes.
    Verify(VerifyArgs),
    /// Clifford-Hermite states (L+)^k applied to a Gaussian-weighted seed.
    GenHermite(HermiteArgs),
    /// Closed-form solution of the Maxwell-type system for a seed.
    GenMaxwell(MaxwellArgs),
    /// Split a homogeneous polynomial into monogenic pieces.
    Decompose(DecomposeArgs),
    /// Cauchy-Kowalevskaya extension into one more variable.
    CkExtend(CkArgs),
    /// Sample a stored function at points.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Args)]
struct Dim {
    /// Number of variables.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Signature "p,q" (defaults to 0,n).
    #[arg(long, value_parser = parse_signature)]
    signature: Option<(usize, usize)>,
}

impl Dim {
    fn signature(&self) -> Result<Signature, CliError> {
        let (p, q) = self.signature.unwrap_or((0, self.n));
        Ok(Signature::new(p, q)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Report {
    Json,
    Md,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    expr: Option<String>,
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    dim: Dim,
    /// Degree bound of the spanning set.
    #[arg(long, env = "CLIFFOP_DEGREE", default_value_t = 5)]
    degree: usize,
    /// Override the λ truncation order.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, value_enum, default_value_t = Report::Json)]
    report: Report,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HermiteArgs {
    #[command(flatten)]
    dim: Dim,
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Seed polynomial (monogenized before use).
    #[arg(long)]
    seed_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MaxwellArgs {
    #[command(flatten)]
    dim: Dim,
    /// Homogeneity degree of the default seed.
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Append sampled values and residual norms.
    #[arg(long)]
    numeric: bool,
    #[arg(long = "lambda", default_values_t = vec![1.0])]
    lambdas: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// RNG seed for sample points.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Emit the full tower Σ x^s M_{k−s} instead of the harmonic split.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CkArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Polynomial/weighted-function JSON, or a Maxwell solution.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 10)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// λ for Maxwell solutions.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Algebra(#[from] cliffop::Error),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Parse(#[from] cliffop::ParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: malformed JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    Ok((p.trim().parse().map_err(|e| format!("{e}"))?, q.trim().parse().map_err(|e| format!("{e}"))?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io { path: p.display().to_string(), source })
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<(), CliError> {
    emit(out, &serde_json::to_string_pretty(v).expect("values serialize"))
}

fn read_poly(path: &Path) -> Result<Polynomial<Rational>, CliError> {
    Ok(Polynomial::from_json(&read_json::<PolynomialJson>(path)?)?)
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect()).collect()
}

fn numeric_values(values: &[cliffop::Multivector<f64>]) -> Vec<Value> {
    values
        .iter()
        .map(|m| Value::Array(m.terms().map(|(b, c)| json!({"blade": b.indices(), "value": c})).collect()))
        .collect()
}

fn verify_cmd(a: &VerifyArgs) -> Result<bool, CliError> {
    let sig = a.dim.signature()?;
    let reports: Vec<IdentityReport> = match (&a.expr, &a.suite) {
        (Some(text), _) => {
            let expr = parse(text)?;
            let opts = verify::CheckOptions { signature: sig, bound: a.degree, lambda_order: a.order };
            vec![verify::check_identity(&expr, &opts)?]
        }
        (None, Some(name)) => {
            let items = verify::builtin_suite(name, sig.dim())?;
            items
                .iter()
                .map(|item| {
                    let opts = verify::CheckOptions { signature: sig, bound: a.degree, lambda_order: a.order };
                    let mut r = verify::check_identity(&item.expr, &opts)?;
                    r.name = Some(item.name.clone());
                    r.tag = Some(item.tag.to_string());
                    Ok(r)
                })
                .collect::<Result<_, cliffop::Error>>()?
        }
        (None, None) => return Err(CliError::Usage("one of --expr or --suite is required".into())),
    };
    let all_zero = reports.iter().all(IdentityReport::is_zero);
    match a.report {
        Report::Md => emit(a.out.as_deref(), &verify::markdown_table(&reports))?,
        Report::Json => {
            let lines: Vec<String> = reports.iter().map(|r| r.to_json().to_string()).collect();
            emit(a.out.as_deref(), &lines.join("\n"))?
        }
    }
    Ok(all_zero)
}

fn seed_or_default(file: Option<&Path>, sig: Signature) -> Result<Polynomial<Rational>, CliError> {
    match file {
        Some(p) => Ok(fock::monogenic_part(&read_poly(p)?)?),
        None => Ok(Polynomial::one(sig)),
    }
}

fn hermite_cmd(a: &HermiteArgs) -> Result<bool, CliError> {
    let sig = a.dim.signature()?;
    let seed = seed_or_default(a.seed_file.as_deref(), sig)?;
    if seed.is_zero() {
        return Err(CliError::Usage("seed has no monogenic component of top degree".into()));
    }
    let states = fock::hermite_sequence(&seed, a.k)?;
    let ratios: Vec<Value> = (1..states.len())
        .map(|k| {
            json!({
                "k": k,
                "observed": format_rational(&fock::norm_ratio(&states, k).expect("k in range")),
                "predicted": format_rational(&fock::predicted_ratio(k, sig.dim())),
            })
        })
        .collect();
    let ck: Vec<Value> = fock::ck_comparison(&states, sig.dim())
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "product_form": format_rational(&c.product_form),
                "printed_form": format_rational(&c.printed_form),
                "observed": format_rational(&c.observed),
            })
        })
        .collect();
    emit_json(
        a.out.as_deref(),
        &json!({
            "n": sig.dim(),
            "signature": [sig.p(), sig.q()],
            "seed": seed.to_json(),
            "states": states.iter().map(fock::HermiteState::to_json).collect::<Vec<_>>(),
            "norm_ratios": ratios,
            "c_k": ck,
        }),
    )?;
    Ok(true)
}

fn maxwell_cmd(a: &MaxwellArgs) -> Result<bool, CliError> {
    let sig = a.dim.signature()?;
    let (seed, kind) = match &a.seed_file {
        Some(p) => {
            let seed = read_poly(p)?;
            let kind = if fock::is_monogenic(&seed)? { SeedKind::Monogenic } else { SeedKind::General };
            (seed, kind)
        }
        None => {
            let seed = fock::monogenic_seeds(sig, a.s)?
                .into_iter()
                .next()
                .ok_or_else(|| CliError::Usage(format!("no monogenic seed of degree {}", a.s)))?;
            (seed, SeedKind::Monogenic)
        }
    };
    let sol = maxwell_solution(&seed, kind)?;
    let mut v = serde_json::to_value(sol.to_json()).expect("serializes");
    if a.numeric {
        let pts = sample_points(sig.dim(), a.points, a.rng_seed);
        let pde = sol.pde_residual()?;
        let eig = sol.eigen_residual()?;
        let mut runs = Vec::new();
        for &lambda in &a.lambdas {
            runs.push(json!({
                "lambda": lambda,
                "values": numeric_values(&sol.sample(lambda, &pts)?),
                "pde_residual_max": sol.numeric_residual(&pde, lambda, &pts)?,
                "eigen_residual_max": sol.numeric_residual(&eig, lambda, &pts)?,
            }));
        }
        v["numeric"] = json!({ "points": pts, "runs": runs });
    }
    emit_json(a.out.as_deref(), &v)?;
    Ok(true)
}

fn decompose_cmd(a: &DecomposeArgs) -> Result<bool, CliError> {
    let p = read_poly(&a.input)?;
    let v = if a.full {
        fock::fischer_tower(&p, FischerRoute::Dirac)?.to_json()
    } else {
        let (top, low) = fock::fischer_split(&p)?;
        json!({ "k": p.degree().unwrap_or(0), "top": top.to_json(), "lower": low.to_json() })
    };
    emit_json(a.out.as_deref(), &v)?;
    Ok(true)
}

fn ck_cmd(a: &CkArgs) -> Result<bool, CliError> {
    let f = read_poly(&a.input)?;
    emit_json(a.out.as_deref(), &serde_json::to_value(fock::ck_extension(&f)?.to_json()).expect("serializes"))?;
    Ok(true)
}

fn eval_cmd(a: &EvalArgs) -> Result<bool, CliError> {
    let raw: Value = read_json(&a.input)?;
    let bad = |source| CliError::Json { path: a.input.display().to_string(), source };
    let (n, values): (usize, Box<dyn Fn(&[Vec<f64>]) -> Result<Vec<cliffop::Multivector<f64>>, CliError>>) =
        if raw.get("cosh_part").is_some() {
            let sol = MaxwellSolution::from_json(&serde_json::from_value::<MaxwellJson>(raw).map_err(bad)?)?;
            let lambda = a.lambda;
            (sol.n(), Box::new(move |pts| Ok(sol.sample(lambda, pts)?)))
        } else {
            let f = WeightedFunction::from_json(&serde_json::from_value::<PolynomialJson>(raw).map_err(bad)?)?;
            (f.n(), Box::new(move |pts| pts.iter().map(|p| Ok(f.evaluate(p)?)).collect()))
        };
    let pts = sample_points(n, a.points, a.rng_seed);
    emit_json(a.out.as_deref(), &json!({ "numeric": { "points": pts, "values": numeric_values(&values(&pts)?) } }))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // a second initialization only happens in embedded use; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let result = match &cli.command {
        Command::Verify(a) => verify_cmd(a),
        Command::GenHermite(a) => hermite_cmd(a),
        Command::GenMaxwell(a) => maxwell_cmd(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::CkExtend(a) => ck_cmd(a),
        Command::Eval(a) => eval_cmd(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
