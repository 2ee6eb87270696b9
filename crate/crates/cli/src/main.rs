use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use adele::dirichlet::{
    cauchy_kernel_transform, gamma_af, log_norm_transform, riesz_kernel, unit_ball_zeta, SeriesResult,
};
use adele::golden::run_goldens;
use adele::harmonic::{
    ball_character_integral, canonical_character, character_at, character_rank, measure, nontrivial_witness,
    sphere_character_integral, Region, RotationNumber,
};
use adele::padic::{crt_decompose, crt_recompose, window_primes};
use adele::rational::{format_rational, parse_rational};
use adele::schwartz::{TestFunction, TestFunctionJson};
use adele::{AdeleError, FiniteAdele, OrdResult, RadixTable};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

/// Exact arithmetic and harmonic analysis on the finite adeles of Q.
///
/// Adele arguments are rational literals (`5/12`, `-3`) embedded to
/// `--precision`, or digit strings `γ:a_γ,…,a_{N-1}|N` and `zero|N`.
/// The radix table ceiling can be raised with ADELE_TABLE_CEILING.
#[derive(Parser)]
#[command(name = "adele", version)]
struct Cli {
    /// Print machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    /// Precision index N used when embedding rational literals
    #[arg(long, global = true, default_value_t = 10, allow_negative_numbers = true)]
    precision: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List rho(n), ladder values psi_exp(n) and radices
    Table {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        to: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Print the digit string of an adele
    Expand {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// x + y
    Add {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// x · y
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// -x
    Neg {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Order of x, or a lower bound when x is zero to its precision
    Ord {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Norm ‖x‖ = psi_exp(-ord x)
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Fractional part {x} in [0, 1)
    Frac {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Character value χ(ξx) as a rotation number
    Chi {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Frequency ξ; defaults to 1
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Rank of the character χ_ξ and a point where it is nontrivial
    Rank {
        #[arg(allow_hyphen_values = true)]
        xi: String,
    },
    /// Haar measure of a ball, sphere or scaled unit ball qẐ
    Measure {
        #[command(subcommand)]
        region: MeasureRegion,
    },
    /// Exact integral of χ(-ξx) over a ball or sphere
    Integral {
        #[command(subcommand)]
        region: IntegralRegion,
    },
    /// Split into p-adic components and glue them back
    Crt {
        #[command(subcommand)]
        action: CrtAction,
    },
    /// Fourier transform of a test function given as JSON
    Fourier {
        file: PathBuf,
        /// Apply the inverse transform
        #[arg(long)]
        inverse: bool,
    },
    /// Compare ⟨f, g⟩ with ⟨f̂, ĝ⟩
    Parseval { f: PathBuf, g: PathBuf },
    /// Evaluate a Dirichlet-series integral with a certified tail bound
    Special {
        #[command(subcommand)]
        function: Special,
    },
    /// Run the built-in known-value checks
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum MeasureRegion {
    /// 𝔞^n = psi_exp(-n)Ẑ
    Ball {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// 𝔞^n minus 𝔞^{n-1}
    Sphere {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// qẐ for a rational q
    Scaled {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Subcommand)]
enum IntegralRegion {
    Ball {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    Sphere {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
}

#[derive(Subcommand)]
enum CrtAction {
    /// p-adic components of x for the listed primes
    Decompose {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Decompose x over every prime of the window [lo, N) and recompose
    Roundtrip {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Lower end of the window; defaults to min(order, precision)
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
    },
}

#[derive(clap::Args)]
struct SeriesArgs {
    /// Requested bound on the truncation error
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,
}

#[derive(clap::Args)]
struct ComplexS {
    /// Complex exponent as RE,IM (or just RE)
    #[arg(long = "s", value_name = "RE,IM", value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(text)?, 0.0)),
    }
}

#[derive(Subcommand)]
enum Special {
    /// ∫ ‖x‖^{s-1} χ(x) dx, Re s > 1
    Gamma {
        #[command(flatten)]
        s: ComplexS,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// ∫ ‖x‖^{s-1} χ(-ξx) dx, Re s > 1
    Riesz {
        #[command(flatten)]
        s: ComplexS,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// ∫ log‖x‖ χ(-ξx) dx
    Logint {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// ∫ χ(-ξx) / (‖x‖² + M²) dx
    Cauchy {
        #[arg(long)]
        m: f64,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// ∫_Ẑ ‖x‖^{s-1} dx, Re s > 0
    Zeta {
        #[command(flatten)]
        s: ComplexS,
        #[command(flatten)]
        series: SeriesArgs,
    },
}

enum CliError {
    Usage(String),
    Domain(AdeleError),
    Failed(String),
}

impl From<AdeleError> for CliError {
    fn from(e: AdeleError) -> Self {
        match e {
            AdeleError::Parse(msg) => CliError::Usage(msg),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Plain and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Display, json: Value) -> Output {
    Output {
        text: text.to_string(),
        json,
    }
}

struct Ctx {
    table: RadixTable,
    precision: i64,
}

impl Ctx {
    fn adele(&self, s: &str) -> CliResult<FiniteAdele> {
        Ok(FiniteAdele::parse_literal(s, self.precision, &self.table)?)
    }
}

fn adele_output(x: &FiniteAdele) -> Output {
    out(
        x,
        json!({
            "adele": x.to_string(),
            "order": x.order(),
            "digits": x.digits(),
            "precision": x.precision(),
        }),
    )
}

fn rational_output(key: &str, q: &BigRational) -> Output {
    let s = format_rational(q);
    out(&s, json!({ key: s }))
}

fn rotation_output(rot: &RotationNumber) -> Output {
    let z = rot.to_complex();
    out(
        rot,
        json!({ "rotation": format_rational(rot.value()), "re": z.re, "im": z.im }),
    )
}

fn series_output(r: &SeriesResult) -> Output {
    json_only(json!({
        "value_re": r.value.re,
        "value_im": r.value.im,
        "tail_bound": r.tail_bound,
        "terms": r.terms_used,
    }))
}

fn json_only(json: Value) -> Output {
    out(json.to_string(), json)
}

fn read_function(path: &PathBuf, table: &RadixTable) -> CliResult<TestFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let json: TestFunctionJson =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(TestFunction::from_json(&json, table)?)
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn run(cli: Cli) -> CliResult<Output> {
    let ctx = Ctx {
        table: table_from_env()?,
        precision: cli.precision,
    };
    let t = &ctx.table;
    Ok(match cli.command {
        Command::Table { from, to, format } => {
            if from > to {
                return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let mut rows = Vec::new();
            let mut csv = String::from("n,rho,psi_exp,radix");
            for n in from..=to {
                let (rho, v, p) = (t.rho(n)?, format_rational(&t.psi_exp(n)?), t.radix(n)?);
                csv.push_str(&format!("\n{n},{rho},{v},{p}"));
                rows.push(json!({ "n": n, "rho": rho, "psi_exp": v, "radix": p }));
            }
            let json = Value::Array(rows);
            match format {
                TableFormat::Csv => out(csv, json),
                TableFormat::Json => out(serde_json::to_string_pretty(&json).unwrap(), json),
            }
        }
        Command::Expand { x } => adele_output(&ctx.adele(&x)?),
        Command::Add { x, y } => adele_output(&ctx.adele(&x)?.add(&ctx.adele(&y)?, t)?),
        Command::Mul { x, y } => adele_output(&ctx.adele(&x)?.mul(&ctx.adele(&y)?, t)?),
        Command::Neg { x } => adele_output(&ctx.adele(&x)?.negate(t)?),
        Command::Ord { x } => {
            let ord = ctx.adele(&x)?.ord();
            let json = match ord {
                OrdResult::Known(g) => json!({ "ord": g, "exact": true }),
                OrdResult::AtLeast(n) => json!({ "ord": n, "exact": false }),
            };
            out(ord, json)
        }
        Command::Norm { x } => rational_output("norm", &ctx.adele(&x)?.norm(t)?),
        Command::Frac { x } => rational_output("frac", &ctx.adele(&x)?.fractional_part(t)?),
        Command::Chi { x, xi } => {
            let x = ctx.adele(&x)?;
            let rot = match xi {
                Some(xi) => character_at(&ctx.adele(&xi)?, &x, t)?,
                None => canonical_character(&x, t)?,
            };
            rotation_output(&rot)
        }
        Command::Rank { xi } => {
            let xi = ctx.adele(&xi)?;
            let rank = character_rank(&xi, t)?;
            let w = nontrivial_witness(&xi, t)?;
            let value = character_at(&xi, &w, t)?;
            out(
                format!("{rank}  (χ_ξ({w}) = {value})"),
                json!({ "rank": rank, "witness": w.to_string(), "witness_rotation": format_rational(value.value()) }),
            )
        }
        Command::Measure { region } => {
            let region = match region {
                MeasureRegion::Ball { n } => Region::Ball(n),
                MeasureRegion::Sphere { n } => Region::Sphere(n),
                MeasureRegion::Scaled { q } => Region::ScaledUnit(parse_rational(&q)?),
            };
            rational_output("measure", measure(&region, t)?.value())
        }
        Command::Integral { region } => {
            let v = match region {
                IntegralRegion::Ball { n, xi } => ball_character_integral(n, &ctx.adele(&xi)?, t)?,
                IntegralRegion::Sphere { n, xi } => sphere_character_integral(n, &ctx.adele(&xi)?, t)?,
            };
            rational_output("integral", &v)
        }
        Command::Crt { action } => match action {
            CrtAction::Decompose { x, primes } => {
                let parts = crt_decompose(&ctx.adele(&x)?, &primes, t)?;
                let json = parts
                    .iter()
                    .map(|(p, c)| {
                        (
                            p.to_string(),
                            json!({
                                "valuation": c.valuation(),
                                "digits": c.digits(),
                                "precision": c.precision(),
                                "rational": format_rational(&c.to_rational()),
                            }),
                        )
                    })
                    .collect::<serde_json::Map<_, _>>();
                json_only(Value::Object(json))
            }
            CrtAction::Roundtrip { x, lo } => {
                let x = ctx.adele(&x)?;
                let hi = x.precision();
                let lo = lo.unwrap_or(x.order().min(hi));
                let primes = window_primes(lo, hi, t)?;
                let back = crt_recompose(&crt_decompose(&x, &primes, t)?, lo, hi, t)?;
                if back != x {
                    return Err(CliError::Failed(format!("round trip changed {x} into {back}")));
                }
                json_only(json!({ "adele": back.to_string(), "primes": primes, "lo": lo, "hi": hi }))
            }
        },
        Command::Fourier { file, inverse } => {
            let f = read_function(&file, t)?;
            let g = if inverse { f.inverse_fourier(t)? } else { f.fourier(t)? };
            let json = serde_json::to_value(g.to_json()).unwrap();
            out(serde_json::to_string_pretty(&json).unwrap(), json)
        }
        Command::Parseval { f, g } => {
            let (f, g) = (read_function(&f, t)?, read_function(&g, t)?);
            let lhs = f.inner_product(&g, t)?;
            let rhs = f.fourier(t)?.inner_product(&g.fourier(t)?, t)?;
            let gap = (lhs - rhs).norm();
            out(
                format!("<f,g> = {lhs:.12}\n<Ff,Fg> = {rhs:.12}\ngap = {gap:.2e}"),
                json!({ "inner": complex_pair(lhs), "inner_hat": complex_pair(rhs), "gap": gap }),
            )
        }
        Command::Special { function } => {
            let r = match function {
                Special::Gamma { s, series } => gamma_af(s.s, series.eps, t)?,
                Special::Riesz { s, xi, series } => riesz_kernel(s.s, &ctx.adele(&xi)?, series.eps, t)?,
                Special::Logint { xi, series } => log_norm_transform(&ctx.adele(&xi)?, series.eps, t)?,
                Special::Cauchy { m, xi, series } => cauchy_kernel_transform(m, &ctx.adele(&xi)?, series.eps, t)?,
                Special::Zeta { s, series } => unit_ball_zeta(s.s, series.eps, t)?,
            };
            series_output(&r)
        }
        Command::Selftest => {
            let checks = run_goldens(t);
            let failed = checks.iter().filter(|c| !c.passed).count();
            let text = checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .chain([format!("selftest: {} passed, {failed} failed", checks.len() - failed)])
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({ "checks": checks, "failed": failed });
            if failed > 0 {
                let rendered = if cli.json { json.to_string() } else { text };
                return Err(CliError::Failed(rendered));
            }
            out(text, json)
        }
    })
}

fn table_from_env() -> CliResult<RadixTable> {
    match std::env::var("ADELE_TABLE_CEILING") {
        Ok(v) => {
            let ceiling: i64 = v
                .trim()
                .parse()
                .ok()
                .filter(|c| *c > 0)
                .ok_or_else(|| CliError::Usage(format!("ADELE_TABLE_CEILING must be a positive integer, got {v:?}")))?;
            Ok(RadixTable::with_ceiling(ceiling))
        }
        Err(_) => Ok(RadixTable::new()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(o) => {
            if json {
                println!("{}", o.json);
            } else {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Failed(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
    }
}
