//! Command-line surface: argument parsing, command execution, rendering.
//!
//! Exit codes: 0 success (including paper-mode formula mismatches, which are
//! informational), 2 oracle-vs-oracle disagreement (internal bug), 3 resource
//! cap, 4 input error.  Output is byte-identical for a fixed configuration
//! regardless of the parallelism degree.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::count_ideals_upto_partial;
use crate::polyring::{parse_poly, MonicPoly};
use crate::report::{build_compare, rational_str, CompareReport};
use crate::series::{
    asymptotic_report, cubic_coprime_closed_form, decade_checkpoints, is_prime, local_tn_at,
    summation_lemma_check, tn_global_series,
};
use crate::volume::{mu_closed_cubic, mu_closed_tn, mu_exact, VolumeQuery};

pub const SCHEMA: &str = "idealzeta/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ORACLE_DISAGREEMENT: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;
pub const EXIT_INPUT_ERROR: i32 = 4;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "idealzeta",
    version,
    about = "Exact ideal counting and local zeta-factor arithmetic for Z[t]/(f)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, env = "IDEALZETA_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for partitioned enumeration.
    #[arg(long, global = true, env = "IDEALZETA_JOBS", default_value_t = 1)]
    pub jobs: usize,

    /// Hard cap on enumeration states examined per counting task.
    #[arg(
        long = "resource-cap",
        global = true,
        env = "IDEALZETA_RESOURCE_CAP",
        default_value_t = 100_000_000
    )]
    pub resource_cap: u64,

    /// Include quarantined closed forms in comparisons and volume output.
    #[arg(long = "paper-mode", global = true, env = "IDEALZETA_PAPER_MODE")]
    pub paper_mode: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count ideals of every index up to a bound by lattice enumeration.
    Count {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long = "max-index", env = "IDEALZETA_MAX_INDEX")]
        max_index: u64,
    },
    /// Closed-form global coefficients for f = t^n (shifted zeta product).
    Series {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long = "max-index", env = "IDEALZETA_MAX_INDEX")]
        max_index: u64,
    },
    /// Closed-form local factor coefficients at the chosen primes.
    Local {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long, env = "IDEALZETA_PRIMES", value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long = "max-exponent", env = "IDEALZETA_MAX_EXPONENT")]
        max_exponent: u32,
    },
    /// Exact p-adic volume at one valuation tuple, closed forms beside it.
    Volume {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long, env = "IDEALZETA_PRIMES", value_delimiter = ',')]
        primes: Vec<u64>,
        /// Diagonal valuations, e.g. --b 1,1,2
        #[arg(long, value_delimiter = ',')]
        b: Vec<u32>,
    },
    /// Enumeration oracle vs volume reconstruction vs closed forms.
    Compare {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long, env = "IDEALZETA_PRIMES", value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long = "max-exponent", env = "IDEALZETA_MAX_EXPONENT")]
        max_exponent: u32,
    },
    /// Partial-sum growth trend against c B (log B)^(n-1).
    Asymptote {
        #[arg(long, env = "IDEALZETA_POLY")]
        poly: String,
        #[arg(long = "max-index", env = "IDEALZETA_MAX_INDEX")]
        max_index: u64,
    },
    /// Verify the nested-sum identity behind the t^n local factor.
    LemmaCheck {
        /// Largest dimension to check (all 2 <= k <= n).
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: u32,
        /// Truncation order in x, also the range of the free floor.
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

/// Rendered output plus the process exit code.
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => EXIT_RESOURCE_CAP,
        _ => EXIT_INPUT_ERROR,
    }
}

/// Executes the parsed command inside a thread pool of the requested size.
pub fn run(cli: &Cli) -> Outcome {
    if cli.jobs < 1 {
        return Outcome {
            output: "error: --jobs must be at least 1".to_string(),
            exit_code: EXIT_INPUT_ERROR,
        };
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            return Outcome {
                output: format!("error: {}", e),
                exit_code: EXIT_INPUT_ERROR,
            }
        }
    };
    match pool.install(|| dispatch(cli)) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            output: format!("error: {}", e),
            exit_code: error_exit_code(&e),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Count { poly, max_index } => cmd_count(cli, poly, *max_index),
        Command::Series { poly, max_index } => cmd_series(cli, poly, *max_index),
        Command::Local {
            poly,
            primes,
            max_exponent,
        } => cmd_local(cli, poly, primes, *max_exponent),
        Command::Volume { poly, primes, b } => cmd_volume(cli, poly, primes, b),
        Command::Compare {
            poly,
            primes,
            max_exponent,
        } => cmd_compare(cli, poly, primes, *max_exponent),
        Command::Asymptote { poly, max_index } => cmd_asymptote(cli, poly, *max_index),
        Command::LemmaCheck { max_n, order } => cmd_lemma_check(cli, *max_n, *order),
    }
}

// ---------------------------------------------------------------------------
// count / series
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CoeffRow {
    k: u64,
    a: String,
}

#[derive(Serialize)]
struct CoeffTable {
    schema: &'static str,
    command: &'static str,
    poly: String,
    coeffs: Vec<CoeffRow>,
    truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn render_coeff_table(format: Format, table: &CoeffTable) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(table).expect("serializable"),
        Format::Csv => {
            let mut out = String::from("k,a");
            for row in &table.coeffs {
                out.push_str(&format!("\n{},{}", row.k, row.a));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{}: {}", table.command, table.poly);
            for row in &table.coeffs {
                out.push_str(&format!("\na({}) = {}", row.k, row.a));
            }
            if table.truncated {
                out.push_str("\n(truncated: resource cap reached)");
            }
            if let Some(e) = &table.error {
                out.push_str(&format!("\nerror: {}", e));
            }
            out
        }
    }
}

fn cmd_count(cli: &Cli, poly: &str, max_index: u64) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    if max_index == 0 {
        return Err(Error::invalid("--max-index must be at least 1"));
    }
    let (counts, err) = count_ideals_upto_partial(&f, max_index, cli.resource_cap);
    let table = CoeffTable {
        schema: SCHEMA,
        command: "count",
        poly: f.to_string(),
        coeffs: counts
            .iter()
            .enumerate()
            .map(|(i, &c)| CoeffRow {
                k: i as u64 + 1,
                a: c.to_string(),
            })
            .collect(),
        truncated: err.is_some(),
        error: err.as_ref().map(|e| e.to_string()),
    };
    let exit_code = match &err {
        Some(e) => error_exit_code(e),
        None => EXIT_OK,
    };
    Ok(Outcome {
        output: render_coeff_table(cli.format, &table),
        exit_code,
    })
}

fn cmd_series(cli: &Cli, poly: &str, max_index: u64) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    if !f.is_t_power() {
        return Err(Error::invalid(format!(
            "closed form unavailable for {}; use `compare` to test formulas against the enumeration oracle",
            f
        )));
    }
    if max_index == 0 {
        return Err(Error::invalid("--max-index must be at least 1"));
    }
    let series = tn_global_series(f.degree() as u32, max_index);
    let table = CoeffTable {
        schema: SCHEMA,
        command: "series",
        poly: f.to_string(),
        coeffs: series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| CoeffRow {
                k: i as u64 + 1,
                a: c.to_string(),
            })
            .collect(),
        truncated: false,
        error: None,
    };
    Ok(Outcome {
        output: render_coeff_table(cli.format, &table),
        exit_code: EXIT_OK,
    })
}

// ---------------------------------------------------------------------------
// local
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct LocalFactorOut {
    p: u64,
    source: &'static str,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct LocalOut {
    schema: &'static str,
    command: &'static str,
    poly: String,
    max_exponent: u32,
    factors: Vec<LocalFactorOut>,
}

fn cmd_local(cli: &Cli, poly: &str, primes: &[u64], max_exponent: u32) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    let primes = checked_primes(primes)?;
    let mut factors = Vec::new();
    if f.is_t_power() {
        for &p in &primes {
            factors.push(LocalFactorOut {
                p,
                source: "tn-product",
                coeffs: local_tn_at(f.degree(), p, max_exponent as usize)
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
            });
        }
    } else if let Some(lambda) = f.cubic_double_zero_lambda() {
        if !cli.paper_mode {
            return Err(Error::invalid(
                "the published cubic closed form is quarantined; pass --paper-mode to print it, or use `compare`",
            ));
        }
        let series = cubic_coprime_closed_form().expand(max_exponent as usize)?;
        for &p in &primes {
            if lambda.mod_floor(&BigInt::from(p)).is_zero() {
                return Err(Error::invalid(format!(
                    "no closed form at p = {}: it divides lambda = {}",
                    p, lambda
                )));
            }
            factors.push(LocalFactorOut {
                p,
                source: "cubic-coprime (paper mode)",
                coeffs: series.iter().map(|c| rational_str(&c.eval(p))).collect(),
            });
        }
    } else {
        return Err(Error::invalid(format!(
            "closed form unavailable for {}; use `compare` to test formulas against the enumeration oracle",
            f
        )));
    }
    let out = LocalOut {
        schema: SCHEMA,
        command: "local",
        poly: f.to_string(),
        max_exponent,
        factors,
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => {
            let mut s = String::from("p,e,a");
            for fac in &out.factors {
                for (e, c) in fac.coeffs.iter().enumerate() {
                    s.push_str(&format!("\n{},{},{}", fac.p, e, c));
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("local factors of {}", out.poly);
            for fac in &out.factors {
                s.push_str(&format!("\np = {} ({}):", fac.p, fac.source));
                for (e, c) in fac.coeffs.iter().enumerate() {
                    s.push_str(&format!("\n  a(p^{}) = {}", e, c));
                }
            }
            s
        }
    };
    Ok(Outcome {
        output: rendered,
        exit_code: EXIT_OK,
    })
}

// ---------------------------------------------------------------------------
// volume
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VolumeOut {
    schema: &'static str,
    command: &'static str,
    poly: String,
    p: u64,
    b: Vec<u32>,
    exact: ExactVolumeOut,
    closed_forms: Vec<ClosedFormOut>,
}

#[derive(Serialize)]
struct ExactVolumeOut {
    value: String,
    witness_count: String,
    level: u64,
}

#[derive(Serialize)]
struct ClosedFormOut {
    name: &'static str,
    value: String,
    delta: String,
}

fn cmd_volume(cli: &Cli, poly: &str, primes: &[u64], b: &[u32]) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    let primes = checked_primes(primes)?;
    if primes.len() != 1 {
        return Err(Error::invalid("volume takes exactly one prime"));
    }
    let p = primes[0];
    let query = VolumeQuery::new(p, f.clone(), b.to_vec())?;
    let exact = mu_exact(&query, cli.resource_cap)?;
    let mut closed_forms = Vec::new();
    if f.is_t_power() {
        let value = mu_closed_tn(p, f.degree(), b);
        closed_forms.push(ClosedFormOut {
            name: "tn-closed",
            value: rational_str(&value),
            delta: rational_str(&(&value - &exact.value)),
        });
    }
    if let Some(lambda) = f.cubic_double_zero_lambda() {
        if cli.paper_mode && !lambda.mod_floor(&BigInt::from(p)).is_zero() {
            let barr: [u32; 3] = b
                .try_into()
                .map_err(|_| Error::invalid("cubic volume takes exactly three valuations"))?;
            let value = mu_closed_cubic(p, &lambda, &barr)?;
            closed_forms.push(ClosedFormOut {
                name: "cubic-closed (paper mode)",
                value: rational_str(&value),
                delta: rational_str(&(&value - &exact.value)),
            });
        }
    }
    let out = VolumeOut {
        schema: SCHEMA,
        command: "volume",
        poly: f.to_string(),
        p,
        b: b.to_vec(),
        exact: ExactVolumeOut {
            value: rational_str(&exact.value),
            witness_count: exact.witness_count.to_string(),
            level: exact.level,
        },
        closed_forms,
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => {
            let mut s = String::from("source,value,delta");
            s.push_str(&format!("\nexact,{},0", out.exact.value));
            for cf in &out.closed_forms {
                s.push_str(&format!("\n{},{},{}", cf.name, cf.value, cf.delta));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "volume of {} at p = {}, b = {:?}\nexact: {}  (witness {} at level {})",
                out.poly, out.p, out.b, out.exact.value, out.exact.witness_count, out.exact.level
            );
            for cf in &out.closed_forms {
                s.push_str(&format!(
                    "\n{}: {}  (delta {})",
                    cf.name, cf.value, cf.delta
                ));
            }
            s
        }
    };
    Ok(Outcome {
        output: rendered,
        exit_code: EXIT_OK,
    })
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CompareOut {
    schema: &'static str,
    command: &'static str,
    poly: String,
    paper_mode: bool,
    primes: Vec<u64>,
    max_exponent: u32,
    rows: Vec<CompareRowOut>,
    verdicts: std::collections::BTreeMap<String, String>,
}

#[derive(Serialize)]
struct CompareRowOut {
    p: u64,
    e: u32,
    k: u64,
    oracle: String,
    from_volumes: String,
    formulas: Vec<CompareCellOut>,
}

#[derive(Serialize)]
struct CompareCellOut {
    name: String,
    value: String,
    delta: String,
    paper_mode: bool,
}

fn compare_out(report: &CompareReport) -> CompareOut {
    let mut verdicts = std::collections::BTreeMap::new();
    verdicts.insert(
        "volume-reconstruction".to_string(),
        report.reconstruction_verdict.as_str().to_string(),
    );
    for (name, verdict) in &report.formula_verdicts {
        verdicts.insert(name.to_string(), verdict.as_str().to_string());
    }
    CompareOut {
        schema: SCHEMA,
        command: "compare",
        poly: report.poly.clone(),
        paper_mode: report.paper_mode,
        primes: report.primes.clone(),
        max_exponent: report.max_exponent,
        rows: report
            .rows
            .iter()
            .map(|r| CompareRowOut {
                p: r.p,
                e: r.e,
                k: r.k,
                oracle: r.oracle.to_string(),
                from_volumes: r.from_volumes.to_string(),
                formulas: r
                    .formulas
                    .iter()
                    .map(|c| CompareCellOut {
                        name: c.name.to_string(),
                        value: rational_str(&c.value),
                        delta: rational_str(&c.delta),
                        paper_mode: c.paper_mode,
                    })
                    .collect(),
            })
            .collect(),
        verdicts,
    }
}

/// Machine-readable rendering of a comparison report; shared with the C ABI.
pub fn compare_report_json(report: &CompareReport) -> String {
    serde_json::to_string_pretty(&compare_out(report)).expect("serializable")
}

fn cmd_compare(cli: &Cli, poly: &str, primes: &[u64], max_exponent: u32) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    let report = build_compare(&f, primes, max_exponent, cli.resource_cap, cli.paper_mode)?;
    let out = compare_out(&report);
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => {
            let mut s = String::from("p,e,k,oracle,from_volumes,formula,value,delta");
            for row in &out.rows {
                if row.formulas.is_empty() {
                    s.push_str(&format!(
                        "\n{},{},{},{},{},,,",
                        row.p, row.e, row.k, row.oracle, row.from_volumes
                    ));
                }
                for cell in &row.formulas {
                    s.push_str(&format!(
                        "\n{},{},{},{},{},{},{},{}",
                        row.p,
                        row.e,
                        row.k,
                        row.oracle,
                        row.from_volumes,
                        cell.name,
                        cell.value,
                        cell.delta
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "compare: {}  (paper mode: {})",
                out.poly,
                if out.paper_mode { "on" } else { "off" }
            );
            for row in &out.rows {
                s.push_str(&format!(
                    "\np={} e={} k={}: oracle={} from-volumes={}",
                    row.p, row.e, row.k, row.oracle, row.from_volumes
                ));
                for cell in &row.formulas {
                    s.push_str(&format!(
                        "  {}={} (delta {})",
                        cell.name, cell.value, cell.delta
                    ));
                }
            }
            s.push_str("\nverdicts:");
            for (name, verdict) in &out.verdicts {
                s.push_str(&format!(" {}={}", name, verdict));
            }
            s
        }
    };
    let exit_code = if report.oracles_agree() {
        EXIT_OK
    } else {
        EXIT_ORACLE_DISAGREEMENT
    };
    Ok(Outcome {
        output: rendered,
        exit_code,
    })
}

// ---------------------------------------------------------------------------
// asymptote
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AsymptoteOut {
    schema: &'static str,
    command: &'static str,
    poly: String,
    pole_order: u32,
    rows: Vec<AsymRowOut>,
}

#[derive(Serialize)]
struct AsymRowOut {
    bound: u64,
    sum: String,
    ratio: f64,
}

fn cmd_asymptote(cli: &Cli, poly: &str, max_index: u64) -> Result<Outcome> {
    let f = parse_poly(poly)?;
    if !f.is_t_power() {
        return Err(Error::invalid(format!(
            "asymptote needs the closed-form series, available for t^n only; got {}",
            f
        )));
    }
    if max_index < 100 {
        return Err(Error::invalid("bound too small: need --max-index >= 100"));
    }
    let n = f.degree() as u32;
    let series = tn_global_series(n, max_index);
    let rows = asymptotic_report(&series, n, &decade_checkpoints(max_index))?;
    let out = AsymptoteOut {
        schema: SCHEMA,
        command: "asymptote",
        poly: f.to_string(),
        pole_order: n,
        rows: rows
            .iter()
            .map(|r| AsymRowOut {
                bound: r.bound,
                sum: r.sum.to_string(),
                ratio: r.ratio,
            })
            .collect(),
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => {
            let mut s = String::from("bound,sum,ratio");
            for r in &out.rows {
                s.push_str(&format!("\n{},{},{}", r.bound, r.sum, r.ratio));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "growth of {} against c B (log B)^{} with c = 1/({}! {}!)",
                out.poly,
                n - 1,
                n,
                n - 1
            );
            for r in &out.rows {
                s.push_str(&format!(
                    "\nB = {:>10}  S(B) = {:>14}  ratio = {:.6}",
                    r.bound, r.sum, r.ratio
                ));
            }
            s
        }
    };
    Ok(Outcome {
        output: rendered,
        exit_code: EXIT_OK,
    })
}

// ---------------------------------------------------------------------------
// lemma-check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct LemmaOut {
    schema: &'static str,
    command: &'static str,
    order: usize,
    results: Vec<LemmaRowOut>,
}

#[derive(Serialize)]
struct LemmaRowOut {
    n: u32,
    k: u32,
    ok: bool,
}

fn cmd_lemma_check(cli: &Cli, max_n: u32, order: usize) -> Result<Outcome> {
    if max_n < 2 {
        return Err(Error::invalid("--max-n must be at least 2"));
    }
    if order < 1 {
        return Err(Error::invalid("--order must be at least 1"));
    }
    let mut results = Vec::new();
    for n in 2..=max_n {
        for k in 2..=n {
            results.push(LemmaRowOut {
                n,
                k,
                ok: summation_lemma_check(n, k, order),
            });
        }
    }
    let all_ok = results.iter().all(|r| r.ok);
    let out = LemmaOut {
        schema: SCHEMA,
        command: "lemma-check",
        order,
        results,
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("serializable"),
        Format::Csv => {
            let mut s = String::from("n,k,ok");
            for r in &out.results {
                s.push_str(&format!("\n{},{},{}", r.n, r.k, r.ok));
            }
            s
        }
        Format::Text => {
            let mut s = format!("nested-sum identity at truncation order {}", out.order);
            for r in &out.results {
                s.push_str(&format!(
                    "\nn={} k={}: {}",
                    r.n,
                    r.k,
                    if r.ok { "ok" } else { "MISMATCH" }
                ));
            }
            s
        }
    };
    Ok(Outcome {
        output: rendered,
        // Both sides are computed here; disagreement means a broken build.
        exit_code: if all_ok {
            EXIT_OK
        } else {
            EXIT_ORACLE_DISAGREEMENT
        },
    })
}

fn checked_primes(primes: &[u64]) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = primes.to_vec();
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::invalid("at least one prime is required (--primes)"));
    }
    for &p in &out {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    Ok(out)
}

/// Re-parse a rational rendered by this module; used by report consumers.
pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    crate::report::parse_rational(s)
}

/// Convenience used by integration tests: canonical rendering of a poly arg.
pub fn canonical_poly(text: &str) -> Result<MonicPoly> {
    parse_poly(text)
}
