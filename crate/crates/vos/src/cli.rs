//! Command-line surface.  Every subcommand is a thin wrapper over one
//! library call; the binary itself only forwards to [`main_entry`].
//!
//! Output contract: the payload printed for a given argv is byte-identical
//! across runs (fixed seeds, ordered maps).  Timing and status travel in the
//! envelope — inside the JSON document, or on stderr for text/csv — so
//! byte-level comparison of payloads stays meaningful.  Exit codes: 0 for
//! ok or a clean not-found, 2 for domain errors (including usage errors),
//! 3 for size-bound errors.

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith;
use crate::census;
use crate::codes;
use crate::error::{Error, Result};
use crate::gf2poly::DEFAULT_SPLIT_SEED;
use crate::primes;
use crate::sequences::{self, BitSequence};
use crate::tableaux::{self, Tableau};

/// Default prime-search bound for `tableau realize` when neither --bound
/// nor a config override is given.
pub const DEFAULT_REALIZE_BOUND: u64 = 100_000;

/// Default sample count for weight scans of codes too large to enumerate.
pub const DEFAULT_WEIGHT_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "vos",
    version,
    about = "Very odd sequences: counts, enumeration, codes, prime classes, tableaux, censuses and densities",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Bound/tolerance overrides as key=value (keys: cap, bound, precision, samples)
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    config: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a 0/1 word for the all-odd autocorrelation property
    Check {
        /// The sequence, e.g. 101011100011
        bits: String,
    },
    /// Exact number of very odd sequences of length n
    Count { n: u64 },
    /// List every very odd sequence of length n
    Enumerate {
        n: u64,
        /// Refuse to enumerate more than this many sequences
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Interleaving product of two very odd sequences
    Tensor { left: String, right: String },
    /// Number of irreducible factors of X^m - 1 over F_q
    I2 {
        m: u64,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Rank value i_q(d) with its divisibility hypothesis check
    Rank {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
    },
    /// Level (Stufe) of the m-th cyclotomic field
    Stufe { m: u64 },
    /// Self-dual binary code built from the first very odd sequence of length n
    Code {
        n: u64,
        /// Compute the exact minimum distance and weight enumerator
        #[arg(long)]
        min_distance: bool,
    },
    /// Verify a cyclic difference set
    DsVerify {
        /// Cyclic modulus
        #[arg(long)]
        n: u64,
        /// Comma-separated residues
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
    /// Classify an odd prime: order parity, index, Wieferich status
    Prime { p: u64 },
    /// Primes of index exactly m up to x
    Pm {
        m: u64,
        #[arg(long)]
        x: u64,
    },
    /// Wieferich primes up to x
    Wieferich {
        #[arg(long)]
        x: u64,
    },
    /// Two-row tableau calculus
    #[command(subcommand)]
    Tableau(TableauCmd),
    /// Sieved censuses of sequence counts and prime classes
    Census {
        #[arg(long)]
        x: u64,
        /// Restrict to exact counts, e.g. --values 2,4,8,16
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<u64>>,
    },
    /// Natural densities and the Artin constant
    #[command(subcommand)]
    Density(DensityCmd),
}

#[derive(Debug, Subcommand)]
enum TableauCmd {
    /// Value of a tableau written as "(e/l e/l ...)"
    Value { spec: String },
    /// All solution tableaux with the given value
    Enumerate {
        r: u64,
        /// Also admit top entries of 2-adic valuation 2 (prime-power columns)
        #[arg(long)]
        generalized: bool,
    },
    /// Search for primes realizing a solution tableau
    Realize {
        spec: String,
        #[arg(long)]
        bound: Option<u64>,
        /// Report every realization within the bound, not just the first
        #[arg(long)]
        all: bool,
    },
    /// Tableau of a squarefree odd number with at least two prime factors
    Of { m: u64 },
    /// Extremal statistics for the factor counts attaining value 1+2e
    Stats {
        e: u64,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug, Subcommand)]
enum DensityCmd {
    /// Density of the primes of index exactly m
    Pm { m: u64 },
    /// Density of an index class restricted to a residue class a mod f
    Progression {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        f: u64,
    },
    /// The Artin constant, fully converged or truncated at a prime bound
    Artin {
        /// Evaluate the plain product over primes up to this bound instead
        #[arg(long)]
        truncate: Option<u64>,
    },
}

/// Envelope around every command's output.
#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: String,
    pub payload: Value,
    pub timing_ms: u64,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.status.as_str() {
            "ok" | "not_found" => 0,
            "domain_error" => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct RunConfig {
    cap: Option<u64>,
    bound: Option<u64>,
    precision: Option<f64>,
    samples: Option<u64>,
}

fn parse_config(items: &[String]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("config entry '{item}' is not key=value")))?;
        let bad = |what: &str| Error::domain(format!("config {what} '{value}' is not a number"));
        match key.trim() {
            "cap" => cfg.cap = Some(value.trim().parse().map_err(|_| bad("cap"))?),
            "bound" => cfg.bound = Some(value.trim().parse().map_err(|_| bad("bound"))?),
            "precision" => {
                cfg.precision = Some(value.trim().parse().map_err(|_| bad("precision"))?)
            }
            "samples" => cfg.samples = Some(value.trim().parse().map_err(|_| bad("samples"))?),
            other => {
                return Err(Error::domain(format!(
                    "unknown config key '{other}' (known: cap, bound, precision, samples)"
                )))
            }
        }
    }
    Ok(cfg)
}

enum Outcome {
    Done(Value),
    Missing(Value),
}

fn nine(x: f64) -> String {
    format!("{x:.9}")
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    use Outcome::Done;
    let value = match cmd {
        Command::Check { bits } => {
            let s: BitSequence = bits.parse()?;
            json!({
                "bits": s.to_string(),
                "n": s.len(),
                "very_odd": s.is_very_odd(),
                "profile": s.autocorrelation_profile(),
            })
        }
        Command::Count { n } => {
            let c = sequences::s_count(*n)?;
            json!({
                "n": n,
                "count": c.to_string(),
                "exponent": c.exponent(),
            })
        }
        Command::Enumerate { n, cap } => {
            let list = sequences::enumerate_vos(*n, cap.or(cfg.cap))?;
            json!({
                "n": n,
                "count": list.len(),
                "sequences": list.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            })
        }
        Command::Tensor { left, right } => {
            let a: BitSequence = left.parse()?;
            let b: BitSequence = right.parse()?;
            let t = sequences::tensor(&a, &b)?;
            json!({
                "left": a.to_string(),
                "right": b.to_string(),
                "n": t.len(),
                "product": t.to_string(),
                "very_odd": t.is_very_odd(),
            })
        }
        Command::I2 { m, q } => {
            let count = arith::irreducible_count(*q, *m)?;
            json!({ "q": q, "m": m, "irreducible_factors": count })
        }
        Command::Rank { q, d } => {
            let r = arith::ulmer_rank(*q, *d)?;
            json!({
                "q": q,
                "d": d,
                "rank": r.rank,
                "hypothesis_holds": r.hypothesis_holds,
            })
        }
        Command::Stufe { m } => {
            let level = arith::stufe_level(*m)?;
            json!({ "m": m, "level": level.as_text() })
        }
        Command::Code { n, min_distance } => {
            let list = sequences::enumerate_vos(*n, cfg.cap)?;
            let Some(base) = list.into_iter().next() else {
                return Err(Error::domain(format!(
                    "no very odd sequence of length {n} exists"
                )));
            };
            let code = codes::build_self_dual_code(&base)?;
            let mut payload = json!({
                "n": n,
                "base_sequence": base.to_string(),
                "length": code.length(),
                "dimension": code.dimension(),
                "self_dual": code.is_self_dual(),
                "rows_doubly_even": code.rows_doubly_even(),
            });
            if *min_distance {
                let obj = payload.as_object_mut().expect("object payload");
                if code.dimension() <= codes::EXHAUSTIVE_DIMENSION_LIMIT {
                    let props = codes::code_properties(&code)?;
                    obj.insert("min_distance".into(), json!(props.min_distance));
                    obj.insert("doubly_even".into(), json!(props.doubly_even));
                    obj.insert(
                        "words_at_min_distance".into(),
                        json!(props.weight_enumerator[props.min_distance as usize]),
                    );
                    obj.insert("weight_enumerator".into(), json!(props.weight_enumerator));
                } else {
                    let samples = cfg.samples.unwrap_or(DEFAULT_WEIGHT_SAMPLES);
                    let sw = codes::sampled_weights(&code, samples, DEFAULT_SPLIT_SEED);
                    obj.insert("sampled".into(), json!(true));
                    obj.insert("samples".into(), json!(sw.samples));
                    obj.insert("min_weight_upper_bound".into(), json!(sw.min_weight));
                    obj.insert("all_doubly_even".into(), json!(sw.all_doubly_even));
                }
            }
            payload
        }
        Command::DsVerify { n, set } => {
            let w = codes::verify_difference_set(set, *n)?;
            json!({
                "modulus": w.modulus,
                "set": w.set,
                "k": w.k,
                "lambda": w.lambda,
                "verified": true,
            })
        }
        Command::Prime { p } => {
            let c = primes::classify_prime(*p)?;
            serde_json::to_value(c).expect("serializable classification")
        }
        Command::Pm { m, x } => {
            let members = primes::pm_members(*m, *x)?;
            json!({
                "m": m,
                "x": x,
                "count": members.len(),
                "members": members,
            })
        }
        Command::Wieferich { x } => {
            let found = primes::wieferich_scan(*x)?;
            json!({ "x": x, "count": found.len(), "primes": found })
        }
        Command::Tableau(sub) => return tableau_dispatch(sub, cfg),
        Command::Census { x, values } => {
            let report = match values {
                Some(v) => census::value_census(*x, v)?,
                None => census::ord_parity_sieve(*x)?,
            };
            serde_json::to_value(report).expect("serializable census")
        }
        Command::Density(sub) => match sub {
            DensityCmd::Pm { m } => {
                let d = census::pm_density(*m)?;
                json!({ "m": m, "density": nine(d) })
            }
            DensityCmd::Progression { e, a, f } => {
                let d = census::progression_density(*e, *a, *f)?;
                json!({ "e": e, "a": a, "f": f, "density": nine(d) })
            }
            DensityCmd::Artin { truncate } => match truncate {
                Some(limit) => {
                    let t = census::artin_truncated(*limit)?;
                    json!({ "truncated_at": limit, "value": nine(t) })
                }
                None => {
                    let a = census::artin_constant(cfg.precision.unwrap_or(1e-12))?;
                    json!({ "value": nine(a) })
                }
            },
        },
    };
    Ok(Done(value))
}

fn tableau_dispatch(cmd: &TableauCmd, cfg: &RunConfig) -> Result<Outcome> {
    use Outcome::{Done, Missing};
    Ok(match cmd {
        TableauCmd::Value { spec } => {
            let t: Tableau = spec.parse()?;
            Done(json!({
                "tableau": t.to_string(),
                "columns": t.size(),
                "value": t.value()?,
            }))
        }
        TableauCmd::Enumerate { r, generalized } => {
            let list = tableaux::enumerate_solution_tableaux(*r, *generalized)?;
            Done(json!({
                "r": r,
                "generalized": generalized,
                "count": list.len(),
                "tableaux": list.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            }))
        }
        TableauCmd::Realize { spec, bound, all } => {
            let t: Tableau = spec.parse()?;
            let bound = bound.or(cfg.bound).unwrap_or(DEFAULT_REALIZE_BOUND);
            if *all {
                let found = tableaux::realize_tableau_all(&t, bound)?;
                let payload = json!({
                    "tableau": t.to_string(),
                    "bound": bound,
                    "count": found.len(),
                    "witnesses": found,
                });
                if payload["count"] == 0 {
                    Missing(payload)
                } else {
                    Done(payload)
                }
            } else {
                match tableaux::realize_tableau(&t, bound)? {
                    Some(primes) => Done(json!({
                        "tableau": t.to_string(),
                        "bound": bound,
                        "found": true,
                        "primes": primes,
                        "value": t.value()?,
                    })),
                    None => Missing(json!({
                        "tableau": t.to_string(),
                        "bound": bound,
                        "found": false,
                    })),
                }
            }
        }
        TableauCmd::Of { m } => {
            let t = tableaux::tableau_of(*m)?;
            Done(json!({
                "m": m,
                "tableau": t.to_string(),
                "value": t.value()?,
            }))
        }
        TableauCmd::Stats { e, bound } => {
            let stats = tableaux::max_omega_stats(*e, *bound)?;
            Done(serde_json::to_value(stats).expect("serializable stats"))
        }
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn value_to_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_empty_container(val) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        value_to_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        value_to_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{}\n", scalar_text(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn is_empty_container(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten_csv(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_csv(&key, val, rows);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))) {
                let joined = items
                    .iter()
                    .map(scalar_text)
                    .collect::<Vec<_>>()
                    .join(";");
                rows.push((prefix.to_string(), joined));
            } else {
                for (i, item) in items.iter().enumerate() {
                    flatten_csv(&format!("{prefix}.{i}"), item, rows);
                }
            }
        }
        other => rows.push((prefix.to_string(), scalar_text(other))),
    }
}

/// Renders the part of the result that must be byte-identical across runs.
fn render_payload(result: &CommandResult, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(result).expect("result serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            value_to_text(&result.payload, 0, &mut out);
            out
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten_csv("", &result.payload, &mut rows);
            let mut out = String::from("key,value\n");
            for (k, v) in rows {
                out.push_str(&format!("{},{}\n", csv_escape(&k), csv_escape(&v)));
            }
            out
        }
    }
}

fn init_threads() {
    if let Ok(raw) = std::env::var("VOS_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                // ignore failure: the global pool may already exist
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn evaluate(cli: &Cli) -> CommandResult {
    let started = Instant::now();
    let outcome = parse_config(&cli.config).and_then(|cfg| dispatch(&cli.command, &cfg));
    let timing_ms = started.elapsed().as_millis() as u64;
    let (status, payload) = match outcome {
        Ok(Outcome::Done(p)) => ("ok", p),
        Ok(Outcome::Missing(p)) => ("not_found", p),
        Err(Error::Domain(message)) => ("domain_error", json!({ "error": message })),
        Err(Error::Size { message, magnitude }) => (
            "size_error",
            json!({ "error": message, "magnitude": magnitude }),
        ),
    };
    CommandResult {
        status: status.to_string(),
        payload,
        timing_ms,
    }
}

/// Parses argv, runs the command and prints the result; returns the exit
/// code without calling `exit` itself so the binary stays a one-liner.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = evaluate(&cli);
    print!("{}", render_payload(&result, cli.format));
    if cli.format != Format::Json {
        eprintln!("status: {} ({} ms)", result.status, result.timing_ms);
    }
    result.exit_code()
}

pub fn main_entry() -> i32 {
    run(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(args: &[&str]) -> CommandResult {
        let mut argv = vec!["vos"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).expect("parseable test argv");
        evaluate(&cli)
    }

    #[test]
    fn count_and_check() {
        let r = eval(&["count", "64"]);
        assert_eq!(r.status, "ok");
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.payload["count"], "512");
        assert_eq!(r.payload["exponent"], 9);

        let r = eval(&["check", "101011100011"]);
        assert_eq!(r.payload["very_odd"], true);
        assert_eq!(
            r.payload["profile"],
            json!([7, 3, 3, 1, 3, 3, 3, 1, 1, 1, 1, 1])
        );

        let r = eval(&["check", "1010"]);
        assert_eq!(r.payload["very_odd"], false);
    }

    #[test]
    fn error_statuses_and_exit_codes() {
        let r = eval(&["count", "0"]);
        assert_eq!(r.status, "domain_error");
        assert_eq!(r.exit_code(), 2);

        let r = eval(&["enumerate", "45", "--cap", "4"]);
        assert_eq!(r.status, "size_error");
        assert_eq!(r.exit_code(), 3);

        let r = eval(&["stufe", "0"]);
        assert_eq!(r.exit_code(), 2);

        let r = eval(&["count", "64", "--config", "nope=1"]);
        assert_eq!(r.status, "domain_error");

        let r = eval(&["count", "64", "--config", "cap"]);
        assert_eq!(r.status, "domain_error");
    }

    #[test]
    fn tableau_roundtrip() {
        let r = eval(&["tableau", "value", "(2/3 2/15 8/5)"]);
        assert_eq!(r.payload["value"], 601);

        let r = eval(&["tableau", "enumerate", "27"]);
        assert_eq!(r.payload["count"], 2);

        let r = eval(&["tableau", "realize", "(2/1 2/1)", "--bound", "100"]);
        assert_eq!(r.status, "ok");
        assert_eq!(r.payload["primes"], json!([7, 23]));

        let r = eval(&["tableau", "realize", "(2/5 2/5)", "--bound", "50"]);
        assert_eq!(r.status, "not_found");
        assert_eq!(r.exit_code(), 0);

        let r = eval(&["tableau", "of", "161"]);
        assert_eq!(r.payload["tableau"], "(2/1 2/1)");
        assert_eq!(r.payload["value"], 9);
    }

    #[test]
    fn density_formatting_is_fixed_width() {
        let r = eval(&["density", "pm", "2"]);
        let d = r.payload["density"].as_str().unwrap();
        assert_eq!(d, "0.186977907");
        let r = eval(&["density", "artin"]);
        assert_eq!(r.payload["value"], "0.373955814");
        let r = eval(&["density", "progression", "--e", "1", "--a", "1", "--f", "3"]);
        assert_eq!(r.payload["density"], "0.074791163");
    }

    #[test]
    fn payloads_are_reproducible() {
        let a = eval(&["enumerate", "12"]);
        let b = eval(&["enumerate", "12"]);
        assert_eq!(
            serde_json::to_string(&a.payload).unwrap(),
            serde_json::to_string(&b.payload).unwrap()
        );
        let a = eval(&["census", "--x", "500", "--values", "2,4"]);
        let b = eval(&["census", "--x", "500", "--values", "2,4"]);
        assert_eq!(
            serde_json::to_string(&a.payload).unwrap(),
            serde_json::to_string(&b.payload).unwrap()
        );
    }

    #[test]
    fn code_summary() {
        let r = eval(&["code", "12", "--min-distance"]);
        assert_eq!(r.payload["length"], 24);
        assert_eq!(r.payload["dimension"], 12);
        assert_eq!(r.payload["self_dual"], true);
        assert_eq!(r.payload["min_distance"], 8);
        assert_eq!(r.payload["words_at_min_distance"], 759);
    }

    #[test]
    fn text_and_csv_rendering() {
        let r = eval(&["count", "64"]);
        let text = render_payload(&r, Format::Text);
        assert!(text.contains("count: 512"));
        let csv = render_payload(&r, Format::Csv);
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("count,512"));
        let json_out = render_payload(&r, Format::Json);
        let parsed: Value = serde_json::from_str(&json_out).unwrap();
        assert_eq!(parsed["payload"]["count"], "512");
        assert_eq!(parsed["status"], "ok");
    }

    #[test]
    fn census_payload_shape() {
        let r = eval(&["census", "--x", "64"]);
        assert_eq!(r.payload["counts"]["N"], 12);
        let r = eval(&["census", "--x", "64", "--values", "2"]);
        assert_eq!(r.payload["counts"]["N2"], 6);
    }
}
