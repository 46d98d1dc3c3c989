mod input;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use newform_core::coset_geometry::{
    coset_count, coset_rep_matrix, enumerate_coset_reps, enumerate_hecke_reps, hecke_count, kernel_check,
    theta_evaluate, unit_ratio, verify_coset_distinctness, verify_hecke_distinctness, whittaker_value, Operator,
};
use newform_core::gl_ring::hecke_eigenvalues;
use newform_core::so_jacquet::{count_mu_ur, mu_ur_terms};
use newform_core::so_params::{
    conductor, construct, epsilon_sign, partition, reduction_chain, reduction_chain_tempered, seed_decomposition,
};
use newform_core::{Error, HalfInt, QLaurent, UnitSign};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "newform", version, about = "Exact L-parameter, Jacquet-module and coset computations for SO(2n+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input JSON file; stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Residue characteristic used by coset enumerations.
    #[arg(long, global = true, default_value_t = 3)]
    prime: u64,
    /// Largest rank swept by verify-all.
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,
    /// Largest number of summands per unramified line in generated parameters.
    #[arg(long, global = true, default_value_t = 4)]
    max_d: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Check a parameter against all invariants.
    Validate,
    /// Conductor of a parameter.
    Conductor,
    /// ε-sign of a parameter.
    Epsilon,
    /// Associated seed and the peeled segments.
    Seed,
    /// Partition classes and the standard-module segments.
    Construct,
    /// Conductor reduction chain; `gl_conductors` in the input adds a tempered prefix.
    Reduce,
    /// Number of unramified-constituent terms of μ*, with the terms.
    CountUr,
    /// Hecke eigenvalues from an inverse L-factor, with coset counts.
    Hecke,
    /// Enumerate and verify coset representatives.
    Cosets {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'm', long, default_value_t = 0)]
        m: i64,
        /// Print every representative with its matrix.
        #[arg(long)]
        list: bool,
    },
    /// Level-raising coefficients, kernel identity and Whittaker value.
    Levelraise {
        #[arg(short = 'n', long)]
        n: usize,
        /// Only this r; all 1 ≤ r ≤ n when omitted.
        #[arg(short = 'r', long)]
        r: Option<usize>,
        /// χ(ϖ) = ±1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Run every property suite.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Process outcome: the report plus whether a check failed.
struct Outcome {
    value: Value,
    table: String,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value, table: String) -> Self {
        Outcome { value, table, failed: false }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serialisable")
}

fn load_parameter(cli: &Cli) -> Result<input::ParameterDoc, Error> {
    let text = input::read_source(cli.input.as_deref())?;
    input::parse_parameter(&text)
}

fn laurent_list(v: &[QLaurent]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if !is_prime(cli.prime) {
        return Err(Error::Domain(format!("--prime {} is not prime", cli.prime)));
    }
    if cli.max_n == 0 || cli.max_d == 0 {
        return Err(Error::Domain("sweep bounds must be positive".into()));
    }
    match &cli.command {
        Command::Validate => {
            let doc = load_parameter(cli)?;
            doc.phi.validate()?;
            let phi = &doc.phi;
            Ok(Outcome::ok(
                json!({"valid": true, "n": phi.n, "dimension": phi.total_dim(), "seed": phi.is_seed()}),
                format!("valid: {phi} (n = {}, seed: {})\n", phi.n, phi.is_seed()),
            ))
        }
        Command::Conductor => {
            let doc = load_parameter(cli)?;
            doc.phi.validate()?;
            let c = conductor(&doc.phi);
            let parts: Vec<Value> =
                doc.phi.summands.iter().map(|s| json!({"summand": s.to_string(), "conductor": s.conductor()})).collect();
            let mut t = String::new();
            for s in &doc.phi.summands {
                writeln!(t, "{:<24} {}", s.to_string(), s.conductor()).ok();
            }
            writeln!(t, "{:<24} {c}", "total").ok();
            Ok(Outcome::ok(json!({"conductor": c, "summands": parts}), t))
        }
        Command::Epsilon => {
            let doc = load_parameter(cli)?;
            doc.phi.validate()?;
            let e = epsilon_sign(&doc.phi)?;
            Ok(Outcome::ok(json!({"epsilon": e}), format!("epsilon: {e}\n")))
        }
        Command::Seed => {
            let doc = load_parameter(cli)?;
            doc.phi.validate()?;
            let dec = seed_decomposition(&doc.phi);
            let mut t = format!("seed: {}\n", dec.seed);
            for s in &dec.peeled {
                writeln!(t, "peeled: {s}").ok();
            }
            Ok(Outcome::ok(to_value(&dec), t))
        }
        Command::Construct => {
            let doc = load_parameter(cli)?;
            doc.phi.validate()?;
            let part = partition(&doc.phi);
            let cons = construct(&doc.phi);
            let names = |v: &[newform_core::gl_ring::SupercuspidalLabel]| {
                v.iter().map(|l| l.name.clone()).collect::<Vec<_>>().join(", ")
            };
            let mut t = String::new();
            for (k, v) in [
                ("I00", &part.i00),
                ("I01", &part.i01),
                ("I02", &part.i02),
                ("I1", &part.i1),
                ("I2 even", &part.i2_even),
                ("I2 odd", &part.i2_odd),
            ] {
                writeln!(t, "{k:<8} {}", names(v)).ok();
            }
            for s in &cons.segments {
                writeln!(t, "segment  {s}").ok();
            }
            writeln!(t, "sigma    {} (n0 = {})", cons.sigma_parameter(), cons.n0).ok();
            Ok(Outcome::ok(json!({"partition": part, "construction": cons}), t))
        }
        Command::Reduce => {
            let doc = load_parameter(cli)?;
            let chain = if doc.gl_conductors.is_empty() {
                reduction_chain(&doc.phi)?
            } else {
                reduction_chain_tempered(&doc.phi, &doc.gl_conductors)?
            };
            let mut t = format!("{:<14} {:>4} {:>4}  {:<11} parameter\n", "node", "a", "c", "relation");
            for node in &chain {
                writeln!(
                    t,
                    "{:<14} {:>4} {:>4}  {:<11} {}",
                    format!("{:?}", node.kind),
                    node.a_induced,
                    node.c_param,
                    node.relation.to_string(),
                    node.parameter
                )
                .ok();
            }
            Ok(Outcome::ok(json!({"chain": chain}), t))
        }
        Command::CountUr => {
            let doc = load_parameter(cli)?;
            let count = count_mu_ur(&doc.phi)?;
            let terms = mu_ur_terms(&doc.phi);
            let mut t = format!("count: {count}\n");
            for term in &terms {
                writeln!(t, "{} ⊗ {}", term.gl_part, term.so_parameter).ok();
            }
            Ok(Outcome::ok(json!({"count": count, "terms": terms}), t))
        }
        Command::Hecke => {
            let text = input::read_source(cli.input.as_deref())?;
            let h = input::parse_hecke(&text)?;
            let lam = hecke_eigenvalues(&h.factors, h.r)?;
            let mut failed = false;
            let mut cosets = Vec::new();
            let mut t = format!("eigenvalues: {}\n", laurent_list(&lam));
            for i in 0..h.r {
                let expect = hecke_count(h.r, i, cli.prime);
                if h.r <= 4 {
                    let reps = enumerate_hecke_reps(h.r, i, cli.prime)?;
                    let rep = verify_hecke_distinctness(h.r, &reps, cli.prime);
                    failed |= !rep.ok() || reps.len() as u64 != expect;
                    writeln!(t, "T_{i}: {} cosets (expected {expect}), distinct: {}", reps.len(), rep.ok()).ok();
                    cosets.push(json!({"i": i, "count": reps.len(), "expected": expect, "distinctness": rep}));
                } else {
                    writeln!(t, "T_{i}: {expect} cosets").ok();
                    cosets.push(json!({"i": i, "expected": expect}));
                }
            }
            Ok(Outcome { value: json!({"r": h.r, "eigenvalues": lam, "cosets": cosets}), table: t, failed })
        }
        Command::Cosets { n, m, list } => {
            if *n == 0 || *m < 0 {
                return Err(Error::Domain("need n >= 1 and m >= 0".into()));
            }
            let reps = enumerate_coset_reps(*n, *m, cli.prime);
            let expect = coset_count(*n, cli.prime);
            let rep = verify_coset_distinctness(*n, &reps, *m, cli.prime)?;
            let failed = !rep.ok() || reps.len() as u64 != expect;
            let mut t = format!(
                "n = {n}, m = {m}, p = {}: {} representatives (expected {expect}), {} checks, {} failures\n",
                cli.prime,
                reps.len(),
                rep.checked,
                rep.failures.len()
            );
            for f in &rep.failures {
                writeln!(t, "  {f}").ok();
            }
            let mut value = json!({"n": n, "m": m, "p": cli.prime, "count": reps.len(), "expected": expect, "distinctness": rep});
            if *list {
                let mut listed = Vec::new();
                for r in &reps {
                    let g = coset_rep_matrix(*n, r, *m, cli.prime)?;
                    writeln!(t, "S = {:?}, y = {:?}", r.s, r.y).ok();
                    listed.push(json!({"rep": r, "matrix": g.matrix}));
                }
                value["representatives"] = Value::Array(listed);
            }
            Ok(Outcome { value, table: t, failed })
        }
        Command::Levelraise { n, r, chi } => {
            let chi = UnitSign::from_value(*chi).ok_or_else(|| Error::Domain("--chi must be 1 or -1".into()))?;
            let rs: Vec<usize> = match r {
                Some(r) => vec![*r],
                None => (1..=*n).collect(),
            };
            let mut rows = Vec::new();
            let mut t = String::new();
            for r in rs {
                let half = HalfInt::from_twice(r as i64);
                let mut states = Vec::new();
                for s in [-half, half] {
                    for op in [Operator::Theta, Operator::ThetaPrime] {
                        states.push(theta_evaluate(*n, r, chi, s, op)?);
                    }
                }
                let kernel = kernel_check(*n, r, chi)?;
                let w = whittaker_value(*n, r, chi)?;
                let vol = ((n - r) * (n - r).saturating_sub(1) / 2) as i64;
                let reference = &QLaurent::monomial(1, HalfInt::int((n * r) as i64 + vol))
                    - &QLaurent::monomial(1, HalfInt::int(((n - 1) * r) as i64 + vol));
                let unit = unit_ratio(&w, &reference);
                writeln!(t, "r = {r}: kernel residual zero, Whittaker value {w} (= {} · ({reference}))", unit.map_or("?".to_string(), |u| u.to_string())).ok();
                rows.push(json!({
                    "r": r, "theta": states, "kernel_residual": kernel,
                    "whittaker": w, "reference": reference, "unit": unit,
                }));
            }
            Ok(Outcome::ok(json!({"n": n, "chi": chi, "results": rows}), t))
        }
        Command::VerifyAll { seed, samples } => {
            let cfg = verify::SweepConfig {
                p: cli.prime,
                max_n: cli.max_n,
                max_d: cli.max_d,
                seed: *seed,
                samples: *samples,
            };
            let results = verify::run_all(&cfg);
            let failed = results.iter().any(|r| !r.failures.is_empty());
            let mut t = String::new();
            for r in &results {
                let status = if r.failures.is_empty() { "ok" } else { "FAIL" };
                writeln!(t, "{:<22} {:>7} checks  {status}", r.suite, r.checked).ok();
                for f in r.failures.iter().take(5) {
                    writeln!(t, "    {f}").ok();
                }
            }
            Ok(Outcome { value: json!({"suites": results, "ok": !failed}), table: t, failed })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.value).expect("serialisable")),
                Format::Table => print!("{}", out.table),
            }
            if out.failed {
                eprintln!("error: verification failed");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
