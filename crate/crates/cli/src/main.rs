//! `multibetti`: Betti and Bass numbers of multigraded modules, coefficient
//! matroids, and the T-flat bounds, from the command line.
//!
//! Exit codes: 0 success, 1 failed verification or probe mismatch, 2 invalid
//! input or usage.

mod render;

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use multibetti::json::{self, envelope};
use multibetti::koszul::{self, PrimeSelection};
use multibetti::{
    bass_bound, betti_bound, brt_rank, DegreeVector, Field, GenexSpec, Presentation, SubsetMask,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "multibetti", version, about = "Exact multigraded Betti and Bass numbers and their T-flat bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Input file, `-` for standard input, or inline JSON.
    #[arg(long, short, global = true)]
    input: Option<String>,
    /// Field used when the input does not name one: `q` or a prime `p`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "MULTIBETTI_THREADS")]
    threads: Option<usize>,
    /// Seed for randomized constructions.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the presentation invariants.
    Validate,
    /// Circuits, flats and T-flats of the coefficient matroid.
    Matroid {
        #[command(subcommand)]
        query: MatroidQuery,
    },
    /// Evaluate the Betti bound (or, with --bass, the Bass bound) at one index.
    Bound(BoundArgs),
    /// Ranks of the Buchsbaum-Rim-Taylor complex.
    Brt {
        #[arg(long)]
        cols: Option<u64>,
        #[arg(long)]
        rank: Option<u64>,
    },
    /// Multigraded Betti table.
    Betti,
    /// Multigraded Bass numbers.
    Bass {
        /// Variables generating the prime, numbered from 1 (e.g. `1,3`).
        #[arg(long, value_delimiter = ',')]
        prime: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Primes::All)]
        primes: Primes,
    },
    /// Compare Betti numbers with the bound at every index.
    VerifyBetti,
    /// Compare total Bass numbers with the Bass bound at every index.
    VerifyBass {
        #[arg(long, value_enum, default_value_t = Primes::All)]
        primes: Primes,
    },
    /// Generic presentation of uniform rank with sharp Betti numbers.
    Genex {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        spike: i64,
        /// Also compute the Betti numbers and require equality with the bound.
        #[arg(long)]
        check: bool,
    },
    /// Alexander dual of a monomial ideal.
    Dual {
        #[arg(long, value_parser = parse_degree)]
        a: DegreeVector,
    },
    /// Compare Betti numbers of a candidate dual with Bass numbers of the input.
    ProbeDuality {
        #[arg(long)]
        candidate: String,
        #[arg(long, value_parser = parse_degree)]
        a: DegreeVector,
    },
}

#[derive(Subcommand, Debug)]
enum MatroidQuery {
    Circuits,
    Flats {
        #[arg(long)]
        rank: usize,
    },
    Tflats {
        #[arg(long)]
        level: usize,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    i: u64,
    /// Use the Bass bound with total Bass numbers in place of beta_0, beta_1.
    #[arg(long)]
    bass: bool,
    /// Depth shift for the Bass bound.
    #[arg(long, default_value_t = 0, requires = "bass")]
    d: u64,
    #[arg(long)]
    beta0: Option<u64>,
    #[arg(long)]
    beta1: Option<u64>,
    #[arg(long)]
    rank: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Primes {
    All,
    Positive,
}

impl From<Primes> for PrimeSelection {
    fn from(p: Primes) -> Self {
        match p {
            Primes::All => PrimeSelection::All,
            Primes::Positive => PrimeSelection::Positive,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Status {
    Pass,
    Fail,
}

fn parse_degree(s: &str) -> Result<DegreeVector, String> {
    DegreeVector::parse(s).map_err(|e| e.to_string())
}

fn parse_field(s: &str) -> anyhow::Result<Field> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let digits = t.trim_start_matches("fp:").trim_start_matches("F_").trim_start_matches("f_");
    let p: u64 = digits.parse().map_err(|_| anyhow!("unknown field {s:?}, expected \"q\" or a prime"))?;
    Ok(Field::prime(p)?)
}

fn read_input(global: &Global) -> anyhow::Result<Value> {
    let spec = global.input.as_deref().ok_or_else(|| anyhow!("this command needs --input"))?;
    let text = read_source(spec)?;
    let mut v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    if let Some(field) = &global.field {
        let tag = parse_field(field)?.tag();
        if let Some(obj) = v.as_object_mut() {
            obj.entry("field").or_insert(serde_json::to_value(tag)?);
        }
    }
    Ok(v)
}

fn read_source(spec: &str) -> anyhow::Result<String> {
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else if spec.trim_start().starts_with('{') {
        Ok(spec.to_string())
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))
    }
}

fn presentation(global: &Global) -> anyhow::Result<Presentation> {
    let p = json::presentation_from_value(&read_input(global)?)?;
    p.ensure_valid()?;
    Ok(p)
}

fn emit(global: &Global, kind: &str, payload: Value, human: impl FnOnce() -> String) {
    if global.json {
        println!("{}", serde_json::to_string_pretty(&envelope(kind, payload)).expect("serializable"));
    } else {
        print!("{}", human());
    }
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn prime_from_vars(vars: &[usize], m: usize) -> anyhow::Result<SubsetMask> {
    let mut mask = SubsetMask::EMPTY;
    for &v in vars {
        if v == 0 || v > m {
            bail!("--prime expects variable numbers 1..={m}, got {v}");
        }
        mask = mask.insert(v - 1);
    }
    Ok(mask)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate => {
            let p = json::presentation_from_value(&read_input(g)?)?;
            let violations: Vec<String> = p.validate().iter().map(|v| v.to_string()).collect();
            let ok = violations.is_empty();
            if !ok {
                for v in &violations {
                    eprintln!("violation: {v}");
                }
            }
            emit(
                g,
                "validate",
                json!({ "valid": ok, "violations": violations, "presentation": json::presentation_to_value(&p) }),
                || render::validation(&p, &violations),
            );
            if !ok {
                // Invariant violations are invalid input.
                std::process::exit(2);
            }
            Ok(Status::Pass)
        }
        Command::Matroid { query } => {
            let p = presentation(g)?;
            let m = p.coefficient_matroid()?;
            let (kind, sets) = match query {
                MatroidQuery::Circuits => ("circuits", m.circuits()?),
                MatroidQuery::Flats { rank } => ("flats", m.flats_of_rank(*rank)?),
                MatroidQuery::Tflats { level } => ("tflats", m.tflats_of_level(*level)?),
            };
            emit(
                g,
                kind,
                json!({ "ground_size": m.ground_size(), "rank": m.full_rank(), "sets": sets }),
                || render::sets(kind, &sets),
            );
            Ok(Status::Pass)
        }
        Command::Bound(args) => bound(g, args),
        Command::Brt { cols, rank } => {
            let (n, r) = match (cols, rank) {
                (Some(n), Some(r)) => (*n, *r),
                (None, None) => {
                    let p = presentation(g)?;
                    (p.cols() as u64, p.coefficient_matroid()?.full_rank() as u64)
                }
                _ => bail!("give both --cols and --rank, or neither with --input"),
            };
            if r > n {
                bail!("rank {r} exceeds column count {n}");
            }
            let top = (n - r + 1).max(2);
            let ranks = (2..=top)
                .map(|i| Ok((i, brt_rank(n, r, i)?)))
                .collect::<multibetti::Result<Vec<_>>>()?;
            let payload = json!({
                "cols": n,
                "rank": r,
                "ranks": ranks.iter().map(|(i, v)| json!({"i": i, "rank": render::big(v)})).collect::<Vec<_>>(),
            });
            emit(g, "brt", payload, || render::indexed("rank", &ranks));
            Ok(Status::Pass)
        }
        Command::Betti => {
            let p = presentation(g)?;
            let t = koszul::betti_table(&p)?;
            emit(g, "betti", json::graded_table_to_value(&t), || render::graded("beta", &t));
            Ok(Status::Pass)
        }
        Command::Bass { prime, primes } => {
            let p = presentation(g)?;
            if let Some(vars) = prime {
                let mask = prime_from_vars(vars, p.vars())?;
                let t = koszul::bass_at_prime(&p, mask)?;
                emit(g, "bass", json::bass_table_to_value(&t), || render::graded(&format!("mu at p{mask}"), &t.table));
            } else {
                let tables = koszul::bass_all_primes(&p)?;
                let totals = koszul::sum_totals(&tables, (*primes).into(), p.vars());
                let per_prime: Vec<Value> = tables
                    .iter()
                    .filter(|t| *primes == Primes::All || !t.prime.is_empty())
                    .map(|t| json!({ "prime": t.prime, "totals": t.totals() }))
                    .collect();
                emit(
                    g,
                    "bass",
                    json!({ "primes": format!("{primes:?}").to_lowercase(), "totals": totals, "by_prime": per_prime }),
                    || render::bass_totals(&tables, *primes == Primes::All, &totals),
                );
            }
            Ok(Status::Pass)
        }
        Command::VerifyBetti => {
            let p = presentation(g)?;
            let report = multibetti::verify_betti(&p)?;
            emit(g, "verify-betti", serde_json::to_value(&report)?, || render::report(&report));
            Ok(status(report.pass))
        }
        Command::VerifyBass { primes } => {
            let p = presentation(g)?;
            let v = multibetti::verify_bass_with(&p, (*primes).into())?;
            emit(g, "verify-bass", serde_json::to_value(&v)?, || {
                format!(
                    "total Bass numbers, all primes:      {:?}\ntotal Bass numbers, positive primes: {:?}\n{}",
                    v.totals_all,
                    v.totals_positive,
                    render::report(&v.report)
                )
            });
            Ok(status(v.report.pass))
        }
        Command::Genex { rank, cols, spike, check } => {
            let field = match &g.field {
                Some(f) => parse_field(f)?,
                None => Field::Rational,
            };
            let mut spec = GenexSpec::new(*rank, *cols).over(field).with_spike(*spike);
            if let Some(seed) = g.seed {
                spec = spec.with_seed(seed);
            }
            let p = multibetti::generic_presentation(&spec)?;
            let report = if *check { Some(multibetti::verify_sharpness(&p)?) } else { None };
            let mut payload = json!({ "presentation": json::presentation_to_value(&p) });
            if let Some(r) = &report {
                payload["report"] = serde_json::to_value(r)?;
            }
            emit(g, "genex", payload, || {
                let mut out = serde_json::to_string_pretty(&json::presentation_to_value(&p)).expect("serializable");
                out.push('\n');
                if let Some(r) = &report {
                    out.push_str(&render::report(r));
                }
                out
            });
            Ok(status(report.is_none_or(|r| r.pass)))
        }
        Command::Dual { a } => {
            let ideal = json::monomial_ideal_from_value(&read_input(g)?)?;
            let dual = multibetti::alexander_dual(&ideal, a)?;
            let agrees = dual == multibetti::alexander_dual_by_intersection(&ideal, a)?;
            emit(
                g,
                "dual",
                json!({ "a": a.coords(), "dual": json::monomial_ideal_to_value(&dual), "agrees_with_intersection": agrees }),
                || render::ideal(&dual, agrees),
            );
            Ok(status(agrees))
        }
        Command::ProbeDuality { candidate, a } => {
            let p = presentation(g)?;
            let q_value: Value = serde_json::from_str(&read_source(candidate)?).context("parsing candidate")?;
            let q = json::presentation_from_value(&q_value)?;
            let report = multibetti::miller_relation_probe(&p, &q, a)?;
            emit(g, "probe-duality", serde_json::to_value(&report)?, || render::probe(&report));
            Ok(status(report.pass))
        }
    }
}

fn bound(g: &Global, args: &BoundArgs) -> anyhow::Result<Status> {
    let explicit = args.beta0.is_some() || args.beta1.is_some();
    let (b0, b1, rank) = if explicit {
        let b0 = args.beta0.ok_or_else(|| anyhow!("--beta1 needs --beta0"))?;
        let b1 = args.beta1.ok_or_else(|| anyhow!("--beta0 needs --beta1"))?;
        (b0, b1, args.rank.unwrap_or(0))
    } else if args.bass {
        let totals = koszul::total_bass(&presentation(g)?)?;
        (totals[0], totals[1], 0)
    } else {
        let p = presentation(g)?;
        (p.rows() as u64, p.cols() as u64, p.module_rank()? as u64)
    };
    let value = if args.bass { bass_bound(b0, b1, args.i, args.d)? } else { betti_bound(b0, b1, rank, args.i)? };
    let payload = json!({
        "i": args.i,
        "bass": args.bass,
        "d": args.d,
        "beta0": b0,
        "beta1": b1,
        "rank": rank,
        "bound": render::big(&value),
    });
    emit(g, "bound", payload, || format!("{value}\n"));
    Ok(Status::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
