//! `qff`: command-line front end for the real quadratic function field toolkit.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 invalid input,
//! 3 precondition violated, 4 inconclusive.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qff_core::classnum;
use qff_core::contfrac::{cf_expand, CfExpansion, DEFAULT_MAX_STEPS};
use qff_core::expr::{parse_const, parse_poly};
use qff_core::families::{self, FamilyInstance};
use qff_core::ff::{field_of_order, Field};
use qff_core::pell::{self, Status};
use qff_core::sweep::{self, SweepConfig, Verdict};
use qff_core::{Error, ErrorKind, Poly};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qff", version, about = "Continued fractions, norm equations and class numbers over F_q(T)(√D)")]
struct Cli {
    /// Seed for extension-field moduli and factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction of √D over one period.
    Cf {
        #[arg(short)]
        q: u64,
        #[arg(short = 'D')]
        d: String,
        /// Give up if no period end appears within this many steps.
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        steps: usize,
    },
    /// Solutions of X² − D·Y² = C with deg C < deg D / 2.
    Pell {
        #[arg(short)]
        q: u64,
        #[arg(short = 'D')]
        d: String,
        /// Exhaustive search instead of reading the period.
        #[arg(long)]
        brute: bool,
        /// Maximum deg Y for --brute (default 2R).
        #[arg(long)]
        deg_y: Option<i64>,
        /// Maximum deg C for --brute (default deg D / 2 − 1).
        #[arg(long)]
        deg_c: Option<i64>,
    },
    /// Build a family instance with its witness.
    Family(FamilyArgs),
    /// Point counts, L-polynomial and class numbers.
    Classnum {
        #[arg(short)]
        q: u64,
        #[arg(short = 'D')]
        d: String,
    },
    /// Family instance, order-n criterion and class-number divisibility.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        skip_classnum: bool,
    },
    /// Run a sweep described by a JSON config, writing JSON Lines.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip instances already present in the output file.
        #[arg(long)]
        resume: bool,
        /// Override the worker count from the config.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    theorem: u8,
    /// 1–4, or `general` for the form with explicit `--u`, `--a`, `--b`.
    #[arg(long)]
    variant: String,
    #[arg(short)]
    q: u64,
    #[arg(short = 'Z')]
    z: String,
    #[arg(short)]
    n: u32,
    #[arg(short = 'F')]
    f: Option<String>,
    /// Every monic divisor admissible as F.
    #[arg(long = "all-F", conflicts_with = "f")]
    all_f: bool,
    #[arg(short)]
    d: Option<u32>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Input => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::Verification => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn field(q: u64, seed: u64) -> Result<Field, Failure> {
    field_of_order(q, seed).map_err(|e| input_error(e.to_string()))
}

fn print(value: &Value) {
    let mut out = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json"));
}

fn cmd_cf(q: u64, d: &str, steps: usize, seed: u64) -> Outcome {
    let d = parse_poly(d, field(q, seed)?)?;
    print(&serde_json::to_value(cf_expand(&d, steps)?.record()).expect("json"));
    Ok(0)
}

fn cmd_pell(q: u64, d: &str, brute: bool, deg_y: Option<i64>, deg_c: Option<i64>, seed: u64) -> Outcome {
    let d = parse_poly(d, field(q, seed)?)?;
    let cf = CfExpansion::new(&d)?;
    let half = cf.half_deg() as i64;
    let value = if brute {
        let deg_y = deg_y.unwrap_or(2 * cf.regulator() as i64);
        let deg_c = deg_c.unwrap_or(half - 1);
        let sols = pell::brute_force(&d, deg_y, deg_c)?;
        json!({
            "D": d.to_string(),
            "q": q,
            "mode": "brute",
            "deg_y": deg_y,
            "deg_c": deg_c,
            "solutions": sols.iter().map(|s| s.record()).collect::<Vec<_>>(),
        })
    } else {
        let map = pell::solutions_small_c(&cf)?;
        let by_c: serde_json::Map<String, Value> = map
            .iter()
            .map(|(c, sols)| {
                let recs = sols.iter().map(|s| s.record()).collect::<Vec<_>>();
                (c.to_string(), serde_json::to_value(recs).expect("json"))
            })
            .collect();
        json!({
            "D": d.to_string(),
            "q": q,
            "mode": "period",
            "regulator": cf.regulator(),
            "solutions": by_c,
        })
    };
    print(&value);
    Ok(0)
}

fn build_instances(args: &FamilyArgs, seed: u64) -> Result<Vec<FamilyInstance>, Failure> {
    let field = field(args.q, seed)?;
    let z = parse_poly(&args.z, field)?;
    let constant = |name: &str, v: &Option<String>| -> Result<Option<_>, Failure> {
        v.as_deref()
            .map(|s| parse_const(s, field).map_err(|e| input_error(format!("--{name}: {e}"))))
            .transpose()
    };
    let (u, a, b) = (constant("u", &args.u)?, constant("a", &args.a)?, constant("b", &args.b)?);
    match args.theorem {
        3 => {
            let v = parse_variant(&args.variant)?;
            let d = args.d.ok_or_else(|| input_error("--theorem 3 needs -d"))?;
            Ok(vec![families::t3(v, &z, args.n, d)?])
        }
        2 => {
            let (u, a, b) = if args.variant == "general" {
                match (u, a, b) {
                    (Some(u), Some(a), Some(b)) => (u, a, b),
                    _ => return Err(input_error("variant general needs --u, --a and --b")),
                }
            } else {
                let v = parse_variant(&args.variant)?;
                if u.is_some() || a.is_some() || b.is_some() {
                    return Err(input_error("--u/--a/--b only apply to variant general"));
                }
                families::t2_parameters(field, v)?
            };
            let fs = if args.variant == "1" {
                vec![Poly::one(field)]
            } else if args.all_f {
                (&z.pow(args.n).scale(u) - &Poly::constant(b)).monic_divisors()?
            } else {
                let f = args
                    .f
                    .as_deref()
                    .ok_or_else(|| input_error("--theorem 2 needs -F or --all-F"))?;
                vec![parse_poly(f, field)?]
            };
            let mut out = Vec::new();
            for f in fs {
                let inst = match parse_variant(&args.variant) {
                    Ok(v) => families::t2_variant(v, &z, args.n, &f)?,
                    Err(_) => families::t2_general(&z, args.n, u, a, b, &f)?,
                };
                out.push(inst);
            }
            Ok(out)
        }
        t => Err(input_error(format!("--theorem must be 2 or 3, got {t}"))),
    }
}

fn parse_variant(v: &str) -> Result<u8, Failure> {
    match v.parse::<u8>() {
        Ok(n @ 1..=4) => Ok(n),
        _ => Err(input_error(format!("--variant must be 1-4 or general, got {v:?}"))),
    }
}

fn cmd_family(args: &FamilyArgs, seed: u64) -> Outcome {
    let instances = build_instances(args, seed)?;
    let records: Vec<Value> = instances
        .iter()
        .map(|i| serde_json::to_value(i.record()).expect("json"))
        .collect();
    if args.all_f {
        print(&Value::Array(records));
    } else {
        print(&records[0]);
    }
    Ok(0)
}

fn cmd_classnum(q: u64, d: &str, seed: u64) -> Outcome {
    let d = parse_poly(d, field(q, seed)?)?;
    print(&serde_json::to_value(classnum::class_data(&d)?).expect("json"));
    Ok(0)
}

fn verify_one(inst: &FamilyInstance, skip_classnum: bool) -> Result<(Status, Value), Failure> {
    let cf = CfExpansion::new(&inst.d)?;
    let w = &inst.witness;
    let t1 = pell::theorem1_check(&cf, &inst.spec.z, inst.spec.n, Some((&w.x, &w.y)))?;
    let mut status = t1.status();
    let corollary = if skip_classnum {
        Value::Null
    } else {
        let v = classnum::verify_corollary(inst)?;
        if !v.holds() {
            status = Status::Fails;
        }
        json!({
            "n": v.n,
            "n_divides_h_O": v.n_divides_h_o,
            "h_O_at_least_n": v.h_o_at_least_n,
            "class": v.class,
        })
    };
    let value = json!({
        "instance": inst.record(),
        "theorem1": t1.record(),
        "corollary": corollary,
        "status": status,
        "holds": status == Status::Holds,
    });
    Ok((status, value))
}

fn cmd_verify(args: &FamilyArgs, skip_classnum: bool, seed: u64) -> Outcome {
    let instances = build_instances(args, seed)?;
    let mut statuses = Vec::new();
    let mut values = Vec::new();
    for inst in &instances {
        let (s, v) = verify_one(inst, skip_classnum)?;
        statuses.push(s);
        values.push(v);
    }
    if args.all_f {
        print(&Value::Array(values));
    } else {
        print(&values[0]);
    }
    Ok(if statuses.contains(&Status::Fails) {
        1
    } else if statuses.contains(&Status::Inconclusive) {
        4
    } else {
        0
    })
}

fn cmd_sweep(config: &PathBuf, out: Option<PathBuf>, resume: bool, workers: Option<usize>, seed: u64) -> Outcome {
    let text = std::fs::read_to_string(config)
        .map_err(|e| input_error(format!("{}: {e}", config.display())))?;
    let mut cfg = SweepConfig::from_json(&text)?;
    if let Some(w) = workers {
        cfg.workers = w;
    }
    if seed != 0 {
        cfg.ranges.seed = seed;
    }
    let out = out
        .or_else(|| cfg.out.clone().map(PathBuf::from))
        .ok_or_else(|| input_error("no output path: pass --out or set \"out\" in the config"))?;
    let summary = sweep::run_to_path(&cfg, &out, resume)?;
    print(&serde_json::to_value(&summary).expect("json"));
    Ok(if summary.count(Verdict::Fails) > 0 {
        1
    } else if summary.count(Verdict::Inconclusive) > 0 {
        4
    } else {
        0
    })
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::Cf { q, d, steps } => cmd_cf(q, &d, steps, seed),
        Command::Pell {
            q,
            d,
            brute,
            deg_y,
            deg_c,
        } => cmd_pell(q, &d, brute, deg_y, deg_c, seed),
        Command::Family(args) => cmd_family(&args, seed),
        Command::Classnum { q, d } => cmd_classnum(q, &d, seed),
        Command::Verify {
            family,
            skip_classnum,
        } => cmd_verify(&family, skip_classnum, seed),
        Command::Sweep {
            config,
            out,
            resume,
            workers,
        } => cmd_sweep(&config, out, resume, workers, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
