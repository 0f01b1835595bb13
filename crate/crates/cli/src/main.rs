use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fuzzasp::measures::{self, Measure};
use fuzzasp::oracle;
use fuzzasp::program::{ground, parse, parse_truth};
use fuzzasp::solver::{solve_ground, Candidate, Interpretation, SolveReport, SolverConfig, Status};
use fuzzasp::table;
use fuzzasp::FuzzyTruth;

#[derive(Parser)]
#[command(name = "fuzzasp", version, about = "Answer set programming over fuzzy truth values")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print every fixpoint pass.
    #[arg(long, global = true)]
    trace: bool,
    /// Equality tolerance.
    #[arg(long, global = true, default_value_t = fuzzasp::DEFAULT_TOL)]
    tol: f64,
    /// Pass limit of a fixpoint iteration.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_iter: usize,
    /// Monte Carlo seed.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_SEED)]
    seed: u64,
    /// Lattice step for `table`, written 1/n.
    #[arg(long, global = true, default_value = "1/3")]
    step: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground and solve a program file (`-` reads stdin).
    Solve { file: String },
    /// Parse and ground a program file, then print the ground rules.
    ParseOnly { file: String },
    /// Evaluate a connective expression such as `ifn(0.6,1) & not tfn(0,0.5,1)`.
    Eval { expr: String },
    /// Compare two values in the truth and knowledge orders.
    Order { x: String, y: String },
    /// Print truth degree, uncertainty degree and height of values.
    Measure {
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// Enumerate every restricted value over the lattice given by --step.
    Table,
    /// Numerical cross-checks of the closed forms.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Mean of the density by quadrature, next to the closed-form truth degree.
    Mean { x: String },
    /// Monte Carlo estimate of Prob(p <= q).
    Prob {
        x: String,
        y: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
    /// Values reachable from the given weights.
    Closure {
        #[arg(required = true)]
        weights: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn value_json(x: &FuzzyTruth) -> Value {
    let m = Measure::of(x);
    let [a, b, c, d] = x.params();
    json!({
        "value": x.to_string(),
        "a": a, "b": b, "c": c, "d": d,
        "truncated": x.is_truncated(),
        "t": m.t,
        "k": m.k,
    })
}

fn interpretation_json(i: &Interpretation) -> Value {
    let map: serde_json::Map<String, Value> = i
        .iter()
        .map(|(l, v)| (l.to_string(), value_json(v)))
        .collect();
    Value::Object(map)
}

fn status_json(s: &Status) -> Value {
    let (kind, detail) = match s {
        Status::AnswerSet => ("answer_set", Value::Null),
        Status::NotModel { rule } => ("not_model", json!({ "rule": rule })),
        Status::NotSupported { literal } => ("not_supported", json!({ "literal": literal.to_string() })),
        Status::Inconsistent { atom } => ("inconsistent", json!({ "atom": atom.to_string() })),
        Status::NotMinimal { literal } => ("not_minimal", json!({ "literal": literal.to_string() })),
        Status::NonConvergent { iterations } => ("non_convergent", json!({ "iterations": iterations })),
        Status::KnowledgeIncrease { literal, iteration } => (
            "knowledge_increase",
            json!({ "literal": literal.to_string(), "iteration": iteration }),
        ),
    };
    json!({ "kind": kind, "detail": detail, "message": s.to_string() })
}

fn candidate_json(c: &Candidate, trace: bool) -> Value {
    let mut v = json!({
        "guess": c.guess.iter().map(|(l, b)| json!({ "literal": l.to_string(), "b": b })).collect::<Vec<_>>(),
        "status": status_json(&c.status),
        "iterations": c.iterations,
        "interpretation": c.interpretation.as_ref().map(interpretation_json),
    });
    if trace {
        v["trace"] = c.trace.iter().map(interpretation_json).collect();
    }
    v
}

fn report_json(r: &SolveReport, trace: bool) -> Value {
    json!({
        "answer_sets": r.answer_sets.iter().map(interpretation_json).collect::<Vec<_>>(),
        "candidates": r.candidates.iter().map(|c| candidate_json(c, trace)).collect::<Vec<_>>(),
        "iterations": r.iterations,
        "guesses": r.guesses,
        "saturated": r.saturated,
    })
}

fn read_source(file: &str) -> Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {file}"))
    }
}

fn truth(src: &str) -> Result<FuzzyTruth> {
    let inner = src.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(inner);
    parse_truth(inner).with_context(|| format!("invalid truth literal `{src}`"))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

fn cmd_solve(cli: &Cli, file: &str) -> Result<ExitCode> {
    let program = parse(&read_source(file)?)?;
    let ground = ground(&program)?;
    let cfg = SolverConfig {
        tol: cli.tol,
        max_iter: cli.max_iter,
        trace: cli.trace,
        ..SolverConfig::default()
    };
    let report = solve_ground(&ground, &cfg)?;
    if cli.json {
        print_json(&report_json(&report, cli.trace));
    } else {
        for (n, set) in report.answer_sets.iter().enumerate() {
            println!("Answer set {}:", n + 1);
            print!("{set}");
        }
        if report.answer_sets.is_empty() {
            println!("No answer sets.");
        }
        for (n, c) in report.candidates.iter().enumerate() {
            if !c.status.is_answer_set() {
                println!("Candidate {}: {}", n + 1, c.status);
            }
            if cli.trace {
                for (pass, i) in c.trace.iter().enumerate() {
                    println!("-- candidate {} pass {}", n + 1, pass + 1);
                    print!("{i}");
                }
            }
        }
        if !report.saturated {
            println!("Note: guess search stopped at the round limit or guess budget; other answer sets may exist.");
        }
    }
    Ok(if report.answer_sets.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_parse_only(cli: &Cli, file: &str) -> Result<()> {
    let ground = ground(&parse(&read_source(file)?)?)?;
    if cli.json {
        let rules: Vec<String> = ground.rules().iter().map(ToString::to_string).collect();
        print_json(&json!({ "rules": rules }));
    } else {
        for r in ground.rules() {
            println!("{r}");
        }
    }
    Ok(())
}

fn cmd_eval(cli: &Cli, src: &str) -> Result<()> {
    let expr = fuzzasp::expr::parse_expr(src)?;
    let x = expr.eval(cli.tol)?;
    if cli.json {
        print_json(&value_json(&x));
    } else {
        let m = Measure::of(&x);
        let [a, b, c, d] = x.params();
        println!("{x}");
        println!("trfn({a},{b},{c},{d}) (t={}, k={})", m.t, m.k);
    }
    Ok(())
}

fn verdict(ord: std::cmp::Ordering, order: &str) -> String {
    match ord {
        std::cmp::Ordering::Less => format!("x ≤_{order} y"),
        std::cmp::Ordering::Greater => format!("y ≤_{order} x"),
        std::cmp::Ordering::Equal => format!("x =_{order} y"),
    }
}

fn cmd_order(cli: &Cli, xs: &str, ys: &str) -> Result<()> {
    let (x, y) = (truth(xs)?, truth(ys)?);
    let cmp = measures::compare(&x, &y, cli.tol);
    let (mx, my) = (Measure::of(&x), Measure::of(&y));
    let (tv, kv) = (verdict(cmp.truth, "t"), verdict(cmp.knowledge, "k"));
    if cli.json {
        print_json(&json!({
            "x": value_json(&x),
            "y": value_json(&y),
            "truth": tv,
            "knowledge": kv,
        }));
    } else {
        println!("x = {x}: t={}, k={}", mx.t, mx.k);
        println!("y = {y}: t={}, k={}", my.t, my.k);
        println!("truth: {tv}");
        println!("knowledge: {kv}");
    }
    Ok(())
}

fn cmd_measure(cli: &Cli, values: &[String]) -> Result<()> {
    let xs = values.iter().map(|s| truth(s)).collect::<Result<Vec<_>>>()?;
    if cli.json {
        let out: Vec<Value> = xs
            .iter()
            .map(|x| {
                let mut v = value_json(x);
                v["h"] = json!(measures::height(x));
                v["shape"] = json!(format!("{:?}", x.shape()));
                v
            })
            .collect();
        print_json(&Value::Array(out));
    } else {
        for x in &xs {
            let m = Measure::of(x);
            let h = measures::height(x).map_or("inf".to_string(), |h| h.to_string());
            println!("{x}: ({}, {})  h={h}  {:?}{}", m.t, m.k, x.shape(), if x.is_truncated() { " truncated" } else { "" });
        }
    }
    Ok(())
}

fn cmd_table(cli: &Cli) -> Result<()> {
    let n = table::parse_step(&cli.step)?;
    let rows = table::enumerate(n);
    if cli.json {
        print_json(&serde_json::to_value(&rows)?);
    } else {
        // large at fine steps, so tolerate a closed pipe (`| head`)
        let mut out = std::io::stdout().lock();
        match write!(out, "{}", table::Rendered(&rows)) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        }
    }
    Ok(())
}

fn cmd_oracle(cli: &Cli, check: &OracleCheck) -> Result<()> {
    match check {
        OracleCheck::Mean { x } => {
            let x = truth(x)?;
            let q = oracle::integrate_density_mean(&x)?;
            let t = measures::truth_degree(&x);
            if cli.json {
                print_json(&json!({ "value": x.to_string(), "quadrature": q, "closed_form": t, "difference": q - t }));
            } else {
                println!("{x}: quadrature mean {q}, closed form {t}, difference {:e}", q - t);
            }
        }
        OracleCheck::Prob { x, y, samples } => {
            let (x, y) = (truth(x)?, truth(y)?);
            if *samples == 0 {
                bail!("--samples must be positive");
            }
            let e = oracle::prob_leq(&x, &y, *samples, cli.seed);
            if cli.json {
                print_json(&json!({ "x": x.to_string(), "y": y.to_string(), "p": e.p, "std_err": e.std_err, "samples": e.samples, "seed": cli.seed }));
            } else {
                println!("Prob(p <= q) = {} ± {} ({} samples, seed {})", e.p, e.std_err, e.samples, cli.seed);
            }
        }
        OracleCheck::Closure { weights, depth } => {
            let ws = weights.iter().map(|s| truth(s)).collect::<Result<Vec<_>>>()?;
            let set = oracle::closure_enumerate(&ws, *depth)?;
            if cli.json {
                print_json(&Value::Array(set.iter().map(value_json).collect()));
            } else {
                for v in &set {
                    println!("{v}");
                }
                println!("{} values", set.len());
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        bail!("--tol must be a positive number");
    }
    match &cli.command {
        Command::Solve { file } => return cmd_solve(cli, file),
        Command::ParseOnly { file } => cmd_parse_only(cli, file)?,
        Command::Eval { expr } => cmd_eval(cli, expr)?,
        Command::Order { x, y } => cmd_order(cli, x, y)?,
        Command::Measure { values } => cmd_measure(cli, values)?,
        Command::Table => cmd_table(cli)?,
        Command::Oracle { check } => cmd_oracle(cli, check)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
