//! `rnagell`: decide whether x^2 + (2k-1)^y = k^z has positive-integer
//! solutions for y in {3, 5}, with replayable certificates.
//!
//! Exit codes: 0 = decided (or computation completed), 1 = inconclusive,
//! 2 = usage or precondition error, 3 = a resource budget ran out before
//! the pipeline could finish.

mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use rnagell_core::bigarith::FactorBudget;
use rnagell_core::engine::{Engine, EngineConfig, OddExponent, Status, Verdict};
use rnagell_core::normrep::{enumerate_fundamental, height_bound};
use rnagell_core::pell::least_solution;
use rnagell_core::qforms::class_number;

#[derive(Parser)]
#[command(name = "rnagell", version, about = "Certified decisions for x^2 + (2k-1)^y = k^z")]
struct Cli {
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Trial-division bound of the factoring budget
    #[arg(long, global = true)]
    trial_limit: Option<u64>,
    /// Pollard-Brent restart budget
    #[arg(long, global = true)]
    rho_rounds: Option<u32>,
    /// Upper bound on fundamental-set scan length
    #[arg(long, global = true)]
    scan_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum YChoice {
    #[value(name = "3")]
    Three,
    #[value(name = "5")]
    Five,
    Both,
}

impl YChoice {
    fn exponents(self) -> &'static [OddExponent] {
        match self {
            YChoice::Three => &[OddExponent::Three],
            YChoice::Five => &[OddExponent::Five],
            YChoice::Both => &OddExponent::ALL,
        }
    }
}

#[derive(Args)]
struct OutputMode {
    /// Canonical JSON on stdout
    #[arg(long)]
    json: bool,
    /// CSV rows on stdout
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the decision pipeline for one k
    Analyze {
        #[arg(long)]
        k: BigUint,
        #[arg(long, value_enum, default_value = "both")]
        y: YChoice,
        #[command(flatten)]
        mode: OutputMode,
    },
    /// Brute-force oracle: search (x, z) with z <= z-max exhaustively
    Verify {
        #[arg(long)]
        k: BigUint,
        /// Any exponent >= 1, not just 3 and 5
        #[arg(long)]
        y: u32,
        #[arg(long, default_value_t = 30)]
        z_max: u32,
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Run the pipeline over a contiguous range of k
    Sweep {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "both")]
        y: YChoice,
        #[command(flatten)]
        mode: OutputMode,
    },
    /// Count k <= n whose 2k-1 has a prime factor = +-3 mod 8
    Density {
        #[arg(long)]
        n: u64,
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Certify the eight built-in equations behind the citations
    Sandwich {
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Least solution of U^2 - D V^2 = 1
    Pell {
        #[arg(long)]
        d: BigUint,
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Class number of a positive nonsquare discriminant = 0, 1 mod 4
    Classnumber {
        #[arg(long)]
        disc: u64,
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
    /// Fundamental solutions of X^2 - D Y^2 = K^Z1 in the height window
    Fundsols {
        #[arg(long)]
        d: BigUint,
        #[arg(long, allow_hyphen_values = true)]
        k: BigInt,
        #[arg(long, default_value_t = 1)]
        z1: u32,
        /// Canonical JSON on stdout
        #[arg(long)]
        json: bool,
    },
}

fn engine_config(cli: &Cli) -> EngineConfig {
    let mut config = EngineConfig::default();
    let defaults = FactorBudget::default();
    config.factor_budget = FactorBudget {
        trial_limit: cli.trial_limit.unwrap_or(defaults.trial_limit),
        rho_rounds: cli.rho_rounds.unwrap_or(defaults.rho_rounds),
    };
    if let Some(cap) = cli.scan_cap {
        config.fundamental_scan_cap = cap;
    }
    config
}

/// 0 decided, 1 inconclusive, 3 inconclusive behind a budget failure.
fn verdict_code(verdict: &Verdict) -> u8 {
    match verdict.status {
        Status::NoSolutions | Status::SolutionsFound => 0,
        Status::Inconclusive if verdict.diagnostics.is_empty() => 1,
        Status::Inconclusive => 3,
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn run_analyze(engine: &Engine, k: &BigUint, y: YChoice, mode: &OutputMode) -> ExitCode {
    if *k < BigUint::from(2u32) {
        return usage_error("--k must be at least 2");
    }
    let mut code = 0u8;
    let mut json_rows = Vec::new();
    for &exponent in y.exponents() {
        let start = Instant::now();
        let verdict = engine.analyze(k, exponent);
        let runtime_ms = start.elapsed().as_millis();
        code = code.max(verdict_code(&verdict));
        if mode.json {
            json_rows.push(output::verdict_json(&verdict));
        } else if mode.csv {
            println!("{}", output::verdict_csv_row(&verdict, runtime_ms));
        } else {
            print!("{}", output::verdict_human(&verdict));
        }
    }
    if mode.json {
        println!("{}", serde_json::Value::Array(json_rows));
    }
    ExitCode::from(code)
}

fn run_verify(engine: &Engine, k: &BigUint, y: u32, z_max: u32, json: bool) -> ExitCode {
    if *k < BigUint::from(2u32) {
        return usage_error("--k must be at least 2");
    }
    if y == 0 {
        return usage_error("--y must be at least 1");
    }
    let solutions = engine.brute_force(k, y, z_max);
    if json {
        let rows: Vec<serde_json::Value> = solutions
            .iter()
            .map(|(x, z)| serde_json::json!([x.to_string(), z.to_string()]))
            .collect();
        println!(
            "{}",
            serde_json::json!({
                "k": k.to_string(),
                "y": y.to_string(),
                "z_max": z_max.to_string(),
                "solutions": rows,
            })
        );
    } else if solutions.is_empty() {
        println!("no (x, z) with z <= {z_max} solves x^2 + (2k-1)^{y} = {k}^z");
    } else {
        for (x, z) in &solutions {
            println!("x = {x}, z = {z}");
        }
    }
    ExitCode::SUCCESS
}

fn run_sweep(engine: &Engine, from: u64, to: u64, y: YChoice, mode: &OutputMode) -> ExitCode {
    if from < 2 {
        return usage_error("--from must be at least 2");
    }
    if to < from {
        return usage_error("--to must not be below --from");
    }
    let jobs: Vec<(u64, OddExponent)> = (from..=to)
        .flat_map(|k| y.exponents().iter().map(move |&e| (k, e)))
        .collect();
    let rows: Vec<(Verdict, u128)> = jobs
        .par_iter()
        .map(|(k, exponent)| {
            let start = Instant::now();
            let verdict = engine.analyze(&BigUint::from(*k), *exponent);
            (verdict, start.elapsed().as_millis())
        })
        .collect();
    if mode.json {
        let rendered: Vec<serde_json::Value> =
            rows.iter().map(|(v, _)| output::verdict_json(v)).collect();
        println!("{}", serde_json::Value::Array(rendered));
    } else if mode.csv {
        println!("{}", output::CSV_HEADER);
        for (verdict, runtime_ms) in &rows {
            println!("{}", output::verdict_csv_row(verdict, *runtime_ms));
        }
    } else {
        for (verdict, runtime_ms) in &rows {
            println!(
                "k = {}, y = {}: {} via {} ({runtime_ms} ms)",
                verdict.k,
                verdict.y,
                verdict.status,
                verdict.certificate.deciding_rule().unwrap_or("nothing")
            );
        }
    }
    ExitCode::SUCCESS
}

fn run_density(engine: &Engine, n: u64, json: bool) -> ExitCode {
    if n == 0 {
        return usage_error("--n must be at least 1");
    }
    let report = engine.density_sweep(n);
    if json {
        println!("{}", output::density_json(&report));
    } else {
        print!("{}", output::density_human(&report));
    }
    if report.unknown > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_sandwich(engine: &Engine, json: bool) -> ExitCode {
    if json {
        println!("{}", output::suite_json(engine.suite()));
    } else {
        print!("{}", output::suite_human(engine.suite()));
    }
    ExitCode::SUCCESS
}

fn run_pell(d: &BigUint, json: bool) -> ExitCode {
    match least_solution(d) {
        Ok(pell) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "d": pell.d.to_string(),
                        "u1": pell.u1.to_string(),
                        "v1": pell.v1.to_string(),
                        "cf_period": pell
                            .cf_period
                            .iter()
                            .map(|a| a.to_string())
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("least solution of U^2 - {d} V^2 = 1: ({}, {})", pell.u1, pell.v1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn run_classnumber(disc: u64, json: bool) -> ExitCode {
    match class_number(disc) {
        Ok(data) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "disc": disc.to_string(),
                        "h": data.h.to_string(),
                        "reduced_forms": data
                            .cycles
                            .iter()
                            .map(|c| c.len())
                            .sum::<usize>()
                            .to_string(),
                    })
                );
            } else {
                println!("h({disc}) = {}", data.h);
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn run_fundsols(d: &BigUint, k: &BigInt, z1: u32, json: bool) -> ExitCode {
    let pell = match least_solution(d) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let bound = match height_bound(d, k, z1, &pell) {
        Ok(b) => b,
        Err(e) => return usage_error(e),
    };
    let reps = match enumerate_fundamental(d, k, z1, &pell) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    if json {
        let sets = vec![rnagell_core::engine::Z1Fundamentals {
            z1,
            ceiling: bound.ceiling,
            reps,
        }];
        println!("{}", output::fundamental_sets_json(d, &sets));
    } else {
        println!("window: {}^{z1} < (X1 + Y1*sqrt({d}))^2, X1 + Y1*sqrt({d}) < {}", k.magnitude(), bound.ceiling);
        if reps.is_empty() {
            println!("fundamental set is empty");
        } else {
            for rep in &reps {
                println!("X1 = {}, Y1 = {}, Z1 = {}", rep.x1, rep.y1, rep.z1);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return usage_error("--threads must be at least 1");
        }
        // ignore failure: the global pool can already be initialized
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let engine = Engine::new(engine_config(&cli));
    match &cli.command {
        Command::Analyze { k, y, mode } => run_analyze(&engine, k, *y, mode),
        Command::Verify { k, y, z_max, json } => run_verify(&engine, k, *y, *z_max, *json),
        Command::Sweep { from, to, y, mode } => run_sweep(&engine, *from, *to, *y, mode),
        Command::Density { n, json } => run_density(&engine, *n, *json),
        Command::Sandwich { json } => run_sandwich(&engine, *json),
        Command::Pell { d, json } => run_pell(d, *json),
        Command::Classnumber { disc, json } => run_classnumber(*disc, *json),
        Command::Fundsols { d, k, z1, json } => run_fundsols(d, k, *z1, *json),
    }
}
