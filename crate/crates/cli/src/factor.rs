use std::io::{self, BufRead, Write};
use std::time::Instant;

use clap::Args;
use detfactor::factorizer::{factorise_with, DriverOptions, FactorReport};
use detfactor::primality::is_prime;
use detfactor::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::{Failure, EXIT_INTERNAL};

#[derive(Args)]
pub struct FactorArgs {
    /// Integers >= 1, decimal or 0x-prefixed hex. Read from stdin when absent.
    pub numbers: Vec<String>,
    /// Emit one JSON object per input.
    #[arg(long)]
    pub json: bool,
    /// Re-multiply and primality-check each factorisation before printing.
    #[arg(long)]
    pub verify: bool,
    /// Override the Lehman bound r.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: Option<u64>,
    /// Override the giant-step count m.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Option<u64>,
    /// Print the search trace to stderr.
    #[arg(long)]
    pub verbose: bool,
    /// Factor up to J inputs concurrently; output stays in input order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

/// Parses a decimal or `0x` hex integer `>= 1`.
pub fn parse_input(text: &str) -> Result<BigUint, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => BigUint::parse_bytes(hex.as_bytes(), 16),
        None if t.bytes().all(|b| b.is_ascii_digit()) => BigUint::parse_bytes(t.as_bytes(), 10),
        None => None,
    };
    match parsed {
        Some(n) if n >= BigUint::from(1u32) => Ok(n),
        Some(_) => Err(format!("{t:?} is not >= 1")),
        None => Err(format!("{t:?} is not a decimal or 0x-hex integer")),
    }
}

fn read_inputs(args: &FactorArgs) -> Result<Vec<BigUint>, Failure> {
    if !args.numbers.is_empty() {
        return args
            .numbers
            .iter()
            .map(|s| parse_input(s).map_err(Failure::usage))
            .collect();
    }
    let mut out = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line.map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_input(&line).map_err(|e| Failure::usage(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

struct Record {
    n: BigUint,
    report: FactorReport,
    elapsed_ms: f64,
}

fn factor_one(n: &BigUint, opts: &DriverOptions) -> Result<Record, Failure> {
    let start = Instant::now();
    let report = factorise_with(n, opts).map_err(|e| Failure::from_core(n, e))?;
    Ok(Record {
        n: n.clone(),
        report,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn verify(record: &Record) -> Result<(), Failure> {
    let f = &record.report.factorisation;
    let fail = |what: String| Failure {
        code: EXIT_INTERNAL,
        message: format!("{}: verification failed, {what}", record.n),
    };
    if f.product() != record.n {
        return Err(fail(format!("product is {}", f.product())));
    }
    if let Some((p, _)) = f.factors().iter().find(|(p, _)| !is_prime(p)) {
        return Err(fail(format!("{p} is not prime")));
    }
    Ok(())
}

fn render(record: &Record, as_json: bool) -> String {
    let f = &record.report.factorisation;
    if as_json {
        let factors: Vec<_> = f
            .factors()
            .iter()
            .map(|(p, e)| json!({"p": p.to_string(), "e": e}))
            .collect();
        json!({
            "n": record.n.to_string(),
            "factors": factors,
            "elapsed_ms": record.elapsed_ms,
            "path": record.report.path.as_str(),
        })
        .to_string()
    } else {
        format!("{} = {}", record.n, f)
    }
}

pub fn run(args: &FactorArgs) -> Result<(), Failure> {
    let inputs = read_inputs(args)?;
    let opts = DriverOptions {
        r: args.r,
        m: args.m,
        ..DriverOptions::default()
    };

    let results: Vec<Result<Record, Failure>> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs.into())
            .build()
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                message: e.to_string(),
            })?;
        pool.install(|| inputs.par_iter().map(|n| factor_one(n, &opts)).collect())
    } else {
        inputs.iter().map(|n| factor_one(n, &opts)).collect()
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    for result in results {
        let record = result?;
        if args.verify {
            verify(&record)?;
        }
        if args.verbose {
            eprintln!("{}: path={}", record.n, record.report.path.as_str());
            if let Some(trace) = &record.report.driver {
                eprintln!("{trace}");
            }
        }
        writeln!(out, "{}", render(&record, args.json)).map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        })?;
    }
    Ok(())
}
