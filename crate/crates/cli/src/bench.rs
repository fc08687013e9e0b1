//! Seeded benchmark over balanced semiprimes.
//!
//! Semiprimes come from SplitMix64 seeded with the raw `--seed`. A `k`-bit
//! prime is drawn from `⌈k/64⌉` outputs assembled least significant word
//! first, truncated to `k` bits with bits `k-1`, `k-2` and `0` forced on,
//! then stepped by 2 until prime; a candidate that reaches `2^k` is
//! discarded and redrawn. `p` takes `⌊B/2⌋` bits and `q` the rest; `q` is
//! redrawn while it equals `p`. The two top bits make `pq` exactly `B` bits.

use std::io::{self, Write};
use std::time::Instant;

use clap::Args;
use detfactor::factorizer::{factorise_with, DriverOptions};
use detfactor::primality::is_prime;
use detfactor::{stats, BigUint};
use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::{Failure, EXIT_INTERNAL};

pub const CSV_HEADER: &str =
    "seed,index,bits,n,p,q,path,verified,mulmods,gcds,max_poly_degree,elapsed_ms";

#[derive(Args)]
pub struct BenchArgs {
    /// Bit length of each semiprime.
    #[arg(long, value_parser = clap::value_parser!(u32).range(10..=4096))]
    pub bits: u32,
    /// Number of semiprimes.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub count: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn random_bits(rng: &mut SplitMix64, k: u32) -> BigUint {
    let words: Vec<u64> = (0..k.div_ceil(64)).map(|_| rng.next_u64()).collect();
    let digits: Vec<u32> = words
        .iter()
        .flat_map(|w| [*w as u32, (w >> 32) as u32])
        .collect();
    let mut x = BigUint::new(digits) & ((BigUint::from(1u32) << k) - 1u32);
    x.set_bit(u64::from(k) - 1, true);
    x.set_bit(u64::from(k) - 2, true);
    x.set_bit(0, true);
    x
}

/// A `k`-bit prime in `[3·2^(k-2), 2^k)`, for `k >= 5`.
pub fn random_prime(rng: &mut SplitMix64, k: u32) -> BigUint {
    let limit = BigUint::from(1u32) << k;
    loop {
        let mut x = random_bits(rng, k);
        while x < limit && !is_prime(&x) {
            x += 2u32;
        }
        if x < limit {
            return x;
        }
    }
}

/// The `count` semiprimes `(p, q)` with `p < q` for a given seed.
pub fn semiprimes(bits: u32, count: u32, seed: u64) -> Vec<(BigUint, BigUint)> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let low = bits / 2;
    (0..count)
        .map(|_| {
            let p = random_prime(&mut rng, low);
            let mut q = random_prime(&mut rng, bits - low);
            while q == p {
                q = random_prime(&mut rng, bits - low);
            }
            if p < q {
                (p, q)
            } else {
                (q, p)
            }
        })
        .collect()
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{CSV_HEADER}").map_err(io_err)?;

    let (mut total_mul, mut total_gcd, mut max_deg, mut total_ms, mut verified) =
        (0u64, 0u64, 0u64, 0f64, 0u32);
    for (i, (p, q)) in semiprimes(args.bits, args.count, args.seed)
        .into_iter()
        .enumerate()
    {
        let n = &p * &q;
        stats::reset();
        let start = Instant::now();
        let report =
            factorise_with(&n, &DriverOptions::default()).map_err(|e| Failure::from_core(&n, e))?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let ops = stats::snapshot();

        let expected = [(p.clone(), 1), (q.clone(), 1)];
        let ok = report.factorisation.factors() == expected && report.factorisation.product() == n;
        verified += u32::from(ok);
        total_mul += ops.mulmods;
        total_gcd += ops.gcds;
        max_deg = max_deg.max(ops.max_poly_degree);
        total_ms += ms;
        writeln!(
            out,
            "{},{i},{},{n},{p},{q},{},{ok},{},{},{},{ms:.3}",
            args.seed,
            args.bits,
            report.path.as_str(),
            ops.mulmods,
            ops.gcds,
            ops.max_poly_degree
        )
        .map_err(io_err)?;
    }
    let k = f64::from(args.count);
    let all = verified == args.count;
    writeln!(
        out,
        "{},total,{},,,,,{all},{total_mul},{total_gcd},{max_deg},{total_ms:.3}",
        args.seed, args.bits
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "{},mean,{},,,,,{all},{:.1},{:.1},{max_deg},{:.3}",
        args.seed,
        args.bits,
        total_mul as f64 / k,
        total_gcd as f64 / k,
        total_ms / k
    )
    .map_err(io_err)?;

    if !all {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!(
                "{} of {} factorisations failed verification",
                args.count - verified,
                args.count
            ),
        });
    }
    Ok(())
}
