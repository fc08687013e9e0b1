//! Deterministic search for the smallest prime divisor below a bound.
//!
//! Above a crossover this is the Pollard–Strassen procedure: with
//! `d = ⌈√M⌉`, the block products `(jd+1)···(jd+d) mod N` for
//! `j = 0..d` come from evaluating `f(x) = (x+1)···(x+d)` at `0, d, …, (d-1)d`.
//! The first block sharing a factor with `N` is then scanned element by
//! element.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::polyring::{multipoint_eval, product_tree};
use crate::znum::{gcd, Modulus};

/// Below this bound plain trial division is used.
pub const STRASSEN_CROSSOVER: u64 = 1 << 16;

/// Smallest prime `p ≤ bound` dividing `n`, by trial division.
pub fn trial_division(n: &BigUint, bound: &BigUint) -> Option<BigUint> {
    if n < &BigUint::from(2u32) {
        return None;
    }
    // A divisor above √n only exists if n itself is prime.
    let root = n.sqrt();
    let limit = root.clone().min(bound.clone());
    let found = match (n.to_u64(), limit.to_u64()) {
        (Some(n64), Some(lim)) => trial_u64(n64, lim).map(BigUint::from),
        (_, Some(lim)) => (2..=lim).find(|&d| (n % d).is_zero()).map(BigUint::from),
        _ => {
            let mut d = BigUint::from(2u32);
            loop {
                if d > limit {
                    break None;
                }
                if (n % &d).is_zero() {
                    break Some(d);
                }
                d += 1u32;
            }
        }
    };
    found.or_else(|| (n <= bound).then(|| n.clone()))
}

fn trial_u64(n: u64, limit: u64) -> Option<u64> {
    if limit >= 2 && n.is_multiple_of(2) {
        return Some(2);
    }
    let mut d = 3u64;
    while d <= limit {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    None
}

/// Smallest prime `p ≤ bound` dividing `n`, or `None` if there is none.
pub fn smallest_prime_divisor(n: &BigUint, bound: &BigUint) -> Option<BigUint> {
    smallest_prime_divisor_with(n, bound, STRASSEN_CROSSOVER)
}

/// As [`smallest_prime_divisor`] with an explicit crossover; bounds below
/// `crossover` use trial division.
pub fn smallest_prime_divisor_with(
    n: &BigUint,
    bound: &BigUint,
    crossover: u64,
) -> Option<BigUint> {
    if n < &BigUint::from(2u32) || bound.is_zero() {
        return None;
    }
    // No prime divisor exceeds n.
    let bound = bound.min(n);
    if bound < &BigUint::from(crossover) {
        return trial_division(n, bound);
    }
    strassen(n, bound)
}

fn strassen(n: &BigUint, bound: &BigUint) -> Option<BigUint> {
    let modulus = Modulus::new(n.clone()).ok()?;
    let mut d = bound.sqrt();
    if &(&d * &d) < bound {
        d += 1u32;
    }
    let d_usize = d.to_usize().expect("block length fits in memory");

    // f(x) = (x + 1)···(x + d) has roots -1, …, -d.
    let roots: Vec<BigUint> = (1..=d_usize)
        .map(|i| modulus.neg(&modulus.reduce(&BigUint::from(i))))
        .collect();
    let f = product_tree(&modulus, &roots).expect("d >= 1");
    let points: Vec<BigUint> = (0..d_usize).map(|j| modulus.reduce(&(&d * j))).collect();
    let blocks = multipoint_eval(&f, &points).expect("d >= 1");

    for (j, value) in blocks.iter().enumerate() {
        if gcd(value, n).is_one() {
            continue;
        }
        let start = &d * j;
        for i in 1..=d_usize {
            let candidate = &start + i;
            if &candidate > bound {
                return None;
            }
            if !gcd(&candidate, n).is_one() {
                return Some(candidate);
            }
        }
        unreachable!("a block product sharing a factor with N has a member that does too");
    }
    None
}
