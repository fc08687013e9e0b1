//! Finding a unit of provably large multiplicative order.
//!
//! Candidates `α = 2, 3, …` are tried in turn. A candidate sharing a factor
//! with `N` splits it; a candidate whose order is not found by a bounded
//! baby-step giant-step search has order above `D`. If `K` consecutive
//! candidates all have small order, the search gives up on orders and runs
//! the bounded divisor search up to `⌈√N⌉`, which always settles the
//! question.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::smallfactor::smallest_prime_divisor;
use crate::znum::{Modulus, ZnElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderOutcome {
    /// A unit whose order exceeds `D`.
    LargeOrderElement(ZnElement),
    /// A nontrivial divisor of `N`.
    Factor(BigUint),
    Prime,
}

/// Default number of small-order candidates tolerated before the fallback.
pub const DEFAULT_MAX_CANDIDATES: usize = 4;

/// Least `e ∈ [1, D]` with `α^e = 1`, or `None` if the order exceeds `D`.
pub fn bsgs_order_bounded(alpha: &ZnElement, bound: &BigUint) -> Result<Option<BigUint>> {
    let modulus = alpha.modulus();
    let gcd = modulus.gcd_with(alpha.value());
    if !gcd.is_one() {
        return Err(Error::NotInvertible { gcd });
    }
    if bound < &BigUint::one() {
        return Ok(None);
    }
    let mut c = bound.sqrt();
    if &(&c * &c) < bound {
        c += 1u32;
    }
    let steps = c
        .to_u64()
        .ok_or(Error::InvalidArgument("order bound too large"))?;

    let mut table: Vec<(BigUint, u64)> = Vec::with_capacity(steps as usize);
    let mut x = BigUint::one();
    for i in 0..steps {
        if i > 0 && x.is_one() {
            // Repeated power: the order is i.
            return Ok((BigUint::from(i) <= *bound).then(|| BigUint::from(i)));
        }
        table.push((x.clone(), i));
        x = modulus.mul(&x, alpha.value());
    }
    table.sort();

    // alpha^{-c}
    let giant = modulus.pow(alpha.value(), &-BigInt::from(steps))?;
    let mut y = BigUint::one();
    for j in 1..=steps {
        y = modulus.mul(&y, &giant);
        if let Ok(pos) = table.binary_search_by(|(v, _)| v.cmp(&y)) {
            let e = BigUint::from(table[pos].1) + BigUint::from(j) * steps;
            return Ok((e <= *bound).then_some(e));
        }
    }
    Ok(None)
}

/// Checks `N^{2/5} ≤ D ≤ N` as `D^5 ≥ N^2` and `D ≤ N`.
pub fn order_bound_in_range(n: &BigUint, bound: &BigUint) -> bool {
    bound <= n && bound.pow(5) >= n.pow(2)
}

pub fn find_large_order_element(n: &BigUint, bound: &BigUint) -> Result<OrderOutcome> {
    if n < &BigUint::from(2u32) {
        return Err(Error::InvalidArgument("N must be at least 2"));
    }
    if !order_bound_in_range(n, bound) {
        return Err(Error::Precondition(
            "order bound must satisfy N^(2/5) <= D <= N",
        ));
    }
    find_large_order_element_with(n, bound, DEFAULT_MAX_CANDIDATES)
}

/// As [`find_large_order_element`] without the range check on `D` and with
/// an explicit candidate budget.
pub fn find_large_order_element_with(
    n: &BigUint,
    bound: &BigUint,
    max_candidates: usize,
) -> Result<OrderOutcome> {
    let modulus = Modulus::new(n.clone())?;
    let mut small_order = 0usize;
    let mut candidate = BigUint::from(2u32);
    while small_order < max_candidates && &candidate < n {
        let g = modulus.gcd_with(&candidate);
        if !g.is_one() {
            return Ok(OrderOutcome::Factor(g));
        }
        let alpha = modulus.element(candidate.clone());
        match bsgs_order_bounded(&alpha, bound)? {
            None => return Ok(OrderOutcome::LargeOrderElement(alpha)),
            Some(_) => small_order += 1,
        }
        candidate += 1u32;
    }
    fallback(n)
}

fn fallback(n: &BigUint) -> Result<OrderOutcome> {
    let mut root = n.sqrt();
    if &(&root * &root) < n {
        root += 1u32;
    }
    Ok(match smallest_prime_divisor(n, &root) {
        Some(p) if &p < n => OrderOutcome::Factor(p),
        _ => OrderOutcome::Prime,
    })
}
