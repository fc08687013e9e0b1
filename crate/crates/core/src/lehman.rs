//! Lehman-style linear combinations `aq + bp`.
//!
//! If `N = pq` and `u = aq + bp`, then `aq` and `bp` are the roots of
//! `y² - uy + abN`, so a correct guess for `u` factors `N`. The search
//! sweeps, for every `ab ≤ r`, the short window of integers just above
//! `√(4abN)` in steps of `m`.
//!
//! Every real inequality here is decided by squaring into integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::znum::{is_perfect_square, isqrt};

/// Candidates for one pair `(a, b)`: `u = base + y` for `0 ≤ y < j_count · m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateWindow {
    pub a: u64,
    pub b: u64,
    /// `⌈√(4abN)⌉`
    pub base: BigUint,
    /// Number of `j ≥ 0` with `(4rmj)² · ab < N`.
    pub j_count: u64,
}

/// `⌈√x⌉`
pub(crate) fn ceil_sqrt(x: &BigUint) -> BigUint {
    let s = isqrt(x);
    if &(&s * &s) < x {
        s + 1u32
    } else {
        s
    }
}

/// Lower half of the window inequality: `u ≥ √(4abN)`.
pub fn at_or_above_lower_edge(n: &BigUint, a: u64, b: u64, u: &BigUint) -> bool {
    u * u >= BigUint::from(4u32) * a * b * n
}

/// Upper half: `u - √(4abN) < √N / (4r√(ab))`, equivalently
/// `16 r² u² ab < (8rab + 1)² N`.
pub fn below_upper_edge(n: &BigUint, r: u64, a: u64, b: u64, u: &BigUint) -> bool {
    let ab = BigUint::from(a) * b;
    let r = BigUint::from(r);
    let lhs = BigUint::from(16u32) * &r * &r * u * u * &ab;
    let rhs_factor = BigUint::from(8u32) * &r * &ab + 1u32;
    lhs < &rhs_factor * &rhs_factor * n
}

/// Both halves of the window inequality for a concrete `u`.
pub fn in_lehman_window(n: &BigUint, r: u64, a: u64, b: u64, u: &BigUint) -> bool {
    at_or_above_lower_edge(n, a, b, u) && below_upper_edge(n, r, a, b, u)
}

/// Roots of `y² - uy + cN` as `(larger, smaller)`, when they are integers.
fn integer_roots(n: &BigUint, c: &BigUint, u: &BigUint) -> Option<(BigUint, BigUint)> {
    let uu = u * u;
    let four_cn = BigUint::from(4u32) * c * n;
    if uu < four_cn {
        return None;
    }
    let s = is_perfect_square(&(uu - four_cn))?;
    let sum = u + &s;
    if sum.is_odd() {
        return None;
    }
    let hi = sum >> 1u32;
    let lo = u - &hi;
    Some((hi, lo))
}

fn split_pair(n: &BigUint, p: BigUint, q: BigUint) -> Option<(BigUint, BigUint)> {
    if p.is_one() || q.is_one() || p.is_zero() || q.is_zero() || &(&p * &q) != n {
        return None;
    }
    Some(if p <= q { (p, q) } else { (q, p) })
}

/// If `u = aq + bp` for a nontrivial split `N = pq`, returns `(p, q)` with `p ≤ q`.
pub fn recover_from_candidate(
    n: &BigUint,
    a: u64,
    b: u64,
    u: &BigUint,
) -> Option<(BigUint, BigUint)> {
    if a == 0 || b == 0 {
        return None;
    }
    let ab = BigUint::from(a) * b;
    let (hi, lo) = integer_roots(n, &ab, u)?;
    // Either aq = hi, bp = lo or aq = lo, bp = hi.
    for (aq, bp) in [(&hi, &lo), (&lo, &hi)] {
        let (q, rq) = aq.div_rem(&BigUint::from(a));
        let (p, rp) = bp.div_rem(&BigUint::from(b));
        if rq.is_zero() && rp.is_zero() {
            if let Some(pair) = split_pair(n, p, q) {
                return Some(pair);
            }
        }
    }
    None
}

/// Same as [`recover_from_candidate`] knowing only the product `ab`, which
/// must be coprime to `N`.
pub fn recover_from_product(
    n: &BigUint,
    ab: &BigUint,
    u: &BigUint,
) -> Result<Option<(BigUint, BigUint)>> {
    if ab.is_zero() || !ab.gcd(n).is_one() {
        return Err(Error::Precondition(
            "recover_from_product needs gcd(ab, N) = 1",
        ));
    }
    let Some((hi, lo)) = integer_roots(n, ab, u) else {
        return Ok(None);
    };
    // gcd(aq, pq) = q when gcd(a, p) = 1.
    for (aq, bp) in [(&hi, &lo), (&lo, &hi)] {
        let q = aq.gcd(n);
        if q.is_one() || &q == n || q.is_zero() {
            continue;
        }
        let p = n / &q;
        if (aq % &q).is_zero() && (bp % &p).is_zero() && &((aq / &q) * (bp / &p)) == ab {
            if let Some(pair) = split_pair(n, p, q) {
                return Ok(Some(pair));
            }
        }
    }
    Ok(None)
}

/// Number of `j ≥ 0` with `(4rmj)² · ab < N`.
pub fn window_j_count(n: &BigUint, r: u64, m: u64, ab: u64) -> Option<u64> {
    if n.is_zero() {
        return Some(0);
    }
    let k = BigUint::from(16u32) * r * r * m * m * ab;
    // j² k ≤ N - 1  <=>  j ≤ ⌊√⌊(N-1)/k⌋⌋
    (isqrt(&((n - 1u32) / k)) + 1u32).to_u64()
}

/// Every `(a, b)` with `ab ≤ r`, ordered by `a` then `b`.
pub fn enumerate_windows(n: &BigUint, r: u64, m: u64) -> Result<Vec<CandidateWindow>> {
    if r == 0 || m == 0 {
        return Err(Error::InvalidArgument("r and m must be positive"));
    }
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 1..=r / a {
            let four_abn = BigUint::from(4u32) * a * b * n;
            let j_count = window_j_count(n, r, m, a * b).ok_or(Error::SearchLimit {
                requested: u128::MAX,
                limit: u64::MAX,
            })?;
            out.push(CandidateWindow {
                a,
                b,
                base: ceil_sqrt(&four_abn),
                j_count,
            });
        }
    }
    Ok(out)
}
