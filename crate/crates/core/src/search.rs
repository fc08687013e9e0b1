//! The baby-step giant-step sweep over all Lehman windows at once, and the
//! collision finder it hands its leftovers to.
//!
//! For a semiprime `N = pq`, Fermat gives `α^{aq+bp} ≡ α^{aN+b} (mod p)`.
//! Writing `aq + bp = ⌈√(4abN)⌉ + i + jm` turns the unknown offset into a
//! baby step `α^i` and a giant step `v_{a,b,j} = α^{-jm} α^{aN+b-⌈√(4abN)⌉}`.
//! Equalities modulo `N` are found by sort-and-match; equalities modulo only
//! `p` or `q` are caught by [`find_collisions`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lehman::{enumerate_windows, recover_from_candidate};
use crate::polyring::{eval_geometric, product_tree};
use crate::znum::{gcd, Modulus, ZnElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorOutcome {
    /// `p · q = N` with `1 < p ≤ q < N`.
    Factors(BigUint, BigUint),
    Prime,
    NoFactorsFound,
}

impl FactorOutcome {
    fn split(n: &BigUint, d: BigUint) -> Self {
        let other = n / &d;
        if d <= other {
            FactorOutcome::Factors(d, other)
        } else {
            FactorOutcome::Factors(other, d)
        }
    }
}

/// Giant-step value together with the triple that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiantStepRecord {
    pub v: BigUint,
    pub a: u64,
    pub b: u64,
    pub j: u64,
}

/// `α^0 … α^{m-1}` paired with their exponents, sorted by value.
#[derive(Debug, Clone)]
pub struct BabyStepTable {
    entries: Vec<(BigUint, u64)>,
}

impl BabyStepTable {
    pub fn entries(&self) -> &[(BigUint, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStep {
    BabyStepGcd,
    CandidateMatch,
    Collision,
    Exhausted,
}

impl fmt::Display for SearchStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStep::BabyStepGcd => "baby-step-gcd",
            SearchStep::CandidateMatch => "candidate-match",
            SearchStep::Collision => "collision",
            SearchStep::Exhausted => "exhausted",
        })
    }
}

/// Counts and match transcript of one [`main_search`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchTrace {
    pub baby_steps: u64,
    pub windows: u64,
    pub giant_steps: u64,
    pub matches: u64,
    /// `(i, a, b, j)` for every `v_{a,b,j} = α^i`, in traversal order.
    pub match_transcript: Vec<(u64, u64, u64, u64)>,
    pub collision_inputs: u64,
    pub resolved_at: Option<SearchStep>,
}

impl fmt::Display for SearchTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} windows={} s={} matches={} collision_inputs={} resolved_at={}",
            self.baby_steps,
            self.windows,
            self.giant_steps,
            self.matches,
            self.collision_inputs,
            self.resolved_at
                .map_or_else(|| "-".to_string(), |s| s.to_string()),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Upper limit on both `m` and the number of giant steps `s`.
    pub max_steps: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_steps: 1 << 25 }
    }
}

const GCD_BLOCK: usize = 64;

/// True when the product of the block is a unit, i.e. every member is.
fn block_is_coprime(modulus: &Modulus, block: &[BigUint]) -> bool {
    let prod = block
        .iter()
        .fold(BigUint::one(), |acc, x| modulus.mul(&acc, x));
    modulus.gcd_with(&prod).is_one()
}

fn check_unit(alpha: &ZnElement) -> Result<()> {
    let g = alpha.modulus().gcd_with(alpha.value());
    if g.is_one() {
        Ok(())
    } else {
        Err(Error::NotInvertible { gcd: g })
    }
}

/// Finds `p, q` when some `v_h ≡ α^i` modulo `p` or `q` for `i < m`.
///
/// Requires `ord_N(α) ≥ m` and `v_h ≠ α^i` in `Z/NZ`. An empty `v` gives
/// [`FactorOutcome::NoFactorsFound`].
pub fn find_collisions(alpha: &ZnElement, m: usize, v: &[BigUint]) -> Result<FactorOutcome> {
    check_unit(alpha)?;
    if v.is_empty() || m == 0 {
        return Ok(FactorOutcome::NoFactorsFound);
    }
    let modulus = alpha.modulus();
    let n = modulus.value();
    let f = product_tree(modulus, v)?;
    let values = eval_geometric(&f, alpha, m)?;

    for (b, block) in values.chunks(GCD_BLOCK).enumerate() {
        if block_is_coprime(modulus, block) {
            continue;
        }
        for (k, fv) in block.iter().enumerate() {
            let gamma = gcd(n, fv);
            if gamma.is_one() {
                continue;
            }
            if &gamma != n {
                return Ok(FactorOutcome::split(n, gamma));
            }
            let i = (b * GCD_BLOCK + k) as u64;
            let power = modulus.pow_u64(alpha.value(), i);
            for vh in v {
                let g = gcd(n, &modulus.sub(vh, &power));
                if !g.is_one() && &g != n {
                    return Ok(FactorOutcome::split(n, g));
                }
            }
        }
    }
    Ok(FactorOutcome::NoFactorsFound)
}

/// O(nm) reference: tries every `gcd(N, v_h - α^i)`.
pub fn find_collisions_brute(alpha: &ZnElement, m: usize, v: &[BigUint]) -> FactorOutcome {
    let modulus = alpha.modulus();
    let n = modulus.value();
    let mut power = BigUint::one();
    for _ in 0..m {
        for vh in v {
            let g = modulus.sub(vh, &power).gcd(n);
            if !g.is_one() && &g != n {
                return FactorOutcome::split(n, g);
            }
        }
        power = (&power * alpha.value()) % n;
    }
    FactorOutcome::NoFactorsFound
}

/// Baby steps `α^0 … α^{m-1}`, screening each `gcd(N, α^i - 1)` for `i ≥ 1`.
fn baby_steps(alpha: &ZnElement, m: usize) -> Result<std::result::Result<Vec<BigUint>, BigUint>> {
    let modulus = alpha.modulus();
    let n = modulus.value();
    let mut powers = Vec::with_capacity(m);
    let mut x = BigUint::one();
    for _ in 0..m {
        powers.push(x.clone());
        x = modulus.mul(&x, alpha.value());
    }
    let shifted: Vec<BigUint> = powers
        .iter()
        .skip(1)
        .map(|p| modulus.sub(p, &BigUint::one()))
        .collect();
    for block in shifted.chunks(GCD_BLOCK) {
        if block_is_coprime(modulus, block) {
            continue;
        }
        for d in block {
            let g = gcd(n, d);
            if g.is_one() {
                continue;
            }
            if &g == n {
                return Err(Error::Precondition("order of alpha is below m"));
            }
            return Ok(Err(g));
        }
    }
    Ok(Ok(powers))
}

pub fn build_baby_step_table(powers: &[BigUint]) -> BabyStepTable {
    let mut entries: Vec<(BigUint, u64)> = powers.iter().cloned().zip(0u64..).collect();
    entries.sort();
    BabyStepTable { entries }
}

/// The main search. Returns [`FactorOutcome::Factors`] for a semiprime
/// `N = pq` with `√(N/r) ≤ p < √N`, and [`FactorOutcome::Prime`] for a prime.
pub fn main_search(n: &BigUint, r: u64, m: u64, alpha: &ZnElement) -> Result<FactorOutcome> {
    main_search_traced(n, r, m, alpha, &SearchConfig::default()).map(|(o, _)| o)
}

pub fn main_search_traced(
    n: &BigUint,
    r: u64,
    m: u64,
    alpha: &ZnElement,
    config: &SearchConfig,
) -> Result<(FactorOutcome, SearchTrace)> {
    if alpha.modulus().value() != n {
        return Err(Error::ModulusMismatch);
    }
    if r == 0 || m == 0 {
        return Err(Error::InvalidArgument("r and m must be positive"));
    }
    check_unit(alpha)?;
    if m > config.max_steps {
        return Err(Error::SearchLimit {
            requested: m.into(),
            limit: config.max_steps,
        });
    }
    let modulus = alpha.modulus();
    let mut trace = SearchTrace {
        baby_steps: m,
        ..SearchTrace::default()
    };

    // Step 1
    let powers = match baby_steps(alpha, m as usize)? {
        Ok(p) => p,
        Err(g) => {
            trace.resolved_at = Some(SearchStep::BabyStepGcd);
            return Ok((FactorOutcome::split(n, g), trace));
        }
    };

    // Step 2
    let windows = enumerate_windows(n, r, m)?;
    trace.windows = windows.len() as u64;
    let total: u128 = windows.iter().map(|w| u128::from(w.j_count)).sum();
    if total > u128::from(config.max_steps) {
        return Err(Error::SearchLimit {
            requested: total,
            limit: config.max_steps,
        });
    }
    trace.giant_steps = total as u64;

    // α^{-m} = (α^{m-1} · α)^{-1}
    let giant = modulus.inverse(&modulus.mul(&powers[m as usize - 1], alpha.value()))?;
    let mut records = Vec::with_capacity(total as usize);
    for w in &windows {
        let exponent = BigInt::from(w.a) * BigInt::from(n.clone()) + BigInt::from(w.b)
            - BigInt::from(w.base.clone());
        let mut v = modulus.pow(alpha.value(), &exponent)?;
        for j in 0..w.j_count {
            let next = modulus.mul(&v, &giant);
            records.push(GiantStepRecord {
                v,
                a: w.a,
                b: w.b,
                j,
            });
            v = next;
        }
    }

    // Step 3: stable sort keeps enumeration order among equal values.
    let table = build_baby_step_table(&powers);
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&x, &y| records[x].v.cmp(&records[y].v));
    let mut matched = vec![false; records.len()];
    let mut cursor = 0usize;
    let bases: BTreeMap<(u64, u64), &BigUint> =
        windows.iter().map(|w| ((w.a, w.b), &w.base)).collect();
    for &idx in &order {
        let rec = &records[idx];
        while cursor < table.entries.len() && table.entries[cursor].0 < rec.v {
            cursor += 1;
        }
        if cursor == table.entries.len() {
            break;
        }
        if table.entries[cursor].0 != rec.v {
            continue;
        }
        let i = table.entries[cursor].1;
        matched[idx] = true;
        trace.matches += 1;
        trace.match_transcript.push((i, rec.a, rec.b, rec.j));
        let u = BigUint::from(i) + BigUint::from(rec.j) * m + bases[&(rec.a, rec.b)];
        if let Some((p, q)) = recover_from_candidate(n, rec.a, rec.b, &u) {
            trace.resolved_at = Some(SearchStep::CandidateMatch);
            return Ok((FactorOutcome::Factors(p, q), trace));
        }
    }

    // Step 4
    let survivors: Vec<BigUint> = records
        .into_iter()
        .zip(&matched)
        .filter(|(_, &hit)| !hit)
        .map(|(rec, _)| rec.v)
        .collect();
    trace.collision_inputs = survivors.len() as u64;
    if !survivors.is_empty() {
        if let FactorOutcome::Factors(p, q) = find_collisions(alpha, m as usize, &survivors)? {
            trace.resolved_at = Some(SearchStep::Collision);
            return Ok((FactorOutcome::Factors(p, q), trace));
        }
    }

    // Step 5
    trace.resolved_at = Some(SearchStep::Exhausted);
    Ok((FactorOutcome::Prime, trace))
}

impl FactorOutcome {
    pub fn is_factors(&self) -> bool {
        matches!(self, FactorOutcome::Factors(..))
    }
}
