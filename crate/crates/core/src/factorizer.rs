//! Parameter selection, the prime/semiprime driver, and complete
//! factorisation of arbitrary `N ≥ 1`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::orderfind::{find_large_order_element, OrderOutcome};
use crate::search::{main_search_traced, FactorOutcome, SearchConfig, SearchTrace};
use crate::smallfactor::{smallest_prime_divisor, trial_division, STRASSEN_CROSSOVER};
use crate::znum::{iroot_ceil, is_perfect_square, lg};

/// Inputs below this are finished by trial division.
pub const SEMIPRIME_THRESHOLD: u64 = 1_000_000_000;

/// `(r, m, M, D)` for one run of the driver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    /// `⌈(N / lg⁴N)^{1/5}⌉`, the bound on `ab`.
    pub r: u64,
    /// `⌈(N · lg⁶N)^{1/5}⌉`, the number of baby steps.
    pub m: u64,
    /// `⌈(N/r)^{1/2}⌉`, the small-divisor bound.
    pub small_bound: BigUint,
    /// `⌈N^{2/5}⌉`, the order bound.
    pub order_bound: BigUint,
}

impl SearchParams {
    /// Recomputes `M` around a caller-chosen `r`; `D` is raised to at least a
    /// caller-chosen `m`.
    pub fn with_overrides(n: &BigUint, r: Option<u64>, m: Option<u64>) -> Result<SearchParams> {
        let mut params = derive_params(n)?;
        if let Some(r) = r {
            if r == 0 {
                return Err(Error::InvalidArgument("r must be positive"));
            }
            params.r = r;
            params.small_bound = iroot_ceil(n, &BigUint::from(r), 1, 2)?;
        }
        if let Some(m) = m {
            if m == 0 {
                return Err(Error::InvalidArgument("m must be positive"));
            }
            params.m = m;
            // The search needs ord(α) > m.
            params.order_bound = params.order_bound.max(BigUint::from(m));
        }
        Ok(params)
    }
}

pub fn derive_params(n: &BigUint) -> Result<SearchParams> {
    if n < &BigUint::from(SEMIPRIME_THRESHOLD) {
        return Err(Error::Precondition("parameters are defined for N >= 10^9"));
    }
    let l = BigUint::from(lg(n)?);
    let r = iroot_ceil(n, &l.pow(4), 1, 5)?;
    let m = iroot_ceil(&(n * l.pow(6)), &BigUint::one(), 1, 5)?;
    let small_bound = iroot_ceil(n, &r, 1, 2)?;
    let order_bound = iroot_ceil(n, &BigUint::one(), 2, 5)?;
    let too_big = Error::InvalidArgument("N too large for machine-word search parameters");
    Ok(SearchParams {
        r: r.to_u64().ok_or(too_big.clone())?,
        m: m.to_u64().ok_or(too_big)?,
        small_bound,
        order_bound,
    })
}

/// What the driver did, for verbose output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DriverTrace {
    pub params: Option<SearchParams>,
    pub small_divisor_hit: bool,
    pub order_outcome: Option<String>,
    pub search: Option<SearchTrace>,
}

impl fmt::Display for DriverTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.params {
            write!(
                f,
                "r={} m={} M={} D={}",
                p.r, p.m, p.small_bound, p.order_bound
            )?;
        }
        if self.small_divisor_hit {
            write!(f, " small-divisor=hit")?;
        }
        if let Some(o) = &self.order_outcome {
            write!(f, " order={o}")?;
        }
        if let Some(s) = &self.search {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct DriverOptions {
    pub r: Option<u64>,
    pub m: Option<u64>,
    pub search: SearchConfig,
}

/// Splits `N ≥ 10^9` that is prime or a product of two distinct primes.
pub fn factor_semiprime_or_prime(n: &BigUint) -> Result<FactorOutcome> {
    factor_semiprime_or_prime_traced(n, &DriverOptions::default()).map(|(o, _)| o)
}

pub fn factor_semiprime_or_prime_traced(
    n: &BigUint,
    opts: &DriverOptions,
) -> Result<(FactorOutcome, DriverTrace)> {
    let params = SearchParams::with_overrides(n, opts.r, opts.m)?;
    let mut trace = DriverTrace {
        params: Some(params.clone()),
        ..DriverTrace::default()
    };

    if let Some(p) = smallest_prime_divisor(n, &params.small_bound) {
        trace.small_divisor_hit = true;
        if &p == n {
            return Ok((FactorOutcome::Prime, trace));
        }
        let q = n / &p;
        return Ok((FactorOutcome::Factors(p, q), trace));
    }

    let alpha = match find_large_order_element(n, &params.order_bound)? {
        OrderOutcome::LargeOrderElement(a) => a,
        OrderOutcome::Factor(d) => {
            trace.order_outcome = Some(format!("factor:{d}"));
            let other = n / &d;
            let (p, q) = if d <= other { (d, other) } else { (other, d) };
            return Ok((FactorOutcome::Factors(p, q), trace));
        }
        OrderOutcome::Prime => {
            trace.order_outcome = Some("prime".into());
            return Ok((FactorOutcome::Prime, trace));
        }
    };
    trace.order_outcome = Some(format!("alpha:{}", alpha.value()));

    let (outcome, search) = main_search_traced(n, params.r, params.m, &alpha, &opts.search)?;
    trace.search = Some(search);
    Ok((outcome, trace))
}

/// Prime factorisation as `(p, e)` pairs with strictly increasing `p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factorisation {
    factors: Vec<(BigUint, u32)>,
}

impl Factorisation {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn push(&mut self, p: BigUint, e: u32) {
        match self.factors.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (p, e)),
        }
    }
}

/// `p1^e1 * p2^e2 * …`, `^1` omitted, `1` for the empty product.
impl fmt::Display for Factorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (p, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Most involved machinery a factorisation needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorPath {
    Trial,
    Strassen,
    OneFifth,
}

impl FactorPath {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorPath::Trial => "trial",
            FactorPath::Strassen => "strassen",
            FactorPath::OneFifth => "onefifth",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FactorReport {
    pub factorisation: Factorisation,
    pub path: FactorPath,
    pub driver: Option<DriverTrace>,
}

pub fn factorise(n: &BigUint) -> Result<Factorisation> {
    factorise_with(n, &DriverOptions::default()).map(|r| r.factorisation)
}

pub fn factorise_with(n: &BigUint, opts: &DriverOptions) -> Result<FactorReport> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factorise 0"));
    }
    let mut out = Factorisation::default();
    let mut path = FactorPath::Trial;
    let mut rest = n.clone();

    // Strip primes up to the cube root, one copy per round.
    while !rest.is_one() {
        let bound = iroot_ceil(&rest, &BigUint::one(), 1, 3)?;
        if bound >= BigUint::from(STRASSEN_CROSSOVER) {
            path = path.max(FactorPath::Strassen);
        }
        match smallest_prime_divisor(&rest, &bound) {
            Some(p) => {
                rest /= &p;
                out.push(p, 1);
            }
            None => break,
        }
    }

    // At most two prime factors remain.
    let mut driver = None;
    if rest.is_one() {
    } else if let Some(s) = is_perfect_square(&rest) {
        debug_assert!(crate::primality::is_prime(&s));
        out.push(s, 2);
    } else if rest < BigUint::from(SEMIPRIME_THRESHOLD) {
        let root = iroot_ceil(&rest, &BigUint::one(), 1, 2)?;
        match trial_division(&rest, &root) {
            Some(p) if p != rest => {
                let q = &rest / &p;
                out.push(p, 1);
                out.push(q, 1);
            }
            _ => out.push(rest.clone(), 1),
        }
    } else {
        path = FactorPath::OneFifth;
        let (outcome, trace) = factor_semiprime_or_prime_traced(&rest, opts)?;
        driver = Some(trace);
        match outcome {
            FactorOutcome::Factors(p, q) => {
                if &p * &q != rest || p.is_one() || q.is_one() {
                    return Err(Error::Precondition("driver returned an invalid split"));
                }
                out.push(p, 1);
                out.push(q, 1);
            }
            FactorOutcome::Prime => out.push(rest.clone(), 1),
            FactorOutcome::NoFactorsFound => {
                return Err(Error::Precondition(
                    "driver found no factors of a composite",
                ));
            }
        }
    }

    if out.product() != *n {
        return Err(Error::Precondition(
            "factorisation does not multiply back to N",
        ));
    }
    Ok(FactorReport {
        factorisation: out,
        path,
        driver,
    })
}
