//! Exact integer helpers and arithmetic in `Z/NZ`.
//!
//! Residues are always kept in `[0, N)`. Nothing here touches floating point.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::stats;

/// `lg n`: `⌈log2 n⌉` for `n ≥ 2`, and `1` for `n = 1`.
pub fn lg(n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("lg(0) is undefined"));
    }
    if n.is_one() {
        return Ok(1);
    }
    Ok((n - 1u32).bits())
}

pub fn isqrt(x: &BigUint) -> BigUint {
    x.sqrt()
}

pub fn is_perfect_square(x: &BigUint) -> Option<BigUint> {
    let s = x.sqrt();
    if &s * &s == *x {
        Some(s)
    } else {
        None
    }
}

/// `⌊(x/y)^{u/v}⌋`, i.e. the largest `z` with `z^v · y^u ≤ x^u`.
pub fn iroot_floor(x: &BigUint, y: &BigUint, u: u32, v: u32) -> Result<BigUint> {
    if y.is_zero() {
        return Err(Error::InvalidArgument("iroot: y must be positive"));
    }
    if v == 0 {
        return Err(Error::InvalidArgument("iroot: v must be positive"));
    }
    let xu = x.pow(u);
    let yu = y.pow(u);
    // Newton from num-integer, then pin down the bracket exactly.
    let mut z = (&xu / &yu).nth_root(v);
    while z.pow(v) * &yu > xu {
        z -= 1u32;
    }
    loop {
        let next = &z + 1u32;
        if next.pow(v) * &yu <= xu {
            z = next;
        } else {
            break;
        }
    }
    Ok(z)
}

/// `⌈(x/y)^{u/v}⌉`, i.e. the smallest `z` with `z^v · y^u ≥ x^u`.
pub fn iroot_ceil(x: &BigUint, y: &BigUint, u: u32, v: u32) -> Result<BigUint> {
    let z = iroot_floor(x, y, u, v)?;
    if z.pow(v) * y.pow(u) == x.pow(u) {
        Ok(z)
    } else {
        Ok(z + 1u32)
    }
}

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(|x|, |y|) ≥ 0` and `s·x + t·y = g`.
pub fn gcd_ext(x: &BigInt, y: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::InvalidArgument("gcd_ext(0, 0) is undefined"));
    }
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Plain gcd of nonnegative integers, counted in [`stats`].
pub fn gcd(x: &BigUint, y: &BigUint) -> BigUint {
    stats::count_gcd();
    x.gcd(y)
}

/// The modulus `N ≥ 2` of a residue ring. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Modulus {
    n: Arc<BigUint>,
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({})", self.n)
    }
}

impl Modulus {
    pub fn new(n: BigUint) -> Result<Self> {
        if n < BigUint::from(2u32) {
            return Err(Error::InvalidArgument("modulus must be at least 2"));
        }
        Ok(Modulus { n: Arc::new(n) })
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        Self::new(BigUint::from(n))
    }

    #[inline]
    pub fn value(&self) -> &BigUint {
        &self.n
    }

    /// Bit length of `N - 1`, the width of the largest residue.
    pub fn residue_bits(&self) -> u64 {
        (&*self.n - 1u32).bits()
    }

    pub fn element(&self, value: impl Into<BigUint>) -> ZnElement {
        ZnElement {
            value: self.reduce(&value.into()),
            modulus: self.clone(),
        }
    }

    pub fn element_signed(&self, value: &BigInt) -> ZnElement {
        ZnElement {
            value: self.reduce_signed(value),
            modulus: self.clone(),
        }
    }

    pub fn one(&self) -> ZnElement {
        ZnElement {
            value: BigUint::one(),
            modulus: self.clone(),
        }
    }

    #[inline]
    pub fn reduce(&self, x: &BigUint) -> BigUint {
        if x < &*self.n {
            x.clone()
        } else {
            x % &*self.n
        }
    }

    pub fn reduce_signed(&self, x: &BigInt) -> BigUint {
        let n = BigInt::from_biguint(Sign::Plus, (*self.n).clone());
        x.mod_floor(&n).magnitude().clone()
    }

    #[inline]
    pub fn add(&self, x: &BigUint, y: &BigUint) -> BigUint {
        let s = x + y;
        if s >= *self.n {
            s - &*self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: &BigUint, y: &BigUint) -> BigUint {
        if x >= y {
            x - y
        } else {
            &*self.n - y + x
        }
    }

    #[inline]
    pub fn neg(&self, x: &BigUint) -> BigUint {
        if x.is_zero() {
            BigUint::zero()
        } else {
            &*self.n - x
        }
    }

    #[inline]
    pub fn mul(&self, x: &BigUint, y: &BigUint) -> BigUint {
        stats::count_mulmods(1);
        (x * y) % &*self.n
    }

    /// Inverse of a residue; a non-unit reports the shared factor.
    pub fn inverse(&self, x: &BigUint) -> Result<BigUint> {
        let n = BigInt::from((*self.n).clone());
        let (g, s, _) = gcd_ext(&BigInt::from(x.clone()), &n)?;
        stats::count_gcd();
        if !g.is_one() {
            return Err(Error::NotInvertible {
                gcd: g.magnitude().clone(),
            });
        }
        Ok(self.reduce_signed(&s))
    }

    /// `x^e mod N`; negative exponents go through the inverse.
    pub fn pow(&self, x: &BigUint, e: &BigInt) -> Result<BigUint> {
        let base = if e.is_negative() {
            self.inverse(x)?
        } else {
            x.clone()
        };
        stats::count_mulmods(2 * e.bits());
        Ok(base.modpow(e.magnitude(), &self.n))
    }

    pub fn pow_u64(&self, x: &BigUint, e: u64) -> BigUint {
        stats::count_mulmods(2 * u64::from(64 - e.leading_zeros()));
        x.modpow(&BigUint::from(e), &self.n)
    }

    /// `gcd(x, N)` for a residue `x`.
    pub fn gcd_with(&self, x: &BigUint) -> BigUint {
        gcd(x, &self.n)
    }
}

/// An element of `Z/NZ`, stored as its residue in `[0, N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZnElement {
    value: BigUint,
    modulus: Modulus,
}

impl fmt::Debug for ZnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.value())
    }
}

impl fmt::Display for ZnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl ZnElement {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_unit(&self) -> bool {
        self.modulus.gcd_with(&self.value).is_one()
    }

    pub fn mul(&self, other: &ZnElement) -> Result<ZnElement> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(ZnElement {
            value: self.modulus.mul(&self.value, &other.value),
            modulus: self.modulus.clone(),
        })
    }

    pub fn inverse(&self) -> Result<ZnElement> {
        Ok(ZnElement {
            value: self.modulus.inverse(&self.value)?,
            modulus: self.modulus.clone(),
        })
    }

    pub fn pow(&self, e: &BigInt) -> Result<ZnElement> {
        modpow(self, e)
    }
}

/// `x^e mod N`. A negative exponent needs `x` to be a unit; otherwise the
/// error carries `gcd(x, N)`.
pub fn modpow(x: &ZnElement, e: &BigInt) -> Result<ZnElement> {
    let value = x.modulus.pow(&x.value, e)?;
    Ok(ZnElement {
        value,
        modulus: x.modulus.clone(),
    })
}
