//! Dense polynomials over `Z/NZ`.
//!
//! All products go through Kronecker substitution: coefficients are packed
//! into one big integer per operand, the integers are multiplied, and the
//! slots are unpacked and reduced. On top of that sit subproduct trees,
//! remainder-tree multipoint evaluation and evaluation along a geometric
//! progression (Bluestein's chirp identity).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::stats;
use crate::znum::{lg, Modulus, ZnElement};

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// Stored normalised: no trailing zero coefficients, except that the zero
/// polynomial is the single coefficient `0`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModPoly {
    coeffs: Vec<BigUint>,
    modulus: Modulus,
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModPoly")
            .field(
                "coeffs",
                &self
                    .coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
            )
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn normalize(coeffs: &mut Vec<BigUint>) {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(BigUint::zero());
    }
}

impl ModPoly {
    /// Builds a polynomial, reducing every coefficient into `[0, N)`.
    pub fn new(modulus: &Modulus, coeffs: Vec<BigUint>) -> Self {
        let mut coeffs: Vec<BigUint> = coeffs.iter().map(|c| modulus.reduce(c)).collect();
        normalize(&mut coeffs);
        ModPoly {
            coeffs,
            modulus: modulus.clone(),
        }
    }

    pub fn from_u64s(modulus: &Modulus, coeffs: &[u64]) -> Self {
        Self::new(modulus, coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub(crate) fn from_reduced(modulus: &Modulus, mut coeffs: Vec<BigUint>) -> Self {
        normalize(&mut coeffs);
        ModPoly {
            coeffs,
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: &Modulus) -> Self {
        ModPoly {
            coeffs: vec![BigUint::zero()],
            modulus: modulus.clone(),
        }
    }

    pub fn one(modulus: &Modulus) -> Self {
        ModPoly {
            coeffs: vec![BigUint::one()],
            modulus: modulus.clone(),
        }
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(modulus: &Modulus, root: &BigUint) -> Self {
        let c0 = modulus.neg(&modulus.reduce(root));
        ModPoly {
            coeffs: vec![c0, BigUint::one()],
            modulus: modulus.clone(),
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Horner evaluation at a single point.
    pub fn eval(&self, x: &BigUint) -> BigUint {
        let n = &self.modulus;
        let x = n.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| n.add(&n.mul(&acc, &x), c))
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        poly_mul(self, other)
    }
}

/// Product of two polynomials via Kronecker substitution.
pub fn poly_mul(f: &ModPoly, g: &ModPoly) -> Result<ModPoly> {
    if f.modulus != g.modulus {
        return Err(Error::ModulusMismatch);
    }
    let coeffs = kronecker_mul(&f.modulus, &f.coeffs, &g.coeffs);
    Ok(ModPoly::from_reduced(&f.modulus, coeffs))
}

/// Slot width that makes every coefficient of the integer product fit
/// without spilling into the next slot.
fn slot_width(modulus: &Modulus, terms: usize) -> usize {
    let b = modulus.residue_bits() as usize;
    let l = lg(&BigUint::from(terms.max(1))).expect("nonzero") as usize;
    2 * b + l + 1
}

fn pack(coeffs: &[BigUint], width: usize) -> BigUint {
    let total_bits = coeffs.len() * width;
    let mut words = vec![0u32; total_bits / 32 + 2];
    for (i, c) in coeffs.iter().enumerate() {
        let base = i * width;
        for (k, d) in c.iter_u32_digits().enumerate() {
            let pos = base + 32 * k;
            let (w, s) = (pos / 32, pos % 32);
            words[w] |= d << s;
            if s > 0 {
                words[w + 1] |= d >> (32 - s);
            }
        }
    }
    BigUint::new(words)
}

fn unpack(product: &BigUint, slots: usize, width: usize, modulus: &Modulus) -> Vec<BigUint> {
    let mut digits = product.to_u32_digits();
    digits.resize(slots * width / 32 + 3, 0);
    let slot_words = width.div_ceil(32);
    let tail_bits = width - 32 * (slot_words - 1);
    let mut out = Vec::with_capacity(slots);
    let mut buf = vec![0u32; slot_words];
    for i in 0..slots {
        let base = i * width;
        for (k, slot) in buf.iter_mut().enumerate() {
            let pos = base + 32 * k;
            let (w, s) = (pos / 32, pos % 32);
            let mut v = digits[w] >> s;
            if s > 0 {
                v |= digits[w + 1] << (32 - s);
            }
            *slot = v;
        }
        if tail_bits < 32 {
            buf[slot_words - 1] &= (1u32 << tail_bits) - 1;
        }
        out.push(modulus.reduce(&BigUint::from_slice(&buf)));
    }
    out
}

/// Full product of two coefficient slices, reduced mod `N`, of length
/// `a.len() + b.len() - 1`. No normalisation.
pub(crate) fn kronecker_mul(modulus: &Modulus, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    stats::note_degree(a.len().max(b.len()) - 1);
    let width = slot_width(modulus, a.len().min(b.len()));
    let product = pack(a, width) * pack(b, width);
    unpack(&product, a.len() + b.len() - 1, width, modulus)
}

/// Schoolbook division by a monic divisor; returns the remainder of length `deg b`.
fn rem_naive(modulus: &Modulus, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let k = b.len() - 1;
    let mut r = a.to_vec();
    for i in (k..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for t in 0..k {
            let prod = modulus.mul(&c, &b[t]);
            r[i - k + t] = modulus.sub(&r[i - k + t], &prod);
        }
    }
    r.truncate(k);
    r
}

/// Power series inverse of `s` modulo `x^len`; needs `s[0] = 1`.
fn series_inverse(modulus: &Modulus, s: &[BigUint], len: usize) -> Vec<BigUint> {
    debug_assert!(s[0].is_one());
    let mut inv = vec![BigUint::one()];
    let mut prec = 1;
    while prec < len {
        prec = (2 * prec).min(len);
        // inv <- inv * (2 - s * inv) mod x^prec
        let s_trunc = &s[..s.len().min(prec)];
        let mut e = kronecker_mul(modulus, s_trunc, &inv);
        e.truncate(prec);
        for c in e.iter_mut() {
            *c = modulus.neg(c);
        }
        e[0] = modulus.add(&e[0], &BigUint::from(2u32));
        let mut next = kronecker_mul(modulus, &inv, &e);
        next.truncate(prec);
        next.resize(prec, BigUint::zero());
        inv = next;
    }
    inv
}

const NEWTON_DIVISION_CUTOFF: usize = 48;

/// `a mod b` for monic `b`, via reversed-series Newton inversion above a
/// small-degree cutoff.
fn rem_monic(modulus: &Modulus, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let k = b.len() - 1;
    if a.len() <= k {
        let mut r = a.to_vec();
        r.resize(k, BigUint::zero());
        return r;
    }
    let qlen = a.len() - k;
    if k < NEWTON_DIVISION_CUTOFF || qlen < NEWTON_DIVISION_CUTOFF {
        return rem_naive(modulus, a, b);
    }
    let rev_b: Vec<BigUint> = b.iter().rev().cloned().collect();
    let inv = series_inverse(modulus, &rev_b, qlen);
    let rev_a: Vec<BigUint> = a.iter().rev().take(qlen).cloned().collect();
    let mut rev_q = kronecker_mul(modulus, &rev_a, &inv);
    rev_q.truncate(qlen);
    rev_q.resize(qlen, BigUint::zero());
    let q: Vec<BigUint> = rev_q.into_iter().rev().collect();
    // Only the low k coefficients of q*b are needed.
    let b_low = &b[..k];
    let q_low = &q[..q.len().min(k)];
    let qb = kronecker_mul(modulus, q_low, b_low);
    (0..k)
        .map(|i| {
            let t = qb.get(i).cloned().unwrap_or_default();
            modulus.sub(&a[i], &t)
        })
        .collect()
}

/// Remainder of `a` modulo a monic `b`.
pub fn poly_rem(a: &ModPoly, b: &ModPoly) -> Result<ModPoly> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch);
    }
    if !b.is_monic() {
        return Err(Error::InvalidArgument("divisor must be monic"));
    }
    if b.degree() == 0 {
        return Ok(ModPoly::zero(&a.modulus));
    }
    Ok(ModPoly::from_reduced(
        &a.modulus,
        rem_monic(&a.modulus, &a.coeffs, &b.coeffs),
    ))
}

/// All levels of the subproduct tree over a list of points.
///
/// Level 0 holds the leaves `x - v_i`. Each higher level multiplies
/// neighbours left to right; an odd node at the end of a level is carried up
/// unchanged. The last level has the single root.
#[derive(Debug, Clone)]
pub struct SubproductTree {
    levels: Vec<Vec<ModPoly>>,
}

impl SubproductTree {
    pub fn new(modulus: &Modulus, points: &[BigUint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("product tree needs at least one point"));
        }
        let leaves: Vec<ModPoly> = points.iter().map(|v| ModPoly::linear(modulus, v)).collect();
        let mut levels = vec![leaves];
        while levels.last().map_or(0, Vec::len) > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|pair| match pair {
                    [l, r] => poly_mul(l, r),
                    [single] => Ok(single.clone()),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(next);
        }
        Ok(SubproductTree { levels })
    }

    pub fn root(&self) -> &ModPoly {
        &self.levels.last().unwrap()[0]
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Reduces `f` down the tree; returns `f mod (x - v_i)` for every leaf.
    fn remainders(&self, f: &ModPoly) -> Vec<BigUint> {
        let modulus = &f.modulus;
        let top = self.levels.len() - 1;
        let mut current: Vec<Vec<BigUint>> =
            vec![rem_monic(modulus, &f.coeffs, &self.levels[top][0].coeffs)];
        for level in (0..top).rev() {
            let nodes = &self.levels[level];
            let mut next = Vec::with_capacity(nodes.len());
            for (k, parent_rem) in current.iter().enumerate() {
                for child in nodes.iter().skip(2 * k).take(2) {
                    next.push(rem_monic(modulus, parent_rem, &child.coeffs));
                }
            }
            current = next;
        }
        current
            .into_iter()
            .map(|mut r| r.pop().unwrap_or_default())
            .collect()
    }
}

/// `(x - v_1) ··· (x - v_n)`.
pub fn product_tree(modulus: &Modulus, points: &[BigUint]) -> Result<ModPoly> {
    Ok(SubproductTree::new(modulus, points)?.root().clone())
}

/// `[f(p_1), …, f(p_k)]` through a subproduct tree and a remainder tree.
pub fn multipoint_eval(f: &ModPoly, points: &[BigUint]) -> Result<Vec<BigUint>> {
    if points.is_empty() {
        return Err(Error::EmptyInput(
            "multipoint evaluation needs at least one point",
        ));
    }
    if f.degree() == 0 {
        return Ok(vec![f.coeffs[0].clone(); points.len()]);
    }
    let tree = SubproductTree::new(&f.modulus, points)?;
    Ok(tree.remainders(f))
}

/// Index of the Laurent coefficient `x^k` (`k ≥ -n`) once the series is
/// shifted by `x^n` into an ordinary polynomial.
#[inline]
fn shifted_index(k: isize, n: usize) -> usize {
    (k + n as isize) as usize
}

/// `[f(1), f(α), …, f(α^{m-1})]` with a single polynomial product.
///
/// Uses `ij = C(i,2) + C(-j,2) - C(i-j,2)`: with `h_i = α^{C(i,2)}`,
/// `f'_j = α^{C(-j,2)} f_j` and `g_k = α^{-C(k,2)}` we get
/// `f(α^i) = h_i · Σ_j f'_j g_{i-j}`, a window of the product `f' · g`.
pub fn eval_geometric(f: &ModPoly, alpha: &ZnElement, m: usize) -> Result<Vec<BigUint>> {
    if alpha.modulus() != &f.modulus {
        return Err(Error::ModulusMismatch);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("geometric evaluation needs m >= 1"));
    }
    let modulus = &f.modulus;
    let a = alpha.value();
    let a_inv = modulus.inverse(a)?;
    let n = f.degree();

    // C(j+1, 2) = C(-j, 2) for j = 0..=n, advancing by j+1 each step.
    let chirp_up = |base: &BigUint, count: usize| -> Vec<BigUint> {
        let mut out = Vec::with_capacity(count);
        let mut acc = BigUint::one();
        let mut step = base.clone();
        for _ in 0..count {
            out.push(acc.clone());
            acc = modulus.mul(&acc, &step);
            step = modulus.mul(&step, base);
        }
        out
    };
    // C(i, 2) for i = 0..count, advancing by i each step.
    let chirp = |base: &BigUint, count: usize| -> Vec<BigUint> {
        let mut out = Vec::with_capacity(count);
        let mut acc = BigUint::one();
        let mut step = BigUint::one();
        for _ in 0..count {
            out.push(acc.clone());
            acc = modulus.mul(&acc, &step);
            step = modulus.mul(&step, base);
        }
        out
    };

    let h = chirp(a, m);
    let f_weights = chirp_up(a, n + 1);
    let f_prime: Vec<BigUint> = f
        .coeffs
        .iter()
        .zip(&f_weights)
        .map(|(c, w)| modulus.mul(c, w))
        .collect();

    let g_pos = chirp(&a_inv, m);
    let g_neg = chirp_up(&a_inv, n + 1);
    let mut g = vec![BigUint::zero(); n + m];
    for j in 1..=n {
        g[shifted_index(-(j as isize), n)] = g_neg[j].clone();
    }
    for (k, v) in g_pos.into_iter().enumerate() {
        g[shifted_index(k as isize, n)] = v;
    }

    let product = kronecker_mul(modulus, &f_prime, &g);
    Ok(h.iter()
        .enumerate()
        .map(|(i, hi)| modulus.mul(hi, &product[shifted_index(i as isize, n)]))
        .collect())
}

/// `α^{C(k,2)}` by direct exponentiation, for checking the chirp recurrences.
#[doc(hidden)]
pub fn binomial_power(alpha: &ZnElement, k: i64) -> Result<BigUint> {
    let e = BigInt::from(k) * BigInt::from(k - 1) / 2;
    Ok(alpha.pow(&e)?.into_value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn m(n: u64) -> Modulus {
        Modulus::from_u64(n).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn schoolbook(modulus: &Modulus, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (&out[i + j] + x * y) % modulus.value();
            }
        }
        out
    }

    fn random_poly(rng: &mut StdRng, modulus: &Modulus, deg: usize) -> ModPoly {
        let n = modulus.value().clone();
        let coeffs = (0..=deg)
            .map(|_| BigUint::from(rng.gen::<u128>()) % &n)
            .collect();
        ModPoly::new(modulus, coeffs)
    }

    #[test]
    fn small_products() {
        let md = m(101);
        let f = ModPoly::from_u64s(&md, &[1, 1]);
        let g = ModPoly::from_u64s(&md, &[2, 1]);
        assert_eq!(
            poly_mul(&f, &g).unwrap().coeffs(),
            &[big(2), big(3), big(1)]
        );
        assert_eq!(poly_mul(&f, &ModPoly::one(&md)).unwrap(), f);
        assert!(poly_mul(&f, &ModPoly::zero(&md)).unwrap().is_zero());
        assert_eq!(
            poly_mul(&f, &ModPoly::one(&m(103))),
            Err(Error::ModulusMismatch)
        );
    }

    #[test]
    fn kronecker_matches_schoolbook_mersenne61() {
        let md = Modulus::new((BigUint::one() << 61u32) - 1u32).unwrap();
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..20 {
            let f = random_poly(&mut rng, &md, 64);
            let g = random_poly(&mut rng, &md, 64);
            let expect = ModPoly::from_reduced(&md, schoolbook(&md, f.coeffs(), g.coeffs()));
            assert_eq!(poly_mul(&f, &g).unwrap(), expect);
        }
    }

    #[test]
    fn kronecker_extreme_coefficients() {
        // every coefficient N-1 maximises each slot
        for n in [2u64, 3, 255, 256, 257, (1 << 32) - 1, 1 << 32, u64::MAX] {
            let md = m(n);
            for len in [1usize, 2, 3, 17, 100] {
                let a = vec![big(n - 1); len];
                let b = vec![big(n - 1); len + 3];
                assert_eq!(
                    kronecker_mul(&md, &a, &b),
                    schoolbook(&md, &a, &b),
                    "n={n} len={len}"
                );
            }
        }
    }

    #[test]
    fn product_tree_examples() {
        let md = m(7);
        assert_eq!(
            product_tree(&md, &[big(1), big(2)]).unwrap().coeffs(),
            &[big(2), big(4), big(1)]
        );
        let md = m(1_000_000_007);
        assert_eq!(
            product_tree(&md, &[big(0)]).unwrap().coeffs(),
            &[big(0), big(1)]
        );
        assert!(product_tree(&md, &[]).is_err());
    }

    #[test]
    fn product_tree_roots_vanish() {
        let md = m(1_000_000_007);
        let mut rng = StdRng::seed_from_u64(3);
        let pts: Vec<BigUint> = (0..100)
            .map(|_| big(rng.gen_range(0..1_000_000_007)))
            .collect();
        let f = product_tree(&md, &pts).unwrap();
        assert_eq!(f.degree(), 100);
        assert!(f.is_monic());
        for p in &pts {
            assert!(f.eval(p).is_zero());
        }
    }

    #[test]
    fn rem_newton_matches_naive() {
        let md = m(1_000_000_007);
        let mut rng = StdRng::seed_from_u64(9);
        for (da, db) in [
            (300usize, 100usize),
            (500, 60),
            (120, 119),
            (1000, 400),
            (50, 70),
        ] {
            let a = random_poly(&mut rng, &md, da);
            let mut b = random_poly(&mut rng, &md, db).coeffs().to_vec();
            b.resize(db + 1, BigUint::zero());
            b[db] = BigUint::one();
            let b = ModPoly::from_reduced(&md, b);
            let mut naive = if a.coeffs().len() > db {
                rem_naive(&md, a.coeffs(), b.coeffs())
            } else {
                a.coeffs().to_vec()
            };
            normalize(&mut naive);
            assert_eq!(poly_rem(&a, &b).unwrap().coeffs(), &naive[..], "{da}/{db}");
        }
    }

    #[test]
    fn multipoint_examples() {
        let md = m(5);
        let f = ModPoly::from_u64s(&md, &[0, 0, 1]);
        assert_eq!(
            multipoint_eval(&f, &[big(0), big(1), big(2)]).unwrap(),
            vec![big(0), big(1), big(4)]
        );
        let c = ModPoly::from_u64s(&md, &[3]);
        assert_eq!(
            multipoint_eval(&c, &[big(0), big(4), big(2)]).unwrap(),
            vec![big(3); 3]
        );
        assert!(multipoint_eval(&f, &[]).is_err());
    }

    #[test]
    fn multipoint_matches_horner() {
        let md = m((1 << 31) - 1);
        let mut rng = StdRng::seed_from_u64(31);
        for (deg, k) in [(50usize, 50usize), (3, 40), (200, 7), (400, 300), (1, 1)] {
            let f = random_poly(&mut rng, &md, deg);
            let pts: Vec<BigUint> = (0..k)
                .map(|_| big(rng.gen_range(0..(1 << 31) - 1)))
                .collect();
            let got = multipoint_eval(&f, &pts).unwrap();
            let want: Vec<BigUint> = pts.iter().map(|p| f.eval(p)).collect();
            assert_eq!(got, want, "deg {deg} points {k}");
        }
    }

    #[test]
    fn geometric_examples() {
        let md = m(10);
        let f = ModPoly::from_u64s(&md, &[0, 1]);
        assert_eq!(
            eval_geometric(&f, &md.element(3u32), 3).unwrap(),
            vec![big(1), big(3), big(9)]
        );

        let md = m(11);
        let c = ModPoly::from_u64s(&md, &[6]);
        assert_eq!(
            eval_geometric(&c, &md.element(4u32), 5).unwrap(),
            vec![big(6); 5]
        );

        let f = ModPoly::from_u64s(&md, &[1, 0, 1]);
        let want: Vec<BigUint> = [1u64, 2, 4].iter().map(|&x| f.eval(&big(x))).collect();
        assert_eq!(eval_geometric(&f, &md.element(2u32), 3).unwrap(), want);
        assert_eq!(want, vec![big(2), big(5), big(6)]);
    }

    #[test]
    fn geometric_rejects_non_unit() {
        let md = m(12);
        let f = ModPoly::from_u64s(&md, &[1, 1]);
        assert_eq!(
            eval_geometric(&f, &md.element(9u32), 4),
            Err(Error::NotInvertible { gcd: big(3) })
        );
    }

    #[test]
    fn chirp_recurrences_match_direct_powers() {
        let md = m(1_000_000_007);
        let alpha = md.element(12345u32);
        let inv = alpha.inverse().unwrap();
        // forward chain C(i,2) and backward chain C(-j,2) = C(j+1,2)
        let mut acc = BigUint::one();
        let mut step = BigUint::one();
        for i in 0..200i64 {
            assert_eq!(acc, binomial_power(&alpha, i).unwrap());
            acc = md.mul(&acc, &step);
            step = md.mul(&step, alpha.value());
        }
        let mut acc = BigUint::one();
        let mut step = inv.value().clone();
        for j in 0..200i64 {
            assert_eq!(acc, binomial_power(&inv, -j).unwrap());
            acc = md.mul(&acc, &step);
            step = md.mul(&step, inv.value());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly_strategy() -> impl Strategy<Value = Vec<u64>> {
            prop::collection::vec(any::<u64>(), 1..40)
        }

        proptest! {
            #[test]
            fn mul_commutes_and_associates(n in 2u64..u64::MAX, a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
                let md = m(n);
                let (a, b, c) = (ModPoly::from_u64s(&md, &a), ModPoly::from_u64s(&md, &b), ModPoly::from_u64s(&md, &c));
                prop_assert_eq!(poly_mul(&a, &b).unwrap(), poly_mul(&b, &a).unwrap());
                let left = poly_mul(&poly_mul(&a, &b).unwrap(), &c).unwrap();
                let right = poly_mul(&a, &poly_mul(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn product_tree_is_monic_with_full_degree(n in 2u64..1_000_000, pts in prop::collection::vec(any::<u64>(), 1..60)) {
                let md = m(n);
                let pts: Vec<BigUint> = pts.into_iter().map(BigUint::from).collect();
                let f = product_tree(&md, &pts).unwrap();
                prop_assert_eq!(f.degree(), pts.len());
                prop_assert!(f.is_monic());
            }

            #[test]
            fn geometric_matches_horner(n in 2u64..u64::MAX, coeffs in prop::collection::vec(any::<u64>(), 1..80), alpha in 1u64..u64::MAX, count in 1usize..80) {
                let md = m(n);
                let alpha = md.element(alpha);
                prop_assume!(alpha.is_unit());
                let f = ModPoly::from_u64s(&md, &coeffs);
                let got = eval_geometric(&f, &alpha, count).unwrap();
                let mut x = BigUint::one();
                for v in got {
                    prop_assert_eq!(v, f.eval(&x));
                    x = md.mul(&x, alpha.value());
                }
            }
        }
    }
}
