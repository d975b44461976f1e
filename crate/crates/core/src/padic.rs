//! Rationals as p-adic numbers.
//!
//! Everything downstream works with exact [`Rational`] values and reduces
//! them to residues only at the edges. This module provides:
//!
//! - [`Prime`] — a checked prime wrapper (deterministic Miller–Rabin),
//! - [`valuation`] — the p-adic valuation ν_p, with `None` standing for +∞,
//! - [`least_residue`] — ⟨x⟩_{p^m}, the least nonnegative residue of a
//!   p-adic integer modulo p^m,
//! - [`dash`] — the dash operation α* = (α + ⟨−α⟩_p)/p on Z_p,
//! - [`mod_inverse`] — modular inverses modulo prime powers,
//! - [`reduce`] — exact rational → [`QpApprox`] (valuation + unit residue),
//! - [`legendre_symbol`] and [`fermat_quotient`] — the classical unit-group
//!   invariants (x|p) and q_p(x) = (x^{p−1} − 1)/p.
//!
//! Two approximation types carry modular data: [`PadicApprox`] is a plain
//! residue "x mod p^N" for p-adic integers, while [`QpApprox`] splits a
//! Q_p value into p-valuation and unit part so that sums can track the
//! precision actually certified after cancellation.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Exact rational numbers; the authoritative scalar type of the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the rational n/1.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"u/d"` or `"u"` (arbitrary precision, optional sign) into a
/// rational. Returns `None` for malformed input or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).ok()?;
            let d = BigInt::from_str(den.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

/// Formats a rational as `"u/d"` (or `"u"` when the denominator is 1), the
/// canonical form used in reports and CLI arguments.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

// ---------------------------------------------------------------------------
// primes
// ---------------------------------------------------------------------------

/// A checked prime. Construction verifies primality with a deterministic
/// Miller–Rabin test, so downstream code can rely on the invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    /// Wraps `p`, verifying that it is prime.
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Wraps `p`, additionally requiring p ≥ 3.
    pub fn odd(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::NotOddPrime(2));
        }
        Self::new(p)
    }

    /// The underlying integer value.
    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// p^n as a `u64`, or [`Error::ModulusTooLarge`] if it does not stay
    /// below 2^63 (the headroom the modular engine needs for sums).
    pub fn pow_checked(self, n: u32) -> Result<u64> {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc
                .checked_mul(self.0)
                .filter(|&m| m < (1 << 63))
                .ok_or(Error::ModulusTooLarge { p: self.0, n })?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller–Rabin primality test, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These bases decide primality correctly for every n < 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime_u64(n)).collect()
}

// ---------------------------------------------------------------------------
// fixed-width modular arithmetic
// ---------------------------------------------------------------------------

/// (a · b) mod m without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// (a + b) mod m without overflow.
#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// (a − b) mod m, normalised to [0, m).
#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        m - b + a
    }
}

/// a^e mod m by binary exponentiation.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// The inverse of `a` modulo `modulus`, by the extended Euclidean algorithm.
///
/// Works for any modulus ≥ 2 (in this crate: prime powers p^N). Fails with
/// [`Error::NotAUnit`] when gcd(a, modulus) ≠ 1.
pub fn mod_inverse(a: i64, modulus: u64) -> Result<u64> {
    let m = modulus as i128;
    let mut r0: i128 = m;
    let mut r1: i128 = (a as i128).rem_euclid(m);
    let (mut t0, mut t1): (i128, i128) = (0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotAUnit {
            value: a.to_string(),
            modulus,
        });
    }
    Ok(t0.rem_euclid(m) as u64)
}

/// [`mod_inverse`] for residues already reduced into `u64` range.
pub fn mod_inverse_u64(a: u64, modulus: u64) -> Result<u64> {
    let m = modulus as i128;
    let mut r0: i128 = m;
    let mut r1: i128 = (a % modulus) as i128;
    let (mut t0, mut t1): (i128, i128) = (0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotAUnit {
            value: a.to_string(),
            modulus,
        });
    }
    Ok(t0.rem_euclid(m) as u64)
}

/// Residue of a [`BigInt`] modulo `m`, normalised to [0, m).
pub fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let r = x.mod_floor(&m_big);
    r.to_u64().expect("mod_floor result fits in u64")
}

// ---------------------------------------------------------------------------
// valuations and residues
// ---------------------------------------------------------------------------

/// The p-adic valuation ν_p(x); `None` encodes ν_p(0) = +∞.
///
/// Negative values occur when p divides the denominator:
/// ν_5(50/3) = 2, ν_5(3/25) = −2.
pub fn valuation(x: &Rational, p: Prime) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p_big = BigInt::from(p.get());
    Some(int_valuation(x.numer(), &p_big) - int_valuation(x.denom(), &p_big))
}

fn int_valuation(x: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!x.is_zero());
    let mut v = 0i64;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// ⟨x⟩_{p^m}: the least nonnegative residue of a p-adic integer `x`
/// modulo p^m.
///
/// Fails with [`Error::NonUnitDenominator`] when x ∉ Z_p (denominator
/// divisible by p). Examples: ⟨−1/2⟩_5 = 2, ⟨3/4⟩_25 = 7, ⟨0⟩ = 0.
pub fn least_residue(x: &Rational, p: Prime, m: u32) -> Result<u64> {
    let modulus = p.pow_checked(m)?;
    if x.denom().mod_floor(&BigInt::from(p.get())).is_zero() {
        return Err(Error::NonUnitDenominator {
            value: format_rational(x),
            p: p.get(),
        });
    }
    let num = bigint_mod(x.numer(), modulus);
    let den = bigint_mod(x.denom(), modulus);
    Ok(mul_mod(num, mod_inverse_u64(den, modulus)?, modulus))
}

/// The dash operation α* = (α + ⟨−α⟩_p)/p, a map Z_p → Z_p.
///
/// α* is the "next digit slice" of α: if α = a_0 + a_1 p + a_2 p² + …
/// then α + ⟨−α⟩_p cancels the constant digit and dividing by p shifts.
/// Examples: (1/2)* = 1/2 at p = 5, (−2)* = 0 at p = 7, (1/3)* = 1/3 at
/// p = 7.
pub fn dash(alpha: &Rational, p: Prime) -> Result<Rational> {
    let fractional = least_residue(&(-alpha), p, 1)?;
    Ok((alpha + int(fractional as i64)) / int(p.get() as i64))
}

/// Legendre symbol (a|p) for odd primes, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: Prime) -> Result<i32> {
    if p.get() == 2 {
        return Err(Error::NotOddPrime(2));
    }
    let residue = (a as i128).rem_euclid(p.get() as i128) as u64;
    if residue == 0 {
        return Ok(0);
    }
    let e = pow_mod(residue, (p.get() - 1) / 2, p.get());
    Ok(if e == 1 { 1 } else { -1 })
}

/// Fermat quotient q_p(x) = (x^{p−1} − 1)/p as an exact rational
/// (in fact an integer for p ∤ x; that is Fermat's little theorem).
pub fn fermat_quotient(x: i64, p: Prime) -> Result<Rational> {
    if (x as i128).rem_euclid(p.get() as i128) == 0 {
        return Err(Error::NotAUnit {
            value: x.to_string(),
            modulus: p.get(),
        });
    }
    let power = BigInt::from(x).pow(
        (p.get() - 1)
            .try_into()
            .expect("exponent p−1 fits in u32 for fixed-width primes"),
    );
    Ok(Rational::new(power - BigInt::one(), BigInt::from(p.get())))
}

// ---------------------------------------------------------------------------
// residue approximations
// ---------------------------------------------------------------------------

/// A p-adic integer known modulo p^N: the pair (p, N) plus a residue in
/// [0, p^N).
///
/// Fixed-width on purpose — the engine guards p^N < 2^63 at construction, so
/// all arithmetic stays in `u64`/`u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicApprox {
    /// The prime p.
    pub p: u64,
    /// The precision exponent N.
    #[serde(rename = "N")]
    pub n: u32,
    /// The residue in [0, p^N).
    pub residue: u64,
}

impl PadicApprox {
    /// Wraps a residue, reducing it modulo p^N.
    pub fn new(p: Prime, n: u32, residue: u64) -> Result<Self> {
        let modulus = p.pow_checked(n)?;
        Ok(PadicApprox {
            p: p.get(),
            n,
            residue: residue % modulus,
        })
    }

    /// The residue of an exact rational in Z_p modulo p^N.
    pub fn from_rational(x: &Rational, p: Prime, n: u32) -> Result<Self> {
        Ok(PadicApprox {
            p: p.get(),
            n,
            residue: least_residue(x, p, n)?,
        })
    }

    /// The modulus p^N.
    pub fn modulus(&self) -> u64 {
        let mut acc = 1u64;
        for _ in 0..self.n {
            acc *= self.p;
        }
        acc
    }

    fn assert_same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in modular arithmetic");
    }

    /// Congruence at the finer of the two precisions is an error to assert;
    /// equality of approximations compares at the *coarser* precision, which
    /// is the only level at which both sides carry information.
    pub fn congruent(&self, other: &Self) -> bool {
        self.assert_same_prime(other);
        let n = self.n.min(other.n);
        let mut m = 1u64;
        for _ in 0..n {
            m *= self.p;
        }
        self.residue % m == other.residue % m
    }

    /// Truncates to a coarser precision n ≤ N.
    pub fn truncate(&self, n: u32) -> Self {
        assert!(n <= self.n, "cannot refine a residue by truncation");
        let mut m = 1u64;
        for _ in 0..n {
            m *= self.p;
        }
        PadicApprox {
            p: self.p,
            n,
            residue: self.residue % m,
        }
    }

    /// Sum at the coarser precision.
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let out = self.truncate(self.n.min(other.n));
        PadicApprox {
            residue: add_mod(out.residue, other.residue, out.modulus()),
            ..out
        }
    }

    /// Difference at the coarser precision.
    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let out = self.truncate(self.n.min(other.n));
        PadicApprox {
            residue: sub_mod(out.residue, other.residue % out.modulus(), out.modulus()),
            ..out
        }
    }

    /// Product at the coarser precision.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let out = self.truncate(self.n.min(other.n));
        PadicApprox {
            residue: mul_mod(out.residue, other.residue, out.modulus()),
            ..out
        }
    }

    /// Inverse at the same precision; the residue must be a unit.
    pub fn invert(&self) -> Result<Self> {
        Ok(PadicApprox {
            residue: mod_inverse_u64(self.residue, self.modulus())?,
            ..*self
        })
    }

    /// k-th power at the same precision.
    pub fn pow(&self, k: u64) -> Self {
        PadicApprox {
            residue: pow_mod(self.residue, k, self.modulus()),
            ..*self
        }
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.n)
    }
}

/// A Q_p value with explicit precision bookkeeping.
///
/// Either a nonzero value `unit · p^val` with the unit known modulo p^N
/// (absolute precision val + N), or "zero to absolute precision a": a value
/// only known to be ≡ 0 mod p^a. The latter arises from cancellation in
/// sums and is *not* the same as exact zero — arithmetic degrades precision
/// honestly instead of inventing digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QpApprox {
    /// ≡ 0 mod p^abs; nothing more is known.
    Zero {
        /// The prime p.
        p: u64,
        /// Absolute precision exponent a (value ≡ 0 mod p^a).
        abs: i64,
    },
    /// unit · p^val with unit ∈ (Z/p^N)^× known exactly.
    Nonzero {
        /// The prime p.
        p: u64,
        /// The valuation.
        val: i64,
        /// Relative precision: the unit is known mod p^N, N ≥ 1.
        #[serde(rename = "N")]
        n: u32,
        /// The unit residue, coprime to p, in [0, p^N).
        unit: u64,
    },
}

impl QpApprox {
    /// Zero to absolute precision p^abs.
    pub fn zero(p: Prime, abs: i64) -> Self {
        QpApprox::Zero { p: p.get(), abs }
    }

    /// A nonzero value from valuation and unit residue (must be coprime
    /// to p).
    pub fn from_unit(p: Prime, val: i64, n: u32, unit: u64) -> Result<Self> {
        let modulus = p.pow_checked(n)?;
        let unit = unit % modulus;
        if n == 0 || unit % p.get() == 0 {
            return Err(Error::NotAUnit {
                value: unit.to_string(),
                modulus,
            });
        }
        Ok(QpApprox::Nonzero {
            p: p.get(),
            val,
            n,
            unit,
        })
    }

    /// The prime.
    pub fn prime(&self) -> u64 {
        match self {
            QpApprox::Zero { p, .. } | QpApprox::Nonzero { p, .. } => *p,
        }
    }

    /// ν_p of the value; `None` when only "zero to some precision" is known.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            QpApprox::Zero { .. } => None,
            QpApprox::Nonzero { val, .. } => Some(*val),
        }
    }

    /// Absolute precision: the value is determined modulo p^(abs_precision).
    pub fn abs_precision(&self) -> i64 {
        match self {
            QpApprox::Zero { abs, .. } => *abs,
            QpApprox::Nonzero { val, n, .. } => val + *n as i64,
        }
    }

    /// Whether the value is ≡ 0 mod p^r (and that much is certified).
    pub fn is_zero_mod(&self, r: u32) -> bool {
        match self {
            QpApprox::Zero { abs, .. } => *abs >= r as i64,
            QpApprox::Nonzero { val, .. } => *val >= r as i64,
        }
    }

    /// The residue modulo p^r, when the value is a p-adic integer known to
    /// at least that absolute precision.
    pub fn residue(&self, r: u32) -> Result<u64> {
        let p = Prime::new(self.prime())?;
        let modulus = p.pow_checked(r)?;
        match *self {
            QpApprox::Zero { abs, .. } => {
                if abs >= r as i64 {
                    Ok(0)
                } else {
                    Err(Error::PrecisionUnreachable {
                        p: p.get(),
                        exponent: r,
                    })
                }
            }
            QpApprox::Nonzero { val, n, unit, .. } => {
                if val < 0 {
                    return Err(Error::NotIntegral { valuation: val });
                }
                if val >= r as i64 {
                    return Ok(0);
                }
                if val + n as i64 <= r as i64 - 1 {
                    return Err(Error::PrecisionUnreachable {
                        p: p.get(),
                        exponent: r,
                    });
                }
                let mut shifted = unit % modulus;
                for _ in 0..val {
                    shifted = mul_mod(shifted, p.get(), modulus);
                }
                Ok(shifted)
            }
        }
    }

    /// Product; zero factors scale the guaranteed vanishing order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime(), other.prime(), "mixed primes");
        let p = self.prime();
        match (self, other) {
            (QpApprox::Zero { abs: a, .. }, QpApprox::Zero { abs: b, .. }) => {
                QpApprox::Zero { p, abs: a + b }
            }
            (QpApprox::Zero { abs, .. }, QpApprox::Nonzero { val, .. })
            | (QpApprox::Nonzero { val, .. }, QpApprox::Zero { abs, .. }) => QpApprox::Zero {
                p,
                abs: abs + val,
            },
            (
                QpApprox::Nonzero {
                    val: v1,
                    n: n1,
                    unit: u1,
                    ..
                },
                QpApprox::Nonzero {
                    val: v2,
                    n: n2,
                    unit: u2,
                    ..
                },
            ) => {
                let n = (*n1).min(*n2);
                let mut m = 1u64;
                for _ in 0..n {
                    m *= p;
                }
                QpApprox::Nonzero {
                    p,
                    val: v1 + v2,
                    n,
                    unit: mul_mod(u1 % m, u2 % m, m),
                }
            }
        }
    }

    /// Inverse of a nonzero value. Inverting a bare "zero to precision"
    /// state has no meaning and panics.
    pub fn invert(&self) -> Result<Self> {
        match *self {
            QpApprox::Zero { .. } => panic!("cannot invert a value known only as zero-to-precision"),
            QpApprox::Nonzero { p, val, n, unit } => {
                let prime = Prime::new(p)?;
                let m = prime.pow_checked(n)?;
                Ok(QpApprox::Nonzero {
                    p,
                    val: -val,
                    n,
                    unit: mod_inverse_u64(unit, m)?,
                })
            }
        }
    }

    /// Sum with honest precision propagation.
    ///
    /// The result is only known modulo p^min(abs precisions); cancellation
    /// of leading units degrades to a [`QpApprox::Zero`] state rather than
    /// fabricating a valuation.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime(), other.prime(), "mixed primes");
        let p = self.prime();
        let abs = self.abs_precision().min(other.abs_precision());
        // Value of the sum modulo p^abs, relative to the base valuation.
        let base = match (self.valuation(), other.valuation()) {
            (None, None) => return QpApprox::Zero { p, abs },
            (Some(v), None) | (None, Some(v)) => v.min(abs),
            (Some(v1), Some(v2)) => v1.min(v2).min(abs),
        };
        let rel = abs - base;
        if rel <= 0 {
            return QpApprox::Zero { p, abs };
        }
        let rel = rel as u32;
        let mut m = 1u64;
        for _ in 0..rel {
            m *= p;
        }
        let mut acc = 0u64;
        for part in [self, other] {
            if let QpApprox::Nonzero { val, unit, .. } = part {
                let mut contrib = unit % m;
                for _ in 0..(val - base) {
                    contrib = mul_mod(contrib, p, m);
                }
                acc = add_mod(acc, contrib, m);
            }
        }
        if acc == 0 {
            return QpApprox::Zero { p, abs };
        }
        let mut val = base;
        let mut unit = acc;
        let mut n = rel;
        while unit % p == 0 {
            unit /= p;
            val += 1;
            n -= 1;
        }
        QpApprox::Nonzero { p, val, n, unit }
    }

    /// Negation (exact).
    pub fn neg(&self) -> Self {
        match *self {
            QpApprox::Zero { .. } => self.clone(),
            QpApprox::Nonzero { p, val, n, unit } => {
                let mut m = 1u64;
                for _ in 0..n {
                    m *= p;
                }
                QpApprox::Nonzero {
                    p,
                    val,
                    n,
                    unit: m - unit,
                }
            }
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl fmt::Display for QpApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QpApprox::Zero { p, abs } => write!(f, "O({p}^{abs})"),
            QpApprox::Nonzero { p, val, n, unit } => {
                write!(f, "{unit}·{p}^{val} + O({p}^{})", val + *n as i64)
            }
        }
    }
}

/// Reduces an exact rational to a [`QpApprox`] with N digits of relative
/// precision (absolute precision ν_p(x) + N for nonzero x).
///
/// Total on all of Q: negative valuations are fine. Zero reduces to the
/// zero-to-precision state at absolute precision N.
pub fn reduce(x: &Rational, p: Prime, n: u32) -> Result<QpApprox> {
    match valuation(x, p) {
        None => Ok(QpApprox::zero(p, n as i64)),
        Some(v) => {
            let scale =
                Rational::from_integer(BigInt::from(p.get()).pow(v.unsigned_abs() as u32));
            let unit = if v >= 0 { x / &scale } else { x * &scale };
            let residue = least_residue(&unit, p, n)?;
            QpApprox::from_unit(p, v, n, residue)
        }
    }
}
