//! Morita's p-adic Gamma function and its strong-Taylor coefficients.
//!
//! `Γ_p(0) = 1` and `Γ_p(n) = (−1)^n Π_{1 ≤ k < n, p∤k} k` for integers
//! `n ≥ 1`; the function extends to Z_p by continuity, and
//! `x ≡ y (mod p^r)` implies `Γ_p(x) ≡ Γ_p(y) (mod p^r)`. Evaluation at a
//! rational with p-free denominator therefore reduces to the defining
//! product at the least residue `⟨x⟩_{p^N}` — an `O(p^N)` computation that
//! this module amortises with a prefix-product cache (one pass per `(p, N)`,
//! then `O(1)` lookups plus a short tail product per query).
//!
//! Around a base point the function admits a strong Taylor expansion
//!
//! ```text
//! Γ_p(α + tp) ≡ Γ_p(α) Σ_{k<r} G_k(α)/k! · (tp)^k   (mod p^r),  r ≤ p−2,
//! ```
//!
//! with `G_k(α) = Γ_p^{(k)}(α)/Γ_p(α)`. Two independent computations of the
//! coefficients are provided:
//!
//! - [`taylor_coeffs_at_zero`] and [`taylor_coeffs_interpolated`] recover
//!   them by sampling `Γ_p` on an arithmetic progression and solving the
//!   (unit-determinant) Vandermonde system;
//! - [`taylor_coeffs`] evaluates the closed formula
//!   `G_k(α) ≡ k! Σ_{j≤k} G_j(0)/j! · fH_{a_{r−j}−1}^{(k−j)}(p)` with
//!   `a_i = p^i − ⟨−α⟩_{p^i}`, consuming the elementary-symmetric harmonic
//!   sums of [`crate::harmonic`].
//!
//! The `k`-th coefficient is certified modulo `p^{r−k}` — the uniqueness
//! granularity of strong Taylor data.

use crate::localglobal::vandermonde_solve_residues;
use crate::padic::{
    format_rational, least_residue, mod_inverse_u64, mul_mod, valuation, PadicApprox, Prime,
    Rational,
};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

// ------------------------------------------------------------ product cache

/// Checkpoint spacing of the prefix-product cache.
const STRIDE: u64 = 1024;

/// Cache of prefix products `Π_{1 ≤ k < i·STRIDE, p∤k} k mod p^N`, keyed by
/// `(p, N)`. Read-mostly; concurrent fills are idempotent races.
static PREFIX_CACHE: Lazy<RwLock<HashMap<(u64, u32), Arc<Vec<u64>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn prefix_cache(p: Prime, n: u32) -> Result<Arc<Vec<u64>>> {
    let key = (p.get(), n);
    if let Some(hit) = PREFIX_CACHE.read().expect("cache lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let m = p.pow_checked(n)?;
    let mut checkpoints = Vec::with_capacity((m / STRIDE + 2) as usize);
    let mut acc = 1u64 % m;
    checkpoints.push(acc);
    for k in 1..m {
        if k % p.get() != 0 {
            acc = mul_mod(acc, k, m);
        }
        if k % STRIDE == STRIDE - 1 {
            checkpoints.push(acc);
        }
    }
    let built = Arc::new(checkpoints);
    let mut guard = PREFIX_CACHE.write().expect("cache lock");
    let entry = guard.entry(key).or_insert_with(|| Arc::clone(&built));
    Ok(Arc::clone(entry))
}

/// Product `Π_{1 ≤ k < n, p∤k} k mod p^N` for `n < p^N`, via the cache.
fn coprime_product(n: u64, p: Prime, prec: u32) -> Result<u64> {
    let m = p.pow_checked(prec)?;
    let cache = prefix_cache(p, prec)?;
    let block = n / STRIDE;
    let mut acc = cache[block as usize];
    for k in (block * STRIDE).max(1)..n {
        if k % p.get() != 0 {
            acc = mul_mod(acc, k, m);
        }
    }
    Ok(acc)
}

// ------------------------------------------------------------- Γ_p proper

/// `Γ_p(n) mod p^N` for a nonnegative integer argument: `Γ_p(0) = 1` and
/// `Γ_p(n) = (−1)^n Π_{1 ≤ k < n, p∤k} k`.
///
/// Arguments `n ≥ p^N` are first reduced mod `p^N` (legitimate by
/// continuity for odd p).
pub fn gamma_p_integer(n: u64, p: Prime, prec: u32) -> Result<PadicApprox> {
    let m = p.pow_checked(prec)?;
    let n = if n >= m { n % m } else { n };
    let product = coprime_product(n, p, prec)?;
    let value = if n % 2 == 1 {
        (m - product) % m
    } else {
        product
    };
    PadicApprox::new(p, prec, value)
}

/// `Γ_p(x) mod p^N` at a rational `x` with p-free denominator, by continuity:
/// `gamma_p_integer(⟨x⟩_{p^N})`.
///
/// Errors with [`Error::NonUnitDenominator`] when `p` divides the
/// denominator of `x`.
pub fn gamma_p(x: &Rational, p: Prime, prec: u32) -> Result<PadicApprox> {
    let idx = least_residue(x, p, prec)?;
    gamma_p_integer(idx, p, prec)
}

/// The shift ratio `Γ_p(x+1)/Γ_p(x)`: `−x` when `p ∤ x`, and `−1` when
/// `p | x` (including `x = 0`).
///
/// Errors with [`Error::NonUnitDenominator`] for non-p-integral `x`.
pub fn gamma_shift_ratio(x: &Rational, p: Prime, prec: u32) -> Result<PadicApprox> {
    match valuation(x, p) {
        Some(v) if v < 0 => Err(Error::NonUnitDenominator {
            value: format_rational(x),
            p: p.get(),
        }),
        Some(0) => PadicApprox::from_rational(&-x, p, prec),
        _ => PadicApprox::from_rational(&crate::padic::int(-1), p, prec),
    }
}

// ------------------------------------------------------ Taylor coefficients

/// Strong-Taylor data of `Γ_p` at a base point: `coeffs[k]` holds `G_k(α)`
/// as a [`PadicApprox`] certified modulo `p^{r−k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorCoeffs {
    pub base: Rational,
    pub prime: u64,
    pub order: u32,
    pub coeffs: Vec<PadicApprox>,
}

impl TaylorCoeffs {
    /// Evaluates `Γ_p(α)·Σ_{k<r} G_k(α)/k!·(tp)^k mod p^{r}` at an integer
    /// `t` — the reconstruction used by the expansion-correctness tests.
    pub fn reconstruct(&self, t: u64) -> Result<PadicApprox> {
        let p = Prime::new(self.prime)?;
        let r = self.order;
        let m = p.pow_checked(r)?;
        let gamma_base = gamma_p(&self.base, p, r)?;
        let mut acc = 0u64;
        let mut tp_pow = 1u64; // (tp)^k mod p^r
        let mut factorial = 1u64;
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if k > 0 {
                factorial = mul_mod(factorial, k as u64 % m, m);
                tp_pow = mul_mod(tp_pow, mul_mod(t % m, p.get() % m, m), m);
            }
            let term = mul_mod(
                coeff.residue % m,
                mul_mod(tp_pow, mod_inverse_u64(factorial, m)?, m),
                m,
            );
            acc = (acc + term) % m;
        }
        PadicApprox::new(p, r, mul_mod(gamma_base.residue, acc, m))
    }
}

/// Shared scaffolding for the interpolation-based coefficient extractions:
/// solves `Σ_k c_k t^k = Γ_p(α + tp)/Γ_p(α) mod p^r` on nodes `t = 0..r−1`
/// and unscales `c_k = G_k(α)·p^k/k!` into `G_k(α) mod p^{r−k}`.
fn interpolate_coeffs(alpha: &Rational, p: Prime, r: u32) -> Result<Vec<PadicApprox>> {
    if r == 0 || r > p.get().saturating_sub(2) as u32 {
        return Err(Error::OrderTooLarge {
            order: r,
            p: p.get(),
        });
    }
    let m = p.pow_checked(r)?;
    let gamma_base = gamma_p(alpha, p, r)?;
    let inv_base = mod_inverse_u64(gamma_base.residue, m)?;
    let nodes: Vec<u64> = (0..r as u64).collect();
    let values: Vec<u64> = nodes
        .iter()
        .map(|&t| {
            let arg = alpha + crate::padic::int((t * p.get()) as i64);
            Ok(mul_mod(gamma_p(&arg, p, r)?.residue, inv_base, m))
        })
        .collect::<Result<_>>()?;
    let scaled = vandermonde_solve_residues(&nodes, &values, p, r)?;
    let mut coeffs = Vec::with_capacity(r as usize);
    let mut factorial = 1u64;
    for (k, &c) in scaled.iter().enumerate() {
        if k > 0 {
            factorial = mul_mod(factorial, k as u64, m);
        }
        let pk = p.get().pow(k as u32);
        assert_eq!(c % pk, 0, "scaled coefficient divisible by p^k");
        let mk = p.pow_checked(r - k as u32)?;
        let unscaled = mul_mod((c / pk) % mk, factorial % mk, mk);
        coeffs.push(PadicApprox::new(p, r - k as u32, unscaled)?);
    }
    Ok(coeffs)
}

/// Coefficients `G_k(0) mod p^{r−k}` for `0 ≤ k < r`, by sampling
/// `Γ_p(tp) mod p^r` at `t = 0, …, r−1` and inverting the Vandermonde
/// system. `G_0(0) = 1`.
///
/// The working precision is `max(N, r)`; the extra headroom is harmless
/// since only `mod p^r` data enters the system.
///
/// Errors with [`Error::OrderTooLarge`] if `r > p−2` (where the expansion's
/// precision-loss exponent would no longer vanish).
pub fn taylor_coeffs_at_zero(p: Prime, r: u32, _working: u32) -> Result<TaylorCoeffs> {
    Ok(TaylorCoeffs {
        base: crate::padic::int(0),
        prime: p.get(),
        order: r,
        coeffs: interpolate_coeffs(&crate::padic::int(0), p, r)?,
    })
}

/// Interpolation-based `G_k(α) mod p^{r−k}`: the same extraction as
/// [`taylor_coeffs_at_zero`] but along the progression `α + tp`. Serves as
/// the independent oracle for [`taylor_coeffs`].
pub fn taylor_coeffs_interpolated(alpha: &Rational, p: Prime, r: u32) -> Result<TaylorCoeffs> {
    Ok(TaylorCoeffs {
        base: alpha.clone(),
        prime: p.get(),
        order: r,
        coeffs: interpolate_coeffs(alpha, p, r)?,
    })
}

/// Closed-formula coefficients
/// `G_k(α) ≡ k! Σ_{j=0}^{k} G_j(0)/j! · fH_{a_{r−j}−1}^{(k−j)}(p)` with
/// `a_i = p^i − ⟨−α⟩_{p^i}`, certified modulo `p^{r−k}`.
///
/// Errors: [`Error::OrderTooLarge`] for `r > p−2`;
/// [`Error::NonUnitDenominator`] when `p` divides the denominator of `α`.
pub fn taylor_coeffs(alpha: &Rational, p: Prime, r: u32) -> Result<TaylorCoeffs> {
    if r == 0 || r > p.get().saturating_sub(2) as u32 {
        return Err(Error::OrderTooLarge {
            order: r,
            p: p.get(),
        });
    }
    let zero_coeffs = taylor_coeffs_at_zero(p, r, r)?.coeffs;
    // Representative indices a_{r−j} − 1 = p^{r−j} − ⟨−α⟩_{p^{r−j}} − 1.
    let minus_alpha = -alpha;
    let mut coeffs = Vec::with_capacity(r as usize);
    coeffs.push(PadicApprox::new(p, r, 1)?);
    for k in 1..r {
        let mk = p.pow_checked(r - k)?;
        let mut acc = 0u64;
        let mut factorial_j = 1u64; // j! mod p^{r−k}
        for j in 0..=k {
            if j > 0 {
                factorial_j = mul_mod(factorial_j, j as u64 % mk, mk);
            }
            let level = r - j; // fH representative precision exponent
            let pm = p.pow_checked(level)?;
            let residue = least_residue(&minus_alpha, p, level)?;
            let index = pm - residue - 1;
            let fh = crate::harmonic::fh_sum_mod(index, k - j, p, r - k)?;
            let gj = zero_coeffs[j as usize].residue % mk;
            let term = mul_mod(gj, mul_mod(mod_inverse_u64(factorial_j, mk)?, fh, mk), mk);
            acc = (acc + term) % mk;
        }
        let mut factorial_k = 1u64;
        for i in 1..=k as u64 {
            factorial_k = mul_mod(factorial_k, i % mk, mk);
        }
        coeffs.push(PadicApprox::new(p, r - k, mul_mod(factorial_k, acc, mk))?);
    }
    Ok(TaylorCoeffs {
        base: alpha.clone(),
        prime: p.get(),
        order: r,
        coeffs,
    })
}

// -------------------------------------------------------------------- tests
