//! Pochhammer symbols and truncated hypergeometric series.
//!
//! The central object is the truncated series
//!
//! ```text
//! F[α_0, …, α_r; β_1, …, β_r | z]_n  =  Σ_{k=0}^{n} (α_0)_k⋯(α_r)_k / ((β_1)_k⋯(β_r)_k · k!) · z^k
//! ```
//!
//! with `(x)_k = x(x+1)⋯(x+k−1)` the rising factorial. Two evaluation paths
//! are provided and cross-checked:
//!
//! - [`truncated_f_exact`] sums exactly over the rationals by incremental
//!   term ratios;
//! - [`truncated_f_padic`] works in [`QpApprox`] arithmetic with exact
//!   per-factor valuations, raising its working precision until the target
//!   absolute precision is certified.
//!
//! Termination follows the standard convention: a zero upper-parameter
//! factor ends the series, and that check precedes the lower-parameter pole
//! check, so a truncation past a natural termination point is legal. A
//! genuine lower-parameter pole aborts with [`Error::LowerParameterPole`] —
//! silently skipping terms would mask a malformed series.
//!
//! Classical terminating summations (Chu–Vandermonde, Pfaff–Saalschütz, and
//! the very-well-poised ₇F₆ sum) are available through
//! [`terminating_identity_check`] as exact oracles: both sides are computed
//! independently and compared, and a mismatch is a build-breaking bug, not a
//! data point.

use crate::padic::{format_rational, int, reduce, Prime, QpApprox, Rational};
use crate::{Error, Result};
use num_traits::{One, Zero};

// ------------------------------------------------------------------- types

/// A truncated hypergeometric series: upper parameters `α_0..α_r`, lower
/// parameters `β_1..β_r`, argument `z`, truncation index `n` (the sum runs
/// over `0 ≤ k ≤ n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    /// Upper parameters; one more than `lower`.
    pub upper: Vec<Rational>,
    /// Lower parameters (the implicit `k!` is not listed).
    pub lower: Vec<Rational>,
    /// The series argument.
    pub z: Rational,
    /// Truncation index: terms `k = 0, …, n` inclusive.
    pub truncation: u64,
}

impl SeriesSpec {
    /// A spec with the `(r+1)F_r` shape enforced.
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, z: Rational, truncation: u64) -> Self {
        assert_eq!(
            upper.len(),
            lower.len() + 1,
            "series must have one more upper than lower parameter"
        );
        SeriesSpec {
            upper,
            lower,
            z,
            truncation,
        }
    }

    /// A spec at argument `z = 1`, the case every congruence here uses.
    pub fn unit_argument(upper: Vec<Rational>, lower: Vec<Rational>, truncation: u64) -> Self {
        SeriesSpec::new(upper, lower, int(1), truncation)
    }
}

/// An evaluated series: exact value, p-adic value, and optionally the
/// per-term trace, whichever paths were run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesValue {
    /// Exact rational value, when the exact path ran.
    pub exact: Option<Rational>,
    /// p-adic value, when the fast path ran.
    pub padic: Option<QpApprox>,
    /// Per-term values `t_0, t_1, …` up to termination, when traced.
    pub terms: Option<Vec<Rational>>,
}

impl SeriesValue {
    /// Checks the cross-path invariant: when both values are present, the
    /// reduction of the exact value agrees with the p-adic value modulo
    /// `p^r`.
    pub fn consistent(&self, p: Prime, r: u32) -> Result<bool> {
        match (&self.exact, &self.padic) {
            (Some(exact), Some(padic)) => {
                let reduced = reduce(exact, p, r + 2)?;
                Ok(reduced.sub(padic).is_zero_mod(r))
            }
            _ => Ok(true),
        }
    }
}

// -------------------------------------------------------------- pochhammer

/// The rising factorial `(α)_k = Π_{j=0}^{k−1} (α + j)`; empty product 1.
pub fn pochhammer(alpha: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= alpha + int(j as i64);
    }
    acc
}

/// `ν_p((α)_k)`, accumulated factor-by-factor without forming the product.
///
/// Errors with [`Error::ZeroProduct`] when some factor `α + j` vanishes
/// (the valuation would be +∞).
pub fn pochhammer_valuation(alpha: &Rational, k: u64, p: Prime) -> Result<i64> {
    let mut acc = 0i64;
    for j in 0..k {
        let factor = alpha + int(j as i64);
        match crate::padic::valuation(&factor, p) {
            Some(v) => acc += v,
            None => {
                return Err(Error::ZeroProduct {
                    x: format_rational(alpha),
                    k,
                })
            }
        }
    }
    Ok(acc)
}

/// Rising factorial that reports the first vanishing index instead of
/// returning 0 — the denominator-side guard of the identity checks.
fn pochhammer_nonzero(x: &Rational, n: u64) -> Result<Rational> {
    for j in 0..n {
        if (x + int(j as i64)).is_zero() {
            return Err(Error::LowerParameterPole {
                param: format_rational(x),
                index: j + 1,
            });
        }
    }
    Ok(pochhammer(x, n))
}

// ------------------------------------------------------------- exact path

/// Exact evaluation with per-term trace: returns the sum and the terms
/// `t_0, …` actually accumulated (the trace stops at a natural
/// termination).
pub fn truncated_f_trace(spec: &SeriesSpec) -> Result<(Rational, Vec<Rational>)> {
    let mut terms = Vec::new();
    let mut total = Rational::zero();
    let mut term = Rational::one();
    for k in 0..=spec.truncation {
        total += &term;
        terms.push(term.clone());
        if k == spec.truncation {
            break;
        }
        let kq = int(k as i64);
        let mut num = Rational::one();
        let mut terminated = false;
        for a in &spec.upper {
            let factor = a + &kq;
            if factor.is_zero() {
                terminated = true;
                break;
            }
            num *= factor;
        }
        if terminated {
            break;
        }
        let mut den = int(k as i64 + 1);
        for b in &spec.lower {
            let factor = b + &kq;
            if factor.is_zero() {
                return Err(Error::LowerParameterPole {
                    param: format_rational(b),
                    index: k + 1,
                });
            }
            den *= factor;
        }
        term = term * &spec.z * num / den;
    }
    Ok((total, terms))
}

/// Exact rational value of the truncated series, by incremental term
/// ratios.
///
/// Errors with [`Error::LowerParameterPole`] if a lower-parameter
/// Pochhammer vanishes before the truncation (and before any upper factor
/// terminates the series).
pub fn truncated_f_exact(spec: &SeriesSpec) -> Result<Rational> {
    truncated_f_trace(spec).map(|(total, _)| total)
}

// ------------------------------------------------------------- p-adic path

/// Single pass of the fast path at a fixed working unit precision.
fn padic_pass(spec: &SeriesSpec, p: Prime, working: u32) -> Result<QpApprox> {
    let mut total = QpApprox::zero(p, i64::MAX);
    let mut term = reduce(&int(1), p, working)?;
    let z = reduce(&spec.z, p, working)?;
    for k in 0..=spec.truncation {
        total = total.add(&term);
        if k == spec.truncation {
            break;
        }
        let kq = int(k as i64);
        let mut next = term.mul(&z);
        let mut terminated = false;
        for a in &spec.upper {
            let factor = a + &kq;
            if factor.is_zero() {
                terminated = true;
                break;
            }
            next = next.mul(&reduce(&factor, p, working)?);
        }
        if terminated {
            break;
        }
        for b in &spec.lower {
            let factor = b + &kq;
            if factor.is_zero() {
                return Err(Error::LowerParameterPole {
                    param: format_rational(b),
                    index: k + 1,
                });
            }
            next = next.mul(&reduce(&factor, p, working)?.invert()?);
        }
        next = next.mul(&reduce(&int(k as i64 + 1), p, working)?.invert()?);
        term = next;
    }
    Ok(total)
}

/// Fast p-adic evaluation of the truncated series, certified to absolute
/// precision `p^r`.
///
/// Terms are built as [`QpApprox`] products with exact per-factor
/// valuations; the working unit precision starts at `r + 2` and is raised
/// geometrically until the accumulated sum certifies `≥ r` absolute digits.
///
/// Errors: [`Error::LowerParameterPole`] as in the exact path;
/// [`Error::PrecisionUnreachable`] if three raises cannot certify the
/// target (deep cancellation beyond the suite's term shapes).
pub fn truncated_f_padic(spec: &SeriesSpec, p: Prime, r: u32) -> Result<QpApprox> {
    for param in spec.upper.iter().chain(&spec.lower) {
        if matches!(crate::padic::valuation(param, p), Some(v) if v < 0) {
            return Err(Error::NonUnitDenominator {
                value: format_rational(param),
                p: p.get(),
            });
        }
    }
    for attempt in 0..3u32 {
        let working = r + 2 + 2 * attempt;
        let value = padic_pass(spec, p, working)?;
        if value.abs_precision() >= r as i64 {
            return Ok(value);
        }
    }
    Err(Error::PrecisionUnreachable {
        p: p.get(),
        exponent: r,
    })
}

// ------------------------------------------------- terminating identities

/// A classical terminating summation with all parameters pinned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminatingIdentity {
    /// `₂F₁[−n, b; c | 1] = (c−b)_n / (c)_n`.
    ChuVandermonde { n: u64, b: Rational, c: Rational },
    /// `₃F₂[α, β, −n; γ, δ | 1] = (γ−α)_n (γ−β)_n / ((γ)_n (γ−α−β)_n)`
    /// with `n = α + β + 1 − γ − δ` a nonnegative integer.
    PfaffSaalschutz {
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        delta: Rational,
    },
    /// The very-well-poised sum
    /// `₇F₆[α, 1+α/2, β, γ, δ, ε, −n; α/2, α−β+1, α−γ+1, α−δ+1, α−ε+1, α+n+1 | 1]
    ///  = (α+1)_n (α−β−γ+1)_n (α−β−δ+1)_n (α−γ−δ+1)_n
    ///    / ((α−β+1)_n (α−γ+1)_n (α−δ+1)_n (α−β−γ−δ+1)_n)`
    /// with `n = β + γ + δ + ε − 2α − 1` a nonnegative integer.
    Dougall7F6 {
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        delta: Rational,
        epsilon: Rational,
    },
}

/// Both sides of a terminating identity, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// The truncated-series side.
    pub lhs: Rational,
    /// The closed-form Pochhammer-ratio side.
    pub rhs: Rational,
    /// `lhs == rhs`. Anything but `true` indicates an arithmetic bug.
    pub holds: bool,
}

/// The terminating index demanded by an identity's balance condition, or
/// [`Error::NotTerminating`] when it is not a nonnegative integer.
fn forced_index(description: &str, value: &Rational) -> Result<u64> {
    use num_traits::{Signed, ToPrimitive};
    if value.is_integer() && !value.is_negative() {
        value
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::NotTerminating(format!("{description} = {value} is too large")))
    } else {
        Err(Error::NotTerminating(format!(
            "{description} = {value} is not a nonnegative integer"
        )))
    }
}

/// Evaluates both sides of a classical terminating summation exactly and
/// reports whether they agree.
///
/// Errors: [`Error::NotTerminating`] when the balance condition fails;
/// [`Error::LowerParameterPole`] when a denominator Pochhammer vanishes.
pub fn terminating_identity_check(identity: &TerminatingIdentity) -> Result<IdentityCheck> {
    let (lhs, rhs) = match identity {
        TerminatingIdentity::ChuVandermonde { n, b, c } => {
            let spec = SeriesSpec::unit_argument(
                vec![int(-(*n as i64)), b.clone()],
                vec![c.clone()],
                *n,
            );
            let rhs = pochhammer(&(c - b), *n) / pochhammer_nonzero(c, *n)?;
            (truncated_f_exact(&spec)?, rhs)
        }
        TerminatingIdentity::PfaffSaalschutz {
            alpha,
            beta,
            gamma,
            delta,
        } => {
            let n = forced_index("α+β+1−γ−δ", &(alpha + beta + int(1) - gamma - delta))?;
            let spec = SeriesSpec::unit_argument(
                vec![alpha.clone(), beta.clone(), int(-(n as i64))],
                vec![gamma.clone(), delta.clone()],
                n,
            );
            let rhs = pochhammer(&(gamma - alpha), n) * pochhammer(&(gamma - beta), n)
                / (pochhammer_nonzero(gamma, n)? * pochhammer_nonzero(&(gamma - alpha - beta), n)?);
            (truncated_f_exact(&spec)?, rhs)
        }
        TerminatingIdentity::Dougall7F6 {
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        } => {
            let n = forced_index(
                "β+γ+δ+ε−2α−1",
                &(beta + gamma + delta + epsilon - alpha - alpha - int(1)),
            )?;
            let half = alpha / int(2);
            let shift = |x: &Rational| alpha - x + int(1);
            let spec = SeriesSpec::unit_argument(
                vec![
                    alpha.clone(),
                    &half + int(1),
                    beta.clone(),
                    gamma.clone(),
                    delta.clone(),
                    epsilon.clone(),
                    int(-(n as i64)),
                ],
                vec![
                    half,
                    shift(beta),
                    shift(gamma),
                    shift(delta),
                    shift(epsilon),
                    alpha + int(n as i64 + 1),
                ],
                n,
            );
            let rhs = pochhammer(&(alpha + int(1)), n)
                * pochhammer(&(&shift(beta) - gamma), n)
                * pochhammer(&(&shift(beta) - delta), n)
                * pochhammer(&(&shift(gamma) - delta), n)
                / (pochhammer_nonzero(&shift(beta), n)?
                    * pochhammer_nonzero(&shift(gamma), n)?
                    * pochhammer_nonzero(&shift(delta), n)?
                    * pochhammer_nonzero(&(&shift(beta) - gamma - delta), n)?);
            (truncated_f_exact(&spec)?, rhs)
        }
    };
    let holds = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, holds })
}

// ---------------------------------------------------- weighted cubic sums

/// The harmonically weighted cubic Pochhammer sum
/// `Σ_{k=1}^{p−1} (α)_k³/(1)_k³ · H_k^{(s)}`, exact over the rationals.
///
/// `weight` selects the harmonic order `s`; the congruence suite uses
/// `s = 1`.
pub fn weighted_harmonic_series(alpha: &Rational, p: Prime, weight: u32) -> Rational {
    let mut total = Rational::zero();
    let mut ratio = Rational::one(); // (α)_k³ / (1)_k³
    let mut harmonic = Rational::zero(); // H_k^{(weight)}
    for k in 1..p.get() {
        let factor = (alpha + int(k as i64 - 1)) / int(k as i64);
        if factor.is_zero() {
            break; // (α)_k = 0 from here on
        }
        ratio *= factor.clone() * factor.clone() * factor;
        harmonic += int(1) / int(k as i64).pow(weight as i32);
        total += &ratio * &harmonic;
    }
    total
}

// -------------------------------------------------------------------- tests

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::rat;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn xorshift(seed: u64) -> impl FnMut() -> u64 {
        let mut state = seed;
        move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        }
    }

    // -- pochhammer ---------------------------------------------------------

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1), "empty product");
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8), "(1/2)(3/2)(5/2)");
        assert_eq!(pochhammer(&int(-3), 5), int(0), "factor α+3 vanishes");
        assert_eq!(pochhammer(&int(1), 5), int(120), "(1)_k = k!");
    }

    #[test]
    fn pochhammer_valuation_values() {
        assert_eq!(pochhammer_valuation(&int(1), 4, p(5)).unwrap(), 0, "(1)_{{p−1}}");
        assert_eq!(pochhammer_valuation(&int(1), 5, p(5)).unwrap(), 1, "p! has one factor p");
        assert_eq!(
            pochhammer_valuation(&rat(1, 2), 5, p(5)).unwrap(),
            1,
            "only 5/2 contributes"
        );
        assert_eq!(
            pochhammer_valuation(&int(-3), 5, p(5)).unwrap_err(),
            Error::ZeroProduct {
                x: "-3".into(),
                k: 5
            }
        );
    }

    #[test]
    fn pochhammer_valuation_matches_product() {
        let mut next = xorshift(0x9e3779b97f4a7c15);
        for _ in 0..300 {
            let pr = p([3, 5, 7, 11][next() as usize % 4]);
            let d = loop {
                let d = 1 + (next() % 6) as i64;
                if d as u64 % pr.get() != 0 {
                    break d;
                }
            };
            let alpha = rat((next() % 60) as i64 - 30, d);
            let k = next() % 12;
            match pochhammer_valuation(&alpha, k, pr) {
                Ok(v) => {
                    let product = pochhammer(&alpha, k);
                    assert_eq!(
                        Some(v),
                        crate::padic::valuation(&product, pr),
                        "valuation of ({alpha})_{k} at p={}",
                        pr.get()
                    );
                }
                Err(_) => assert!(pochhammer(&alpha, k).is_zero(), "error iff product zero"),
            }
        }
    }

    #[test]
    fn derivative_of_pochhammer_matches_logarithmic_sum() {
        // d(x)_k/dx = (x)_k Σ_j 1/(x+j), checked against the exact Newton
        // forward-difference derivative Σ_m (−1)^{m−1} Δ^m P(x) / m, which
        // is finite and exact for a degree-k polynomial.
        for k in 1..=6u64 {
            for x in [rat(1, 2), rat(1, 3), rat(5, 4), rat(-7, 2)] {
                let fwd: Rational = (1..=k)
                    .map(|m| {
                        let delta: Rational = (0..=m)
                            .map(|i| {
                                let sign = if (m - i) % 2 == 0 { 1 } else { -1 };
                                let binom: Rational = (1..=i)
                                    .map(|j| rat((m - j + 1) as i64, j as i64))
                                    .product();
                                int(sign) * binom * pochhammer(&(&x + int(i as i64)), k)
                            })
                            .sum();
                        int(if m % 2 == 1 { 1 } else { -1 }) * delta / int(m as i64)
                    })
                    .sum();
                let logarithmic: Rational = (0..k)
                    .map(|j| int(1) / (&x + int(j as i64)))
                    .sum::<Rational>()
                    * pochhammer(&x, k);
                assert_eq!(fwd, logarithmic, "derivative of (x)_{k} at x={x}");
            }
        }
    }

    // -- exact path ---------------------------------------------------------

    #[test]
    fn exact_examples() {
        let chu = SeriesSpec::unit_argument(vec![int(-3), int(2)], vec![int(4)], 3);
        assert_eq!(truncated_f_exact(&chu).unwrap(), rat(1, 5), "₂F₁[−3,2;4|1]_3");

        let single = SeriesSpec::unit_argument(vec![rat(1, 2), rat(1, 2)], vec![int(1)], 0);
        assert_eq!(truncated_f_exact(&single).unwrap(), int(1), "n = 0 single term");

        let legendre = SeriesSpec::unit_argument(vec![rat(1, 2), rat(1, 2)], vec![int(1)], 4);
        assert_eq!(
            truncated_f_exact(&legendre).unwrap(),
            rat(25609, 16384),
            "₂F₁[1/2,1/2;1|1]_4"
        );
        // Its residue mod 25 is 1 — the (−1|5) Legendre value.
        let reduced = reduce(&rat(25609, 16384), p(5), 2).unwrap();
        assert_eq!(reduced.residue(2).unwrap(), 1);
    }

    #[test]
    fn upper_termination_precedes_lower_pole() {
        // (−2)_k dies at k = 3; the lower pole of (−5)_k at k = 6 is never
        // reached even though the truncation runs past both.
        let spec = SeriesSpec::unit_argument(vec![int(-2), int(1)], vec![int(-5)], 10);
        let value = truncated_f_exact(&spec).unwrap();
        assert_eq!(value, int(1) + rat(-2, -5) + rat((-2) * (-1) * 2, (-5) * (-4)) / int(2));

        // With no early termination the pole is an error naming (β, k).
        let bad = SeriesSpec::unit_argument(vec![rat(1, 2), int(1)], vec![int(-5)], 10);
        assert_eq!(
            truncated_f_exact(&bad).unwrap_err(),
            Error::LowerParameterPole {
                param: "-5".into(),
                index: 6
            }
        );
    }

    #[test]
    fn incremental_matches_naive_products() {
        let mut next = xorshift(0x2545f4914f6cdd1d);
        for _ in 0..60 {
            let shape = 1 + next() as usize % 3;
            let small = |next: &mut dyn FnMut() -> u64| {
                rat((next() % 13) as i64 - 6, 1 + (next() % 4) as i64)
            };
            let upper: Vec<Rational> = (0..=shape).map(|_| small(&mut next)).collect();
            // Positive lower parameters keep the spec pole-free.
            let lower: Vec<Rational> =
                (0..shape).map(|_| small(&mut next) + int(7)).collect();
            let z = small(&mut next);
            let n = next() % 20;
            let spec = SeriesSpec::new(upper.clone(), lower.clone(), z.clone(), n);
            let incremental = truncated_f_exact(&spec).unwrap();
            let mut naive = Rational::zero();
            for k in 0..=n {
                let mut term = crate::padic::int(1);
                for a in &upper {
                    term *= pochhammer(a, k);
                }
                if term.is_zero() {
                    // Past a natural termination the incremental path has
                    // stopped; so does the naive sum.
                    continue;
                }
                for b in &lower {
                    term /= pochhammer(b, k);
                }
                term /= pochhammer(&int(1), k);
                for _ in 0..k {
                    term *= &z;
                }
                naive += term;
            }
            assert_eq!(incremental, naive, "term-ratio vs naive on {spec:?}");
        }
    }

    #[test]
    fn trace_matches_sum() {
        let spec = SeriesSpec::unit_argument(vec![rat(1, 3), rat(1, 3), rat(1, 3)], vec![int(1), int(1)], 6);
        let (total, terms) = truncated_f_trace(&spec).unwrap();
        assert_eq!(terms.len(), 7);
        assert_eq!(terms.iter().sum::<Rational>(), total, "trace sums to the value");
        let value = SeriesValue {
            exact: Some(total),
            padic: Some(truncated_f_padic(&spec, p(7), 3).unwrap()),
            terms: Some(terms),
        };
        assert!(value.consistent(p(7), 3).unwrap(), "cross-path invariant");
    }

    // -- p-adic path --------------------------------------------------------

    #[test]
    fn padic_examples() {
        for pr in [5u64, 7, 11, 13] {
            let spec = SeriesSpec::unit_argument(
                vec![rat(1, 2), rat(1, 2)],
                vec![int(1)],
                pr - 1,
            );
            let exact = truncated_f_exact(&spec).unwrap();
            let fast = truncated_f_padic(&spec, p(pr), 2).unwrap();
            let reduced = reduce(&exact, p(pr), 4).unwrap();
            assert!(
                reduced.sub(&fast).is_zero_mod(2),
                "fast path ≡ exact path mod {pr}²"
            );
        }

        let trivial = SeriesSpec::unit_argument(vec![rat(1, 3), int(2)], vec![int(1)], 0);
        let one = truncated_f_padic(&trivial, p(7), 3).unwrap();
        assert_eq!(one.valuation(), Some(0), "single term is the unit 1");
        assert_eq!(one.residue(3).unwrap(), 1);

        let cubic = SeriesSpec::unit_argument(
            vec![rat(1, 3), rat(1, 3), rat(1, 3)],
            vec![int(1), int(1)],
            6,
        );
        let exact = truncated_f_exact(&cubic).unwrap();
        let fast = truncated_f_padic(&cubic, p(7), 3).unwrap();
        assert_eq!(
            fast.residue(3).unwrap(),
            reduce(&exact, p(7), 5).unwrap().residue(3).unwrap(),
            "₃F₂ at α = 1/3 mod 7³"
        );
    }

    #[test]
    fn padic_matches_exact_on_random_specs() {
        let mut next = xorshift(0x6a09e667f3bcc909);
        for pr in [5u64, 7, 11, 13] {
            let prime = p(pr);
            for _ in 0..50 {
                let shape = 1 + next() as usize % 3;
                let coeff = |next: &mut dyn FnMut() -> u64| loop {
                    let d = 1 + (next() % 5) as i64;
                    if d as u64 % pr != 0 {
                        return rat((next() % 17) as i64 - 8, d);
                    }
                };
                let upper: Vec<Rational> = (0..=shape).map(|_| coeff(&mut next)).collect();
                let lower: Vec<Rational> =
                    (0..shape).map(|_| coeff(&mut next) + int(9)).collect();
                let r = 1 + (next() % 3) as u32;
                let spec = SeriesSpec::new(upper, lower, coeff(&mut next), next() % 16);
                let exact = truncated_f_exact(&spec).unwrap();
                let fast = truncated_f_padic(&spec, prime, r).unwrap();
                let reduced = reduce(&exact, prime, r + 4).unwrap();
                assert!(
                    reduced.sub(&fast).is_zero_mod(r),
                    "fast ≡ exact mod {pr}^{r} on {spec:?}"
                );
            }
        }
    }

    #[test]
    fn padic_pole_and_denominator_errors() {
        let bad = SeriesSpec::unit_argument(vec![rat(1, 2), int(1)], vec![int(-3)], 9);
        assert_eq!(
            truncated_f_padic(&bad, p(7), 2).unwrap_err(),
            Error::LowerParameterPole {
                param: "-3".into(),
                index: 4
            }
        );
        let nonunit = SeriesSpec::unit_argument(vec![rat(1, 7), int(1)], vec![int(2)], 3);
        assert!(matches!(
            truncated_f_padic(&nonunit, p(7), 2),
            Err(Error::NonUnitDenominator { .. })
        ));
    }

    // -- terminating identities --------------------------------------------

    #[test]
    fn chu_vandermonde_example() {
        let check = terminating_identity_check(&TerminatingIdentity::ChuVandermonde {
            n: 3,
            b: int(2),
            c: int(4),
        })
        .unwrap();
        assert_eq!(check.lhs, rat(1, 5));
        assert_eq!(check.rhs, rat(1, 5));
        assert!(check.holds);
    }

    #[test]
    fn pfaff_saalschutz_degenerate_and_errors() {
        // n = 0: both sides are empty products.
        let trivial = terminating_identity_check(&TerminatingIdentity::PfaffSaalschutz {
            alpha: rat(1, 2),
            beta: rat(1, 3),
            gamma: int(1),
            delta: rat(1, 2) + rat(1, 3),
        })
        .unwrap();
        assert_eq!(trivial.lhs, int(1));
        assert!(trivial.holds);

        let unbalanced = terminating_identity_check(&TerminatingIdentity::PfaffSaalschutz {
            alpha: rat(1, 2),
            beta: rat(1, 3),
            gamma: int(1),
            delta: int(0),
        });
        assert!(matches!(unbalanced, Err(Error::NotTerminating(_))));
    }

    #[test]
    fn dougall_forced_epsilon_example() {
        // ε is forced by the balance condition n = β+γ+δ+ε−2α−1.
        let alpha = rat(1, 3);
        let (beta, gamma, delta) = (rat(1, 4), rat(1, 4), rat(1, 4));
        for n in 0..4u64 {
            let epsilon =
                int(n as i64 + 1) + &alpha + &alpha - &beta - &gamma - &delta;
            let check = terminating_identity_check(&TerminatingIdentity::Dougall7F6 {
                alpha: alpha.clone(),
                beta: beta.clone(),
                gamma: gamma.clone(),
                delta: delta.clone(),
                epsilon,
            })
            .unwrap();
            assert!(check.holds, "well-poised sum at n={n}: {} vs {}", check.lhs, check.rhs);
        }
    }

    #[test]
    fn identities_hold_on_random_draws() {
        let mut next = xorshift(0xbb67ae8584caa73b);
        let pool = [
            rat(1, 2),
            rat(1, 3),
            rat(2, 3),
            rat(1, 4),
            rat(3, 4),
            rat(5, 2),
            rat(-1, 2),
            rat(-3, 4),
            int(2),
        ];
        let draw = |next: &mut dyn FnMut() -> u64| pool[next() as usize % pool.len()].clone();

        let mut done = 0;
        while done < 25 {
            let check = terminating_identity_check(&TerminatingIdentity::ChuVandermonde {
                n: next() % 9,
                b: draw(&mut next),
                c: draw(&mut next) + int(6),
            })
            .unwrap();
            assert!(check.holds, "Chu–Vandermonde draw {done}");
            done += 1;
        }

        done = 0;
        while done < 25 {
            let n = (next() % 6) as i64;
            let (alpha, beta, gamma) = (draw(&mut next), draw(&mut next), draw(&mut next) + int(4));
            let delta = &alpha + &beta + int(1 - n) - &gamma;
            match terminating_identity_check(&TerminatingIdentity::PfaffSaalschutz {
                alpha,
                beta,
                gamma,
                delta,
            }) {
                Ok(check) => {
                    assert!(check.holds, "Pfaff–Saalschütz draw {done}");
                    done += 1;
                }
                Err(Error::LowerParameterPole { .. }) => continue,
                Err(other) => panic!("unexpected error: {other}"),
            }
        }

        done = 0;
        while done < 25 {
            let n = (next() % 5) as i64;
            let alpha = draw(&mut next);
            let (beta, gamma, delta) = (draw(&mut next), draw(&mut next), draw(&mut next));
            let epsilon = int(n + 1) + &alpha + &alpha - &beta - &gamma - &delta;
            match terminating_identity_check(&TerminatingIdentity::Dougall7F6 {
                alpha,
                beta,
                gamma,
                delta,
                epsilon,
            }) {
                Ok(check) => {
                    assert!(check.holds, "well-poised draw {done}");
                    done += 1;
                }
                Err(Error::LowerParameterPole { .. }) => continue,
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
    }

    // -- weighted harmonic sums --------------------------------------------

    #[test]
    fn weighted_series_truncates_at_negative_integers() {
        assert_eq!(
            weighted_harmonic_series(&int(-1), p(7), 1),
            int(-1),
            "only k = 1 survives: (−1)³ · H_1"
        );
    }

    #[test]
    fn weighted_series_frozen_residues() {
        // Independently computed residues of Σ (α)_k³/(1)_k³ H_k.
        for (pr, num, den, expect) in [(11u64, 1i64, 2i64, 66u64), (13, 1, 3, 122), (11, 1, 3, 11)]
        {
            let value = weighted_harmonic_series(&rat(num, den), p(pr), 1);
            let reduced = reduce(&value, p(pr), 4).unwrap();
            assert_eq!(
                reduced.residue(2).unwrap(),
                expect,
                "Σ ({num}/{den})_k³/k!³ H_k mod {pr}²"
            );
        }
    }

    #[test]
    fn weighted_series_gamma_closed_form() {
        // At α = 1/2, p ≡ 1 mod 4: Σ ≡ Γ_p(1/4)⁴ (2 q_p(2) − p q_p(2)²)
        // mod p², with q_p the Fermat quotient.
        let prime = p(5);
        let lhs = reduce(&weighted_harmonic_series(&rat(1, 2), prime, 1), prime, 4)
            .unwrap()
            .residue(2)
            .unwrap();
        let gamma4 = crate::gamma::gamma_p(&rat(1, 4), prime, 2).unwrap().pow(4);
        let q = crate::padic::fermat_quotient(2, prime).unwrap();
        let factor = int(2) * &q - int(5) * &q * &q;
        let rhs = gamma4
            .mul(&crate::padic::PadicApprox::from_rational(&factor, prime, 2).unwrap())
            .residue;
        assert_eq!(lhs, rhs, "quarter-turn closed form at p = 5");
    }
}
