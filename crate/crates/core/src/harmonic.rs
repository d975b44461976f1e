//! Partial harmonic sums, elementary-symmetric harmonic sums, and their
//! p-adic limits.
//!
//! For a prime `p`, an index `n ≥ 0`, and an order `s ≥ 1`, this module works
//! with the p-coprime power sums and elementary symmetric sums
//!
//! ```text
//! H_n^(s)(p)  = Σ_{1 ≤ k ≤ n, p∤k} 1/k^s
//! fH_n^(s)(p) = Σ_{1 ≤ k₁ < … < k_s ≤ n, p∤k_i} 1/(k₁⋯k_s),    fH_n^(0) = 1
//! ```
//!
//! Both families are stable under shifting the index by multiples of p-powers,
//! which is what makes it possible to extend them to p-adic integer indices:
//! if `n ≡ m (mod p^r)` then `H_n^(s) ≡ H_m^(s)` modulo `p^r` (losing
//! `ν_p(s)+1` digits when `p−1 | s`), and `fH_n^(s) ≡ fH_m^(s)` modulo
//! `p^{r−η_s}` where [`eta`] computes the loss exponent
//! `η_s = ⌊s/(p−1)⌋ + ν_p(⌊s/(p−1)⌋!)`.
//!
//! Provided functions:
//!
//! - [`h_sum`] / [`fh_sum`]: exact rational values (small indices);
//! - [`h_sum_mod`] / [`fh_sum_mod`]: values modulo `p^t` via u64 arithmetic,
//!   the fast path for large indices;
//! - [`h_sum_padic`] / [`fh_sum_padic`]: values at a p-adic integer index
//!   given by a rational `α`, using the least residue `⟨α⟩_{p^m}` at a
//!   representative precision `m` large enough to certify the requested
//!   precision;
//! - [`newton_girard`]: an independent evaluation of `fH_n^(s)` from the power
//!   sums `H_n^(1..s)` via the classical partition formula, kept as an oracle
//!   against the incremental DP used by [`fh_sum`];
//! - [`char_harmonic`]: the character-twisted harmonic numbers
//!   `H_{k,χ_d} = Σ_{j≤k} χ_d(j)/j` for the unique nontrivial real character
//!   `χ_d` modulo `d ∈ {3, 4, 6}`.

use crate::padic::{int, mod_inverse_u64, valuation, PadicApprox, Prime, Rational};
use crate::{Error, Result};
use num_traits::Zero;

// ---------------------------------------------------------------- exact sums

/// Exact value of `H_n^(s)(p) = Σ_{1 ≤ k ≤ n, p∤k} 1/k^s`.
///
/// The empty sum (`n = 0`) is 0. Intended for small `n`; for large indices
/// use [`h_sum_mod`].
pub fn h_sum(n: u64, s: u32, p: Prime) -> Rational {
    let mut total = Rational::zero();
    for k in 1..=n {
        if k % p.get() != 0 {
            let kpow = int(k as i64).pow(s as i32);
            total += kpow.recip();
        }
    }
    total
}

/// Exact value of the elementary symmetric sum `fH_n^(s)(p)`.
///
/// Computed by the incremental DP `e_j ← e_j + e_{j−1}/k` over p-coprime
/// `k ≤ n`; no division by anything except the summation indices themselves,
/// so no spurious p-divisions occur. `fH^(0) = 1` and `fH^(1) = H^(1)`;
/// the sum is 0 when there are fewer than `s` admissible terms.
pub fn fh_sum(n: u64, s: u32, p: Prime) -> Rational {
    let s = s as usize;
    let mut e = vec![Rational::zero(); s + 1];
    e[0] = int(1);
    for k in 1..=n {
        if k % p.get() != 0 {
            let inv_k = int(k as i64).recip();
            for j in (1..=s).rev() {
                let add = &e[j - 1] * &inv_k;
                e[j] += add;
            }
        }
    }
    e[s].clone()
}

// -------------------------------------------------------------- modular sums

/// `H_n^(s)(p)` reduced modulo `p^t`, entirely in u64 arithmetic.
///
/// Errors with [`Error::ModulusTooLarge`] when `p^t` does not fit the modular
/// backend.
pub fn h_sum_mod(n: u64, s: u32, p: Prime, t: u32) -> Result<u64> {
    let m = p.pow_checked(t)?;
    let mut total: u64 = 0;
    for k in 1..=n {
        if k % p.get() != 0 {
            let inv = mod_inverse_u64(k % m, m)?;
            total = (total + pow_mod_u64(inv, s as u64, m)) % m;
        }
    }
    Ok(total)
}

/// `fH_n^(s)(p)` reduced modulo `p^t`, via the same DP as [`fh_sum`] but in
/// u64 arithmetic.
pub fn fh_sum_mod(n: u64, s: u32, p: Prime, t: u32) -> Result<u64> {
    let m = p.pow_checked(t)?;
    let s = s as usize;
    let mut e = vec![0u64; s + 1];
    e[0] = 1 % m;
    for k in 1..=n {
        if k % p.get() != 0 {
            let inv = mod_inverse_u64(k % m, m)?;
            for j in (1..=s).rev() {
                e[j] = (e[j] + mul_mod_u64(e[j - 1], inv, m)) % m;
            }
        }
    }
    Ok(e[s])
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

// ------------------------------------------------------------ Newton–Girard

/// Evaluates the elementary symmetric sum of order `s` from the power sums
/// `H^(1), …, H^(s)` (at one fixed index) via the classical Newton–Girard
/// partition formula
///
/// ```text
/// e_s = (−1)^s Σ_{j₁+2j₂+…+s·j_s = s} Π_i (1/jᵢ!) (−H^(i)/i)^{jᵢ}.
/// ```
///
/// `h_values[i]` must hold the order-`i+1` power sum. This is an independent
/// algorithm from the DP in [`fh_sum`] and serves as its oracle.
///
/// Errors with [`Error::MissingOrder`] when fewer than `s` power sums are
/// supplied.
pub fn newton_girard(h_values: &[Rational], s: u32) -> Result<Rational> {
    let s = s as usize;
    if h_values.len() < s {
        return Err(Error::MissingOrder {
            needed: s as u32,
            got: h_values.len(),
        });
    }
    if s == 0 {
        return Ok(int(1));
    }
    // Enumerate multiplicities (j_1, …, j_s) with Σ i·j_i = s recursively.
    fn walk(
        h: &[Rational],
        order: usize,  // current part size i
        remaining: usize,
        partial: Rational,
        acc: &mut Rational,
    ) {
        if remaining == 0 {
            *acc += partial;
            return;
        }
        if order > remaining {
            return;
        }
        // multiplicity j of the part `order`
        let base = -&h[order - 1] / int(order as i64);
        let mut factor = int(1);
        let mut j = 0usize;
        while order * j <= remaining {
            if j > 0 {
                factor = &factor * &base / int(j as i64);
            }
            walk(h, order + 1, remaining - order * j, &partial * &factor, acc);
            j += 1;
        }
    }
    let mut acc = Rational::zero();
    walk(h_values, 1, s, int(1), &mut acc);
    let sign = if s % 2 == 0 { int(1) } else { int(-1) };
    Ok(sign * acc)
}

// -------------------------------------------------------------- p-adic sums

/// The precision-loss exponent `η_s = ⌊s/(p−1)⌋ + ν_p(⌊s/(p−1)⌋!)` governing
/// how many digits an index shift of `fH^(s)` can cost. Zero for `s < p−1`.
pub fn eta(s: u32, p: Prime) -> u32 {
    let q = (s as u64) / (p.get() - 1);
    let mut nu = 0u64;
    // ν_p(q!) by Legendre's formula.
    let mut pk = p.get();
    while pk <= q {
        nu += q / pk;
        match pk.checked_mul(p.get()) {
            Some(next) => pk = next,
            None => break,
        }
    }
    (q + nu) as u32
}

/// `H_α^(s)(p)` for a p-adic integer index given by the rational `α`,
/// certified modulo `p^r`.
///
/// The representative precision is `m = r` when `p−1 ∤ s` and
/// `m = r + ν_p(s) + 1` when `p−1 | s` (the extra digits absorb the shift
/// loss). If `p^m` exceeds the modular backend, the certified precision is
/// lowered to the largest achievable exponent instead of erroring; the
/// returned [`PadicApprox`] carries the certified exponent.
///
/// Errors with [`Error::NonUnitDenominator`] when `p` divides the denominator
/// of `α`.
pub fn h_sum_padic(alpha: &Rational, s: u32, p: Prime, r: u32) -> Result<PadicApprox> {
    let loss = if s as u64 % (p.get() - 1) == 0 {
        let nu = valuation(&int(s as i64), p).unwrap_or(0) as u32;
        nu + 1
    } else {
        0
    };
    let (rr, m) = best_effort_precision(p, r, loss)?;
    let idx = crate::padic::least_residue(alpha, p, m)?;
    let value = h_sum_mod(idx, s, p, rr)?;
    PadicApprox::new(p, rr, value)
}

/// `fH_α^(s)(p)` at a p-adic integer index, certified modulo `p^r`; the
/// representative precision is `m = r + η_s`. See [`h_sum_padic`] for the
/// best-effort precision policy and errors.
pub fn fh_sum_padic(alpha: &Rational, s: u32, p: Prime, r: u32) -> Result<PadicApprox> {
    let (rr, m) = best_effort_precision(p, r, eta(s, p))?;
    let idx = crate::padic::least_residue(alpha, p, m)?;
    let value = fh_sum_mod(idx, s, p, rr)?;
    PadicApprox::new(p, rr, value)
}

/// Largest certified exponent `rr ≤ r` such that the representative modulus
/// `p^{rr+loss}` is computable, together with that representative exponent.
fn best_effort_precision(p: Prime, r: u32, loss: u32) -> Result<(u32, u32)> {
    let mut rr = r;
    loop {
        match p.pow_checked(rr + loss) {
            Ok(_) => return Ok((rr, rr + loss)),
            Err(e) => {
                if rr == 0 {
                    return Err(e);
                }
                rr -= 1;
            }
        }
    }
}

// ---------------------------------------------------------- character sums

/// The unique nontrivial real character modulo `d ∈ {3, 4, 6}`: completely
/// multiplicative, `χ_d(j) = 0` iff `gcd(j, d) > 1`, and `χ_d(−1) = −1`.
pub fn chi(j: i64, d: u32) -> Result<i32> {
    let m = match d {
        3 | 4 | 6 => d as i64,
        _ => return Err(Error::UnsupportedModulus(d)),
    };
    let res = j.rem_euclid(m);
    Ok(match (d, res) {
        (3, 1) | (4, 1) | (6, 1) => 1,
        (3, 2) | (4, 3) | (6, 5) => -1,
        _ => 0,
    })
}

/// The character harmonic number `H_{k,χ_d} = Σ_{j=1}^{k} χ_d(j)/j` as an
/// exact rational.
///
/// Errors with [`Error::UnsupportedModulus`] for `d ∉ {3, 4, 6}`.
pub fn char_harmonic(k: u64, d: u32) -> Result<Rational> {
    let mut total = Rational::zero();
    for j in 1..=k {
        match chi(j as i64, d)? {
            1 => total += int(j as i64).recip(),
            -1 => total -= int(j as i64).recip(),
            _ => {}
        }
    }
    Ok(total)
}

// ------------------------------------------------------------------- tests

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::rat;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn h_sum_small_values() {
        assert_eq!(h_sum(4, 1, p(5)), rat(25, 12), "1 + 1/2 + 1/3 + 1/4");
        assert_eq!(h_sum(0, 1, p(7)), int(0), "empty sum");
        assert_eq!(h_sum(5, 1, p(5)), rat(25, 12), "index 5 is dropped at p = 5");
        assert_eq!(h_sum(3, 2, p(7)), rat(49, 36), "1 + 1/4 + 1/9");
    }

    #[test]
    fn h_sum_prime_power_index_valuation() {
        // ν_5(H_25) ≥ 2: the power sum at index p² with p−1 ∤ s.
        let v = valuation(&h_sum(25, 1, p(5)), p(5)).expect("nonzero");
        assert!(v >= 2, "ν_5(H_25) = {v} should be ≥ 2");
    }

    #[test]
    fn fh_sum_small_values() {
        assert_eq!(
            fh_sum(4, 2, p(5)),
            rat(35, 24),
            "six pairwise products of 1, 1/2, 1/3, 1/4"
        );
        assert_eq!(fh_sum(17, 0, p(5)), int(1), "order zero is defined as 1");
        assert_eq!(fh_sum(3, 5, p(7)), int(0), "fewer terms than the order");
        assert_eq!(fh_sum(9, 1, p(3)), h_sum(9, 1, p(3)), "order one is the power sum");
    }

    #[test]
    fn modular_sums_match_exact() {
        for (n, s, pr, t) in [(4, 1, 5, 2), (10, 2, 7, 3), (30, 3, 11, 2), (17, 4, 3, 4)] {
            let pp = p(pr);
            let m = pp.pow_checked(t).unwrap();
            let exact_h = h_sum(n, s, pp);
            let exact_fh = fh_sum(n, s, pp);
            let red = |x: &Rational| -> u64 {
                let num = crate::padic::bigint_mod(x.numer(), m);
                let den = crate::padic::bigint_mod(x.denom(), m);
                mul_mod_u64(num, mod_inverse_u64(den, m).unwrap(), m)
            };
            assert_eq!(h_sum_mod(n, s, pp, t).unwrap(), red(&exact_h), "H mod p^t at n={n}");
            assert_eq!(fh_sum_mod(n, s, pp, t).unwrap(), red(&exact_fh), "fH mod p^t at n={n}");
        }
    }

    #[test]
    fn newton_girard_examples() {
        let h: Vec<Rational> = (1..=2).map(|s| h_sum(4, s, p(5))).collect();
        assert_eq!(newton_girard(&h, 1).unwrap(), h[0], "order 1 is the power sum");
        assert_eq!(
            newton_girard(&h, 2).unwrap(),
            rat(35, 24),
            "(H² − H^(2))/2 at n = 4, p = 5"
        );
        let h3: Vec<Rational> = (1..=3).map(|s| h_sum(6, s, p(7))).collect();
        assert_eq!(newton_girard(&h3, 3).unwrap(), fh_sum(6, 3, p(7)));
    }

    #[test]
    fn newton_girard_missing_order() {
        let h = vec![h_sum(4, 1, p(5))];
        assert_eq!(
            newton_girard(&h, 3),
            Err(Error::MissingOrder { needed: 3, got: 1 })
        );
    }

    #[test]
    fn newton_girard_equals_dp_exhaustively() {
        // Independent-algorithm equivalence on a dense grid.
        for pr in [3u64, 5, 7] {
            let pp = p(pr);
            for n in 0..=60u64 {
                let h: Vec<Rational> = (1..=6).map(|s| h_sum(n, s, pp)).collect();
                for s in 1..=6u32 {
                    assert_eq!(
                        newton_girard(&h, s).unwrap(),
                        fh_sum(n, s, pp),
                        "Newton–Girard vs DP at n={n}, s={s}, p={pr}"
                    );
                }
            }
        }
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(8, p(5)), 2, "⌊8/4⌋ = 2, ν_5(2!) = 0");
        assert_eq!(eta(2, p(7)), 0, "s < p−1");
        assert_eq!(eta(30, p(5)), 8, "⌊30/4⌋ = 7 plus ν_5(7!) = 1");
        assert_eq!(eta(0, p(3)), 0);
    }

    #[test]
    fn power_sum_prime_power_vanishing() {
        // H_{p^r}^(s) ≡ 0 mod p^r when p−1 ∤ s, mod p^{r−ν_p(s)−1} when p−1 | s.
        for pr in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pp = p(pr);
            for r in 1..=3u32 {
                let n = pp.pow_checked(r).unwrap();
                for s in 1..=10u32 {
                    let bound = if s as u64 % (pr - 1) == 0 {
                        let nu = valuation(&int(s as i64), pp).unwrap_or(0) as i64;
                        r as i64 - nu - 1
                    } else {
                        r as i64
                    };
                    if bound <= 0 {
                        continue;
                    }
                    let v = h_sum_mod(n, s, pp, bound as u32).unwrap();
                    assert_eq!(v, 0, "H_{{{pr}^{r}}}^({s}) should vanish mod {pr}^{bound}");
                }
            }
        }
    }

    #[test]
    fn elementary_sum_prime_power_vanishing() {
        // fH_{p^r}^(s) ≡ 0 mod p^{r−η_s} for 1 ≤ s < p^r.
        for pr in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let pp = p(pr);
            for r in 1..=3u32 {
                let n = pp.pow_checked(r).unwrap();
                for s in 1..=12u32 {
                    if (s as u64) >= n {
                        continue;
                    }
                    let bound = r as i64 - eta(s, pp) as i64;
                    if bound <= 0 {
                        continue;
                    }
                    let v = fh_sum_mod(n, s, pp, bound as u32).unwrap();
                    assert_eq!(v, 0, "fH_{{{pr}^{r}}}^({s}) should vanish mod {pr}^{bound}");
                }
            }
        }
    }

    #[test]
    fn shift_stability_random_pairs() {
        // n ≡ m mod p^r ⟹ H_n^(s) ≡ H_m^(s) with the stated loss; fH with η_s.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let pr = [3u64, 5, 7, 11][next() as usize % 4];
            let pp = p(pr);
            let r = 1 + (next() % 2) as u32;
            let step = pp.pow_checked(r).unwrap();
            let m = next() % 1000;
            let n = m + step * (1 + next() % (1000 / step.max(1) + 1));
            let s = 1 + (next() % 6) as u32;
            let h_bound = if s as u64 % (pr - 1) == 0 {
                let nu = valuation(&int(s as i64), pp).unwrap_or(0) as i64;
                r as i64 - nu - 1
            } else {
                r as i64
            };
            if h_bound > 0 {
                let t = h_bound as u32;
                assert_eq!(
                    h_sum_mod(n, s, pp, t).unwrap(),
                    h_sum_mod(m, s, pp, t).unwrap(),
                    "H shift at n={n}, m={m}, s={s}, p={pr}"
                );
            }
            let fh_bound = r as i64 - eta(s, pp) as i64;
            if fh_bound > 0 {
                let t = fh_bound as u32;
                assert_eq!(
                    fh_sum_mod(n, s, pp, t).unwrap(),
                    fh_sum_mod(m, s, pp, t).unwrap(),
                    "fH shift at n={n}, m={m}, s={s}, p={pr}"
                );
            }
        }
    }

    #[test]
    fn odd_reflection() {
        // s odd and n+m+1 ≡ 0 mod p^r ⟹ H_n^(s) ≡ H_m^(s) mod p^r.
        for (pr, r) in [(5u64, 2u32), (7, 2), (11, 1), (3, 3)] {
            let pp = p(pr);
            let step = pp.pow_checked(r).unwrap();
            for s in [1u32, 3, 5] {
                for m in [0u64, 3, 10, 40] {
                    let n = step - (m % step) - 1 + step; // n+m+1 ≡ 0 mod p^r
                    assert_eq!(
                        h_sum_mod(n, s, pp, r).unwrap(),
                        h_sum_mod(m, s, pp, r).unwrap(),
                        "odd reflection at n={n}, m={m}, s={s}, p={pr}"
                    );
                }
            }
        }
    }

    #[test]
    fn padic_sums_at_integer_indices() {
        // At a nonnegative integer index the p-adic value is the plain sum.
        let v = h_sum_padic(&int(4), 1, p(5), 2).unwrap();
        assert_eq!(v.residue, {
            // 25/12 mod 25 with denominator 12 inverted
            let m = 25;
            let inv12 = mod_inverse_u64(12, m).unwrap();
            25 % m * inv12 % m
        });
        assert_eq!(v.n, 2);
        let w = fh_sum_padic(&int(4), 2, p(5), 2).unwrap();
        let m = 25;
        let expect = 35 % m * mod_inverse_u64(24, m).unwrap() % m;
        assert_eq!(w.residue, expect);
    }

    #[test]
    fn padic_sum_representative_stability() {
        // Evaluating at a coarser or finer representative must not change the
        // certified digits.
        let alpha = rat(-1, 2);
        for s in 1..=4u32 {
            let v2 = fh_sum_padic(&alpha, s, p(5), 2).unwrap();
            let idx3 = crate::padic::least_residue(&alpha, p(5), 3 + eta(s, p(5))).unwrap();
            let finer = fh_sum_mod(idx3, s, p(5), 2).unwrap();
            assert_eq!(v2.residue, finer, "order {s} representative stability");
        }
        // Odd reflection in p-adic form: H at −α−1 matches H at α for odd s.
        let a = h_sum_padic(&rat(1, 3), 1, p(7), 2).unwrap();
        let b = h_sum_padic(&rat(-4, 3), 1, p(7), 2).unwrap();
        assert_eq!(a.residue, b.residue, "index sum ≡ −1 reflection");
    }

    #[test]
    fn padic_sum_rejects_bad_denominator() {
        assert!(matches!(
            h_sum_padic(&rat(1, 5), 1, p(5), 2),
            Err(Error::NonUnitDenominator { .. })
        ));
    }

    #[test]
    fn character_values() {
        assert_eq!(char_harmonic(4, 4).unwrap(), rat(2, 3), "1 − 1/3");
        assert_eq!(char_harmonic(0, 3).unwrap(), int(0), "empty sum");
        assert_eq!(char_harmonic(3, 3).unwrap(), rat(1, 2), "1 − 1/2");
        assert_eq!(char_harmonic(6, 6).unwrap(), rat(4, 5), "1 − 1/5");
        assert_eq!(char_harmonic(5, 2), Err(Error::UnsupportedModulus(2)));
        // χ_d(−1) = −1 and multiplicativity spot checks.
        for d in [3u32, 4, 6] {
            assert_eq!(chi(-1, d).unwrap(), -1, "χ_{d}(−1)");
            for a in 1..=12i64 {
                for b in 1..=12i64 {
                    assert_eq!(
                        chi(a * b, d).unwrap(),
                        chi(a, d).unwrap() * chi(b, d).unwrap(),
                        "χ_{d} multiplicative at {a}·{b}"
                    );
                }
            }
        }
    }
}
