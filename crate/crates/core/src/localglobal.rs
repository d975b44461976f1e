//! Geometric verification engine for local-global congruence arguments.
//!
//! The underlying principle: if a function `Ψ : Z_p^n → Z_p` with a strong
//! Taylor expansion of order `r` vanishes mod `p^r` on `r` admissible
//! hyperplanes (pairwise distinct mod-p images), and `p > C(r+1, 2)`, then
//! `Ψ(s₁p, …, s_np) ≡ 0 (mod p^r)` everywhere. This module provides the
//! machinery to check such statements empirically:
//!
//! - [`Hyperplane`] and [`admissible`]: affine planes over Z_p and the
//!   pairwise-distinct-mod-p condition;
//! - [`find_direction`]: deterministic search for a line direction meeting
//!   all planes at pairwise distinct parameters (the Schwartz–Zippel
//!   argument guarantees one exists when `p > C(r+1, 2)`);
//! - [`vandermonde_solve`] / [`vandermonde_solve_residues`]: extraction of
//!   scaled Taylor coefficients `A_k·p^k/k!` from values at `r` nodes
//!   pairwise distinct mod p, by Gaussian elimination over `Z/p^r` with unit
//!   pivots (the Vandermonde determinant is a unit);
//! - [`verify_on_hyperplanes`] / [`verify_global`]: sampling verifiers that
//!   evaluate a [`FunctionHandle`] on plane points / arbitrary points and
//!   report witnesses of non-vanishing;
//! - [`multivar_coeffs`]: nested extraction of multivariate coefficients
//!   `A_{k⃗}·p^{Σk}/Πkᵢ!` mod `p^r` from an `r^n` grid.
//!
//! Handles follow the substitution convention: the evaluator receives the
//! unscaled point `s` and is itself responsible for any interior `x = p·s`
//! substitution, so hyperplanes live in `s`-space.
//!
//! When `p ≤ C(r+1, 2)` the verifiers still run (a direct check needs no
//! theorem) but the report is labelled as outside the proved regime.

use crate::padic::{
    format_rational, int, least_residue, mod_inverse_u64, mul_mod, sub_mod, PadicApprox, Prime,
    QpApprox, Rational,
};
use crate::{Error, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

// -------------------------------------------------------------- hyperplanes

/// An affine hyperplane `a₁x₁ + … + a_nx_n + b = 0` over Z_p with rational
/// coefficient data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
}

impl Hyperplane {
    pub fn new(coefficients: Vec<Rational>, constant: Rational) -> Self {
        Hyperplane {
            coefficients,
            constant,
        }
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(coefficients: &[i64], constant: i64) -> Self {
        Hyperplane {
            coefficients: coefficients.iter().map(|&c| int(c)).collect(),
            constant: int(constant),
        }
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    /// The linear form evaluated at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (a, x) in self.coefficients.iter().zip(point) {
            acc += a * x;
        }
        acc
    }

    /// Mod-p image `(a mod p, b mod p)`.
    ///
    /// Errors with [`Error::DegeneratePlane`] when every coefficient is
    /// divisible by p (no unit coefficient, so the image is not a plane),
    /// and with [`Error::NonUnitDenominator`] when a coefficient is not a
    /// p-adic integer.
    pub fn reduced(&self, p: Prime) -> Result<(Vec<u64>, u64)> {
        let coeffs: Vec<u64> = self
            .coefficients
            .iter()
            .map(|c| least_residue(c, p, 1))
            .collect::<Result<_>>()?;
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::DegeneratePlane(self.to_string()));
        }
        let constant = least_residue(&self.constant, p, 1)?;
        Ok((coeffs, constant))
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}·x{}", format_rational(c), i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.constant.is_zero() {
            write!(f, " + {}", format_rational(&self.constant))?;
        }
        write!(f, " = 0")
    }
}

/// A line `t ↦ c + t·v` used to cut an admissible family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    /// Direction with entries in `0..p−1`, nonzero mod p.
    pub direction: Vec<u64>,
    /// Base point.
    pub base: Vec<Rational>,
}

/// Whether the planes have pairwise distinct mod-p images (no two reduce to
/// proportional coefficient-and-constant vectors over F_p).
///
/// Errors with [`Error::DegeneratePlane`] if any plane has no unit
/// coefficient mod p.
pub fn admissible(planes: &[Hyperplane], p: Prime) -> Result<bool> {
    let pp = p.get();
    let mut normalized: Vec<Vec<u64>> = Vec::with_capacity(planes.len());
    for plane in planes {
        let (coeffs, constant) = plane.reduced(p)?;
        // Scale so the first nonzero coefficient is 1; mod-p images are then
        // equal iff the normalized vectors are equal.
        let lead = *coeffs.iter().find(|&&c| c != 0).expect("checked by reduced");
        let inv = mod_inverse_u64(lead, pp)?;
        let mut vec: Vec<u64> = coeffs.iter().map(|&c| mul_mod(c, inv, pp)).collect();
        vec.push(mul_mod(constant, inv, pp));
        normalized.push(vec);
    }
    for i in 0..normalized.len() {
        for j in i + 1..normalized.len() {
            if normalized[i] == normalized[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// --------------------------------------------------------- direction search

/// A direction through `base` meeting every plane at pairwise distinct line
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionChoice {
    pub line: Line,
    /// `t_i = −μ_i/λ_i(v)` in `F_p`, the parameter at which the line meets
    /// plane `i`.
    pub intersection_times: Vec<u64>,
}

/// Deterministic search for a direction `v ∈ F_p^n` with every
/// `λ_i(v) = L_i(v) − L_i(0)` nonzero and all `t_i = −μ_i/λ_i(v)` pairwise
/// distinct, where `μ_i = L_i(base)`.
///
/// Enumerates `F_p^n` in lexicographic order; the Schwartz–Zippel bound
/// guarantees a valid direction exists when `p > C(r+1, 2)` for `r` planes.
///
/// Errors: [`Error::BasePointOnIntersection`] if the base point lies on two
/// of the planes (their parameters would both be 0);
/// [`Error::PrimeTooSmall`] if `p ≤ C(r+1, 2)` (the search is not attempted
/// outside the guaranteed regime); [`Error::DegeneratePlane`] from plane
/// reduction.
pub fn find_direction(planes: &[Hyperplane], base: &[u64], p: Prime) -> Result<DirectionChoice> {
    let pp = p.get();
    let r = planes.len() as u64;
    if pp <= r * (r + 1) / 2 {
        return Err(Error::PrimeTooSmall {
            planes: planes.len(),
            p: pp,
        });
    }
    let reduced: Vec<(Vec<u64>, u64)> = planes
        .iter()
        .map(|plane| plane.reduced(p))
        .collect::<Result<_>>()?;
    let n = base.len();
    let mu: Vec<u64> = reduced
        .iter()
        .map(|(coeffs, constant)| {
            let mut acc = *constant;
            for (a, x) in coeffs.iter().zip(base) {
                acc = (acc + mul_mod(*a, *x % pp, pp)) % pp;
            }
            acc
        })
        .collect();
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            if mu[i] == 0 && mu[j] == 0 {
                return Err(Error::BasePointOnIntersection(
                    planes[i].to_string(),
                    planes[j].to_string(),
                ));
            }
        }
    }
    // Counter over F_p^n in lexicographic order (first coordinate most
    // significant), skipping v = 0.
    let total = pp.checked_pow(n as u32).unwrap_or(u64::MAX);
    'search: for counter in 1..total {
        let mut v = vec![0u64; n];
        let mut c = counter;
        for slot in v.iter_mut().rev() {
            *slot = c % pp;
            c /= pp;
        }
        let mut times = Vec::with_capacity(reduced.len());
        for ((coeffs, _), &mu_i) in reduced.iter().zip(&mu) {
            let lambda: u64 = coeffs
                .iter()
                .zip(&v)
                .fold(0u64, |acc, (a, x)| (acc + mul_mod(*a, *x, pp)) % pp);
            if lambda == 0 {
                continue 'search;
            }
            let t = mul_mod(sub_mod(0, mu_i, pp), mod_inverse_u64(lambda, pp)?, pp);
            if times.contains(&t) {
                continue 'search;
            }
            times.push(t);
        }
        return Ok(DirectionChoice {
            line: Line {
                direction: v,
                base: base.iter().map(|&b| int(b as i64)).collect(),
            },
            intersection_times: times,
        });
    }
    // Unreachable when p > C(r+1,2): Schwartz–Zippel bounds the bad set by
    // deg·p^{n−1} < p^n − 1.
    Err(Error::PrimeTooSmall {
        planes: planes.len(),
        p: pp,
    })
}

// ------------------------------------------------------ Vandermonde systems

/// Scaled Taylor data extracted from `r` nodes: entry `k` is
/// `A_k·p^k/k! mod p^r`, the coefficient of `t^k` in the expansion of
/// `ψ(tp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    pub prime: u64,
    pub exponent: u32,
    /// `scaled[k] = A_k·p^k/k! mod p^r` for `0 ≤ k < r`.
    pub scaled: Vec<u64>,
    /// Per-coefficient certified exponents for the unscaled `A_k`: entry `k`
    /// is `r − k` (the division by `p^k` costs `k` digits of uniqueness).
    pub certified: Vec<u32>,
}

impl ExtractionResult {
    /// `ψ(0) mod p^r`.
    pub fn psi0(&self) -> u64 {
        self.scaled[0]
    }

    /// Re-evaluates the extracted polynomial at a node, mod p^r.
    pub fn reconstruct(&self, node: u64) -> u64 {
        let m = self.prime.pow(self.exponent);
        let mut acc = 0u64;
        let mut power = 1u64;
        for c in &self.scaled {
            acc = (acc + mul_mod(*c, power, m)) % m;
            power = mul_mod(power, node % m, m);
        }
        acc
    }
}

/// Solves the Vandermonde system `Σ_k c_k·aᵢ^k = vᵢ (mod p^r)` for nodes
/// pairwise distinct mod p, entirely in `u64` residues.
///
/// Gaussian elimination over `Z/p^r` using unit pivots only; a unit pivot
/// always exists because the Vandermonde determinant `Π(a_j − a_i)` is a
/// p-adic unit for distinct nodes.
///
/// Errors with [`Error::NodesCollide`] when two nodes are congruent mod p.
pub fn vandermonde_solve_residues(
    nodes: &[u64],
    values: &[u64],
    p: Prime,
    r: u32,
) -> Result<Vec<u64>> {
    assert_eq!(nodes.len(), values.len(), "one value per node");
    assert_eq!(nodes.len(), r as usize, "r nodes determine r coefficients");
    let pp = p.get();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] % pp == nodes[j] % pp {
                return Err(Error::NodesCollide(nodes[i], nodes[j]));
            }
        }
    }
    let m = p.pow_checked(r)?;
    let size = r as usize;
    // Augmented matrix [V | v].
    let mut mat: Vec<Vec<u64>> = nodes
        .iter()
        .zip(values)
        .map(|(&a, &v)| {
            let mut row = Vec::with_capacity(size + 1);
            let mut power = 1u64;
            for _ in 0..size {
                row.push(power);
                power = mul_mod(power, a % m, m);
            }
            row.push(v % m);
            row
        })
        .collect();
    for col in 0..size {
        // Unit pivot: guaranteed to exist by the unit-determinant argument.
        let pivot_row = (col..size)
            .find(|&i| mat[i][col] % pp != 0)
            .expect("unit pivot exists for distinct nodes");
        mat.swap(col, pivot_row);
        let inv = mod_inverse_u64(mat[col][col], m)?;
        for entry in mat[col][col..].iter_mut() {
            *entry = mul_mod(*entry, inv, m);
        }
        for i in 0..size {
            if i != col && mat[i][col] != 0 {
                let factor = mat[i][col];
                let pivot_row_copy = mat[col].clone();
                for (entry, pe) in mat[i][col..].iter_mut().zip(&pivot_row_copy[col..]) {
                    *entry = sub_mod(*entry, mul_mod(factor, *pe, m), m);
                }
            }
        }
    }
    Ok(mat.into_iter().map(|row| row[size]).collect())
}

/// [`vandermonde_solve_residues`] over [`PadicApprox`] values: checks that
/// every value carries precision ≥ r and wraps the solution in an
/// [`ExtractionResult`].
///
/// Errors: [`Error::NodesCollide`]; [`Error::PrecisionUnreachable`] when a
/// value's precision falls short of r.
pub fn vandermonde_solve(nodes: &[u64], values: &[PadicApprox], p: Prime) -> Result<ExtractionResult> {
    let r = nodes.len() as u32;
    let m = p.pow_checked(r)?;
    let residues: Vec<u64> = values
        .iter()
        .map(|v| {
            if v.n < r {
                Err(Error::PrecisionUnreachable {
                    p: p.get(),
                    exponent: r,
                })
            } else {
                Ok(v.residue % m)
            }
        })
        .collect::<Result<_>>()?;
    let scaled = vandermonde_solve_residues(nodes, &residues, p, r)?;
    Ok(ExtractionResult {
        prime: p.get(),
        exponent: r,
        scaled,
        certified: (0..r).map(|k| r - k).collect(),
    })
}

// ---------------------------------------------------------- function handles

/// Evaluator signature: point in `s`-space, prime, requested absolute
/// precision exponent.
pub type Evaluator = Arc<dyn Fn(&[Rational], Prime, u32) -> Result<QpApprox> + Send + Sync>;

/// A function `Z_p^n → Q_p` with a declared strong Taylor order, evaluated
/// through an exact-arithmetic closure.
///
/// The evaluator is pure and safe for concurrent invocation. Congruent
/// inputs mod `p^m` must produce outputs agreeing mod `p^{m−loss}`.
#[derive(Clone)]
pub struct FunctionHandle {
    pub arity: usize,
    /// Declared strong-Taylor order (metadata; spot-checked numerically).
    pub order: u32,
    /// Precision-loss descriptor; 0 for every handle in the suite.
    pub loss: u32,
    evaluator: Evaluator,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("arity", &self.arity)
            .field("order", &self.order)
            .field("loss", &self.loss)
            .finish_non_exhaustive()
    }
}

impl FunctionHandle {
    pub fn new(arity: usize, order: u32, evaluator: Evaluator) -> Self {
        FunctionHandle {
            arity,
            order,
            loss: 0,
            evaluator,
        }
    }

    /// Polynomial handle: terms `(exponent vector, coefficient)` evaluated at
    /// the p-scaled point `x = p·s` (the usual substitution convention for
    /// theorem difference functions).
    pub fn polynomial(arity: usize, order: u32, terms: Vec<(Vec<u32>, Rational)>) -> Self {
        FunctionHandle::new(
            arity,
            order,
            Arc::new(move |s: &[Rational], p: Prime, prec: u32| {
                let scale = int(p.get() as i64);
                let mut total = Rational::zero();
                for (exps, coeff) in &terms {
                    let mut term = coeff.clone();
                    for (e, si) in exps.iter().zip(s) {
                        for _ in 0..*e {
                            term *= si * &scale;
                        }
                    }
                    total += term;
                }
                crate::padic::reduce(&total, p, prec)
            }),
        )
    }

    /// Evaluates at a point (length must match the arity).
    pub fn eval(&self, point: &[Rational], p: Prime, prec: u32) -> Result<QpApprox> {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        (self.evaluator)(point, p, prec)
    }
}

// ------------------------------------------------------------------ reports

/// A sample at which the function failed to vanish mod `p^r`.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Index of the hyperplane being sampled, if any.
    pub plane: Option<usize>,
    pub point: Vec<Rational>,
    /// Residue mod `p^r`.
    pub residue: u64,
    /// Valuation of the value when known.
    pub valuation: Option<i64>,
}

/// A sample that could not be evaluated (e.g. an accidental pole of the
/// handle at that point).
#[derive(Debug, Clone)]
pub struct Skip {
    pub plane: Option<usize>,
    pub point: Vec<Rational>,
    pub reason: String,
}

/// Outcome of a sampling verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub prime: u64,
    pub exponent: u32,
    pub samples: usize,
    pub passed_samples: usize,
    pub witnesses: Vec<Witness>,
    pub skips: Vec<Skip>,
    /// True when `p ≤ C(r+1, 2)` for the plane count / exponent in play: the
    /// run is still meaningful as a direct check but sits outside the proved
    /// regime of the local-global theorem.
    pub outside_proved_regime: bool,
}

impl VerifyReport {
    /// Passed: at least one sample evaluated, and none failed.
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty() && self.passed_samples > 0
    }
}

fn record_sample(
    f: &FunctionHandle,
    point: &[Rational],
    plane: Option<usize>,
    p: Prime,
    r: u32,
    report: &mut VerifyReport,
) {
    report.samples += 1;
    match f.eval(point, p, r) {
        Err(err) => report.skips.push(Skip {
            plane,
            point: point.to_vec(),
            reason: err.to_string(),
        }),
        Ok(value) => match value.residue(r) {
            Err(err) => report.skips.push(Skip {
                plane,
                point: point.to_vec(),
                reason: err.to_string(),
            }),
            Ok(0) => report.passed_samples += 1,
            Ok(res) => report.witnesses.push(Witness {
                plane,
                point: point.to_vec(),
                residue: res,
                valuation: value.valuation(),
            }),
        },
    }
}

// ----------------------------------------------------------- plane verifier

/// Samples each hyperplane and checks `f ≡ 0 mod p^r` on it.
///
/// Sampling solves for a unit-coefficient coordinate in terms of the others;
/// the free coordinates sweep a deterministic integer grid `0..p−1` and are
/// then given seeded random unit-denominator rational values, so both
/// integer and genuinely rational Z_p points are covered.
///
/// Evaluator failures at individual points (accidental poles) are recorded
/// as skips with the reason, not propagated.
///
/// Errors: [`Error::NotAdmissible`] when the family has colliding mod-p
/// images; [`Error::DegeneratePlane`] from reduction.
pub fn verify_on_hyperplanes(
    f: &FunctionHandle,
    planes: &[Hyperplane],
    p: Prime,
    r: u32,
    samples_per_plane: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if !admissible(planes, p)? {
        return Err(Error::NotAdmissible(format!(
            "{} planes with colliding mod-{} images",
            planes.len(),
            p.get()
        )));
    }
    let pp = p.get();
    let count = planes.len() as u64;
    let mut report = VerifyReport {
        prime: pp,
        exponent: r,
        samples: 0,
        passed_samples: 0,
        witnesses: Vec::new(),
        skips: Vec::new(),
        outside_proved_regime: pp <= count * (count + 1) / 2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (idx, plane) in planes.iter().enumerate() {
        let (coeffs, _) = plane.reduced(p)?;
        let pivot = coeffs
            .iter()
            .position(|&c| c != 0)
            .expect("reduced guarantees a unit coefficient");
        let n = plane.dimension();
        let free: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
        let integer_budget = samples_per_plane - samples_per_plane / 4;
        for counter in 0..samples_per_plane {
            let mut point = vec![Rational::zero(); n];
            if counter < integer_budget {
                // Deterministic integer sweep of the free coordinates.
                let mut c = counter as u64;
                for &j in &free {
                    point[j] = int((c % pp) as i64);
                    c /= pp;
                }
            } else {
                // Random unit-denominator rational lifts.
                for &j in &free {
                    let denom = loop {
                        let d = rng.gen_range(1..=6i64);
                        if d as u64 % pp != 0 {
                            break d;
                        }
                    };
                    let numer = rng.gen_range(0..pp.pow(3).min(1 << 20)) as i64;
                    point[j] = crate::padic::rat(numer, denom);
                }
            }
            // Solve the plane equation for the pivot coordinate.
            let mut rest = plane.constant.clone();
            for (j, x) in point.iter().enumerate() {
                if j != pivot {
                    rest += &plane.coefficients[j] * x;
                }
            }
            point[pivot] = -rest / &plane.coefficients[pivot];
            record_sample(f, &point, Some(idx), p, r, &mut report);
        }
    }
    report.witnesses.sort_by(|a, b| {
        (a.plane, format!("{:?}", a.point)).cmp(&(b.plane, format!("{:?}", b.point)))
    });
    Ok(report)
}

// ---------------------------------------------------------- global verifier

/// Evaluates `f` at integer grid points and seeded random unit-denominator
/// rational points, checking `f ≡ 0 mod p^r`.
pub fn verify_global(
    f: &FunctionHandle,
    p: Prime,
    r: u32,
    budget: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let pp = p.get();
    let n = f.arity;
    let order = r as u64;
    let mut report = VerifyReport {
        prime: pp,
        exponent: r,
        samples: 0,
        passed_samples: 0,
        witnesses: Vec::new(),
        skips: Vec::new(),
        outside_proved_regime: pp <= order * (order + 1) / 2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid_budget = budget / 2;
    for counter in 0..grid_budget {
        let mut point = vec![Rational::zero(); n];
        let mut c = counter as u64;
        for slot in point.iter_mut() {
            *slot = int((c % pp) as i64);
            c /= pp;
        }
        record_sample(f, &point, None, p, r, &mut report);
    }
    for _ in grid_budget..budget {
        let mut point = vec![Rational::zero(); n];
        for slot in point.iter_mut() {
            let denom = loop {
                let d = rng.gen_range(1..=6i64);
                if d as u64 % pp != 0 {
                    break d;
                }
            };
            let numer = rng.gen_range(0..pp.pow(3).min(1 << 20)) as i64;
            *slot = crate::padic::rat(numer, denom);
        }
        record_sample(f, &point, None, p, r, &mut report);
    }
    report
        .witnesses
        .sort_by(|a, b| format!("{:?}", a.point).cmp(&format!("{:?}", b.point)));
    Ok(report)
}

// ------------------------------------------------- multivariate extraction

/// Scaled multivariate coefficients `A_{k⃗}·p^{Σk}/Πkᵢ! mod p^r` extracted
/// from an `r^n` grid.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub prime: u64,
    pub exponent: u32,
    pub arity: usize,
    /// Mixed-radix table: index `k⃗` maps to `Σ kᵢ·r^{n−1−i}`.
    pub scaled: Vec<u64>,
}

impl CoeffTable {
    /// `A_{k⃗}·p^{Σk}/Πkᵢ! mod p^r`.
    pub fn get(&self, k: &[u32]) -> u64 {
        assert_eq!(k.len(), self.arity);
        let r = self.exponent as usize;
        let mut idx = 0usize;
        for &ki in k {
            assert!((ki as usize) < r, "coefficient index within order");
            idx = idx * r + ki as usize;
        }
        self.scaled[idx]
    }

    /// Certified exponent for the unscaled `A_{k⃗}`: `max(r − Σk, 0)`.
    pub fn certified(&self, k: &[u32]) -> u32 {
        let total: u32 = k.iter().sum();
        self.exponent.saturating_sub(total)
    }
}

/// Upper bound on the evaluation grid (`r^n` points).
const GRID_LIMIT: u64 = 1 << 18;

/// Extracts the full scaled coefficient table of a multivariate handle from
/// values on the grid `{0, …, r−1}^n`, by nested univariate Vandermonde
/// solves along each axis.
///
/// Errors: [`Error::GridTooLarge`] when `r^n` exceeds the configured limit;
/// evaluator errors propagate (grid points are structural, not accidental).
pub fn multivar_coeffs(f: &FunctionHandle, p: Prime, r: u32) -> Result<CoeffTable> {
    let n = f.arity;
    let size = (r as u64).checked_pow(n as u32).ok_or(Error::GridTooLarge(u64::MAX))?;
    if size > GRID_LIMIT {
        return Err(Error::GridTooLarge(size));
    }
    let m = p.pow_checked(r)?;
    let rs = r as usize;
    let mut table = vec![0u64; size as usize];
    for (flat, slot) in table.iter_mut().enumerate() {
        let mut point = vec![Rational::zero(); n];
        let mut c = flat;
        for slot_dim in point.iter_mut().rev() {
            *slot_dim = int((c % rs) as i64);
            c /= rs;
        }
        let value = f.eval(&point, p, r)?;
        *slot = value.residue(r)? % m;
    }
    let nodes: Vec<u64> = (0..r as u64).collect();
    // Solve along each axis in turn; after axis i the table holds
    // coefficients in the first i+1 indices and values in the rest.
    let mut stride = (size as usize) / rs; // stride of the leading axis
    for _axis in 0..n {
        for block in 0..(size as usize) / (stride * rs) {
            for offset in 0..stride {
                let base = block * stride * rs + offset;
                let column: Vec<u64> = (0..rs).map(|i| table[base + i * stride]).collect();
                let solved = vandermonde_solve_residues(&nodes, &column, p, r)?;
                for (i, v) in solved.into_iter().enumerate() {
                    table[base + i * stride] = v;
                }
            }
        }
        stride /= rs.max(1);
        if stride == 0 {
            break;
        }
    }
    Ok(CoeffTable {
        prime: p.get(),
        exponent: r,
        arity: n,
        scaled: table,
    })
}

// -------------------------------------------------------------------- tests
