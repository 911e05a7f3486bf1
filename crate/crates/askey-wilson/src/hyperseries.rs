//! Generic evaluation of basic hypergeometric series r_phi_s, bilateral
//! r_psi_s, and very-well-poised r+1_W_r wrappers.
//!
//! The unilateral series follows the convention
//!
//! ```text
//! r_phi_s(a1..ar; b1..bs; q, z)
//!   = sum_n  (a1..ar;q)_n / [(q;q)_n (b1..bs;q)_n]
//!            * ((-1)^n q^{n(n-1)/2})^{1+s-r} * z^n
//! ```
//!
//! so the extra alternating factor is honored whenever r != s + 1. The
//! bilateral series omits the implicit (q;q)_n and carries the exponent
//! s - r instead; terms with negative index use
//! (a;q)_{-k} = 1 / (a q^{-k};q)_k.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{qpoch_finite, QContext};

/// Parameter lists and argument for a phi or psi series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
    pub z: Complex64,
    pub bilateral: bool,
}

impl SeriesSpec {
    pub fn unilateral(numerator: Vec<Complex64>, denominator: Vec<Complex64>, z: Complex64) -> Self {
        Self { numerator, denominator, z, bilateral: false }
    }

    pub fn bilateral(numerator: Vec<Complex64>, denominator: Vec<Complex64>, z: Complex64) -> Self {
        Self { numerator, denominator, z, bilateral: true }
    }
}

/// A summed series value with the bookkeeping the harness reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    /// Relative magnitude of the last (small) term; 0 for terminating sums.
    pub tail_estimate: f64,
    /// Largest |term| encountered; the natural scale for residuals of
    /// identities built from this sum (near-cancellation makes the value
    /// itself a poor yardstick).
    pub term_scale: f64,
}

/// Relative tolerance for recognizing a parameter as q^{-m} or q^{m}.
const POWER_MATCH_TOL: f64 = 1e-12;

/// Smallest m >= 0 with |p - q^{-m}| < tol * |q^{-m}|, if any.
///
/// The magnitude of p pins the only candidate exponents, so this is O(1)
/// rather than a scan over the budget.
pub(crate) fn neg_q_power_index(p: Complex64, ctx: &QContext) -> Option<u32> {
    let qn = ctx.q().norm();
    let pn = p.norm();
    if pn <= 0.0 || !pn.is_finite() {
        return None;
    }
    let guess = -pn.ln() / qn.ln();
    for cand in [guess.round() - 1.0, guess.round(), guess.round() + 1.0] {
        if cand < 0.0 || cand > ctx.max_terms() as f64 {
            continue;
        }
        let m = cand as u32;
        let target = ctx.qpow(Complex64::new(-f64::from(m), 0.0));
        if (p - target).norm() < POWER_MATCH_TOL * target.norm() {
            return Some(m);
        }
    }
    None
}

/// Smallest terminating index over the numerator parameters.
fn termination_index(params: &[Complex64], ctx: &QContext) -> Option<u32> {
    params.iter().filter_map(|&p| neg_q_power_index(p, ctx)).min()
}

/// Smallest m >= 1 with |p - q^{m}| < tol * |q^{m}|, if any.
///
/// A parameter of this form makes (p;q)_{-k} degenerate for k >= m: in the
/// denominator of a bilateral series it kills those terms, in the numerator
/// it makes them singular.
fn pos_q_power_index(p: Complex64, ctx: &QContext) -> Option<u32> {
    let qn = ctx.q().norm();
    let pn = p.norm();
    if pn <= 0.0 || !pn.is_finite() {
        return None;
    }
    let guess = pn.ln() / qn.ln();
    for cand in [guess.round() - 1.0, guess.round(), guess.round() + 1.0] {
        if cand < 1.0 || cand > ctx.max_terms() as f64 {
            continue;
        }
        let m = cand as u32;
        let target = ctx.qpow(Complex64::new(f64::from(m), 0.0));
        if (p - target).norm() < POWER_MATCH_TOL * target.norm() {
            return Some(m);
        }
    }
    None
}

/// Evaluate a unilateral r_phi_s series.
pub fn eval_phi(spec: &SeriesSpec, ctx: &QContext) -> Result<SeriesValue> {
    let r = spec.numerator.len();
    let s = spec.denominator.len();
    let extra_exp = 1 + s as i32 - r as i32;

    let stop = termination_index(&spec.numerator, ctx);

    // A denominator parameter q^{-m} zeroes the ratio denominator at n = m;
    // that is only harmless if the series has already terminated.
    if let Some(pole) = termination_index(&spec.denominator, ctx) {
        if stop.map_or(true, |t| pole < t) {
            return Err(Error::DenominatorPole { index: pole as usize });
        }
    }

    if stop.is_none() {
        if r > s + 1 {
            return Err(Error::NonConvergent(format!(
                "non-terminating {r}phi{s} diverges"
            )));
        }
        if r == s + 1 && spec.z.norm() >= 1.0 {
            return Err(Error::NonConvergent(format!(
                "{r}phi{s} requires |z| < 1, got |z| = {}",
                spec.z.norm()
            )));
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut qp = Complex64::new(1.0, 0.0); // q^n
    let mut n: usize = 0;
    let mut small_streak = 0;
    let mut term_scale = 0.0f64;

    loop {
        sum += term;
        term_scale = term_scale.max(term.norm());
        if let Some(t) = stop {
            if n as u32 == t {
                return Ok(SeriesValue {
                    value: sum,
                    terms_used: n + 1,
                    tail_estimate: 0.0,
                    term_scale,
                });
            }
        } else {
            let rel = term.norm() / sum.norm().max(f64::MIN_POSITIVE);
            if rel < ctx.trunc_eps() {
                small_streak += 1;
                if small_streak >= 3 {
                    return Ok(SeriesValue {
                        value: sum,
                        terms_used: n + 1,
                        tail_estimate: rel,
                        term_scale,
                    });
                }
            } else {
                small_streak = 0;
            }
        }
        if n + 1 > ctx.max_terms() {
            return Err(Error::BudgetExceeded { terms: n + 1 });
        }

        let mut ratio = Complex64::new(1.0, 0.0);
        for &a in &spec.numerator {
            ratio *= 1.0 - a * qp;
        }
        ratio /= 1.0 - ctx.q() * qp;
        for &b in &spec.denominator {
            ratio /= 1.0 - b * qp;
        }
        ratio *= (-qp).powi(extra_exp) * spec.z;
        term *= ratio;
        qp *= ctx.q();
        n += 1;
    }
}

/// Evaluate a bilateral r_psi_s series, summing outward from k = 0.
pub fn eval_psi(spec: &SeriesSpec, ctx: &QContext) -> Result<SeriesValue> {
    let r = spec.numerator.len();
    let s = spec.denominator.len();
    let extra_exp = s as i32 - r as i32;

    // Nonnegative side: same ratio structure as phi, without the implicit
    // (q;q)_n factor.
    let stop = termination_index(&spec.numerator, ctx);
    if let Some(pole) = termination_index(&spec.denominator, ctx) {
        if stop.map_or(true, |t| pole < t) {
            return Err(Error::DenominatorPole { index: pole as usize });
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut qp = Complex64::new(1.0, 0.0);
    let mut n: usize = 0;
    let mut terms_used = 0usize;
    let mut tail = 0.0f64;
    let mut small_streak = 0;
    let mut term_scale = 0.0f64;

    loop {
        sum += term;
        terms_used += 1;
        term_scale = term_scale.max(term.norm());
        if let Some(t) = stop {
            if n as u32 == t {
                break;
            }
        } else {
            let rel = term.norm() / sum.norm().max(f64::MIN_POSITIVE);
            if rel < ctx.trunc_eps() {
                small_streak += 1;
                if small_streak >= 3 {
                    tail = rel;
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        if n + 1 > ctx.max_terms() {
            return Err(Error::BudgetExceeded { terms: n + 1 });
        }
        let mut ratio = Complex64::new(1.0, 0.0);
        for &a in &spec.numerator {
            ratio *= 1.0 - a * qp;
        }
        for &b in &spec.denominator {
            ratio /= 1.0 - b * qp;
        }
        ratio *= (-qp).powi(extra_exp) * spec.z;
        term *= ratio;
        qp *= ctx.q();
        n += 1;
    }

    // Negative side, walked downward: with g_k the k-th step factor,
    //
    //   term(-k) = term(-(k-1)) * g_k,
    //   g_k = prod_j (1 - b_j q^{-k}) / prod_i (1 - a_i q^{-k})
    //         * ((-1) q^k)^{s-r} / z,
    //
    // which keeps every intermediate bounded where the separate Pochhammer
    // products would overflow. A denominator parameter equal to q^m (m >= 1)
    // zeroes every term from -m on, so the walk stops at m-1; the same form
    // in the numerator makes those terms singular instead.
    let neg_cutoff = spec
        .denominator
        .iter()
        .filter_map(|&b| pos_q_power_index(b, ctx))
        .min();
    let neg_singular = spec
        .numerator
        .iter()
        .filter_map(|&a| pos_q_power_index(a, ctx))
        .min();
    if neg_singular.map_or(false, |ma| neg_cutoff.map_or(true, |mb| ma < mb)) {
        return Err(Error::NonConvergent(format!(
            "bilateral term at index -{} is singular",
            neg_singular.unwrap()
        )));
    }

    let mut small_streak = 0;
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..=ctx.max_terms() {
        if let Some(m) = neg_cutoff {
            if k >= m as usize {
                break;
            }
        }
        let qk = ctx.qpow(Complex64::new(k as f64, 0.0));
        let qmk = 1.0 / qk;
        let mut g_num = Complex64::new(1.0, 0.0);
        for &b in &spec.denominator {
            g_num *= 1.0 - b * qmk;
        }
        let mut g_den = spec.z;
        for &a in &spec.numerator {
            g_den *= 1.0 - a * qmk;
        }
        term *= g_num / g_den * (-qk).powi(extra_exp);
        if !term.norm().is_finite() {
            return Err(Error::NonConvergent(format!(
                "negative-index terms overflow at index -{k}"
            )));
        }
        sum += term;
        terms_used += 1;
        term_scale = term_scale.max(term.norm());
        let rel = term.norm() / sum.norm().max(f64::MIN_POSITIVE);
        if rel < ctx.trunc_eps() {
            small_streak += 1;
            if small_streak >= 3 {
                tail = tail.max(rel);
                break;
            }
        } else {
            small_streak = 0;
        }
        if k == ctx.max_terms() {
            return Err(Error::NonConvergent(
                "negative-index terms failed to decay within the budget".into(),
            ));
        }
    }

    Ok(SeriesValue { value: sum, terms_used, tail_estimate: tail, term_scale })
}

/// Evaluate a very-well-poised r+1_W_r series.
///
/// `rest` holds the r-2 free parameters a4..a_{r+1}; the wrapper expands to
/// the standard r+1_phi_r with numerator (a1, q sqrt(a1), -q sqrt(a1), rest..)
/// and denominator (sqrt(a1), -sqrt(a1), {q a1 / rest_i}..), then delegates
/// to [`eval_phi`].
pub fn eval_w(a1: Complex64, rest: &[Complex64], ctx: &QContext, z: Complex64) -> Result<SeriesValue> {
    eval_phi(&w_spec(a1, rest, ctx.q(), z, false), ctx)
}

/// The unfolded phi spec behind [`eval_w`]. `negate_sqrt` picks the other
/// square-root branch; the resulting parameter multiset is unchanged because
/// the root only enters through a +- pair, which the tests assert once.
pub fn w_spec(
    a1: Complex64,
    rest: &[Complex64],
    q: Complex64,
    z: Complex64,
    negate_sqrt: bool,
) -> SeriesSpec {
    let root = if negate_sqrt { -a1.sqrt() } else { a1.sqrt() };
    let mut numerator = vec![a1, q * root, -q * root];
    numerator.extend_from_slice(rest);
    let mut denominator = vec![root, -root];
    denominator.extend(rest.iter().map(|&r| q * a1 / r));
    SeriesSpec::unilateral(numerator, denominator, z)
}
