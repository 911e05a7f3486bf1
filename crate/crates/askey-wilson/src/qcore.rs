//! Scalar building blocks: q-shifted factorials, the q-quadratic lattice
//! x(s) = (q^s + q^-s)/2, and integer-order generalized powers.
//!
//! Everything here is a pure function of its arguments. Scalars are complex
//! throughout, even when callers pass real data, because the trigonometric
//! parametrizations (x = cos theta, z = e^{i theta}) need them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Evaluation context for every series and product in the crate: the base q,
/// the absolute tail cutoff for infinite products/series, and a hard term
/// budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: Complex64,
    trunc_eps: f64,
    max_terms: usize,
}

/// Default tail cutoff for infinite products and series.
pub const DEFAULT_TRUNC_EPS: f64 = 1e-16;
/// Default hard budget on product/series terms.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

impl QContext {
    /// Build a context, enforcing 0 < |q| < 1, trunc_eps > 0, max_terms >= 1.
    pub fn new(q: Complex64, trunc_eps: f64, max_terms: usize) -> Result<Self> {
        let norm = q.norm();
        if !(norm > 0.0 && norm < 1.0) || !norm.is_finite() {
            return Err(Error::InvalidContext(format!(
                "|q| must lie in (0,1), got |{q}| = {norm}"
            )));
        }
        if !(trunc_eps > 0.0) {
            return Err(Error::InvalidContext(format!(
                "trunc_eps must be positive, got {trunc_eps}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidContext("max_terms must be >= 1".into()));
        }
        Ok(Self { q, trunc_eps, max_terms })
    }

    /// Context with the default truncation tolerance and term budget.
    pub fn with_q(q: Complex64) -> Result<Self> {
        Self::new(q, DEFAULT_TRUNC_EPS, DEFAULT_MAX_TERMS)
    }

    /// Real-q convenience constructor.
    pub fn real(q: f64) -> Result<Self> {
        Self::with_q(Complex64::new(q, 0.0))
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn trunc_eps(&self) -> f64 {
        self.trunc_eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// q^e for complex exponent e, principal branch of log q.
    pub fn qpow(&self, e: Complex64) -> Complex64 {
        // Integer exponents stay exact under repeated multiplication; powc
        // goes through exp/ln and loses a couple of ulps.
        if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= 64.0 {
            return self.qpowi(e.re as i64);
        }
        self.q.powc(e)
    }

    /// q^k for integer k.
    pub fn qpowi(&self, k: i64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        let base = if k >= 0 { self.q } else { 1.0 / self.q };
        for _ in 0..k.unsigned_abs() {
            acc *= base;
        }
        acc
    }
}

/// The Askey-Wilson parameter quadruple with the product gamma = abcd cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AWParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    gamma: Complex64,
}

impl AWParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d, gamma: a * b * c * d }
    }

    /// Real-parameter convenience constructor.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    /// gamma = abcd.
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Parameters as an array in (a, b, c, d) order.
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The quadruple with a and b swapped (symmetry tests).
    pub fn swap_ab(&self) -> Self {
        Self::new(self.b, self.a, self.c, self.d)
    }
}

/// A point on the q-quadratic lattice: the coordinate s together with
/// x(s) = (q^s + q^-s)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub s: Complex64,
    pub x: Complex64,
}

impl LatticePoint {
    pub fn new(s: Complex64, ctx: &QContext) -> Self {
        Self { s, x: lattice_x(s, ctx, 0) }
    }
}

/// Finite or infinite order for a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochOrder {
    Finite(u32),
    Infinite,
}

/// (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j). The empty product (n = 0) is 1.
pub fn qpoch_finite(a: Complex64, ctx: &QContext, n: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qp = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        acc *= 1.0 - a * qp;
        qp *= ctx.q();
    }
    acc
}

/// (a;q)_inf, truncated at the first index N with |a q^N| < trunc_eps.
///
/// The dropped tail multiplies the result by prod_{j>=N} (1 - a q^j), so the
/// relative truncation error is bounded by |a q^N| / (1 - |q|) once
/// |a q^N| < 1/2; with the default cutoff that is far below double precision.
pub fn qpoch_infinite(a: Complex64, ctx: &QContext) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut aq = a;
    let mut n = 0usize;
    while aq.norm() >= ctx.trunc_eps() {
        acc *= 1.0 - aq;
        aq *= ctx.q();
        n += 1;
        if n > ctx.max_terms() {
            return Err(Error::BudgetExceeded { terms: n });
        }
    }
    Ok(acc)
}

/// (a1, ..., ar; q)_n: the product of the individual Pochhammer symbols.
pub fn qpoch_multi(factors: &[Complex64], ctx: &QContext, order: PochOrder) -> Result<Complex64> {
    if factors.is_empty() {
        return Err(Error::ParameterOutOfRange(
            "qpoch_multi requires a non-empty parameter list".into(),
        ));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for &a in factors {
        acc *= match order {
            PochOrder::Finite(n) => qpoch_finite(a, ctx, n),
            PochOrder::Infinite => qpoch_infinite(a, ctx)?,
        };
    }
    Ok(acc)
}

/// x_{h/2}(s) = (q^{s + h/2} + q^{-s - h/2}) / 2.
///
/// half_shift counts half-steps: h = 0 is the lattice map x(s) itself,
/// h = 1 is x_1(s) = x(s + 1/2).
pub fn lattice_x(s: Complex64, ctx: &QContext, half_shift: i32) -> Complex64 {
    let e = s + Complex64::new(f64::from(half_shift) / 2.0, 0.0);
    (ctx.qpow(e) + ctx.qpow(-e)) / 2.0
}

/// Integer-order generalized power [x(s) - x(z)]^{(m)} on the q-quadratic
/// lattice.
///
/// Characterized by [.]^{(0)} = 1 together with the splitting rule
/// [x(s)-x(z)]^{(n+1)} = [x(s)-x(z)] [x(s)-x(z-1)]^{(n)}, which unrolls to
/// the product over j < m of [x(s) - x(z-j)].
pub fn generalized_power(s: Complex64, z: Complex64, m: u32, ctx: &QContext) -> Complex64 {
    let xs = lattice_x(s, ctx, 0);
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..m {
        let zj = z - Complex64::new(f64::from(j), 0.0);
        acc *= xs - lattice_x(zj, ctx, 0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn context_rejects_bad_q() {
        assert!(QContext::real(0.0).is_err());
        assert!(QContext::real(1.0).is_err());
        assert!(QContext::real(1.3).is_err());
        assert!(QContext::new(c(0.5), -1.0, 100).is_err());
        assert!(QContext::new(c(0.5), 1e-16, 0).is_err());
        assert!(QContext::real(0.5).is_ok());
    }

    #[test]
    fn qpoch_finite_basics() {
        let ctx = QContext::real(0.5).unwrap();
        // empty product
        assert_eq!(qpoch_finite(c(0.5), &ctx, 0), c(1.0));
        // a = 0: every factor is 1
        let ctx3 = QContext::real(0.3).unwrap();
        assert_eq!(qpoch_finite(c(0.0), &ctx3, 7), c(1.0));
        // (0.5;0.5)_2 = (1-0.5)(1-0.25) = 0.375
        let v = qpoch_finite(c(0.5), &ctx, 2);
        assert!((v - c(0.375)).norm() < 1e-15);
    }

    #[test]
    fn qpoch_finite_step_identity() {
        // (a;q)_{n+1} = (a;q)_n (1 - a q^n)
        let ctx = QContext::real(0.4).unwrap();
        let a = c(0.37);
        for n in 0..20u32 {
            let lhs = qpoch_finite(a, &ctx, n + 1);
            let rhs = qpoch_finite(a, &ctx, n) * (1.0 - a * ctx.qpowi(i64::from(n)));
            assert!((lhs - rhs).norm() < 1e-14 * (rhs.norm() + 1.0));
        }
    }

    #[test]
    fn qpoch_infinite_value() {
        let ctx = QContext::real(0.5).unwrap();
        assert_eq!(qpoch_infinite(c(0.0), &ctx).unwrap(), c(1.0));
        // independently computed truncated product, >= 60 factors
        let v = qpoch_infinite(c(0.5), &ctx).unwrap();
        assert!((v.re - 0.2887880950866024).abs() < 1e-9, "got {v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn qpoch_infinite_peel_off() {
        // (a;q)_inf = (1-a)(aq;q)_inf
        let ctx = QContext::real(0.4).unwrap();
        let a = c(0.3);
        let lhs = qpoch_infinite(a, &ctx).unwrap();
        let rhs = (1.0 - a) * qpoch_infinite(a * ctx.q(), &ctx).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-12);
    }

    #[test]
    fn qpoch_infinite_split_identity() {
        // (a;q)_inf = (a;q)_n (a q^n;q)_inf
        let ctx = QContext::real(0.45).unwrap();
        let a = c(0.62);
        let full = qpoch_infinite(a, &ctx).unwrap();
        for n in 0..=10u32 {
            let split = qpoch_finite(a, &ctx, n)
                * qpoch_infinite(a * ctx.qpowi(i64::from(n)), &ctx).unwrap();
            assert!((full - split).norm() / full.norm() < 1e-12);
        }
    }

    #[test]
    fn qpoch_infinite_budget() {
        let ctx = QContext::new(c(0.99), 1e-16, 50).unwrap();
        assert!(matches!(
            qpoch_infinite(c(0.5), &ctx),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn qpoch_multi_cases() {
        let ctx = QContext::real(0.3).unwrap();
        // single-element list delegates
        let lhs = qpoch_multi(&[c(0.2)], &ctx, PochOrder::Finite(3)).unwrap();
        assert_eq!(lhs, qpoch_finite(c(0.2), &ctx, 3));
        // a zero factor contributes 1
        let ctx5 = QContext::real(0.5).unwrap();
        let with_zero = qpoch_multi(&[c(0.4), c(0.0)], &ctx5, PochOrder::Infinite).unwrap();
        let alone = qpoch_infinite(c(0.4), &ctx5).unwrap();
        assert!((with_zero - alone).norm() < 1e-15);
        // ([0.2, 0.5]; 0.5)_1 = (1-0.2)(1-0.5) = 0.4
        let v = qpoch_multi(&[c(0.2), c(0.5)], &ctx5, PochOrder::Finite(1)).unwrap();
        assert!((v - c(0.4)).norm() < 1e-15);
        assert!(qpoch_multi(&[], &ctx, PochOrder::Infinite).is_err());
    }

    #[test]
    fn lattice_x_values() {
        let ctx = QContext::real(0.25).unwrap();
        // (q^0 + q^0)/2 = 1
        assert!((lattice_x(c(0.0), &ctx, 0) - c(1.0)).norm() < 1e-15);
        // (0.25 + 4)/2 = 2.125
        assert!((lattice_x(c(1.0), &ctx, 0) - c(2.125)).norm() < 1e-14);
    }

    #[test]
    fn lattice_x_even() {
        let ctx = QContext::real(0.3).unwrap();
        let s = Complex64::new(0.7, 0.2);
        let lhs = lattice_x(s, &ctx, 0);
        let rhs = lattice_x(-s, &ctx, 0);
        assert!((lhs - rhs).norm() < 1e-14 * lhs.norm());
    }

    #[test]
    fn lattice_half_shift_is_x1() {
        let ctx = QContext::real(0.3).unwrap();
        let s = c(0.8);
        let lhs = lattice_x(s, &ctx, 1);
        let rhs = lattice_x(s + c(0.5), &ctx, 0);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn generalized_power_basics() {
        let ctx = QContext::real(0.3).unwrap();
        let (s, z) = (c(0.4), c(0.9));
        assert_eq!(generalized_power(s, z, 0, &ctx), c(1.0));
        let gp1 = generalized_power(s, z, 1, &ctx);
        let direct = lattice_x(s, &ctx, 0) - lattice_x(z, &ctx, 0);
        assert!((gp1 - direct).norm() < 1e-15);
    }

    #[test]
    fn generalized_power_splitting() {
        // [x(s)-x(z)]^{(3)} = [x(s)-x(z)] [x(s)-x(z-1)]^{(2)}
        let ctx = QContext::real(0.3).unwrap();
        let (s, z) = (c(0.4), c(0.9));
        let lhs = generalized_power(s, z, 3, &ctx);
        let rhs = (lattice_x(s, &ctx, 0) - lattice_x(z, &ctx, 0))
            * generalized_power(s, z - c(1.0), 2, &ctx);
        assert!((lhs - rhs).norm() < 1e-15 * (rhs.norm() + 1.0));
    }
}
