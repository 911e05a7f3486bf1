//! Askey-Wilson polynomials: 4phi3 evaluation in both normalizations,
//! recurrence coefficients with real (shifted) index, and the orthogonality
//! weight.
//!
//! The recurrence 2x p_n = A_n p_{n+1} + B_n p_n + C_n p_{n-1} is satisfied
//! by the plain-4phi3 normalization ([`AWNorm::Phi`]). The printed source
//! coefficients carry two denominator defects; [`CoeffReading::Corrected`]
//! (the default everywhere) uses the denominators that make the recurrence
//! close to machine precision, and [`CoeffReading::AsPrinted`] keeps the
//! defective ones for audit. The residual test in this module is the
//! arbiter.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperseries::{eval_phi, SeriesSpec};
use crate::qcore::{qpoch_finite, qpoch_infinite, AWParams, QContext};

/// Which reading of the recurrence-coefficient denominators to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffReading {
    /// A_nu over (1-gamma q^{2nu-1})(1-gamma q^{2nu}),
    /// C_nu over (1-gamma q^{2nu-2})(1-gamma q^{2nu-1}).
    #[default]
    Corrected,
    /// A_nu over (1-gamma q^{2nu-1})(1-gamma q^{2nu}-q^{2nu}),
    /// C_nu over (1-gamma q^{2nu-1})(1-gamma q^{2nu}).
    AsPrinted,
}

/// Polynomial normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AWNorm {
    /// The bare terminating 4phi3 (value 1 at n = 0); satisfies the
    /// three-term recurrence with the coefficients of this module.
    #[default]
    Phi,
    /// a^{-n} (ab, ac, ad;q)_n times the phi form; symmetric in all four
    /// parameters.
    Full,
}

/// Coefficients of 2x p_nu = A p_{nu+1} + B p_nu + C p_{nu-1} at (real) index
/// nu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCoeffs {
    /// Coefficient of p_{nu+1}.
    pub a: Complex64,
    /// Coefficient of p_nu.
    pub b: Complex64,
    /// Coefficient of p_{nu-1}.
    pub c: Complex64,
    pub nu: f64,
}

const DEGENERACY_TOL: f64 = 1e-12;

/// Recurrence coefficients at index nu (integer n or shifted n + alpha).
pub fn aw_recurrence_coeffs(
    nu: f64,
    p: &AWParams,
    ctx: &QContext,
    reading: CoeffReading,
) -> Result<RecurrenceCoeffs> {
    let g = p.gamma();
    let qnu = ctx.qpow(Complex64::new(nu, 0.0));
    let qnu1 = qnu / ctx.q(); // q^{nu-1}
    let q2nu = qnu * qnu;
    let q2nu1 = q2nu / ctx.q(); // q^{2nu-1}
    let q2nu2 = q2nu1 / ctx.q(); // q^{2nu-2}

    let a_num = (1.0 - p.a * p.b * qnu)
        * (1.0 - p.a * p.c * qnu)
        * (1.0 - p.a * p.d * qnu)
        * (1.0 - g * qnu1);
    let c_num = (1.0 - p.b * p.c * qnu1)
        * (1.0 - p.b * p.d * qnu1)
        * (1.0 - p.c * p.d * qnu1)
        * (1.0 - qnu);

    let (a_den, c_den) = match reading {
        CoeffReading::Corrected => (
            [1.0 - g * q2nu1, 1.0 - g * q2nu],
            [1.0 - g * q2nu2, 1.0 - g * q2nu1],
        ),
        CoeffReading::AsPrinted => (
            [1.0 - g * q2nu1, 1.0 - g * q2nu - q2nu],
            [1.0 - g * q2nu1, 1.0 - g * q2nu],
        ),
    };
    for f in a_den.iter().chain(c_den.iter()) {
        if f.norm() < DEGENERACY_TOL {
            return Err(Error::DegenerateDenominator { nu });
        }
    }

    let a = a_num / (p.a * a_den[0] * a_den[1]);
    let c = p.a * c_num / (c_den[0] * c_den[1]);
    let b = p.a + 1.0 / p.a - a - c;
    Ok(RecurrenceCoeffs { a, b, c, nu })
}

/// Askey-Wilson polynomial at lattice coordinate s (so z = q^s).
pub fn aw_poly(
    n: u32,
    p: &AWParams,
    s: Complex64,
    norm: AWNorm,
    ctx: &QContext,
) -> Result<Complex64> {
    aw_poly_z(n, p, ctx.qpow(s), norm, ctx)
}

/// Askey-Wilson polynomial in the multiplicative variable z, where
/// x = (z + 1/z)/2. For x = cos(theta) pass z = e^{i theta}.
pub fn aw_poly_z(
    n: u32,
    p: &AWParams,
    z: Complex64,
    norm: AWNorm,
    ctx: &QContext,
) -> Result<Complex64> {
    let phi = aw_poly_series(n, p, z, ctx)?.value;
    Ok(match norm {
        AWNorm::Phi => phi,
        AWNorm::Full => full_prefactor(n, p, ctx) * phi,
    })
}

/// The terminating 4phi3 behind [`aw_poly_z`] with its summation bookkeeping
/// (phi normalization). The `term_scale` field is the right yardstick for
/// recurrence residuals near polynomial zeros.
pub fn aw_poly_series(
    n: u32,
    p: &AWParams,
    z: Complex64,
    ctx: &QContext,
) -> Result<crate::hyperseries::SeriesValue> {
    let g = p.gamma();
    let spec = SeriesSpec::unilateral(
        vec![
            ctx.qpow(Complex64::new(-f64::from(n), 0.0)),
            g * ctx.qpow(Complex64::new(f64::from(n) - 1.0, 0.0)),
            p.a * z,
            p.a / z,
        ],
        vec![p.a * p.b, p.a * p.c, p.a * p.d],
        ctx.q(),
    );
    eval_phi(&spec, ctx)
}

/// a^{-n} (ab, ac, ad;q)_n — the factor converting phi to full normalization.
pub fn full_prefactor(n: u32, p: &AWParams, ctx: &QContext) -> Complex64 {
    p.a.powi(-(n as i32))
        * qpoch_finite(p.a * p.b, ctx, n)
        * qpoch_finite(p.a * p.c, ctx, n)
        * qpoch_finite(p.a * p.d, ctx, n)
}

/// Forward three-term iteration from p_{-1} = 0, p_0 = 1 in the phi
/// normalization.
pub fn aw_poly_by_recurrence(
    n: u32,
    p: &AWParams,
    x: Complex64,
    ctx: &QContext,
    reading: CoeffReading,
) -> Result<Complex64> {
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let rc = aw_recurrence_coeffs(f64::from(k), p, ctx, reading)?;
        let next = ((2.0 * x - rc.b) * cur - rc.c * prev) / rc.a;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Scaled residual of the three-term recurrence at integer index n, with the
/// polynomials evaluated by their terminating series.
///
/// The residual is |2x p_n - A p_{n+1} - B p_n - C p_{n-1}| divided by the
/// propagated summand magnitude sum_k |coeff_k| * term_scale(p_k). The series
/// for p_n carries interior terms of size ~ q^{-n(n+1)/2 + n} that cancel to
/// an O(1) value, so the summand magnitude — not the value — is the
/// attainable precision scale in fixed-width arithmetic. This residual is
/// the arbiter between the two coefficient readings.
pub fn recurrence_residual(
    n: u32,
    p: &AWParams,
    z: Complex64,
    ctx: &QContext,
    reading: CoeffReading,
) -> Result<f64> {
    let x = (z + 1.0 / z) / 2.0;
    let lower = if n == 0 {
        None
    } else {
        Some(aw_poly_series(n - 1, p, z, ctx)?)
    };
    let mid = aw_poly_series(n, p, z, ctx)?;
    let upper = aw_poly_series(n + 1, p, z, ctx)?;
    let rc = aw_recurrence_coeffs(f64::from(n), p, ctx, reading)?;
    let (low_val, low_scale) = lower.map_or((Complex64::new(0.0, 0.0), 0.0), |s| {
        (s.value, s.term_scale)
    });
    let combo = 2.0 * x * mid.value - rc.a * upper.value - rc.b * mid.value - rc.c * low_val;
    let scale = (2.0 * x).norm() * mid.term_scale
        + rc.a.norm() * upper.term_scale
        + rc.b.norm() * mid.term_scale
        + rc.c.norm() * low_scale;
    Ok(combo.norm() / scale.max(f64::MIN_POSITIVE))
}

/// Orthogonality weight on (-1, 1) for real parameters inside the unit disk:
///
/// w(x) = |(e^{2 i theta};q)_inf|^2
///        / [ prod_u |(u e^{i theta};q)_inf|^2 * sqrt(1 - x^2) ],  x = cos theta.
pub fn aw_weight(x: f64, p: &AWParams, ctx: &QContext) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "weight requires |x| < 1, got {x}"
        )));
    }
    check_weight_params(p)?;
    let theta = x.acos();
    Ok(aw_weight_theta(theta, p, ctx)? / (1.0 - x * x).sqrt())
}

/// The weight with the substitution x = cos theta already applied:
/// w(cos theta) sin theta, the natural integrand factor on theta in [0, pi].
pub fn aw_weight_theta(theta: f64, p: &AWParams, ctx: &QContext) -> Result<f64> {
    check_weight_params(p)?;
    let ei = Complex64::new(0.0, theta).exp();
    let num = qpoch_infinite(ei * ei, ctx)?.norm_sqr();
    let mut den = 1.0;
    for u in p.as_array() {
        den *= qpoch_infinite(u * ei, ctx)?.norm_sqr();
    }
    Ok(num / den)
}

fn check_weight_params(p: &AWParams) -> Result<()> {
    for u in p.as_array() {
        if u.im != 0.0 || u.re.abs() >= 1.0 {
            return Err(Error::ParameterOutOfRange(format!(
                "weight requires real parameters with modulus < 1, got {u}"
            )));
        }
    }
    Ok(())
}
