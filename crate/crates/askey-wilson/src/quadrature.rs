//! Adaptive and fixed-grid Simpson quadrature for the weight-function and
//! operator-inversion integrals.

use crate::error::{Error, Result};

/// Adaptive Simpson integration of `f` over [a, b] to absolute tolerance
/// `abs_tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let mut reached = f64::INFINITY;
    match recurse(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, &mut reached) {
        Some(v) => Ok(v),
        None => Err(Error::QuadratureNonConvergent { requested: abs_tol, reached }),
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    reached: &mut f64,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        return Some(left + right + err / 15.0);
    }
    if depth == 0 {
        *reached = reached.min(err.abs() / 15.0);
        return None;
    }
    let l = recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, reached)?;
    let r = recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, reached)?;
    Some(l + r)
}

/// Composite Simpson on a fixed grid of `nodes` panels (rounded up to even).
pub fn fixed_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: usize) -> f64 {
    let n = nodes.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let v = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12, 30).unwrap();
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-10);
    }

    #[test]
    fn integrates_oscillatory() {
        let v = adaptive_simpson(&|x| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-12, 40).unwrap();
        let exact = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert!((v - exact).abs() < 1e-9);
    }

    #[test]
    fn fixed_rule_converges_with_node_doubling() {
        let f = |x: f64| (x * x).exp();
        let c1 = fixed_simpson(&f, 0.0, 1.0, 64);
        let c2 = fixed_simpson(&f, 0.0, 1.0, 128);
        let c4 = fixed_simpson(&f, 0.0, 1.0, 256);
        assert!((c2 - c4).abs() < (c1 - c2).abs());
    }
}
