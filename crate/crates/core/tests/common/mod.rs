//! Brute-force quadrature oracles shared by the integration tests.
//!
//! None of these route through the crate's schemes.

#![allow(dead_code)]

/// Composite Simpson rule on `[a, b]` with step close to `h` (even panel count).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, h: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut panels = ((b - a) / h).ceil() as usize;
    if panels % 2 == 1 {
        panels += 1;
    }
    let step = (b - a) / panels as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..panels {
        let v = f(a + i as f64 * step);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    step / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// `∫_0^x ∫_0^t f(s) ds dt = ∫_0^x (x - s) f(s) ds`.
pub fn double_integral(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    simpson(|s| (x - s) * f(s), 0.0, x, h)
}

/// Riemann-Liouville integral of order `mu` at `x`.
///
/// For `mu < 1` the kernel singularity is removed by `s = (x - t)^mu`:
/// `I^mu f(x) = 1/Γ(mu+1) ∫_0^{x^mu} f(x - s^{1/mu}) ds`.
pub fn rl_integral(f: impl Fn(f64) -> f64, mu: f64, x: f64, h: f64) -> f64 {
    if mu >= 1.0 {
        return simpson(|t| (x - t).powf(mu - 1.0) * f(t), 0.0, x, h) / libm::tgamma(mu);
    }
    let upper = x.powf(mu);
    simpson(|s| f(x - s.powf(1.0 / mu)), 0.0, upper, h) / libm::tgamma(mu + 1.0)
}

/// Taylor coefficients at 0 of the solution of `u'' = 10x·forcing - 2x·u`
/// with `u(0) = u0`, `u'(0) = s0`, from
/// `(k+2)(k+1) c_{k+2} = 10·forcing·[k = 1] - 2 c_{k-1}`.
pub fn airy_like_series(u0: f64, s0: f64, forcing: f64, terms: usize) -> Vec<f64> {
    let mut c = vec![0.0; terms];
    c[0] = u0;
    c[1] = s0;
    for k in 0..terms - 2 {
        let source = if k == 1 { 10.0 * forcing } else { 0.0 };
        let memory = if k >= 1 { 2.0 * c[k - 1] } else { 0.0 };
        c[k + 2] = (source - memory) / ((k + 2) as f64 * (k + 1) as f64);
    }
    c
}

pub fn eval_series(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * x + ck)
}

/// Case-4 truth `u'' = 2x(5 - u)`, `u(0) = a`, `u(1) = b`, by power series.
pub fn case4_series_solution(a: f64, b: f64) -> impl Fn(f64) -> f64 {
    let particular = airy_like_series(a, 0.0, 1.0, 80);
    let homogeneous = airy_like_series(0.0, 1.0, 0.0, 80);
    let c = (b - eval_series(&particular, 1.0)) / eval_series(&homogeneous, 1.0);
    move |x| eval_series(&particular, x) + c * eval_series(&homogeneous, x)
}
