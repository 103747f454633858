//! Riemann-Liouville fractional integration on uniform grids with lower
//! terminal 0.
//!
//! Three discretizations of `I^μ f(x) = 1/Γ(μ) ∫_0^x (x - t)^(μ-1) f(t) dt`
//! are provided, where `μ = -alpha > 0`:
//!
//! - [`gl_apply`]: truncated Grünwald-Letnikov series, first order.
//! - [`rect_apply`]: product rectangle rule with left-endpoint samples, first order.
//! - [`abm_apply`]: Adams-Bashforth-Moulton predictor-corrector with the
//!   product-trapezoid corrector, second order on smooth data.
//!
//! Every scheme returns 0 at `x_0`, the value of the integral over an empty
//! interval.

use crate::special::gamma_pos;
use crate::{Error, GridFunction, Result};

/// Largest `|alpha|` accepted anywhere.
pub const MAX_ORDER: f64 = 4.0;

/// Differintegral order; negative values integrate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha.abs() > MAX_ORDER {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(Self(alpha))
    }

    /// An order in `[-2, 0)`, the range used by the integration schemes.
    pub fn integration(alpha: f64) -> Result<Self> {
        let order = Self::new(alpha)?;
        order.require_integration()?;
        Ok(order)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `μ = -alpha`, the order of the integral.
    pub fn integral_order(self) -> f64 {
        -self.0
    }

    fn require_integration(self) -> Result<()> {
        if (-2.0..0.0).contains(&self.0) {
            Ok(())
        } else {
            Err(Error::InvalidOrder(self.0))
        }
    }
}

/// How much of the convolution history the GL sum keeps.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MemoryPolicy {
    #[default]
    Full,
    /// Short memory: only samples within `window_length` of `x` contribute.
    Truncated { window_length: f64 },
}

impl MemoryPolicy {
    /// Number of past steps kept on a grid of step `h`.
    fn window_steps(self, h: f64) -> Result<Option<usize>> {
        match self {
            MemoryPolicy::Full => Ok(None),
            MemoryPolicy::Truncated { window_length } => {
                if !window_length.is_finite() || window_length < 10.0 * h * (1.0 - 1e-12) {
                    return Err(Error::InvalidPolicy(format!(
                        "window {window_length} shorter than 10 steps of {h}"
                    )));
                }
                Ok(Some((window_length / h + 1e-9).floor() as usize))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Grünwald-Letnikov series.
    Gl,
    /// Product rectangle rule.
    Rect,
    /// Adams-Bashforth-Moulton predictor-corrector.
    Abm,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Gl => "gl",
            Scheme::Rect => "rect",
            Scheme::Abm => "abm",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(Scheme::Gl),
            "rect" => Ok(Scheme::Rect),
            "abm" => Ok(Scheme::Abm),
            other => Err(Error::Precondition(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Corrector sweeps per node in the ABM scheme.
///
/// `Single` is the PECE baseline. `Double` re-evaluates the right-hand side at
/// the corrected value and corrects once more (the Deng-style variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrectorPasses {
    #[default]
    Single,
    Double,
}

/// Grünwald weights `w_j = (-1)^j binom(alpha, j)` for `j < count`.
pub fn gl_coefficients(alpha: FracOrder, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Precondition(
            "coefficient count must be positive".into(),
        ));
    }
    let a = alpha.value();
    let mut w = Vec::with_capacity(count);
    w.push(1.0);
    for j in 1..count {
        let prev = w[j - 1];
        w.push(prev * (1.0 - (a + 1.0) / j as f64));
    }
    Ok(w)
}

/// Grünwald-Letnikov fractional integral of order `-alpha`.
pub fn gl_apply(f: &GridFunction, alpha: FracOrder, policy: MemoryPolicy) -> Result<GridFunction> {
    alpha.require_integration()?;
    let h = f.h();
    let n = f.n();
    let window = policy.window_steps(h)?;
    let w = gl_coefficients(alpha, n + 1)?;
    let scale = h.powf(alpha.integral_order());
    let fv = f.values();

    let mut out = vec![0.0; n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let depth = window.map_or(k, |m| m.min(k));
        let acc: f64 = (0..=depth).map(|j| w[j] * fv[k - j]).sum();
        *slot = scale * acc;
    }
    f.with_values(out)
}

/// Product rectangle rule with left-endpoint samples.
///
/// `I^μ f(x_n) ≈ h^μ/Γ(μ+1) Σ_{j<n} [(n-j)^μ - (n-j-1)^μ] f(x_j)`.
pub fn rect_apply(f: &GridFunction, alpha: FracOrder) -> Result<GridFunction> {
    alpha.require_integration()?;
    let n = f.n();
    let mu = alpha.integral_order();
    let b = rectangle_weights(mu, n);
    let scale = f.h().powf(mu) / gamma_pos(mu + 1.0);
    let fv = f.values();

    let mut out = vec![0.0; n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let acc: f64 = (0..k).map(|j| b[k - j] * fv[j]).sum();
        *slot = scale * acc;
    }
    f.with_values(out)
}

/// Fractional integral by the single-corrector ABM scheme.
///
/// The integrand is known on the whole grid, so the predictor never feeds the
/// corrector and the result is the product-trapezoid rule.
pub fn abm_apply(f: &GridFunction, alpha: FracOrder) -> Result<GridFunction> {
    abm_apply_with(f, alpha, CorrectorPasses::Single)
}

pub fn abm_apply_with(
    f: &GridFunction,
    alpha: FracOrder,
    passes: CorrectorPasses,
) -> Result<GridFunction> {
    alpha.require_integration()?;
    let fv = f.values();
    let out = pece(
        f.n(),
        f.h(),
        alpha.integral_order(),
        &[0.0],
        passes,
        |j, _y| fv[j],
    )?;
    f.with_values(out)
}

/// Solves `y = T(x) + I^μ[g(·, y)]` on `[0, n·h]` with the ABM
/// predictor-corrector, where `T` is the Taylor polynomial built from
/// `initial = [y(0), y'(0), ...]`.
pub fn abm_solve(
    g: impl Fn(f64, f64) -> f64,
    initial: &[f64],
    alpha: FracOrder,
    n: usize,
    h: f64,
    passes: CorrectorPasses,
) -> Result<GridFunction> {
    alpha.require_integration()?;
    if n == 0 || h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidGrid(format!("n = {n}, h = {h}")));
    }
    let out = pece(n, h, alpha.integral_order(), initial, passes, |j, y| {
        g(j as f64 * h, y)
    })?;
    GridFunction::new(h, out)
}

fn pece(
    n: usize,
    h: f64,
    mu: f64,
    initial: &[f64],
    passes: CorrectorPasses,
    mut g: impl FnMut(usize, f64) -> f64,
) -> Result<Vec<f64>> {
    let taylor = |x: f64| {
        let mut term = 1.0;
        let mut sum = 0.0;
        for (k, c) in initial.iter().enumerate() {
            if k > 0 {
                term *= x / k as f64;
            }
            sum += c * term;
        }
        sum
    };

    let b = rectangle_weights(mu, n);
    let c = trapezoid_interior_weights(mu, n);
    let pred_scale = h.powf(mu) / gamma_pos(mu + 1.0);
    let corr_scale = h.powf(mu) / gamma_pos(mu + 2.0);

    let mut y = vec![0.0; n + 1];
    let mut gv = vec![0.0; n + 1];
    y[0] = taylor(0.0);
    gv[0] = g(0, y[0]);

    for k in 1..=n {
        let kf = k as f64;
        let t0 = taylor(kf * h);
        let predicted: f64 = t0 + pred_scale * (0..k).map(|j| b[k - j] * gv[j]).sum::<f64>();

        let a0 = (kf - 1.0).powf(mu + 1.0) - kf.powf(mu) * (kf - mu - 1.0);
        let history: f64 = a0 * gv[0] + (1..k).map(|j| c[k - j] * gv[j]).sum::<f64>();

        let mut corrected = t0 + corr_scale * (history + g(k, predicted));
        if passes == CorrectorPasses::Double {
            corrected = t0 + corr_scale * (history + g(k, corrected));
        }
        if !corrected.is_finite() {
            return Err(Error::Diverged {
                magnitude: corrected.abs(),
            });
        }
        y[k] = corrected;
        gv[k] = g(k, corrected);
    }
    Ok(y)
}

/// `b[k] = k^μ - (k-1)^μ` for `k = 1..=n`; `b[0]` is unused.
fn rectangle_weights(mu: f64, n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    for (k, slot) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *slot = kf.powf(mu) - (kf - 1.0).powf(mu);
    }
    b
}

/// `c[k] = (k+1)^(μ+1) + (k-1)^(μ+1) - 2 k^(μ+1)` for `k = 1..n`.
fn trapezoid_interior_weights(mu: f64, n: usize) -> Vec<f64> {
    let p = mu + 1.0;
    let mut c = vec![0.0; n + 1];
    for (k, slot) in c.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *slot = (kf + 1.0).powf(p) + (kf - 1.0).powf(p) - 2.0 * kf.powf(p);
    }
    c
}

/// Applies `scheme` for one integration stage.
///
/// Memory truncation is defined for the GL series only.
pub fn apply(
    scheme: Scheme,
    f: &GridFunction,
    alpha: FracOrder,
    policy: MemoryPolicy,
) -> Result<GridFunction> {
    match (scheme, policy) {
        (Scheme::Gl, _) => gl_apply(f, alpha, policy),
        (_, MemoryPolicy::Truncated { .. }) => Err(Error::InvalidPolicy(format!(
            "memory truncation is only available for the gl scheme, not {}",
            scheme.name()
        ))),
        (Scheme::Rect, MemoryPolicy::Full) => rect_apply(f, alpha),
        (Scheme::Abm, MemoryPolicy::Full) => abm_apply(f, alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn order(a: f64) -> FracOrder {
        FracOrder::integration(a).unwrap()
    }

    #[test]
    fn gl_coefficient_examples() {
        assert_eq!(
            gl_coefficients(order(-0.5), 3).unwrap(),
            vec![1.0, 0.5, 0.375]
        );
        assert_eq!(gl_coefficients(order(-1.0), 4).unwrap(), vec![1.0; 4]);
        assert_eq!(
            gl_coefficients(order(-2.0), 4).unwrap(),
            vec![1.0, 2.0, 3.0, 4.0]
        );
        assert!(gl_coefficients(order(-1.0), 0).is_err());
    }

    #[test]
    fn order_validation() {
        assert!(FracOrder::integration(0.0).is_err());
        assert!(FracOrder::integration(0.3).is_err());
        assert!(FracOrder::integration(-2.0).is_ok());
        assert!(FracOrder::integration(-2.01).is_err());
        assert!(FracOrder::new(4.5).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
        assert!(FracOrder::new(1.5).is_ok());
    }

    #[test]
    fn schemes_reject_non_negative_orders() {
        let f = GridFunction::sample(10, |x| x).unwrap();
        let d = FracOrder::new(0.5).unwrap();
        assert!(matches!(
            gl_apply(&f, d, MemoryPolicy::Full),
            Err(Error::InvalidOrder(_))
        ));
        assert!(rect_apply(&f, d).is_err());
        assert!(abm_apply(&f, d).is_err());
    }

    #[test]
    fn gl_constant_half_order() {
        let f = GridFunction::sample(1000, |_| 1.0).unwrap();
        let out = gl_apply(&f, order(-0.5), MemoryPolicy::Full).unwrap();
        assert_abs_diff_eq!(out.last(), std::f64::consts::FRAC_2_SQRT_PI, epsilon = 5e-3);
    }

    #[test]
    fn gl_linear_first_order() {
        let f = GridFunction::sample(1000, |x| x).unwrap();
        let out = gl_apply(&f, order(-1.0), MemoryPolicy::Full).unwrap();
        assert_abs_diff_eq!(out.last(), 0.5, epsilon = 2e-3);
    }

    #[test]
    fn rect_examples() {
        let one = GridFunction::sample(1000, |_| 1.0).unwrap();
        // Σ_{j<n} 1 · h = 1 exactly: n left samples each of weight h.
        assert_abs_diff_eq!(
            rect_apply(&one, order(-1.0)).unwrap().last(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            rect_apply(&one, order(-0.5)).unwrap().last(),
            std::f64::consts::FRAC_2_SQRT_PI,
            epsilon = 5e-3
        );
        let lin = GridFunction::sample(1000, |x| x).unwrap();
        assert_abs_diff_eq!(
            rect_apply(&lin, order(-0.5)).unwrap().last(),
            0.752_252_8,
            epsilon = 5e-3
        );
    }

    #[test]
    fn abm_examples() {
        let one = GridFunction::sample(100, |_| 1.0).unwrap();
        assert_abs_diff_eq!(
            abm_apply(&one, order(-0.5)).unwrap().last(),
            std::f64::consts::FRAC_2_SQRT_PI,
            epsilon = 1e-4
        );
        let lin = GridFunction::sample(100, |x| x).unwrap();
        assert_abs_diff_eq!(
            abm_apply(&lin, order(-1.0)).unwrap().last(),
            0.5,
            epsilon = 1e-6
        );
    }

    #[test]
    fn node_zero_is_zero() {
        let f = GridFunction::sample(20, |x| 1.0 + x).unwrap();
        for scheme in [Scheme::Gl, Scheme::Rect, Scheme::Abm] {
            let out = apply(scheme, &f, order(-0.7), MemoryPolicy::Full).unwrap();
            assert_eq!(out.first(), 0.0, "{scheme:?}");
        }
    }

    #[test]
    fn truncation_needs_ten_steps() {
        let f = GridFunction::sample(100, |x| x).unwrap();
        let short = MemoryPolicy::Truncated {
            window_length: 0.05,
        };
        assert!(matches!(
            gl_apply(&f, order(-0.5), short),
            Err(Error::InvalidPolicy(_))
        ));
        let ok = MemoryPolicy::Truncated { window_length: 0.1 };
        assert!(gl_apply(&f, order(-0.5), ok).is_ok());
        assert!(apply(Scheme::Abm, &f, order(-0.5), ok).is_err());
    }

    #[test]
    fn truncation_with_full_window_is_exact() {
        let f = GridFunction::sample(50, |x| (3.0 * x).sin()).unwrap();
        let full = gl_apply(&f, order(-0.8), MemoryPolicy::Full).unwrap();
        let wide = gl_apply(
            &f,
            order(-0.8),
            MemoryPolicy::Truncated { window_length: 1.0 },
        )
        .unwrap();
        assert_eq!(full, wide);
    }

    #[test]
    fn abm_solve_relaxation() {
        // y' = -y, y(0) = 1 as an order-1 integral equation.
        let y = abm_solve(
            |_, y| -y,
            &[1.0],
            order(-1.0),
            100,
            0.01,
            CorrectorPasses::Single,
        )
        .unwrap();
        assert_abs_diff_eq!(y.last(), (-1.0f64).exp(), epsilon = 1e-4);
        let y2 = abm_solve(
            |_, y| -y,
            &[1.0],
            order(-1.0),
            100,
            0.01,
            CorrectorPasses::Double,
        )
        .unwrap();
        let exact = (-1.0f64).exp();
        assert!((y2.last() - exact).abs() < (y.last() - exact).abs());
    }

    #[test]
    fn abm_solve_fractional_relaxation() {
        // D^0.5 y = -y, y(0) = 1 has y = E_{1/2}(-√x) = exp(x) erfc(√x).
        let y = abm_solve(
            |_, y| -y,
            &[1.0],
            order(-0.5),
            400,
            1.0 / 400.0,
            CorrectorPasses::Single,
        )
        .unwrap();
        let exact = 1.0f64.exp() * (1.0 - crate::special::erf(1.0));
        assert_abs_diff_eq!(y.last(), exact, epsilon = 2e-3);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in [Scheme::Gl, Scheme::Rect, Scheme::Abm] {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("simpson".parse::<Scheme>().is_err());
    }
}
