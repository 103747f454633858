//! Special functions used by the fractional schemes and the oracles.

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive arguments, Lanczos approximation with g = 7.
///
/// Arguments below 1 are shifted up with `Γ(x) = Γ(x + 1) / x` so the series
/// is only ever evaluated where it is well conditioned.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain {
            function: "gamma",
            value: x,
        });
    }
    if x < 1.0 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // Split the power so large arguments do not overflow before the exp.
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * std::f64::consts::PI).sqrt() * half * (half * (-t).exp()) * acc
}

/// Gamma function for the scheme weights, where the argument is always
/// positive by construction.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    gamma_fn(x).expect("gamma argument is positive by construction")
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}
