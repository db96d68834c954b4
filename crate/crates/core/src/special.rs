//! Log-gamma, gamma and beta for positive real arguments.
//!
//! `ln Γ` uses the Taylor series of `ln Γ(2 + z)` on `[1.5, 2.5)`, upward
//! recurrence below it, downward recurrence to that window for moderate
//! arguments, and the Stirling series from 12 upward. The series keeps full
//! relative accuracy next to the zeros of `ln Γ` at 1 and 2.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// `zeta(k) - 1` for `k = 2..=32`.
#[allow(clippy::excessive_precision)]
const ZETA_MINUS_ONE: [f64; 31] = [
    0.644_934_066_848_226_436_47,
    0.202_056_903_159_594_285_4,
    0.082_323_233_711_138_191_516,
    0.036_927_755_143_369_926_331,
    0.017_343_061_984_449_139_715,
    0.008_349_277_381_922_826_839_8,
    0.004_077_356_197_944_339_378_7,
    0.002_008_392_826_082_214_417_9,
    0.000_994_575_127_818_085_337_15,
    0.000_494_188_604_119_464_558_7,
    0.000_246_086_553_308_048_298_64,
    0.000_122_713_347_578_489_146_75,
    6.124_813_505_870_482_925_9e-5,
    3.058_823_630_702_049_355_2e-5,
    1.528_225_940_865_187_173_3e-5,
    7.637_197_637_899_762_273_6e-6,
    3.817_293_264_999_839_856_5e-6,
    1.908_212_716_553_938_925_7e-6,
    9.539_620_338_727_961_131_5e-7,
    4.769_329_867_878_064_631_2e-7,
    2.384_505_027_277_329_9e-7,
    1.192_199_259_653_110_730_7e-7,
    5.960_818_905_125_947_961_2e-8,
    2.980_350_351_465_228_018_6e-8,
    1.490_155_482_836_504_123_5e-8,
    7.450_711_789_835_429_492e-9,
    3.725_334_024_788_457_054_8e-9,
    1.862_659_723_513_049_006_4e-9,
    9.313_274_324_196_681_828_7e-10,
    4.656_629_065_033_784_073e-10,
    2.328_311_833_676_505_492e-10,
];

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_CUTOVER: f64 = 12.0;

/// `ln Γ(2 + z)` for `|z| <= 1/2`.
fn ln_gamma_near_two<R: Real>(z: R) -> R {
    let mut sum = R::zero();
    // highest order first
    for (i, &zm1) in ZETA_MINUS_ONE.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if (i + 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum = (sum + R::c(sign * zm1 / k)) * z;
    }
    (sum + R::c(1.0 - EULER_GAMMA)) * z
}

fn ln_gamma_stirling<R: Real>(x: R) -> R {
    let half_ln_two_pi = R::c(0.918_938_533_204_672_7);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = R::zero();
    for &coef in STIRLING.iter().rev() {
        corr = corr * inv2 + R::c(coef);
    }
    (x - R::c(0.5)) * x.ln() - x + half_ln_two_pi + corr * inv
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn log_gamma<R: Real>(x: R) -> Result<R> {
    if !(x > R::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires a finite positive argument, got {x:?}")));
    }
    Ok(log_gamma_unchecked(x))
}

fn log_gamma_unchecked<R: Real>(x: R) -> R {
    let one = R::one();
    let lo = R::c(1.5);
    let hi = R::c(2.5);
    if x < lo {
        // ln Γ(x) = ln Γ(x + m) - ln(x (x+1) .. (x+m-1))
        let mut shifted = x;
        let mut prod = one;
        while shifted < lo {
            prod = prod * shifted;
            shifted = shifted + one;
        }
        ln_gamma_near_two(shifted - R::c(2.0)) - prod.ln()
    } else if x < hi {
        ln_gamma_near_two(x - R::c(2.0))
    } else if x < R::c(STIRLING_CUTOVER) {
        let mut shifted = x;
        let mut prod = one;
        while shifted >= hi {
            shifted = shifted - one;
            prod = prod * shifted;
        }
        ln_gamma_near_two(shifted - R::c(2.0)) + prod.ln()
    } else {
        ln_gamma_stirling(x)
    }
}

/// `Γ(x)` for `x > 0`.
pub fn gamma<R: Real>(x: R) -> Result<R> {
    log_gamma(x).map(|v| v.exp())
}

/// `ln B(u, v)` for `u, v > 0`.
pub fn log_beta<R: Real>(u: R, v: R) -> Result<R> {
    if !(u > R::zero()) || !(v > R::zero()) {
        return Err(Error::domain(format!("beta requires positive arguments, got ({u:?}, {v:?})")));
    }
    Ok(log_gamma(u)? + log_gamma(v)? - log_gamma(u + v)?)
}

/// Euler beta function `B(u, v) = Γ(u) Γ(v) / Γ(u + v)`, computed in log
/// space.
pub fn beta<R: Real>(u: R, v: R) -> Result<R> {
    log_beta(u, v).map(|v| v.exp())
}
