//! Complex log-gamma, rising factorials, and binomial coefficients.
//!
//! `log_gamma` uses recurrence shift to a real part large enough for the
//! Stirling asymptotic series at the context's precision, with exact
//! Bernoulli numbers cached as rationals. The branch is the standard
//! analytic continuation: `log_gamma(z) = log_gamma(z+1) - ln z` with
//! principal logarithms, real on the positive real axis.

use crate::error::{Error, Result};
use crate::precision::{c_abs, is_nonpositive_integer, PrecisionContext};
use rug::ops::CompleteRound;
use rug::{Complex, Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Exact Bernoulli number `B_m` (convention `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Rational {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= m {
        let k = cache.len();
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        let mut acc = Rational::new();
        for (j, b) in cache.iter().enumerate() {
            let c = Integer::from(k as u32 + 1).binomial(j as u32);
            acc += b.clone() * Rational::from(c);
        }
        acc /= Rational::from(k as u32 + 1);
        cache.push(-acc);
    }
    cache[m].clone()
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(n).binomial(k)
}

/// Rising factorial `(x)_j = x (x+1) ⋯ (x+j-1)`, `(x)_0 = 1`.
///
/// Computed by direct product so it stays exact (a true zero) at
/// nonpositive-integer arguments.
pub fn pochhammer(x: &Complex, j: u32, ctx: &PrecisionContext) -> Complex {
    let mut acc = ctx.complex_one();
    for t in 0..j {
        acc *= (x + ctx.float(t)).complete(ctx.cprec());
    }
    acc
}

/// Real part the argument is shifted to before applying the Stirling series.
fn shift_target(ctx: &PrecisionContext) -> u32 {
    // The optimally truncated series bottoms out near exp(-2π·Re u); keep
    // that floor below the guard-extended working precision.
    ((ctx.digits() as f64 + 12.0) / 2.6).ceil().max(30.0) as u32
}

/// Principal-branch `log Γ(z)` for complex `z` off the poles.
pub fn log_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let eps = ctx.epsilon();
    if is_nonpositive_integer(z, &eps) {
        return Err(Error::Pole(format!(
            "log_gamma at nonpositive integer (z = {z})"
        )));
    }
    let target = ctx.float(shift_target(ctx));
    let mut u = z.clone();
    let mut shift = ctx.complex_zero();
    while *u.real() < target {
        shift += u.clone().ln();
        u += 1u32;
    }
    Ok(stirling_log_gamma(&u, ctx) - shift)
}

/// Γ(z) via `exp(log_gamma(z))`.
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(log_gamma(z, ctx)?.exp())
}

/// Stirling series at `u` with `Re u` at or above the shift target.
fn stirling_log_gamma(u: &Complex, ctx: &PrecisionContext) -> Complex {
    let prec = ctx.prec();
    let half = Float::with_val(prec, 0.5);
    let ln_two_pi = (ctx.pi() * 2u32).ln();
    let mut acc = (u - &half).complete(ctx.cprec()) * u.clone().ln() - u + ln_two_pi / 2u32;

    let inv_u = u.clone().recip();
    let inv_u2 = inv_u.clone().square();
    let mut pow = inv_u; // u^{-(2k-1)} for k = 1
    let tiny = ctx.pow10(-(ctx.digits() as i32) - 12);
    let mut prev_mag = Float::with_val(prec, rug::float::Special::Infinity);
    for k in 1..=1000u32 {
        let coef = bernoulli(2 * k as usize) / Rational::from((2 * k * (2 * k - 1), 1));
        let term = pow.clone() * Float::with_val(prec, &coef);
        let mag = c_abs(&term);
        if mag > prev_mag {
            // asymptotic floor reached
            break;
        }
        acc += term;
        if mag < tiny {
            break;
        }
        prev_mag = mag;
        pow *= &inv_u2;
    }
    acc
}
