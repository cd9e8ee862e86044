use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::value::C64;

/// Distance below which an argument is treated as sitting on a Gamma pole.
pub const POLE_EPS: f64 = 1e-9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// If `z` lies within `eps` of −n for some n ∈ ℕ₀, returns n.
pub fn nonpositive_integer(z: C64, eps: f64) -> Option<i64> {
    if z.re > eps {
        return None;
    }
    let n = (-z.re).round();
    if (z + C64::new(n, 0.0)).norm() < eps && n < 1e15 {
        Some(n as i64)
    } else {
        None
    }
}

/// Principal branch of log Γ(z), continuous off the negative real axis and
/// matching the usual convention Im log Γ(x ± 0i) on it.
pub fn log_gamma(z: C64) -> Result<C64> {
    if let Some(n) = nonpositive_integer(z, POLE_EPS) {
        return Err(Error::PoleAtNonpositiveInteger(-n));
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: C64) -> C64 {
    if z.re >= 0.5 {
        return lanczos(z);
    }
    // Reflection with the branch correction that keeps the result on the
    // principal branch.
    let turns = (0.5 * z.re + 0.25).floor();
    let shift = if z.im.is_sign_negative() { -2.0 * PI } else { 2.0 * PI } * turns;
    C64::new(LN_PI, shift) - log_sinpi(z) - lanczos(C64::new(1.0, 0.0) - z)
}

fn lanczos(z: C64) -> C64 {
    let zm = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    C64::new(LN_SQRT_2PI, 0.0) + (zm + 0.5) * t.ln() - t + x.ln()
}

/// sin(πz) with exact reduction of the real part.
pub fn sinpi(z: C64) -> C64 {
    let (s, c) = sincospi_real(z.re);
    let y = PI * z.im;
    C64::new(s * y.cosh(), c * y.sinh())
}

fn sincospi_real(x: f64) -> (f64, f64) {
    // Reduce to r ∈ [−1, 1], then fold into [−½, ½] so small arguments keep
    // full relative accuracy.
    let r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        let (s, c) = (PI * (1.0 - r)).sin_cos();
        (s, -c)
    } else if r < -0.5 {
        let (s, c) = (PI * (r + 1.0)).sin_cos();
        (-s, -c)
    } else {
        (PI * r).sin_cos()
    }
}

/// Principal logarithm of sin(πz), safe for large |Im z|.
fn log_sinpi(z: C64) -> C64 {
    if z.im.abs() < 20.0 {
        return sinpi(z).ln();
    }
    // sin(πz) = ∓ e^{∓iπz}(1 − e^{±2iπz}) / (2i), the exponential small.
    let i = C64::new(0.0, 1.0);
    let raw = if z.im > 0.0 {
        -i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln() - C64::new(2.0f64.ln(), PI / 2.0) + C64::new(0.0, PI)
    } else {
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() - C64::new(2.0f64.ln(), PI / 2.0)
    };
    C64::new(raw.re, wrap_angle(raw.im))
}

/// Reduce an angle into (−π, π].
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = a - two_pi * (a / two_pi).round();
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

/// Γ(z), returned as zero-free complex. Poles are reported as errors.
pub fn gamma(z: C64) -> Result<C64> {
    log_gamma(z).map(|l| l.exp())
}
