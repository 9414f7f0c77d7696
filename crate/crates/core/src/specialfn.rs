//! Real special functions on `s > 1`: log-gamma, digamma, the Riemann zeta
//! function and its derivative, the correction factor `F(s)`, and the
//! `G`-functions whose sign pattern extends the bound to odd characters.
//!
//! Everything is plain `f64` with Euler–Maclaurin / Stirling tails; the
//! Bernoulli coefficients below carry the series far past the 1e-12 targets
//! on the domains used here.

use serde::{Deserialize, Serialize};

use crate::trigpoly::CoefficientVector;
use crate::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.5772156649015329;
/// First Stieltjes constant γ₁ (Laurent coefficient of ζ at s = 1).
const STIELTJES_1: f64 = -0.0728158454836767;

/// Character parity ε: 0 when χ(-1) = 1, 1 when χ(-1) = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn epsilon(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.epsilon())
    }
}

/// Bernoulli numbers B₂ … B₂₀.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// B₂ⱼ/(2j)! for j = 1..=10, the Euler–Maclaurin tail coefficients.
const EM_COEF: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

/// ln Γ(x) for x > 0: upward recurrence to x ≥ 12, then the Stirling series.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 12.0 {
        shift += y.ln();
        y += 1.0;
    }
    let mut series = 0.0;
    let y2 = y * y;
    let mut ypow = y;
    for (n, &b2n) in BERNOULLI.iter().enumerate().take(8) {
        let k = 2 * (n + 1);
        series += b2n / ((k * (k - 1)) as f64 * ypow);
        ypow *= y2;
    }
    let half_ln_2pi = 0.9189385332046727;
    Ok((y - 0.5) * y.ln() - y + half_ln_2pi + series - shift)
}

/// ψ(x) = Γ'(x)/Γ(x) for x > 0: recurrence ψ(x) = ψ(x+1) - 1/x up to x ≥ 12,
/// then the Bernoulli asymptotic series.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut p = inv2;
    for (n, &b2n) in BERNOULLI.iter().enumerate().take(8) {
        series += b2n / (2.0 * (n + 1) as f64) * p;
        p *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

/// Euler–Maclaurin node count; ensures the tail dies well below 1e-15.
const ZETA_CUTOFF: usize = 24;

/// ζ(s) for s > 1 by Euler–Maclaurin with the B₂ⱼ tail.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("zeta requires s > 1, got {s}")));
    }
    let n = ZETA_CUTOFF as f64;
    let mut sum = 0.0;
    for k in 1..ZETA_CUTOFF {
        sum += (k as f64).powf(-s);
    }
    let n_pow = n.powf(-s); // N^{-s}
    sum += n_pow * n / (s - 1.0) + 0.5 * n_pow;
    // correction terms: coef_j * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s; // product of (s + i), i = 0..2j-2
    let mut npow = n_pow / n; // N^{-s-1}
    let inv_n2 = 1.0 / (n * n);
    for (j, &coef) in EM_COEF.iter().enumerate() {
        sum += coef * rising * npow;
        let base = (2 * j + 1) as f64;
        rising *= (s + base) * (s + base + 1.0);
        npow *= inv_n2;
    }
    Ok(sum)
}

/// ζ'(s) for s > 1: the Euler–Maclaurin formula differentiated term by term.
pub fn zeta_prime(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("zeta_prime requires s > 1, got {s}")));
    }
    let n = ZETA_CUTOFF as f64;
    let ln_n = n.ln();
    let mut sum = 0.0;
    for k in 2..ZETA_CUTOFF {
        let kf = k as f64;
        sum -= kf.ln() * kf.powf(-s);
    }
    let n_pow = n.powf(-s);
    // d/ds [N^{1-s}/(s-1)] and d/ds [N^{-s}/2]
    sum += -ln_n * n_pow * n / (s - 1.0) - n_pow * n / ((s - 1.0) * (s - 1.0));
    sum += -0.5 * ln_n * n_pow;
    let mut rising = s;
    let mut harmonic = 1.0 / s; // Σ 1/(s+i) over the factors of `rising`
    let mut npow = n_pow / n;
    let inv_n2 = 1.0 / (n * n);
    for (j, &coef) in EM_COEF.iter().enumerate() {
        sum += coef * npow * rising * (harmonic - ln_n);
        let base = (2 * j + 1) as f64;
        rising *= (s + base) * (s + base + 1.0);
        harmonic += 1.0 / (s + base) + 1.0 / (s + base + 1.0);
        npow *= inv_n2;
    }
    Ok(sum)
}

/// τ(s) = (1 + √(1 + 4s²)) / 2.
pub fn tau(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::Domain(format!("tau requires finite s, got {s}")));
    }
    Ok(0.5 * (1.0 + (1.0 + 4.0 * s * s).sqrt()))
}

/// (s-1)·ζ(s), switching to the Laurent expansion `1 + γ(s-1) + γ₁(s-1)² + …`
/// below s-1 = 1e-6 to dodge the pole cancellation.
fn zeta_times_s_minus_1(s: f64) -> Result<f64> {
    let t = s - 1.0;
    if t < 1e-6 {
        Ok(1.0 + EULER_GAMMA * t - STIELTJES_1 * t * t)
    } else {
        Ok(t * zeta(s)?)
    }
}

/// `F(s) = Γ(s/2) ζ(2s) / (Γ(1/2) ζ(2) ζ(s) (s-1))` on 1 < s ≤ 3.
pub fn f_of_s(s: f64) -> Result<f64> {
    if !(s > 1.0 && s <= 3.0) {
        return Err(Error::Domain(format!("F(s) requires 1 < s <= 3, got {s}")));
    }
    let ln_gamma_half = 0.5723649429247001; // ln Γ(1/2) = ln √π
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    let gamma_ratio = (ln_gamma(s / 2.0)? - ln_gamma_half).exp();
    Ok(gamma_ratio * zeta(2.0 * s)? / (zeta2 * zeta_times_s_minus_1(s)?))
}

fn g_shifted(s: f64, eps: f64) -> Result<f64> {
    let t = tau(s)?;
    let sqrt5 = 5.0f64.sqrt();
    Ok(digamma((s + eps) / 2.0)?
        - digamma((t + eps) / 2.0)? / sqrt5
        - 2.0 / sqrt5 * zeta_prime(t)? / zeta(t)?)
}

/// `G₀(s) = ψ(s/2) - ψ(τ(s)/2)/√5 - (2/√5)·ζ'(τ(s))/ζ(τ(s))` for s > 1.
pub fn g0(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("G0 requires s > 1, got {s}")));
    }
    g_shifted(s, 0.0)
}

/// `G₁`: the same expression with the digamma arguments shifted by 1/2.
pub fn g1(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("G1 requires s > 1, got {s}")));
    }
    g_shifted(s, 1.0)
}

/// `G(a, χ, s) = Σ_{k≥2} aₖ (ψ((s+εₖ)/2) - ψ((τ+εₖ)/2)/√5 - (2/√5)ζ'/ζ(τ))`
/// with `εₖ = 0` for even χ and `εₖ = k mod 2` for odd χ. Independent of
/// a₀ and a₁.
pub fn g_value(v: &CoefficientVector, parity: Parity, s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("G requires s > 1, got {s}")));
    }
    if v.m < 2 {
        return Ok(0.0);
    }
    let mut even_sum = 0.0;
    let mut odd_sum = 0.0;
    for (k, &ak) in v.a.iter().enumerate().skip(2) {
        if matches!(parity, Parity::Odd) && k % 2 == 1 {
            odd_sum += ak;
        } else {
            even_sum += ak;
        }
    }
    let mut total = even_sum * g0(s)?;
    if odd_sum != 0.0 {
        total += odd_sum * g1(s)?;
    }
    Ok(total)
}

/// Outcome of a grid check of the `G` sign inequalities on `(1, s_hi]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridCheckReport {
    pub s_lo: f64,
    pub s_hi: f64,
    pub step: f64,
    /// Least slack observed across all checked inequalities.
    pub margin: f64,
    pub pass: bool,
}

/// Checks the `G` inequalities on a grid over `(1, s_max]`:
/// odd parity requires `G₀ ≤ 0`, `G₁ ≥ 0`, and `G₁ ≤ -G₀`; even parity
/// requires `G₀ ≤ 0` only. The report's margin is the smallest slack, so
/// `pass` holds exactly when every inequality is strict on the grid.
pub fn verify_g_inequalities(parity: Parity, s_max: f64, step: f64) -> Result<GridCheckReport> {
    if !(step > 0.0) {
        return Err(Error::Domain("step must be positive".into()));
    }
    if !(s_max > 1.0) {
        return Err(Error::Domain("s_max must exceed 1".into()));
    }
    let mut margin = f64::INFINITY;
    let mut k = 1u64;
    loop {
        let s = (1.0 + k as f64 * step).min(s_max);
        let slack = match parity {
            Parity::Even => -g0(s)?,
            Parity::Odd => {
                let g0s = g0(s)?;
                let g1s = g1(s)?;
                (-g0s).min(g1s).min(-g0s - g1s)
            }
        };
        margin = margin.min(slack);
        if s >= s_max {
            break;
        }
        k += 1;
    }
    Ok(GridCheckReport {
        s_lo: 1.0,
        s_hi: s_max,
        step,
        margin,
        pass: margin > 0.0,
    })
}
