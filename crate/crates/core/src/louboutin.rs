//! The constant pipeline: an admissible coefficient vector yields constants
//! `A`, `c`, `λ` and the conductor threshold `q_min`, which combine with
//! `F(s(q))` into the lower bound `|L(1,χ)| ≥ F(s(q)) / (λ log(q/π))`.

use serde::{Deserialize, Serialize};

use crate::specialfn::f_of_s;
use crate::trigpoly::CoefficientVector;
use crate::{Error, Result};

/// Largest admissible `s(q)`; the bound is valid only for conductors with
/// `s(q) ≤ S_Q_LIMIT` (the even/odd `G` checks both clear this value).
pub const S_Q_LIMIT: f64 = 1.92326;

/// Derived constants of an admissible coefficient vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LouboutinConstants {
    /// `A = (1 - 1/√5) Σ_{k≥2} aₖ` (zero at degree 1).
    #[serde(rename = "A")]
    pub tail_weight: f64,
    /// Positive root of `2(2a₁-a₀)c² - (a₀+2a₁+4A)c - (a₁+A) = 0`.
    pub c: f64,
    /// `λ = 12 a₁ c² / (π² e^{1/(2c)} ((2a₁-a₀)c - (a₁+A)))`.
    pub lambda: f64,
    /// Smallest real conductor with `s(q) ≤ 1.92326`: `π e^{1/(0.92326 c)}`.
    pub q_min: f64,
}

/// Evaluation of the bound at one conductor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: f64,
    pub s_q: f64,
    /// `F(s(q))`, when `s(q)` lies in the domain of `F`.
    #[serde(rename = "F_value")]
    pub f_value: Option<f64>,
    /// `F(s(q)) / (λ log(q/π))`, when computable.
    pub bound: Option<f64>,
    pub valid: bool,
    pub reason: String,
}

/// Core of [`derive_constants`] on the three quantities λ depends on.
/// Returns `None` when the inputs are inadmissible or the denominator
/// degenerates (possible only at the admissibility boundary).
pub(crate) fn lambda_from_sums(a0: f64, a1: f64, tail_sum: f64) -> Option<(f64, f64)> {
    let margin = 2.0 * a1 - a0;
    if !(margin > 0.0) {
        return None;
    }
    let big_a = (1.0 - 1.0 / 5.0f64.sqrt()) * tail_sum;
    let p = a0 + 2.0 * a1 + 4.0 * big_a;
    let w = a1 + big_a;
    let c = (p + (margin * margin + 16.0 * w * w).sqrt()) / (4.0 * margin);
    let denom = margin * c - w;
    if !(denom > 0.0) || !c.is_finite() {
        return None;
    }
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let lambda = 12.0 * a1 * c * c / (pi2 * (0.5 / c).exp() * denom);
    if !lambda.is_finite() {
        return None;
    }
    Some((c, lambda))
}

/// Derives `A`, `c`, `λ`, and `q_min` from an admissible vector.
pub fn derive_constants(v: &CoefficientVector) -> Result<LouboutinConstants> {
    if !v.is_admissible() {
        return Err(Error::Inadmissible(format!(
            "constants need all aᵢ ≥ 0 and a₀ < 2a₁ (got a = {:?})",
            v.a
        )));
    }
    let tail_sum: f64 = v.a.iter().skip(2).sum();
    let tail_weight = (1.0 - 1.0 / 5.0f64.sqrt()) * tail_sum;
    let (c, lambda) = lambda_from_sums(v.a[0], v.a[1], tail_sum).ok_or_else(|| {
        Error::Degenerate(format!(
            "(2a₁-a₀)c - (a₁+A) is not positive for a = {:?}",
            v.a
        ))
    })?;
    let q_min = std::f64::consts::PI * (1.0 / ((S_Q_LIMIT - 1.0) * c)).exp();
    Ok(LouboutinConstants {
        tail_weight,
        c,
        lambda,
        q_min,
    })
}

/// `s(q) = 1 + 1/(c log(q/π))`, strictly decreasing in q.
pub fn s_of_q(c: f64, q: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("s(q) requires c > 0, got {c}")));
    }
    if !(q > std::f64::consts::PI) {
        return Err(Error::Domain(format!("s(q) requires q > π, got {q}")));
    }
    Ok(1.0 + 1.0 / (c * (q / std::f64::consts::PI).ln()))
}

/// Evaluates the bound `F(s(q)) / (λ log(q/π))` at conductor `q`, reporting
/// whether the validity condition `s(q) ≤ 1.92326` holds. The nonnegativity
/// hypothesis on `S(a,χ,n)` is the caller's responsibility.
pub fn bound_at(v: &CoefficientVector, q: f64) -> Result<BoundReport> {
    let constants = derive_constants(v)?;
    let s_q = s_of_q(constants.c, q)?;
    let f_value = if s_q <= 3.0 { Some(f_of_s(s_q)?) } else { None };
    let bound = f_value.map(|f| f / (constants.lambda * (q / std::f64::consts::PI).ln()));
    let (valid, reason) = if s_q <= S_Q_LIMIT {
        (true, String::from("s(q) within the validity range"))
    } else {
        (
            false,
            format!(
                "s(q) = {s_q:.6} exceeds {S_Q_LIMIT}; conductor below q_min = {:.6}",
                constants.q_min
            ),
        )
    };
    Ok(BoundReport {
        q,
        s_q,
        f_value,
        bound,
        valid,
        reason,
    })
}

/// `λ / F(s(q₀))`: the constant valid for every `q ≥ q₀` once a scan
/// certifies the smaller conductors (F and s are both decreasing there).
pub fn all_q_constant(v: &CoefficientVector, q0: f64) -> Result<f64> {
    let constants = derive_constants(v)?;
    let s_q = s_of_q(constants.c, q0)?;
    Ok(constants.lambda / f_of_s(s_q)?)
}
