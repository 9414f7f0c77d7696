//! Even real trigonometric polynomials in the normalization
//! `S(a,θ) = a₀ + 2Σₖ aₖ cos(kθ)`.
//!
//! A vector is *admissible* when every entry is nonnegative and `a₀ < 2a₁`
//! (strictly). Vectors built as autocorrelations of a generator sequence
//! are nonnegative everywhere by construction, since then
//! `S(a,θ) = |Σ bₖ e^{ikθ}|²`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default sampling step (radians) for [`CoefficientVector::global_min`].
pub const DEFAULT_MIN_RESOLUTION: f64 = 1e-4;

/// Coefficients `(a₀, …, a_m)` of an even real trigonometric polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    /// Degree `m`; always `a.len() - 1`.
    pub m: usize,
    /// Coefficients `a₀, …, a_m`.
    pub a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Certified global-minimum report for `S(a,θ)` over the reals.
///
/// `min_value` is an attained value of `S`, and the true global minimum is
/// guaranteed to lie in `[min_value - error_bound, min_value]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinReport {
    /// Location of the reported minimum, in `[0, π]` (the polynomial is even).
    pub theta_star: f64,
    /// Least sampled value of `S`.
    pub min_value: f64,
    /// Rigorous bound on `true minimum - min_value`, from the slope bound
    /// `|S'| ≤ 2 Σ k|aₖ|` on the sampling grid, tightened by refinement.
    pub error_bound: f64,
}

impl CoefficientVector {
    /// Builds a vector from raw coefficients, rejecting empty or non-finite input.
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Domain("coefficient vector must be nonempty".into()));
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("coefficient entries must be finite".into()));
        }
        Ok(Self {
            m: a.len() - 1,
            a,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Checks the structural invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() || self.m != self.a.len() - 1 {
            return Err(Error::Domain(format!(
                "length mismatch: m={} but {} coefficients",
                self.m,
                self.a.len()
            )));
        }
        if self.a.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("coefficient entries must be finite".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Self = serde_json::from_str(text)?;
        v.validate()?;
        Ok(v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coefficient vector serializes")
    }

    /// `S(a,θ) = a₀ + 2 Σₖ aₖ cos(kθ)`.
    pub fn eval(&self, theta: f64) -> Result<f64> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite, got {theta}")));
        }
        Ok(self.eval_unchecked(theta))
    }

    pub(crate) fn eval_unchecked(&self, theta: f64) -> f64 {
        let mut s = self.a[0];
        for (k, &ak) in self.a.iter().enumerate().skip(1) {
            s += 2.0 * ak * (k as f64 * theta).cos();
        }
        s
    }

    /// `S_d(a,θ)`: keeps only the harmonics whose index is divisible by `d`,
    /// so `eval_stride(1, θ) == eval(θ)`.
    pub fn eval_stride(&self, d: usize, theta: f64) -> Result<f64> {
        if d < 1 {
            return Err(Error::Domain("stride must be at least 1".into()));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite, got {theta}")));
        }
        let mut s = self.a[0];
        let mut k = d;
        while k <= self.m {
            s += 2.0 * self.a[k] * (k as f64 * theta).cos();
            k += d;
        }
        Ok(s)
    }

    /// Values `S(a, 2πk/d)` for `0 ≤ k < d`.
    ///
    /// Harmonic angles are reduced mod 2π before the cosine (`kj mod d`),
    /// matching the order-search evaluation bit for bit, so a vector accepted
    /// there reports a zero deficit here.
    pub fn values_at_roots(&self, d: usize) -> Result<Vec<f64>> {
        if d < 2 {
            return Err(Error::Domain("root count d must be at least 2".into()));
        }
        let step = 2.0 * std::f64::consts::PI / d as f64;
        Ok((0..d)
            .map(|j| {
                let mut s = self.a[0];
                for (k, &ak) in self.a.iter().enumerate().skip(1) {
                    s += 2.0 * ak * ((k * j % d) as f64 * step).cos();
                }
                s
            })
            .collect())
    }

    /// Total nonnegativity violation at the d-th roots of unity:
    /// `-Σₖ min(0, S(a, 2πk/d))`. Zero exactly when every root value is ≥ 0.
    pub fn feasibility_deficit(&self, d: usize) -> Result<f64> {
        let vals = self.values_at_roots(d)?;
        Ok(vals.iter().map(|&v| -v.min(0.0)).sum())
    }

    /// All entries nonnegative and `a₀ < 2a₁` (strict). Degree-0 vectors are
    /// never admissible.
    pub fn is_admissible(&self) -> bool {
        self.m >= 1 && self.a.iter().all(|&x| x >= 0.0) && self.a[0] < 2.0 * self.a[1]
    }

    /// Pointwise product: returns `r` with `S(r,θ) = S(p,θ)·S(q,θ)`.
    ///
    /// The product is a convolution of the two-sided exponential coefficient
    /// sequences (`ã₀ = a₀`, `ã₊ₖ = ã₋ₖ = aₖ`), folded back to this
    /// normalization.
    pub fn multiply(&self, other: &CoefficientVector) -> CoefficientVector {
        let (p, q) = (&self.a, &other.a);
        let deg = self.m + other.m;
        let mut r = vec![0.0; deg + 1];
        // two-sided index i runs over -self.m ..= self.m
        for i in -(self.m as i64)..=(self.m as i64) {
            let pi = p[i.unsigned_abs() as usize];
            if pi == 0.0 {
                continue;
            }
            for j in -(other.m as i64)..=(other.m as i64) {
                let k = i + j;
                if k >= 0 {
                    r[k as usize] += pi * q[j.unsigned_abs() as usize];
                }
            }
        }
        CoefficientVector {
            m: deg,
            a: r,
            label: None,
        }
    }

    /// Upper bound on `|S'(θ)|`: `2 Σ k|aₖ|`.
    pub fn slope_bound(&self) -> f64 {
        2.0 * self
            .a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &ak)| k as f64 * ak.abs())
            .sum::<f64>()
    }

    /// Upper bound on `|S''(θ)|`: `2 Σ k²|aₖ|`.
    fn curvature_bound(&self) -> f64 {
        2.0 * self
            .a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &ak)| (k * k) as f64 * ak.abs())
            .sum::<f64>()
    }

    fn derivative_at(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for (k, &ak) in self.a.iter().enumerate().skip(1) {
            s -= 2.0 * k as f64 * ak * (k as f64 * theta).sin();
        }
        s
    }

    /// Certified global minimum of `S` over the reals.
    ///
    /// Samples `[0, π]` (evenness and periodicity cover the rest) on a grid of
    /// step ≤ `resolution`, then refines by interval subdivision. Each interval
    /// is discarded once its Taylor lower bound
    /// `S(mid) - |S'(mid)|·w/2 - K·w²/8` (with `K = 2Σk²|aₖ|`) clears the
    /// incumbent, so the reported `error_bound` is rigorous.
    pub fn global_min(&self, resolution: f64) -> Result<MinReport> {
        if !(resolution > 0.0) {
            return Err(Error::Domain("resolution must be positive".into()));
        }
        let pi = std::f64::consts::PI;
        let slope = self.slope_bound();
        let curvature = self.curvature_bound();
        // sup |S| ≤ |a₀| + 2Σ|aₖ|
        let scale: f64 =
            self.a[0].abs() + 2.0 * self.a.iter().skip(1).map(|x| x.abs()).sum::<f64>();
        // Absolute refinement target; keeps the certificate a few orders above
        // f64 rounding of the evaluations themselves.
        let gap = 1e-13 * scale.max(1.0);

        let n = ((pi / resolution).ceil() as usize).max(1);
        let h = pi / n as f64;
        let mut best = f64::INFINITY;
        let mut best_theta = 0.0;
        let consider = |theta: f64, value: f64, best: &mut f64, best_theta: &mut f64| {
            if value < *best {
                *best = value;
                *best_theta = theta;
            }
        };
        let grid: Vec<f64> = (0..=n).map(|i| self.eval_unchecked(i as f64 * h)).collect();
        for (i, &v) in grid.iter().enumerate() {
            consider(i as f64 * h, v, &mut best, &mut best_theta);
        }

        // floor_lb collects certified lower bounds of all retired intervals.
        let mut floor_lb = f64::INFINITY;
        let mut stack: Vec<(f64, f64)> =
            (0..n).map(|i| (i as f64 * h, (i + 1) as f64 * h)).collect();
        let mut evals: u64 = 0;
        const MAX_EVALS: u64 = 20_000_000;
        while let Some((lo, hi)) = stack.pop() {
            let w = hi - lo;
            let mid = 0.5 * (lo + hi);
            let s_mid = self.eval_unchecked(mid);
            evals += 1;
            consider(mid, s_mid, &mut best, &mut best_theta);
            let lb_taylor =
                s_mid - self.derivative_at(mid).abs() * 0.5 * w - curvature * w * w * 0.125;
            let lb_lipschitz = s_mid - slope * 0.5 * w;
            let lb = lb_taylor.max(lb_lipschitz);
            if lb >= best - gap || w < 1e-15 || evals >= MAX_EVALS {
                floor_lb = floor_lb.min(lb);
                continue;
            }
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
        if floor_lb.is_infinite() {
            floor_lb = best; // degenerate: everything pruned against the grid
        }
        Ok(MinReport {
            theta_star: best_theta,
            min_value: best,
            error_bound: (best - floor_lb).max(0.0),
        })
    }

    /// Uniform samples `(θ, S(θ))` over `[from, to]`, endpoints included.
    pub fn sample(&self, from: f64, to: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
        if samples < 2 {
            return Err(Error::Domain("need at least 2 samples".into()));
        }
        if !from.is_finite() || !to.is_finite() || to <= from {
            return Err(Error::Domain("malformed theta range".into()));
        }
        let step = (to - from) / (samples - 1) as f64;
        Ok((0..samples)
            .map(|i| {
                let theta = from + i as f64 * step;
                (theta, self.eval_unchecked(theta))
            })
            .collect())
    }
}

/// Generator sequence `b` with `b₀ = 1`; its aperiodic autocorrelations give a
/// coefficient vector that is nonnegative everywhere by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSequence {
    /// Entries `b₀, …, b_m` with `b₀ = 1`.
    pub b: Vec<f64>,
    /// Coefficient bound used at random initialization (`bₖ ∈ [0, B]`).
    #[serde(rename = "B")]
    pub bound: f64,
}

impl GeneratorSequence {
    pub fn new(b: Vec<f64>, bound: f64) -> Result<Self> {
        if b.is_empty() || b[0] != 1.0 {
            return Err(Error::Domain(
                "generator sequence must start with b₀ = 1".into(),
            ));
        }
        if b.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("generator entries must be finite".into()));
        }
        Ok(Self { b, bound })
    }

    pub fn degree(&self) -> usize {
        self.b.len() - 1
    }

    /// `aₖ = Σⱼ bⱼ bⱼ₊ₖ`, so that `S(a,θ) = |Σ bₖ e^{ikθ}|²`.
    pub fn autocorrelate(&self) -> CoefficientVector {
        let b = &self.b;
        let m = b.len() - 1;
        let a = (0..=m)
            .map(|k| (0..=m - k).map(|j| b[j] * b[j + k]).sum())
            .collect();
        CoefficientVector { m, a, label: None }
    }
}

/// Applies `bₖ ← bₖ + δ` and updates the autocorrelations in place with O(m)
/// arithmetic. `a` must equal the autocorrelation of `b` on entry.
pub(crate) fn shift_generator(a: &mut [f64], b: &mut [f64], k: usize, delta: f64) {
    let m = b.len() - 1;
    debug_assert!(k >= 1 && k <= m && a.len() == b.len());
    for j in 1..=m {
        let mut change = 0.0;
        if j + k <= m {
            change += b[j + k];
        }
        if k >= j {
            change += b[k - j];
        }
        a[j] += delta * change;
    }
    a[0] += delta * (2.0 * b[k] + delta);
    b[k] += delta;
}

/// Pure version of the O(m) incremental autocorrelation step: returns the
/// `(coefficients, generator)` pair after `bₖ ← bₖ + delta`.
pub fn update_autocorrelation(
    v: &CoefficientVector,
    g: &GeneratorSequence,
    k: usize,
    delta: f64,
) -> Result<(CoefficientVector, GeneratorSequence)> {
    let m = g.degree();
    if k < 1 || k > m {
        return Err(Error::Domain(format!(
            "generator index {k} outside 1..={m}"
        )));
    }
    let mut a = v.a.clone();
    let mut b = g.b.clone();
    shift_generator(&mut a, &mut b, k, delta);
    Ok((
        CoefficientVector {
            m: v.m,
            a,
            label: v.label.clone(),
        },
        GeneratorSequence { b, bound: g.bound },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn cv(a: &[f64]) -> CoefficientVector {
        CoefficientVector::new(a.to_vec()).unwrap()
    }

    #[test]
    fn eval_known_points() {
        assert_abs_diff_eq!(cv(&[1.0, 1.0]).eval(0.0).unwrap(), 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(
            cv(&[1.0, 1.0]).eval(2.0 * PI / 3.0).unwrap(),
            0.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(cv(&[2.0, 2.0, 1.0]).eval(PI).unwrap(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn eval_rejects_non_finite() {
        assert!(cv(&[1.0, 1.0]).eval(f64::NAN).is_err());
        assert!(cv(&[1.0, 1.0]).eval(f64::INFINITY).is_err());
    }

    #[test]
    fn stride_evaluation() {
        let v = cv(&[1.0, 1.0]);
        assert_abs_diff_eq!(
            v.eval_stride(1, 0.7).unwrap(),
            v.eval(0.7).unwrap(),
            epsilon = 1e-15
        );
        // no index divisible by 2 at degree 1
        assert_abs_diff_eq!(v.eval_stride(2, 1.234).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            cv(&[2.0, 2.0, 1.0]).eval_stride(2, PI / 2.0).unwrap(),
            0.0,
            epsilon = 1e-13
        );
        assert!(v.eval_stride(0, 1.0).is_err());
    }

    #[test]
    fn roots_and_deficit() {
        let vals = cv(&[1.0, 1.0]).values_at_roots(3).unwrap();
        assert_eq!(vals.len(), 3);
        assert_abs_diff_eq!(vals[0], 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[1], 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[2], 0.0, epsilon = 1e-13);

        let vals = cv(&[1.0, 0.6]).values_at_roots(2).unwrap();
        assert_abs_diff_eq!(vals[0], 2.2, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[1], -0.2, epsilon = 1e-13);

        // exact zeros at the roots land within an ulp of zero in f64
        assert_abs_diff_eq!(
            cv(&[1.0, 1.0]).feasibility_deficit(3).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            cv(&[1.0, 0.6]).feasibility_deficit(2).unwrap(),
            0.2,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            cv(&[2.0, 2.0, 1.0]).feasibility_deficit(4).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(cv(&[1.0, 1.0]).values_at_roots(1).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(cv(&[1.0, 1.0]).is_admissible());
        assert!(!cv(&[2.0, 1.0, 0.0]).is_admissible()); // boundary a0 = 2a1
        assert!(!cv(&[1.0, 1.0, -0.1]).is_admissible());
        assert!(!cv(&[1.0]).is_admissible());
    }

    #[test]
    fn autocorrelation_examples() {
        let g = GeneratorSequence::new(vec![1.0], 1.0).unwrap();
        assert_eq!(g.autocorrelate().a, vec![1.0]);

        let g = GeneratorSequence::new(vec![1.0, 1.0], 1.0).unwrap();
        assert_eq!(g.autocorrelate().a, vec![2.0, 1.0]);

        let g = GeneratorSequence::new(vec![1.0, 2.0, 3.0], 1.0).unwrap();
        assert_eq!(g.autocorrelate().a, vec![14.0, 8.0, 3.0]);
    }

    #[test]
    fn incremental_update_matches_recomputation() {
        let g = GeneratorSequence::new(vec![1.0, 1.0], 1.0).unwrap();
        let v = g.autocorrelate();
        let (v2, g2) = update_autocorrelation(&v, &g, 1, 0.0).unwrap();
        assert_eq!(v2.a, v.a);
        assert_eq!(g2.b, g.b);

        let g = GeneratorSequence::new(vec![1.0, 0.0], 1.0).unwrap();
        let (v2, _) = update_autocorrelation(&g.autocorrelate(), &g, 1, 1.0).unwrap();
        assert_eq!(v2.a, vec![2.0, 1.0]);

        let g = GeneratorSequence::new(vec![1.0, 2.0, 3.0], 1.0).unwrap();
        let (v2, g2) = update_autocorrelation(&g.autocorrelate(), &g, 2, -1.0).unwrap();
        assert_eq!(g2.b, vec![1.0, 2.0, 2.0]);
        assert_eq!(v2.a, vec![9.0, 6.0, 2.0]);
    }

    #[test]
    fn multiply_identity_and_squares() {
        let p = cv(&[1.0, 1.0, 0.5]);
        let one = cv(&[1.0]);
        assert_eq!(p.multiply(&one).a, p.a);

        let half = cv(&[1.0, 0.5]);
        let sq = half.multiply(&half);
        assert_eq!(sq.m, 2);
        assert_abs_diff_eq!(sq.a[0], 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sq.a[1], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sq.a[2], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn multiply_matches_dft_oracle() {
        // Independent oracle: recover product coefficients by exact Fourier
        // quadrature on an equispaced grid (exact for trigonometric
        // polynomials of bounded degree).
        let p = cv(&[1.0, 1.601 / 2.0, 0.709 / 2.0]);
        let r = p.multiply(&p);
        let n = 2 * r.m + 1;
        for k in 0..=r.m {
            let mut acc = 0.0;
            for j in 0..n {
                let theta = 2.0 * PI * j as f64 / n as f64;
                let product = p.eval_unchecked(theta) * p.eval_unchecked(theta);
                acc += product * (k as f64 * theta).cos();
            }
            let coeff = acc / n as f64;
            assert_abs_diff_eq!(coeff, r.a[k], epsilon = 1e-12);
        }
        // values stated for this family
        let expected = [2.5329410, 2.1685545, 1.3498002, 0.5675545, 0.1256702];
        for (got, want) in r.a.iter().zip(expected) {
            assert_abs_diff_eq!(got, &want, epsilon = 5e-7);
        }
    }

    #[test]
    fn global_min_fejer_and_friends() {
        // |1 + e^{iθ}|² = 2 + 2cosθ: minimum 0 at π.
        let report = cv(&[2.0, 1.0]).global_min(1e-4).unwrap();
        assert_abs_diff_eq!(report.min_value, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.theta_star, PI, epsilon = 1e-4);
        assert!(report.error_bound >= 0.0 && report.error_bound < 1e-10);

        let report = cv(&[1.0, 1.0]).global_min(1e-4).unwrap();
        assert_abs_diff_eq!(report.min_value, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.theta_star, PI, epsilon = 1e-4);

        assert!(cv(&[1.0, 1.0]).global_min(0.0).is_err());
    }

    #[test]
    fn global_min_certificate_is_sound() {
        // An interior minimum not on the initial grid.
        let v = cv(&[1.0, -0.3, 0.25, 0.1]);
        let report = v.global_min(1e-3).unwrap();
        // dense scan oracle
        let mut dense = f64::INFINITY;
        for i in 0..=2_000_000 {
            let theta = PI * i as f64 / 2_000_000.0;
            dense = dense.min(v.eval_unchecked(theta));
        }
        assert!(report.min_value <= dense + 1e-12);
        assert!(report.min_value - report.error_bound <= dense + 1e-12);
        assert!(dense - report.min_value <= report.error_bound + 1e-12);
    }

    #[test]
    fn global_nonnegativity_transfers_to_strides() {
        // if S is certified nonnegative, every S_d is nonnegative too:
        // S_d(a, θ) = S(a', dθ) with a' = (a₀, a_d, a_{2d}, …)
        let g = GeneratorSequence::new(vec![1.0, 0.8, 0.3, 0.9, 0.2, 0.5, 0.1], 1.0).unwrap();
        let v = g.autocorrelate();
        let report = v.global_min(1e-3).unwrap();
        assert!(
            report.min_value - report.error_bound >= -1e-12,
            "premise: certified ≥ 0"
        );
        for d in 1..=v.m {
            let strided: Vec<f64> = (0..=v.m / d).map(|j| v.a[j * d]).collect();
            let sub = CoefficientVector::new(strided).unwrap();
            let sub_report = sub.global_min(1e-3).unwrap();
            assert!(sub_report.min_value >= -1e-10, "stride {d} dipped negative");
        }
    }

    #[test]
    fn sample_endpoints() {
        let v = cv(&[1.0, 0.0]);
        let rows = v.sample(0.0, PI, 5).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|&(_, y)| (y - 1.0).abs() < 1e-15));
        assert!(v.sample(1.0, 0.0, 5).is_err());
        assert!(v.sample(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = cv(&[1.0, 0.873189274511716, 2.67697182147118e-6]).with_label("x");
        let text = v.to_json();
        let back = CoefficientVector::from_json(&text).unwrap();
        assert_eq!(back, v);
        // exact decimal round-trip through a second serialization
        assert_eq!(back.to_json(), text);
    }

    proptest! {
        #[test]
        fn evenness(theta in -10.0f64..10.0, a in proptest::collection::vec(-2.0f64..2.0, 1..8)) {
            let v = CoefficientVector::new(a).unwrap();
            prop_assert!((v.eval(theta).unwrap() - v.eval(-theta).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn squared_modulus_identity(
            theta in 0.0f64..(2.0 * PI),
            tail in proptest::collection::vec(-1.5f64..1.5, 1..7),
        ) {
            let mut b = vec![1.0];
            b.extend(tail);
            let g = GeneratorSequence::new(b.clone(), 1.5).unwrap();
            let v = g.autocorrelate();
            let (mut re, mut im) = (0.0, 0.0);
            for (k, &bk) in b.iter().enumerate() {
                re += bk * (k as f64 * theta).cos();
                im += bk * (k as f64 * theta).sin();
            }
            let l1: f64 = b.iter().map(|x| x.abs()).sum();
            prop_assert!((v.eval(theta).unwrap() - (re * re + im * im)).abs() <= 1e-10 * l1 * l1);
        }

        #[test]
        fn product_evaluates_pointwise(
            theta in 0.0f64..(2.0 * PI),
            pa in proptest::collection::vec(-1.0f64..1.0, 1..6),
            qa in proptest::collection::vec(-1.0f64..1.0, 1..6),
        ) {
            let p = CoefficientVector::new(pa).unwrap();
            let q = CoefficientVector::new(qa).unwrap();
            let r = p.multiply(&q);
            let lhs = r.eval(theta).unwrap();
            let rhs = p.eval(theta).unwrap() * q.eval(theta).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
