//! Stochastic searches for low-λ coefficient vectors.
//!
//! Three engines share the same Metropolis core:
//!
//! - [`general_search`]: mutates a generator sequence `b` (so nonnegativity
//!   of `S` holds by construction) and minimizes λ over admissible vectors;
//! - [`order_search`]: for a fixed order `d`, works on the coefficients
//!   directly, first annealing the root-feasibility deficit to zero and then
//!   annealing λ while feasibility and admissibility are enforced;
//! - [`integer_search`]: bounded exhaustive search over small integer
//!   vectors, with an optional scaled neighborhood refinement.
//!
//! Runs are deterministic: one ChaCha8 stream per restart, split from the
//! configured seed, and a pure reduction over restart outcomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::louboutin::{derive_constants, lambda_from_sums};
use crate::trigpoly::{shift_generator, CoefficientVector, GeneratorSequence};
use crate::{Error, Result};

/// Proposal budget for the feasibility phase of [`order_search`].
const FEASIBILITY_BUDGET: u64 = 1_000_000;
/// Redraw budget for admissible initialization of [`general_search`].
const INIT_ATTEMPTS: u64 = 1_000_000;

/// Hyperparameters of one annealing run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    /// Polynomial degree.
    pub m: usize,
    /// Initialization bound: generator entries start uniform in `[0, B]`.
    #[serde(rename = "B")]
    pub init_bound: f64,
    /// Largest maximum step size.
    #[serde(rename = "S1")]
    pub step_max: f64,
    /// Smallest maximum step size; the ladder stops once `S` dips below it.
    #[serde(rename = "S2")]
    pub step_min: f64,
    /// Step-ladder contraction: `S ← S / (1 + ρ)` after each full pass.
    pub rho: f64,
    /// Positive temperatures, strictly decreasing; a `T = 0` greedy batch is
    /// appended implicitly.
    pub temps: Vec<f64>,
    /// Trials per (temperature, step-size) pair.
    #[serde(rename = "M")]
    pub trials: usize,
    pub seed: u64,
    pub restarts: usize,
}

/// Annealing schedule with `1/T_{i+1} = 1/T_i + delta`.
pub fn harmonic_schedule(t1: f64, levels: usize, delta: f64) -> Vec<f64> {
    let mut temps = Vec::with_capacity(levels);
    let mut inv = 1.0 / t1;
    for _ in 0..levels {
        temps.push(1.0 / inv);
        inv += delta;
    }
    temps
}

impl AnnealConfig {
    /// Midpoints of the reported working ranges: `B = 200`, `S1 = 3.5`,
    /// `S2 = 1e-6`, `ρ = 0.02`, ten temperatures from `0.1` with harmonic
    /// increment `1.6`, `M = 4000`.
    pub fn defaults_for_degree(m: usize) -> Self {
        Self {
            m,
            init_bound: 200.0,
            step_max: 3.5,
            step_min: 1e-6,
            rho: 0.02,
            temps: harmonic_schedule(0.1, 10, 1.6),
            trials: 4000,
            seed: 1,
            restarts: 20,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::Domain("degree m must be at least 1".into()));
        }
        if !(self.step_max > self.step_min && self.step_min > 0.0) {
            return Err(Error::Domain("need S1 > S2 > 0".into()));
        }
        if !(self.rho > 0.0) {
            return Err(Error::Domain("need rho > 0".into()));
        }
        if self.trials < 1 {
            return Err(Error::Domain("need at least one trial per level".into()));
        }
        if self.restarts < 1 {
            return Err(Error::Domain("need at least one restart".into()));
        }
        let ok = self.temps.iter().all(|&t| t > 0.0 && t.is_finite())
            && self.temps.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(Error::Domain(
                "temperatures must be positive and strictly decreasing".into(),
            ));
        }
        Ok(())
    }
}

/// A record-breaking objective value and the proposal index where it occurred.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub lambda: f64,
}

/// Best vector found by a search, with full provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnealResult {
    pub best_vector: CoefficientVector,
    pub best_lambda: f64,
    /// Generator sequence behind the best vector (general mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSequence>,
    pub config: AnnealConfig,
    pub seed: u64,
    /// Winning restart index.
    pub restart: usize,
    /// Total proposals across all restarts and phases.
    pub iterations: u64,
    /// Record trace of the winning restart's λ phase, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePoint>>,
}

/// State plugged into the Metropolis engine.
///
/// `propose` mutates the state in place and reports whether the proposal was
/// valid; invalid proposals must leave the state untouched. `undo` rolls back
/// the last valid proposal. `record` is invoked when the current state beats
/// the best seen so far.
pub trait AnnealProblem {
    fn objective(&self) -> f64;
    fn propose(&mut self, max_step: f64, rng: &mut ChaCha8Rng) -> bool;
    fn undo(&mut self);
    fn record(&mut self);
    /// Early-exit signal, checked at startup and after every acceptance.
    fn finished(&self) -> bool {
        false
    }
    /// Called at the start of every step-size pass; a hook for killing
    /// incremental floating-point drift.
    fn resync(&mut self) {}
}

#[derive(Debug, Clone)]
pub struct EngineReport {
    pub best_objective: f64,
    pub proposals: u64,
    pub trace: Vec<TracePoint>,
}

/// Runs the annealing schedule: for each maximum step size `S` from `S1`
/// down by factors of `1 + ρ` while `S` exceeds `S2`, and for each
/// temperature followed by a `T = 0` batch, performs `M` proposals.
/// Improvements (Δ ≤ 0) are always kept; a worsening Δ > 0 is kept with
/// probability `e^(-Δ/T)`, never at `T = 0`.
pub fn anneal_engine<P: AnnealProblem>(
    problem: &mut P,
    config: &AnnealConfig,
    rng: &mut ChaCha8Rng,
    max_proposals: Option<u64>,
    record_trace: bool,
) -> EngineReport {
    let mut current = problem.objective();
    let mut best = current;
    problem.record();
    let mut trace = Vec::new();
    if record_trace {
        trace.push(TracePoint {
            iteration: 0,
            lambda: best,
        });
    }
    let mut proposals: u64 = 0;
    if problem.finished() {
        return EngineReport {
            best_objective: best,
            proposals,
            trace,
        };
    }
    let budget = max_proposals.unwrap_or(u64::MAX);
    let mut step = config.step_max;
    'ladder: loop {
        problem.resync();
        current = problem.objective();
        for ti in 0..=config.temps.len() {
            let t = if ti < config.temps.len() {
                config.temps[ti]
            } else {
                0.0
            };
            for _ in 0..config.trials {
                if proposals >= budget {
                    break 'ladder;
                }
                proposals += 1;
                if !problem.propose(step, rng) {
                    continue;
                }
                let candidate = problem.objective();
                let delta = candidate - current;
                let accept = delta <= 0.0 || (t > 0.0 && rng.gen::<f64>() < (-delta / t).exp());
                if !accept {
                    problem.undo();
                    continue;
                }
                current = candidate;
                if current < best {
                    problem.record();
                    best = current;
                    if record_trace {
                        trace.push(TracePoint {
                            iteration: proposals,
                            lambda: best,
                        });
                    }
                }
                if problem.finished() {
                    break 'ladder;
                }
            }
        }
        step /= 1.0 + config.rho;
        if step <= config.step_min {
            break;
        }
    }
    EngineReport {
        best_objective: best,
        proposals,
        trace,
    }
}

// ---------------------------------------------------------------------------
// General search: b-parameterized, nonnegative by construction.
// ---------------------------------------------------------------------------

struct GeneralProblem {
    b: Vec<f64>,
    a: Vec<f64>,
    lambda: f64,
    saved_a: Vec<f64>,
    saved_k: usize,
    saved_bk: f64,
    saved_lambda: f64,
    best_b: Vec<f64>,
    best_lambda: f64,
}

fn lambda_of_coeffs(a: &[f64]) -> Option<f64> {
    if a.iter().any(|&x| x < 0.0) {
        return None;
    }
    let tail: f64 = a.iter().skip(2).sum();
    lambda_from_sums(a[0], a[1], tail).map(|(_, lambda)| lambda)
}

impl GeneralProblem {
    fn init(m: usize, bound: f64, rng: &mut ChaCha8Rng) -> Result<Self> {
        for _ in 0..INIT_ATTEMPTS {
            let mut b = vec![1.0];
            for _ in 0..m {
                b.push(rng.gen_range(0.0..=bound));
            }
            let g = GeneratorSequence {
                b: b.clone(),
                bound,
            };
            let a = g.autocorrelate().a;
            if let Some(lambda) = lambda_of_coeffs(&a) {
                return Ok(Self {
                    saved_a: a.clone(),
                    saved_k: 1,
                    saved_bk: b[1],
                    saved_lambda: lambda,
                    best_b: b.clone(),
                    best_lambda: lambda,
                    b,
                    a,
                    lambda,
                });
            }
        }
        Err(Error::Infeasible(format!(
            "no admissible autocorrelation found for m = {m} after {INIT_ATTEMPTS} draws"
        )))
    }
}

impl AnnealProblem for GeneralProblem {
    fn objective(&self) -> f64 {
        self.lambda
    }

    fn propose(&mut self, max_step: f64, rng: &mut ChaCha8Rng) -> bool {
        let m = self.b.len() - 1;
        let k = rng.gen_range(1..=m);
        let delta = rng.gen_range(-max_step..=max_step);
        self.saved_a.copy_from_slice(&self.a);
        self.saved_k = k;
        self.saved_bk = self.b[k];
        self.saved_lambda = self.lambda;
        shift_generator(&mut self.a, &mut self.b, k, delta);
        match lambda_of_coeffs(&self.a) {
            Some(lambda) => {
                self.lambda = lambda;
                true
            }
            None => {
                self.undo();
                false
            }
        }
    }

    fn undo(&mut self) {
        self.a.copy_from_slice(&self.saved_a);
        self.b[self.saved_k] = self.saved_bk;
        self.lambda = self.saved_lambda;
    }

    fn record(&mut self) {
        self.best_b.copy_from_slice(&self.b);
        self.best_lambda = self.lambda;
    }

    fn resync(&mut self) {
        // kill accumulated drift in the incremental autocorrelations
        let g = GeneratorSequence {
            b: self.b.clone(),
            bound: 1.0,
        };
        self.a = g.autocorrelate().a;
        if let Some(lambda) = lambda_of_coeffs(&self.a) {
            self.lambda = lambda;
        }
    }
}

struct RestartOutcome {
    restart: usize,
    lambda: f64,
    vector: CoefficientVector,
    generator: Option<GeneratorSequence>,
    proposals: u64,
    trace: Vec<TracePoint>,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64 + 1);
    rng
}

fn reduce_outcomes(
    config: &AnnealConfig,
    outcomes: Vec<RestartOutcome>,
    record_trace: bool,
) -> Result<AnnealResult> {
    let iterations = outcomes.iter().map(|o| o.proposals).sum();
    let winner = outcomes
        .into_iter()
        .min_by(|x, y| {
            x.lambda
                .partial_cmp(&y.lambda)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(x.restart.cmp(&y.restart))
        })
        .ok_or_else(|| Error::Infeasible("no restart produced a feasible vector".into()))?;
    Ok(AnnealResult {
        best_vector: winner.vector,
        best_lambda: winner.lambda,
        generator: winner.generator,
        config: config.clone(),
        seed: config.seed,
        restart: winner.restart,
        iterations,
        trace: record_trace.then_some(winner.trace),
    })
}

/// Anneals λ over admissible autocorrelation vectors of degree `config.m`.
///
/// Every state is nonnegative by construction. Restarts run on independent
/// RNG streams (in parallel when a rayon pool is available) and the best
/// vector across restarts is returned; the reported λ and vector are
/// recomputed from the winning generator, not from the incremental state.
pub fn general_search(config: &AnnealConfig, record_trace: bool) -> Result<AnnealResult> {
    config.validate()?;
    if config.m < 2 {
        return Err(Error::Domain(
            "general search requires m ≥ 2: no degree-1 autocorrelation is admissible".into(),
        ));
    }
    let outcomes: Vec<Result<RestartOutcome>> = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = restart_rng(config.seed, restart);
            let mut problem = GeneralProblem::init(config.m, config.init_bound, &mut rng)?;
            let report = anneal_engine(&mut problem, config, &mut rng, None, record_trace);
            let generator = GeneratorSequence {
                b: problem.best_b.clone(),
                bound: config.init_bound,
            };
            let vector = generator.autocorrelate();
            let lambda = derive_constants(&vector)?.lambda;
            Ok(RestartOutcome {
                restart,
                lambda,
                vector,
                generator: Some(generator),
                proposals: report.proposals,
                trace: report.trace,
            })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    reduce_outcomes(config, outcomes, record_trace)
}

// ---------------------------------------------------------------------------
// Order search: direct coefficients, feasibility at the d-th roots of unity.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq)]
enum OrderPhase {
    Deficit,
    Lambda,
}

struct OrderProblem {
    d: usize,
    cos_table: Vec<f64>, // [k*d + j] = cos(2π k j / d), k = 0..=m
    a: Vec<f64>,
    scratch: Vec<f64>,
    phase: OrderPhase,
    objective: f64,
    saved_k: usize,
    saved_ak: f64,
    saved_objective: f64,
    best_a: Vec<f64>,
}

impl OrderProblem {
    fn init(d: usize, m: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut a = vec![1.0];
        a.push(1.0 - rng.gen_range(0.0..0.5)); // a₁ ∈ (1/2, 1]
        for _ in 2..=m {
            a.push(rng.gen_range(0.0..=1.0));
        }
        // same angle arithmetic as CoefficientVector::values_at_roots, so
        // accepted states report a zero deficit there bit for bit
        let step = 2.0 * std::f64::consts::PI / d as f64;
        let mut cos_table = vec![0.0; (m + 1) * d];
        for k in 0..=m {
            for j in 0..d {
                cos_table[k * d + j] = ((k * j % d) as f64 * step).cos();
            }
        }
        let mut problem = Self {
            d,
            cos_table,
            scratch: vec![0.0; d],
            phase: OrderPhase::Deficit,
            objective: 0.0,
            saved_k: 1,
            saved_ak: a[1],
            saved_objective: 0.0,
            best_a: a.clone(),
            a,
        };
        problem.resync();
        problem
    }

    /// Root values are always recomputed from the coefficients, so
    /// feasibility decisions never ride on incremental drift.
    fn fill_roots(&mut self) {
        for j in 0..self.d {
            let mut s = self.a[0];
            for (k, &ak) in self.a.iter().enumerate().skip(1) {
                s += 2.0 * ak * self.cos_table[k * self.d + j];
            }
            self.scratch[j] = s;
        }
    }

    fn current_objective(&mut self) -> Option<f64> {
        self.fill_roots();
        match self.phase {
            OrderPhase::Deficit => Some(self.scratch.iter().map(|&r| -r.min(0.0)).sum()),
            OrderPhase::Lambda => {
                if self.scratch.iter().any(|&r| r < 0.0) {
                    return None;
                }
                lambda_of_coeffs(&self.a)
            }
        }
    }

    fn enter_lambda_phase(&mut self) {
        self.a.copy_from_slice(&self.best_a);
        self.phase = OrderPhase::Lambda;
        self.resync();
    }
}

impl AnnealProblem for OrderProblem {
    fn objective(&self) -> f64 {
        self.objective
    }

    fn propose(&mut self, max_step: f64, rng: &mut ChaCha8Rng) -> bool {
        let m = self.a.len() - 1;
        let k = rng.gen_range(1..=m);
        let delta = rng.gen_range(-max_step..=max_step);
        let new_ak = self.a[k] + delta;
        // admissibility: a₀ = 1 stays fixed, entries stay nonnegative
        if new_ak < 0.0 || (k == 1 && 2.0 * new_ak <= self.a[0]) {
            return false;
        }
        let saved_ak = self.a[k];
        self.a[k] = new_ak;
        match self.current_objective() {
            Some(objective) => {
                self.saved_k = k;
                self.saved_ak = saved_ak;
                self.saved_objective = self.objective;
                self.objective = objective;
                true
            }
            None => {
                self.a[k] = saved_ak;
                false
            }
        }
    }

    fn undo(&mut self) {
        self.a[self.saved_k] = self.saved_ak;
        self.objective = self.saved_objective;
    }

    fn record(&mut self) {
        self.best_a.copy_from_slice(&self.a);
    }

    fn finished(&self) -> bool {
        self.phase == OrderPhase::Deficit && self.objective == 0.0
    }

    fn resync(&mut self) {
        self.objective = self.current_objective().unwrap_or(f64::INFINITY);
    }
}

/// Two-phase annealing for characters of a fixed order `d`: phase one anneals
/// the root-feasibility deficit to zero (capped at 10⁶ proposals), phase two
/// anneals λ while rejecting any step that breaks admissibility or roots
/// feasibility. Restarts whose feasibility phase fails are dropped; if all
/// fail, an explicit infeasibility error is returned.
pub fn order_search(d: usize, config: &AnnealConfig, record_trace: bool) -> Result<AnnealResult> {
    config.validate()?;
    if !(3..=64).contains(&d) {
        return Err(Error::Domain(format!(
            "order d must lie in 3..=64, got {d}"
        )));
    }
    if config.m >= d {
        return Err(Error::Domain(format!(
            "order search needs m < d (the bound applies to orders exceeding m); got m = {}, d = {d}",
            config.m
        )));
    }
    let outcomes: Vec<Option<RestartOutcome>> = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = restart_rng(config.seed, restart);
            let mut problem = OrderProblem::init(d, config.m, &mut rng);
            let phase1 = anneal_engine(
                &mut problem,
                config,
                &mut rng,
                Some(FEASIBILITY_BUDGET),
                false,
            );
            if phase1.best_objective != 0.0 {
                return None; // feasibility not reached within budget
            }
            let p1_proposals = phase1.proposals;
            problem.enter_lambda_phase();
            let phase2 = anneal_engine(&mut problem, config, &mut rng, None, record_trace);
            let vector = CoefficientVector::new(problem.best_a.clone()).ok()?;
            let lambda = derive_constants(&vector).ok()?.lambda;
            Some(RestartOutcome {
                restart,
                lambda,
                vector,
                generator: None,
                proposals: p1_proposals + phase2.proposals,
                trace: phase2.trace,
            })
        })
        .collect();
    let outcomes: Vec<RestartOutcome> = outcomes.into_iter().flatten().collect();
    if outcomes.is_empty() {
        return Err(Error::Infeasible(format!(
            "no restart reached root feasibility for d = {d} (budget {FEASIBILITY_BUDGET} proposals per restart)"
        )));
    }
    reduce_outcomes(config, outcomes, record_trace)
}

// ---------------------------------------------------------------------------
// Integer exhaustive search with scaled refinement.
// ---------------------------------------------------------------------------

/// Result of [`integer_search`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegerSearchResult {
    pub vector: CoefficientVector,
    pub lambda: f64,
    /// States enumerated across both stages.
    pub scanned: u64,
    /// Admissible, root-feasible states seen.
    pub feasible: u64,
}

const MAX_ENUM_STATES: f64 = 1e8;

fn integer_feasible(a: &[f64], d: usize) -> bool {
    let l1: f64 = a.iter().map(|x| x.abs()).sum();
    let tol = -1e-9 * l1.max(1.0);
    let step = 2.0 * std::f64::consts::PI / d as f64;
    for j in 0..d {
        let mut s = a[0];
        for (k, &ak) in a.iter().enumerate().skip(1) {
            s += 2.0 * ak * ((k * j % d) as f64 * step).cos();
        }
        if s < tol {
            return false;
        }
    }
    true
}

/// Odometer enumeration over integer boxes `lo[i] ..= hi[i]`, tracking the
/// admissible root-feasible vector with the least λ. Ties (within 1e-9
/// relative) keep the earlier, lexicographically smaller state.
fn scan_box(
    d: usize,
    lo: &[i64],
    hi: &[i64],
    best: &mut Option<(Vec<i64>, f64)>,
    scanned: &mut u64,
    feasible: &mut u64,
) {
    let n = lo.len();
    let mut state: Vec<i64> = lo.to_vec();
    let mut coeffs = vec![0.0f64; n];
    loop {
        *scanned += 1;
        if state[0] >= 1 {
            for (c, &s) in coeffs.iter_mut().zip(state.iter()) {
                *c = s as f64;
            }
            let admissible =
                coeffs.iter().all(|&x| x >= 0.0) && n >= 2 && coeffs[0] < 2.0 * coeffs[1];
            if admissible && integer_feasible(&coeffs, d) {
                *feasible += 1;
                if let Some(lambda) = lambda_of_coeffs(&coeffs) {
                    let improves = match best {
                        Some((_, best_lambda)) => lambda < *best_lambda * (1.0 - 1e-9),
                        None => true,
                    };
                    if improves {
                        *best = Some((state.clone(), lambda));
                    }
                }
            }
        }
        // advance odometer, least-significant digit last so enumeration is
        // lexicographic in (a₀, a₁, …)
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if state[i] < hi[i] {
                state[i] += 1;
                state[i + 1..n].copy_from_slice(&lo[i + 1..n]);
                break;
            }
        }
    }
}

/// Exhaustive integer search for order `d`: enumerates vectors with
/// `0 ≤ aᵢ ≤ coeff_bound` and `a₀ ≥ 1` at degree `m`, keeps admissible
/// root-feasible ones, and minimizes λ; the winner is then scaled by
/// `refine_factor` and the `±refine_factor` cube around the scaled point is
/// searched for improvements.
pub fn integer_search(
    d: usize,
    m: usize,
    coeff_bound: i64,
    refine_factor: i64,
) -> Result<IntegerSearchResult> {
    if d < 3 {
        return Err(Error::Domain("order d must be at least 3".into()));
    }
    if m < 1 || m >= d {
        return Err(Error::Domain(format!(
            "need 1 ≤ m < d, got m = {m}, d = {d}"
        )));
    }
    if coeff_bound < 1 || refine_factor < 1 {
        return Err(Error::Domain(
            "coeff_bound and refine_factor must be ≥ 1".into(),
        ));
    }
    let states = ((coeff_bound + 1) as f64).powi(m as i32 + 1);
    if states > MAX_ENUM_STATES {
        return Err(Error::Domain(format!(
            "exhaustive space {states:.0} exceeds {MAX_ENUM_STATES:.0} states; lower m or coeff_bound"
        )));
    }
    let mut best: Option<(Vec<i64>, f64)> = None;
    let mut scanned = 0;
    let mut feasible = 0;
    let lo = vec![0i64; m + 1];
    let hi = vec![coeff_bound; m + 1];
    scan_box(d, &lo, &hi, &mut best, &mut scanned, &mut feasible);
    let (base, base_lambda) =
        best.ok_or_else(|| Error::Infeasible(format!("no feasible integer vector for d = {d}")))?;

    // scaled neighborhood refinement
    let scaled: Vec<i64> = base.iter().map(|&x| x * refine_factor).collect();
    let mut refined: Option<(Vec<i64>, f64)> = Some((scaled.clone(), base_lambda));
    let cube = ((2 * refine_factor + 1) as f64).powi(m as i32 + 1);
    if cube <= MAX_ENUM_STATES {
        let lo: Vec<i64> = scaled.iter().map(|&x| (x - refine_factor).max(0)).collect();
        let hi: Vec<i64> = scaled.iter().map(|&x| x + refine_factor).collect();
        scan_box(d, &lo, &hi, &mut refined, &mut scanned, &mut feasible);
    }
    let (ints, _) = refined.expect("refinement keeps at least the scaled base");
    // report λ from the standard pipeline on the final integers
    let vector = CoefficientVector::new(ints.iter().map(|&x| x as f64).collect())?;
    let lambda = derive_constants(&vector)?.lambda;
    Ok(IntegerSearchResult {
        vector,
        lambda,
        scanned,
        feasible,
    })
}
