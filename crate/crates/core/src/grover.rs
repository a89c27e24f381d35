//! Search engines, measurement sampling and probability sweeps.
//!
//! With `N = 2^n` and one marked index `i₀`, every state reached from the
//! uniform superposition lies in the real plane spanned by `|i₀⟩` and
//!
//! ```text
//! |u⟩ = 1/√(N−1) Σ_{i≠i₀} |i⟩
//! ```
//!
//! and each Grover iteration rotates it by `θ = 2·arccos√(1 − 1/N)` towards
//! `|i₀⟩`. Three engines compute the same search:
//!
//! - [`Engine::Analytic`] evaluates the rotation in closed form,
//! - [`Engine::StateVector`] simulates the first register with the phase oracle
//!   and inversion about the mean,
//! - [`Engine::Compiled`] runs the assembled circuit, oracle target and work
//!   qubits included.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::compile::{self, grover_input, register_component, register_marginal, GroverStages, LoweringLevel};
use crate::gates::{self, GateKind};
use crate::qcore::{Amplitude, StateVector};
use crate::{Error, Result, MAX_DENSE_QUBITS};

pub const MAX_ANALYTIC_QUBITS: usize = 30;
pub const MAX_STATEVECTOR_QUBITS: usize = 24;

const PARALLEL_MIN_DIM: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Analytic,
    StateVector,
    Compiled,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Analytic => "analytic",
            Engine::StateVector => "statevector",
            Engine::Compiled => "compiled",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Engine::Analytic, Engine::StateVector, Engine::Compiled]
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown engine `{s}`")))
    }
}

/// Rotation angle per iteration, `2·arccos√(1 − 2^{−n})`.
///
/// Evaluated as `2·arcsin(2^{−n/2})`, the same angle without the
/// cancellation `arccos` suffers near 1.
pub fn theta(n: usize) -> f64 {
    2.0 * (0.5f64).powf(n as f64 / 2.0).asin()
}

/// `k₀ = round((π − θ)/(2θ))`, halves rounded away from zero.
pub fn optimal_iterations(n: usize) -> usize {
    let th = theta(n);
    let x = (PI - th) / (2.0 * th);
    // n = 1 is an exact tie (θ = π/2) that floating point lands a few ulps
    // below; snap near-ties so the away-from-zero rule applies.
    let frac = x - x.floor();
    if (frac - 0.5).abs() < 1e-9 {
        x.floor() as usize + 1
    } else {
        x.round() as usize
    }
}

/// `sin²((2k+1)θ/2)`.
pub fn success_probability(n: usize, k: usize) -> f64 {
    ((2 * k + 1) as f64 * theta(n) / 2.0).sin().powi(2)
}

/// Components `(c_u, c_i₀)` of `G^k|ψ⟩` in the `{|u⟩, |i₀⟩}` basis.
pub fn analytic_state(n: usize, k: usize) -> (f64, f64) {
    let angle = (2 * k + 1) as f64 * theta(n) / 2.0;
    (angle.cos(), angle.sin())
}

/// `I − 2|i₀⟩⟨i₀|`: negates the amplitude at `i0`.
pub fn apply_oracle_phase(state: &mut StateVector, i0: usize) -> Result<()> {
    let dim = state.dim();
    if i0 >= dim {
        return Err(Error::TargetOutOfRange { target: i0 as u64, size: dim as u64 });
    }
    let a = &mut state.amplitudes_mut()[i0];
    *a = -*a;
    Ok(())
}

/// Inversion about the mean, `σᵢ ↦ 2⟨σ⟩ − σᵢ`.
pub fn apply_diffusion(state: &mut StateVector) {
    let dim = state.dim();
    let amps = state.amplitudes_mut();
    // Fixed-size partial sums keep the result independent of scheduling.
    let sum: Amplitude = if dim >= PARALLEL_MIN_DIM {
        let partials: Vec<Amplitude> = amps.par_chunks(PARALLEL_MIN_DIM).map(|c| c.iter().sum()).collect();
        partials.into_iter().sum()
    } else {
        amps.iter().sum()
    };
    let twice_mean = sum * (2.0 / dim as f64);
    if dim >= PARALLEL_MIN_DIM {
        amps.par_iter_mut().for_each(|a| *a = twice_mean - *a);
    } else {
        amps.iter_mut().for_each(|a| *a = twice_mean - *a);
    }
}

/// `H^{⊗n}|0…0⟩` built through the gate kernels.
pub fn prepare_uniform(n: usize) -> StateVector {
    let mut st = StateVector::zero(n);
    for q in 0..n {
        gates::apply_kind(&mut st, q, GateKind::H).expect("qubit in range");
    }
    st
}

/// Position of a register state in the `{|u⟩, |i₀⟩}` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverTraceRow {
    /// Number of Grover iterations applied.
    pub k: usize,
    pub c_u: f64,
    pub c_i0: f64,
    /// Norm of the component outside the real `{|u⟩, |i₀⟩}` plane.
    pub residual: f64,
    pub p_k: f64,
}

impl GroverTraceRow {
    pub fn from_state(k: usize, state: &StateVector, i0: usize) -> Self {
        let dim = state.dim();
        let amps = state.amplitudes();
        let others = (dim - 1) as f64;
        let sum_others: Amplitude = amps.iter().sum::<Amplitude>() - amps[i0];
        let c_u = if dim > 1 { sum_others.re / others.sqrt() } else { 0.0 };
        let u_amp = if dim > 1 { c_u / others.sqrt() } else { 0.0 };
        let mut residual_sq = amps[i0].im.powi(2);
        for (i, a) in amps.iter().enumerate() {
            if i != i0 {
                residual_sq += (a - u_amp).norm_sqr();
            }
        }
        Self { k, c_u, c_i0: amps[i0].re, residual: residual_sq.sqrt(), p_k: amps[i0].norm_sqr() }
    }

    pub fn analytic(n: usize, k: usize) -> Self {
        let (c_u, c_i0) = analytic_state(n, k);
        Self { k, c_u, c_i0, residual: 0.0, p_k: c_i0 * c_i0 }
    }
}

/// Parameters of one search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverConfig {
    pub n: usize,
    pub i0: u64,
    pub engine: Engine,
    /// Lowering level for the compiled engine.
    pub level: LoweringLevel,
    pub iterations_override: Option<usize>,
    pub shots: usize,
    pub seed: u64,
}

impl GroverConfig {
    pub fn new(n: usize, i0: u64) -> Self {
        Self {
            n,
            i0,
            engine: Engine::Analytic,
            level: LoweringLevel::Universal,
            iterations_override: None,
            shots: 1024,
            seed: 0,
        }
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn level(mut self, level: LoweringLevel) -> Self {
        self.level = level;
        self
    }

    pub fn iterations(mut self, k: usize) -> Self {
        self.iterations_override = Some(k);
        self
    }

    pub fn shots(mut self, shots: usize) -> Self {
        self.shots = shots;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        let limit = match self.engine {
            Engine::Analytic => MAX_ANALYTIC_QUBITS,
            Engine::StateVector => MAX_STATEVECTOR_QUBITS,
            Engine::Compiled => MAX_DENSE_QUBITS,
        };
        if self.n > limit {
            return Err(Error::InvalidConfig(format!("n = {} exceeds the {} engine limit of {limit}", self.n, self.engine)));
        }
        compile::check_target(self.n, self.i0)?;
        if self.engine == Engine::Compiled {
            let total = compiled_width(self.n, self.level);
            if total > MAX_DENSE_QUBITS {
                return Err(Error::InvalidConfig(format!(
                    "compiled circuit at {} level needs {total} qubits, limit is {MAX_DENSE_QUBITS}",
                    self.level
                )));
            }
        }
        Ok(())
    }
}

/// Total qubits of the compiled search circuit: register, target, work.
pub fn compiled_width(n: usize, level: LoweringLevel) -> usize {
    let work = if level == LoweringLevel::Operator { 0 } else { compile::work_needed(n) };
    n + 1 + work
}

/// Outcome of one search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub i0: u64,
    pub engine: Engine,
    pub theta: f64,
    /// Optimal iteration count.
    pub k0: usize,
    /// Iterations actually applied.
    pub iterations: usize,
    pub p_analytic: f64,
    pub p_engine: f64,
    /// Row `k` is the register state after `k` iterations, starting at `k = 0`.
    pub trace: Vec<GroverTraceRow>,
    pub samples: BTreeMap<u64, usize>,
    /// Most frequent sample, smallest index on ties.
    pub measured_mode: Option<u64>,
}

/// Runs a search with the configured engine.
pub fn run_search(config: &GroverConfig) -> Result<SearchReport> {
    config.validate()?;
    let n = config.n;
    let k0 = optimal_iterations(n);
    let k = config.iterations_override.unwrap_or(k0);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let (trace, p_engine, samples) = match config.engine {
        Engine::Analytic => {
            let trace: Vec<_> = (0..=k).map(|j| GroverTraceRow::analytic(n, j)).collect();
            let p = success_probability(n, k);
            let mut samples = BTreeMap::new();
            for _ in 0..config.shots {
                *samples.entry(sample_analytic(n, config.i0, p, &mut rng)).or_default() += 1;
            }
            (trace, p, samples)
        }
        Engine::StateVector => {
            let i0 = config.i0 as usize;
            let mut state = prepare_uniform(n);
            let mut trace = vec![GroverTraceRow::from_state(0, &state, i0)];
            for j in 1..=k {
                apply_oracle_phase(&mut state, i0)?;
                apply_diffusion(&mut state);
                trace.push(GroverTraceRow::from_state(j, &state, i0));
            }
            let samples = sample_histogram(&Cdf::new(&state.probabilities())?, config.shots, &mut rng);
            (trace, state.probability(i0), samples)
        }
        Engine::Compiled => {
            let i0 = config.i0 as usize;
            let stages = GroverStages::build(n, config.i0, config.level)?;
            let mut state = grover_input(n, stages.num_work());
            stages.prep.run_in_place(&mut state)?;
            let mut trace = vec![GroverTraceRow::from_state(0, &register_component(&state, n), i0)];
            for j in 1..=k {
                stages.iteration.run_in_place(&mut state)?;
                trace.push(GroverTraceRow::from_state(j, &register_component(&state, n), i0));
            }
            let marginal = register_marginal(&state, n);
            let samples = sample_histogram(&Cdf::new(&marginal)?, config.shots, &mut rng);
            (trace, marginal[i0], samples)
        }
    };

    let measured_mode = samples.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(&i, _)| i);
    Ok(SearchReport {
        n,
        i0: config.i0,
        engine: config.engine,
        theta: theta(n),
        k0,
        iterations: k,
        p_analytic: success_probability(n, k),
        p_engine,
        trace,
        samples,
        measured_mode,
    })
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one `u64`.
pub fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The sampling generator for a seed: ChaCha8 seeded through
/// `SeedableRng::seed_from_u64`, identical on every platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Inverse-CDF sampler over a probability vector.
#[derive(Debug, Clone)]
pub struct Cdf {
    cumulative: Vec<f64>,
}

impl Cdf {
    /// Fails if the probabilities do not sum to 1 within `1e-6`.
    pub fn new(probabilities: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let cumulative: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if (acc - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(acc.sqrt()));
        }
        Ok(Self { cumulative })
    }

    /// First index whose cumulative probability exceeds `u`.
    pub fn index_of(&self, u: f64) -> usize {
        let i = self.cumulative.partition_point(|&c| c <= u);
        if i < self.cumulative.len() {
            return i;
        }
        // u landed above the rounded total: take the last outcome with mass.
        let last = self.cumulative.len() - 1;
        (0..=last).rev().find(|&j| j == 0 || self.cumulative[j] > self.cumulative[j - 1]).unwrap_or(last)
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> usize {
        self.index_of(uniform_f64(rng))
    }
}

/// Draws one basis index with probability `|αᵢ|²`.
pub fn measure(state: &StateVector, rng: &mut impl RngCore) -> Result<usize> {
    Ok(Cdf::new(&state.probabilities())?.sample(rng))
}

pub fn sample_histogram(cdf: &Cdf, shots: usize, rng: &mut impl RngCore) -> BTreeMap<u64, usize> {
    let mut hist = BTreeMap::new();
    for _ in 0..shots {
        *hist.entry(cdf.sample(rng) as u64).or_default() += 1;
    }
    hist
}

/// Samples the closed-form outcome distribution: `i0` with probability `p`,
/// otherwise uniform over the remaining `N − 1` indices.
fn sample_analytic(n: usize, i0: u64, p: f64, rng: &mut impl RngCore) -> u64 {
    let u = uniform_f64(rng);
    let others = (1u64 << n) - 1;
    if u < p || others == 0 {
        return i0;
    }
    let r = ((u - p) / (1.0 - p) * others as f64) as u64;
    let r = r.min(others - 1);
    if r >= i0 {
        r + 1
    } else {
        r
    }
}

/// One point of the success-probability curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub theta: f64,
    pub k0: usize,
    pub p_analytic: f64,
    /// Engine probability, absent where the engine cannot run at this `n`.
    pub p_engine: Option<f64>,
}

/// Whether `engine` can run a search on `n` qubits (compiled at `level`).
pub fn engine_feasible(engine: Engine, n: usize, level: LoweringLevel) -> bool {
    match engine {
        Engine::Analytic => n <= MAX_ANALYTIC_QUBITS,
        Engine::StateVector => n <= MAX_STATEVECTOR_QUBITS,
        Engine::Compiled => compiled_width(n, level) <= MAX_DENSE_QUBITS,
    }
}

/// Success probability at `k₀` for every `n` in `n_min..=n_max`.
///
/// Rows search for index 0 and run in parallel; each is independent of
/// scheduling.
pub fn sweep(n_min: usize, n_max: usize, engine: Engine) -> Result<Vec<SweepRow>> {
    sweep_with_level(n_min, n_max, engine, LoweringLevel::Universal)
}

pub fn sweep_with_level(n_min: usize, n_max: usize, engine: Engine, level: LoweringLevel) -> Result<Vec<SweepRow>> {
    if n_min < 2 || n_min > n_max || n_max > MAX_ANALYTIC_QUBITS {
        return Err(Error::InvalidConfig(format!(
            "sweep range must satisfy 2 <= n-min <= n-max <= {MAX_ANALYTIC_QUBITS}, got {n_min}..={n_max}"
        )));
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let p_engine = if engine_feasible(engine, n, level) {
                let config = GroverConfig::new(n, 0).engine(engine).level(level).shots(0);
                Some(run_search(&config)?.p_engine)
            } else {
                None
            };
            Ok(SweepRow {
                n,
                theta: theta(n),
                k0: optimal_iterations(n),
                p_analytic: success_probability(n, optimal_iterations(n)),
                p_engine,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{inner_product, ONE};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn theta_values() {
        assert!((theta(3) - 0.75f64.acos()).abs() < 1e-12);
        assert!((theta(3).to_degrees() - 41.4).abs() < 0.05);
        assert!((theta(2) - PI / 3.0).abs() < 1e-12);
        assert!((theta(20) - 2.0 / 1024.0).abs() < 1e-9);
        for n in 1..=30 {
            let want = 1.0 - 1.0 / 2f64.powi(n as i32 - 1);
            assert!((theta(n).cos() - want).abs() < 1e-12, "n = {n}");
            let direct = 2.0 * (1.0 - 1.0 / 2f64.powi(n as i32)).sqrt().acos();
            assert!((theta(n) - direct).abs() < 1e-7 * theta(n), "n = {n}");
        }
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(optimal_iterations(1), 1);
        assert_eq!(optimal_iterations(2), 1);
        assert_eq!(optimal_iterations(3), 2);
        assert_eq!(optimal_iterations(10), 25);
        assert_eq!((PI * 32.0 / 4.0).round() as usize, 25);
    }

    #[test]
    fn probabilities() {
        assert!((success_probability(3, 2) - 121.0 / 128.0).abs() < 1e-12);
        assert!((success_probability(2, 1) - 1.0).abs() < 1e-12);
        // Frozen from evaluating sin²(51·θ(10)/2).
        assert!((success_probability(10, 25) - 0.999_461_6).abs() < 1e-6);
    }

    #[test]
    fn analytic_components() {
        let (u, i) = analytic_state(3, 1);
        assert!((u - 7f64.sqrt() / (4.0 * SQRT2)).abs() < 1e-12);
        assert!((i - 5.0 / (4.0 * SQRT2)).abs() < 1e-12);
        let (u, i) = analytic_state(3, 2);
        assert!((u + 7f64.sqrt() / (8.0 * SQRT2)).abs() < 1e-12);
        assert!((i - 11.0 / (8.0 * SQRT2)).abs() < 1e-12);
        for n in 1..20 {
            let (u, i) = analytic_state(n, 0);
            let nn = 2f64.powi(n as i32);
            assert!((u - (1.0 - 1.0 / nn).sqrt()).abs() < 1e-12);
            assert!((i - 1.0 / nn.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_phase_on_uniform() {
        let mut st = prepare_uniform(3);
        apply_oracle_phase(&mut st, 5).unwrap();
        let a = 1.0 / (2.0 * SQRT2);
        for (i, amp) in st.amplitudes().iter().enumerate() {
            let want = if i == 5 { -a } else { a };
            assert!((amp.re - want).abs() < 1e-15 && amp.im == 0.0);
        }
        let mut b = StateVector::basis(3, 5);
        apply_oracle_phase(&mut b, 5).unwrap();
        assert_eq!(b[5], -ONE);
        let mut other = StateVector::basis(3, 2);
        apply_oracle_phase(&mut other, 5).unwrap();
        assert_eq!(other, StateVector::basis(3, 2));
        assert!(apply_oracle_phase(&mut other, 8).is_err());
    }

    #[test]
    fn diffusion_cases() {
        let mut u = StateVector::uniform(4);
        apply_diffusion(&mut u);
        assert!(u.max_abs_diff(&StateVector::uniform(4)) < 1e-15);

        let mut z = StateVector::zero(2);
        apply_diffusion(&mut z);
        let want = [-0.5, 0.5, 0.5, 0.5];
        for (a, w) in z.amplitudes().iter().zip(want) {
            assert!((a.re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn diffusion_on_psi1() {
        let mut st = prepare_uniform(3);
        apply_oracle_phase(&mut st, 5).unwrap();
        apply_diffusion(&mut st);
        let psi = StateVector::uniform(3);
        let want = psi.combine(Amplitude::new(0.5, 0.0), &StateVector::basis(3, 5), Amplitude::new(1.0 / SQRT2, 0.0));
        assert!(st.max_abs_diff(&want.unwrap()) < 1e-15);
        assert!((inner_product(&psi, &st).unwrap().re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn search_n3_statevector() {
        let r = run_search(&GroverConfig::new(3, 5).engine(Engine::StateVector).shots(100)).unwrap();
        assert_eq!(r.iterations, 2);
        assert!((r.p_engine - 121.0 / 128.0).abs() < 1e-10);
        assert_eq!(r.trace.len(), 3);
        let (u, i) = analytic_state(3, 2);
        assert!((r.trace[2].c_u - u).abs() < 1e-12 && (r.trace[2].c_i0 - i).abs() < 1e-12);
        assert_eq!(r.samples.values().sum::<usize>(), 100);
    }

    #[test]
    fn search_n2_analytic_always_finds_target() {
        for i0 in 0..4 {
            let r = run_search(&GroverConfig::new(2, i0).shots(500).seed(3)).unwrap();
            assert!((r.p_analytic - 1.0).abs() < 1e-12);
            assert_eq!(r.samples.len(), 1);
            assert_eq!(r.measured_mode, Some(i0));
        }
    }

    #[test]
    fn over_rotation_lowers_probability() {
        let base = run_search(&GroverConfig::new(6, 9)).unwrap();
        let over = run_search(&GroverConfig::new(6, 9).iterations(base.k0 + 2)).unwrap();
        assert!(over.p_analytic < base.p_analytic);
    }

    #[test]
    fn config_validation() {
        assert!(run_search(&GroverConfig::new(3, 9)).is_err());
        assert!(run_search(&GroverConfig::new(0, 0)).is_err());
        assert!(run_search(&GroverConfig::new(31, 0)).is_err());
        assert!(run_search(&GroverConfig::new(25, 0).engine(Engine::StateVector)).is_err());
        assert!(run_search(&GroverConfig::new(7, 0).engine(Engine::Compiled)).is_err());
        assert!(GroverConfig::new(11, 0).engine(Engine::Compiled).level(LoweringLevel::Operator).validate().is_ok());
    }

    #[test]
    fn measurement_delta_and_norm_check() {
        let mut rng = seeded_rng(1);
        let st = StateVector::basis(3, 5);
        for _ in 0..50 {
            assert_eq!(measure(&st, &mut rng).unwrap(), 5);
        }
        let raw = StateVector::from_raw(vec![ONE; 4]).unwrap();
        assert!(matches!(measure(&raw, &mut rng), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn cdf_edges() {
        let cdf = Cdf::new(&[0.5, 0.5, 0.0]).unwrap();
        assert_eq!(cdf.index_of(0.0), 0);
        assert_eq!(cdf.index_of(0.5), 1);
        assert_eq!(cdf.index_of(1.0), 1);
    }

    #[test]
    fn analytic_sampler_never_returns_out_of_range() {
        let mut rng = seeded_rng(9);
        for _ in 0..2000 {
            let s = sample_analytic(3, 7, 0.1, &mut rng);
            assert!(s < 8);
        }
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(sweep(1, 4, Engine::Analytic).is_err());
        assert!(sweep(5, 4, Engine::Analytic).is_err());
        assert!(sweep(2, 31, Engine::Analytic).is_err());
        let rows = sweep(2, 8, Engine::Compiled).unwrap();
        assert!(rows[..5].iter().all(|r| r.p_engine.is_some()));
        assert!(rows[5..].iter().all(|r| r.p_engine.is_none()));
    }
}
