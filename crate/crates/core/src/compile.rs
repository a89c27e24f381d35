//! Grover circuit construction and lowering to `{CNOT, one-qubit gates}`.
//!
//! Register layout of an assembled search circuit:
//!
//! ```text
//! qubits 0..n     search register, qubit 0 most significant
//! qubit  n        oracle target, enters as |1⟩ and is turned into |−⟩
//! n+1..           work qubits, enter and leave as |0⟩
//! ```
//!
//! Three levels are produced. `operator` keeps multi-controlled X gates,
//! `toffoli` replaces every gate with three or more controls by a ladder of
//! Toffolis through work qubits, and `universal` additionally expands every
//! Toffoli into CNOTs and `h`/`t`/`tdg`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::gates::Phase;
use crate::qcore::{Amplitude, Matrix, StateVector, ZERO};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoweringLevel {
    #[default]
    Operator,
    Toffoli,
    Universal,
}

impl LoweringLevel {
    pub const ALL: [LoweringLevel; 3] = [LoweringLevel::Operator, LoweringLevel::Toffoli, LoweringLevel::Universal];

    pub fn name(self) -> &'static str {
        match self {
            LoweringLevel::Operator => "operator",
            LoweringLevel::Toffoli => "toffoli",
            LoweringLevel::Universal => "universal",
        }
    }
}

impl fmt::Display for LoweringLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LoweringLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LoweringLevel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown level `{s}`")))
    }
}

pub(crate) fn check_target(n: usize, i0: u64) -> Result<()> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidConfig(format!("n must be in 1..=63, got {n}")));
    }
    let size = 1u64 << n;
    if i0 >= size {
        return Err(Error::TargetOutOfRange { target: i0, size });
    }
    Ok(())
}

/// Phase oracle `I − 2|i₀⟩⟨i₀|` realized on `n` register qubits plus a target
/// qubit `n` held in `|−⟩`.
///
/// Register qubits whose bit of `i0` is 0 are conjugated by X so the
/// `n`-control X fires exactly on `|i₀⟩`.
pub fn build_oracle_circuit(n: usize, i0: u64) -> Result<Circuit> {
    check_target(n, i0)?;
    let zeros: Vec<usize> = (0..n).filter(|&q| (i0 >> (n - 1 - q)) & 1 == 0).collect();
    let mut c = Circuit::new(n + 1);
    for &q in &zeros {
        c.push(Gate::X(q))?;
    }
    c.push(Gate::ncx((0..n).collect(), n))?;
    for &q in &zeros {
        c.push(Gate::X(q))?;
    }
    Ok(c)
}

/// `2|0⟩⟨0| − I` on `n` qubits.
///
/// X on every qubit maps `|0…0⟩` to `|1…1⟩`; the H-conjugated multi-control X
/// on the last qubit then flips the sign of `|1…1⟩` alone. The two `gphase i`
/// statements contribute the overall `−1` that turns `I − 2|0⟩⟨0|` into
/// `2|0⟩⟨0| − I` exactly.
pub fn diffusion_core(n: usize) -> Circuit {
    assert!(n >= 1, "diffusion needs at least one qubit");
    let last = n - 1;
    let mut c = Circuit::new(n);
    let flip = if n == 1 { Gate::X(last) } else { Gate::ncx((0..last).collect(), last) };
    let ops = (0..n)
        .map(Gate::X)
        .chain([Gate::GPhase(Phase::I), Gate::H(last), flip, Gate::H(last), Gate::GPhase(Phase::I)])
        .chain((0..n).map(Gate::X));
    for g in ops {
        c.push(g).expect("indices in range");
    }
    c
}

/// Inversion about the mean, `2|ψ⟩⟨ψ| − I = H^{⊗n}(2|0⟩⟨0| − I)H^{⊗n}`.
pub fn build_diffusion_circuit(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.push(Gate::H(q)).expect("in range");
    }
    c.append(&diffusion_core(n)).expect("same width");
    for q in 0..n {
        c.push(Gate::H(q)).expect("in range");
    }
    c
}

/// Work qubits a multi-controlled X with `num_controls` controls needs.
pub fn work_needed(num_controls: usize) -> usize {
    num_controls.saturating_sub(2)
}

/// Toffoli ladder for a multi-controlled X.
///
/// One or two controls pass through unchanged. With `c ≥ 3` controls the
/// conjunction is accumulated into `c − 2` work qubits, copied onto the
/// target by one Toffoli, and uncomputed. Work qubits must be `|0⟩` on entry
/// and are `|0⟩` again on exit.
pub fn mcx_ladder(controls: &[usize], target: usize, work: &[usize]) -> Result<Vec<Gate>> {
    let c = controls.len();
    if c == 0 {
        return Err(Error::NoControls);
    }
    if c <= 2 {
        return Ok(vec![Gate::ncx(controls.to_vec(), target)]);
    }
    let needed = work_needed(c);
    if work.len() < needed {
        return Err(Error::InsufficientWork { needed, available: work.len() });
    }
    let mut compute = vec![Gate::ccx(controls[0], controls[1], work[0])];
    for k in 2..c - 1 {
        compute.push(Gate::ccx(controls[k], work[k - 2], work[k - 1]));
    }
    let mut ops = compute.clone();
    ops.push(Gate::ccx(controls[c - 1], work[needed - 1], target));
    ops.extend(compute.into_iter().rev());
    Ok(ops)
}

/// Standalone lowered multi-controlled X: controls on qubits `0..c`, target
/// on qubit `c`, and `c − 2` work qubits after it.
pub fn lower_mcx(num_controls: usize) -> Result<Circuit> {
    let work: Vec<usize> = (num_controls + 1..num_controls + 1 + work_needed(num_controls)).collect();
    let mut c = Circuit::with_work(num_controls + 1, work.len());
    for g in mcx_ladder(&(0..num_controls).collect::<Vec<_>>(), num_controls, &work)? {
        c.push(g)?;
    }
    Ok(c)
}

/// Toffoli on qubits `(0, 1) → 2` over `{h, t, tdg, cx}`.
///
/// Six CNOTs, seven T-type phases and two Hadamards; the matrix is exactly
/// `U_Toffoli` with no leftover phase.
pub fn lower_toffoli() -> Circuit {
    const TEXT: &str = "qubits 3
h 2
cx 1 2
tdg 2
cx 0 2
t 2
cx 1 2
tdg 2
cx 0 2
t 1
t 2
h 2
cx 0 1
t 0
tdg 1
cx 0 1
";
    crate::circuit::parse_circuit(TEXT).expect("static circuit")
}

/// Lowering passes parameterized by the Toffoli template.
///
/// The default template is [`lower_toffoli`]. Alternative templates exist so
/// verification can be exercised against a broken decomposition.
#[derive(Debug, Clone)]
pub struct Lowering {
    toffoli: Circuit,
}

impl Default for Lowering {
    fn default() -> Self {
        Self { toffoli: lower_toffoli() }
    }
}

impl Lowering {
    /// Uses `template` (a 3-qubit circuit, controls 0 and 1, target 2) for
    /// every Toffoli at universal level.
    pub fn with_toffoli(template: Circuit) -> Result<Self> {
        if template.total_qubits() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, actual: template.total_qubits() });
        }
        Ok(Self { toffoli: template })
    }

    pub fn toffoli(&self) -> &Circuit {
        &self.toffoli
    }

    /// Number of work qubits `c` needs after lowering to `level`, on top of
    /// the work qubits it already declares.
    pub fn extra_work(c: &Circuit, level: LoweringLevel) -> usize {
        if level == LoweringLevel::Operator {
            return 0;
        }
        c.ops()
            .iter()
            .map(|g| match g {
                Gate::Cx { controls, .. } => work_needed(controls.len()),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Rewrites `c` at `level`, appending work qubits as needed. Every
    /// multi-controlled X shares the same work block since each ladder
    /// leaves it in `|0⟩`.
    pub fn lower(&self, c: &Circuit, level: LoweringLevel) -> Result<Circuit> {
        self.lower_with_work(c, level, Self::extra_work(c, level))
    }

    /// As [`Lowering::lower`], but declares exactly `extra_work` new work
    /// qubits so separately lowered pieces can share one layout.
    pub fn lower_with_work(&self, c: &Circuit, level: LoweringLevel, extra_work: usize) -> Result<Circuit> {
        let base = c.total_qubits();
        let mut out = Circuit::with_work(c.num_qubits(), c.num_work() + extra_work);
        let work: Vec<usize> = (base..base + extra_work).collect();
        for g in c.ops() {
            let toffoli_level = match g {
                Gate::Cx { controls, target } if level != LoweringLevel::Operator => {
                    mcx_ladder(controls, *target, &work)?
                }
                g => vec![g.clone()],
            };
            for g in toffoli_level {
                match &g {
                    Gate::Cx { controls, target } if level == LoweringLevel::Universal && controls.len() == 2 => {
                        let map = [controls[0], controls[1], *target];
                        for t in self.toffoli.ops() {
                            out.push(t.map_qubits(|q| map[q]))?;
                        }
                    }
                    _ => {
                        out.push(g)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Lowers with the default Toffoli template.
pub fn lower_circuit(c: &Circuit, level: LoweringLevel) -> Result<Circuit> {
    Lowering::default().lower(c, level)
}

/// The two building blocks of a search circuit at one level, on a shared
/// layout: the Hadamard preparation and one Grover iteration.
#[derive(Debug, Clone)]
pub struct GroverStages {
    pub prep: Circuit,
    pub iteration: Circuit,
}

impl GroverStages {
    pub fn build(n: usize, i0: u64, level: LoweringLevel) -> Result<Self> {
        Self::build_with(&Lowering::default(), n, i0, level)
    }

    pub fn build_with(lowering: &Lowering, n: usize, i0: u64, level: LoweringLevel) -> Result<Self> {
        let mut prep = Circuit::new(n + 1);
        for q in 0..=n {
            prep.push(Gate::H(q))?;
        }
        let mut iteration = build_oracle_circuit(n, i0)?;
        iteration.append(&build_diffusion_circuit(n))?;

        let work = Lowering::extra_work(&iteration, level);
        Ok(Self {
            prep: lowering.lower_with_work(&prep, level, work)?,
            iteration: lowering.lower_with_work(&iteration, level, work)?,
        })
    }

    pub fn num_work(&self) -> usize {
        self.iteration.num_work()
    }

    /// `prep` followed by `k` iterations.
    pub fn assemble(&self, k: usize) -> Circuit {
        let mut c = self.prep.clone();
        for _ in 0..k {
            c.append(&self.iteration).expect("shared layout");
        }
        c
    }
}

/// Full search circuit: Hadamards on register and target, then `k` rounds of
/// oracle followed by diffusion. Run it on [`grover_input`].
pub fn assemble_grover_circuit(n: usize, i0: u64, k: usize, level: LoweringLevel) -> Result<Circuit> {
    Ok(GroverStages::build(n, i0, level)?.assemble(k))
}

/// `|0…0⟩|1⟩|0…0⟩`: register cleared, oracle target set, work cleared.
pub fn grover_input(n: usize, num_work: usize) -> StateVector {
    StateVector::basis(n + 1 + num_work, 1 << num_work)
}

/// Gate count model `π(17n − 15)√(2^n) + n + 2`.
pub fn predicted_gate_count(n: usize) -> f64 {
    let n = n as f64;
    PI * (17.0 * n - 15.0) * 2f64.powf(n / 2.0) + n + 2.0
}

/// Register amplitudes of a state laid out as register, target, work, taking
/// the component with target `|−⟩` and work `|0…0⟩`.
pub fn register_component(state: &StateVector, n: usize) -> StateVector {
    let w = state.num_qubits() - n - 1;
    let amps = (0..1usize << n)
        .map(|i| {
            let base = (i << 1) << w;
            (state[base] - state[base | (1 << w)]) * FRAC_1_SQRT_2
        })
        .collect();
    StateVector::from_raw(amps).expect("power-of-two length")
}

/// Marginal probabilities of the first `n` qubits.
pub fn register_marginal(state: &StateVector, n: usize) -> Vec<f64> {
    let rest = state.num_qubits() - n;
    let mut probs = vec![0.0; 1 << n];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[i >> rest] += a.norm_sqr();
    }
    probs
}

/// `|register⟩ ⊗ |−⟩ ⊗ |0…0⟩` on `n + 1 + num_work` qubits.
pub fn embed_register(register: &StateVector, num_work: usize) -> StateVector {
    let n = register.num_qubits();
    let w = num_work;
    let mut amps = vec![ZERO; 1 << (n + 1 + w)];
    for (i, a) in register.amplitudes().iter().enumerate() {
        let base = (i << 1) << w;
        amps[base] = a * FRAC_1_SQRT_2;
        amps[base | (1 << w)] = -a * FRAC_1_SQRT_2;
    }
    StateVector::from_raw(amps).expect("power-of-two length")
}

/// Action of a register/target/work circuit on the register alone.
///
/// Column `i` is the register component after running on
/// `|i⟩|−⟩|0…0⟩`. The second value is the largest norm that leaked out of
/// the `|−⟩ ⊗ |0…0⟩` sector over all columns.
pub fn register_action(c: &Circuit, n: usize) -> Result<(Matrix, f64)> {
    if c.total_qubits() < n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, actual: c.total_qubits() });
    }
    let w = c.total_qubits() - n - 1;
    let mut leak: f64 = 0.0;
    let mut columns = Vec::with_capacity(1 << n);
    for i in 0..1usize << n {
        let out = c.run(&embed_register(&StateVector::basis(n, i), w))?;
        let reg = register_component(&out, n);
        leak = leak.max((1.0 - reg.norm().powi(2)).max(0.0).sqrt());
        columns.push(reg);
    }
    Ok((Matrix::from_columns(&columns), leak))
}

/// Sub-block of a circuit unitary on inputs and outputs whose last
/// `num_work` qubits are `|0⟩`.
pub fn work_zero_block(m: &Matrix, num_work: usize) -> Matrix {
    let dim = m.rows() >> num_work;
    let mut out = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = m[(i << num_work, j << num_work)];
        }
    }
    out
}

/// Dense `I − 2|i₀⟩⟨i₀|`.
pub fn phase_oracle_matrix(n: usize, i0: usize) -> Matrix {
    let mut diag = vec![Amplitude::new(1.0, 0.0); 1 << n];
    diag[i0] = Amplitude::new(-1.0, 0.0);
    Matrix::from_diagonal(&diag)
}
