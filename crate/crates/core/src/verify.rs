//! Matrix-level equivalence suite for the compiled search circuit.

use std::fmt;

use serde::Serialize;

use crate::circuit::{circuit_matrix, equivalent, EquivalenceMode};
use crate::compile::{
    build_diffusion_circuit, build_oracle_circuit, lower_mcx, phase_oracle_matrix, register_action, work_zero_block,
    GroverStages, Lowering, LoweringLevel,
};
use crate::gates::{apply_controlled_x, gate_matrix, GateKind};
use crate::grover::optimal_iterations;
use crate::qcore::{outer_product, Amplitude, Matrix, StateVector};
use crate::{Error, Result, MATRIX_EPS};

/// Largest register width the suite builds dense matrices for.
pub const MAX_VERIFY_QUBITS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// `2|ψ⟩⟨ψ| − I` for the uniform `ψ` on `n` qubits.
pub fn mean_inversion_matrix(n: usize) -> Matrix {
    let psi = StateVector::uniform(n);
    outer_product(&psi, &psi)
        .scale(Amplitude::new(2.0, 0.0))
        .sub(&Matrix::identity(1 << n))
        .expect("same shape")
}

/// Largest deviation of a work-zero block's columns from unit norm, i.e. how
/// much amplitude ends with a work qubit still set.
fn work_leak(block: &Matrix) -> f64 {
    (0..block.cols())
        .map(|j| {
            let col: f64 = (0..block.rows()).map(|i| block[(i, j)].norm_sqr()).sum();
            (1.0 - col).abs()
        })
        .fold(0.0, f64::max)
}

/// Runs every check for an `n`-qubit search for `i0`.
pub fn verify_search(n: usize, i0: u64) -> Result<VerifyReport> {
    verify_search_with(&Lowering::default(), n, i0)
}

pub fn verify_search_with(lowering: &Lowering, n: usize, i0: u64) -> Result<VerifyReport> {
    if n == 0 || n > MAX_VERIFY_QUBITS {
        return Err(Error::InvalidConfig(format!("matrix verification limited to n ≤ {MAX_VERIFY_QUBITS}")));
    }
    crate::compile::check_target(n, i0)?;
    let mut report = VerifyReport::default();

    let toffoli = circuit_matrix(lowering.toffoli())?;
    let exact = equivalent(&toffoli, &gate_matrix(GateKind::Cx { num_controls: 2 })?, EquivalenceMode::Exact, MATRIX_EPS)?;
    report.record("toffoli-decomposition", exact, "universal Toffoli equals U_Toffoli exactly");

    for c in 3..=n.max(4) {
        let mut ok = true;
        for level in [LoweringLevel::Toffoli, LoweringLevel::Universal] {
            let circuit = lowering.lower(&lower_mcx(c)?, level)?;
            let w = circuit.num_work();
            for input in 0..1usize << (c + 1) {
                let mut direct = StateVector::basis(c + 1, input);
                apply_controlled_x(&mut direct, &(0..c).collect::<Vec<_>>(), c)?;
                let want = StateVector::basis(c + 1 + w, direct.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap() << w);
                let got = circuit.run(&StateVector::basis(c + 1 + w, input << w))?;
                ok &= got.max_abs_diff(&want) < MATRIX_EPS;
            }
        }
        report.record(format!("mcx-ladder-{c}"), ok, format!("{c}-control X over all {} basis inputs", 1 << (c + 1)));
    }

    let oracle = build_oracle_circuit(n, i0)?;
    let want = phase_oracle_matrix(n, i0 as usize);
    for level in LoweringLevel::ALL {
        let (action, leak) = register_action(&lowering.lower(&oracle, level)?, n)?;
        let ok = equivalent(&action, &want, EquivalenceMode::Exact, MATRIX_EPS)? && leak < MATRIX_EPS;
        report.record(format!("oracle-{level}"), ok, format!("register action equals I - 2|{i0}><{i0}|, leak {leak:.1e}"));
    }

    let diffusion = build_diffusion_circuit(n);
    let want = mean_inversion_matrix(n);
    for level in LoweringLevel::ALL {
        let lowered = lowering.lower(&diffusion, level)?;
        let block = work_zero_block(&circuit_matrix(&lowered)?, lowered.num_work());
        let ok = equivalent(&block, &want, EquivalenceMode::Exact, MATRIX_EPS)? && work_leak(&block) < MATRIX_EPS;
        report.record(format!("diffusion-{level}"), ok, "matrix equals 2|psi><psi| - I exactly");
    }

    let k = optimal_iterations(n);
    let mut blocks = Vec::new();
    for level in LoweringLevel::ALL {
        let c = GroverStages::build_with(lowering, n, i0, level)?.assemble(k);
        let block = work_zero_block(&circuit_matrix(&c)?, c.num_work());
        let leak = work_leak(&block);
        report.record(
            format!("work-restored-{level}"),
            leak < MATRIX_EPS,
            format!("{} work qubits return to |0>, leak {leak:.1e}", c.num_work()),
        );
        blocks.push((level, block));
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let ok = equivalent(&blocks[i].1, &blocks[j].1, EquivalenceMode::GlobalPhase, MATRIX_EPS)?;
            report.record(
                format!("levels-{}-{}", blocks[i].0, blocks[j].0),
                ok,
                format!("assembled k = {k} circuits agree up to global phase"),
            );
        }
    }
    Ok(report)
}
