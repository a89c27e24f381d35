//! Gate definitions and in-place state-vector kernels.
//!
//! Kernels never build `2^m × 2^m` matrices. A gate on qubit `q` of an
//! `m`-qubit register pairs index `i` (bit `q` clear) with `i | stride`, where
//! `stride = 2^(m-1-q)`. The amplitude array splits into blocks of length
//! `2·stride`; every block holds `stride` independent pairs, so blocks can be
//! processed in parallel with each amplitude written exactly once.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::qcore::{Amplitude, Matrix, StateVector, I, ONE, ZERO};
use crate::{Error, Result, AMPLITUDE_EPS};

/// States at least this long are updated with rayon.
const PARALLEL_MIN_DIM: usize = 1 << 14;

pub type Mat2 = [[Amplitude; 2]; 2];

/// Phase factors representable in circuit text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn factor(self) -> Amplitude {
        match self {
            Phase::I => I,
            Phase::MinusOne => -ONE,
            Phase::MinusI => -I,
        }
    }

    pub fn inverse(self) -> Phase {
        match self {
            Phase::I => Phase::MinusI,
            Phase::MinusOne => Phase::MinusOne,
            Phase::MinusI => Phase::I,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Phase::I => "i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    H,
    /// Phase gate `diag(1, i)`.
    S,
    /// π/8 gate `diag(1, e^{iπ/4})`.
    T,
    Tdg,
    /// Controlled-X with the given number of controls (at least one).
    Cx { num_controls: usize },
    GPhase(Phase),
}

impl GateKind {
    pub fn is_one_qubit(self) -> bool {
        matches!(self, GateKind::X | GateKind::H | GateKind::S | GateKind::T | GateKind::Tdg)
    }

    /// Text mnemonic. Controlled-X uses `cx`, `ccx` or `ncx` by control count.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cx { num_controls: 1 } => "cx",
            GateKind::Cx { num_controls: 2 } => "ccx",
            GateKind::Cx { .. } => "ncx",
            GateKind::GPhase(_) => "gphase",
        }
    }

    /// The 2×2 matrix of a one-qubit kind.
    pub fn one_qubit_matrix(self) -> Option<Mat2> {
        let r = |v: f64| Complex64::new(v, 0.0);
        let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        Some(match self {
            GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
            GateKind::H => [[r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)], [r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)]],
            GateKind::S => [[ONE, ZERO], [ZERO, I]],
            GateKind::T => [[ONE, ZERO], [ZERO, t]],
            GateKind::Tdg => [[ONE, ZERO], [ZERO, t.conj()]],
            _ => return None,
        })
    }
}

/// The textbook matrix of a gate kind.
///
/// One-qubit kinds give 2×2 matrices. `Cx { num_controls: c }` gives the
/// `2^(c+1)`-dimensional matrix with controls on the leading qubits and the
/// target last, so one control is `U_CNOT` and two is `U_Toffoli`. `GPhase` is
/// the 1×1 scalar.
pub fn gate_matrix(kind: GateKind) -> Result<Matrix> {
    if let Some(u) = kind.one_qubit_matrix() {
        return Ok(Matrix::from_rows(&u));
    }
    match kind {
        GateKind::Cx { num_controls: 0 } => Err(Error::NoControls),
        GateKind::Cx { num_controls } => {
            let dim = 1usize << (num_controls + 1);
            let mut m = Matrix::zeros(dim, dim);
            for i in 0..dim - 2 {
                m[(i, i)] = ONE;
            }
            m[(dim - 2, dim - 1)] = ONE;
            m[(dim - 1, dim - 2)] = ONE;
            Ok(m)
        }
        GateKind::GPhase(p) => Ok(Matrix::from_rows(&[[p.factor()]])),
        _ => unreachable!("one-qubit kinds handled above"),
    }
}

#[inline]
fn bit_of(num_qubits: usize, q: usize) -> usize {
    1 << (num_qubits - 1 - q)
}

fn check_qubit(state: &StateVector, q: usize) -> Result<()> {
    if q < state.num_qubits() {
        Ok(())
    } else {
        Err(Error::QubitOutOfRange { index: q, num_qubits: state.num_qubits() })
    }
}

#[cfg(debug_assertions)]
fn check_unitary(u: &Mat2) -> Result<()> {
    if crate::qcore::is_unitary(&Matrix::from_rows(u), crate::MATRIX_EPS) {
        Ok(())
    } else {
        Err(Error::NonUnitary)
    }
}

/// Runs `f(base, lo, hi)` over every block of pairs for qubit stride `stride`.
/// `base` is the global index of `lo[0]`.
fn for_each_pair_block<F>(amps: &mut [Amplitude], stride: usize, f: F)
where
    F: Fn(usize, &mut [Amplitude], &mut [Amplitude]) + Sync,
{
    let block = 2 * stride;
    if amps.len() < PARALLEL_MIN_DIM {
        for (b, chunk) in amps.chunks_mut(block).enumerate() {
            let (lo, hi) = chunk.split_at_mut(stride);
            f(b * block, lo, hi);
        }
    } else if stride >= PARALLEL_MIN_DIM / 2 {
        // Few large blocks: split each block into sub-ranges instead.
        let sub = PARALLEL_MIN_DIM / 4;
        for (b, chunk) in amps.chunks_mut(block).enumerate() {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_chunks_mut(sub).zip(hi.par_chunks_mut(sub)).enumerate().for_each(|(s, (l, h))| {
                f(b * block + s * sub, l, h);
            });
        }
    } else {
        amps.par_chunks_mut(block).enumerate().for_each(|(b, chunk)| {
            let (lo, hi) = chunk.split_at_mut(stride);
            f(b * block, lo, hi);
        });
    }
}

/// Applies a 2×2 unitary to qubit `q` in place.
///
/// Unitarity of `u` is only checked in debug builds.
pub fn apply_one_qubit(state: &mut StateVector, q: usize, u: &Mat2) -> Result<()> {
    check_qubit(state, q)?;
    #[cfg(debug_assertions)]
    check_unitary(u)?;
    let stride = bit_of(state.num_qubits(), q);
    let u = *u;
    for_each_pair_block(state.amplitudes_mut(), stride, move |_, lo, hi| {
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = u[0][0] * x + u[0][1] * y;
            *b = u[1][0] * x + u[1][1] * y;
        }
    });
    Ok(())
}

/// Applies a one-qubit gate kind to qubit `q`.
pub fn apply_kind(state: &mut StateVector, q: usize, kind: GateKind) -> Result<()> {
    let u = kind.one_qubit_matrix().ok_or(Error::InvalidConfig(format!("{kind:?} is not a one-qubit gate")))?;
    check_qubit(state, q)?;
    let stride = bit_of(state.num_qubits(), q);
    match kind {
        GateKind::X => for_each_pair_block(state.amplitudes_mut(), stride, |_, lo, hi| lo.swap_with_slice(hi)),
        // Diagonal gates only touch the upper half of each pair.
        GateKind::S | GateKind::T | GateKind::Tdg => {
            let phase = u[1][1];
            for_each_pair_block(state.amplitudes_mut(), stride, move |_, _, hi| {
                hi.iter_mut().for_each(|b| *b *= phase);
            })
        }
        _ => return apply_one_qubit(state, q, &u),
    }
    Ok(())
}

/// Validates a controlled-X signature against a register of `num_qubits`.
pub fn check_controls(controls: &[usize], target: usize, num_qubits: usize) -> Result<()> {
    if controls.is_empty() {
        return Err(Error::NoControls);
    }
    for (k, &c) in controls.iter().enumerate() {
        if c >= num_qubits {
            return Err(Error::QubitOutOfRange { index: c, num_qubits });
        }
        if c == target {
            return Err(Error::ControlIsTarget(c));
        }
        if controls[..k].contains(&c) {
            return Err(Error::DuplicateControl(c));
        }
    }
    if target >= num_qubits {
        return Err(Error::QubitOutOfRange { index: target, num_qubits });
    }
    Ok(())
}

/// Multi-controlled X: swaps `|i⟩` and `|i ⊕ target⟩` whenever every control
/// bit of `i` is 1.
pub fn apply_controlled_x(state: &mut StateVector, controls: &[usize], target: usize) -> Result<()> {
    let m = state.num_qubits();
    check_controls(controls, target, m)?;
    let mask = controls.iter().fold(0usize, |acc, &c| acc | bit_of(m, c));
    let stride = bit_of(m, target);
    for_each_pair_block(state.amplitudes_mut(), stride, move |base, lo, hi| {
        for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if (base + j) & mask == mask {
                std::mem::swap(a, b);
            }
        }
    });
    Ok(())
}

/// Multiplies every amplitude by a unit-modulus `factor`.
pub fn apply_global_phase(state: &mut StateVector, factor: Amplitude) -> Result<()> {
    let modulus = factor.norm();
    if (modulus - 1.0).abs() > AMPLITUDE_EPS {
        return Err(Error::NonUnitPhase(modulus));
    }
    let amps = state.amplitudes_mut();
    if amps.len() >= PARALLEL_MIN_DIM {
        amps.par_iter_mut().for_each(|a| *a *= factor);
    } else {
        amps.iter_mut().for_each(|a| *a *= factor);
    }
    Ok(())
}
