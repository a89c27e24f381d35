//! Complex linear algebra over the computational basis.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result, AMPLITUDE_EPS};

/// A complex probability amplitude.
pub type Amplitude = Complex64;

pub const ZERO: Amplitude = Complex64::new(0.0, 0.0);
pub const ONE: Amplitude = Complex64::new(1.0, 0.0);
pub const I: Amplitude = Complex64::new(0.0, 1.0);

/// Amplitudes of an `m`-qubit register, indexed by basis label.
///
/// Index `i` is the basis state whose binary expansion `j₁j₂…jₘ` has qubit 0
/// as the most significant bit.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// The all-zero basis state `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    /// Basis state `|index⟩`.
    ///
    /// Panics if `index >= 2^num_qubits`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[index] = ONE;
        Self { num_qubits, amps }
    }

    /// Equal superposition `1/√N Σ|i⟩`.
    pub fn uniform(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self { num_qubits, amps: vec![a; dim] }
    }

    /// Builds a normalized state, checking length, finiteness and norm.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let state = Self::from_raw(amps)?;
        let n = state.norm();
        if (n - 1.0).abs() > AMPLITUDE_EPS {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    /// Builds a vector that need not be normalized. Length and finiteness are
    /// still checked.
    pub fn from_raw(amps: Vec<Amplitude>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        if let Some(i) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { num_qubits: len.trailing_zeros() as usize, amps })
    }

    /// Builds a real-valued state from `f64` amplitudes, normalizing them.
    pub fn from_real_normalized(values: &[f64]) -> Result<Self> {
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        Self::from_amplitudes(values.iter().map(|v| Complex64::new(v / norm, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Amplitude] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amps
    }

    /// `|| |φ⟩ || = √⟨φ|φ⟩`.
    pub fn norm(&self) -> f64 {
        norm(self)
    }

    /// Measurement probabilities `|αᵢ|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// `α·self + β·other`, unnormalized.
    pub fn combine(&self, alpha: Amplitude, other: &Self, beta: Amplitude) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let amps = self.amps.iter().zip(&other.amps).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(Self { num_qubits: self.num_qubits, amps })
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Self { num_qubits: self.num_qubits + other.num_qubits, amps }
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// The vector as a `dim × 1` column matrix.
    pub fn to_column(&self) -> Matrix {
        Matrix { rows: self.dim(), cols: 1, data: self.amps.clone() }
    }
}

impl Index<usize> for StateVector {
    type Output = Amplitude;

    fn index(&self, i: usize) -> &Amplitude {
        &self.amps[i]
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[{}](", self.num_qubits)?;
        for (i, a) in self.amps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}{:+.6}i", a.re, a.im)?;
        }
        write!(f, ")")
    }
}

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Amplitude>,
}

/// Square matrices used as gate definitions and circuit unitaries.
pub type UnitaryMatrix = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds from row slices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[Amplitude]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Builds from real row slices.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let complex: Vec<Vec<Amplitude>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_diagonal(diag: &[Amplitude]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Builds a square matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[StateVector]) -> Self {
        let dim = columns.len();
        let mut m = Self::zeros(dim, dim);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), dim, "column length must equal column count");
            for (i, a) in col.amplitudes().iter().enumerate() {
                m[(i, j)] = *a;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Amplitude) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-ONE))
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self · |v⟩`. The result is unnormalized in general.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_dim(self.cols, v.dim())?;
        if !self.rows.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.rows));
        }
        let amps = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        StateVector::from_raw(amps)
    }

    /// Largest entrywise modulus of `self − other`. Shapes must match.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Amplitude;

    fn index(&self, (i, j): (usize, usize)) -> &Amplitude {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Amplitude {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let a = self[(i, j)];
                write!(f, " {:>7.4}{:+.4}i", a.re, a.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// Kronecker product: the `pr × qs` block matrix `[Aᵢⱼ·B]`.
pub fn tensor_product(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `⟨bra|ket⟩`, conjugate-linear in `bra`.
pub fn inner_product(bra: &StateVector, ket: &StateVector) -> Result<Amplitude> {
    check_dim(bra.dim(), ket.dim())?;
    Ok(bra.amps.iter().zip(&ket.amps).map(|(b, k)| b.conj() * k).sum())
}

/// `|ket⟩⟨bra|`, entries `ketᵢ · conj(braⱼ)`.
pub fn outer_product(ket: &StateVector, bra: &StateVector) -> Matrix {
    let mut out = Matrix::zeros(ket.dim(), bra.dim());
    for (i, k) in ket.amps.iter().enumerate() {
        for (j, b) in bra.amps.iter().enumerate() {
            out[(i, j)] = k * b.conj();
        }
    }
    out
}

/// True iff `max |U†U − I| < eps`. Non-square matrices are never unitary.
pub fn is_unitary(m: &Matrix, eps: f64) -> bool {
    if !m.is_square() || !m.is_finite() {
        return false;
    }
    let product = m.adjoint().matmul(m).expect("square");
    product.max_abs_diff(&Matrix::identity(m.rows)).expect("same shape") < eps
}

pub fn norm(state: &StateVector) -> f64 {
    state.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Amplitude {
        Complex64::new(re, im)
    }

    fn pauli_x() -> Matrix {
        Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
    }

    #[test]
    fn x_tensor_identity3_has_antidiagonal_blocks() {
        let m = tensor_product(&pauli_x(), &Matrix::identity(3));
        let mut expected = Matrix::zeros(6, 6);
        for i in 0..3 {
            expected[(i, 3 + i)] = ONE;
            expected[(3 + i, i)] = ONE;
        }
        assert_eq!(m, expected);
    }

    #[test]
    fn ket0_tensor_ket1() {
        let v = tensor_product(&StateVector::basis(1, 0).to_column(), &StateVector::basis(1, 1).to_column());
        assert_eq!(v, StateVector::basis(2, 1).to_column());
        assert_eq!(StateVector::basis(1, 0).tensor(&StateVector::basis(1, 1)), StateVector::basis(2, 1));
    }

    #[test]
    fn identity_tensor_identity() {
        assert_eq!(tensor_product(&Matrix::identity(2), &Matrix::identity(2)), Matrix::identity(4));
    }

    #[test]
    fn inner_product_formula() {
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let (cc, d) = (c(0.0, 1.0 / 2f64.sqrt()), c(1.0 / 2f64.sqrt(), 0.0));
        let phi = StateVector::from_amplitudes(vec![a, b]).unwrap();
        let psi = StateVector::from_amplitudes(vec![cc, d]).unwrap();
        let got = inner_product(&phi, &psi).unwrap();
        let want = a.conj() * cc + b.conj() * d;
        assert!((got - want).norm() < 1e-15);
        let back = inner_product(&psi, &phi).unwrap();
        assert!((back - got.conj()).norm() < 1e-15);
    }

    #[test]
    fn basis_orthogonal_and_uniform_overlap() {
        assert_eq!(inner_product(&StateVector::basis(1, 0), &StateVector::basis(1, 1)).unwrap(), ZERO);
        for n in 1..8 {
            let ov = inner_product(&StateVector::uniform(n), &StateVector::basis(n, (1 << n) - 1)).unwrap();
            assert!((ov.re - 1.0 / 2f64.powi(n as i32).sqrt()).abs() < 1e-14);
            assert_eq!(ov.im, 0.0);
        }
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let err = inner_product(&StateVector::zero(1), &StateVector::zero(2)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, actual: 4 });
    }

    #[test]
    fn outer_product_entries() {
        let (a, b, cc, d) = (c(0.6, 0.0), c(0.0, 0.8), c(0.0, 1.0), c(0.0, 0.0));
        let phi = StateVector::from_amplitudes(vec![a, b]).unwrap();
        let psi = StateVector::from_amplitudes(vec![cc, d]).unwrap();
        let m = outer_product(&phi, &psi);
        let want = Matrix::from_rows(&[[a * cc.conj(), a * d.conj()], [b * cc.conj(), b * d.conj()]]);
        assert_eq!(m, want);
        let p0 = outer_product(&StateVector::basis(1, 0), &StateVector::basis(1, 0));
        assert_eq!(p0, Matrix::from_diagonal(&[ONE, ZERO]));
    }

    #[test]
    fn outer_product_lowers_amplitude() {
        let op = outer_product(&StateVector::basis(1, 1), &StateVector::basis(1, 0));
        let v = StateVector::from_real_normalized(&[0.6, 0.8]).unwrap();
        let out = op.apply(&v).unwrap();
        assert!((out[0] - ZERO).norm() < 1e-15);
        assert!((out[1] - c(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unitarity_checks() {
        let s = 1.0 / 2f64.sqrt();
        let h = Matrix::from_real_rows(&[[s, s], [s, -s]]);
        assert!(is_unitary(&h, 1e-12));
        assert!(!is_unitary(&Matrix::from_real_rows(&[[1.0, 0.0], [0.0, 2.0]]), 1e-12));
        assert!(!is_unitary(&Matrix::zeros(2, 3), 1e-12));
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&StateVector::zero(3)), 1.0);
        let st = StateVector::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!((norm(&st) - 1.0).abs() < 1e-15);
        let raw = StateVector::from_raw(vec![ONE; 4]).unwrap();
        assert_eq!(norm(&raw), 2.0);
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(StateVector::from_raw(vec![ONE; 3]).unwrap_err(), Error::NotPowerOfTwo(3));
        assert_eq!(StateVector::from_raw(vec![]).unwrap_err(), Error::NotPowerOfTwo(0));
        assert_eq!(StateVector::from_raw(vec![ONE, c(f64::NAN, 0.0)]).unwrap_err(), Error::NonFinite(1));
        assert!(matches!(StateVector::from_amplitudes(vec![ONE; 4]), Err(Error::NotNormalized(_))));
    }
}
