//! Kronecker products, unitarity and entanglement with the dense types.
//!
//! cargo run --example tensor_products

use grover_sim::gates::{gate_matrix, GateKind};
use grover_sim::qcore::{is_unitary, tensor_product};
use grover_sim::{Matrix, StateVector};

fn main() -> grover_sim::Result<()> {
    let h = gate_matrix(GateKind::H)?;
    let hh = tensor_product(&h, &h);
    let uniform = hh.apply(&StateVector::zero(2))?;
    println!("H(x)H |00> = {:?}", uniform.amplitudes().iter().map(|a| a.re).collect::<Vec<_>>());

    let cnot = gate_matrix(GateKind::Cx { num_controls: 1 })?;
    let h_i = tensor_product(&h, &Matrix::identity(2));
    let bell = cnot.matmul(&h_i)?.apply(&StateVector::zero(2))?;
    println!("bell probabilities {:?}", bell.probabilities());
    println!("CNOT(H(x)I) unitary: {}", is_unitary(&cnot.matmul(&h_i)?, 1e-12));

    let product = StateVector::basis(1, 1).tensor(&StateVector::basis(2, 2));
    println!("|1>(x)|10> = |{:03b}>", (0..8).find(|&i| product[i].norm() > 0.5).unwrap());
    Ok(())
}
