//! Lowers a full search to CNOT and one-qubit gates, runs the circuit and
//! compares gate counts across lowering levels.
//!
//! cargo run --example compile_universal -- 4 9

use grover_sim::circuit::gate_census;
use grover_sim::compile::{grover_input, predicted_gate_count, register_marginal, GroverStages, LoweringLevel};
use grover_sim::grover::optimal_iterations;

fn main() -> grover_sim::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(4) as usize;
    let i0 = args.next().unwrap_or(9);
    let k = optimal_iterations(n);

    for level in LoweringLevel::ALL {
        let stages = GroverStages::build(n, i0, level)?;
        let circuit = stages.assemble(k);
        let out = circuit.run(&grover_input(n, circuit.num_work()))?;
        let p = register_marginal(&out, n)[i0 as usize];
        println!("{:>9}: {} qubits, p = {p:.12}", level.name(), circuit.total_qubits());
        println!("           {}", gate_census(&circuit));
    }
    println!("predicted elementary count: {:.1}", predicted_gate_count(n));
    Ok(())
}
