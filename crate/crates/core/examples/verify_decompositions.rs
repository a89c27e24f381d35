//! Matrix-level checks of every decomposition used by the compiler.
//!
//! cargo run --example verify_decompositions

use grover_sim::circuit::{circuit_matrix, equivalent, EquivalenceMode};
use grover_sim::compile::{lower_mcx, lower_toffoli, Lowering, LoweringLevel};
use grover_sim::gates::{gate_matrix, GateKind};
use grover_sim::verify::verify_search;

fn main() -> grover_sim::Result<()> {
    let toffoli = circuit_matrix(&lower_toffoli())?;
    let exact = equivalent(&toffoli, &gate_matrix(GateKind::Cx { num_controls: 2 })?, EquivalenceMode::Exact, 1e-10)?;
    println!("toffoli template exact: {exact}");

    let ladder = Lowering::default().lower(&lower_mcx(5)?, LoweringLevel::Toffoli)?;
    println!("5-control ladder: {} gates, {} work qubits", ladder.len(), ladder.num_work());
    print!("{ladder}");

    for n in 1..=4 {
        let report = verify_search(n, (1 << n) - 1)?;
        println!("n = {n}\n{report}");
    }
    Ok(())
}
