//! Parse a circuit from text, run it and write it back out.
//!
//! cargo run --example circuit_text_format

use grover_sim::circuit::{parse_circuit, serialize_circuit};
use grover_sim::StateVector;

const GHZ: &str = "\
qubits 3
# build (|000> + |111>)/sqrt2
h 0
cx 0 1
cx 1 2
";

fn main() -> grover_sim::Result<()> {
    let circuit = parse_circuit(GHZ)?;
    let out = circuit.run(&StateVector::zero(3))?;
    for (i, p) in out.probabilities().iter().enumerate().filter(|(_, p)| **p > 0.0) {
        println!("|{i:03b}> {p:.3}");
    }
    print!("{}", serialize_circuit(&circuit));

    match parse_circuit("qubits 2\ncx 0 0\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
