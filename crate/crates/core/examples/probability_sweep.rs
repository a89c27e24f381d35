//! Success probability at k0 iterations for n = 2..30, cross-checked by the
//! state-vector engine where it fits in memory.
//!
//! cargo run --release --example probability_sweep

use grover_sim::grover::{sweep, Engine};

fn main() -> grover_sim::Result<()> {
    let analytic = sweep(2, 30, Engine::Analytic)?;
    let simulated = sweep(2, 16, Engine::StateVector)?;
    println!("{:>3} {:>10} {:>7} {:>20} {:>20}", "n", "theta", "k0", "p", "p (statevector)");
    for row in &analytic {
        let sv = simulated.iter().find(|r| r.n == row.n).and_then(|r| r.p_engine);
        let sv = sv.map_or("-".to_string(), |p| format!("{p:.15}"));
        println!("{:>3} {:>10.3e} {:>7} {:>20.15} {:>20}", row.n, row.theta, row.k0, row.p_analytic, sv);
    }
    Ok(())
}
