//! The N = 8 search for |101⟩, step by step.
//!
//! cargo run --example worked_n8

use grover_sim::grover::{apply_diffusion, apply_oracle_phase, optimal_iterations, prepare_uniform, theta, GroverTraceRow};

fn main() -> grover_sim::Result<()> {
    let (n, i0) = (3, 5);
    println!("theta = {:.6} rad, k0 = {}", theta(n), optimal_iterations(n));

    let mut state = prepare_uniform(n);
    let show = |label: &str, k, s: &grover_sim::StateVector| {
        let row = GroverTraceRow::from_state(k, s, i0);
        println!("{label:>8}: c_u = {:+.6}  c_i0 = {:+.6}  p = {:.6}", row.c_u, row.c_i0, row.p_k);
    };
    show("psi", 0, &state);
    for k in 1..=optimal_iterations(n) {
        apply_oracle_phase(&mut state, i0)?;
        show("oracle", k, &state);
        apply_diffusion(&mut state);
        show("diffuse", k, &state);
    }
    for (i, a) in state.amplitudes().iter().enumerate() {
        println!("|{i:03b}> {:+.6}", a.re);
    }
    Ok(())
}
