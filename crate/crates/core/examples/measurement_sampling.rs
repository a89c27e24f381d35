//! Seeded shot sampling: identical seeds give identical histograms.
//!
//! cargo run --example measurement_sampling

use grover_sim::grover::{run_search, Engine, GroverConfig};

fn main() -> grover_sim::Result<()> {
    let config = GroverConfig::new(4, 11).engine(Engine::StateVector).shots(2000).seed(17);
    let first = run_search(&config)?;
    let second = run_search(&config)?;
    assert_eq!(first.samples, second.samples);

    println!("p = {:.6}, most frequent outcome {:?}", first.p_engine, first.measured_mode);
    for (outcome, count) in &first.samples {
        println!("{outcome:>2} {count:>5} {}", "#".repeat(count / 40));
    }
    let other = run_search(&config.seed(18))?;
    println!("seed 18 gives {} hits on 11", other.samples.get(&11).unwrap_or(&0));
    Ok(())
}
