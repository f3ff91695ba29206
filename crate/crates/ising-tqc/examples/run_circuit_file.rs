//! Loads a JSON circuit, samples it on the stabilizer engine and prints the
//! outcome log.
//!
//! ```text
//! cargo run --example run_circuit_file -- examples/circuits/bell_attempt.json 7
//! ```

use ising_tqc::circuit::BraidCircuit;
use ising_tqc::tableau::StabilizerTableau;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ising_tqc::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/circuits/vacuum4.json").into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let c = BraidCircuit::from_json(&std::fs::read_to_string(path)?)?;
    let mut state = StabilizerTableau::new_vacuum(c.n_modes())?;
    let run = c.run(&mut state, &mut ChaCha8Rng::seed_from_u64(seed))?;
    for r in &run.records {
        println!("{r}");
    }
    println!("# probability of this branch {}", run.probability);
    Ok(())
}
