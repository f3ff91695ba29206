//! Checks each reduction between operation sets against its exact target
//! and prints the resources it uses.

use ising_tqc::protocols::verify;

fn main() -> ising_tqc::Result<()> {
    println!("{:<12} {:>15} {:>9} {:>4} {:>4} {:>7} {:>6} {:>7} {:>7}", "protocol", "fidelity", "branches", "a8", "a4", "braids", "pairs", "quartet", "quartic");
    for r in verify("all", 1)? {
        let l = &r.ledger;
        println!(
            "{:<12} {:>15.12} {:>9} {:>4} {:>4} {:>7} {:>6} {:>7} {:>7}",
            r.protocol,
            r.fidelity,
            r.branches.len(),
            l.a8,
            l.a4,
            l.braids,
            l.pair_measurements,
            l.quartet_measurements,
            l.quartic_exponents
        );
    }
    Ok(())
}
