//! One elementary purification round as a braid circuit acting on two
//! syndrome eigenstates. Prints which input pairs pass and what comes out.

use ising_tqc::a8::{elementary_round, syndrome_state_tableau, ElementaryRound, RoundKind};

fn main() -> ising_tqc::Result<()> {
    let round = elementary_round(RoundKind::Gamma);
    let measured = round.circuit.measurement_count();
    println!("round: {} instructions, {measured} pair measurements", round.circuit.len());
    for (r, s) in [(0, 0), (0, 1), (3, 5), (6, 6)] {
        let input = syndrome_state_tableau(r)?.tensor(&syndrome_state_tableau(s)?)?;
        let mut p = 0.0;
        let mut out = None;
        for (run, state) in round.circuit.enumerate_branches(&input)? {
            let bits = run.bits();
            if ElementaryRound::success(&bits[bits.len() - 4..]) {
                p += run.probability;
                let first = state.restrict(1, 8)?;
                out = (0..8).find(|&u| syndrome_state_tableau(u).map(|t| t == first).unwrap_or(false));
            }
        }
        match out {
            Some(u) => println!("syndromes ({r}, {s}): pass with p = {p}, output syndrome {u}"),
            None => println!("syndromes ({r}, {s}): rejected"),
        }
    }
    Ok(())
}
