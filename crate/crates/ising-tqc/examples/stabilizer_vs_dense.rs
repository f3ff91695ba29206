//! Runs one circuit with measurements on the stabilizer tableau and on the
//! dense state vector, then enumerates every branch on both engines.

use ising_tqc::circuit::{BraidCircuit, Condition, Instruction};
use ising_tqc::dense::DenseState;
use ising_tqc::tableau::StabilizerTableau;

fn main() -> ising_tqc::Result<()> {
    let mut c = BraidCircuit::new(8);
    c.braid(2, 3)?.braid(6, 7)?.measure_pair(3, 4)?;
    c.controlled(Condition::new(vec![1], false), Instruction::Braid(4, 5))?;
    c.push(Instruction::QuarticExponent([1, 2, 5, 6], 1))?;
    c.measure_quartet([1, 2, 3, 4])?.measure_pair(5, 6)?;

    let tab = c.enumerate_branches(&StabilizerTableau::new_vacuum(8)?)?;
    let den = c.enumerate_branches(&DenseState::new_vacuum(8)?)?;
    for ((rt, t), (rd, d)) in tab.iter().zip(&den) {
        let bits: String = rt.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!(
            "outcomes {bits}: p_tableau {:.6} p_dense {:.6} overlap {:.12}",
            rt.probability,
            rd.probability,
            d.fidelity_with_tableau(t)? / d.norm_sqr()
        );
    }
    println!("\nfinal stabilizers of the first branch:");
    for g in tab[0].1.generators() {
        println!("  {g}");
    }
    Ok(())
}
