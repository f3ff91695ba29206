#![allow(dead_code)]

use ising_tqc::circuit::{BraidCircuit, Condition, Instruction};
use ising_tqc::dense::DenseState;
use ising_tqc::tableau::StabilizerTableau;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn distinct<R: Rng>(rng: &mut R, n_modes: usize, k: usize) -> Vec<usize> {
    let mut modes: Vec<usize> = (1..=n_modes).collect();
    modes.shuffle(rng);
    modes.truncate(k);
    modes
}

fn gate<R: Rng>(rng: &mut R, n_modes: usize, topological: bool) -> Instruction {
    let kinds = if topological || n_modes < 4 { 2 } else { 3 };
    let m = distinct(rng, n_modes, 4.min(n_modes));
    match rng.gen_range(0..kinds) {
        0 => Instruction::Braid(m[0], m[1]),
        1 => Instruction::BraidInverse(m[0], m[1]),
        _ => Instruction::QuarticExponent([m[0], m[1], m[2], m[3]], if rng.gen() { 1 } else { -1 }),
    }
}

/// Random circuit mixing every instruction kind. With `topological` only
/// braids and pair measurements are drawn.
pub fn random_circuit<R: Rng>(rng: &mut R, n_modes: usize, len: usize, topological: bool) -> BraidCircuit {
    let mut c = BraidCircuit::new(n_modes);
    for _ in 0..len {
        let measured = c.measurement_count();
        let roll = rng.gen_range(0..10);
        let ins = match roll {
            0..=4 => gate(rng, n_modes, topological),
            5 | 6 => {
                let m = distinct(rng, n_modes, 2);
                Instruction::MeasurePair(m[0], m[1])
            }
            7 if !topological && n_modes >= 4 => {
                let m = distinct(rng, n_modes, 4);
                Instruction::MeasureQuartet([m[0], m[1], m[2], m[3]])
            }
            _ if measured > 0 => {
                let k = rng.gen_range(1..=measured.min(3));
                let mut refs = distinct(rng, measured, k);
                refs.sort_unstable();
                Instruction::ClassicallyControlled(Condition::new(refs, rng.gen()), Box::new(gate(rng, n_modes, topological)))
            }
            _ => gate(rng, n_modes, topological),
        };
        c.push(ins).expect("generated instruction is valid");
    }
    c
}

/// Samples one branch on the tableau from the vacuum.
pub fn sample_tableau<R: Rng>(c: &BraidCircuit, rng: &mut R) -> (Vec<bool>, f64, StabilizerTableau) {
    let mut t = StabilizerTableau::new_vacuum(c.n_modes()).unwrap();
    let run = c.run(&mut t, rng).unwrap();
    (run.bits(), run.probability, t)
}

pub fn dense_branch(c: &BraidCircuit, bits: &[bool]) -> (f64, DenseState) {
    let mut d = DenseState::new_vacuum(c.n_modes()).unwrap();
    let run = c.run_forced(&mut d, bits).unwrap();
    (run.probability, d)
}

