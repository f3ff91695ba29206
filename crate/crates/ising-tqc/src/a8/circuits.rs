use crate::braids::{braids_for_signed_permutation, SignedPermutation};
use crate::circuit::{BraidCircuit, Condition, Instruction};
use crate::error::Result;

pub use super::flow::RoundKind;

/// Whirl `U = U31 U23 U12` on eight modes (`U12` acts first), with
/// `U12 = B23 B67^dag`, `U23 = B12^dag B34`, `U31 = B15 B26`.
pub fn whirl_circuit() -> BraidCircuit {
    let mut c = BraidCircuit::new(8);
    (|| -> Result<()> {
        c.braid_inverse(6, 7)?.braid(2, 3)?;
        c.braid(3, 4)?.braid_inverse(1, 2)?;
        c.braid(2, 6)?.braid(1, 5)?;
        Ok(())
    })()
    .expect("modes in range");
    c
}

/// Signed permutation of the cyclic shift that maps `S1 -> S2 -> S3 -> S1`.
pub fn cyclic_shift_permutation() -> SignedPermutation {
    SignedPermutation(vec![(6, 1), (2, 1), (1, 1), (5, 1), (7, -1), (3, 1), (4, -1), (8, 1)])
}

pub fn cyclic_shift_circuit() -> BraidCircuit {
    braids_for_signed_permutation(&cyclic_shift_permutation()).expect("shift is a braid")
}

/// Reshuffle that brings the cross pairs `(4+j, 8+j)` of two copies next to
/// each other at positions `(7+2j, 8+2j)`, leaving the first copy's first
/// quartet and moving the second copy's last quartet to positions 5..8.
fn reshuffle_permutation() -> SignedPermutation {
    let targets = [1, 2, 3, 4, 9, 11, 13, 15, 10, 12, 14, 16, 5, 6, 7, 8];
    SignedPermutation(targets.iter().map(|&t| (t, 1)).collect())
}

/// An elementary round on two eight-mode ancillas at modes 1..8 and 9..16.
/// On success the output is at modes 1..8.
#[derive(Clone, Debug)]
pub struct ElementaryRound {
    pub kind: RoundKind,
    pub circuit: BraidCircuit,
}

impl ElementaryRound {
    /// The round succeeds when its four outcomes have even parity.
    pub fn success(outcomes: &[bool]) -> bool {
        debug_assert_eq!(outcomes.len(), 4);
        !outcomes.iter().fold(false, |a, &b| a ^ b)
    }
}

fn push_double_braid(c: &mut BraidCircuit, cond: Condition, p: usize, q: usize) -> Result<()> {
    c.controlled(cond.clone(), Instruction::Braid(p, q))?;
    c.controlled(cond, Instruction::Braid(p, q))?;
    Ok(())
}

fn gamma_core() -> Result<BraidCircuit> {
    let mut c = braids_for_signed_permutation(&reshuffle_permutation())?;
    for j in 0..4 {
        c.measure_pair(9 + 2 * j, 10 + 2 * j)?;
    }
    let m = c.measurement_count() - 4;
    // t1 ^ t2 ^ 1 flips s1 of the output, t2 ^ t3 ^ 1 flips s2
    push_double_braid(&mut c, Condition::new(vec![m + 1, m + 2], true), 2, 3)?;
    push_double_braid(&mut c, Condition::new(vec![m + 2, m + 3], true), 1, 2)?;
    Ok(c)
}

pub fn elementary_round(kind: RoundKind) -> ElementaryRound {
    let build = || -> Result<BraidCircuit> {
        let shifts = match kind {
            RoundKind::Gamma => 0,
            RoundKind::Delta => 1,
            RoundKind::Theta => 2,
        };
        let shift = cyclic_shift_circuit();
        let upper: Vec<usize> = (9..=16).collect();
        let shift_upper = shift.remap(&upper, 16)?;
        let mut c = BraidCircuit::new(16);
        for _ in 0..shifts {
            c.append(&shift)?;
            c.append(&shift_upper)?;
        }
        c.append(&gamma_core()?)?;
        let back = shift.inverse()?;
        for _ in 0..shifts {
            c.append(&back)?;
        }
        Ok(c)
    };
    ElementaryRound { kind, circuit: build().expect("fixed construction") }
}

/// Full round on eight ancillas at modes `8j+1 ..= 8j+8`, `j = 0..7`. The
/// output is at modes 1..8.
#[derive(Clone, Debug)]
pub struct FullRound {
    pub circuit: BraidCircuit,
}

impl FullRound {
    /// All seven elementary rounds must succeed.
    pub fn success(outcomes: &[bool]) -> bool {
        outcomes.chunks(4).all(ElementaryRound::success)
    }
}

pub fn full_round() -> FullRound {
    let build = || -> Result<BraidCircuit> {
        let mut c = BraidCircuit::new(64);
        let schedule = [
            (RoundKind::Gamma, vec![(0, 1), (2, 3), (4, 5), (6, 7)]),
            (RoundKind::Delta, vec![(0, 2), (4, 6)]),
            (RoundKind::Theta, vec![(0, 4)]),
        ];
        for (kind, pairs) in schedule {
            let round = elementary_round(kind);
            for (a, b) in pairs {
                let map: Vec<usize> = (1..=8).map(|m| 8 * a + m).chain((1..=8).map(|m| 8 * b + m)).collect();
                c.append(&round.circuit.remap(&map, 64)?)?;
            }
        }
        Ok(c)
    };
    FullRound { circuit: build().expect("fixed construction") }
}

#[cfg(test)]
mod tests {
    use super::super::basis::{syndrome_bits, syndrome_index, syndrome_state_tableau};
    use super::super::flow::ETA;
    use super::*;
    use crate::braids::conjugation_action;

    fn expected(kind: RoundKind, r: usize, s: usize) -> Option<usize> {
        let f = 2 - kind.checked_bit();
        ((r ^ s) >> f & 1 == 0).then(|| ((r ^ s) & !(1 << f)) | (r & (1 << f)))
    }

    #[test]
    fn whirl_permutes_syndromes() {
        let u = whirl_circuit();
        for s in 0..8 {
            let mut t = syndrome_state_tableau(s).unwrap();
            u.run_forced(&mut t, &[]).unwrap();
            assert_eq!(t, syndrome_state_tableau(ETA[s]).unwrap(), "s = {s}");
        }
    }

    #[test]
    fn shift_cycles_syndrome_operators() {
        let c = cyclic_shift_circuit();
        assert_eq!(conjugation_action(&c).unwrap(), cyclic_shift_permutation());
        for s in 0..8 {
            let [a, b, d] = syndrome_bits(s);
            let mut t = syndrome_state_tableau(s).unwrap();
            c.run_forced(&mut t, &[]).unwrap();
            assert_eq!(t, syndrome_state_tableau(syndrome_index([d, a, b])).unwrap(), "s = {s}");
        }
    }

    #[test]
    fn reshuffle_is_even() {
        assert_eq!(reshuffle_permutation().determinant(), 1);
    }

    #[test]
    fn elementary_rounds_on_all_input_pairs() {
        for kind in [RoundKind::Gamma, RoundKind::Delta, RoundKind::Theta] {
            let round = elementary_round(kind);
            for r in 0..8 {
                for s in 0..8 {
                    let input = syndrome_state_tableau(r).unwrap().tensor(&syndrome_state_tableau(s).unwrap()).unwrap();
                    let branches = round.circuit.enumerate_branches(&input).unwrap();
                    // the outcome parity is fixed by the inputs
                    assert_eq!(branches.len(), 8);
                    let mut p_success = 0.0;
                    for (run, out) in &branches {
                        let bits = run.bits();
                        let n = bits.len();
                        let t = &bits[n - 4..];
                        if ElementaryRound::success(t) {
                            p_success += run.probability;
                            let u = expected(kind, r, s).expect("success only on agreement");
                            assert_eq!(out.restrict(1, 8).unwrap(), syndrome_state_tableau(u).unwrap(), "{kind:?} r={r} s={s} t={t:?}");
                        }
                    }
                    let want = if expected(kind, r, s).is_some() { 1.0 } else { 0.0 };
                    assert!((p_success - want).abs() < 1e-12, "{kind:?} r={r} s={s}");
                }
            }
        }
    }
}
