//! Qubits encoded in four Majorana modes and the one-qubit Clifford group
//! reachable by braiding them.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;

use crate::braids::SignedPermutation;
use crate::circuit::BraidCircuit;
use crate::dense::DenseState;
use crate::error::{Error, Result};

/// Four modes carrying one qubit in the subspace `-c1 c2 c3 c4 = +1`, with
/// `Z = -i c1 c2`, `X = -i c2 c3` and so `Y = iXZ = i c1 c3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalQubit(pub [usize; 4]);

impl LogicalQubit {
    pub fn at(first: usize) -> Self {
        Self([first, first + 1, first + 2, first + 3])
    }

    pub fn modes(&self) -> [usize; 4] {
        self.0
    }

    pub fn disjoint(&self, other: &LogicalQubit) -> bool {
        self.0.iter().all(|m| !other.0.contains(m))
    }
}

/// `a|0> + b|1>` on four modes, i.e. `a|00> + b|11>` after Jordan-Wigner.
pub fn logical_state(a: Complex64, b: Complex64) -> Result<DenseState> {
    let zero = Complex64::new(0.0, 0.0);
    DenseState::from_amplitudes(4, vec![a, zero, zero, b])
}

/// Two logical qubits on eight modes from the four logical amplitudes
/// `|00>, |01>, |10>, |11>` (first label is the qubit on modes 1..4).
pub fn logical_pair_state(amps: [Complex64; 4]) -> Result<DenseState> {
    let mut v = vec![Complex64::new(0.0, 0.0); 16];
    for (k, a) in amps.iter().enumerate() {
        let (x1, x2) = (k >> 1 & 1, k & 1);
        v[(x1 * 0b11) | (x2 * 0b1100)] = *a;
    }
    DenseState::from_amplitudes(8, v)
}

/// The magic state `(|0> + e^{i pi/4}|1>)/sqrt 2`.
pub fn a4_state() -> DenseState {
    crate::a4::a4_dense()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicalPauli {
    X,
    Y,
    Z,
}

/// Signed logical Pauli `sign * P`.
pub type SignedLogical = (i8, LogicalPauli);

/// Logical operator represented by `sign * (-i c_p c_q)` on a quartet
/// (local indices `1..=4`) inside the code subspace.
pub fn logical_of_pair(p: usize, q: usize, sign: i8) -> Result<SignedLogical> {
    let (lo, hi, s) = if p < q { (p, q, sign) } else { (q, p, -sign) };
    let (s2, op) = match (lo, hi) {
        (1, 2) | (3, 4) => (1, LogicalPauli::Z),
        (2, 3) | (1, 4) => (1, LogicalPauli::X),
        (1, 3) => (-1, LogicalPauli::Y),
        (2, 4) => (1, LogicalPauli::Y),
        _ => return Err(Error::InvalidParameter(format!("({p}, {q}) is not a pair inside a quartet"))),
    };
    Ok((s * s2, op))
}

/// Images of `X` and `Z` under a one-qubit Clifford; determines it up to phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalAction {
    pub x: SignedLogical,
    pub z: SignedLogical,
}

impl LogicalAction {
    pub const IDENTITY: LogicalAction = LogicalAction { x: (1, LogicalPauli::X), z: (1, LogicalPauli::Z) };
    pub const HADAMARD: LogicalAction = LogicalAction { x: (1, LogicalPauli::Z), z: (1, LogicalPauli::X) };

    /// Logical action of a braid on the quartet `1..=4`.
    pub fn of_permutation(perm: &SignedPermutation) -> Result<Self> {
        let image = |p: usize, q: usize| {
            let (a, sa) = perm.0[p - 1];
            let (b, sb) = perm.0[q - 1];
            logical_of_pair(a, b, sa * sb)
        };
        Ok(Self { x: image(2, 3)?, z: image(1, 2)? })
    }
}

/// Shortest braid words (in `B_12, B_23, B_34` and inverses) for every
/// logical Clifford reachable on one quartet, keyed by logical action.
pub fn one_qubit_cliffords() -> HashMap<LogicalAction, BraidCircuit> {
    let gens: [(usize, usize, bool); 6] = [(1, 2, false), (2, 3, false), (3, 4, false), (1, 2, true), (2, 3, true), (3, 4, true)];
    let start = SignedPermutation::identity(4);
    let mut words = HashMap::new();
    let mut seen = HashMap::new();
    seen.insert(start.clone(), ());
    words.insert(LogicalAction::of_permutation(&start).expect("identity"), BraidCircuit::new(4));
    let mut queue = VecDeque::from([(start, BraidCircuit::new(4))]);
    while let Some((perm, word)) = queue.pop_front() {
        for &(p, q, inv) in &gens {
            let mut next = perm.clone();
            let mut w = word.clone();
            if inv {
                next.then_braid(q, p);
                w.braid_inverse(p, q).expect("quartet modes");
            } else {
                next.then_braid(p, q);
                w.braid(p, q).expect("quartet modes");
            }
            if seen.insert(next.clone(), ()).is_some() {
                continue;
            }
            let action = LogicalAction::of_permutation(&next).expect("braids keep pairs inside the quartet");
            words.entry(action).or_insert_with(|| w.clone());
            queue.push_back((next, w));
        }
    }
    words
}

/// Braid word for a logical Clifford on `qubit` inside an `n_modes` register.
pub fn logical_clifford(action: LogicalAction, qubit: LogicalQubit, n_modes: usize) -> Result<BraidCircuit> {
    let words = one_qubit_cliffords();
    let w = words
        .get(&action)
        .ok_or_else(|| Error::NotInBraidGroup(format!("{action:?} is not a braid on one quartet")))?;
    w.remap(&qubit.0, n_modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braids::conjugation_action;
    use crate::majorana::hermitian_monomial;

    #[test]
    fn braids_give_the_whole_one_qubit_clifford_group() {
        let g = one_qubit_cliffords();
        assert_eq!(g.len(), 24);
        assert!(g[&LogicalAction::IDENTITY].is_empty());
    }

    #[test]
    fn pair_table_matches_dense_logical_action() {
        // compare -i c_p c_q against logical X, Y, Z on random code states
        let psi = logical_state(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        for p in 1..=4 {
            for q in 1..=4 {
                if p == q {
                    continue;
                }
                let (sign, op) = logical_of_pair(p, q, 1).unwrap();
                let mut lhs = psi.clone();
                lhs.apply_pauli(&hermitian_monomial(&[p, q], 4).unwrap());
                let (a, b) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
                let i = Complex64::i();
                let (na, nb) = match op {
                    LogicalPauli::X => (b, a),
                    LogicalPauli::Y => (-i * b, i * a),
                    LogicalPauli::Z => (a, -b),
                };
                let f = f64::from(sign);
                let rhs = logical_state(na * f, nb * f).unwrap();
                assert!((lhs.inner(&rhs).re - 1.0).abs() < 1e-12, "({p},{q})");
            }
        }
    }

    #[test]
    fn hadamard_word_swaps_x_and_z() {
        let h = logical_clifford(LogicalAction::HADAMARD, LogicalQubit::at(1), 4).unwrap();
        let perm = conjugation_action(&h).unwrap();
        assert_eq!(LogicalAction::of_permutation(&perm).unwrap(), LogicalAction::HADAMARD);
        let mut zero = logical_state(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        h.run(&mut zero, &mut rand::thread_rng()).unwrap();
        let plus = logical_state(Complex64::new(0.5f64.sqrt(), 0.0), Complex64::new(0.5f64.sqrt(), 0.0)).unwrap();
        assert!((zero.fidelity(&plus) - 1.0).abs() < 1e-12);
    }
}
