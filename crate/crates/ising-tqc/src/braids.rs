//! Braid words, their signed-permutation action on Majorana operators, and
//! orbit enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::circuit::{BraidCircuit, Instruction};
use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::tableau::StabilizerTableau;

/// Image of each Majorana under conjugation: `c_r -> sign * c_{target}`,
/// stored at index `r - 1` as `(target, sign)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation(pub Vec<(usize, i8)>);

impl SignedPermutation {
    pub fn identity(n_modes: usize) -> Self {
        Self((1..=n_modes).map(|r| (r, 1)).collect())
    }

    pub fn n_modes(&self) -> usize {
        self.0.len()
    }

    /// Applies the conjugation by `exp(-(pi/4) c_p c_q)` after `self`.
    pub fn then_braid(&mut self, p: usize, q: usize) {
        for img in &mut self.0 {
            if img.0 == p {
                img.0 = q;
            } else if img.0 == q {
                *img = (p, -img.1);
            }
        }
    }

    /// Product of signs times the permutation sign; braids give `+1`.
    pub fn determinant(&self) -> i8 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut sign: i8 = self.0.iter().map(|x| x.1).product();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j].0 - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    fn is_valid(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n + 1];
        self.0.iter().all(|&(t, s)| {
            let fresh = t >= 1 && t <= n && !seen[t] && (s == 1 || s == -1);
            if fresh {
                seen[t] = true;
            }
            fresh
        })
    }
}

/// Conjugation action of a measurement-free circuit.
pub fn conjugation_action(circuit: &BraidCircuit) -> Result<SignedPermutation> {
    let mut perm = SignedPermutation::identity(circuit.n_modes());
    for ins in circuit.instructions() {
        match ins {
            Instruction::Braid(p, q) => perm.then_braid(*p, *q),
            Instruction::BraidInverse(p, q) => perm.then_braid(*q, *p),
            other => return Err(Error::InvalidParameter(format!("{other:?} does not permute Majoranas"))),
        }
    }
    Ok(perm)
}

/// `B_{p,q}` for `p < q` as a word in nearest-neighbour braids, in execution
/// order. As an operator product this is
/// `B_{q-1} ... B_{p+1} B_p B_{p+1}^dag ... B_{q-1}^dag`.
pub fn braid_word_nonlocal(p: usize, q: usize, n_modes: usize) -> Result<BraidCircuit> {
    if p >= q {
        return Err(Error::InvalidParameter(format!("need p < q, got ({p}, {q})")));
    }
    let mut c = BraidCircuit::new(n_modes);
    for j in (p + 1..q).rev() {
        c.braid_inverse(j, j + 1)?;
    }
    c.braid(p, p + 1)?;
    for j in p + 1..q {
        c.braid(j, j + 1)?;
    }
    Ok(c)
}

/// A braid circuit whose conjugation action is `perm`. Fails when the
/// determinant is `-1`, since such maps are not induced by braids.
pub fn braids_for_signed_permutation(perm: &SignedPermutation) -> Result<BraidCircuit> {
    if !perm.is_valid() {
        return Err(Error::NotInBraidGroup(format!("{perm:?} is not a signed permutation")));
    }
    if perm.determinant() != 1 {
        return Err(Error::NotInBraidGroup(format!("{perm:?} has determinant -1")));
    }
    let n = perm.n_modes();
    let mut c = BraidCircuit::new(n);
    let mut cur = SignedPermutation::identity(n);
    for r in 0..n {
        let (t, _) = cur.0[r];
        let d = perm.0[r].0;
        if t != d {
            c.braid(t, d)?;
            cur.then_braid(t, d);
        }
    }
    let wrong: Vec<usize> = (0..n).filter(|&r| cur.0[r].1 != perm.0[r].1).map(|r| cur.0[r].0).collect();
    debug_assert!(wrong.len() % 2 == 0);
    for pair in wrong.chunks(2) {
        c.braid(pair[0], pair[1])?;
        c.braid(pair[0], pair[1])?;
        cur.then_braid(pair[0], pair[1]);
        cur.then_braid(pair[0], pair[1]);
    }
    debug_assert_eq!(&cur, perm);
    Ok(c)
}

/// The image of the braid group in the signed permutations of `n_modes`
/// Majoranas, by breadth-first closure under nearest-neighbour braids.
/// Practical for up to 6 modes.
pub fn enumerate_image_group(n_modes: usize) -> Result<HashSet<SignedPermutation>> {
    if n_modes > 6 {
        return Err(Error::TooManyModes(n_modes));
    }
    let start = SignedPermutation::identity(n_modes);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for j in 1..n_modes {
            let mut h = g.clone();
            h.then_braid(j, j + 1);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

/// Nearest-neighbour braids and their inverses on `n_modes` modes.
fn elementary_moves(n_modes: usize) -> Vec<(usize, usize)> {
    (1..n_modes).flat_map(|j| [(j, j + 1), (j + 1, j)]).collect()
}

/// Number of distinct stabilizer states reachable by braiding.
pub fn orbit_size(state: &StabilizerTableau) -> usize {
    let moves = elementary_moves(state.n_modes());
    let mut seen: HashSet<Vec<PauliString>> = HashSet::from([state.canonical_form()]);
    let mut queue = VecDeque::from([state.clone()]);
    while let Some(s) = queue.pop_front() {
        for &(p, q) in &moves {
            let mut t = s.clone();
            t.apply_braid(p, q).expect("modes in range");
            if seen.insert(t.canonical_form()) {
                queue.push_back(t);
            }
        }
    }
    seen.len()
}

fn ray_key(state: &DenseState) -> Vec<(i64, i64)> {
    let amps = state.amplitudes();
    let lead = amps.iter().find(|a| a.norm() > 1e-6).expect("normalized state");
    let rot = lead.conj() / lead.norm();
    amps.iter()
        .map(|a| {
            let b = a * rot;
            ((b.re * 1e6).round() as i64, (b.im * 1e6).round() as i64)
        })
        .collect()
}

/// Orbit size of a dense state under braiding, counting states up to
/// global phase.
pub fn orbit_size_dense(state: &DenseState) -> usize {
    let moves = elementary_moves(state.n_modes());
    let mut seen: HashMap<Vec<(i64, i64)>, ()> = HashMap::from([(ray_key(state), ())]);
    let mut queue = VecDeque::from([state.clone()]);
    while let Some(s) = queue.pop_front() {
        for &(p, q) in &moves {
            let mut t = s.clone();
            t.apply_braid(p, q).expect("modes in range");
            if seen.insert(ray_key(&t), ()).is_none() {
                queue.push_back(t);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonlocal_word_matches_direct_braid() {
        for n in [4, 6, 8] {
            for p in 1..n {
                for q in p + 1..=n {
                    let word = braid_word_nonlocal(p, q, n).unwrap();
                    let mut direct = SignedPermutation::identity(n);
                    direct.then_braid(p, q);
                    assert_eq!(conjugation_action(&word).unwrap(), direct, "B_{{{p},{q}}}");
                }
            }
        }
    }

    #[test]
    fn b13_word_is_b2_b1_b2inv() {
        let w = braid_word_nonlocal(1, 3, 4).unwrap();
        assert_eq!(w.instructions(), &[Instruction::BraidInverse(2, 3), Instruction::Braid(1, 2), Instruction::Braid(2, 3)]);
    }

    #[test]
    fn image_group_orders() {
        assert_eq!(enumerate_image_group(2).unwrap().len(), 4);
        assert_eq!(enumerate_image_group(4).unwrap().len(), 192);
        assert_eq!(enumerate_image_group(6).unwrap().len(), 23040);
        assert!(enumerate_image_group(4).unwrap().iter().all(|g| g.determinant() == 1));
    }

    #[test]
    fn permutation_synthesis_round_trips() {
        for g in enumerate_image_group(6).unwrap().iter().take(500) {
            let c = braids_for_signed_permutation(g).unwrap();
            assert_eq!(&conjugation_action(&c).unwrap(), g);
        }
        let bad = SignedPermutation(vec![(1, -1), (2, 1)]);
        assert!(braids_for_signed_permutation(&bad).is_err());
    }
}
