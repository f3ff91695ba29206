//! Stabilizer states of Majorana modes.
//!
//! A pure state of `2n` modes is stored as `n` commuting, independent
//! Hermitian Pauli generators in the Jordan-Wigner qubit picture. Braids and
//! quartic exponents are Clifford, so they act by conjugation on the
//! generators; measurements update the generators in the usual way.

use rand::Rng;

use crate::error::{Error, Result};
use crate::majorana::{check_modes, hermitian_monomial, monomial, qubits_for, total_parity};
use crate::pauli::PauliString;

/// How a measurement outcome is chosen.
pub enum Outcome<'a> {
    /// Draw random outcomes from `rng`.
    Sample(&'a mut dyn rand::RngCore),
    /// Force the outcome bit; the returned probability may be zero.
    Forced(bool),
}

#[derive(Clone, Debug)]
pub struct StabilizerTableau {
    n_modes: usize,
    gens: Vec<PauliString>,
}

impl PartialEq for StabilizerTableau {
    /// Equality of states, not of generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.n_modes == other.n_modes && self.canonical_form() == other.canonical_form()
    }
}

impl Eq for StabilizerTableau {}

fn key(p: &PauliString) -> u128 {
    ((p.x_bits() as u128) << 64) | p.z_bits() as u128
}

fn leading_bit(k: u128) -> u32 {
    127 - k.leading_zeros()
}

impl StabilizerTableau {
    /// All pairs `(2j-1, 2j)` empty: `-i c_{2j-1} c_{2j} = +1`.
    pub fn new_vacuum(n_modes: usize) -> Result<Self> {
        let n = qubits_for(n_modes)?;
        let gens = (0..n).map(|j| PauliString::new(n, 0, 1 << j, 0)).collect();
        Ok(Self { n_modes, gens })
    }

    /// State stabilized by the given Hermitian generators. They must commute,
    /// be independent and there must be exactly `n_modes / 2` of them.
    pub fn from_generators(n_modes: usize, gens: Vec<PauliString>) -> Result<Self> {
        let n = qubits_for(n_modes)?;
        if gens.len() != n {
            return Err(Error::InvalidParameter(format!("need {n} generators, got {}", gens.len())));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.n_qubits() != n || !g.is_hermitian() {
                return Err(Error::InvalidObservable(g.to_string()));
            }
            if gens[..i].iter().any(|h| !h.commutes_with(g)) {
                return Err(Error::InvalidParameter("generators do not commute".into()));
            }
        }
        let t = Self { n_modes, gens };
        let canon = t.canonical_form();
        if canon.len() != n || canon.iter().any(|g| g.is_identity_up_to_phase()) {
            return Err(Error::InvalidParameter("generators are not independent".into()));
        }
        Ok(t)
    }

    /// State stabilized by `sign * (hermitian monomial)` for each entry.
    pub fn from_monomials(n_modes: usize, monomials: &[(i8, Vec<usize>)]) -> Result<Self> {
        let gens = monomials
            .iter()
            .map(|(s, modes)| {
                let p = hermitian_monomial(modes, n_modes)?;
                Ok(if *s < 0 { p.neg() } else { p })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(n_modes, gens)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_qubits(&self) -> usize {
        self.n_modes / 2
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    /// Conjugation by `exp(i s (pi/4) H)` for a Hermitian Pauli `H` with `H^2 = I`.
    pub fn apply_quarter_rotation(&mut self, h: &PauliString, s: i8) {
        debug_assert!(h.is_hermitian() && h.square_sign() == 1);
        let ih = h.times_phase(if s > 0 { 1 } else { 3 });
        for g in &mut self.gens {
            if !g.commutes_with(h) {
                *g = ih.mul(g);
            }
        }
    }

    /// Braid `exp(-(pi/4) c_p c_q)`: `c_p -> c_q`, `c_q -> -c_p`.
    pub fn apply_braid(&mut self, p: usize, q: usize) -> Result<()> {
        check_modes(&[p, q], self.n_modes)?;
        let h = monomial(&[p, q], self.n_modes)?.times_phase(1);
        self.apply_quarter_rotation(&h, 1);
        Ok(())
    }

    pub fn apply_braid_inverse(&mut self, p: usize, q: usize) -> Result<()> {
        self.apply_braid(q, p)
    }

    /// `exp(i s (pi/4) c_p c_q c_r c_s)`.
    pub fn apply_quartic_exponent(&mut self, modes: [usize; 4], s: i8) -> Result<()> {
        let h = hermitian_monomial(&modes, self.n_modes)?;
        self.apply_quarter_rotation(&h, s);
        Ok(())
    }

    /// Conjugation by a Pauli operator (flips anticommuting generators).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        for g in &mut self.gens {
            if !g.commutes_with(p) {
                *g = g.neg();
            }
        }
    }

    /// Expresses `target` (up to phase) as a product of generators; returns
    /// the selection mask.
    fn decompose(&self, target: &PauliString) -> Option<u64> {
        let mut rows: Vec<(u128, u64)> = self.gens.iter().enumerate().map(|(i, g)| (key(g), 1u64 << i)).collect();
        let mut t = key(target);
        let mut sel = 0u64;
        let mut pivots = Vec::new();
        for r in 0..rows.len() {
            // pick the row with the largest leading bit among remaining rows
            let best = (r..rows.len()).filter(|&i| rows[i].0 != 0).max_by_key(|&i| leading_bit(rows[i].0))?;
            rows.swap(r, best);
            let (k, m) = rows[r];
            let b = leading_bit(k);
            for i in r + 1..rows.len() {
                if rows[i].0 >> b & 1 == 1 {
                    rows[i].0 ^= k;
                    rows[i].1 ^= m;
                }
            }
            pivots.push(b);
        }
        for (r, &b) in pivots.iter().enumerate() {
            if t >> b & 1 == 1 {
                t ^= rows[r].0;
                sel ^= rows[r].1;
            }
        }
        (t == 0).then_some(sel)
    }

    fn product(&self, sel: u64) -> PauliString {
        let mut acc = PauliString::identity(self.n_qubits());
        for (i, g) in self.gens.iter().enumerate() {
            if sel >> i & 1 == 1 {
                acc = acc.mul(g);
            }
        }
        acc
    }

    /// `Some(+1)` or `Some(-1)` if `obs` has a definite value, `None` if the
    /// outcome is random.
    pub fn expectation(&self, obs: &PauliString) -> Option<i8> {
        if self.gens.iter().any(|g| !g.commutes_with(obs)) {
            return None;
        }
        let sel = self.decompose(obs).expect("maximal abelian group contains every commuting Pauli");
        let prod = self.product(sel);
        Some(if prod == *obs { 1 } else { -1 })
    }

    /// Measures a Hermitian Pauli observable. Returns `(bit, probability)`
    /// where the eigenvalue is `(-1)^bit`. A forced outcome of probability
    /// zero leaves the state unchanged.
    pub fn measure(&mut self, obs: &PauliString, how: Outcome<'_>) -> Result<(bool, f64)> {
        if !obs.is_hermitian() || obs.n_qubits() != self.n_qubits() || obs.is_identity_up_to_phase() {
            return Err(Error::InvalidObservable(obs.to_string()));
        }
        let anti: Vec<usize> = (0..self.gens.len()).filter(|&i| !self.gens[i].commutes_with(obs)).collect();
        if let Some(&first) = anti.first() {
            let bit = match how {
                Outcome::Sample(rng) => rng.gen::<bool>(),
                Outcome::Forced(b) => b,
            };
            let pivot = self.gens[first];
            for &i in &anti[1..] {
                self.gens[i] = self.gens[i].mul(&pivot);
            }
            self.gens[first] = if bit { obs.neg() } else { *obs };
            Ok((bit, 0.5))
        } else {
            let value = self.expectation(obs).expect("commuting observable");
            let bit = value < 0;
            match how {
                Outcome::Forced(b) if b != bit => Ok((b, 0.0)),
                _ => Ok((bit, 1.0)),
            }
        }
    }

    /// Parity-normalized measurement of `-i c_p c_q`.
    pub fn measure_pair(&mut self, p: usize, q: usize, how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = hermitian_monomial(&[p, q], self.n_modes)?;
        self.measure(&obs, how)
    }

    /// Measurement of `c_p c_q c_r c_s`.
    pub fn measure_quartet(&mut self, modes: [usize; 4], how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = hermitian_monomial(&modes, self.n_modes)?;
        self.measure(&obs, how)
    }

    /// Reduced row-echelon generators with signs. Two tableaux describe the
    /// same state iff their canonical forms agree.
    pub fn canonical_form(&self) -> Vec<PauliString> {
        let mut rows = self.gens.clone();
        let mut out = Vec::with_capacity(rows.len());
        let mut r = 0;
        while r < rows.len() {
            let Some(best) = (r..rows.len()).filter(|&i| key(&rows[i]) != 0).max_by_key(|&i| leading_bit(key(&rows[i])))
            else {
                break;
            };
            rows.swap(r, best);
            let piv = rows[r];
            let b = leading_bit(key(&piv));
            for i in 0..rows.len() {
                if i != r && key(&rows[i]) >> b & 1 == 1 {
                    rows[i] = rows[i].mul(&piv);
                }
            }
            r += 1;
        }
        out.extend(rows.into_iter().take(r));
        out.sort_by_key(|p| std::cmp::Reverse(key(p)));
        out
    }

    /// Whether the state has definite total fermion parity.
    pub fn has_definite_parity(&self) -> bool {
        let q = total_parity(self.n_modes).expect("even mode count");
        self.expectation(&q).is_some()
    }

    /// Tensor product; `other`'s modes are appended after this one's. Both
    /// states must have definite parity so the fermionic and qubit products
    /// agree.
    pub fn tensor(&self, other: &StabilizerTableau) -> Result<StabilizerTableau> {
        if !self.has_definite_parity() || !other.has_definite_parity() {
            return Err(Error::InvalidParameter("tensor factors need definite parity".into()));
        }
        let n_modes = self.n_modes + other.n_modes;
        let n = n_modes / 2;
        if n > crate::pauli::MAX_QUBITS {
            return Err(Error::TooManyModes(n_modes));
        }
        let mut gens: Vec<PauliString> = self.gens.iter().map(|g| g.embed(n, 0)).collect();
        gens.extend(other.gens.iter().map(|g| g.embed(n, self.n_qubits())));
        Ok(StabilizerTableau { n_modes, gens })
    }

    /// State of modes `first ..= first + len - 1`, which must start a qubit
    /// (odd `first`, even `len`) and be unentangled with the rest.
    pub fn restrict(&self, first: usize, len: usize) -> Result<StabilizerTableau> {
        if first % 2 != 1 || len % 2 != 0 || first + len - 1 > self.n_modes {
            return Err(Error::InvalidParameter(format!("cannot restrict to modes {first}..+{len}")));
        }
        let q0 = (first - 1) / 2;
        let nq = len / 2;
        let inside = if nq == 64 { u64::MAX } else { ((1u64 << nq) - 1) << q0 };
        // Eliminate outside columns first by ordering them as high bits.
        let outside_key = |p: &PauliString| ((p.x_bits() & !inside) as u128) << 64 | (p.z_bits() & !inside) as u128;
        let mut rows = self.gens.clone();
        let mut r = 0;
        while r < rows.len() {
            let Some(best) = (r..rows.len()).filter(|&i| outside_key(&rows[i]) != 0).max_by_key(|&i| leading_bit(outside_key(&rows[i])))
            else {
                break;
            };
            rows.swap(r, best);
            let piv = rows[r];
            let b = leading_bit(outside_key(&piv));
            for i in r + 1..rows.len() {
                if outside_key(&rows[i]) >> b & 1 == 1 {
                    rows[i] = rows[i].mul(&piv);
                }
            }
            r += 1;
        }
        let local: Vec<PauliString> = rows[r..]
            .iter()
            .map(|p| PauliString::new(nq, (p.x_bits() & inside) >> q0, (p.z_bits() & inside) >> q0, p.phase()))
            .collect();
        if local.len() != nq {
            return Err(Error::NotAProduct);
        }
        // Z strings from lower modes cancel only for even operators.
        StabilizerTableau::from_generators(len, local)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vacuum_pairs_are_fixed() {
        let t = StabilizerTableau::new_vacuum(6).unwrap();
        for j in 1..=3 {
            let f = hermitian_monomial(&[2 * j - 1, 2 * j], 6).unwrap();
            assert_eq!(t.expectation(&f), Some(1));
        }
        let f = hermitian_monomial(&[1, 3], 6).unwrap();
        assert_eq!(t.expectation(&f), None);
    }

    #[test]
    fn braid_moves_majoranas() {
        // c_1 -> c_2 under B_{1,2}: -i c_1 c_3 becomes -i c_2 c_3
        let mut t = StabilizerTableau::from_monomials(4, &[(1, vec![1, 3]), (1, vec![2, 4])]).unwrap();
        t.apply_braid(1, 2).unwrap();
        let expect = StabilizerTableau::from_monomials(4, &[(1, vec![2, 3]), (-1, vec![1, 4])]).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn braid_squared_is_double_exchange() {
        let mut t = StabilizerTableau::new_vacuum(4).unwrap();
        t.apply_braid(2, 3).unwrap();
        t.apply_braid(2, 3).unwrap();
        // c_2 -> -c_2 and c_3 -> -c_3 flip both pair parities
        let expect = StabilizerTableau::from_monomials(4, &[(-1, vec![1, 2]), (-1, vec![3, 4])]).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn measurement_collapses_and_repeats() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut t = StabilizerTableau::new_vacuum(4).unwrap();
        let (b, p) = t.measure_pair(2, 3, Outcome::Sample(&mut rng)).unwrap();
        assert_eq!(p, 0.5);
        let (b2, p2) = t.measure_pair(2, 3, Outcome::Sample(&mut rng)).unwrap();
        assert_eq!((b2, p2), (b, 1.0));
        // parity is conserved
        let (_, pq) = t.measure_pair(1, 4, Outcome::Forced(!b)).unwrap();
        assert_eq!(pq, 0.0);
    }

    #[test]
    fn tensor_and_restrict_round_trip() {
        let a = StabilizerTableau::from_monomials(4, &[(1, vec![1, 3]), (1, vec![2, 4])]).unwrap();
        let b = StabilizerTableau::from_monomials(4, &[(-1, vec![1, 2]), (1, vec![3, 4])]).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.restrict(1, 4).unwrap(), a);
        assert_eq!(ab.restrict(5, 4).unwrap(), b);
        let mut ent = ab.clone();
        ent.apply_braid(4, 5).unwrap();
        assert!(matches!(ent.restrict(1, 4), Err(Error::NotAProduct)));
    }

    #[test]
    fn rejects_dependent_generators() {
        let z1 = PauliString::new(2, 0, 1, 0);
        assert!(StabilizerTableau::from_generators(4, vec![z1, z1]).is_err());
    }
}
