//! Dense state vectors of Majorana systems, used as an independent oracle
//! for the stabilizer engine and for non-stabilizer states.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::majorana::{check_modes, hermitian_monomial, jordan_wigner, monomial, qubits_for, total_parity};
use crate::pauli::PauliString;
use crate::tableau::{Outcome, StabilizerTableau};

/// Dense simulation is limited to this many qubits (28 modes).
pub const MAX_DENSE_QUBITS: usize = 14;

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Clone, Debug)]
pub struct DenseState {
    n_modes: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn new_vacuum(n_modes: usize) -> Result<Self> {
        let n = qubits_for(n_modes)?;
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyModes(n_modes));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_modes, amps })
    }

    /// Normalizes the given amplitudes (qubit `j` is bit `j - 1` of the index).
    pub fn from_amplitudes(n_modes: usize, amps: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for(n_modes)?;
        if n > MAX_DENSE_QUBITS || amps.len() != 1 << n {
            return Err(Error::InvalidParameter(format!("expected {} amplitudes", 1usize << n)));
        }
        let mut s = Self { n_modes, amps };
        let norm = s.norm_sqr();
        if norm < 1e-300 {
            return Err(Error::InvalidParameter("zero state".into()));
        }
        s.scale(1.0 / norm.sqrt());
        Ok(s)
    }

    /// Expands a stabilizer state into amplitudes.
    pub fn from_tableau(t: &StabilizerTableau) -> Result<Self> {
        let n = t.n_qubits();
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyModes(t.n_modes()));
        }
        for i in 0..1u64 << n {
            let mut s = Self { n_modes: t.n_modes(), amps: vec![Complex64::new(0.0, 0.0); 1 << n] };
            s.amps[i as usize] = Complex64::new(1.0, 0.0);
            for g in t.generators() {
                s.project_onto(g, false);
            }
            let w = s.norm_sqr();
            if w > 1e-6 {
                s.scale(1.0 / w.sqrt());
                return Ok(s);
            }
        }
        unreachable!("some basis state overlaps every stabilizer state")
    }

    /// Haar-random state in a fixed parity sector (`odd` selects odd parity).
    pub fn random_with_parity<R: Rng>(n_modes: usize, odd: bool, rng: &mut R) -> Result<Self> {
        let n = qubits_for(n_modes)?;
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyModes(n_modes));
        }
        let amps = (0..1u64 << n)
            .map(|i| {
                if (i.count_ones() % 2 == 1) == odd {
                    let (a, b) = gaussian_pair(rng);
                    Complex64::new(a, b)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Self::from_amplitudes(n_modes, amps)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_qubits(&self) -> usize {
        self.n_modes / 2
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn scale(&mut self, f: f64) {
        for a in &mut self.amps {
            *a *= f;
        }
    }

    fn pauli_image(&self, p: &PauliString) -> Vec<Complex64> {
        let (x, z, ph) = (p.x_bits() as usize, p.z_bits() as usize, p.phase() as u32);
        // P|j> = i^{ph + 2|j & z|} |j ^ x>
        (0..self.amps.len())
            .map(|i| {
                let j = i ^ x;
                I_POW[((ph + 2 * (j & z).count_ones()) % 4) as usize] * self.amps[j]
            })
            .collect()
    }

    /// In-place `|psi> -> P |psi>`.
    pub fn apply_pauli(&mut self, p: &PauliString) {
        self.amps = self.pauli_image(p);
    }

    /// Applies a single Majorana operator `c_mode` (odd, changes parity).
    pub fn apply_majorana(&mut self, mode: usize) -> Result<()> {
        let c = jordan_wigner(mode, self.n_modes)?;
        self.apply_pauli(&c);
        Ok(())
    }

    pub fn expectation(&self, p: &PauliString) -> Complex64 {
        let (x, z, ph) = (p.x_bits() as usize, p.z_bits() as usize, p.phase() as u32);
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for (i, a) in self.amps.iter().enumerate() {
            let j = i ^ x;
            acc[((ph + 2 * (j & z).count_ones()) % 4) as usize] += a.conj() * self.amps[j];
        }
        acc[0] + I_POW[1] * acc[1] + I_POW[2] * acc[2] + I_POW[3] * acc[3]
    }

    /// `exp(i theta H)` for a Hermitian Pauli `H`.
    pub fn apply_rotation(&mut self, h: &PauliString, theta: f64) {
        let (c, s) = (theta.cos(), theta.sin());
        let is = Complex64::new(0.0, s);
        let (x, z, ph) = (h.x_bits() as usize, h.z_bits() as usize, h.phase() as u32);
        // H|j> = i^{ph + 2|j & z|} |j ^ x>
        let factor = |j: usize| I_POW[((ph + 2 * (j & z).count_ones()) % 4) as usize];
        if x == 0 {
            for (j, a) in self.amps.iter_mut().enumerate() {
                *a *= c + is * factor(j);
            }
            return;
        }
        for i in 0..self.amps.len() {
            let j = i ^ x;
            if j < i {
                continue;
            }
            let (ai, aj) = (self.amps[i], self.amps[j]);
            self.amps[i] = ai * c + is * factor(j) * aj;
            self.amps[j] = aj * c + is * factor(i) * ai;
        }
    }

    /// Braid `exp(-(pi/4) c_p c_q)`.
    pub fn apply_braid(&mut self, p: usize, q: usize) -> Result<()> {
        check_modes(&[p, q], self.n_modes)?;
        let h = monomial(&[p, q], self.n_modes)?.times_phase(1);
        self.apply_rotation(&h, std::f64::consts::FRAC_PI_4);
        Ok(())
    }

    pub fn apply_braid_inverse(&mut self, p: usize, q: usize) -> Result<()> {
        self.apply_braid(q, p)
    }

    /// `exp(i s (pi/4) c_p c_q c_r c_s)`.
    pub fn apply_quartic_exponent(&mut self, modes: [usize; 4], s: i8) -> Result<()> {
        let h = hermitian_monomial(&modes, self.n_modes)?;
        self.apply_rotation(&h, f64::from(s) * std::f64::consts::FRAC_PI_4);
        Ok(())
    }

    /// `exp(-theta c_{m1} ... c_{mk})` with the monomial brought to the form
    /// `i H`, `H` Hermitian; `theta = pi/4` on a pair is the braid gate.
    pub fn apply_exponent(&mut self, modes: &[usize], theta: f64) -> Result<()> {
        let h = hermitian_monomial(modes, self.n_modes)?;
        self.apply_rotation(&h, -theta);
        Ok(())
    }

    /// Projects onto the `sign` eigenspace of the Hermitian-normalized
    /// monomial. Returns the Born probability and, if it is nonzero, the
    /// renormalized state.
    pub fn project_monomial(&self, modes: &[usize], sign: i8) -> Result<(f64, Option<DenseState>)> {
        let obs = hermitian_monomial(modes, self.n_modes)?;
        let mut s = self.clone();
        let (_, p) = s.measure(&obs, Outcome::Forced(sign < 0))?;
        Ok((p, (p > 0.0).then_some(s)))
    }

    /// Schmidt rank across the cut between the first `left_qubits` qubits
    /// (modes `1..=2*left_qubits`) and the rest.
    pub fn schmidt_rank(&self, left_qubits: usize, tol: f64) -> Result<usize> {
        let n = self.n_qubits();
        if left_qubits > n {
            return Err(Error::InvalidParameter(format!("cut {left_qubits} exceeds {n} qubits")));
        }
        let (rows, cols) = (1usize << left_qubits, 1usize << (n - left_qubits));
        let m = nalgebra::DMatrix::from_fn(rows, cols, |i, j| self.amps[i | (j << left_qubits)]);
        Ok(m.singular_values().iter().filter(|&&s| s > tol).count())
    }

    /// Unnormalized projection onto the `(-1)^bit` eigenspace of `obs`.
    fn project_onto(&mut self, obs: &PauliString, bit: bool) {
        let img = self.pauli_image(obs);
        let s = if bit { -0.5 } else { 0.5 };
        for (a, b) in self.amps.iter_mut().zip(img) {
            *a = *a * 0.5 + b * s;
        }
    }

    /// Born probability of outcome `bit` without collapsing.
    pub fn probability(&self, obs: &PauliString, bit: bool) -> f64 {
        let e = self.expectation(obs).re;
        let p = if bit { 0.5 * (1.0 - e) } else { 0.5 * (1.0 + e) };
        p.clamp(0.0, 1.0)
    }

    /// Projective measurement of a Hermitian Pauli. Forced outcomes with
    /// vanishing probability leave the state untouched.
    pub fn measure(&mut self, obs: &PauliString, how: Outcome<'_>) -> Result<(bool, f64)> {
        if !obs.is_hermitian() || obs.n_qubits() != self.n_qubits() {
            return Err(Error::InvalidObservable(obs.to_string()));
        }
        let p0 = self.probability(obs, false);
        let bit = match how {
            Outcome::Sample(rng) => rng.gen::<f64>() >= p0,
            Outcome::Forced(b) => b,
        };
        let p = if bit { 1.0 - p0 } else { p0 };
        if p < 1e-14 {
            return Ok((bit, 0.0));
        }
        self.project_onto(obs, bit);
        self.scale(1.0 / self.norm_sqr().sqrt());
        Ok((bit, p))
    }

    pub fn measure_pair(&mut self, p: usize, q: usize, how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = hermitian_monomial(&[p, q], self.n_modes)?;
        self.measure(&obs, how)
    }

    pub fn measure_quartet(&mut self, modes: [usize; 4], how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = hermitian_monomial(&modes, self.n_modes)?;
        self.measure(&obs, how)
    }

    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &DenseState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `<psi| prod_i (I + g_i)/2 |psi>`.
    pub fn fidelity_with_tableau(&self, t: &StabilizerTableau) -> Result<f64> {
        if t.n_modes() != self.n_modes {
            return Err(Error::InvalidParameter("mode counts differ".into()));
        }
        let mut s = self.clone();
        for g in t.generators() {
            s.project_onto(g, false);
        }
        Ok(s.norm_sqr())
    }

    /// Parity of the state if definite.
    pub fn parity(&self) -> Option<bool> {
        let q = total_parity(self.n_modes).ok()?;
        let e = self.expectation(&q).re;
        if (e - 1.0).abs() < 1e-9 {
            Some(false)
        } else if (e + 1.0).abs() < 1e-9 {
            Some(true)
        } else {
            None
        }
    }

    /// Fermionic tensor product; both factors need definite parity.
    pub fn tensor(&self, other: &DenseState) -> Result<DenseState> {
        if self.parity().is_none() || other.parity().is_none() {
            return Err(Error::InvalidParameter("tensor factors need definite parity".into()));
        }
        let n_modes = self.n_modes + other.n_modes;
        if n_modes / 2 > MAX_DENSE_QUBITS {
            return Err(Error::TooManyModes(n_modes));
        }
        let lo = self.n_qubits();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (n_modes / 2)];
        for (j, b) in other.amps.iter().enumerate() {
            for (i, a) in self.amps.iter().enumerate() {
                amps[(j << lo) | i] = a * b;
            }
        }
        Ok(DenseState { n_modes, amps })
    }

    /// Fidelity of the state carried by `modes` (in the listed order) with a
    /// pure `target` on `modes.len()` modes. Uses the even Majorana operator
    /// expansion of the reduced state, so it works for any placement of the
    /// modes inside the register. The target must have definite parity.
    pub fn mode_fidelity(&self, modes: &[usize], target: &DenseState) -> Result<f64> {
        check_modes(modes, self.n_modes)?;
        if target.n_modes != modes.len() {
            return Err(Error::InvalidParameter("target size does not match mode list".into()));
        }
        let m = modes.len();
        let mut acc = 0.0;
        for sub in 0u64..1 << m {
            if sub.count_ones() % 2 == 1 {
                continue;
            }
            let local: Vec<usize> = (0..m).filter(|b| sub >> b & 1 == 1).map(|b| b + 1).collect();
            let phys: Vec<usize> = local.iter().map(|&b| modes[b - 1]).collect();
            let et = target.expectation(&monomial(&local, m)?);
            let es = self.expectation(&monomial(&phys, self.n_modes)?);
            acc += (es.conj() * et).re;
        }
        Ok(acc / (1u64 << (m / 2)) as f64)
    }
}

fn gaussian_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    (r * t.cos(), r * t.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn braid_matches_conjugation_rule() {
        // B c_p B^dag = c_q on a random state
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = DenseState::random_with_parity(6, false, &mut rng).unwrap();
        let (p, q) = (2, 5);
        let mut lhs = psi.clone();
        lhs.apply_braid_inverse(p, q).unwrap();
        lhs.apply_majorana(p).unwrap();
        lhs.apply_braid(p, q).unwrap();
        let mut rhs = psi.clone();
        rhs.apply_majorana(q).unwrap();
        assert!((lhs.inner(&rhs) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tableau_expansion_is_stabilized() {
        let t = StabilizerTableau::from_monomials(6, &[(1, vec![1, 4]), (-1, vec![2, 3]), (1, vec![5, 6])]).unwrap();
        let d = DenseState::from_tableau(&t).unwrap();
        assert!((d.fidelity_with_tableau(&t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mode_fidelity_sees_through_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = DenseState::random_with_parity(4, false, &mut rng).unwrap();
        let v = DenseState::new_vacuum(4).unwrap();
        let psi = v.tensor(&phi).unwrap();
        assert!((psi.mode_fidelity(&[5, 6, 7, 8], &phi).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi.mode_fidelity(&[1, 2, 3, 4], &v).unwrap() - 1.0).abs() < 1e-12);
        let f = psi.mode_fidelity(&[1, 2, 3, 4], &phi).unwrap();
        assert!((f - phi.fidelity(&v)).abs() < 1e-12);
    }

    #[test]
    fn exponent_on_a_pair_is_the_braid() {
        let mut a = DenseState::new_vacuum(2).unwrap();
        a.apply_exponent(&[1, 2], std::f64::consts::FRAC_PI_4).unwrap();
        let want = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        assert!((a.amplitudes()[0] - want).norm() < 1e-12);
        let mut b = DenseState::new_vacuum(2).unwrap();
        b.apply_exponent(&[1, 2], 0.0).unwrap();
        assert!((b.amplitudes()[0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn bell_pair_from_two_braids() {
        let mut s = DenseState::new_vacuum(4).unwrap();
        s.apply_braid(2, 3).unwrap();
        s.apply_braid_inverse(1, 2).unwrap();
        let a = s.amplitudes();
        assert!((a[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((a[3].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(s.schmidt_rank(1, 1e-10).unwrap(), 2);
        assert_eq!(DenseState::new_vacuum(4).unwrap().schmidt_rank(1, 1e-10).unwrap(), 1);
    }

    #[test]
    fn projection_of_a_stabilizer_is_certain() {
        let v = DenseState::new_vacuum(4).unwrap();
        let (p, s) = v.project_monomial(&[1, 2, 3, 4], -1).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!((s.unwrap().fidelity(&v) - 1.0).abs() < 1e-12);
        let (p, s) = v.project_monomial(&[1, 2, 3, 4], 1).unwrap();
        assert!(p == 0.0 && s.is_none());
    }
}
