use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::majorana::{hermitian_monomial, total_parity};
use crate::pauli::PauliString;
use crate::tableau::StabilizerTableau;

use super::flow::SyndromeDistribution;

/// `S1 = -c1c2c5c6`, `S2 = -c2c3c6c7`, `S3 = -c1c2c3c4`.
pub fn syndrome_operators() -> [PauliString; 3] {
    let q = |m: [usize; 4]| hermitian_monomial(&m, 8).expect("valid modes").neg();
    [q([1, 2, 5, 6]), q([2, 3, 6, 7]), q([1, 2, 3, 4])]
}

/// Bits `(s1, s2, s3)` of a syndrome label.
pub fn syndrome_bits(s: usize) -> [bool; 3] {
    [s >> 2 & 1 == 1, s >> 1 & 1 == 1, s & 1 == 1]
}

pub fn syndrome_index(bits: [bool; 3]) -> usize {
    4 * bits[0] as usize + 2 * bits[1] as usize + bits[2] as usize
}

/// `|Psi_s>`: even parity with `S_j = (-1)^{s_j}`.
pub fn syndrome_state_tableau(s: usize) -> Result<StabilizerTableau> {
    if s >= 8 {
        return Err(Error::InvalidParameter(format!("syndrome label {s} out of range")));
    }
    let bits = syndrome_bits(s);
    let mut gens: Vec<PauliString> =
        syndrome_operators().iter().zip(bits).map(|(g, b)| if b { g.neg() } else { *g }).collect();
    gens.push(total_parity(8)?);
    StabilizerTableau::from_generators(8, gens)
}

/// The target ancilla state `|Psi_0>`.
pub fn a8_tableau() -> StabilizerTableau {
    syndrome_state_tableau(0).expect("label 0 is valid")
}

pub fn syndrome_state_dense(s: usize) -> Result<DenseState> {
    DenseState::from_tableau(&syndrome_state_tableau(s)?)
}

/// Weights `<Psi_s| rho |Psi_s>` of a mixture `rho = sum_i w_i |phi_i><phi_i|`
/// of eight-mode states. The mixture must lie in the even sector.
pub fn syndrome_overlaps(ensemble: &[(f64, DenseState)]) -> Result<[f64; 8]> {
    let mut out = [0.0; 8];
    let mut total = 0.0;
    for (w, phi) in ensemble {
        if phi.n_modes() != 8 {
            return Err(Error::InvalidParameter("ancilla states have eight modes".into()));
        }
        total += w * phi.norm_sqr();
        for (s, o) in out.iter_mut().enumerate() {
            *o += w * phi.fidelity_with_tableau(&syndrome_state_tableau(s)?)?;
        }
    }
    let got: f64 = out.iter().sum();
    if (got - total).abs() > 1e-9 {
        return Err(Error::OutsideEvenSector { weight: total - got });
    }
    Ok(out)
}

/// Drops coherences between syndrome states, which a random syndrome
/// measurement (or twirl) would do anyway.
pub fn dephase(overlaps: [f64; 8]) -> Result<SyndromeDistribution> {
    SyndromeDistribution::new(overlaps)
}
