//! Majorana operators under the Jordan-Wigner map.
//!
//! Modes are numbered from 1. Mode `2j - 1` is `Z...Z X_j` and mode `2j`
//! is `Z...Z Y_j`, so `-i c_{2j-1} c_{2j} = Z_j` and the pair (2j-1, 2j)
//! forms qubit `j`.

use crate::error::{Error, Result};
use crate::pauli::{PauliString, MAX_QUBITS};

pub(crate) fn check_modes(modes: &[usize], n_modes: usize) -> Result<()> {
    for &m in modes {
        if m == 0 || m > n_modes {
            return Err(Error::ModeOutOfRange { mode: m, n_modes });
        }
    }
    for (i, a) in modes.iter().enumerate() {
        if modes[i + 1..].contains(a) {
            return Err(Error::RepeatedMode(modes.to_vec()));
        }
    }
    Ok(())
}

pub(crate) fn qubits_for(n_modes: usize) -> Result<usize> {
    if n_modes % 2 != 0 {
        return Err(Error::OddModeCount(n_modes));
    }
    if n_modes / 2 > MAX_QUBITS {
        return Err(Error::TooManyModes(n_modes));
    }
    Ok(n_modes / 2)
}

/// The single Majorana operator `c_mode` on `n_modes` modes.
pub fn jordan_wigner(mode: usize, n_modes: usize) -> Result<PauliString> {
    let n = qubits_for(n_modes)?;
    check_modes(&[mode], n_modes)?;
    let j = (mode - 1) / 2;
    let below = (1u64 << j) - 1;
    Ok(if mode % 2 == 1 {
        PauliString::new(n, 1 << j, below, 0)
    } else {
        PauliString::new(n, 1 << j, below | (1 << j), 1)
    })
}

/// Ordered product `c_{m_1} c_{m_2} ... c_{m_k}`.
pub fn monomial(modes: &[usize], n_modes: usize) -> Result<PauliString> {
    let n = qubits_for(n_modes)?;
    let mut acc = PauliString::identity(n);
    for &m in modes {
        acc = acc.mul(&jordan_wigner(m, n_modes)?);
    }
    Ok(acc)
}

/// Hermitian version of a product of distinct modes: `c_{m_1}...c_{m_k}`
/// multiplied by `-i` when needed. For two modes this is `-i c_p c_q`; a
/// product of four distinct modes is already Hermitian.
pub fn hermitian_monomial(modes: &[usize], n_modes: usize) -> Result<PauliString> {
    check_modes(modes, n_modes)?;
    let p = monomial(modes, n_modes)?;
    let k = modes.len();
    Ok(if (k * (k.saturating_sub(1)) / 2) % 2 == 1 { p.times_phase(3) } else { p })
}

/// Total parity `prod_j (-i c_{2j-1} c_{2j}) = Z_1 ... Z_n`; the vacuum is even.
pub fn total_parity(n_modes: usize) -> Result<PauliString> {
    let n = qubits_for(n_modes)?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(PauliString::new(n, 0, all, 0))
}

/// Label used in outcome logs: `-ic2c3` for a pair, `c1c2c3c4` for a quartet.
pub fn observable_label(modes: &[usize]) -> String {
    let body: String = modes.iter().map(|m| format!("c{m}")).collect();
    if modes.len() == 2 {
        format!("-i{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, bits: u64) -> PauliString {
        PauliString::new(n, 0, bits, 0)
    }

    #[test]
    fn pair_products_are_local_z() {
        for n in 1..=5 {
            for j in 1..=n {
                let f = hermitian_monomial(&[2 * j - 1, 2 * j], 2 * n).unwrap();
                assert_eq!(f, z(n, 1 << (j - 1)));
            }
        }
    }

    #[test]
    fn low_order_identities() {
        let c12 = monomial(&[1, 2], 4).unwrap();
        assert_eq!(c12, z(2, 1).times_phase(1));
        let c34 = monomial(&[3, 4], 4).unwrap();
        assert_eq!(c34, z(2, 2).times_phase(1));
        let c1234 = monomial(&[1, 2, 3, 4], 4).unwrap();
        assert_eq!(c1234, z(2, 3).neg());
        assert_eq!(total_parity(8).unwrap(), z(4, 0b1111));
    }

    #[test]
    fn majoranas_anticommute_and_square_to_one() {
        let n_modes = 10;
        for a in 1..=n_modes {
            let ca = jordan_wigner(a, n_modes).unwrap();
            assert!(ca.is_hermitian());
            assert_eq!(ca.mul(&ca), PauliString::identity(5));
            for b in 1..=n_modes {
                if a != b {
                    let cb = jordan_wigner(b, n_modes).unwrap();
                    assert!(!ca.commutes_with(&cb));
                }
            }
        }
    }

    #[test]
    fn hermitian_normalization() {
        for k in 1..=6 {
            let modes: Vec<usize> = (1..=k).collect();
            let p = hermitian_monomial(&modes, 12).unwrap();
            assert!(p.is_hermitian(), "k = {k}");
        }
    }

    #[test]
    fn rejects_bad_modes() {
        assert!(jordan_wigner(0, 4).is_err());
        assert!(jordan_wigner(5, 4).is_err());
        assert!(hermitian_monomial(&[1, 1], 4).is_err());
        assert!(monomial(&[1], 3).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(observable_label(&[2, 3]), "-ic2c3");
        assert_eq!(observable_label(&[1, 2, 3, 4]), "c1c2c3c4");
    }
}
