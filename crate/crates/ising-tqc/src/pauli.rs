//! Phase-tracked Pauli strings on up to 64 qubits.
//!
//! A string is stored as `i^phase * X^x * Z^z`, where bit `j - 1` of the
//! masks refers to qubit `j`. All X factors stand to the left of all Z
//! factors, so `Y = i X Z`.

use std::fmt;

/// Largest qubit count a [`PauliString`] can hold.
pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Self { n, x: 0, z: 0, phase: 0 }
    }

    /// Builds `i^phase X^x Z^z`. Bits above `n` are rejected.
    pub fn new(n: usize, x: u64, z: u64, phase: u8) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        assert!(x & !mask(n) == 0 && z & !mask(n) == 0, "mask exceeds {n} qubits");
        Self { n, x, z, phase: phase & 3 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Exponent `k` of the leading `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Number of Y factors; each contributes an `i` relative to the
    /// Hermitian form.
    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + self.y_count()) % 2 == 0
    }

    /// `P^2 = sign * I`; returns the sign.
    pub fn square_sign(&self) -> i8 {
        let e = 2 * self.phase as u32 + 2 * self.y_count();
        if e % 4 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        ((self.z & other.x).count_ones() + (self.x & other.z).count_ones()) % 2 == 0
    }

    pub fn mul(&self, other: &PauliString) -> PauliString {
        debug_assert_eq!(self.n, other.n);
        // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
        let swaps = (self.z & other.x).count_ones();
        let phase = (self.phase as u32 + other.phase as u32 + 2 * swaps) % 4;
        PauliString {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: phase as u8,
        }
    }

    pub fn times_phase(&self, k: u8) -> PauliString {
        PauliString { phase: (self.phase + k) & 3, ..*self }
    }

    pub fn neg(&self) -> PauliString {
        self.times_phase(2)
    }

    pub fn dagger(&self) -> PauliString {
        // (i^k X Z)^dag = i^{-k} Z X = i^{-k} (-1)^{|x&z|} X Z
        let k = (4 - self.phase as u32 + 2 * self.y_count()) % 4;
        PauliString { phase: k as u8, ..*self }
    }

    /// Sign `s` with `self = s * (plain product of X, Y, Z factors)`, or
    /// `None` if the string is not Hermitian.
    pub fn hermitian_sign(&self) -> Option<i8> {
        if !self.is_hermitian() {
            return None;
        }
        // plain product = i^{|x&z|} X^x Z^z
        let rel = (self.phase as u32 + 4 - self.y_count() % 4) % 4;
        Some(if rel == 0 { 1 } else { -1 })
    }

    /// Action on a computational basis state: returns `(j, k)` with
    /// `P |i> = i^k |j>`.
    pub fn act_on_basis(&self, i: u64) -> (u64, u8) {
        let sign = 2 * ((self.z & i).count_ones() % 2);
        (i ^ self.x, ((self.phase as u32 + sign) % 4) as u8)
    }

    /// Embeds into a larger register, shifting qubits up by `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> PauliString {
        assert!(offset + self.n <= n_total);
        PauliString::new(n_total, self.x << offset, self.z << offset, self.phase)
    }

    /// Tensor product `self ⊗ other`, with `other` on the higher qubits.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let n = self.n + other.n;
        let a = self.embed(n, 0);
        let b = other.embed(n, self.n);
        a.mul(&b)
    }
}

impl fmt::Display for PauliString {
    /// Hermitian strings print as `+XZIY`; others carry `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = (self.phase as u32 + 4 - self.y_count() % 4) % 4;
        let prefix = ["+", "+i", "-", "-i"][rel as usize];
        write!(f, "{prefix}")?;
        for j in 0..self.n {
            let b = 1u64 << j;
            let c = match (self.x & b != 0, self.z & b != 0) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, j: usize) -> PauliString {
        PauliString::new(n, 1 << j, 0, 0)
    }
    fn z(n: usize, j: usize) -> PauliString {
        PauliString::new(n, 0, 1 << j, 0)
    }

    #[test]
    fn single_qubit_algebra() {
        let (xx, zz) = (x(1, 0), z(1, 0));
        let y = xx.mul(&zz).times_phase(1);
        assert!(y.is_hermitian());
        assert_eq!(y.to_string(), "+Y");
        // ZX = iY
        assert_eq!(zz.mul(&xx), y.times_phase(1));
        assert_eq!(xx.mul(&zz), y.times_phase(3));
        assert_eq!(y.square_sign(), 1);
        assert!(!xx.commutes_with(&zz));
    }

    #[test]
    fn display_signs() {
        let p = PauliString::new(3, 0b101, 0b110, 0);
        // X Z Z on qubits 1..3 with Y on qubit 3 => X^x Z^z = -i * (X I Y)... check Hermiticity
        assert!(!p.is_hermitian());
        assert_eq!(p.times_phase(1).to_string(), "+XZY");
        assert_eq!(p.times_phase(3).to_string(), "-XZY");
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        let m = mask(n);
        (any::<u64>(), any::<u64>(), 0u8..4).prop_map(move |(a, b, k)| PauliString::new(n, a & m, b & m, k))
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_pauli(6), b in arb_pauli(6), c in arb_pauli(6)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn commutation_matches_products(a in arb_pauli(6), b in arb_pauli(6)) {
            let ab = a.mul(&b);
            let ba = b.mul(&a);
            if a.commutes_with(&b) {
                prop_assert_eq!(ab, ba);
            } else {
                prop_assert_eq!(ab, ba.neg());
            }
        }

        #[test]
        fn dagger_inverts(a in arb_pauli(6)) {
            let id = a.mul(&a.dagger());
            prop_assert_eq!(id, PauliString::identity(6));
            prop_assert_eq!(a.is_hermitian(), a == a.dagger());
        }

        #[test]
        fn square_sign_consistent(a in arb_pauli(6)) {
            let sq = a.mul(&a);
            prop_assert!(sq.is_identity_up_to_phase());
            prop_assert_eq!(sq.phase(), if a.square_sign() == 1 { 0 } else { 2 });
        }
    }
}
