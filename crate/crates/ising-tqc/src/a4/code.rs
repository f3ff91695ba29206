use num_complex::Complex64;

use crate::dense::DenseState;
use crate::pauli::PauliString;

pub const N: usize = 15;

/// The 15-qubit code. Coordinate `j = 1..15` is qubit `j`; row `i` of the
/// simplex generator has bit `i` of `j` at coordinate `j`.
#[derive(Clone, Debug)]
pub struct RmCode {
    /// X-type stabilizers as 15-bit masks (bit `j - 1` = qubit `j`).
    pub x_stabilizers: Vec<u16>,
    pub z_stabilizers: Vec<u16>,
    pub logical_x: u16,
    pub logical_z: u16,
}

fn simplex_row(i: usize) -> u16 {
    (1..=N).filter(|j| j >> i & 1 == 1).fold(0u16, |m, j| m | 1 << (j - 1))
}

fn parity(x: u16) -> bool {
    x.count_ones() % 2 == 1
}

impl RmCode {
    pub fn build() -> Self {
        let rows: Vec<u16> = (0..4).map(simplex_row).collect();
        let mut z = rows.clone();
        for a in 0..4 {
            for b in a + 1..4 {
                z.push(rows[a] & rows[b]);
            }
        }
        let all = (1u16 << N) - 1;
        let code = Self { x_stabilizers: rows, z_stabilizers: z, logical_x: all, logical_z: all };
        debug_assert!(code.self_check().is_ok());
        code
    }

    /// Whether a Z-error pattern escapes every X-type check.
    pub fn undetected(&self, e: u16) -> bool {
        self.x_stabilizers.iter().all(|&g| !parity(g & e))
    }

    /// An undetected Z pattern of odd weight acts as logical Z.
    pub fn is_logical_error(&self, e: u16) -> bool {
        self.undetected(e) && parity(e & self.logical_x)
    }

    /// Counts of undetected Z patterns by weight (ε-independent integers).
    pub fn undetected_weight_enumerator(&self) -> [u64; N + 1] {
        let mut w = [0u64; N + 1];
        for e in 0..1u16 << N {
            if self.undetected(e) {
                w[e.count_ones() as usize] += 1;
            }
        }
        w
    }

    pub fn min_undetected_weight(&self) -> usize {
        self.undetected_weight_enumerator().iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w).unwrap()
    }

    fn gf2_rank(rows: &[u16]) -> usize {
        let mut rows = rows.to_vec();
        let mut rank = 0;
        for bit in (0..16).rev() {
            if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
                rows.swap(rank, p);
                let piv = rows[rank];
                for (i, r) in rows.iter_mut().enumerate() {
                    if i != rank && *r >> bit & 1 == 1 {
                        *r ^= piv;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Stabilizers commute, 14 are independent, and logicals commute with
    /// all stabilizers while anticommuting with each other.
    pub fn self_check(&self) -> Result<(), String> {
        for &x in &self.x_stabilizers {
            for &z in &self.z_stabilizers {
                if parity(x & z) {
                    return Err(format!("{x:015b} and {z:015b} anticommute"));
                }
            }
            if parity(x & self.logical_z) {
                return Err("logical Z fails an X check".into());
            }
        }
        if self.z_stabilizers.iter().any(|&z| parity(z & self.logical_x)) {
            return Err("logical X fails a Z check".into());
        }
        if !parity(self.logical_x & self.logical_z) {
            return Err("logicals commute".into());
        }
        let rank = Self::gf2_rank(&self.x_stabilizers) + Self::gf2_rank(&self.z_stabilizers);
        if rank != N - 1 {
            return Err(format!("stabilizer rank {rank}, expected 14"));
        }
        Ok(())
    }

    /// Words of the logical basis states: `|0>` is spanned by the X-type
    /// stabilizer span, `|1>` by its complement coset.
    pub fn codewords(&self) -> (Vec<u16>, Vec<u16>) {
        let mut span = vec![0u16];
        for &g in &self.x_stabilizers {
            let more: Vec<u16> = span.iter().map(|w| w ^ g).collect();
            span.extend(more);
        }
        let ones: Vec<u16> = span.iter().map(|w| w ^ self.logical_x).collect();
        (span, ones)
    }

    /// Phase exponents (in units of pi/4) that transversal `T` puts on the
    /// two logical basis states, if each coset has a single value mod 8.
    pub fn transversal_t_phases(&self) -> Option<(u32, u32)> {
        let (zero, one) = self.codewords();
        let uniform = |ws: &[u16]| {
            let p = ws[0].count_ones() % 8;
            ws.iter().all(|w| w.count_ones() % 8 == p).then_some(p)
        };
        Some((uniform(&zero)?, uniform(&one)?))
    }

    /// Stabilizer group elements as Pauli strings (2^14 of them).
    pub fn stabilizer_group(&self) -> Vec<PauliString> {
        let gens: Vec<PauliString> = self
            .x_stabilizers
            .iter()
            .map(|&x| PauliString::new(N, x as u64, 0, 0))
            .chain(self.z_stabilizers.iter().map(|&z| PauliString::new(N, 0, z as u64, 0)))
            .collect();
        let mut group = vec![PauliString::identity(N)];
        for g in gens {
            let more: Vec<PauliString> = group.iter().map(|h| h.mul(&g)).collect();
            group.extend(more);
        }
        group
    }
}

/// `(|00> + e^{i pi/4} |11>) / sqrt 2` on four modes: the logical state
/// `T|+>` of the quartet qubit.
pub fn a4_dense() -> DenseState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[0] = Complex64::new(h, 0.0);
    amps[3] = Complex64::from_polar(h, std::f64::consts::FRAC_PI_4);
    DenseState::from_amplitudes(4, amps).expect("four amplitudes")
}
