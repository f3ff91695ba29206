//! Branch-by-branch checks of every protocol against dense-oracle targets.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::a8::a8_tableau;
use crate::dense::DenseState;
use crate::error::{Error, Result};

use super::build::{
    a8_from_quartet_measurement, a8_from_quartic_exponent, controlled_z, inject_t, quartet_measurement_with_a8,
    quartic_exponent_from_measurements, Method,
};
use super::logical::{logical_pair_state, logical_state};
use super::{Protocol, ResourceLedger};

pub const PROTOCOL_NAMES: [&str; 6] = ["o3-o1", "o2-o1", "o1-o2", "o2-o3", "cz", "inject-t"];

#[derive(Clone, Debug, Serialize)]
pub struct BranchStat {
    pub outcome: String,
    pub prob: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub protocol: String,
    /// Worst branch fidelity over all test inputs.
    pub fidelity: f64,
    /// Branch probabilities for the first test input.
    pub branches: Vec<BranchStat>,
    /// Largest deviation of a branch or outcome probability from its target.
    pub prob_error: f64,
    pub ledger: ResourceLedger,
}

fn bits_label(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn random_amps<const N: usize, R: Rng>(rng: &mut R) -> [Complex64; N] {
    let v: [Complex64; N] = std::array::from_fn(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.map(|a| a / n)
}

struct Check {
    fidelity: f64,
    prob_error: f64,
    branches: Vec<BranchStat>,
}

impl Check {
    fn new() -> Self {
        Self { fidelity: 1.0, prob_error: 0.0, branches: Vec::new() }
    }

    fn into_report(self, p: &Protocol) -> VerificationReport {
        VerificationReport { protocol: p.name.clone(), fidelity: self.fidelity, branches: self.branches, prob_error: self.prob_error, ledger: p.ledger() }
    }
}

/// Runs `p` on every branch for each input. `target(input, bits)` gives the
/// expected data state and the expected branch probability, if fixed.
fn check_unitary_like(
    p: &Protocol,
    inputs: &[Option<DenseState>],
    target: &(dyn Fn(Option<&DenseState>) -> Result<DenseState> + Sync),
    branch_prob: Option<f64>,
    check: &mut Check,
) -> Result<()> {
    let out_modes: Vec<usize> = if p.data_modes == 0 { (1..=8).collect() } else { (1..=p.data_modes).collect() };
    let per_input: Vec<Result<Check>> = inputs
        .par_iter()
        .map(|inp| {
            let reg = p.initial_dense(inp.as_ref())?;
            let want = target(inp.as_ref())?;
            let mut c = Check::new();
            let mut total = 0.0;
            for (run, out) in p.circuit.enumerate_branches(&reg)? {
                if run.probability < 1e-12 {
                    continue;
                }
                total += run.probability;
                c.branches.push(BranchStat { outcome: bits_label(&run.bits()), prob: run.probability });
                if let Some(q) = branch_prob {
                    c.prob_error = c.prob_error.max((run.probability - q).abs());
                }
                c.fidelity = c.fidelity.min(out.mode_fidelity(&out_modes, &want)?);
            }
            c.prob_error = c.prob_error.max((total - 1.0).abs());
            Ok(c)
        })
        .collect();
    for (k, c) in per_input.into_iter().enumerate() {
        let c = c?;
        check.fidelity = check.fidelity.min(c.fidelity);
        check.prob_error = check.prob_error.max(c.prob_error);
        if k == 0 {
            check.branches = c.branches;
        }
    }
    Ok(())
}

fn random_even(n_modes: usize, rng: &mut ChaCha8Rng) -> Result<DenseState> {
    DenseState::random_with_parity(n_modes, false, rng)
}

fn verify_o1_o2(rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let p = quartet_measurement_with_a8(8)?;
    let cond = p.reported.clone().ok_or_else(|| Error::InvalidParameter("measurement protocol without outcome".into()))?;
    let mut inputs = vec![DenseState::new_vacuum(8)?, logical_pair_state(random_amps::<4, _>(rng))?];
    for _ in 0..2 {
        inputs.push(random_even(8, rng)?);
    }
    // quartet 1..4 in an equal superposition of its two parities
    let mut mixed = DenseState::new_vacuum(8)?;
    mixed.apply_braid(4, 5)?;
    inputs.push(mixed);
    let mut check = Check::new();
    for (k, inp) in inputs.iter().enumerate() {
        let reg = p.initial_dense(Some(inp))?;
        let mut by_bit = [0.0f64; 2];
        for (run, out) in p.circuit.enumerate_branches(&reg)? {
            if run.probability < 1e-12 {
                continue;
            }
            let bit = cond.evaluate(&run.bits())?;
            by_bit[usize::from(bit)] += run.probability;
            if k == 0 {
                check.branches.push(BranchStat { outcome: bits_label(&run.bits()), prob: run.probability });
            }
            let (_, proj) = inp.project_monomial(&[1, 2, 3, 4], if bit { -1 } else { 1 })?;
            let f = match proj {
                Some(t) => out.mode_fidelity(&(1..=8).collect::<Vec<_>>(), &t)?,
                None => 0.0,
            };
            check.fidelity = check.fidelity.min(f);
        }
        for (bit, got) in by_bit.iter().enumerate() {
            let (want, _) = inp.project_monomial(&[1, 2, 3, 4], if bit == 1 { -1 } else { 1 })?;
            check.prob_error = check.prob_error.max((got - want).abs());
        }
    }
    Ok(check.into_report(&p))
}

fn logical_inputs_one(rng: &mut ChaCha8Rng) -> Result<Vec<[Complex64; 2]>> {
    let (o, l) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(vec![[o, l], [l, o], [h, h], random_amps::<2, _>(rng), random_amps::<2, _>(rng)])
}

fn logical_inputs_two(rng: &mut ChaCha8Rng) -> Vec<[Complex64; 4]> {
    let mut v: Vec<[Complex64; 4]> = (0..4)
        .map(|k| std::array::from_fn(|j| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    v.push(random_amps::<4, _>(rng));
    v.push(random_amps::<4, _>(rng));
    v
}

fn verify_cz(method: Method, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let p = controlled_z(8, method)?;
    let amps = logical_inputs_two(rng);
    let inputs: Vec<Option<DenseState>> = amps.iter().map(|a| logical_pair_state(*a).map(Some)).collect::<Result<_>>()?;
    let target = |inp: Option<&DenseState>| -> Result<DenseState> {
        let d = inp.expect("data");
        let a = d.amplitudes();
        logical_pair_state([a[0], a[0b1100], a[0b0011], -a[0b1111]])
    };
    let mut check = Check::new();
    check_unitary_like(&p, &inputs, &target, None, &mut check)?;
    Ok(check.into_report(&p))
}

fn t_gate(a: [Complex64; 2]) -> [Complex64; 2] {
    [a[0], a[1] * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]
}

fn verify_inject(method: Method, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let p = inject_t(4, method)?;
    let amps = logical_inputs_one(rng)?;
    let inputs: Vec<Option<DenseState>> = amps.iter().map(|a| logical_state(a[0], a[1]).map(Some)).collect::<Result<_>>()?;
    let target = |inp: Option<&DenseState>| -> Result<DenseState> {
        let a = inp.expect("data").amplitudes();
        let [x, y] = t_gate([a[0], a[3]]);
        logical_state(x, y)
    };
    let mut check = Check::new();
    check_unitary_like(&p, &inputs, &target, None, &mut check)?;
    Ok(check.into_report(&p))
}

/// Worst-branch-averaged output infidelity of the pi/8 gate when the `a4`
/// ancilla is replaced by `(1 - eps)|a4><a4| + eps Z|a4><a4|Z`, over the
/// standard test inputs.
pub fn inject_t_noisy_infidelity(eps: f64, seed: u64) -> Result<f64> {
    let p = inject_t(4, Method::Direct)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let out_modes = [1, 2, 3, 4];
    for a in logical_inputs_one(&mut rng)? {
        let inp = logical_state(a[0], a[1])?;
        let [x, y] = t_gate(a);
        let want = logical_state(x, y)?;
        let clean = p.initial_dense(Some(&inp))?;
        let mut flipped = clean.clone();
        flipped.apply_pauli(&crate::majorana::hermitian_monomial(&[5, 6], 8)?);
        let mut fid = 0.0;
        for (w, reg) in [(1.0 - eps, clean), (eps, flipped)] {
            for (run, out) in p.circuit.enumerate_branches(&reg)? {
                fid += w * run.probability * out.mode_fidelity(&out_modes, &want)?;
            }
        }
        worst = worst.max(1.0 - fid);
    }
    Ok(worst)
}

/// Verifies one protocol family by name (see [`PROTOCOL_NAMES`]) or `all`.
pub fn verify(name: &str, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a8 = DenseState::from_tableau(&a8_tableau())?;
    let names: Vec<&str> = if name == "all" { PROTOCOL_NAMES.to_vec() } else { vec![name] };
    let mut out = Vec::new();
    for n in names {
        match n {
            "o3-o1" | "o2-o1" => {
                let (p, q) = if n == "o3-o1" { (a8_from_quartic_exponent(), 1.0) } else { (a8_from_quartet_measurement(), 0.5) };
                let mut check = Check::new();
                check_unitary_like(&p, &[None], &|_| Ok(a8.clone()), Some(q), &mut check)?;
                out.push(check.into_report(&p));
            }
            "o1-o2" => out.push(verify_o1_o2(&mut rng)?),
            "o2-o3" => {
                for method in [Method::Direct, Method::ViaA8] {
                    let p = quartic_exponent_from_measurements(8, method)?;
                    let mut inputs = vec![Some(DenseState::new_vacuum(8)?)];
                    for _ in 0..3 {
                        inputs.push(Some(random_even(8, &mut rng)?));
                    }
                    let target = |inp: Option<&DenseState>| -> Result<DenseState> {
                        let mut d = inp.expect("data").clone();
                        d.apply_quartic_exponent([1, 2, 3, 4], 1)?;
                        Ok(d)
                    };
                    let mut check = Check::new();
                    // with an a8 each quartet outcome splits into eight branches
                    let q = if method == Method::Direct { 0.25 } else { 0.25 / 8.0 };
                    check_unitary_like(&p, &inputs, &target, Some(q), &mut check)?;
                    let mut r = check.into_report(&p);
                    if method == Method::ViaA8 {
                        r.protocol = "o2-o3-a8".into();
                    }
                    out.push(r);
                }
            }
            "cz" => {
                out.push(verify_cz(Method::Direct, &mut rng)?);
                out.push(verify_cz(Method::ViaA8, &mut rng)?);
            }
            "inject-t" => {
                out.push(verify_inject(Method::Direct, &mut rng)?);
                out.push(verify_inject(Method::ViaA8, &mut rng)?);
            }
            other => return Err(Error::InvalidParameter(format!("unknown protocol {other:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_protocols_pass() {
        for name in ["o3-o1", "o2-o1", "o1-o2", "cz"] {
            for r in verify(name, 7).unwrap() {
                assert!(r.fidelity > 1.0 - 1e-10, "{}: {}", r.protocol, r.fidelity);
                assert!(r.prob_error < 1e-10, "{}: {}", r.protocol, r.prob_error);
            }
        }
    }
}
