use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::solve::bisect;

use super::code::{RmCode, N};

/// How nontrivial Z-type syndromes are handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum A4Mode {
    /// Accept only the trivial syndrome on all 14 checks.
    #[default]
    Postselect,
    /// Accept every Z-type syndrome and undo it with a Clifford correction;
    /// only the X-type checks (which see the Z errors) postselect.
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A4FlowResult {
    pub eps_out: f64,
    /// Acceptance probability.
    pub p_s: f64,
}

fn enumerator() -> &'static [u64; N + 1] {
    static W: OnceLock<[u64; N + 1]> = OnceLock::new();
    W.get_or_init(|| RmCode::build().undetected_weight_enumerator())
}

fn log_sum_exp(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Log of the accepted weight split into `(logical error, total)`, for a
/// per-copy error `eps = exp(ln_eps)`.
fn log_weights(ln_eps: f64) -> (f64, f64) {
    let ln_keep = (-ln_eps.exp()).ln_1p();
    let term = |w: usize, c: u64| (c as f64).ln() + w as f64 * ln_eps + (N - w) as f64 * ln_keep;
    let w = enumerator();
    let odd = log_sum_exp((0..=N).filter(|w| w % 2 == 1 && enumerator()[*w] > 0).map(|k| term(k, w[k])));
    let all = log_sum_exp((0..=N).filter(|k| w[*k] > 0).map(|k| if k == 0 { (N as f64) * ln_keep } else { term(k, w[k]) }));
    (odd, all)
}

/// Log of the output infidelity; stays finite far below `f64` underflow.
pub fn log_eps_out(ln_eps: f64) -> f64 {
    let (odd, all) = log_weights(ln_eps);
    odd - all
}

/// Exact distillation map for 15 dephased copies with Z-error probability `eps`.
pub fn exact_flow_a4(eps: f64, mode: A4Mode) -> Result<A4FlowResult> {
    if !(0.0..=0.5).contains(&eps) {
        return Err(Error::InvalidParameter(format!("eps must lie in [0, 0.5], got {eps}")));
    }
    let z_checks = match mode {
        A4Mode::Postselect => (-10f64 * 2f64.ln()).exp(),
        A4Mode::Corrected => 1.0,
    };
    if eps == 0.0 {
        return Ok(A4FlowResult { eps_out: 0.0, p_s: z_checks });
    }
    let (odd, all) = log_weights(eps.ln());
    Ok(A4FlowResult { eps_out: (odd - all).exp(), p_s: z_checks * all.exp() })
}

/// Acceptance probability of the postselected protocol computed as
/// `Tr(Pi rho^{(x)15}) = 2^-14 sum_S prod_j tr(rho S_j)`, independent of the
/// weight enumeration.
pub fn stabilizer_sum_acceptance(eps: f64) -> f64 {
    let code = RmCode::build();
    // single copy: <X> = <Y> = (1 - 2 eps)/sqrt 2, <Z> = 0
    let xy = (1.0 - 2.0 * eps) * std::f64::consts::FRAC_1_SQRT_2;
    let mut total = 0.0;
    for s in code.stabilizer_group() {
        let (x, z) = (s.x_bits(), s.z_bits());
        if z & !x != 0 {
            continue; // a bare Z factor has zero expectation
        }
        let ys = (x & z).count_ones();
        let xs = (x & !z).count_ones();
        // i^phase X^x Z^z with XZ = -iY on each Y position
        let k = (s.phase() as u32 + 3 * ys) % 4;
        let sign = match k {
            0 => 1.0,
            2 => -1.0,
            _ => unreachable!("stabilizer elements are Hermitian"),
        };
        total += sign * xy.powi((xs + ys) as i32);
    }
    total / 2f64.powi(14)
}

/// Nontrivial fixed point of the distillation flow.
pub fn a4_threshold() -> Result<f64> {
    bisect(|e| exact_flow_a4(e, A4Mode::Postselect).map(|r| r.eps_out - e).unwrap_or(f64::NAN), 0.05, 0.3, 1e-13)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A4Level {
    pub k: usize,
    /// Natural log of the level-k infidelity.
    pub ln_eps: f64,
    /// Expected level-k ancillas available from the schedule's `n0`.
    pub n: f64,
    pub p_s: f64,
}

impl A4Level {
    pub fn eps(&self) -> f64 {
        self.ln_eps.exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct A4Schedule {
    pub mode: A4Mode,
    pub levels: Vec<A4Level>,
}

impl A4Schedule {
    /// Levels until the infidelity drops to `eps_target`; the target may be
    /// given as a natural log for values below `f64` range.
    pub fn new(eps0: f64, eps_target: f64, mode: A4Mode) -> Result<Self> {
        Self::new_log(eps0, eps_target.ln(), mode)
    }

    pub fn new_log(eps0: f64, ln_target: f64, mode: A4Mode) -> Result<Self> {
        let thr = a4_threshold()?;
        if !(0.0..thr).contains(&eps0) {
            return Err(Error::AboveThreshold { eps0, threshold: thr });
        }
        if ln_target.is_nan() {
            return Err(Error::InvalidParameter("target must be positive".into()));
        }
        let mut ln_eps = vec![eps0.ln()];
        let mut ps = Vec::new();
        let mut cost = vec![1.0f64];
        while *ln_eps.last().unwrap() > ln_target {
            if ln_eps.len() > 40 {
                return Err(Error::InvalidParameter("target not reached".into()));
            }
            let l = *ln_eps.last().unwrap();
            let (odd, all) = log_weights(l);
            let p = match mode {
                A4Mode::Postselect => all.exp() / 1024.0,
                A4Mode::Corrected => all.exp(),
            };
            ps.push(p);
            cost.push(cost.last().unwrap() * 15.0 / p);
            ln_eps.push(odd - all);
        }
        let n0 = *cost.last().unwrap();
        let levels = ln_eps
            .iter()
            .enumerate()
            .map(|(k, &l)| A4Level { k, ln_eps: l, n: n0 / cost[k], p_s: ps.get(k).copied().unwrap_or(f64::NAN) })
            .collect();
        Ok(Self { mode, levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn n0(&self) -> f64 {
        self.levels[0].n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_is_fixed() {
        let r = exact_flow_a4(0.0, A4Mode::Postselect).unwrap();
        assert_eq!(r.eps_out, 0.0);
        assert!((r.p_s * 1024.0 - 1.0).abs() < 1e-12);
        assert_eq!(exact_flow_a4(0.0, A4Mode::Corrected).unwrap().p_s, 1.0);
    }

    #[test]
    fn log_space_matches_direct_polynomial() {
        let w = RmCode::build().undetected_weight_enumerator();
        for eps in [1e-3f64, 0.01, 0.1, 0.3] {
            let term = |k: usize| w[k] as f64 * eps.powi(k as i32) * (1.0 - eps).powi((N - k) as i32);
            let odd: f64 = (0..=N).filter(|k| k % 2 == 1).map(term).sum();
            let all: f64 = (0..=N).map(term).sum();
            let r = exact_flow_a4(eps, A4Mode::Corrected).unwrap();
            assert!((r.eps_out - odd / all).abs() < 1e-14 * (odd / all).max(1e-300));
            assert!((r.p_s - all).abs() < 1e-13);
        }
    }

    #[test]
    fn stabilizer_sum_matches_enumeration() {
        for eps in [0.0, 0.01, 0.1, 0.25] {
            let a = stabilizer_sum_acceptance(eps);
            let b = exact_flow_a4(eps, A4Mode::Postselect).unwrap().p_s;
            assert!((a - b).abs() < 1e-10, "eps={eps}: {a} vs {b}");
        }
    }

    #[test]
    fn tiny_eps_stays_cubic() {
        let l = log_eps_out((1e-200f64).ln());
        assert!((l - (35f64.ln() + 3.0 * (1e-200f64).ln())).abs() < 1e-9);
    }

    #[test]
    fn schedule_two_levels_from_one_percent() {
        let s = A4Schedule::new(0.01, 1e-11, A4Mode::Corrected).unwrap();
        assert_eq!(s.depth(), 2);
        let e2 = s.levels[2].eps();
        let approx = 35.0 * (35.0f64 * 1e-6).powi(3);
        assert!(e2 / approx < 2.0 && approx / e2 < 2.0, "{e2} vs {approx}");
        let t = A4Schedule::new(0.01, 0.01, A4Mode::Corrected).unwrap();
        assert_eq!((t.depth(), t.n0()), (0, 1.0));
    }
}
