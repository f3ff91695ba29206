use crate::error::{Error, Result};

use super::flow::{full_round_flow, threshold};

/// Asymptotic coefficient of the quadratic flow, `eps_out ~ C eps^2`.
pub const QUADRATIC_COEFFICIENT: f64 = 48.0 / 49.0;

/// Hard cap on purification depth; the infidelity squares each level, so
/// this is far beyond any representable target.
const MAX_LEVELS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct A8Level {
    pub k: usize,
    /// Infidelity of a level-k ancilla.
    pub eps: f64,
    /// Expected number of level-k ancillas available when starting from
    /// the schedule's `n0` level-0 copies.
    pub n: f64,
    /// Success probability of a full round acting on level-k copies.
    pub success_prob: f64,
}

/// Levels of the exact purification recursion from `eps0` down to a target.
#[derive(Clone, Debug, PartialEq)]
pub struct A8Schedule {
    pub levels: Vec<A8Level>,
}

impl A8Schedule {
    pub fn new(eps0: f64, eps_target: f64) -> Result<Self> {
        let thr = threshold()?;
        if !(0.0..thr).contains(&eps0) {
            return Err(Error::AboveThreshold { eps0, threshold: thr });
        }
        if !(eps_target > 0.0) {
            return Err(Error::InvalidParameter(format!("target infidelity must be positive, got {eps_target}")));
        }
        // copies_per_output[k] = level-0 copies consumed per level-k ancilla
        let mut eps = vec![eps0];
        let mut z = Vec::new();
        let mut cost = vec![1.0];
        while *eps.last().unwrap() > eps_target {
            if eps.len() > MAX_LEVELS {
                return Err(Error::InvalidParameter("target not reached".into()));
            }
            let e = *eps.last().unwrap();
            let step = full_round_flow(e);
            z.push(step.success_prob);
            cost.push(cost.last().unwrap() * 8.0 / step.success_prob);
            eps.push(step.eps_out);
        }
        let n0 = *cost.last().unwrap();
        let levels = eps
            .iter()
            .enumerate()
            .map(|(k, &e)| A8Level {
                k,
                eps: e,
                n: n0 / cost[k],
                success_prob: z.get(k).copied().unwrap_or_else(|| full_round_flow(e).success_prob),
            })
            .collect();
        Ok(Self { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Level-0 copies consumed per output ancilla, `8^k / prod Z(eps_j)`.
    pub fn n0(&self) -> f64 {
        self.levels[0].n
    }

    pub fn final_eps(&self) -> f64 {
        self.levels.last().unwrap().eps
    }

    /// Depth predicted by the quadratic approximation:
    /// `2^k ~ log(C eps') / log(C eps0)`.
    pub fn quadratic_depth(eps0: f64, eps_target: f64) -> usize {
        let c = QUADRATIC_COEFFICIENT;
        let ratio = (c * eps_target).ln() / (c * eps0).ln();
        if ratio <= 1.0 {
            0
        } else {
            ratio.log2().ceil() as usize
        }
    }
}

/// Infidelity after `k` levels in the quadratic approximation,
/// `(C eps0)^(2^k) / C`.
pub fn quadratic_eps(eps0: f64, k: usize) -> f64 {
    let c = QUADRATIC_COEFFICIENT;
    (c * eps0).powf(2f64.powi(k as i32)) / c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_schedule() {
        let s = A8Schedule::new(0.1, 0.1).unwrap();
        assert_eq!(s.depth(), 0);
        assert_eq!(s.n0(), 1.0);
    }

    #[test]
    fn one_level_from_small_eps_costs_eight() {
        let s = A8Schedule::new(1e-6, 1e-9).unwrap();
        assert_eq!(s.depth(), 1);
        assert!((s.n0() - 8.0).abs() < 1e-3);
    }

    #[test]
    fn inventory_decreases() {
        let s = A8Schedule::new(0.2, 1e-30).unwrap();
        for w in s.levels.windows(2) {
            assert!(w[1].eps < w[0].eps);
            assert!(w[1].n < w[0].n);
        }
        assert!((s.levels.last().unwrap().n - 1.0).abs() < 1e-9);
    }

    #[test]
    fn diverges_above_threshold() {
        assert!(matches!(A8Schedule::new(0.39, 1e-3), Err(Error::AboveThreshold { .. })));
    }

    #[test]
    fn quadratic_depth_tracks_exact_depth() {
        for (e0, t) in [(0.01, 1e-12), (0.05, 1e-20), (0.001, 1e-40)] {
            let exact = A8Schedule::new(e0, t).unwrap().depth();
            let approx = A8Schedule::quadratic_depth(e0, t);
            assert!(exact.abs_diff(approx) <= 1, "{e0} {t}: {exact} vs {approx}");
        }
    }
}
