//! End-to-end cost of the universal gate set in elementary operations: one
//! braid, one pair measurement or one raw ancilla preparation each.

use serde::Serialize;

use crate::a4::{A4Mode, A4Schedule};
use crate::a8::{full_round, full_round_flow, threshold, whirl_circuit, QUADRATIC_COEFFICIENT};
use crate::circuit::{BraidCircuit, Instruction};
use crate::error::{Error, Result};
use crate::protocols::{controlled_z, inject_t, Method};

/// Two-qubit gates per `a4` distillation round: measuring the fourteen
/// stabilizers one qubit at a time costs their total weight.
pub const CZ_PER_A4_ROUND: f64 = 88.0;

/// Below this the `a8` flow is replaced by its quadratic asymptote, which is
/// exact to this relative accuracy.
const ASYMPTOTIC_EPS: f64 = 1e-30;

fn topological_ops(c: &BraidCircuit) -> usize {
    fn one(i: &Instruction) -> usize {
        match i {
            Instruction::Braid(..) | Instruction::BraidInverse(..) | Instruction::MeasurePair(..) => 1,
            Instruction::ClassicallyControlled(_, inner) => one(inner),
            _ => 0,
        }
    }
    c.instructions().iter().map(one).sum()
}

/// Cost per `a8` copy at each purification level, in log space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A8CostLadder {
    /// `(ln eps_j, ln cost_j)`; level 0 is one raw preparation.
    pub levels: Vec<(f64, f64)>,
}

impl A8CostLadder {
    /// Levels until the infidelity is below `exp(ln_target)`.
    pub fn new(eps0: f64, ln_target: f64) -> Result<Self> {
        let thr = threshold()?;
        if !(eps0 > 0.0 && eps0 < thr) {
            return Err(Error::AboveThreshold { eps0, threshold: thr });
        }
        let round_ops = topological_ops(&full_round().circuit) as f64;
        // the output is whirled by a uniformly random power 0..6
        let whirl_ops = 3.0 * topological_ops(&whirl_circuit()) as f64;
        let mut levels: Vec<(f64, f64)> = vec![(eps0.ln(), 0.0)];
        while levels.last().unwrap().0 > ln_target {
            if levels.len() > 200 {
                return Err(Error::InvalidParameter("a8 ladder did not converge".into()));
            }
            let (le, lc) = *levels.last().unwrap();
            let (next, z) = if le < ASYMPTOTIC_EPS.ln() {
                (QUADRATIC_COEFFICIENT.ln() + 2.0 * le, 1.0)
            } else {
                let f = full_round_flow(le.exp());
                (f.eps_out.ln(), f.success_prob)
            };
            let cost = (8.0 * lc.exp() + round_ops) / z + whirl_ops;
            levels.push((next, cost.ln()));
        }
        Ok(Self { levels })
    }

    /// Cost of the first level meeting the target.
    pub fn discrete(&self, ln_target: f64) -> (usize, f64) {
        let j = self.levels.iter().position(|l| l.0 <= ln_target).unwrap_or(self.levels.len() - 1);
        (j, self.levels[j].1.exp())
    }

    /// Cost interpolated as `ln cost` linear in `ln(-ln eps)` between levels.
    pub fn smooth(&self, ln_target: f64) -> f64 {
        if ln_target >= self.levels[0].0 {
            return 1.0;
        }
        let x = (-ln_target).ln();
        let j = self.levels.iter().position(|l| l.0 <= ln_target).unwrap_or(self.levels.len() - 1).max(1);
        let (a, b) = (self.levels[j - 1], self.levels[j]);
        let (xa, xb) = ((-a.0).ln(), (-b.0).ln());
        (a.1 + (b.1 - a.1) * (x - xa) / (xb - xa)).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CostLevel {
    pub k: usize,
    pub ln_eps: f64,
    /// Level-k `a4` copies needed for one final copy.
    pub n: f64,
    /// Distillation rounds run on level-k copies, `g_k = n_k / 15`.
    pub rounds: f64,
    /// Required controlled-Z error, `eps_k^3`, as a natural log.
    pub ln_cz_target: f64,
    pub a8_depth: usize,
    /// Cost per controlled-Z at this level (smooth `a8` cost).
    pub cz_cost: f64,
    /// Cost of one round, `m_k`.
    pub round_cost: f64,
    /// `M_k = g_k m_k`.
    pub level_cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostReport {
    pub n_gates: f64,
    pub delta: f64,
    pub eps0_a4: f64,
    pub eps0_a8: f64,
    pub a4_depth: usize,
    /// Raw `a4` copies per final copy.
    pub a4_n0: f64,
    pub levels: Vec<CostLevel>,
    /// `sum_k M_k` with the `a8` cost of the first sufficient level.
    pub m_tot: f64,
    /// `M_tot` interpolated between schedule depths that hit `delta`
    /// exactly; continuous and increasing in `N`.
    pub m_tot_smooth: f64,
    /// One controlled-Z with error `delta`.
    pub cz_gate_cost: f64,
    /// One pi/8 gate with error `delta` including its injection.
    pub t_gate_cost: f64,
}

struct Model {
    eps0_a4: f64,
    eps0_a8: f64,
    mode: A4Mode,
    ladder: A8CostLadder,
    cz_ops: f64,
}

impl Model {
    fn new(eps0_a4: f64, eps0_a8: f64, mode: A4Mode, ln_floor: f64) -> Result<Self> {
        let ladder = A8CostLadder::new(eps0_a8, 3.0 * ln_floor)?;
        let cz_ops = controlled_z(8, Method::ViaA8)?.ledger().topological_ops() as f64;
        Ok(Self { eps0_a4, eps0_a8, mode, ladder, cz_ops })
    }

    fn levels(&self, sched: &A4Schedule, smooth: bool) -> Vec<CostLevel> {
        sched.levels[..sched.depth()]
            .iter()
            .map(|l| {
                let t = 3.0 * l.ln_eps;
                let (a8_depth, discrete) = self.ladder.discrete(t);
                let a8 = if smooth { self.ladder.smooth(t) } else { discrete };
                let cz_cost = a8 + self.cz_ops;
                let rounds = l.n / 15.0;
                let round_cost = CZ_PER_A4_ROUND * cz_cost;
                CostLevel { k: l.k, ln_eps: l.ln_eps, n: l.n, rounds, ln_cz_target: t, a8_depth, cz_cost, round_cost, level_cost: rounds * round_cost }
            })
            .collect()
    }

    fn smooth_total(&self, ln_delta: f64) -> Result<f64> {
        let deep = A4Schedule::new_log(self.eps0_a4, ln_delta, self.mode)?;
        let d = deep.depth();
        if d == 0 {
            return Ok(0.0);
        }
        // totals at the two depths whose final infidelity brackets delta
        let total_at = |depth: usize| -> Result<(f64, f64)> {
            let le = deep_eps(self.eps0_a4, depth);
            let s = A4Schedule::new_log(self.eps0_a4, le, self.mode)?;
            Ok((le, self.levels(&s, true).iter().map(|l| l.level_cost).sum::<f64>()))
        };
        let (lo, hi) = if d == 1 { (1, 2) } else { (d - 1, d) };
        let (la, ma) = total_at(lo)?;
        let (lb, mb) = total_at(hi)?;
        let (xa, xb, x) = ((-la).ln(), (-lb).ln(), (-ln_delta).ln());
        Ok((ma.ln() + (mb.ln() - ma.ln()) * (x - xa) / (xb - xa)).exp())
    }
}

/// Final infidelity of a schedule with exactly `depth` levels, as a log.
fn deep_eps(eps0: f64, depth: usize) -> f64 {
    (0..depth).fold(eps0.ln(), |le, _| crate::a4::log_eps_out(le))
}

/// Cost report for a target circuit of `n_gates` gates, each of which must
/// fail with probability at most `1 / n_gates`.
pub fn cost_model(n_gates: f64, eps0_a4: f64, eps0_a8: f64, mode: A4Mode) -> Result<CostReport> {
    if !(n_gates >= 2.0) {
        return Err(Error::InvalidParameter(format!("need at least two gates, got {n_gates}")));
    }
    let ln_delta = -n_gates.ln();
    let sched = A4Schedule::new_log(eps0_a4, ln_delta, mode)?;
    let model = Model::new(eps0_a4, eps0_a8, mode, sched.levels.last().unwrap().ln_eps.min(ln_delta) - 1.0)?;
    let levels = model.levels(&sched, false);
    let m_tot = levels.iter().fold(0.0, |a, l| a + l.level_cost);
    let m_tot_smooth = model.smooth_total(ln_delta)?;
    let a8_delta = model.ladder.discrete(ln_delta).1;
    let cz_gate_cost = a8_delta + model.cz_ops;
    // the injection spends one a8 on the Z(x)Z measurement and one on its controlled-X
    let inject = inject_t(4, Method::ViaA8)?.ledger();
    let t_gate_cost = m_tot + inject.topological_ops() as f64 + inject.a8 as f64 * a8_delta;
    Ok(CostReport {
        n_gates,
        delta: ln_delta.exp(),
        eps0_a4,
        eps0_a8: model.eps0_a8,
        a4_depth: sched.depth(),
        a4_n0: sched.n0(),
        levels,
        m_tot,
        m_tot_smooth,
        cz_gate_cost,
        t_gate_cost,
    })
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Fitted exponent of `M_tot ~ (log N)^s` from `points` log-spaced gate
/// counts in `[n_lo, n_hi]`, using the smooth total.
pub fn m_tot_log_slope(n_lo: f64, n_hi: f64, points: usize, eps0_a4: f64, eps0_a8: f64, mode: A4Mode) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..points {
        let ln_n = n_lo.ln() + (n_hi.ln() - n_lo.ln()) * i as f64 / (points - 1) as f64;
        let r = cost_model(ln_n.exp(), eps0_a4, eps0_a8, mode)?;
        xs.push(ln_n.ln());
        ys.push(r.m_tot_smooth.ln());
    }
    Ok(fit_slope(&xs, &ys))
}

/// Share of the top distillation level in the layered sum for a schedule
/// of exactly `depth` levels.
pub fn top_level_share(depth: usize, eps0_a4: f64, eps0_a8: f64, mode: A4Mode) -> Result<f64> {
    let le = deep_eps(eps0_a4, depth);
    let s = A4Schedule::new_log(eps0_a4, le, mode)?;
    let model = Model::new(eps0_a4, eps0_a8, mode, le)?;
    let levels = model.levels(&s, true);
    let total: f64 = levels.iter().map(|l| l.level_cost).sum();
    Ok(levels.last().map_or(0.0, |l| l.level_cost) / total)
}

/// Growth exponent `gamma` of the raw `a4` count, `n0 ~ |log eps'|^gamma`,
/// from the schedules of depth `depth` and `depth + 1`.
pub fn a4_n0_exponent(eps0: f64, depth: usize, mode: A4Mode) -> Result<f64> {
    let (la, lb) = (deep_eps(eps0, depth), deep_eps(eps0, depth + 1));
    let (na, nb) = (A4Schedule::new_log(eps0, la, mode)?.n0(), A4Schedule::new_log(eps0, lb, mode)?.n0());
    Ok((nb / na).ln() / ((-lb).ln() - (-la).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_gates_need_no_distillation() {
        let r = cost_model(2.0, 0.05, 0.1, A4Mode::Corrected).unwrap();
        assert_eq!(r.a4_depth, 0);
        assert_eq!(r.m_tot, 0.0);
        assert!(r.t_gate_cost.is_finite() && r.cz_gate_cost > 1.0);
    }

    #[test]
    fn totals_grow_with_circuit_size() {
        let mut last = (0.0, 0.0);
        for e in 2..=14 {
            let r = cost_model(10f64.powi(e), 0.05, 0.1, A4Mode::Corrected).unwrap();
            assert!(r.m_tot >= last.0 && r.m_tot_smooth >= last.1, "N=1e{e}");
            let sum: f64 = r.levels.iter().map(|l| l.level_cost).sum();
            assert!((sum - r.m_tot).abs() <= 1e-9 * r.m_tot);
            last = (r.m_tot, r.m_tot_smooth);
        }
    }

    #[test]
    fn smooth_total_hits_discrete_at_tight_points() {
        let le = deep_eps(0.05, 2);
        let r = cost_model((-le).exp(), 0.05, 0.1, A4Mode::Corrected).unwrap();
        let model = Model::new(0.05, 0.1, A4Mode::Corrected, le - 1.0).unwrap();
        let s = A4Schedule::new_log(0.05, le, A4Mode::Corrected).unwrap();
        let want: f64 = model.levels(&s, true).iter().map(|l| l.level_cost).sum();
        assert!((r.m_tot_smooth / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ladder_matches_schedule_counts() {
        let l = A8CostLadder::new(0.1, (1e-12f64).ln()).unwrap();
        let s = crate::a8::A8Schedule::new(0.1, 1e-12).unwrap();
        assert_eq!(l.levels.len(), s.levels.len());
        for (a, b) in l.levels.iter().zip(&s.levels) {
            assert!((a.0.exp() / b.eps - 1.0).abs() < 1e-9);
        }
        // raw copies dominate the per-level cost: at least the schedule's n0
        assert!(l.levels.last().unwrap().1.exp() >= s.n0());
    }

    #[test]
    fn total_scales_as_cube_of_log() {
        let s = m_tot_log_slope(1e3, 1e12, 40, 0.05, 0.1, A4Mode::Corrected).unwrap();
        assert!((s - 3.0).abs() < 0.2, "slope {s}");
    }

    #[test]
    fn top_level_share_tends_to_four_ninths() {
        let share = top_level_share(22, 0.05, 0.1, A4Mode::Corrected).unwrap();
        assert!((share - 4.0 / 9.0).abs() < 1e-3, "share {share}");
    }

    #[test]
    fn raw_a4_count_exponent_is_log3_of_15() {
        let g = a4_n0_exponent(0.05, 10, A4Mode::Corrected).unwrap();
        assert!((g - 15f64.ln() / 3f64.ln()).abs() < 1e-3, "gamma {g}");
    }
}
