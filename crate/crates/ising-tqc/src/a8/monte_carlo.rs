//! Stochastic ancilla inventory through the purification levels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::flow::{threshold, RoundKind, ETA};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub trials: usize,
    pub successes: usize,
    pub success_prob: f64,
    pub stderr: f64,
}

/// Stream for trial `index` under `seed`; independent of scheduling order.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sample_copy<R: Rng>(eps: f64, rng: &mut R) -> u8 {
    if rng.gen::<f64>() < eps {
        rng.gen_range(1..8)
    } else {
        0
    }
}

fn elementary(r: u8, s: u8, kind: RoundKind) -> Option<u8> {
    let f = 1u8 << (2 - kind.checked_bit());
    ((r ^ s) & f == 0).then(|| ((r ^ s) & !f) | (r & f))
}

/// Seven elementary rounds on eight copies, then a random whirl power.
fn full_round<R: Rng>(c: &[u8], rng: &mut R) -> Option<u8> {
    let mut a = [0u8; 4];
    for i in 0..4 {
        a[i] = elementary(c[2 * i], c[2 * i + 1], RoundKind::Gamma)?;
    }
    let b0 = elementary(a[0], a[1], RoundKind::Delta)?;
    let b1 = elementary(a[2], a[3], RoundKind::Delta)?;
    let mut o = elementary(b0, b1, RoundKind::Theta)? as usize;
    for _ in 0..rng.gen_range(0..7) {
        o = ETA[o];
    }
    Some(o as u8)
}

/// One trial: `n0` level-0 copies pushed through `k` levels with greedy
/// groups of eight; leftovers are dropped at each level. Returns whether at
/// least one level-k ancilla is produced.
pub fn run_trial<R: Rng>(eps0: f64, k: usize, n0: usize, rng: &mut R, buf: &mut Vec<u8>) -> bool {
    buf.clear();
    buf.extend((0..n0).map(|_| sample_copy(eps0, rng)));
    for _ in 0..k {
        let groups = buf.len() / 8;
        let mut w = 0;
        for g in 0..groups {
            if let Some(o) = full_round(&buf[8 * g..8 * g + 8], rng) {
                buf[w] = o;
                w += 1;
            }
        }
        buf.truncate(w);
        if buf.is_empty() {
            return false;
        }
    }
    !buf.is_empty()
}

fn check_eps(eps0: f64) -> Result<()> {
    let thr = threshold()?;
    if !(0.0..thr).contains(&eps0) {
        return Err(Error::AboveThreshold { eps0, threshold: thr });
    }
    Ok(())
}

/// Probability that `n0` level-0 copies yield at least one level-`k` copy.
pub fn monte_carlo(eps0: f64, k: usize, n0: usize, trials: usize, seed: u64) -> Result<McEstimate> {
    check_eps(eps0)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let successes = (0..trials as u64)
        .into_par_iter()
        .map_init(Vec::new, |buf, t| run_trial(eps0, k, n0, &mut trial_rng(seed, t), buf) as usize)
        .sum::<usize>();
    let p = successes as f64 / trials as f64;
    Ok(McEstimate { trials, successes, success_prob: p, stderr: (p * (1.0 - p) / trials as f64).sqrt() })
}

/// Smallest `n0` whose estimated success probability reaches one half,
/// found by doubling and bisection with common random numbers.
pub fn median_n0(eps0: f64, k: usize, trials: usize, seed: u64) -> Result<usize> {
    check_eps(eps0)?;
    let p = |n: usize| monte_carlo(eps0, k, n, trials, seed).map(|m| m.success_prob);
    let mut lo = 8usize.pow(k as u32).saturating_sub(1).max(1);
    if k == 0 {
        return Ok(1);
    }
    if p(lo + 1)? >= 0.5 {
        return Ok(lo + 1);
    }
    let mut hi = 2 * (lo + 1);
    while p(hi)? < 0.5 {
        lo = hi;
        hi *= 2;
        if hi > 1 << 40 {
            return Err(Error::InvalidParameter("no median found".into()));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if p(mid)? >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Splits `3L` groups of `n0` copies and estimates the probability that
/// fewer than `L` groups succeed.
pub fn batch_shortfall(eps0: f64, k: usize, n0: usize, l: usize, experiments: usize, seed: u64) -> Result<f64> {
    check_eps(eps0)?;
    let groups = 3 * l;
    let short = (0..experiments as u64)
        .into_par_iter()
        .map_init(Vec::new, |buf, e| {
            let ok = (0..groups as u64)
                .filter(|g| run_trial(eps0, k, n0, &mut trial_rng(seed, e * groups as u64 + g), buf))
                .count();
            (ok < l) as usize
        })
        .sum::<usize>();
    Ok(short as f64 / experiments as f64)
}
