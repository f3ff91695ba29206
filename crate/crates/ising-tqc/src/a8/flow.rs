use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::solve::bisect;

/// Syndrome permutation induced by one whirl: `U |Psi_s> = |Psi_{ETA[s]}>`.
pub const ETA: [usize; 8] = [0, 3, 7, 4, 5, 6, 2, 1];

/// Which syndrome bit an elementary round compares between its two inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundKind {
    /// compares `s3`
    Gamma,
    /// compares `s2`
    Delta,
    /// compares `s1`
    Theta,
}

impl RoundKind {
    /// Index into `(s1, s2, s3)` of the compared bit.
    pub fn checked_bit(self) -> usize {
        match self {
            RoundKind::Gamma => 2,
            RoundKind::Delta => 1,
            RoundKind::Theta => 0,
        }
    }
}

/// A normalized probability vector over the eight syndrome states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SyndromeDistribution([f64; 8]);

impl SyndromeDistribution {
    pub fn new(p: [f64; 8]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| !(x >= -1e-12)) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self(p.map(|x| x.max(0.0))))
    }

    pub fn probs(&self) -> &[f64; 8] {
        &self.0
    }

    /// Infidelity with the target, `1 - p(0)`.
    pub fn epsilon(&self) -> f64 {
        self.0[1..].iter().sum()
    }
}

/// `(1 - eps) |Psi_0><Psi_0| + eps/7 * (sum of the other seven)`.
pub fn bimodal(eps: f64) -> SyndromeDistribution {
    let mut p = [eps / 7.0; 8];
    p[0] = 1.0 - eps;
    SyndromeDistribution(p)
}

fn bimodal_generic<T: Clone + Sub<Output = T> + num_traits::Num>(eps: &T) -> [T; 8] {
    let seven = T::one() + T::one() + T::one() + T::one() + T::one() + T::one() + T::one();
    let rest = eps.clone() / seven;
    let mut p: [T; 8] = std::array::from_fn(|_| rest.clone());
    p[0] = T::one() - eps.clone();
    p
}

/// Syndrome after the whirl raised to `power`.
pub fn whirl(d: &SyndromeDistribution, power: usize) -> SyndromeDistribution {
    let mut out = d.0;
    for _ in 0..power % 7 {
        let mut next = [0.0; 8];
        for (s, &x) in out.iter().enumerate() {
            next[ETA[s]] += x;
        }
        out = next;
    }
    SyndromeDistribution(out)
}

/// Average over the seven whirl powers, which makes the distribution
/// bimodal without changing `p(0)`.
pub fn twirl(d: &SyndromeDistribution) -> SyndromeDistribution {
    bimodal(d.epsilon())
}

/// Unnormalized output weights of an elementary round: entry `u` is the
/// probability that the round succeeds and leaves syndrome `u`.
pub fn contract<T>(p: &[T; 8], q: &[T; 8], kind: RoundKind) -> [T; 8]
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    let fixed = 2 - kind.checked_bit();
    let fbit = 1usize << fixed;
    let mut out: [T; 8] = std::array::from_fn(|_| T::zero());
    for r in 0..8 {
        for s in 0..8 {
            if (r ^ s) & fbit != 0 {
                continue;
            }
            let u = ((r ^ s) & !fbit) | (r & fbit);
            out[u] = out[u].clone() + p[r].clone() * q[s].clone();
        }
    }
    out
}

/// Unnormalized output weights of a full round (Gamma, then Delta, then
/// Theta on eight identical inputs). The total weight is the success
/// probability.
pub fn full_round_weights<T>(p: &[T; 8]) -> [T; 8]
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    let p3 = contract(p, p, RoundKind::Gamma);
    let p2 = contract(&p3, &p3, RoundKind::Delta);
    contract(&p2, &p2, RoundKind::Theta)
}

/// One iteration of the purification flow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowStep {
    pub eps_out: f64,
    /// Probability that a full round on eight copies succeeds.
    pub success_prob: f64,
}

/// Full round on eight bimodal copies with infidelity `eps`.
pub fn full_round_flow(eps: f64) -> FlowStep {
    let w = full_round_weights(bimodal(eps).probs());
    let z: f64 = w.iter().sum();
    // summing the error weights keeps precision far below 1e-16
    let bad: f64 = w[1..].iter().sum();
    FlowStep { eps_out: bad / z, success_prob: z }
}

/// Exact rational version of [`full_round_flow`], returning
/// `(eps_out, success_prob)`.
pub fn full_round_flow_exact(eps: &BigRational) -> (BigRational, BigRational) {
    let w = full_round_weights(&bimodal_generic(eps));
    let z = w.iter().fold(BigRational::zero(), |a, b| a + b);
    (BigRational::one() - w[0].clone() / z.clone(), z)
}

/// Nontrivial fixed point of the flow: below it the infidelity decreases.
pub fn threshold() -> Result<f64> {
    bisect(|e| full_round_flow(e).eps_out - e, 0.1, 0.5, 1e-13)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn whirl_has_order_seven_and_fixes_target() {
        let mut seen = [0usize; 8];
        let mut s = 1;
        for _ in 0..7 {
            seen[s] += 1;
            s = ETA[s];
        }
        assert_eq!(s, 1);
        assert_eq!(seen, [0, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(ETA[0], 0);
    }

    #[test]
    fn contraction_keeps_checked_bit() {
        // r and s disagree on the checked bit -> failure
        let mut p = [0.0; 8];
        p[1] = 1.0;
        let mut q = [0.0; 8];
        q[0] = 1.0;
        assert_eq!(contract(&p, &q, RoundKind::Gamma).iter().sum::<f64>(), 0.0);
        let out = contract(&p, &q, RoundKind::Delta);
        assert_eq!(out[1], 1.0);
        let mut r = [0.0; 8];
        r[6] = 1.0;
        assert_eq!(contract(&r, &r, RoundKind::Gamma)[0], 1.0);
    }

    #[test]
    fn exact_and_float_agree() {
        let e = BigRational::new(BigInt::from(3), BigInt::from(10));
        let (eo, z) = full_round_flow_exact(&e);
        let f = full_round_flow(0.3);
        let to_f = |r: &BigRational| num_traits::ToPrimitive::to_f64(r).unwrap();
        assert!((to_f(&eo) - f.eps_out).abs() < 1e-14);
        assert!((to_f(&z) - f.success_prob).abs() < 1e-14);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(SyndromeDistribution::new([0.5; 8]).is_err());
        assert!(SyndromeDistribution::new([1.0, -0.1, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn flow_stays_accurate_deep_in_the_quadratic_regime() {
        let f = full_round_flow(1e-20);
        assert!((f.eps_out / 1e-40 - crate::a8::QUADRATIC_COEFFICIENT).abs() < 1e-6, "{}", f.eps_out);
    }
}
