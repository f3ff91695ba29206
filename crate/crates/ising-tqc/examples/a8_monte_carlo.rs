//! Stochastic inventory of ancillas through the purification levels,
//! compared with the fluctuation-free estimate.

use ising_tqc::a8::{full_round_flow, median_n0, monte_carlo, A8Schedule};

fn main() -> ising_tqc::Result<()> {
    let (eps0, k, trials, seed) = (0.1, 2, 5_000, 42);
    for n0 in [96, 128, 160, 192, 256] {
        let m = monte_carlo(eps0, k, n0, trials, seed)?;
        println!("n0 {n0:>4}: P(success) = {:.3} +- {:.3}", m.success_prob, m.stderr);
    }
    for k in 1..=3 {
        let eps_k = (0..k).fold(eps0, |e, _| full_round_flow(e).eps_out);
        let naive = A8Schedule::new(eps0, eps_k)?.n0();
        println!("k {k}: median n0 {} vs estimate {naive:.1}", median_n0(eps0, k, trials, seed)?);
    }
    Ok(())
}
