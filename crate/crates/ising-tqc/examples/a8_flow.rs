//! The purification flow for the eight-mode ancilla: threshold, the
//! acceptance probability and the depth needed for a few targets.

use ising_tqc::a8::{full_round_flow, threshold, A8Schedule, QUADRATIC_COEFFICIENT};

fn main() -> ising_tqc::Result<()> {
    let d = threshold()?;
    println!("threshold {d:.6}, acceptance there {:.4}", full_round_flow(d).success_prob);

    println!("{:>10} {:>12} {:>8}", "eps", "eps_out", "Z");
    for eps in [0.3, 0.2, 0.1, 0.05, 0.01, 1e-3, 1e-4] {
        let f = full_round_flow(eps);
        println!("{eps:>10.1e} {:>12.4e} {:>8.4}", f.eps_out, f.success_prob);
    }
    println!("eps_out / eps^2 at 1e-4: {:.5} (asymptote {:.5})", full_round_flow(1e-4).eps_out / 1e-8, QUADRATIC_COEFFICIENT);

    for target in [1e-6, 1e-12, 1e-30] {
        let s = A8Schedule::new(0.1, target)?;
        println!("eps0 0.1 to {target:e}: {} levels, {:.0} raw copies", s.depth(), s.n0());
    }
    Ok(())
}
