//! End-to-end cost of the gate set as the target circuit grows.

use ising_tqc::a4::A4Mode;
use ising_tqc::cost::{cost_model, m_tot_log_slope, top_level_share};

fn main() -> ising_tqc::Result<()> {
    // the smooth total interpolates between schedules that hit 1/N exactly
    println!("{:>8} {:>6} {:>12} {:>12} {:>12} {:>12}", "N", "levels", "M_tot", "smooth", "CZ cost", "T cost");
    for e in [3, 6, 9, 12, 15] {
        let r = cost_model(10f64.powi(e), 0.05, 0.1, A4Mode::Corrected)?;
        println!(
            "{:>8} {:>6} {:>12.4e} {:>12.4e} {:>12.1} {:>12.4e}",
            format!("1e{e}"),
            r.a4_depth,
            r.m_tot,
            r.m_tot_smooth,
            r.cz_gate_cost,
            r.t_gate_cost
        );
    }
    let r = cost_model(1e9, 0.05, 0.1, A4Mode::Corrected)?;
    for l in &r.levels {
        println!("level {}: g = {:.1} rounds, m = {:.3e}, M = {:.3e}", l.k, l.rounds, l.round_cost, l.level_cost);
    }
    println!("M_tot ~ (log N)^{:.3}", m_tot_log_slope(1e3, 1e12, 40, 0.05, 0.1, A4Mode::Corrected)?);
    for d in [4, 8, 16] {
        println!("top level share at depth {d}: {:.4}", top_level_share(d, 0.05, 0.1, A4Mode::Corrected)?);
    }
    Ok(())
}
