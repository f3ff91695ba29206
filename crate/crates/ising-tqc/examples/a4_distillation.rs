//! Distilling the four-mode magic state with the 15-qubit code.

use ising_tqc::a4::{a4_threshold, exact_flow_a4, stabilizer_sum_acceptance, A4Mode, A4Schedule, RmCode};

fn main() -> ising_tqc::Result<()> {
    let code = RmCode::build();
    let enumerator = code.undetected_weight_enumerator();
    println!("undetected error weights: {:?}", enumerator.iter().enumerate().filter(|w| *w.1 > 0).collect::<Vec<_>>());
    println!("smallest undetected error has weight {}", code.min_undetected_weight());

    println!("threshold {:.6}", a4_threshold()?);
    for eps in [0.1, 0.05, 0.01, 1e-3] {
        let r = exact_flow_a4(eps, A4Mode::Postselect)?;
        println!(
            "eps {eps:>6}: eps_out {:.4e} (35 eps^3 = {:.4e}), p_s {:.4e}, group sum {:.4e}",
            r.eps_out,
            35.0 * eps * eps * eps,
            r.p_s,
            stabilizer_sum_acceptance(eps)
        );
    }

    let s = A4Schedule::new(0.05, 1e-15, A4Mode::Corrected)?;
    for l in &s.levels {
        println!("level {}: eps {:.3e}, copies {:.1}", l.k, l.eps(), l.n);
    }
    Ok(())
}
