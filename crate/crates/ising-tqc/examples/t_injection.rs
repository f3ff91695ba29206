//! Injecting the pi/8 phase gate with a four-mode ancilla, exactly and with
//! a dephased ancilla.

use ising_tqc::protocols::{inject_t, inject_t_noisy_infidelity, Method};

fn main() -> ising_tqc::Result<()> {
    for method in [Method::Direct, Method::ViaA8] {
        let p = inject_t(4, method)?;
        println!("{}: {} modes, {} instructions, {:?}", p.name, p.n_modes(), p.circuit.len(), p.ledger());
    }
    for eps in [0.001, 0.01, 0.05] {
        println!("ancilla error {eps}: gate infidelity {:.6}", inject_t_noisy_infidelity(eps, 1)?);
    }
    Ok(())
}
