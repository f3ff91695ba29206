//! Every reduction between the operation sets, against exact targets.

use ising_tqc::protocols::{controlled_z, inject_t, inject_t_noisy_infidelity, verify, Method, PROTOCOL_NAMES};

const FIDELITY_TOL: f64 = 1e-10;

#[test]
fn all_protocols_reach_their_targets() {
    let reports = verify("all", 5).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.protocol.as_str()).collect();
    for p in PROTOCOL_NAMES {
        assert!(names.contains(&p), "{p} missing from {names:?}");
    }
    for r in &reports {
        assert!(r.fidelity >= 1.0 - FIDELITY_TOL, "{}: fidelity {}", r.protocol, r.fidelity);
        assert!(r.prob_error <= FIDELITY_TOL, "{}: probability error {}", r.protocol, r.prob_error);
        let total: f64 = r.branches.iter().map(|b| b.prob).sum();
        assert!((total - 1.0).abs() < 1e-10, "{}: branch total {total}", r.protocol);
    }
}

#[test]
fn quartic_by_measurement_has_four_equal_branches() {
    let r = verify("o2-o3", 5).unwrap();
    let direct = r.iter().find(|r| r.protocol == "o2-o3").unwrap();
    assert_eq!(direct.branches.len(), 4);
    for b in &direct.branches {
        assert!((b.prob - 0.25).abs() < 1e-10, "{}: {}", b.outcome, b.prob);
    }
}

#[test]
fn ancilla_routes_use_only_topological_operations() {
    for p in [controlled_z(8, Method::ViaA8).unwrap(), inject_t(4, Method::ViaA8).unwrap()] {
        let l = p.ledger();
        assert_eq!((l.quartet_measurements, l.quartic_exponents), (0, 0), "{}", p.name);
        assert!(p.circuit.is_topological());
    }
}

#[test]
fn injection_error_is_linear_in_ancilla_error() {
    for eps in [0.01, 0.05] {
        let inf = inject_t_noisy_infidelity(eps, 3).unwrap();
        assert!((inf / eps - 1.0).abs() < 1e-6, "eps {eps}: infidelity {inf}");
    }
}
