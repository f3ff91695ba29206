//! Distillation of the four-mode T-type ancilla with the 15-qubit
//! punctured Reed-Muller code.

pub mod code;
pub mod flow;

pub use code::{a4_dense, RmCode};
pub use flow::{a4_threshold, exact_flow_a4, log_eps_out, A4Level, stabilizer_sum_acceptance, A4FlowResult, A4Mode, A4Schedule};
