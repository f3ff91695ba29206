//! Purification of the eight-mode ancilla that supplies the missing
//! quartic measurement.
//!
//! The ancilla lives in a basis of eight states labelled by syndrome
//! `s = 4 s1 + 2 s2 + s3`, where `s_j` is the outcome bit of the `j`-th
//! syndrome operator; `s = 0` is the target state.

pub mod basis;
pub mod circuits;
pub mod flow;
pub mod monte_carlo;
pub mod schedule;

pub use basis::{a8_tableau, dephase, syndrome_operators, syndrome_overlaps, syndrome_state_dense, syndrome_state_tableau};
pub use circuits::{cyclic_shift_circuit, elementary_round, full_round, whirl_circuit, ElementaryRound, FullRound, RoundKind};
pub use flow::{bimodal, full_round_flow, threshold, twirl, whirl, FlowStep, SyndromeDistribution, ETA};


pub use monte_carlo::{batch_shortfall, median_n0, monte_carlo, McEstimate};
pub use schedule::{quadratic_eps, A8Level, A8Schedule, QUADRATIC_COEFFICIENT};
