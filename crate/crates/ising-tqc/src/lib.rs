//! Quantum computation with Ising anyons modelled as Majorana modes.
//!
//! Braids and pair measurements are simulated exactly on a stabilizer
//! tableau ([`tableau`]) with a dense state vector ([`dense`]) as the
//! reference. On top of that sit the purification of the eight-mode ancilla
//! ([`a8`]), distillation of the four-mode magic state ([`a4`]), the
//! reductions between operation sets ([`protocols`]) and the end-to-end cost
//! model ([`cost`]).
//!
//! Each capability has a runnable example:
//!
//! - `braid_group`: braid action on Majoranas, nonlocal words, group orders
//! - `stabilizer_vs_dense`: one circuit on both engines, branch by branch
//! - `orbits`: states reachable by braiding
//! - `a8_flow`: purification threshold, flow and schedules
//! - `purification_round`: one elementary round as a braid circuit
//! - `a8_monte_carlo`: stochastic ancilla inventory
//! - `a4_distillation`: the 15-qubit code, its flow and schedule
//! - `protocol_reductions`: verification and resource ledgers
//! - `t_injection`: pi/8 gate injection, exact and noisy
//! - `resource_estimate`: cost of the gate set against circuit size
//! - `run_circuit_file`: JSON circuits and the outcome log
//!
//! ```text
//! cargo run --release --example a8_flow
//! ```

pub mod a4;
pub mod a8;
pub mod braids;
pub mod circuit;
pub mod cli;
pub mod cost;
pub mod dense;
pub mod error;
pub mod majorana;
pub mod pauli;
pub mod protocols;
pub mod solve;
pub mod tableau;

pub use error::{Error, Result};
