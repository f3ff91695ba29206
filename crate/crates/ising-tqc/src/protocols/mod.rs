//! Braid protocols that trade one non-topological resource for another:
//! `a8` ancillas, quartet measurements and quartic exponents, plus the
//! controlled-Z and pi/8 gates built from them.

mod build;
mod logical;
mod verify;

pub use build::{
    a8_from_quartet_measurement, a8_from_quartic_exponent, append_controlled_z, append_quartet_measurement,
    append_quartic_by_measurement, controlled_z, inject_t, quartet_measurement_with_a8, quartic_exponent_from_measurements,
    Method, QuarticRoute,
};
pub use logical::{
    a4_state, logical_clifford, logical_of_pair, logical_pair_state, logical_state, one_qubit_cliffords, LogicalAction,
    LogicalPauli, LogicalQubit, SignedLogical,
};
pub use verify::{inject_t_noisy_infidelity, verify, BranchStat, VerificationReport, PROTOCOL_NAMES};

use serde::Serialize;

use crate::a8::a8_tableau;
use crate::circuit::{BraidCircuit, Condition, Instruction};
use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::tableau::StabilizerTableau;

/// Block of modes a protocol expects next to its data, in register order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ancilla {
    /// `n` modes in the vacuum.
    Vacuum(usize),
    A8,
    A4,
}

impl Ancilla {
    pub fn n_modes(&self) -> usize {
        match self {
            Ancilla::Vacuum(n) => *n,
            Ancilla::A8 => 8,
            Ancilla::A4 => 4,
        }
    }
}

/// What a protocol consumes. Controlled gates count as if they fire.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResourceLedger {
    pub a8: usize,
    pub a4: usize,
    pub braids: usize,
    pub pair_measurements: usize,
    pub quartet_measurements: usize,
    pub quartic_exponents: usize,
}

impl ResourceLedger {
    fn count(&mut self, ins: &Instruction) {
        match ins {
            Instruction::Braid(..) | Instruction::BraidInverse(..) => self.braids += 1,
            Instruction::MeasurePair(..) => self.pair_measurements += 1,
            Instruction::MeasureQuartet(..) => self.quartet_measurements += 1,
            Instruction::QuarticExponent(..) => self.quartic_exponents += 1,
            Instruction::ClassicallyControlled(_, inner) => self.count(inner),
        }
    }

    /// Topological operations: braids and pair measurements.
    pub fn topological_ops(&self) -> usize {
        self.braids + self.pair_measurements
    }
}

/// A circuit acting on `data_modes` data modes followed by its ancillas.
#[derive(Clone, Debug)]
pub struct Protocol {
    pub name: String,
    pub data_modes: usize,
    pub ancillas: Vec<Ancilla>,
    pub circuit: BraidCircuit,
    /// Outcome bit reported by measurement protocols.
    pub reported: Option<Condition>,
}

impl Protocol {
    pub fn n_modes(&self) -> usize {
        self.circuit.n_modes()
    }

    pub fn ledger(&self) -> ResourceLedger {
        let mut l = ResourceLedger::default();
        for a in &self.ancillas {
            match a {
                Ancilla::A8 => l.a8 += 1,
                Ancilla::A4 => l.a4 += 1,
                Ancilla::Vacuum(_) => {}
            }
        }
        for ins in self.circuit.instructions() {
            l.count(ins);
        }
        l
    }

    /// Dense register `data (x) ancillas`; pass `None` when there is no data.
    pub fn initial_dense(&self, data: Option<&DenseState>) -> Result<DenseState> {
        let mut blocks = Vec::new();
        match data {
            Some(d) if d.n_modes() == self.data_modes => blocks.push(d.clone()),
            None if self.data_modes == 0 => {}
            _ => return Err(Error::InvalidParameter(format!("{} expects {} data modes", self.name, self.data_modes))),
        }
        for a in &self.ancillas {
            blocks.push(match a {
                Ancilla::Vacuum(n) => DenseState::new_vacuum(*n)?,
                Ancilla::A8 => DenseState::from_tableau(&a8_tableau())?,
                Ancilla::A4 => a4_state(),
            });
        }
        let mut it = blocks.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidParameter("empty register".into()))?;
        it.try_fold(first, |acc, b| acc.tensor(&b))
    }

    /// Tableau register; fails for protocols that need `a4`.
    pub fn initial_tableau(&self, data: Option<&StabilizerTableau>) -> Result<StabilizerTableau> {
        let mut blocks = Vec::new();
        match data {
            Some(d) if d.n_modes() == self.data_modes => blocks.push(d.clone()),
            None if self.data_modes == 0 => {}
            _ => return Err(Error::InvalidParameter(format!("{} expects {} data modes", self.name, self.data_modes))),
        }
        for a in &self.ancillas {
            blocks.push(match a {
                Ancilla::Vacuum(n) => StabilizerTableau::new_vacuum(*n)?,
                Ancilla::A8 => a8_tableau(),
                Ancilla::A4 => return Err(Error::InvalidParameter("a4 is not a stabilizer state".into())),
            });
        }
        let mut it = blocks.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidParameter("empty register".into()))?;
        it.try_fold(first, |acc, b| acc.tensor(&b))
    }
}
