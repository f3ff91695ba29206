//! Braid circuits: gates, measurements and classically controlled gates,
//! executable on any [`Engine`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::majorana::observable_label;
use crate::tableau::{Outcome, StabilizerTableau};

/// XOR of earlier measurement outcomes (1-based `t` indices) and a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub outcomes: Vec<usize>,
    pub constant: bool,
}

impl Condition {
    pub fn new(outcomes: Vec<usize>, constant: bool) -> Self {
        Self { outcomes, constant }
    }

    pub fn evaluate(&self, record: &[bool]) -> Result<bool> {
        let mut v = self.constant;
        for &i in &self.outcomes {
            let bit = i
                .checked_sub(1)
                .and_then(|j| record.get(j))
                .ok_or(Error::UnknownOutcome { index: i, available: record.len() })?;
            v ^= bit;
        }
        Ok(v)
    }

    fn shifted(&self, offset: usize) -> Self {
        Self { outcomes: self.outcomes.iter().map(|i| i + offset).collect(), constant: self.constant }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.outcomes.iter().map(|i| format!("t{i}")).collect();
        if self.constant || terms.is_empty() {
            terms.push(if self.constant { "1".into() } else { "0".into() });
        }
        write!(f, "{}", terms.join("^"))
    }
}

impl FromStr for Condition {
    type Err = Error;

    /// Parses expressions like `t1^t2^1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Condition::new(Vec::new(), false);
        for term in s.split('^').map(str::trim) {
            match term {
                "0" => {}
                "1" => c.constant ^= true,
                t if t.starts_with('t') => {
                    let i: usize = t[1..].parse().map_err(|_| Error::Parse(format!("bad term {t:?} in {s:?}")))?;
                    if i == 0 {
                        return Err(Error::Parse("outcome indices start at t1".into()));
                    }
                    c.outcomes.push(i);
                }
                t => return Err(Error::Parse(format!("bad term {t:?} in {s:?}"))),
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instruction {
    /// `exp(-(pi/4) c_p c_q)`; `p` and `q` need not be adjacent or ordered.
    Braid(usize, usize),
    BraidInverse(usize, usize),
    /// Measure `-i c_p c_q`.
    MeasurePair(usize, usize),
    /// Measure `c_p c_q c_r c_s` (not available to braiding alone).
    MeasureQuartet([usize; 4]),
    /// `exp(i s (pi/4) c_p c_q c_r c_s)` (not available to braiding alone).
    QuarticExponent([usize; 4], i8),
    ClassicallyControlled(Condition, Box<Instruction>),
}

impl Instruction {
    pub fn is_measurement(&self) -> bool {
        matches!(self, Instruction::MeasurePair(..) | Instruction::MeasureQuartet(..))
    }

    /// Whether the instruction is within the topological gate set.
    pub fn is_topological(&self) -> bool {
        match self {
            Instruction::Braid(..) | Instruction::BraidInverse(..) | Instruction::MeasurePair(..) => true,
            Instruction::MeasureQuartet(..) | Instruction::QuarticExponent(..) => false,
            Instruction::ClassicallyControlled(_, i) => i.is_topological(),
        }
    }

    fn modes(&self) -> Vec<usize> {
        match self {
            Instruction::Braid(p, q) | Instruction::BraidInverse(p, q) | Instruction::MeasurePair(p, q) => vec![*p, *q],
            Instruction::MeasureQuartet(m) | Instruction::QuarticExponent(m, _) => m.to_vec(),
            Instruction::ClassicallyControlled(_, i) => i.modes(),
        }
    }

    fn remapped(&self, f: &dyn Fn(usize) -> usize) -> Instruction {
        match self {
            Instruction::Braid(p, q) => Instruction::Braid(f(*p), f(*q)),
            Instruction::BraidInverse(p, q) => Instruction::BraidInverse(f(*p), f(*q)),
            Instruction::MeasurePair(p, q) => Instruction::MeasurePair(f(*p), f(*q)),
            Instruction::MeasureQuartet(m) => Instruction::MeasureQuartet(m.map(f)),
            Instruction::QuarticExponent(m, s) => Instruction::QuarticExponent(m.map(f), *s),
            Instruction::ClassicallyControlled(c, i) => Instruction::ClassicallyControlled(c.clone(), Box::new(i.remapped(f))),
        }
    }

    fn shifted(&self, offset: usize) -> Instruction {
        match self {
            Instruction::ClassicallyControlled(c, i) => Instruction::ClassicallyControlled(c.shifted(offset), i.clone()),
            other => other.clone(),
        }
    }
}

/// A state that braid circuits can act on.
pub trait Engine {
    fn n_modes(&self) -> usize;
    fn braid(&mut self, p: usize, q: usize) -> Result<()>;
    fn quartic_exponent(&mut self, modes: [usize; 4], s: i8) -> Result<()>;
    /// Measures the Hermitian monomial on `modes`; returns `(bit, probability)`.
    fn measure_modes(&mut self, modes: &[usize], how: Outcome<'_>) -> Result<(bool, f64)>;
}

impl Engine for StabilizerTableau {
    fn n_modes(&self) -> usize {
        StabilizerTableau::n_modes(self)
    }
    fn braid(&mut self, p: usize, q: usize) -> Result<()> {
        self.apply_braid(p, q)
    }
    fn quartic_exponent(&mut self, modes: [usize; 4], s: i8) -> Result<()> {
        self.apply_quartic_exponent(modes, s)
    }
    fn measure_modes(&mut self, modes: &[usize], how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = crate::majorana::hermitian_monomial(modes, StabilizerTableau::n_modes(self))?;
        self.measure(&obs, how)
    }
}

impl Engine for DenseState {
    fn n_modes(&self) -> usize {
        DenseState::n_modes(self)
    }
    fn braid(&mut self, p: usize, q: usize) -> Result<()> {
        self.apply_braid(p, q)
    }
    fn quartic_exponent(&mut self, modes: [usize; 4], s: i8) -> Result<()> {
        self.apply_quartic_exponent(modes, s)
    }
    fn measure_modes(&mut self, modes: &[usize], how: Outcome<'_>) -> Result<(bool, f64)> {
        let obs = crate::majorana::hermitian_monomial(modes, DenseState::n_modes(self))?;
        self.measure(&obs, how)
    }
}

/// One line of an outcome log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeRecord {
    /// 1-based measurement index (the `t` index used by conditions).
    pub index: usize,
    pub observable: String,
    pub bit: bool,
}

impl fmt::Display for OutcomeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.index, self.observable, u8::from(self.bit))
    }
}

/// Result of running a circuit along one branch.
#[derive(Clone, Debug)]
pub struct Run {
    pub records: Vec<OutcomeRecord>,
    /// Product of the probabilities of the chosen outcomes.
    pub probability: f64,
}

impl Run {
    pub fn bits(&self) -> Vec<bool> {
        self.records.iter().map(|r| r.bit).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BraidCircuit {
    n_modes: usize,
    instructions: Vec<Instruction>,
}

impl BraidCircuit {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes, instructions: Vec::new() }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn measurement_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_measurement()).count()
    }

    pub fn is_topological(&self) -> bool {
        self.instructions.iter().all(Instruction::is_topological)
    }

    /// Appends an instruction after checking its modes and, for controlled
    /// instructions, that referenced outcomes already exist.
    pub fn push(&mut self, ins: Instruction) -> Result<&mut Self> {
        let modes = ins.modes();
        crate::majorana::check_modes(&modes, self.n_modes)?;
        if let Instruction::ClassicallyControlled(c, inner) = &ins {
            if inner.is_measurement() || matches!(**inner, Instruction::ClassicallyControlled(..)) {
                return Err(Error::InvalidParameter("only gates can be classically controlled".into()));
            }
            let have = self.measurement_count();
            if let Some(&bad) = c.outcomes.iter().find(|&&i| i > have) {
                return Err(Error::UnknownOutcome { index: bad, available: have });
            }
        }
        self.instructions.push(ins);
        Ok(self)
    }

    pub fn braid(&mut self, p: usize, q: usize) -> Result<&mut Self> {
        self.push(Instruction::Braid(p, q))
    }

    pub fn braid_inverse(&mut self, p: usize, q: usize) -> Result<&mut Self> {
        self.push(Instruction::BraidInverse(p, q))
    }

    pub fn measure_pair(&mut self, p: usize, q: usize) -> Result<&mut Self> {
        self.push(Instruction::MeasurePair(p, q))
    }

    pub fn measure_quartet(&mut self, modes: [usize; 4]) -> Result<&mut Self> {
        self.push(Instruction::MeasureQuartet(modes))
    }

    pub fn controlled(&mut self, cond: Condition, ins: Instruction) -> Result<&mut Self> {
        self.push(Instruction::ClassicallyControlled(cond, Box::new(ins)))
    }

    /// Appends `other`, shifting its outcome references past this circuit's
    /// measurements.
    pub fn append(&mut self, other: &BraidCircuit) -> Result<&mut Self> {
        if other.n_modes > self.n_modes {
            return Err(Error::InvalidParameter("appended circuit has more modes".into()));
        }
        let offset = self.measurement_count();
        for ins in &other.instructions {
            self.push(ins.shifted(offset))?;
        }
        Ok(self)
    }

    /// Same circuit with mode `m` relabeled as `map[m - 1]` in a register of
    /// `n_modes` modes.
    pub fn remap(&self, map: &[usize], n_modes: usize) -> Result<BraidCircuit> {
        if map.len() != self.n_modes {
            return Err(Error::InvalidParameter("mode map has the wrong length".into()));
        }
        crate::majorana::check_modes(map, n_modes)?;
        let f = |m: usize| map[m - 1];
        let mut out = BraidCircuit::new(n_modes);
        out.instructions = self.instructions.iter().map(|i| i.remapped(&f)).collect();
        Ok(out)
    }

    /// Inverse of a measurement-free circuit.
    pub fn inverse(&self) -> Result<BraidCircuit> {
        let mut out = BraidCircuit::new(self.n_modes);
        for ins in self.instructions.iter().rev() {
            let inv = match ins {
                Instruction::Braid(p, q) => Instruction::BraidInverse(*p, *q),
                Instruction::BraidInverse(p, q) => Instruction::Braid(*p, *q),
                Instruction::QuarticExponent(m, s) => Instruction::QuarticExponent(*m, -s),
                _ => return Err(Error::InvalidParameter("only unitary circuits can be inverted".into())),
            };
            out.instructions.push(inv);
        }
        Ok(out)
    }

    /// Runs the circuit, taking outcomes from `choose(index)` or else from
    /// `rng`. Returns `None` when an outcome is needed and neither supplies it.
    fn run_with<E: Engine>(
        &self,
        engine: &mut E,
        mut choose: impl FnMut(usize) -> Option<bool>,
        mut rng: Option<&mut dyn rand::RngCore>,
    ) -> Result<Option<Run>> {
        if engine.n_modes() < self.n_modes {
            return Err(Error::InvalidParameter("engine has fewer modes than the circuit".into()));
        }
        let mut records: Vec<OutcomeRecord> = Vec::new();
        let mut bits: Vec<bool> = Vec::new();
        let mut probability = 1.0;
        for ins in &self.instructions {
            let (ins, active) = match ins {
                Instruction::ClassicallyControlled(c, inner) => (&**inner, c.evaluate(&bits)?),
                other => (other, true),
            };
            if !active {
                continue;
            }
            match ins {
                Instruction::Braid(p, q) => engine.braid(*p, *q)?,
                Instruction::BraidInverse(p, q) => engine.braid(*q, *p)?,
                Instruction::QuarticExponent(m, s) => engine.quartic_exponent(*m, *s)?,
                Instruction::MeasurePair(..) | Instruction::MeasureQuartet(..) => {
                    let modes = ins.modes();
                    let index = bits.len() + 1;
                    let how = match (choose(index), rng.as_deref_mut()) {
                        (Some(b), _) => Outcome::Forced(b),
                        (None, Some(r)) => Outcome::Sample(r),
                        (None, None) => return Ok(None),
                    };
                    let (bit, p) = engine.measure_modes(&modes, how)?;
                    if p == 0.0 {
                        return Err(Error::ImpossibleOutcome { index, outcome: u8::from(bit) });
                    }
                    probability *= p;
                    bits.push(bit);
                    records.push(OutcomeRecord { index, observable: observable_label(&modes), bit });
                }
                Instruction::ClassicallyControlled(..) => unreachable!("rejected by push"),
            }
        }
        Ok(Some(Run { records, probability }))
    }

    /// Runs with outcomes sampled from `rng`.
    pub fn run<E: Engine>(&self, engine: &mut E, rng: &mut dyn rand::RngCore) -> Result<Run> {
        Ok(self.run_with(engine, |_| None, Some(rng))?.expect("sampled run always completes"))
    }

    /// Runs with every measurement outcome prescribed.
    pub fn run_forced<E: Engine>(&self, engine: &mut E, outcomes: &[bool]) -> Result<Run> {
        if outcomes.len() != self.measurement_count() {
            return Err(Error::InvalidParameter("one forced outcome per measurement is required".into()));
        }
        Ok(self.run_with(engine, |i| Some(outcomes[i - 1]), None)?.expect("every outcome is forced"))
    }

    /// Every branch with nonzero probability, with its final state.
    pub fn enumerate_branches<E: Engine + Clone>(&self, engine: &E) -> Result<Vec<(Run, E)>> {
        if engine.n_modes() < self.n_modes {
            return Err(Error::InvalidParameter("engine has fewer modes than the circuit".into()));
        }
        struct Node<E> {
            engine: E,
            pc: usize,
            records: Vec<OutcomeRecord>,
            probability: f64,
        }
        let mut out = Vec::new();
        // depth-first; each node resumes from the state saved at its last measurement
        let mut stack = vec![Node { engine: engine.clone(), pc: 0, records: Vec::new(), probability: 1.0 }];
        'nodes: while let Some(mut node) = stack.pop() {
            while node.pc < self.instructions.len() {
                let bits: Vec<bool> = node.records.iter().map(|r| r.bit).collect();
                let (ins, active) = match &self.instructions[node.pc] {
                    Instruction::ClassicallyControlled(c, inner) => (&**inner, c.evaluate(&bits)?),
                    other => (other, true),
                };
                node.pc += 1;
                if !active {
                    continue;
                }
                match ins {
                    Instruction::Braid(p, q) => node.engine.braid(*p, *q)?,
                    Instruction::BraidInverse(p, q) => node.engine.braid(*q, *p)?,
                    Instruction::QuarticExponent(m, s) => node.engine.quartic_exponent(*m, *s)?,
                    Instruction::MeasurePair(..) | Instruction::MeasureQuartet(..) => {
                        let modes = ins.modes();
                        let index = bits.len() + 1;
                        for b in [true, false] {
                            let mut e = node.engine.clone();
                            let (_, p) = e.measure_modes(&modes, Outcome::Forced(b))?;
                            if p == 0.0 {
                                continue;
                            }
                            let mut records = node.records.clone();
                            records.push(OutcomeRecord { index, observable: observable_label(&modes), bit: b });
                            stack.push(Node { engine: e, pc: node.pc, records, probability: node.probability * p });
                        }
                        continue 'nodes;
                    }
                    Instruction::ClassicallyControlled(..) => unreachable!("rejected by push"),
                }
            }
            out.push((Run { records: node.records, probability: node.probability }, node.engine));
        }
        out.sort_by(|a, b| a.0.bits().cmp(&b.0.bits()));
        Ok(out)
    }

    /// Serializes to the JSON circuit format.
    pub fn to_json(&self) -> Result<String> {
        let file = CircuitFile {
            n_modes: self.n_modes,
            ops: self.instructions.iter().map(JsonInstruction::from).collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(s: &str) -> Result<BraidCircuit> {
        let file: CircuitFile = serde_json::from_str(s)?;
        let mut c = BraidCircuit::new(file.n_modes);
        crate::majorana::qubits_for(file.n_modes)?;
        for j in file.ops {
            c.push(j.into_instruction()?)?;
        }
        Ok(c)
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    n_modes: usize,
    ops: Vec<JsonInstruction>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum JsonInstruction {
    Braid { p: usize, q: usize },
    BraidInv { p: usize, q: usize },
    MeasurePair { p: usize, q: usize },
    MeasureQuartet { modes: [usize; 4] },
    QuarticExp { modes: [usize; 4], sign: i8 },
    Cbraid { cond: String, p: usize, q: usize },
    CbraidInv { cond: String, p: usize, q: usize },
    CquarticExp { cond: String, modes: [usize; 4], sign: i8 },
}

impl From<&Instruction> for JsonInstruction {
    fn from(i: &Instruction) -> Self {
        match i {
            Instruction::Braid(p, q) => JsonInstruction::Braid { p: *p, q: *q },
            Instruction::BraidInverse(p, q) => JsonInstruction::BraidInv { p: *p, q: *q },
            Instruction::MeasurePair(p, q) => JsonInstruction::MeasurePair { p: *p, q: *q },
            Instruction::MeasureQuartet(m) => JsonInstruction::MeasureQuartet { modes: *m },
            Instruction::QuarticExponent(m, s) => JsonInstruction::QuarticExp { modes: *m, sign: *s },
            Instruction::ClassicallyControlled(c, inner) => match &**inner {
                Instruction::Braid(p, q) => JsonInstruction::Cbraid { cond: c.to_string(), p: *p, q: *q },
                Instruction::BraidInverse(p, q) => JsonInstruction::CbraidInv { cond: c.to_string(), p: *p, q: *q },
                Instruction::QuarticExponent(m, s) => JsonInstruction::CquarticExp { cond: c.to_string(), modes: *m, sign: *s },
                other => unreachable!("push rejects controlled {other:?}"),
            },
        }
    }
}

impl JsonInstruction {
    fn into_instruction(self) -> Result<Instruction> {
        Ok(match self {
            JsonInstruction::Braid { p, q } => Instruction::Braid(p, q),
            JsonInstruction::BraidInv { p, q } => Instruction::BraidInverse(p, q),
            JsonInstruction::MeasurePair { p, q } => Instruction::MeasurePair(p, q),
            JsonInstruction::MeasureQuartet { modes } => Instruction::MeasureQuartet(modes),
            JsonInstruction::QuarticExp { modes, sign } => Instruction::QuarticExponent(modes, check_sign(sign)?),
            JsonInstruction::Cbraid { cond, p, q } => {
                Instruction::ClassicallyControlled(cond.parse()?, Box::new(Instruction::Braid(p, q)))
            }
            JsonInstruction::CbraidInv { cond, p, q } => {
                Instruction::ClassicallyControlled(cond.parse()?, Box::new(Instruction::BraidInverse(p, q)))
            }
            JsonInstruction::CquarticExp { cond, modes, sign } => {
                Instruction::ClassicallyControlled(cond.parse()?, Box::new(Instruction::QuarticExponent(modes, check_sign(sign)?)))
            }
        })
    }
}

fn check_sign(sign: i8) -> Result<i8> {
    if sign == 1 || sign == -1 {
        Ok(sign)
    } else {
        Err(Error::Parse(format!("quartic exponent sign must be +-1, got {sign}")))
    }
}
