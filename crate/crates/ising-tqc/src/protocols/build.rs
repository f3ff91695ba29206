use crate::braids::{braids_for_signed_permutation, SignedPermutation};
use crate::circuit::{BraidCircuit, Condition, Instruction};
use crate::error::{Error, Result};

use super::logical::{logical_clifford, LogicalAction, LogicalQubit};
use super::{Ancilla, Protocol};

/// How a non-topological step is paid for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Use quartet measurements and quartic exponents as primitives.
    #[default]
    Direct,
    /// Reduce everything to braids, pair measurements and `a8` ancillas.
    ViaA8,
}

/// How a quartic exponent is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarticRoute {
    Direct,
    /// Two measurements on the data plus a vacuum pair; the quartet
    /// measurement uses `a8` if given.
    Measured { pair: [usize; 2], a8: Option<[usize; 8]> },
}

fn signed(targets: &[usize], negate: &[usize]) -> SignedPermutation {
    SignedPermutation(
        targets
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, if negate.contains(&(i + 1)) { -1 } else { 1 }))
            .collect(),
    )
}

fn local_braids(perm: &SignedPermutation) -> BraidCircuit {
    braids_for_signed_permutation(perm).expect("hardcoded permutations have determinant +1")
}

fn double_braid(c: &mut BraidCircuit, cond: &Condition, p: usize, q: usize) -> Result<()> {
    c.controlled(cond.clone(), Instruction::Braid(p, q))?;
    c.controlled(cond.clone(), Instruction::Braid(p, q))?;
    Ok(())
}

fn distinct(modes: &[usize]) -> Result<()> {
    for (i, m) in modes.iter().enumerate() {
        if modes[i + 1..].contains(m) {
            return Err(Error::RepeatedMode(modes.to_vec()));
        }
    }
    Ok(())
}

/// Twelve-mode teleportation circuit: data quartet on 1..4, `a8` on 5..12.
/// Interleaves the data with the first half of the ancilla, measures the
/// four mixed pairs, undoes the byproduct on 9..12 and swaps the result back
/// to 1..4, leaving 5..12 in the vacuum.
fn a8_measurement_local() -> BraidCircuit {
    let mut reshuffle: Vec<usize> = vec![1, 3, 5, 7, 2, 4, 6, 8];
    reshuffle.extend(9..=12);
    let mut c = BraidCircuit::new(12);
    c.append(&local_braids(&signed(&reshuffle, &[2, 8]))).expect("same register");
    for j in 0..4 {
        c.measure_pair(2 * j + 1, 2 * j + 2).expect("local modes");
    }
    for j in 0..4 {
        double_braid(&mut c, &Condition::new(vec![j + 1], false), 2 * j + 2, 9 + j).expect("local modes");
    }
    let swap: Vec<usize> = [9, 10, 11, 12, 5, 6, 7, 8, 1, 2, 3, 4].to_vec();
    c.append(&local_braids(&signed(&swap, &[]))).expect("same register");
    c
}

/// Appends a measurement of `c_a c_b c_c c_d` and returns the condition that
/// equals its outcome bit (`1` for eigenvalue `-1`). With `a8` the quartet is
/// measured by teleportation through the ancilla, which ends in the vacuum.
pub fn append_quartet_measurement(c: &mut BraidCircuit, quartet: [usize; 4], a8: Option<[usize; 8]>) -> Result<Condition> {
    match a8 {
        None => {
            c.measure_quartet(quartet)?;
            Ok(Condition::new(vec![c.measurement_count()], false))
        }
        Some(anc) => {
            let mut map = quartet.to_vec();
            map.extend(anc);
            distinct(&map)?;
            let first = c.measurement_count() + 1;
            c.append(&a8_measurement_local().remap(&map, c.n_modes())?)?;
            // even parity of the four pair outcomes reports eigenvalue -1
            Ok(Condition::new((first..first + 4).collect(), true))
        }
    }
}

/// `exp(i sign (pi/4) c_a c_b c_c c_d)` from a quartet measurement and a
/// pair measurement on the data plus a vacuum `pair`, which is restored.
/// All four outcome combinations are equally likely.
pub fn append_quartic_by_measurement(
    c: &mut BraidCircuit,
    modes: [usize; 4],
    sign: i8,
    pair: [usize; 2],
    a8: Option<[usize; 8]>,
) -> Result<()> {
    let m = if sign < 0 { [modes[1], modes[0], modes[2], modes[3]] } else { modes };
    let local = [m[0], m[1], m[2], m[3], pair[0], pair[1]];
    distinct(&local)?;
    let y = append_quartet_measurement(c, [m[0], m[1], m[3], pair[0]], a8)?;
    c.measure_pair(m[2], pair[0])?;
    let z = Condition::new(vec![c.measurement_count()], false);
    // moves the data left on the ancilla back into place
    let restore = local_braids(&signed(&[1, 2, 5, 4, 6, 3], &[]));
    c.append(&restore.remap(&local, c.n_modes())?)?;
    double_braid(c, &y, m[0], m[1])?;
    double_braid(c, &y, m[2], m[3])?;
    double_braid(c, &z, m[0], m[1])?;
    double_braid(c, &z, m[3], pair[1])?;
    Ok(())
}

fn append_quartic(c: &mut BraidCircuit, modes: [usize; 4], sign: i8, route: QuarticRoute) -> Result<()> {
    match route {
        QuarticRoute::Direct => {
            c.push(Instruction::QuarticExponent(modes, sign))?;
            Ok(())
        }
        QuarticRoute::Measured { pair, a8 } => append_quartic_by_measurement(c, modes, sign, pair, a8),
    }
}

/// Controlled-Z between two logical qubits, up to a global phase:
/// `exp(-i (pi/4) c3 c4 c5 c6) B_34 B_56` in the labels of adjacent quartets.
pub fn append_controlled_z(c: &mut BraidCircuit, q1: LogicalQubit, q2: LogicalQubit, route: QuarticRoute) -> Result<()> {
    if !q1.disjoint(&q2) {
        return Err(Error::InvalidParameter("controlled-Z needs disjoint quartets".into()));
    }
    let (a, b) = (q1.modes(), q2.modes());
    c.braid(a[2], a[3])?;
    c.braid(b[0], b[1])?;
    append_quartic(c, [a[2], a[3], b[0], b[1]], -1, route)
}

fn check_data(data_modes: usize, need: usize) -> Result<()> {
    if data_modes < need || data_modes % 2 != 0 {
        return Err(Error::InvalidParameter(format!("need an even number of at least {need} data modes, got {data_modes}")));
    }
    Ok(())
}

/// `a8` on eight vacuum modes using one quartic exponent.
pub fn a8_from_quartic_exponent() -> Protocol {
    let mut c = local_braids(&signed(&[1, 7, 2, 8, 3, 5, 4, 6], &[3, 5]));
    c.push(Instruction::QuarticExponent([1, 2, 3, 6], 1)).expect("eight modes");
    Protocol { name: "o3-o1".into(), data_modes: 0, ancillas: vec![Ancilla::Vacuum(8)], circuit: c, reported: None }
}

/// `a8` on eight vacuum modes using one measurement of `c5 c6 c7 c8`.
pub fn a8_from_quartet_measurement() -> Protocol {
    let mut c = local_braids(&signed(&[1, 5, 2, 6, 3, 7, 4, 8], &[3, 7]));
    c.measure_quartet([5, 6, 7, 8]).expect("eight modes");
    double_braid(&mut c, &Condition::new(vec![1], true), 1, 5).expect("eight modes");
    Protocol { name: "o2-o1".into(), data_modes: 0, ancillas: vec![Ancilla::Vacuum(8)], circuit: c, reported: None }
}

/// Measurement of `c1 c2 c3 c4` on the data consuming one `a8`. Modes past
/// the quartet are spectators.
pub fn quartet_measurement_with_a8(data_modes: usize) -> Result<Protocol> {
    check_data(data_modes, 4)?;
    let n = data_modes + 8;
    let mut c = BraidCircuit::new(n);
    let anc: [usize; 8] = std::array::from_fn(|i| data_modes + 1 + i);
    let reported = append_quartet_measurement(&mut c, [1, 2, 3, 4], Some(anc))?;
    Ok(Protocol { name: "o1-o2".into(), data_modes, ancillas: vec![Ancilla::A8], circuit: c, reported: Some(reported) })
}

/// `exp(i (pi/4) c1 c2 c3 c4)` on the data from measurements and a vacuum
/// pair (plus one `a8` for the quartet measurement with [`Method::ViaA8`]).
pub fn quartic_exponent_from_measurements(data_modes: usize, method: Method) -> Result<Protocol> {
    check_data(data_modes, 4)?;
    let pair = [data_modes + 1, data_modes + 2];
    let (ancillas, a8) = match method {
        Method::Direct => (vec![Ancilla::Vacuum(2)], None),
        Method::ViaA8 => (vec![Ancilla::Vacuum(2), Ancilla::A8], Some(std::array::from_fn(|i| data_modes + 3 + i))),
    };
    let n = data_modes + ancillas.iter().map(Ancilla::n_modes).sum::<usize>();
    let mut c = BraidCircuit::new(n);
    append_quartic_by_measurement(&mut c, [1, 2, 3, 4], 1, pair, a8)?;
    Ok(Protocol { name: "o2-o3".into(), data_modes, ancillas, circuit: c, reported: None })
}

fn quartic_route(first: usize, method: Method, ancillas: &mut Vec<Ancilla>) -> QuarticRoute {
    match method {
        Method::Direct => QuarticRoute::Direct,
        Method::ViaA8 => {
            ancillas.push(Ancilla::Vacuum(2));
            ancillas.push(Ancilla::A8);
            QuarticRoute::Measured { pair: [first, first + 1], a8: Some(std::array::from_fn(|i| first + 2 + i)) }
        }
    }
}

/// Controlled-Z on the logical qubits at modes 1..4 and 5..8.
pub fn controlled_z(data_modes: usize, method: Method) -> Result<Protocol> {
    check_data(data_modes, 8)?;
    let mut ancillas = Vec::new();
    let route = quartic_route(data_modes + 1, method, &mut ancillas);
    let n = data_modes + ancillas.iter().map(Ancilla::n_modes).sum::<usize>();
    let mut c = BraidCircuit::new(n);
    append_controlled_z(&mut c, LogicalQubit::at(1), LogicalQubit::at(5), route)?;
    let name = match method {
        Method::Direct => "cz",
        Method::ViaA8 => "cz-a8",
    };
    Ok(Protocol { name: name.into(), data_modes, ancillas, circuit: c, reported: None })
}

/// The pi/8 gate on the logical qubit at modes 1..4 consuming one `a4`:
/// measure `Z (x) Z` against the ancilla, apply a controlled-X onto the
/// ancilla, read it out in the `Z` basis and fix the phase with `B_12`.
pub fn inject_t(data_modes: usize, method: Method) -> Result<Protocol> {
    check_data(data_modes, 4)?;
    let target = LogicalQubit::at(data_modes + 1);
    let mut ancillas = vec![Ancilla::A4];
    let mut next = data_modes + 5;
    let zz_a8 = match method {
        Method::Direct => None,
        Method::ViaA8 => {
            ancillas.push(Ancilla::A8);
            next += 8;
            Some(std::array::from_fn(|i| data_modes + 5 + i))
        }
    };
    let route = quartic_route(next, method, &mut ancillas);
    let n = data_modes + ancillas.iter().map(Ancilla::n_modes).sum::<usize>();
    let mut c = BraidCircuit::new(n);
    let t = target.modes();
    append_quartet_measurement(&mut c, [1, 2, t[0], t[1]], zz_a8)?;
    let h = logical_clifford(LogicalAction::HADAMARD, target, n)?;
    c.append(&h)?;
    append_controlled_z(&mut c, LogicalQubit::at(1), target, route)?;
    c.append(&h)?;
    c.measure_pair(t[0], t[1])?;
    c.controlled(Condition::new(vec![c.measurement_count()], false), Instruction::Braid(1, 2))?;
    let name = match method {
        Method::Direct => "inject-t",
        Method::ViaA8 => "inject-t-a8",
    };
    Ok(Protocol { name: name.into(), data_modes, ancillas, circuit: c, reported: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a8::a8_tableau;

    #[test]
    fn both_preparations_give_a8_on_the_tableau() {
        let p = a8_from_quartic_exponent();
        let t = p.initial_tableau(None).unwrap();
        let runs = p.circuit.enumerate_branches(&t).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].1, a8_tableau());

        let p = a8_from_quartet_measurement();
        let runs = p.circuit.enumerate_branches(&p.initial_tableau(None).unwrap()).unwrap();
        assert_eq!(runs.len(), 2);
        for (run, out) in runs {
            assert!((run.probability - 0.5).abs() < 1e-12);
            assert_eq!(out, a8_tableau());
        }
    }

    #[test]
    fn ledgers_count_ancillas() {
        assert_eq!(controlled_z(8, Method::ViaA8).unwrap().ledger().a8, 1);
        assert_eq!(controlled_z(8, Method::Direct).unwrap().ledger().a8, 0);
        let l = inject_t(4, Method::ViaA8).unwrap().ledger();
        assert_eq!((l.a4, l.a8, l.quartet_measurements, l.quartic_exponents), (1, 2, 0, 0));
        let l = inject_t(4, Method::Direct).unwrap().ledger();
        assert_eq!((l.a4, l.a8, l.quartet_measurements, l.quartic_exponents), (1, 0, 1, 1));
        assert!(quartic_exponent_from_measurements(4, Method::ViaA8).unwrap().circuit.is_topological());
    }
}
