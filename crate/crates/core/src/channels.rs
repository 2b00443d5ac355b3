//! Pauli noise channels and the fixed gate set of the teleportation circuit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, tensor_all, Gate, QubitOperator};
use crate::scalar::Scalar;

/// Named constant gates. Every entry is `0`, `+-1` or `+-i`; the Hadamard
/// carries its `1/sqrt(2)` as [`Gate::inv_sqrt2_power`].
pub mod gates {
    use super::*;

    fn op<S: Scalar, const D: usize>(rows: [[S; D]; D]) -> QubitOperator<S> {
        QubitOperator::from_rows(rows).expect("constant gate has a qubit shape")
    }

    pub fn identity<S: Scalar>() -> QubitOperator<S> {
        op([[S::one(), S::zero()], [S::zero(), S::one()]])
    }

    pub fn pauli_x<S: Scalar>() -> QubitOperator<S> {
        op([[S::zero(), S::one()], [S::one(), S::zero()]])
    }

    pub fn pauli_y<S: Scalar>() -> QubitOperator<S> {
        op([[S::zero(), -S::i()], [S::i(), S::zero()]])
    }

    pub fn pauli_z<S: Scalar>() -> QubitOperator<S> {
        op([[S::one(), S::zero()], [S::zero(), -S::one()]])
    }

    pub fn hadamard<S: Scalar>() -> Gate<S> {
        Gate::new(op([[S::one(), S::one()], [S::one(), -S::one()]]), 1)
    }

    /// Control on the first (left) qubit.
    pub fn cnot<S: Scalar>() -> Gate<S> {
        let (o, z) = (S::one, S::zero);
        Gate::from(op([
            [o(), z(), z(), z()],
            [z(), o(), z(), z()],
            [z(), z(), z(), o()],
            [z(), z(), o(), z()],
        ]))
    }

    /// `gate` on `first..first+k` (1-based) of an `n`-qubit register, identity elsewhere.
    pub fn embed<S: Scalar>(gate: &Gate<S>, first: usize, num_qubits: usize) -> Result<Gate<S>> {
        let k = gate.num_qubits();
        if first == 0 || first + k - 1 > num_qubits {
            return Err(Error::QubitOutOfRange {
                index: first + k - 1,
                num_qubits,
            });
        }
        let mut factors = Vec::new();
        for _ in 1..first {
            factors.push(identity());
        }
        factors.push(gate.matrix.clone());
        for _ in (first + k)..=num_qubits {
            factors.push(identity());
        }
        Ok(Gate::new(tensor_all(&factors)?, gate.inv_sqrt2_power))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NoiseKind {
    Depolarizing,
    BitFlip,
    PhaseFlip,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [
        NoiseKind::Depolarizing,
        NoiseKind::BitFlip,
        NoiseKind::PhaseFlip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::BitFlip => "bitflip",
            NoiseKind::PhaseFlip => "phaseflip",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "depolarizing" => Ok(NoiseKind::Depolarizing),
            "bitflip" | "bit-flip" => Ok(NoiseKind::BitFlip),
            "phaseflip" | "phase-flip" => Ok(NoiseKind::PhaseFlip),
            other => Err(format!("unknown noise kind `{other}`")),
        }
    }
}

/// A Pauli channel and its probability.
///
/// Under the exact backend `p` is usually the indeterminate itself, which
/// has no numeric range to check.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec<S> {
    pub kind: NoiseKind,
    pub p: S,
}

impl<S: Scalar> ChannelSpec<S> {
    pub fn new(kind: NoiseKind, p: S) -> Result<Self> {
        let spec = Self { kind, p };
        spec.validate()?;
        Ok(spec)
    }

    /// Concrete probabilities must be real and in `[0, 1]`; symbolic ones pass.
    pub fn validate(&self) -> Result<()> {
        match self.p.as_real() {
            Some(p) if !(0.0..=1.0).contains(&p) => Err(Error::ProbabilityOutOfRange(p)),
            Some(_) => Ok(()),
            None if self.p == self.p.conj() => Ok(()),
            None => Err(Error::ProbabilityNotReal),
        }
    }
}

/// Weighted single-qubit Kraus operators `(w, K)` with `E(rho) = sum w K rho K^dagger`.
///
/// Depolarizing uses `(1 - 3p/4, I), (p/4, X), (p/4, Y), (p/4, Z)`, which is
/// the same map as `(1 - p) rho + p I/2`.
pub fn kraus_operators<S: Scalar>(spec: &ChannelSpec<S>) -> Result<Vec<(S, QubitOperator<S>)>> {
    spec.validate()?;
    let p = spec.p.clone();
    let keep = S::one() - p.clone();
    Ok(match spec.kind {
        NoiseKind::BitFlip => vec![(keep, gates::identity()), (p, gates::pauli_x())],
        NoiseKind::PhaseFlip => vec![(keep, gates::identity()), (p, gates::pauli_z())],
        NoiseKind::Depolarizing => {
            let quarter = p.mul_ref(&S::from_ratio(1, 4));
            let stay = S::one() - p.mul_ref(&S::from_ratio(3, 4));
            vec![
                (stay, gates::identity()),
                (quarter.clone(), gates::pauli_x()),
                (quarter.clone(), gates::pauli_y()),
                (quarter, gates::pauli_z()),
            ]
        }
    })
}

/// The channel on one qubit (1-based) of `rho`, identity on the others.
pub fn apply_to_qubit<S: Scalar>(
    spec: &ChannelSpec<S>,
    rho: &QubitOperator<S>,
    qubit: usize,
) -> Result<QubitOperator<S>> {
    let kraus = kraus_operators(spec)?;
    if qubit == 0 || qubit > rho.num_qubits() {
        return Err(Error::QubitOutOfRange {
            index: qubit,
            num_qubits: rho.num_qubits(),
        });
    }
    if spec.p.is_zero() {
        return Ok(rho.clone());
    }
    let mut acc: Option<QubitOperator<S>> = None;
    for (w, k) in &kraus {
        if w.is_zero() {
            continue;
        }
        let term = rho.sandwich_local(k, qubit)?.scale(w);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.map_or_else(|| QubitOperator::zeros(rho.num_qubits()), Ok)
}

/// Independent noise on every qubit.
pub fn apply_layer<S: Scalar>(
    spec: &ChannelSpec<S>,
    rho: &QubitOperator<S>,
) -> Result<QubitOperator<S>> {
    (1..=rho.num_qubits()).try_fold(rho.clone(), |acc, q| apply_to_qubit(spec, &acc, q))
}

/// Three-qubit depolarizing noise written out by how many qubits were
/// replaced with `I/2`:
///
/// `(1-p)^3 rho + p(1-p)^2/2 [rho_12 (x) I + ...] + p^2(1-p)/4 [rho_1 (x) I (x) I + ...] + p^3/8 I`
///
/// where `rho_12` is the two-qubit marginal left after tracing out the
/// depolarized qubit. Kept as an independent check on [`apply_layer`].
pub fn depolarizing_subset_expansion<S: Scalar>(
    rho: &QubitOperator<S>,
    p: &S,
) -> Result<QubitOperator<S>> {
    if rho.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: rho.num_qubits(),
        });
    }
    let id: QubitOperator<S> = gates::identity();
    let keep = S::one() - p.clone();
    let keep2 = keep.mul_ref(&keep);
    let p2 = p.mul_ref(p);

    let mut out = rho.scale(&keep2.mul_ref(&keep));

    let w1 = p.mul_ref(&keep2).mul_ref(&S::from_ratio(1, 2));
    let m12 = partial_trace(rho, &[1, 2])?;
    let m13 = partial_trace(rho, &[1, 3])?;
    let m23 = partial_trace(rho, &[2, 3])?;
    let one_out = [
        tensor_all(&[m12, id.clone()])?,
        reinsert_middle(&m13)?,
        tensor_all(&[id.clone(), m23])?,
    ];
    for t in &one_out {
        out = out.add(&t.scale(&w1))?;
    }

    let w2 = p2.mul_ref(&keep).mul_ref(&S::from_ratio(1, 4));
    let r1 = partial_trace(rho, &[1])?;
    let r2 = partial_trace(rho, &[2])?;
    let r3 = partial_trace(rho, &[3])?;
    let two_out = [
        tensor_all(&[r1, id.clone(), id.clone()])?,
        tensor_all(&[id.clone(), r2, id.clone()])?,
        tensor_all(&[id.clone(), id.clone(), r3])?,
    ];
    for t in &two_out {
        out = out.add(&t.scale(&w2))?;
    }

    let w3 = p2.mul_ref(p).mul_ref(&S::from_ratio(1, 8));
    out.add(&QubitOperator::identity(3)?.scale(&w3))
}

/// `sigma_13` on qubits 1,3 to `sigma_13 (x) I_2` with the identity on qubit 2.
fn reinsert_middle<S: Scalar>(sigma: &QubitOperator<S>) -> Result<QubitOperator<S>> {
    let mut out = QubitOperator::zeros(3)?;
    for r in 0..8usize {
        for c in 0..8usize {
            if (r >> 1) & 1 != (c >> 1) & 1 {
                continue;
            }
            let sr = ((r >> 2) << 1) | (r & 1);
            let sc = ((c >> 2) << 1) | (c & 1);
            *out.get_mut(r, c) = sigma.get(sr, sc).clone();
        }
    }
    Ok(out)
}
