use num_rational::BigRational;

use super::{GaussianRational, PolyP};
use crate::channels::{ChannelSpec, NoiseKind};
use crate::error::Result;
use crate::linalg::{tensor, DensityOperator, QubitOperator};
use crate::scalar::Scalar;
use crate::teleport::{
    run_from_initial, run_stages, CorrectionAssignment, InputState, TeleportConfig,
};

fn symbolic_config(
    input: InputState<PolyP>,
    kind: NoiseKind,
    assignment: CorrectionAssignment,
) -> Result<TeleportConfig<PolyP>> {
    Ok(TeleportConfig {
        input,
        noise: ChannelSpec::new(kind, PolyP::p())?,
        noise_enabled: true,
        assignment,
    })
}

fn lift_input(input: &InputState<GaussianRational>) -> Result<InputState<PolyP>> {
    InputState::new(
        PolyP::constant(input.alpha().clone()),
        PolyP::constant(input.beta().clone()),
    )
}

/// The teleported state with every entry an exact polynomial in `p`.
pub fn run_pipeline_symbolic(
    input: &InputState<GaussianRational>,
    kind: NoiseKind,
) -> Result<DensityOperator<PolyP>> {
    run_pipeline_symbolic_with(input, kind, CorrectionAssignment::STANDARD)
}

pub fn run_pipeline_symbolic_with(
    input: &InputState<GaussianRational>,
    kind: NoiseKind,
    assignment: CorrectionAssignment,
) -> Result<DensityOperator<PolyP>> {
    let config = symbolic_config(lift_input(input)?, kind, assignment)?;
    Ok(run_stages(&config)?.output().clone())
}

/// The end-to-end protocol as a linear map on single-qubit operators.
///
/// Operators are flattened row-major, so index `2i + j` is the entry
/// `|i><j|`. `entry(out, input)` is the coefficient with which input unit
/// `input` feeds output entry `out`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMap {
    entries: Vec<PolyP>,
}

impl TransferMap {
    pub fn entry(&self, out: usize, input: usize) -> &PolyP {
        &self.entries[out * 4 + input]
    }

    /// `entry` addressed by matrix-unit coordinates: `|ri><rj|` in, `|oi><oj|` out.
    pub fn unit(&self, (oi, oj): (usize, usize), (ri, rj): (usize, usize)) -> &PolyP {
        self.entry(2 * oi + oj, 2 * ri + rj)
    }

    pub fn apply(&self, rho: &QubitOperator<PolyP>) -> Result<QubitOperator<PolyP>> {
        let input = rho.entries();
        let out = (0..4)
            .map(|o| {
                (0..4).fold(PolyP::zero(), |acc, i| {
                    &acc + &self.entry(o, i).mul_ref(&input[i])
                })
            })
            .collect();
        QubitOperator::from_entries(out)
    }

    pub fn evaluate_at(&self, p: &BigRational) -> Vec<GaussianRational> {
        self.entries.iter().map(|e| e.evaluate_at(p)).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(PolyP::degree).max()
    }
}

pub fn extract_transfer_map(kind: NoiseKind) -> Result<TransferMap> {
    extract_transfer_map_with(kind, CorrectionAssignment::STANDARD)
}

/// Probes the circuit with `|i><j| (x) |00><00|` for the four matrix units.
pub fn extract_transfer_map_with(
    kind: NoiseKind,
    assignment: CorrectionAssignment,
) -> Result<TransferMap> {
    let placeholder = InputState::new(PolyP::one(), PolyP::zero())?;
    let config = symbolic_config(placeholder, kind, assignment)?;
    let ancilla = QubitOperator::basis_projector(&[0, 0])?;
    let mut columns = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let rho1 = tensor(&QubitOperator::matrix_unit(1, i, j)?, &ancilla)?;
            columns.push(run_from_initial(rho1, &config)?.output().clone());
        }
    }
    let entries = (0..4)
        .flat_map(|o| columns.iter().map(move |col| col.entries()[o].clone()))
        .collect();
    Ok(TransferMap { entries })
}
