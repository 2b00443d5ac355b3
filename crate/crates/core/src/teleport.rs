//! The noisy three-qubit teleportation circuit, stage by stage.
//!
//! Qubit 1 holds the input, qubits 2 and 3 become the shared pair. A noise
//! layer follows each of the four gate columns:
//!
//! | stage | operation                     |
//! |-------|-------------------------------|
//! | rho1  | input (x) \|00><00\|          |
//! | rho2  | H on qubit 2                  |
//! | rho3  | noise layer                   |
//! | rho4  | CNOT 2 -> 3                   |
//! | rho5  | noise layer                   |
//! | rho6  | CNOT 1 -> 2                   |
//! | rho7  | noise layer                   |
//! | rho8  | H on qubit 1                  |
//! | rho9  | noise layer                   |
//! | rho10 | measure 1,2; correct qubit 3  |

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::channels::{apply_layer, gates, ChannelSpec, NoiseKind};
use crate::error::{Error, Result};
use crate::linalg::{
    conjugate_by, fidelity_with, partial_trace, tensor, DensityOperator, PureState, QubitOperator,
};
use crate::scalar::Scalar;

/// Normalization tolerance for floating-point inputs.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// The single-qubit state `alpha|0> + beta|1>` to teleport.
#[derive(Clone, Debug, PartialEq)]
pub struct InputState<S> {
    alpha: S,
    beta: S,
}

impl<S: Scalar> InputState<S> {
    /// Rejects inputs whose `|alpha|^2 + |beta|^2` is not 1 (exactly for the
    /// exact backend, within [`NORM_TOLERANCE`] otherwise).
    pub fn new(alpha: S, beta: S) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !norm.approx_eq(&S::one(), NORM_TOLERANCE) {
            let shown = norm
                .as_real()
                .map_or_else(|| format!("{norm:?}"), |x| x.to_string());
            return Err(Error::NotNormalized(shown));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn beta(&self) -> &S {
        &self.beta
    }

    pub fn pure_state(&self) -> PureState<S> {
        PureState::qubit(self.alpha.clone(), self.beta.clone())
    }

    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

impl InputState<Complex64> {
    /// Rescales to unit norm. Fails only for the zero vector.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.to_string()));
        }
        Self::new(alpha / norm, beta / norm)
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    /// Multiplies both amplitudes by the same unit-modulus phase.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self {
            alpha: self.alpha * phase,
            beta: self.beta * phase,
        }
    }
}

/// Which measured qubit switches on each Pauli correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CorrectionAssignment {
    /// 1 or 2: the measured qubit whose outcome applies X.
    pub x_from: u8,
    /// 1 or 2: the measured qubit whose outcome applies Z.
    pub z_from: u8,
}

impl CorrectionAssignment {
    /// X from the second measurement, Z from the first.
    pub const STANDARD: Self = Self {
        x_from: 2,
        z_from: 1,
    };

    pub const ALL: [Self; 4] = [
        Self::STANDARD,
        Self {
            x_from: 1,
            z_from: 2,
        },
        Self {
            x_from: 1,
            z_from: 1,
        },
        Self {
            x_from: 2,
            z_from: 2,
        },
    ];

    pub fn label(self) -> String {
        format!("X<-m{},Z<-m{}", self.x_from, self.z_from)
    }
}

impl Default for CorrectionAssignment {
    fn default() -> Self {
        Self::STANDARD
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TeleportConfig<S> {
    pub input: InputState<S>,
    pub noise: ChannelSpec<S>,
    /// `false` runs the ideal circuit; every noise stage copies its predecessor.
    pub noise_enabled: bool,
    pub assignment: CorrectionAssignment,
}

impl<S: Scalar> TeleportConfig<S> {
    pub fn noisy(input: InputState<S>, noise: ChannelSpec<S>) -> Self {
        Self {
            input,
            noise,
            noise_enabled: true,
            assignment: CorrectionAssignment::STANDARD,
        }
    }
}

impl TeleportConfig<Complex64> {
    pub fn float(input: InputState<Complex64>, kind: NoiseKind, p: f64) -> Result<Self> {
        Ok(Self::noisy(
            input,
            ChannelSpec::new(kind, Complex64::new(p, 0.0))?,
        ))
    }
}

/// The ten intermediate states. `rho1..rho9` are three-qubit, `rho10` is the
/// teleported qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct StageTrace<S> {
    stages: Vec<DensityOperator<S>>,
}

impl<S: Scalar> StageTrace<S> {
    pub const LABELS: [&'static str; 10] = [
        "rho1", "rho2", "rho3", "rho4", "rho5", "rho6", "rho7", "rho8", "rho9", "rho10",
    ];

    /// Stage `k` in `1..=10`.
    pub fn stage(&self, k: usize) -> &DensityOperator<S> {
        &self.stages[k - 1]
    }

    pub fn output(&self) -> &DensityOperator<S> {
        self.stage(10)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &DensityOperator<S>)> {
        Self::LABELS.iter().copied().zip(&self.stages)
    }
}

impl StageTrace<Complex64> {
    /// Every stage's entries to 12 significant digits, with its trace and
    /// smallest eigenvalue.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (label, rho) in self.iter() {
            let dim = rho.dim();
            let _ = writeln!(out, "{label} ({dim}x{dim})");
            for row in 0..dim {
                let cells: Vec<String> = (0..dim)
                    .map(|col| {
                        let z = rho.get(row, col);
                        format!("{:+.11e}{:+.11e}i", z.re, z.im)
                    })
                    .collect();
                let _ = writeln!(out, "  {}", cells.join("  "));
            }
            let tr = rho.trace();
            let _ = writeln!(out, "  trace {:+.11e}{:+.11e}i", tr.re, tr.im);
            let _ = writeln!(out, "  min eigenvalue {:+.11e}", rho.min_eigenvalue());
        }
        out
    }
}

/// `|psi><psi| (x) |00><00|`.
pub fn build_initial<S: Scalar>(input: &InputState<S>) -> Result<DensityOperator<S>> {
    tensor(
        &input.pure_state().projector(),
        &QubitOperator::basis_projector(&[0, 0])?,
    )
}

pub fn run_stages<S: Scalar>(config: &TeleportConfig<S>) -> Result<StageTrace<S>> {
    run_from_initial(build_initial(&config.input)?, config)
}

/// Runs the circuit from an arbitrary three-qubit `rho1`, ignoring
/// `config.input`. The map from `rho1` to every later stage is linear, which
/// is what transfer-map extraction relies on.
pub fn run_from_initial<S: Scalar>(
    rho1: DensityOperator<S>,
    config: &TeleportConfig<S>,
) -> Result<StageTrace<S>> {
    if rho1.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: rho1.num_qubits(),
        });
    }
    config.noise.validate()?;
    let noise = |rho: &DensityOperator<S>| -> Result<DensityOperator<S>> {
        if config.noise_enabled {
            apply_layer(&config.noise, rho)
        } else {
            Ok(rho.clone())
        }
    };
    let h2 = gates::embed(&gates::hadamard(), 2, 3)?;
    let cnot23 = gates::embed(&gates::cnot(), 2, 3)?;
    let cnot12 = gates::embed(&gates::cnot(), 1, 3)?;
    let h1 = gates::embed(&gates::hadamard(), 1, 3)?;

    let mut stages = Vec::with_capacity(10);
    stages.push(rho1);
    for gate in [h2, cnot23, cnot12, h1] {
        let after_gate = conjugate_by(stages.last().expect("initial stage"), &gate)?;
        let after_noise = noise(&after_gate)?;
        stages.push(after_gate);
        stages.push(after_noise);
    }
    let out = measure_and_correct_with(&stages[8], config.assignment)?;
    stages.push(out);
    Ok(StageTrace { stages })
}

/// Outcome-averaged measurement of qubits 1 and 2 followed by noiseless
/// X then Z corrections on qubit 3, with the standard wiring.
pub fn measure_and_correct<S: Scalar>(rho9: &DensityOperator<S>) -> Result<DensityOperator<S>> {
    measure_and_correct_with(rho9, CorrectionAssignment::STANDARD)
}

pub fn measure_and_correct_with<S: Scalar>(
    rho9: &DensityOperator<S>,
    assignment: CorrectionAssignment,
) -> Result<DensityOperator<S>> {
    if rho9.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: rho9.num_qubits(),
        });
    }
    let mut out = QubitOperator::zeros(1)?;
    for m1 in 0..2u8 {
        for m2 in 0..2u8 {
            // Project qubits 1,2 onto |m1 m2> and keep qubit 3.
            let projector = tensor(
                &QubitOperator::basis_projector(&[m1, m2])?,
                &gates::identity(),
            )?;
            let branch = projector.matmul(rho9)?.matmul(&projector)?;
            let mut reduced = partial_trace(&branch, &[3])?;
            let outcome = |q: u8| if q == 1 { m1 } else { m2 };
            if outcome(assignment.x_from) == 1 {
                reduced = conjugate_by(&reduced, &gates::pauli_x().into())?;
            }
            if outcome(assignment.z_from) == 1 {
                reduced = conjugate_by(&reduced, &gates::pauli_z().into())?;
            }
            out = out.add(&reduced)?;
        }
    }
    Ok(out)
}

/// `<psi| rho10 |psi>` as a backend scalar.
pub fn output_fidelity<S: Scalar>(config: &TeleportConfig<S>) -> Result<S> {
    let trace = run_stages(config)?;
    fidelity_with(&config.input.pure_state(), trace.output())
}

pub fn teleport_fidelity(config: &TeleportConfig<Complex64>) -> Result<f64> {
    Ok(output_fidelity(config)?.re)
}
