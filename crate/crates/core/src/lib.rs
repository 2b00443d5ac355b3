//! Density-matrix simulation of three-qubit teleportation under Pauli noise,
//! with an exact polynomial backend that re-derives the teleported state as
//! closed-form polynomials in the noise probability.

pub mod amplitude;
pub mod analytic;
pub mod channels;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod plot;
pub mod scalar;
pub mod sweep;
pub mod teleport;
pub mod verify;

pub use channels::{ChannelSpec, NoiseKind};
pub use error::{Error, Result};
pub use linalg::{DensityOperator, Gate, PureState, QubitOperator};
pub use num_complex::Complex64;
pub use scalar::Scalar;
pub use teleport::{InputState, StageTrace, TeleportConfig};
