//! Published closed forms for the teleported state, its fidelity and the
//! first-order fidelity slopes, evaluated directly rather than simulated.
//!
//! Notation used throughout: `s = |alpha|^2 |beta|^2` and
//! `r = (alpha beta*)^2 + (beta alpha*)^2`, both real for any input.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::channels::{ChannelSpec, NoiseKind};
use crate::error::{Error, Result};
use crate::exact::PolyP;
use crate::linalg::{fidelity_with, DensityOperator, QubitOperator};
use crate::scalar::Scalar;
use crate::teleport::InputState;

/// The polynomials `u1..u6` that parameterize the bit-flip and phase-flip
/// closed forms, stored with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialTable {
    pub u: [PolyP; 6],
}

impl PolynomialTable {
    /// The coefficients as published, lowest degree first.
    pub fn published() -> Self {
        let u1 = PolyP::from_ratios(&[
            (1, 4),
            (-5, 2),
            (73, 4),
            (-84, 1),
            (252, 1),
            (-504, 1),
            (672, 1),
            (-576, 1),
            (288, 1),
            (-64, 1),
        ]);
        let u2 = PolyP::from_ratios(&[
            (0, 1),
            (2, 1),
            (-71, 4),
            (84, 1),
            (-252, 1),
            (504, 1),
            (-672, 1),
            (576, 1),
            (-288, 1),
            (64, 1),
        ]);
        let u3 = PolyP::from_ratios(&[(0, 1), (1, 4), (-1, 4)]);
        let u4 = PolyP::from_ratios(&[
            (1, 4),
            (-11, 4),
            (83, 4),
            (-205, 2),
            (1337, 4),
            (-742, 1),
            (1120, 1),
            (-1108, 1),
            (640, 1),
            (-128, 1),
            (-64, 1),
            (32, 1),
        ]);
        let u5 = PolyP::from_ratios(&[
            (0, 1),
            (2, 1),
            (-79, 4),
            (405, 4),
            (-1335, 4),
            (742, 1),
            (-1120, 1),
            (1108, 1),
            (-640, 1),
            (128, 1),
            (64, 1),
            (-32, 1),
        ]);
        let u6 = PolyP::from_ratios(&[
            (1, 1),
            (-16, 1),
            (112, 1),
            (-448, 1),
            (1120, 1),
            (-1792, 1),
            (1792, 1),
            (-1024, 1),
            (256, 1),
        ]);
        Self {
            u: [u1, u2, u3, u4, u5, u6],
        }
    }

    /// `u_k` for `k` in `1..=6`.
    ///
    /// # Panics
    ///
    /// Panics when `k` is outside `1..=6`.
    pub fn u(&self, k: usize) -> &PolyP {
        &self.u[k - 1]
    }

    /// Replaces `u_k`, used to inject faults into verification runs.
    pub fn with_u(mut self, k: usize, poly: PolyP) -> Self {
        self.u[k - 1] = poly;
        self
    }

    /// `u1 + u2 + 2 u3`, which must be the constant 1/4 for the bit-flip
    /// state to have unit trace.
    pub fn trace_combination(&self) -> PolyP {
        let twice_u3 = self.u(3) + self.u(3);
        &(self.u(1) + self.u(2)) + &twice_u3
    }

    /// Replaces entries from text lines of the form `u6: 1, -16, 112/3`,
    /// coefficients lowest degree first. Blank lines and `#` comments are
    /// skipped.
    pub fn with_overrides(mut self, text: &str) -> Result<Self> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: String| Error::InvalidTable {
                line: n + 1,
                reason,
            };
            let (name, coeffs) = line
                .split_once(':')
                .ok_or_else(|| bad("expected `uK: c0, c1, ...`".into()))?;
            let k = name
                .trim()
                .strip_prefix('u')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|k| (1..=6).contains(k))
                .ok_or_else(|| bad(format!("unknown polynomial `{}`", name.trim())))?;
            let parsed = coeffs
                .split(',')
                .map(|c| {
                    parse_rational(c.trim())
                        .ok_or_else(|| bad(format!("bad coefficient `{}`", c.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            self.u[k - 1] = PolyP::from_rationals(&parsed);
        }
        Ok(self)
    }

    fn eval(&self, k: usize, p: f64) -> f64 {
        self.u(k).evaluate_f64(p).re
    }
}

impl Default for PolynomialTable {
    fn default() -> Self {
        Self::published()
    }
}

/// `n` or `n/d` with integer `n` and positive `d`.
fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    (d > BigInt::from(0)).then(|| BigRational::new(n, d))
}

fn check_probability(kind: NoiseKind, p: f64) -> Result<()> {
    ChannelSpec::new(kind, Complex64::new(p, 0.0)).map(|_| ())
}

/// The closed-form teleported state for `kind` at noise level `p`.
pub fn rho10_closed(
    kind: NoiseKind,
    input: &InputState<Complex64>,
    p: f64,
) -> Result<DensityOperator<Complex64>> {
    rho10_closed_with(&PolynomialTable::published(), kind, input, p)
}

pub fn rho10_closed_with(
    table: &PolynomialTable,
    kind: NoiseKind,
    input: &InputState<Complex64>,
    p: f64,
) -> Result<DensityOperator<Complex64>> {
    check_probability(kind, p)?;
    let (alpha, beta) = (*input.alpha(), *input.beta());
    let (a2, b2) = (alpha.norm_sqr(), beta.norm_sqr());
    let c = alpha * beta.conj();
    let real = |x: f64| Complex64::new(x, 0.0);
    let (r00, r11, r01) = match kind {
        NoiseKind::Depolarizing => {
            let q9 = (1.0 - p).powi(9);
            let q12 = (1.0 - p).powi(12);
            let mix = (1.0 - q9) / 2.0;
            (real(q9 * a2 + mix), real(q9 * b2 + mix), c * q12)
        }
        NoiseKind::BitFlip => {
            let u: Vec<f64> = (1..=5).map(|k| table.eval(k, p)).collect();
            (
                real(4.0 * (u[0] * a2 + u[1] * b2 + u[2])),
                real(4.0 * (u[1] * a2 + u[0] * b2 + u[2])),
                (c * u[3] + c.conj() * u[4]) * 4.0,
            )
        }
        NoiseKind::PhaseFlip => (real(a2), real(b2), c * table.eval(6, p)),
    };
    QubitOperator::from_rows([[r00, r01], [r01.conj(), r11]])
}

/// `<psi| rho10_closed |psi>`.
pub fn fidelity_closed(kind: NoiseKind, input: &InputState<Complex64>, p: f64) -> Result<f64> {
    fidelity_closed_with(&PolynomialTable::published(), kind, input, p)
}

pub fn fidelity_closed_with(
    table: &PolynomialTable,
    kind: NoiseKind,
    input: &InputState<Complex64>,
    p: f64,
) -> Result<f64> {
    let rho = rho10_closed_with(table, kind, input, p)?;
    Ok(fidelity_with(&input.pure_state(), &rho)?.re)
}

/// First-order fidelity `1 - p * linear_slope`.
pub fn fidelity_linear(kind: NoiseKind, input: &InputState<Complex64>, p: f64) -> f64 {
    1.0 - p * linear_slope(kind, input)
}

/// The published coefficient of `-p` in the small-`p` fidelity.
pub fn linear_slope(kind: NoiseKind, input: &InputState<Complex64>) -> f64 {
    let slope = linear_slope_exact(kind, input);
    debug_assert!(
        slope.im.abs() <= 1e-12,
        "slope has imaginary part {}",
        slope.im
    );
    slope.re
}

/// [`linear_slope`] over any scalar, so exact inputs give exact slopes.
pub fn linear_slope_exact<S: Scalar>(kind: NoiseKind, input: &InputState<S>) -> S {
    let (s, r) = state_invariants(input);
    let k = |n: i64, d: u64| S::from_ratio(n, d);
    match kind {
        NoiseKind::Depolarizing => k(6, 1) * s + k(9, 2),
        NoiseKind::BitFlip => k(9, 1) - k(14, 1) * s - k(8, 1) * r,
        NoiseKind::PhaseFlip => k(32, 1) * s,
    }
}

/// `(s, r)` for the input.
pub fn state_invariants<S: Scalar>(input: &InputState<S>) -> (S, S) {
    let (alpha, beta) = (input.alpha(), input.beta());
    let s = alpha.norm_sqr().mul_ref(&beta.norm_sqr());
    let c = alpha.mul_ref(&beta.conj());
    let cc = c.conj();
    let r = c.mul_ref(&c).add_ref(&cc.mul_ref(&cc));
    (s, r)
}
