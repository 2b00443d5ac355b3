//! Compares the transfer maps derived by the exact pipeline against the
//! published closed forms and collects the outcome into a report.
//!
//! Every match decision is exact polynomial equality. Floating point only
//! appears in the `deviations` section, which measures how far the
//! product-of-marginals shorthand for an n-qubit depolarizing layer drifts
//! from the real channel.

use std::fmt::{self, Write as _};

use num_complex::Complex64;

use crate::analytic::{linear_slope_exact, PolynomialTable};
use crate::channels::{apply_layer, gates, ChannelSpec, NoiseKind};
use crate::error::Result;
use crate::exact::{
    extract_transfer_map, extract_transfer_map_with, rational, GaussianRational, PolyP, TransferMap,
};
use crate::linalg::{
    fidelity_with, partial_trace, tensor, tensor_all, DensityOperator, PureState, QubitOperator,
};
use crate::scalar::Scalar;
use crate::teleport::{CorrectionAssignment, InputState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    NotIdentifiable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "Match",
            Status::Mismatch => "Mismatch",
            Status::NotIdentifiable => "NotIdentifiable",
        })
    }
}

/// `(degree, expected, derived)`.
pub type CoefficientDiff = (usize, GaussianRational, GaussianRational);

#[derive(Clone, Debug, PartialEq)]
pub struct Target {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub derived: String,
    pub coefficient_diffs: Vec<CoefficientDiff>,
}

impl Target {
    /// Exact comparison of two polynomials.
    pub fn compare(name: impl Into<String>, expected: &PolyP, derived: &PolyP) -> Self {
        let coefficient_diffs = expected.coefficient_diffs(derived);
        let status = if coefficient_diffs.is_empty() {
            Status::Match
        } else {
            Status::Mismatch
        };
        Self {
            name: name.into(),
            status,
            expected: expected.to_string(),
            derived: derived.to_string(),
            coefficient_diffs,
        }
    }

    fn not_identifiable(name: impl Into<String>, stated: &PolyP) -> Self {
        Self {
            name: name.into(),
            status: Status::NotIdentifiable,
            expected: stated.to_string(),
            derived: "-".into(),
            coefficient_diffs: Vec::new(),
        }
    }
}

/// Largest entrywise gap between the product-of-marginals layer and the
/// real depolarizing layer on one test state.
#[derive(Clone, Debug, PartialEq)]
pub struct Deviation {
    pub name: String,
    pub p: f64,
    pub max_abs: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub targets: Vec<Target>,
    pub deviations: Vec<Deviation>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn has_mismatch(&self) -> bool {
        self.targets.iter().any(|t| t.status == Status::Mismatch)
    }

    pub fn target(&self, name: &str) -> Option<&Target> {
        self.targets.iter().find(|t| t.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.targets.iter().filter(|t| t.status == status).count()
    }

    fn extend(&mut self, other: VerificationReport) {
        self.targets.extend(other.targets);
        self.deviations.extend(other.deviations);
        self.notes.extend(other.notes);
    }

    /// One line per target: `name<TAB>status<TAB>expected<TAB>derived`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\tstatus\texpected\tderived\n");
        for t in &self.targets {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                t.name, t.status, t.expected, t.derived
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "targets: {} match, {} mismatch, {} not identifiable",
            self.count(Status::Match),
            self.count(Status::Mismatch),
            self.count(Status::NotIdentifiable)
        );
        for t in &self.targets {
            let _ = writeln!(out, "\n[{}] {}", t.status, t.name);
            let _ = writeln!(out, "  expected: {}", t.expected);
            let _ = writeln!(out, "  derived:  {}", t.derived);
            for (k, e, d) in &t.coefficient_diffs {
                let _ = writeln!(out, "  p^{k}: expected {e}, derived {d}");
            }
        }
        if !self.deviations.is_empty() {
            let _ = writeln!(out, "\nproduct-of-marginals layer vs depolarizing layer");
            for d in &self.deviations {
                let _ = writeln!(
                    out,
                    "  {} (p = {}): max |delta| = {:.6e}",
                    d.name, d.p, d.max_abs
                );
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }
}

fn one_minus_p() -> PolyP {
    PolyP::from_ratios(&[(1, 1), (-1, 1)])
}

fn constant(n: i64, d: i64) -> PolyP {
    PolyP::from_ratios(&[(n, d)])
}

const POPULATIONS: [usize; 2] = [0, 3];
const COHERENCES: [usize; 2] = [1, 2];

/// Entries that move weight between populations and coherences must vanish.
fn block_target(kind: NoiseKind, map: &TransferMap) -> Target {
    let name = format!("{kind}.population_coherence_decoupling");
    let leak = POPULATIONS
        .iter()
        .flat_map(|&a| COHERENCES.iter().flat_map(move |&b| [(a, b), (b, a)]))
        .map(|(o, i)| map.entry(o, i))
        .find(|e| !e.is_zero());
    Target::compare(name, &PolyP::zero(), leak.unwrap_or(&PolyP::zero()))
}

/// The lower-right block of the map must mirror the upper-left one.
fn mirror_target(kind: NoiseKind, map: &TransferMap) -> Target {
    let name = format!("{kind}.mirror_symmetry");
    let pairs = [
        ((0, 0), (3, 3)),
        ((0, 3), (3, 0)),
        ((1, 1), (2, 2)),
        ((1, 2), (2, 1)),
    ];
    let broken = pairs
        .iter()
        .map(|&((a, b), (c, d))| (map.entry(a, b), map.entry(c, d)))
        .find(|(x, y)| x != y);
    match broken {
        Some((x, y)) => Target::compare(name, x, y),
        None => Target::compare(name, &PolyP::zero(), &PolyP::zero()),
    }
}

fn identity_target(kind: NoiseKind, map: &TransferMap) -> Target {
    let at_zero = map.evaluate_at(&rational(0, 1));
    let mut diffs = Vec::new();
    for o in 0..4 {
        for i in 0..4 {
            let want = if o == i {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            };
            if at_zero[o * 4 + i] != want && diffs.is_empty() {
                diffs.push((0, want, at_zero[o * 4 + i].clone()));
            }
        }
    }
    let status = if diffs.is_empty() {
        Status::Match
    } else {
        Status::Mismatch
    };
    Target {
        name: format!("{kind}.identity_at_zero"),
        status,
        expected: "identity".into(),
        derived: if diffs.is_empty() {
            "identity".into()
        } else {
            "not identity".into()
        },
        coefficient_diffs: diffs,
    }
}

fn structural_targets(kind: NoiseKind, map: &TransferMap) -> Vec<Target> {
    vec![
        identity_target(kind, map),
        block_target(kind, map),
        mirror_target(kind, map),
    ]
}

/// The four representative map entries a closed form pins down:
/// population kept, population swapped, coherence kept, coherence conjugated.
fn representative(map: &TransferMap) -> [PolyP; 4] {
    [
        map.entry(0, 0).clone(),
        map.entry(0, 3).clone(),
        map.entry(1, 1).clone(),
        map.entry(1, 2).clone(),
    ]
}

fn depolarizing_expected() -> [PolyP; 4] {
    let q9 = one_minus_p().pow(9);
    let mix = (&PolyP::one() - &q9).scale(&GaussianRational::real(rational(1, 2)));
    [&q9 + &mix, mix, one_minus_p().pow(12), PolyP::zero()]
}

fn bitflip_expected(table: &PolynomialTable) -> [PolyP; 4] {
    let four = GaussianRational::real(rational(4, 1));
    [
        (table.u(1) + table.u(3)).scale(&four),
        (table.u(2) + table.u(3)).scale(&four),
        table.u(4).scale(&four),
        table.u(5).scale(&four),
    ]
}

fn phaseflip_expected(table: &PolynomialTable) -> [PolyP; 4] {
    [
        PolyP::one(),
        PolyP::zero(),
        table.u(6).clone(),
        PolyP::zero(),
    ]
}

fn expected_entries(kind: NoiseKind, table: &PolynomialTable) -> [PolyP; 4] {
    match kind {
        NoiseKind::Depolarizing => depolarizing_expected(),
        NoiseKind::BitFlip => bitflip_expected(table),
        NoiseKind::PhaseFlip => phaseflip_expected(table),
    }
}

/// Tries the non-standard correction wirings when the standard one fails
/// and records which, if any, reproduces every representative entry.
fn assignment_fallback(
    kind: NoiseKind,
    table: &PolynomialTable,
    report: &mut VerificationReport,
) -> Result<()> {
    if !report.has_mismatch() {
        return Ok(());
    }
    let expected = expected_entries(kind, table);
    let mut matched = Vec::new();
    for assignment in CorrectionAssignment::ALL {
        if assignment == CorrectionAssignment::STANDARD {
            continue;
        }
        let map = extract_transfer_map_with(kind, assignment)?;
        if representative(&map) == expected {
            matched.push(assignment.label());
        }
    }
    report.notes.push(if matched.is_empty() {
        format!("{kind}: no alternative correction assignment reproduces the closed form either")
    } else {
        format!(
            "{kind}: closed form reproduced under correction assignment {}",
            matched.join(", ")
        )
    });
    Ok(())
}

pub fn verify_depolarizing() -> Result<VerificationReport> {
    verify_depolarizing_on(&extract_transfer_map(NoiseKind::Depolarizing)?)
}

fn verify_depolarizing_on(map: &TransferMap) -> Result<VerificationReport> {
    let kind = NoiseKind::Depolarizing;
    let [kept, swapped, coherence, conjugated] = representative(map);
    let retention = &kept - &swapped;
    let q9 = one_minus_p().pow(9);
    let q12 = one_minus_p().pow(12);
    let mix = (&PolyP::one() - &q9).scale(&GaussianRational::real(rational(1, 2)));
    let mut report = VerificationReport::default();
    report.targets.push(Target::compare(
        "depolarizing.population_retention",
        &q9,
        &retention,
    ));
    report.targets.push(Target::compare(
        "depolarizing.population_mixing",
        &mix,
        &swapped,
    ));
    report
        .targets
        .push(Target::compare("depolarizing.coherence", &q12, &coherence));
    report.targets.push(Target::compare(
        "depolarizing.coherence_conjugate",
        &PolyP::zero(),
        &conjugated,
    ));
    report.targets.extend(structural_targets(kind, map));
    let sum = &coherence + &conjugated;
    let diff = &coherence - &conjugated;
    report.notes.push(format!(
        "depolarizing: coherence kept + conjugated = {}, kept - conjugated = {}; \
         the closed-form coherence holds exactly when alpha beta* is purely imaginary",
        describe_power(&sum),
        describe_power(&diff)
    ));
    assignment_fallback(kind, &PolynomialTable::published(), &mut report)?;
    Ok(report)
}

/// `(1-p)^n` when the polynomial is one, else its canonical text.
fn describe_power(poly: &PolyP) -> String {
    (0..=16)
        .find(|&n| &one_minus_p().pow(n) == poly)
        .map(|n| format!("(1-p)^{n}"))
        .unwrap_or_else(|| poly.to_string())
}

pub fn verify_bitflip() -> Result<VerificationReport> {
    verify_bitflip_with(&PolynomialTable::published())
}

pub fn verify_bitflip_with(table: &PolynomialTable) -> Result<VerificationReport> {
    verify_bitflip_on(table, &extract_transfer_map(NoiseKind::BitFlip)?)
}

fn verify_bitflip_on(table: &PolynomialTable, map: &TransferMap) -> Result<VerificationReport> {
    let kind = NoiseKind::BitFlip;
    let derived = representative(map);
    let expected = bitflip_expected(table);
    let names = ["4(u1+u3)", "4(u2+u3)", "4u4", "4u5"];
    let mut report = VerificationReport::default();
    for ((name, e), d) in names.iter().zip(&expected).zip(&derived) {
        report
            .targets
            .push(Target::compare(format!("bitflip.{name}"), e, d));
    }
    report
        .targets
        .push(Target::not_identifiable("bitflip.u3", table.u(3)));
    report.targets.push(Target::compare(
        "bitflip.trace_identity",
        &constant(1, 4),
        &table.trace_combination(),
    ));
    report.targets.extend(structural_targets(kind, map));
    report.notes.push(
        "bitflip: only u1+u3 and u2+u3 enter the output once |alpha|^2+|beta|^2 = 1, \
         so u1, u2 and u3 are not separately checkable"
            .into(),
    );
    report.notes.push(format!(
        "bitflip: derived coherence kept + conjugated = {}",
        &derived[2] + &derived[3]
    ));
    assignment_fallback(kind, table, &mut report)?;
    Ok(report)
}

pub fn verify_phaseflip() -> Result<VerificationReport> {
    verify_phaseflip_with(&PolynomialTable::published())
}

pub fn verify_phaseflip_with(table: &PolynomialTable) -> Result<VerificationReport> {
    verify_phaseflip_on(table, &extract_transfer_map(NoiseKind::PhaseFlip)?)
}

fn verify_phaseflip_on(table: &PolynomialTable, map: &TransferMap) -> Result<VerificationReport> {
    let kind = NoiseKind::PhaseFlip;
    let [kept, swapped, coherence, conjugated] = representative(map);
    let one_minus_2p = PolyP::from_ratios(&[(1, 1), (-2, 1)]);
    let mut report = VerificationReport::default();
    report
        .targets
        .push(Target::compare("phaseflip.u6", table.u(6), &coherence));
    report.targets.push(Target::compare(
        "phaseflip.u6_binomial",
        &one_minus_2p.pow(8),
        table.u(6),
    ));
    report.targets.push(Target::compare(
        "phaseflip.population_invariance",
        &PolyP::one(),
        &kept,
    ));
    report.targets.push(Target::compare(
        "phaseflip.population_swap",
        &PolyP::zero(),
        &swapped,
    ));
    report.targets.push(Target::compare(
        "phaseflip.coherence_conjugate",
        &PolyP::zero(),
        &conjugated,
    ));
    report.targets.extend(structural_targets(kind, map));
    assignment_fallback(kind, table, &mut report)?;
    Ok(report)
}

/// The exact inputs used for slope checks, with their labels.
pub fn slope_probes() -> Vec<(&'static str, InputState<GaussianRational>)> {
    let g = GaussianRational::from_parts;
    vec![
        (
            "(3/5,4/5)",
            InputState::new(g(3, 5, 0, 1), g(4, 5, 0, 1)).expect("normalized probe"),
        ),
        (
            "(3/5,4i/5)",
            InputState::new(g(3, 5, 0, 1), g(0, 1, 4, 5)).expect("normalized probe"),
        ),
    ]
}

/// Exact fidelity polynomial of the derived map for one input.
pub fn derived_fidelity(map: &TransferMap, input: &InputState<GaussianRational>) -> Result<PolyP> {
    let lift = |x: &GaussianRational| PolyP::constant(x.clone());
    let psi = PureState::qubit(lift(input.alpha()), lift(input.beta()));
    let rho = map.apply(&psi.projector())?;
    fidelity_with(&psi, &rho)
}

pub fn verify_linear_approximations() -> Result<VerificationReport> {
    let maps = NoiseKind::ALL
        .iter()
        .map(|&k| extract_transfer_map(k))
        .collect::<Result<Vec<_>>>()?;
    verify_linear_on(&maps)
}

fn verify_linear_on(maps: &[TransferMap]) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for (kind, map) in NoiseKind::ALL.iter().zip(maps) {
        for (label, input) in slope_probes() {
            let derived = derived_fidelity(map, &input)?.derivative().coeff(0);
            let expected = -linear_slope_exact(*kind, &input);
            report.targets.push(Target::compare(
                format!("{kind}.slope{label}"),
                &PolyP::constant(expected),
                &PolyP::constant(derived),
            ));
        }
    }
    Ok(report)
}

/// The shorthand layer: each qubit's marginal is depolarized separately and
/// the results are multiplied back together, dropping all correlations.
pub fn marginal_product_layer(
    rho: &DensityOperator<Complex64>,
    p: f64,
) -> Result<DensityOperator<Complex64>> {
    let n = rho.num_qubits();
    let half_identity = QubitOperator::<Complex64>::maximally_mixed(1)?;
    let factors = (1..=n)
        .map(|q| {
            let marginal = partial_trace(rho, &[q])?;
            marginal
                .scale(&Complex64::new(1.0 - p, 0.0))
                .add(&half_identity.scale(&Complex64::new(p, 0.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    tensor_all(&factors)
}

fn max_abs_diff(a: &DensityOperator<Complex64>, b: &DensityOperator<Complex64>) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn bell_with_ground() -> Result<DensityOperator<Complex64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = PureState::new(vec![
        Complex64::new(h, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(h, 0.0),
    ])?;
    tensor(&bell.projector(), &QubitOperator::basis_projector(&[0])?)
}

/// Deviation of the product-of-marginals shorthand from the real layer on a
/// product state and on a state carrying a Bell pair.
pub fn verify_marginal_product_discrepancy() -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let product = QubitOperator::basis_projector(&[0, 0, 0])?;
    let plus = PureState::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).projector();
    let mixed_product = tensor_all(&[
        plus,
        gates::identity::<Complex64>().scale(&Complex64::new(0.5, 0.0)),
        QubitOperator::basis_projector(&[1])?,
    ])?;
    let bell = bell_with_ground()?;
    let cases = [
        ("product |000>", &product, 0.5),
        ("product (0.6,0.8i) x I/2 x |1>", &mixed_product, 0.5),
        ("bell x |0>", &bell, 0.5),
        ("bell x |0>", &bell, 0.0),
    ];
    for (name, rho, p) in cases {
        let spec = ChannelSpec::new(NoiseKind::Depolarizing, Complex64::new(p, 0.0))?;
        let real_layer = apply_layer(&spec, rho)?;
        let shorthand = marginal_product_layer(rho, p)?;
        report.deviations.push(Deviation {
            name: name.into(),
            p,
            max_abs: max_abs_diff(&real_layer, &shorthand),
        });
    }
    Ok(report)
}

/// Every check, in a fixed order.
pub fn verify_all() -> Result<VerificationReport> {
    verify_all_with(&PolynomialTable::published())
}

pub fn verify_all_with(table: &PolynomialTable) -> Result<VerificationReport> {
    let maps = NoiseKind::ALL
        .iter()
        .map(|&k| extract_transfer_map(k))
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::default();
    report.extend(verify_depolarizing_on(&maps[0])?);
    report.extend(verify_bitflip_on(table, &maps[1])?);
    report.extend(verify_phaseflip_on(table, &maps[2])?);
    report.extend(verify_linear_on(&maps)?);
    report.extend(verify_marginal_product_discrepancy()?);
    Ok(report)
}
