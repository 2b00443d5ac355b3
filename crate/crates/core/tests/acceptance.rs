//! The ten acceptance criteria, each at its stated tolerance.
//!
//! Runs without the libtest harness so every criterion prints exactly one
//! PASS or FAIL line with the measured quantity. The process exits non-zero
//! when any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3};
use std::process::ExitCode;
use std::time::Instant;

use noisy_teleport::analytic::{fidelity_closed, fidelity_linear, linear_slope};
use noisy_teleport::channels::{apply_layer, depolarizing_subset_expansion, gates};
use noisy_teleport::linalg::{tensor_all, QubitOperator};
use noisy_teleport::sweep::default_states;
use noisy_teleport::teleport::{run_stages, teleport_fidelity};
use noisy_teleport::verify::{verify_all, Status, VerificationReport};
use noisy_teleport::{ChannelSpec, Complex64, InputState, NoiseKind, TeleportConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(n: usize, hi: f64) -> Vec<f64> {
    (0..n).map(|k| hi * k as f64 / (n - 1) as f64).collect()
}

fn five_states() -> Vec<InputState<Complex64>> {
    vec![
        InputState::real(1.0, 0.0).unwrap(),
        InputState::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap(),
        InputState::real(0.6, 0.8).unwrap(),
        InputState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap(),
        InputState::new(
            c(FRAC_1_SQRT_2, 0.0),
            Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_3),
        )
        .unwrap(),
    ]
}

fn fidelity(input: &InputState<Complex64>, kind: NoiseKind, p: f64) -> f64 {
    teleport_fidelity(&TeleportConfig::float(input.clone(), kind, p).unwrap()).unwrap()
}

fn status_of(report: &VerificationReport, name: &str) -> Option<Status> {
    report.target(name).map(|t| t.status)
}

fn numeric_matches_closed_form() -> Outcome {
    let mut worst = Vec::new();
    for kind in NoiseKind::ALL {
        let mut max = 0.0f64;
        for input in five_states() {
            for p in grid(101, 1.0) {
                max = max.max(
                    (fidelity(&input, kind, p) - fidelity_closed(kind, &input, p).unwrap()).abs(),
                );
            }
        }
        worst.push((kind, max));
    }
    let ok = worst.iter().all(|&(_, m)| m <= 1e-12);
    let detail = worst
        .iter()
        .map(|(k, m)| format!("{k} {m:.3e}"))
        .collect::<Vec<_>>()
        .join(", ");
    (
        ok,
        format!("max |F_numeric - F_closed|: {detail} (tol 1e-12)"),
    )
}

fn expect_all(report: &VerificationReport, names: &[&str]) -> Outcome {
    let statuses: Vec<String> = names
        .iter()
        .map(|n| {
            format!(
                "{n}={}",
                status_of(report, n).map_or("missing".into(), |s| s.to_string())
            )
        })
        .collect();
    let ok = names
        .iter()
        .all(|n| status_of(report, n) == Some(Status::Match));
    (ok, statuses.join(", "))
}

fn depolarizing_symbolic(report: &VerificationReport) -> Outcome {
    expect_all(
        report,
        &[
            "depolarizing.population_retention",
            "depolarizing.population_mixing",
            "depolarizing.coherence",
            "depolarizing.coherence_conjugate",
        ],
    )
}

fn phaseflip_symbolic(report: &VerificationReport) -> Outcome {
    expect_all(report, &["phaseflip.u6", "phaseflip.u6_binomial"])
}

fn bitflip_table_compared(report: &VerificationReport) -> Outcome {
    let names = [
        "bitflip.4(u1+u3)",
        "bitflip.4(u2+u3)",
        "bitflip.4u4",
        "bitflip.4u5",
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        match report.target(name) {
            Some(t) if t.status == Status::Match => parts.push(format!("{name}=Match")),
            Some(t) if t.status == Status::Mismatch && !t.coefficient_diffs.is_empty() => parts
                .push(format!(
                    "{name}=Mismatch({} diffs)",
                    t.coefficient_diffs.len()
                )),
            _ => {
                ok = false;
                parts.push(format!("{name}=incomplete"));
            }
        }
    }
    let u3 = status_of(report, "bitflip.u3");
    ok &= u3 == Some(Status::NotIdentifiable);
    parts.push(format!(
        "bitflip.u3={}",
        u3.map_or("missing".into(), |s| s.to_string())
    ));
    (ok, parts.join(", "))
}

fn linear_slopes(report: &VerificationReport) -> Outcome {
    let slope_targets: Vec<_> = report
        .targets
        .iter()
        .filter(|t| t.name.contains(".slope"))
        .collect();
    let exact_ok =
        slope_targets.len() == 6 && slope_targets.iter().all(|t| t.status == Status::Match);
    let exact: Vec<String> = slope_targets
        .iter()
        .map(|t| format!("{}={}", t.name, t.status))
        .collect();

    let probes = [
        InputState::real(0.6, 0.8).unwrap(),
        InputState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap(),
    ];
    let mut worst = 0.0f64;
    let mut worst_closed = 0.0f64;
    for kind in NoiseKind::ALL {
        for input in &probes {
            let slope = linear_slope(kind, input).abs();
            for p in grid(21, 0.02).into_iter().skip(1) {
                let lin = fidelity_linear(kind, input, p);
                let bound = 5.0 * slope * p * p;
                worst = worst.max((fidelity(input, kind, p) - lin).abs() / bound);
                worst_closed = worst_closed
                    .max((fidelity_closed(kind, input, p).unwrap() - lin).abs() / bound);
            }
        }
    }
    let float_ok = worst <= 1.0;
    (
        exact_ok && float_ok,
        format!(
            "exact: {}; float: max |F - F_lin| / (5 |slope| p^2) = {worst:.3} (must be <= 1; \
             {worst_closed:.3} with F taken from the closed form)",
            exact.join(", ")
        ),
    )
}

fn limits() -> Outcome {
    let mut at_zero = 0.0f64;
    let mut depol_one = 0.0f64;
    let mut phase_ground = 0.0f64;
    for input in five_states() {
        for kind in NoiseKind::ALL {
            at_zero = at_zero.max((fidelity(&input, kind, 0.0) - 1.0).abs());
        }
        depol_one = depol_one.max((fidelity(&input, NoiseKind::Depolarizing, 1.0) - 0.5).abs());
    }
    let ground = InputState::real(1.0, 0.0).unwrap();
    for p in grid(101, 1.0) {
        phase_ground = phase_ground.max((fidelity(&ground, NoiseKind::PhaseFlip, p) - 1.0).abs());
    }
    let ok = at_zero <= 1e-14 && depol_one <= 1e-12 && phase_ground <= 1e-12;
    (
        ok,
        format!("|F(0)-1| {at_zero:.3e}, |F_depol(1)-1/2| {depol_one:.3e}, |F_phase(|0>)-1| {phase_ground:.3e}"),
    )
}

fn random_density(rng: &mut ChaCha8Rng) -> QubitOperator<Complex64> {
    let g: Vec<Complex64> = (0..64)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = QubitOperator::from_entries(g).unwrap();
    let rho = g.matmul(&g.adjoint()).unwrap();
    let tr = rho.trace();
    rho.scale(&(c(1.0, 0.0) / tr))
}

/// `sum_S p^|S| (1-p)^(3-|S|) P_S rho P_S` over the eight qubit subsets,
/// built from full 8x8 products.
fn pauli_subset_sum(
    rho: &QubitOperator<Complex64>,
    pauli: &QubitOperator<Complex64>,
    p: f64,
) -> QubitOperator<Complex64> {
    let id = gates::identity::<Complex64>();
    let mut out = QubitOperator::zeros(3).unwrap();
    for mask in 0..8u32 {
        let factors: Vec<_> = (0..3)
            .map(|q| {
                if mask >> (2 - q) & 1 == 1 {
                    pauli.clone()
                } else {
                    id.clone()
                }
            })
            .collect();
        let op = tensor_all(&factors).unwrap();
        let k = mask.count_ones() as i32;
        let w = p.powi(k) * (1.0 - p).powi(3 - k);
        let term = op
            .matmul(rho)
            .unwrap()
            .matmul(&op.adjoint())
            .unwrap()
            .scale(&c(w, 0.0));
        out = out.add(&term).unwrap();
    }
    out
}

fn max_abs(a: &QubitOperator<Complex64>, b: &QubitOperator<Complex64>) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn channel_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1e_9047);
    let (mut depol, mut bit, mut phase) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let rho = random_density(&mut rng);
        for p in grid(11, 1.0) {
            let pc = c(p, 0.0);
            let layer = |kind| apply_layer(&ChannelSpec::new(kind, pc).unwrap(), &rho).unwrap();
            depol = depol.max(max_abs(
                &layer(NoiseKind::Depolarizing),
                &depolarizing_subset_expansion(&rho, &pc).unwrap(),
            ));
            bit = bit.max(max_abs(
                &layer(NoiseKind::BitFlip),
                &pauli_subset_sum(&rho, &gates::pauli_x(), p),
            ));
            phase = phase.max(max_abs(
                &layer(NoiseKind::PhaseFlip),
                &pauli_subset_sum(&rho, &gates::pauli_z(), p),
            ));
        }
    }
    let ok = depol <= 1e-14 && bit <= 1e-14 && phase <= 1e-14;
    (ok, format!("max entrywise gap: depolarizing {depol:.3e}, bitflip {bit:.3e}, phaseflip {phase:.3e} (tol 1e-14)"))
}

fn marginal_shorthand(report: &VerificationReport) -> Outcome {
    let d = &report.deviations;
    let products: Vec<_> = d.iter().filter(|x| x.name.starts_with("product")).collect();
    let entangled: Vec<_> = d.iter().filter(|x| x.name.starts_with("bell")).collect();
    let product_max = products.iter().map(|x| x.max_abs).fold(0.0, f64::max);
    let entangled_min = entangled
        .iter()
        .map(|x| x.max_abs)
        .fold(f64::INFINITY, f64::min);
    let ok = !products.is_empty()
        && !entangled.is_empty()
        && product_max <= 1e-14
        && entangled_min > 0.0;
    (ok, format!("product states {product_max:.3e} (tol 1e-14), entangled states >= {entangled_min:.3e} (must be > 0)"))
}

fn properties() -> Outcome {
    let mut worst_trace = 0.0f64;
    let mut worst_eig = f64::INFINITY;
    let mut states = default_states();
    states.push(InputState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap());
    for kind in NoiseKind::ALL {
        for input in &states {
            for p in grid(11, 1.0) {
                let trace =
                    run_stages(&TeleportConfig::float(input.clone(), kind, p).unwrap()).unwrap();
                for (_, rho) in trace.iter() {
                    worst_trace = worst_trace.max((rho.trace() - c(1.0, 0.0)).norm());
                    worst_eig = worst_eig.min(rho.min_eigenvalue());
                }
            }
        }
    }
    let mut swap = 0.0f64;
    let mut phase = 0.0f64;
    for kind in NoiseKind::ALL {
        for input in five_states() {
            for p in grid(11, 1.0) {
                let f = fidelity(&input, kind, p);
                swap = swap.max((f - fidelity(&input.swapped(), kind, p)).abs());
                phase = phase.max((f - fidelity(&input.with_global_phase(1.234), kind, p)).abs());
            }
        }
    }
    let mut monotone = true;
    for kind in NoiseKind::ALL {
        for input in default_states() {
            let fs: Vec<f64> = grid(51, 0.5)
                .into_iter()
                .map(|p| fidelity(&input, kind, p))
                .collect();
            monotone &= fs.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        }
    }
    let ok =
        worst_trace <= 1e-12 && worst_eig >= -1e-10 && swap <= 1e-12 && phase <= 1e-12 && monotone;
    (
        ok,
        format!(
            "trace gap {worst_trace:.3e}, min eigenvalue {worst_eig:.3e}, swap {swap:.3e}, global phase {phase:.3e}, monotone on [0,0.5]: {monotone}"
        ),
    )
}

fn ordering() -> Outcome {
    let plus = InputState::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
    let pairs: Vec<(f64, f64, f64)> = [0.1, 0.2, 0.3]
        .iter()
        .map(|&p| {
            (
                p,
                fidelity(&plus, NoiseKind::BitFlip, p),
                fidelity(&plus, NoiseKind::Depolarizing, p),
            )
        })
        .collect();
    let ok = pairs.iter().all(|&(_, b, d)| b >= d);
    let detail = pairs
        .iter()
        .map(|(p, b, d)| format!("p={p}: {b:.4} vs {d:.4}"))
        .collect::<Vec<_>>()
        .join(", ");
    (
        ok,
        format!("F_bitflip vs F_depolarizing, equal superposition: {detail}"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = verify_all().expect("verification run");
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "numeric/closed-form fidelity agreement",
            numeric_matches_closed_form(),
        ),
        (
            "depolarizing transfer map, exact",
            depolarizing_symbolic(&report),
        ),
        (
            "phase-flip coherence polynomial, exact",
            phaseflip_symbolic(&report),
        ),
        (
            "bit-flip polynomial table compared",
            bitflip_table_compared(&report),
        ),
        ("first-order slopes", linear_slopes(&report)),
        ("limits at p = 0 and p = 1", limits()),
        ("channel layer equivalences", channel_forms()),
        (
            "product-of-marginals shorthand",
            marginal_shorthand(&report),
        ),
        ("stage and fidelity properties", properties()),
        ("bit-flip above depolarizing", ordering()),
    ];
    let mut failed = 0;
    for (i, (name, (ok, detail))) in criteria.iter().enumerate() {
        println!(
            "{} {:>2}. {name}: {detail}",
            if *ok { "PASS" } else { "FAIL" },
            i + 1
        );
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
