//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Pass criterion numbers as arguments to
//! run a subset.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clifford_hp::bell::{
    bell_measurement_distribution, bell_outcome_probability, output_state, run_bell_protocol, run_bell_protocol_forced,
};
use clifford_hp::dense::{
    bell_projector, circuit_unitary, computational_projector, epr_label_mixture, fidelity, hp_code_state,
    hp_decoder_state, hp_encoded_state, pauli_matrix, random_state, von_neumann_entropy, DenseState, C64,
};
use clifford_hp::ensemble::{run_ensemble, EnsembleConfig};
use clifford_hp::local::{local_outcome_probability, run_local_protocol, run_local_protocol_forced, InjectedError};
use clifford_hp::logical::{construct_logical, f_sign, stabilizer_generators, verify_existence_identity};
use clifford_hp::stabilizer::prepare_hp_state;
use clifford_hp::wigner::{
    commutator_wavefunction_equals_wigner_choi, f_matrix_inversion_check, wigner_orthonormality_check,
};
use clifford_hp::{BitVector, Circuit, CliffordTableau, HpInstance, Partition, PauliKind, PauliOperator};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 1 << 12;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn circuit_instance(n: usize, n_a: usize, n_d: usize, rng: &mut ChaCha8Rng) -> Result<(Circuit, HpInstance)> {
    let circuit = Circuit::random(n, 8 * n * n, rng);
    let u = CliffordTableau::from_circuit(&circuit);
    Ok((circuit, HpInstance::build(u, Partition::from_sizes(n, n_a, n_d)?)?))
}

fn tableau_instance(n: usize, n_a: usize, n_d: usize, rng: &mut ChaCha8Rng) -> Result<HpInstance> {
    Ok(HpInstance::build(
        CliffordTableau::random(n, rng),
        Partition::from_sizes(n, n_a, n_d)?,
    )?)
}

fn all_vectors(len: usize) -> impl Iterator<Item = BitVector> {
    (0..1u64 << len).map(move |v| BitVector::from_u64(len, v))
}

fn bools(v: &BitVector) -> Vec<bool> {
    v.iter().collect()
}

fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    [a, b].concat()
}

/// `ρ_{RR̄}` after projecting the decoder state and applying `feedback` on `R̄`.
fn post_measurement(
    dense: &DenseState,
    inst: &HpInstance,
    projector: &DMatrix<C64>,
    feedback: &BitVector,
) -> Result<(f64, DMatrix<C64>)> {
    let l = inst.layout();
    let mut s = dense.clone();
    let p = s.project(projector, &concat(&l.d, &l.dbar))?;
    s.apply_pauli(&PauliOperator::from_symplectic(feedback)?, &l.rbar)?;
    Ok((p, s.reduced_density(&concat(&l.r, &l.rbar))?))
}

fn criterion_1() -> Result<String> {
    let mut rng = rng(1);
    let mut recoverable = 0;
    for trial in 0..1000 {
        let n = rng.random_range(2..=8);
        let n_a = rng.random_range(1..=n.min(3));
        let n_d = rng.random_range(0..=n);
        let inst = tableau_instance(n, n_a, n_d, &mut rng)?;
        let image: BTreeSet<BitVector> = inst
            .enumerate_image_bell(CAP)
            .context("image too large")?
            .into_iter()
            .collect();
        let mut operational = true;
        for q in &image {
            let out = run_bell_protocol_forced(&inst, q)?;
            operational &= out.fidelity == 1.0;
        }
        if n_d <= 3 {
            for q in all_vectors(2 * n_d).filter(|q| !image.contains(q)) {
                ensure!(
                    run_bell_protocol_forced(&inst, &q).is_err(),
                    "trial {trial}: outcome {q} outside the image was accepted"
                );
            }
        }
        ensure!(
            operational == inst.is_perfectly_recoverable(),
            "trial {trial}: kernel verdict {}, protocol {operational}",
            inst.is_perfectly_recoverable()
        );
        recoverable += operational as usize;
    }
    Ok(format!("1000 instances agree, {recoverable} recoverable"))
}

fn criterion_2() -> Result<String> {
    let mut rng = rng(2);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = rng.random_range(2..=6);
        let n_a = rng.random_range(1..=n.min(3));
        let n_d = rng.random_range(0..=n);
        let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
        let l = inst.layout();
        let rc = concat(&l.r, &l.c);
        let stab = prepare_hp_state(inst.tableau(), inst.partition(), &l)?;
        let simulated = stab.entropy(&rc)?;
        ensure!(
            inst.entropy_rc_bits() == simulated,
            "trial {trial}: {} vs simulator {simulated}",
            inst.entropy_rc_bits()
        );
        let rho = hp_encoded_state(&circuit, &l)?.reduced_density(&rc)?;
        let dev = (von_neumann_entropy(&rho) - inst.entropy_rc()).abs();
        worst = worst.max(dev);
        ensure!(dev < 1e-9, "trial {trial}: von Neumann entropy off by {dev:e}");
    }
    Ok(format!("200 instances, max deviation {worst:.1e}"))
}

fn criterion_3() -> Result<String> {
    let mut rng = rng(3);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let n = rng.random_range(2..=6);
        let n_a = rng.random_range(1..=n.min(2));
        let n_d = rng.random_range(1..=n.min(3));
        let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
        let l = inst.layout();
        let dense = hp_decoder_state(&circuit, &l)?;
        let dist = bell_measurement_distribution(&inst, CAP)?;
        for q in all_vectors(2 * n_d) {
            let oracle = dense.born_probability(
                &bell_projector(&PauliOperator::from_symplectic(&q)?)?,
                &concat(&l.d, &l.dbar),
            )?;
            let symbolic = dist.get(&q).copied().unwrap_or(0.0);
            ensure!(
                symbolic == bell_outcome_probability(&inst, &q)?,
                "trial {trial}: distribution and formula disagree"
            );
            let dev = (oracle - symbolic).abs();
            worst = worst.max(dev);
            ensure!(dev < 1e-10, "trial {trial}, outcome {q}: {symbolic} vs oracle {oracle}");
        }
    }

    let (_, inst) = circuit_instance(5, 1, 2, &mut rng)?;
    let dist = bell_measurement_distribution(&inst, CAP)?;
    let shots = 10_000;
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..shots {
        *counts
            .entry(run_bell_protocol(&inst, &mut rng)?.measured_q_d)
            .or_insert(0usize) += 1;
    }
    let mut worst_z: f64 = 0.0;
    for q in all_vectors(4) {
        let p = dist.get(&q).copied().unwrap_or(0.0);
        let c = counts.get(&q).copied().unwrap_or(0) as f64;
        let sigma = (shots as f64 * p * (1.0 - p)).sqrt();
        let dev = (c - shots as f64 * p).abs();
        if sigma == 0.0 {
            ensure!(dev == 0.0, "outcome {q} with probability {p} seen {c} times");
        } else {
            worst_z = worst_z.max(dev / sigma);
            ensure!(
                dev <= 3.0 * sigma,
                "outcome {q}: {c} hits, expected {} ± {sigma:.1}",
                shots as f64 * p
            );
        }
    }
    Ok(format!(
        "100 instances, max deviation {worst:.1e}; 10^4 shots, max |z| = {worst_z:.2}"
    ))
}

fn criterion_4() -> Result<String> {
    let mut rng = rng(4);
    let mut done = 0;
    let mut outcomes = 0;
    let mut worst: f64 = 0.0;
    while done < 20 {
        let n = rng.random_range(3..=6);
        let n_a = rng.random_range(1..=2);
        let n_d = rng.random_range(n_a..=3);
        let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
        if !inst.is_perfectly_recoverable() {
            continue;
        }
        done += 1;
        let dense = hp_decoder_state(&circuit, &inst.layout())?;
        let epr = DenseState::epr(n_a)?;
        let mut total = 0.0;
        for q in inst.enumerate_image_bell(CAP).context("image too large")? {
            let out = run_bell_protocol_forced(&inst, &q)?;
            ensure!(
                out.fidelity == 1.0 && out.symbolic_fidelity == 1.0,
                "outcome {q}: fidelity {}",
                out.fidelity
            );
            let (p, rho) = post_measurement(
                &dense,
                &inst,
                &bell_projector(&PauliOperator::from_symplectic(&q)?)?,
                &out.feedback_p_a,
            )?;
            let f = fidelity(&rho, &epr)?;
            worst = worst.max(1.0 - f);
            ensure!(f >= 1.0 - 1e-10, "outcome {q}: oracle fidelity {f}");
            total += p;
            outcomes += 1;
        }
        ensure!((total - 1.0).abs() < 1e-10, "image outcomes carry probability {total}");
    }
    Ok(format!(
        "20 recoverable instances, {outcomes} outcomes, min oracle fidelity 1 - {worst:.1e}"
    ))
}

fn criterion_5() -> Result<String> {
    let mut rng = rng(5);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    let mut dims = [0usize; 2];
    while done < 50 {
        let n = rng.random_range(3..=6);
        let n_a = rng.random_range(1..=2);
        let n_d = rng.random_range(1..=3);
        let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
        let k = inst.kernel_dim_bell();
        if !(1..=2).contains(&k) {
            continue;
        }
        done += 1;
        dims[k - 1] += 1;
        let dense = hp_decoder_state(&circuit, &inst.layout())?;
        let labels = output_state(&inst)
            .elements()
            .context("kernel not enumerated")?
            .iter()
            .map(PauliOperator::from_symplectic)
            .collect::<clifford_hp::Result<Vec<_>>>()?;
        let expected = epr_label_mixture(n_a, &labels)?;
        for q in inst.enumerate_image_bell(CAP).context("image too large")? {
            let out = run_bell_protocol_forced(&inst, &q)?;
            let (_, rho) = post_measurement(
                &dense,
                &inst,
                &bell_projector(&PauliOperator::from_symplectic(&q)?)?,
                &out.feedback_p_a,
            )?;
            let dev = max_abs_diff(&rho, &expected);
            worst = worst.max(dev);
            ensure!(dev < 1e-10, "kernel dim {k}, outcome {q}: deviation {dev:e}");
        }
    }
    Ok(format!(
        "50 instances ({} with kernel dim 1, {} with 2), max deviation {worst:.1e}",
        dims[0], dims[1]
    ))
}

fn criterion_6() -> Result<String> {
    let mut rng = rng(6);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 50 {
        let n = rng.random_range(2..=6);
        let n_a = rng.random_range(1..=n.min(2));
        let n_d = rng.random_range(n_a..=n);
        let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
        if !inst.is_perfectly_recoverable() {
            continue;
        }
        done += 1;
        let p = *inst.partition();
        let code_wires: Vec<usize> = (0..n + p.n_b).collect();
        let a_wires: Vec<usize> = (0..n_a).collect();
        let basis = (0..1usize << n_a)
            .map(|i| hp_code_state(&circuit, &DenseState::basis(n_a, i)?, p.n_b))
            .collect::<clifford_hp::Result<Vec<_>>>()?;
        let encode = |psi: &DenseState| -> Result<DenseState> {
            let mut amps = DVector::zeros(basis[0].amplitudes().len());
            for (c, b) in psi.amplitudes().iter().zip(&basis) {
                amps += b.amplitudes() * *c;
            }
            Ok(DenseState::from_amplitudes(amps)?)
        };
        for v in all_vectors(2 * n_a) {
            let p_a = PauliOperator::from_symplectic(&v)?.with_phase(rng.random_range(0..4));
            let op = construct_logical(&inst, &p_a)?.to_code_operator(&inst)?;
            for _ in 0..10 {
                let psi = random_state(n_a, &mut rng)?;
                let mut lhs = encode(&psi)?;
                lhs.apply_pauli(&op, &code_wires)?;
                let mut moved = psi.clone();
                moved.apply_pauli(&p_a, &a_wires)?;
                let rhs = encode(&moved)?;
                let dev = (lhs.amplitudes() - rhs.amplitudes()).norm();
                worst = worst.max(dev);
                ensure!(dev < 1e-10, "logical for {p_a} deviates by {dev:e}");
            }
        }
        let gens = stabilizer_generators(&inst);
        ensure!(
            gens.len() == 2 * p.n_b,
            "{} stabilizer generators for n_B = {}",
            gens.len(),
            p.n_b
        );
        let code = encode(&random_state(n_a, &mut rng)?)?;
        for g in gens {
            let mut t = code.clone();
            t.apply_pauli(&g, &code_wires)?;
            let dev = (code.inner(&t)? - C64::new(1.0, 0.0)).norm();
            worst = worst.max(dev);
            ensure!(dev < 1e-10, "stabilizer {g} has eigenvalue off by {dev:e}");
        }
    }
    Ok(format!("50 recoverable instances, max deviation {worst:.1e}"))
}

/// `α_{P,Q} = tr(U P U† Q U P U† Q) / d` from dense matrices, rounded to ±1.
fn dense_alpha(u: &DMatrix<C64>, n: usize, inst: &HpInstance, pa: &BitVector, qd: &BitVector) -> Result<i64> {
    let p = pauli_matrix(&PauliOperator::from_symplectic(pa)?.embed(n, &inst.a_wires())?)?;
    let q = pauli_matrix(&PauliOperator::from_symplectic(qd)?.embed(n, inst.d_wires())?)?;
    let evolved = u * p * u.adjoint();
    let t = (&evolved * &q * &evolved * &q).trace() / C64::new((1u64 << n) as f64, 0.0);
    let r = t.re.round();
    ensure!(
        (t - C64::new(r, 0.0)).norm() < 1e-9 && r.abs() == 1.0,
        "OTOC {t} is not a sign"
    );
    Ok(r as i64)
}

fn criterion_7() -> Result<String> {
    let mut rng = rng(7);
    let n = 5;
    let mut count = 0;
    for n_a in 1..=2 {
        for n_d in 0..=2 {
            for _ in 0..5 {
                let (circuit, inst) = circuit_instance(n, n_a, n_d, &mut rng)?;
                ensure!(
                    verify_existence_identity(&inst)?,
                    "library identity check failed (n_A={n_a}, n_D={n_d})"
                );
                let u = circuit_unitary(&circuit)?;
                let pas: Vec<BitVector> = all_vectors(2 * n_a).collect();
                let qds: Vec<BitVector> = all_vectors(2 * n_d).collect();
                let alpha = pas
                    .iter()
                    .map(|a| {
                        qds.iter()
                            .map(|q| dense_alpha(&u, n, &inst, a, q))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (qi, q) in qds.iter().enumerate() {
                    let omega = inst.backward(q)?;
                    for r in &pas {
                        let sum: i64 = pas.iter().enumerate().map(|(ai, a)| f_sign(r, a) * alpha[ai][qi]).sum();
                        ensure!(
                            sum == pas.len() as i64 * i64::from(&omega == r),
                            "backward identity fails at Q_D={q}, R_A={r}"
                        );
                    }
                }
                for (ai, a) in pas.iter().enumerate() {
                    let lambda = inst.forward(a)?;
                    for r in &qds {
                        let sum: i64 = qds.iter().enumerate().map(|(qi, q)| alpha[ai][qi] * f_sign(q, r)).sum();
                        ensure!(
                            sum == qds.len() as i64 * i64::from(&lambda == r),
                            "forward identity fails at P_A={a}, R_D={r}"
                        );
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, both identities exact"))
}

fn criterion_8() -> Result<String> {
    let mut rng = rng(8);
    let mut worst: f64 = 0.0;
    for trial in 0..8 {
        let n_a = 1 + trial % 2;
        let n_d = rng.random_range(1..=3);
        let (circuit, inst) = circuit_instance(6, n_a, n_d, &mut rng)?;
        let l = inst.layout();
        let dense = hp_decoder_state(&circuit, &l)?;
        let epr = DenseState::epr(n_a)?;
        let target = (-(inst.kernel_dim_local() as f64)).exp2();
        for m in all_vectors(n_d) {
            for mb in all_vectors(n_d) {
                let proj = computational_projector(&[bools(&m), bools(&mb)].concat());
                let oracle = dense.born_probability(&proj, &concat(&l.d, &l.dbar))?;
                let formula = local_outcome_probability(&inst, &m, &mb)?;
                let dev = (oracle - formula).abs();
                worst = worst.max(dev);
                ensure!(dev < 1e-10, "trial {trial}: P({m},{mb}) = {formula} vs oracle {oracle}");
                if formula == 0.0 {
                    continue;
                }
                let out = run_local_protocol_forced(&inst, &m, &mb)?;
                ensure!(
                    out.fidelity == target,
                    "trial {trial}: fidelity {} instead of 1/N_0 = {target}",
                    out.fidelity
                );
                let fb = out.feedback_p_a.context("no feedback on a noiseless outcome")?;
                let (_, rho) = post_measurement(&dense, &inst, &proj, &fb)?;
                let f = fidelity(&rho, &epr)?;
                worst = worst.max((f - target).abs());
                ensure!(
                    (f - target).abs() < 1e-10,
                    "trial {trial}: oracle fidelity {f} vs {target}"
                );
            }
        }
    }

    let mut below = 0;
    let mut perfect_above = 0;
    for trial in 0..1000 {
        let n = rng.random_range(2..=8);
        let n_a = rng.random_range(1..=n.min(3));
        let n_d = rng.random_range(0..=n);
        let inst = tableau_instance(n, n_a, n_d, &mut rng)?;
        let perfect = run_local_protocol(&inst, None, &mut rng)?.fidelity == 1.0;
        ensure!(
            perfect == inst.is_locally_recoverable(),
            "trial {trial}: protocol and Λ_Z disagree"
        );
        if n_d < 2 * n_a {
            below += 1;
            ensure!(
                !perfect,
                "trial {trial}: perfect local recovery with n_D={n_d} < 2n_A={}",
                2 * n_a
            );
        } else {
            perfect_above += perfect as usize;
        }
    }
    ensure!(
        perfect_above > 0,
        "perfect local recovery never observed above threshold"
    );
    Ok(format!(
        "formula and fidelity max deviation {worst:.1e}; threshold: 0 of {below} below, {perfect_above} perfect above"
    ))
}

fn criterion_9() -> Result<String> {
    let mut rng = rng(9);
    let (n, n_a, n_d) = (6, 1, 3);
    let trials = 10_000;
    let (mut detected, mut mean, mut var) = (0usize, 0.0, 0.0);
    for trial in 0..trials {
        let inst = loop {
            let inst = tableau_instance(n, n_a, n_d, &mut rng)?;
            if inst.lambda_z().is_injective() {
                break inst;
            }
        };
        let image: BTreeSet<BitVector> = all_vectors(2 * n_a)
            .map(|v| inst.forward_z(&v))
            .collect::<clifford_hp::Result<_>>()?;
        let error = InjectedError::random(n_d, &mut rng);
        let out = run_local_protocol(&inst, Some(error), &mut rng)?;
        let leaves = !image.contains(&error.syndrome(n_d));
        ensure!(
            out.detected_error == leaves,
            "trial {trial}: detection {} but syndrome outside image is {leaves}",
            out.detected_error
        );
        let mut bad = 0;
        for d_index in 0..n_d {
            for kind in [PauliKind::X, PauliKind::Y, PauliKind::Z] {
                bad += !image.contains(&InjectedError { d_index, kind }.syndrome(n_d)) as usize;
            }
        }
        let p = bad as f64 / (3 * n_d) as f64;
        mean += p;
        var += p * (1.0 - p);
        detected += out.detected_error as usize;
    }
    let sigma = var.sqrt();
    let z = (detected as f64 - mean) / sigma;
    ensure!(z.abs() <= 3.0, "detected {detected}, expected {mean:.1} ± {sigma:.1}");
    Ok(format!(
        "detected {detected} of {trials}, expected {mean:.1} ± {sigma:.1} (z = {z:.2})"
    ))
}

fn criterion_10() -> Result<String> {
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        ensure!(f_matrix_inversion_check(n)?, "F-matrix inversion fails for n={n}");
        let w = wigner_orthonormality_check(n)?;
        let c = commutator_wavefunction_equals_wigner_choi(n)?;
        ensure!(w < 1e-12, "Wigner orthonormality deviates by {w:e} for n={n}");
        ensure!(c < 1e-12, "commutator wavefunction deviates by {c:e} for n={n}");
        worst = worst.max(w).max(c);
    }
    Ok(format!("n = 1, 2; max deviation {worst:.1e}"))
}

fn criterion_11() -> Result<String> {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut fractions = Vec::new();
    for n_d in 2..=5 {
        let config = EnsembleConfig {
            n: 10,
            n_a: 1,
            n_d,
            trials: 10_000,
            seed: 7,
            inject_error: false,
        };
        fractions.push((n_d, 1.0 - run_ensemble(&config, workers)?.recoverable_fraction_bell));
    }
    let summary = fractions
        .iter()
        .map(|(d, f)| format!("n_D={d}: {f:.4}"))
        .collect::<Vec<_>>()
        .join(", ");
    for w in fractions.windows(2) {
        let ((d0, f0), (d1, f1)) = (w[0], w[1]);
        if f1 > 0.0 {
            ensure!(
                f0 / f1 >= 3.0,
                "ratio {:.2} from n_D={d0} to n_D={d1} ({summary})",
                f0 / f1
            );
        } else {
            ensure!(f0 > 0.0 || d0 == 2, "failure fraction vanished early ({summary})");
        }
    }
    Ok(summary)
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_clifford-hp")).args(args).output()?;
    if !out.status.success() {
        bail!(
            "{:?} exited with {}: {}",
            args,
            out.status,
            String::from_utf8_lossy(&out.stderr)
        );
    }
    Ok(out.stdout)
}

fn criterion_12() -> Result<String> {
    let base = [
        "ensemble",
        "--n",
        "8",
        "--nd",
        "4",
        "--trials",
        "2000",
        "--seed",
        "12",
        "--inject-error",
        "--format",
        "csv",
    ];
    let with = |w: &'static str| [&base[..], &["--workers", w]].concat();
    let a = run_cli(&with("1"))?;
    let b = run_cli(&with("1"))?;
    let c = run_cli(&with("8"))?;
    ensure!(a == b, "two runs with one worker differ");
    ensure!(a == c, "one and eight workers differ");
    ensure!(
        a.iter().filter(|&&x| x == b'\n').count() == 2001,
        "unexpected row count"
    );
    Ok(format!("{} bytes identical over three runs", a.len()))
}

type Criterion = fn() -> Result<String>;

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    let selected: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (i, check) in criteria.iter().enumerate() {
        let id = i + 1;
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(_) => Err(anyhow::anyhow!("panicked")),
        };
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id}: PASS  {detail} ({secs:.1}s)"),
            Err(e) => {
                failures += 1;
                println!("criterion {id}: FAIL  {e:#} ({secs:.1}s)");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
