use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use clifford_hp::bell::{run_bell_protocol, BellReport};
use clifford_hp::ensemble::{run_ensemble, EnsembleConfig};
use clifford_hp::hp::letters;
use clifford_hp::local::{run_local_protocol, InjectedError, LocalReport};
use clifford_hp::logical::{construct_logical, stabilizer_generators};
use clifford_hp::wigner::appendix_report;
use clifford_hp::{Circuit, CliffordTableau, HpInstance, Partition, PauliKind, PauliOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::{AppendixArgs, EnsembleArgs, Format, InstanceArgs, LocalArgs, OutputArgs, Protocol, RecoverArgs};

pub enum Status {
    Success,
    VerificationFailed,
}

#[derive(Serialize)]
struct InstanceSummary {
    source: String,
    seed: u64,
    n: usize,
    n_a: usize,
    n_b: usize,
    n_c: usize,
    n_d: usize,
    d_wires: Vec<usize>,
    kernel_dim_bell: usize,
    kernel_dim_local: usize,
    perfectly_recoverable: bool,
    locally_recoverable: bool,
    entropy_rc_bits: usize,
}

struct Loaded {
    inst: HpInstance,
    rng: ChaCha8Rng,
    summary: InstanceSummary,
}

fn check_nb(n: usize, n_a: usize, n_b: Option<usize>) -> Result<()> {
    if let Some(n_b) = n_b {
        if n_a + n_b != n {
            bail!("invalid partition: n_A + n_B = {} but n = {n}", n_a + n_b);
        }
    }
    Ok(())
}

fn load(args: &InstanceArgs) -> Result<Loaded> {
    let seed = args.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u, source) = if let Some(path) = &args.gates {
        let text = fs::read_to_string(path).with_context(|| format!("reading gate list {}", path.display()))?;
        let circuit = Circuit::parse(&text, args.n).with_context(|| format!("parsing {}", path.display()))?;
        (
            CliffordTableau::from_circuit(&circuit),
            format!("gates:{}", path.display()),
        )
    } else if let Some(path) = &args.tableau {
        let text = fs::read_to_string(path).with_context(|| format!("reading tableau {}", path.display()))?;
        let u = CliffordTableau::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(n) = args.n {
            if n != u.n() {
                bail!("--n {n} disagrees with the {}-qubit tableau", u.n());
            }
        }
        (u, format!("tableau:{}", path.display()))
    } else {
        let n = args.n.context("--n is required for a random Clifford")?;
        (CliffordTableau::random(n, &mut rng), "random".to_string())
    };
    let n = u.n();
    check_nb(n, args.n_a, args.n_b)?;
    let part = Partition::from_sizes(n, args.n_a, args.n_d)?;
    let inst = match &args.d_wires {
        Some(w) => HpInstance::build_with_d(u, part, w.clone())?,
        None => HpInstance::build(u, part)?,
    };
    let summary = InstanceSummary {
        source,
        seed,
        n,
        n_a: part.n_a,
        n_b: part.n_b,
        n_c: part.n_c,
        n_d: part.n_d,
        d_wires: inst.d_wires().to_vec(),
        kernel_dim_bell: inst.kernel_dim_bell(),
        kernel_dim_local: inst.kernel_dim_local(),
        perfectly_recoverable: inst.is_perfectly_recoverable(),
        locally_recoverable: inst.is_locally_recoverable(),
        entropy_rc_bits: inst.entropy_rc_bits(),
    };
    Ok(Loaded { inst, rng, summary })
}

fn format_or(out: &OutputArgs, default: Format) -> Format {
    out.format.unwrap_or(default)
}

fn emit(out: &OutputArgs, mut content: String) -> Result<()> {
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match &out.out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable")
}

fn no_csv(out: &OutputArgs) -> Result<()> {
    if out.format == Some(Format::Csv) {
        bail!("csv output is only available for ensemble");
    }
    Ok(())
}

pub fn cmd_recover_bell(args: &RecoverArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let Loaded { inst, mut rng, summary } = load(&args.instance)?;
    let outcome = run_bell_protocol(&inst, &mut rng)?;
    let report = BellReport::new(&inst, &outcome);
    let text = match format_or(&args.output, Format::Json) {
        Format::Text => format!(
            "measured Q_D = {}\nfeedback P_A on R̄ = {}\nfidelity = {} (1/N_I = {})\n",
            report.measured_q_d, report.feedback_p_a, report.fidelity, report.symbolic_fidelity
        ),
        _ => pretty(&json!({ "instance": summary, "outcome": report })),
    };
    emit(&args.output, text)?;
    Ok(Status::Success)
}

pub fn cmd_recover_local(args: &LocalArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let Loaded { inst, mut rng, summary } = load(&args.instance)?;
    let error =
        (args.inject_error && inst.partition().n_d > 0).then(|| InjectedError::random(inst.partition().n_d, &mut rng));
    let outcome = run_local_protocol(&inst, error, &mut rng)?;
    let report = LocalReport::new(&inst, &outcome);
    let injected = error.map(|e| json!({ "d_index": e.d_index, "pauli": e.kind.letter().to_string() }));
    let text = match format_or(&args.output, Format::Json) {
        Format::Text => format!(
            "m = {}\nm̄ = {}\ns = {}\nfeedback = {}\nfidelity = {}\ndetected_error = {}\n",
            report.m,
            report.m_bar,
            report.s,
            report.feedback.as_deref().unwrap_or("none"),
            report.fidelity,
            report.detected_error
        ),
        _ => pretty(&json!({ "instance": summary, "injected_error": injected, "outcome": report })),
    };
    emit(&args.output, text)?;
    Ok(Status::Success)
}

pub fn cmd_ensemble(args: &EnsembleArgs) -> Result<Status> {
    check_nb(args.n, args.n_a, args.n_b)?;
    let config = EnsembleConfig {
        n: args.n,
        n_a: args.n_a,
        n_d: args.n_d,
        trials: args.trials,
        seed: args.seed.unwrap_or_else(rand::random),
        inject_error: args.inject_error,
    };
    let report = run_ensemble(&config, args.workers)?;
    let text = match format_or(&args.output, Format::Json) {
        Format::Csv => report.to_csv()?,
        Format::Json => report.to_json(),
        Format::Text => {
            let (label, fraction) = match args.protocol {
                Protocol::Bell => ("bell", report.recoverable_fraction_bell),
                Protocol::Local => ("local", report.recoverable_fraction_local),
            };
            let mut s = format!(
                "n={} n_A={} n_D={} trials={} seed={}\nrecoverable fraction ({label}) = {fraction}\nmean fidelity (bell) = {}\nmean fidelity (local) = {}\n",
                config.n, config.n_a, config.n_d, config.trials, config.seed, report.mean_fidelity, report.mean_fidelity_local
            );
            if let Some(rate) = report.detection_rate {
                writeln!(s, "detection rate = {rate}").unwrap();
            }
            s
        }
    };
    emit(&args.output, text)?;
    Ok(Status::Success)
}

fn input_generators(n_a: usize) -> Vec<(String, PauliOperator)> {
    let mut out = Vec::new();
    for kind in [PauliKind::X, PauliKind::Z] {
        for j in 0..n_a {
            out.push((
                format!("{}_A{j}", kind.letter()),
                PauliOperator::single(n_a, j, kind).unwrap(),
            ));
        }
    }
    out
}

pub fn cmd_logical(args: &RecoverArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let Loaded { inst, summary, .. } = load(&args.instance)?;
    let stabilizers: Vec<String> = stabilizer_generators(&inst).iter().map(|g| g.to_string()).collect();
    let mut logicals = Vec::new();
    if inst.is_perfectly_recoverable() {
        for (name, p) in input_generators(inst.partition().n_a) {
            let l = construct_logical(&inst, &p)?;
            logicals.push(json!({
                "input": name,
                "q_d": l.q_d.to_string(),
                "p_bbar": l.p_bbar.to_string(),
                "theta_phase": l.theta_phase,
                "operator": l.to_string(),
            }));
        }
    }
    let text = match format_or(&args.output, Format::Json) {
        Format::Text => {
            let mut s = String::new();
            if inst.is_perfectly_recoverable() {
                for l in &logicals {
                    writeln!(
                        s,
                        "{} -> {}",
                        l["input"].as_str().unwrap(),
                        l["operator"].as_str().unwrap()
                    )
                    .unwrap();
                }
            } else {
                writeln!(
                    s,
                    "not perfectly recoverable: ker Λ_D has dimension {}",
                    inst.kernel_dim_bell()
                )
                .unwrap();
            }
            writeln!(s, "stabilizer generators on [CD | B̄]:").unwrap();
            for g in &stabilizers {
                writeln!(s, "  {g}").unwrap();
            }
            s
        }
        _ => pretty(&json!({ "instance": summary, "logicals": logicals, "stabilizers": stabilizers })),
    };
    emit(&args.output, text)?;
    Ok(if inst.is_perfectly_recoverable() {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

pub fn cmd_verify_appendix(args: &AppendixArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let rows = appendix_report(args.n, args.tolerance)?;
    let all = rows.iter().all(|r| r.passed);
    let text = match format_or(&args.output, Format::Text) {
        Format::Json => pretty(&json!({ "n": args.n, "tolerance": args.tolerance, "passed": all, "checks": rows })),
        _ => {
            let mut s = format!("{:<40} {:>2} {:>12}  result\n", "check", "n", "max_dev");
            for r in &rows {
                writeln!(
                    s,
                    "{:<40} {:>2} {:>12.3e}  {}",
                    r.check,
                    r.n,
                    r.max_deviation,
                    if r.passed { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            s
        }
    };
    emit(&args.output, text)?;
    Ok(if all {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

fn matrix_lines(m: &clifford_hp::Gf2Matrix) -> String {
    (0..m.rows()).map(|r| format!("    {}\n", m.row(r))).collect()
}

pub fn cmd_demo(args: &RecoverArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let Loaded { inst, mut rng, summary } = load(&args.instance)?;
    if format_or(&args.output, Format::Text) == Format::Json {
        let bell = run_bell_protocol(&inst, &mut rng)?;
        let local = run_local_protocol(&inst, None, &mut rng)?;
        let text = pretty(&json!({
            "instance": summary,
            "bell": BellReport::new(&inst, &bell),
            "local": LocalReport::new(&inst, &local),
        }));
        emit(&args.output, text)?;
        return Ok(Status::Success);
    }
    let p = inst.partition();
    let mut s = String::new();
    writeln!(
        s,
        "Clifford on n = {} qubits ({}), seed {}",
        p.n(),
        summary.source,
        summary.seed
    )
    .unwrap();
    writeln!(s, "A = wires 0..{}, D = output wires {:?}", p.n_a, inst.d_wires()).unwrap();
    writeln!(
        s,
        "\nΛ_D ({} × {}), columns X_A then Z_A, rows x|z on D:",
        2 * p.n_d,
        2 * p.n_a
    )
    .unwrap();
    s.push_str(&matrix_lines(inst.lambda_d()));
    writeln!(
        s,
        "ker Λ_D has dimension {}, so N_I = 2^{}",
        inst.kernel_dim_bell(),
        inst.kernel_dim_bell()
    )
    .unwrap();
    writeln!(s, "S(RC) = {} bits", inst.entropy_rc_bits()).unwrap();
    writeln!(
        s,
        "perfect recovery from D B̄: {}",
        if inst.is_perfectly_recoverable() { "yes" } else { "no" }
    )
    .unwrap();

    let bell = run_bell_protocol(&inst, &mut rng)?;
    writeln!(
        s,
        "\nBell measurement on D D̄ gave Q_D = {}",
        letters(&bell.measured_q_d)
    )
    .unwrap();
    writeln!(s, "  probability {}", bell.probability).unwrap();
    writeln!(s, "  feedback P_A = {} applied on R̄", letters(&bell.feedback_p_a)).unwrap();
    writeln!(
        s,
        "  EPR fidelity of R R̄ = {} (expected {})",
        bell.fidelity, bell.symbolic_fidelity
    )
    .unwrap();

    writeln!(s, "\nΛ_Z ({} × {}):", p.n_d, 2 * p.n_a).unwrap();
    s.push_str(&matrix_lines(inst.lambda_z()));
    let local = run_local_protocol(&inst, None, &mut rng)?;
    writeln!(
        s,
        "local Z measurements: m = {}, m̄ = {}, s = {}",
        local.m, local.m_bar, local.s
    )
    .unwrap();
    match &local.feedback_p_a {
        Some(f) => writeln!(s, "  feedback P_A = {} applied on R̄", letters(f)).unwrap(),
        None => writeln!(s, "  syndrome outside the image of Λ_Z: error detected").unwrap(),
    }
    writeln!(s, "  EPR fidelity of R R̄ = {}", local.fidelity).unwrap();

    if inst.is_perfectly_recoverable() {
        writeln!(s, "\nlogical operators:").unwrap();
        for (name, p_a) in input_generators(p.n_a) {
            writeln!(s, "  {name} -> {}", construct_logical(&inst, &p_a)?).unwrap();
        }
    }
    emit(&args.output, s)?;
    Ok(Status::Success)
}

pub fn cmd_dump_instance(args: &RecoverArgs) -> Result<Status> {
    no_csv(&args.output)?;
    let Loaded { inst, summary, .. } = load(&args.instance)?;
    let text = pretty(&json!({ "summary": summary, "instance": inst.to_json() }));
    emit(&args.output, text)?;
    Ok(Status::Success)
}
