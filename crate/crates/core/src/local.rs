//! Teleportation-style recovery from local `Z` measurements on `D` and `D̄`.
//!
//! The syndrome `s = m ⊕ m̄` is inverted through `Λ_Z`; a syndrome outside
//! its image flags an error.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::bell::{apply_feedback, epr_fidelity, prepare_decoder_state};
use crate::bits::BitVector;
use crate::error::{check_dim, Error, Result};
use crate::gf2::enumerate_span;
use crate::hp::{letters, HpInstance, HpLayout};
use crate::mixture::{KernelState, ENUMERATION_CAP};
use crate::pauli::{PauliKind, PauliOperator};
use crate::stabilizer::StabilizerState;

/// A single-qubit Pauli applied to `D_j` before the measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InjectedError {
    pub d_index: usize,
    pub kind: PauliKind,
}

impl InjectedError {
    /// The `Λ_Z`-syndrome this error adds: bit `j` is set for `X` or `Y`.
    pub fn syndrome(&self, n_d: usize) -> BitVector {
        let mut s = BitVector::zeros(n_d);
        s.set(self.d_index, self.kind.bits().0);
        s
    }

    pub fn random<R: Rng + ?Sized>(n_d: usize, rng: &mut R) -> Self {
        let kind = [PauliKind::X, PauliKind::Y, PauliKind::Z][rng.random_range(0..3)];
        InjectedError {
            d_index: rng.random_range(0..n_d),
            kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOutcome {
    pub m: BitVector,
    pub m_bar: BitVector,
    pub s: BitVector,
    pub feedback_p_a: Option<BitVector>,
    /// EPR fidelity of `R R̄` on the simulated state.
    pub fidelity: f64,
    /// `1 / N_0` when no error was detected.
    pub symbolic_fidelity: Option<f64>,
    pub detected_error: bool,
    pub probability: f64,
}

/// `true` when `s` is not a possible noiseless syndrome.
pub fn detect_error(inst: &HpInstance, s: &BitVector) -> Result<bool> {
    check_dim(inst.partition().n_d, s.len())?;
    Ok(inst.lambda_z_elimination().solve(s)?.is_none())
}

/// `(1/d_D)(1/d_A²) N_s` for the outcome pair `(m, m̄)`.
pub fn local_outcome_probability(inst: &HpInstance, m: &BitVector, m_bar: &BitVector) -> Result<f64> {
    let p = inst.partition();
    check_dim(p.n_d, m.len())?;
    check_dim(p.n_d, m_bar.len())?;
    let s = m.xor(m_bar);
    Ok(match inst.lambda_z_elimination().solve(&s)? {
        None => 0.0,
        Some(_) => (inst.kernel_dim_local() as f64 - p.n_d as f64 - 2.0 * p.n_a as f64).exp2(),
    })
}

/// Every `(m, m̄)` with nonzero probability; errors past `cap` entries.
pub fn local_distribution(inst: &HpInstance, cap: usize) -> Result<BTreeMap<(BitVector, BitVector), f64>> {
    let n_d = inst.partition().n_d;
    let too_big = Error::SizeLimit {
        what: "local outcome support",
        value: n_d + inst.lambda_z_elimination().rank(),
        max: cap.max(1).ilog2() as usize,
    };
    if n_d >= 63 || (1usize << n_d) > cap {
        return Err(too_big);
    }
    let syndromes = enumerate_span(n_d, &inst.image_basis_local(), cap >> n_d).ok_or(too_big)?;
    let mut out = BTreeMap::new();
    for m_int in 0..(1u64 << n_d) {
        let m = BitVector::from_u64(n_d, m_int);
        for s in &syndromes {
            let m_bar = m.xor(s);
            let p = local_outcome_probability(inst, &m, &m_bar)?;
            out.insert((m.clone(), m_bar), p);
        }
    }
    Ok(out)
}

fn z_on(n: usize, q: usize) -> PauliOperator {
    PauliOperator::single(n, q, PauliKind::Z).unwrap()
}

fn inject(state: &mut StabilizerState, layout: &HpLayout, error: Option<InjectedError>) -> Result<()> {
    if let Some(e) = error {
        if e.d_index >= layout.d.len() {
            return Err(Error::IndexOutOfRange {
                index: e.d_index,
                n: layout.d.len(),
            });
        }
        let p = PauliOperator::single(1, 0, e.kind)?;
        state.apply_pauli(&p, &[layout.d[e.d_index]])?;
    }
    Ok(())
}

fn finish(
    inst: &HpInstance,
    layout: &HpLayout,
    mut state: StabilizerState,
    m: BitVector,
    m_bar: BitVector,
    probability: f64,
) -> Result<LocalOutcome> {
    let s = m.xor(&m_bar);
    let feedback = inst.lambda_z_elimination().solve(&s)?;
    if let Some(p_a) = &feedback {
        apply_feedback(&mut state, layout, p_a)?;
    }
    Ok(LocalOutcome {
        fidelity: epr_fidelity(&state, layout)?,
        symbolic_fidelity: feedback.as_ref().map(|_| (-(inst.kernel_dim_local() as f64)).exp2()),
        detected_error: feedback.is_none(),
        feedback_p_a: feedback,
        m,
        m_bar,
        s,
        probability,
    })
}

/// Runs the protocol, optionally with a Pauli error on `D` before measuring.
pub fn run_local_protocol<R: Rng + ?Sized>(
    inst: &HpInstance,
    error: Option<InjectedError>,
    rng: &mut R,
) -> Result<LocalOutcome> {
    let layout = inst.layout();
    let mut state = prepare_decoder_state(inst, &layout)?;
    inject(&mut state, &layout, error)?;
    let n = state.n();
    let n_d = inst.partition().n_d;
    let mut m = BitVector::zeros(n_d);
    let mut m_bar = BitVector::zeros(n_d);
    let mut probability = 1.0;
    for (bits, wires) in [(&mut m, &layout.d), (&mut m_bar, &layout.dbar)] {
        for (j, &q) in wires.iter().enumerate() {
            let r = state.measure_pauli(&z_on(n, q), rng)?;
            bits.set(j, r.outcome < 0);
            if r.random {
                probability *= 0.5;
            }
        }
    }
    finish(inst, &layout, state, m, m_bar, probability)
}

fn forced_local_state(
    inst: &HpInstance,
    layout: &HpLayout,
    m: &BitVector,
    m_bar: &BitVector,
) -> Result<(StabilizerState, f64)> {
    let n_d = inst.partition().n_d;
    check_dim(n_d, m.len())?;
    check_dim(n_d, m_bar.len())?;
    let mut state = prepare_decoder_state(inst, layout)?;
    let n = state.n();
    let mut probability = 1.0;
    for (bits, wires) in [(m, &layout.d), (m_bar, &layout.dbar)] {
        for (j, &q) in wires.iter().enumerate() {
            let outcome = if bits.get(j) { -1 } else { 1 };
            probability *= state.measure_pauli_forced(&z_on(n, q), outcome)?;
            if probability == 0.0 {
                return Ok((state, 0.0));
            }
        }
    }
    Ok((state, probability))
}

/// Post-selects `(m, m̄)`; errors if the pair has probability zero.
pub fn run_local_protocol_forced(inst: &HpInstance, m: &BitVector, m_bar: &BitVector) -> Result<LocalOutcome> {
    let layout = inst.layout();
    let (state, probability) = forced_local_state(inst, &layout, m, m_bar)?;
    if probability == 0.0 {
        return Err(Error::ImpossibleOutcome);
    }
    finish(inst, &layout, state, m.clone(), m_bar.clone(), probability)
}

/// Born probability of `(m, m̄)` computed on the simulated state.
pub fn simulated_local_probability(inst: &HpInstance, m: &BitVector, m_bar: &BitVector) -> Result<f64> {
    Ok(forced_local_state(inst, &inst.layout(), m, m_bar)?.1)
}

/// `ρ_{RR̄} = (1/N_0) Σ_{P_R ∈ ker Λ_Z} |P_R⟩⟨P_R|`.
pub fn output_state_local(inst: &HpInstance) -> KernelState {
    KernelState::new(2 * inst.partition().n_a, inst.kernel_local(), ENUMERATION_CAP)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalReport {
    pub n: usize,
    pub n_a: usize,
    pub n_d: usize,
    pub locally_recoverable: bool,
    pub kernel_dim: usize,
    pub m: BitVector,
    pub m_bar: BitVector,
    pub s: BitVector,
    pub feedback: Option<String>,
    pub probability: f64,
    pub fidelity: f64,
    pub symbolic_fidelity: Option<f64>,
    pub detected_error: bool,
}

impl LocalReport {
    pub fn new(inst: &HpInstance, outcome: &LocalOutcome) -> Self {
        let p = inst.partition();
        LocalReport {
            n: p.n(),
            n_a: p.n_a,
            n_d: p.n_d,
            locally_recoverable: inst.is_locally_recoverable(),
            kernel_dim: inst.kernel_dim_local(),
            m: outcome.m.clone(),
            m_bar: outcome.m_bar.clone(),
            s: outcome.s.clone(),
            feedback: outcome.feedback_p_a.as_ref().map(letters),
            probability: outcome.probability,
            fidelity: outcome.fidelity,
            symbolic_fidelity: outcome.symbolic_fidelity,
            detected_error: outcome.detected_error,
        }
    }
}
