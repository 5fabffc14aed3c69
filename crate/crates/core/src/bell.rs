//! Deterministic recovery by generalized Bell measurement on `D D̄`.
//!
//! Bob holds `B̄` and prepares `|EPR⟩_{R̄A'}`, applies `U*` to `A'B̄` and
//! measures every pair `(D_j, D̄_j)` in the Bell basis. The outcome `Q_D`
//! is inverted through `Λ_D` and the resulting `P_A` is applied on `R̄`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{check_dim, Error, Result};
use crate::gf2::enumerate_span;
use crate::hp::{letters, HpInstance, HpLayout};
use crate::mixture::{KernelState, ENUMERATION_CAP};
use crate::pauli::{PauliKind, PauliOperator};
use crate::stabilizer::{extend, prepare_hp_state, StabilizerState};

/// Left inverse of `Λ_D` on its image.
#[derive(Clone, Debug)]
pub struct FeedbackTable<'a> {
    inst: &'a HpInstance,
    kernel: Vec<BitVector>,
}

impl<'a> FeedbackTable<'a> {
    pub fn new(inst: &'a HpInstance) -> Self {
        FeedbackTable {
            inst,
            kernel: inst.kernel_bell(),
        }
    }

    /// `P_A` with `Λ_D(P_A) = q_d`, free variables set to zero.
    pub fn lookup(&self, q_d: &BitVector) -> Result<Option<BitVector>> {
        check_dim(2 * self.inst.partition().n_d, q_d.len())?;
        self.inst.lambda_d_elimination().solve(q_d)
    }

    pub fn kernel(&self) -> &[BitVector] {
        &self.kernel
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryOutcome {
    pub measured_q_d: BitVector,
    pub feedback_p_a: BitVector,
    /// EPR fidelity of `R R̄` measured on the simulated state.
    pub fidelity: f64,
    /// `1 / N_{I_D}`.
    pub symbolic_fidelity: f64,
    /// Probability of the observed outcome.
    pub probability: f64,
    /// Basis of `ker Λ_D`, the `P_R` labels of the output mixture.
    pub output_kernel: Vec<BitVector>,
}

/// EPR pairs `(left_j, right_j)` as `±1` stabilizer generators `XX`, `ZZ`.
pub fn epr_generators(n: usize, left: &[usize], right: &[usize]) -> Vec<PauliOperator> {
    let mut gens = Vec::with_capacity(2 * left.len());
    for (&a, &b) in left.iter().zip(right) {
        for kind in [PauliKind::X, PauliKind::Z] {
            let pa = PauliOperator::single(n, a, kind).unwrap();
            let pb = PauliOperator::single(n, b, kind).unwrap();
            gens.push(pa.multiply(&pb).unwrap());
        }
    }
    gens
}

/// The full register after Bob's decoding unitary, before any measurement.
pub fn prepare_decoder_state(inst: &HpInstance, layout: &HpLayout) -> Result<StabilizerState> {
    let encoded = prepare_hp_state(inst.tableau(), inst.partition(), layout)?;
    let mut s = extend(&encoded, 2 * inst.partition().n_a);
    for (&r, &a) in layout.rbar.iter().zip(&layout.a_prime) {
        s.apply_gate(crate::circuit::Gate::H(r))?;
        s.apply_gate(crate::circuit::Gate::Cnot(r, a))?;
    }
    s.apply_clifford(&inst.tableau().complex_conjugate(), &layout.decoder_wires)?;
    Ok(s)
}

/// `⟨EPR|ρ_{RR̄}|EPR⟩` of a state on the protocol layout.
pub fn epr_fidelity(state: &StabilizerState, layout: &HpLayout) -> Result<f64> {
    state.projection_probability(&epr_generators(state.n(), &layout.r, &layout.rbar))
}

/// Applies the canonical Hermitian Pauli with symplectic vector `p_a` on `R̄`.
pub fn apply_feedback(state: &mut StabilizerState, layout: &HpLayout, p_a: &BitVector) -> Result<()> {
    let p = PauliOperator::from_symplectic(p_a)?;
    state.apply_pauli(&p, &layout.rbar)
}

fn bell_pair_observables(n: usize, layout: &HpLayout, j: usize) -> (PauliOperator, PauliOperator) {
    let g = epr_generators(n, &layout.d[j..=j], &layout.dbar[j..=j]);
    (g[0].clone(), g[1].clone())
}

/// Probability `N_{Q_D} / 4^{n_A}` of measuring `|Q_D⟩`.
pub fn bell_outcome_probability(inst: &HpInstance, q_d: &BitVector) -> Result<f64> {
    Ok(match inst.count_preimages_log2(q_d)? {
        None => 0.0,
        Some(k) => (k as f64 - 2.0 * inst.partition().n_a as f64).exp2(),
    })
}

/// Outcome distribution over the image of `Λ_D`; errors if the image has
/// more than `cap` elements.
pub fn bell_measurement_distribution(inst: &HpInstance, cap: usize) -> Result<BTreeMap<BitVector, f64>> {
    let basis = inst.image_basis_bell();
    let image = enumerate_span(2 * inst.partition().n_d, &basis, cap).ok_or(Error::SizeLimit {
        what: "Bell outcome support",
        value: basis.len(),
        max: cap.max(1).ilog2() as usize,
    })?;
    let p = (inst.kernel_dim_bell() as f64 - 2.0 * inst.partition().n_a as f64).exp2();
    Ok(image.into_iter().map(|q| (q, p)).collect())
}

fn finish(
    inst: &HpInstance,
    layout: &HpLayout,
    mut state: StabilizerState,
    q_d: BitVector,
    probability: f64,
) -> Result<RecoveryOutcome> {
    let table = FeedbackTable::new(inst);
    let p_a = table
        .lookup(&q_d)?
        .ok_or_else(|| Error::ProtocolViolation(format!("outcome {} is outside the image of Λ_D", letters(&q_d))))?;
    apply_feedback(&mut state, layout, &p_a)?;
    Ok(RecoveryOutcome {
        fidelity: epr_fidelity(&state, layout)?,
        symbolic_fidelity: (-(inst.kernel_dim_bell() as f64)).exp2(),
        measured_q_d: q_d,
        feedback_p_a: p_a,
        probability,
        output_kernel: table.kernel,
    })
}

/// Runs the protocol with sampled measurement outcomes.
pub fn run_bell_protocol<R: Rng + ?Sized>(inst: &HpInstance, rng: &mut R) -> Result<RecoveryOutcome> {
    let layout = inst.layout();
    let mut state = prepare_decoder_state(inst, &layout)?;
    let n_d = inst.partition().n_d;
    let mut q_d = BitVector::zeros(2 * n_d);
    let mut probability = 1.0;
    for j in 0..n_d {
        let (xx, zz) = bell_pair_observables(state.n(), &layout, j);
        let a = state.measure_pauli(&xx, rng)?;
        let b = state.measure_pauli(&zz, rng)?;
        q_d.set(n_d + j, a.outcome < 0);
        q_d.set(j, b.outcome < 0);
        probability *= if a.random { 0.5 } else { 1.0 };
        probability *= if b.random { 0.5 } else { 1.0 };
    }
    finish(inst, &layout, state, q_d, probability)
}

/// Post-selects the outcome `|q_d⟩`; errors if it has probability zero.
pub fn run_bell_protocol_forced(inst: &HpInstance, q_d: &BitVector) -> Result<RecoveryOutcome> {
    check_dim(2 * inst.partition().n_d, q_d.len())?;
    let layout = inst.layout();
    let (state, probability) = forced_bell_state(inst, &layout, q_d)?;
    if probability == 0.0 {
        return Err(Error::ImpossibleOutcome);
    }
    finish(inst, &layout, state, q_d.clone(), probability)
}

fn forced_bell_state(inst: &HpInstance, layout: &HpLayout, q_d: &BitVector) -> Result<(StabilizerState, f64)> {
    let mut state = prepare_decoder_state(inst, layout)?;
    let n_d = inst.partition().n_d;
    let sign = |bit: bool| if bit { -1 } else { 1 };
    let mut probability = 1.0;
    for j in 0..n_d {
        let (xx, zz) = bell_pair_observables(state.n(), layout, j);
        probability *= state.measure_pauli_forced(&xx, sign(q_d.get(n_d + j)))?;
        probability *= state.measure_pauli_forced(&zz, sign(q_d.get(j)))?;
        if probability == 0.0 {
            break;
        }
    }
    Ok((state, probability))
}

/// Born probability of `|q_d⟩` computed on the simulated state.
pub fn simulated_outcome_probability(inst: &HpInstance, q_d: &BitVector) -> Result<f64> {
    check_dim(2 * inst.partition().n_d, q_d.len())?;
    Ok(forced_bell_state(inst, &inst.layout(), q_d)?.1)
}

/// `ρ_{RR̄} = (1/N_{I_D}) Σ_{P_R ∈ ker Λ_D} |P_R⟩⟨P_R|`.
pub fn output_state(inst: &HpInstance) -> KernelState {
    KernelState::new(2 * inst.partition().n_a, inst.kernel_bell(), ENUMERATION_CAP)
}

#[derive(Clone, Debug, Serialize)]
pub struct BellReport {
    pub n: usize,
    pub n_a: usize,
    pub n_d: usize,
    pub d_wires: Vec<usize>,
    pub perfectly_recoverable: bool,
    pub kernel_dim: usize,
    pub measured_q_d: String,
    pub feedback_p_a: String,
    pub probability: f64,
    pub fidelity: f64,
    pub symbolic_fidelity: f64,
}

impl BellReport {
    pub fn new(inst: &HpInstance, outcome: &RecoveryOutcome) -> Self {
        let p = inst.partition();
        BellReport {
            n: p.n(),
            n_a: p.n_a,
            n_d: p.n_d,
            d_wires: inst.d_wires().to_vec(),
            perfectly_recoverable: inst.is_perfectly_recoverable(),
            kernel_dim: inst.kernel_dim_bell(),
            measured_q_d: letters(&outcome.measured_q_d),
            feedback_p_a: letters(&outcome.feedback_p_a),
            probability: outcome.probability,
            fidelity: outcome.fidelity,
            symbolic_fidelity: outcome.symbolic_fidelity,
        }
    }
}
