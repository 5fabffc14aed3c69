//! Logical operators on `D B̄` for the encoding
//! `Γ(ψ) = U_{AB}(|ψ⟩_A ⊗ |EPR⟩_{BB̄})`, and the sign identities behind
//! their existence.
//!
//! Code-register operators act on `n + n_B` qubits: the `U` output wires
//! `0..n` followed by `B̄`.

use std::fmt;

use crate::bits::BitVector;
use crate::error::{check_dim, Error, Result};
use crate::gf2::Gf2Matrix;
use crate::hp::HpInstance;
use crate::pauli::{PauliKind, PauliOperator};

/// `P̃_A = e^{-iθ} (Q_D ⊗ P_B̄)` with `θ = (π/2)·theta_phase`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalOperator {
    /// Hermitian, on the `n_D` qubits of `D`.
    pub q_d: PauliOperator,
    /// Hermitian, on the `n_B` qubits of `B̄`.
    pub p_bbar: PauliOperator,
    pub theta_phase: u8,
}

impl LogicalOperator {
    /// The operator on the code register, phase included.
    pub fn to_code_operator(&self, inst: &HpInstance) -> Result<PauliOperator> {
        let p = inst.partition();
        let width = p.n() + p.n_b;
        let bbar: Vec<usize> = (p.n()..width).collect();
        let op = self
            .q_d
            .embed(width, inst.d_wires())?
            .multiply(&self.p_bbar.embed(width, &bbar)?)?;
        let phase = op.phase() + 4 - self.theta_phase;
        Ok(op.with_phase(phase))
    }

    /// Coefficient `e^{-iθ}` as an exponent of `i`.
    pub fn coefficient_phase(&self) -> u8 {
        (4 - self.theta_phase) & 3
    }
}

impl fmt::Display for LogicalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = ["+1", "+i", "-1", "-i"][self.coefficient_phase() as usize];
        let bbar = if self.p_bbar.n() == 0 {
            "1".to_string()
        } else {
            self.p_bbar.letters()
        };
        write!(f, "{c} · {}(D) ⊗ {bbar}(B̄)", self.q_d.letters())
    }
}

fn check_input(inst: &HpInstance, p_a: &PauliOperator) -> Result<()> {
    check_dim(inst.partition().n_a, p_a.n())
}

fn logical_from_qd(inst: &HpInstance, p_a: &PauliOperator, q_bits: &BitVector) -> Result<LogicalOperator> {
    let n = inst.partition().n();
    let q_d = PauliOperator::from_symplectic(q_bits)?;
    let evolved = inst.tableau().conjugate_by_inverse(&q_d.embed(n, inst.d_wires())?)?;
    let a_part = evolved.extract(&inst.a_wires())?;
    if a_part.x() != p_a.x() || a_part.z() != p_a.z() {
        return Err(Error::ProtocolViolation(format!(
            "backward image {a_part} does not match {p_a} on A"
        )));
    }
    let omega_b = evolved.extract(&inst.b_wires())?.canonical_hermitian();
    // U†Q_D U = i^k X^x Z^z = i^(k-a-b) P_A ⊗ Ω_B, and Ω_B^T = (-1)^b Ω_B on B̄.
    let k = evolved.phase() as usize;
    let a = p_a.phase() as usize;
    let b = omega_b.phase() as usize;
    Ok(LogicalOperator {
        q_d,
        p_bbar: omega_b,
        theta_phase: ((k + 4 - a + b) & 3) as u8,
    })
}

/// Logical operator for `p_a` through `Ω_A`; needs perfect recoverability.
pub fn construct_logical(inst: &HpInstance, p_a: &PauliOperator) -> Result<LogicalOperator> {
    check_input(inst, p_a)?;
    if !inst.is_perfectly_recoverable() {
        return Err(Error::NotRecoverable(format!(
            "Λ_D has a {}-dimensional kernel",
            inst.kernel_dim_bell()
        )));
    }
    let q = inst
        .backward_find_qd(&p_a.symplectic_vector())?
        .ok_or_else(|| Error::NotRecoverable(format!("no Q_D evolves back to {p_a}")))?;
    logical_from_qd(inst, p_a, &q)
}

/// Logical operator whose `D` part is built from `Z`s only. Such a
/// representative exists for every `P_A` exactly when `Λ_Z` is one-to-one.
pub fn construct_logical_z(inst: &HpInstance, p_a: &PauliOperator) -> Result<LogicalOperator> {
    check_input(inst, p_a)?;
    let n_d = inst.partition().n_d;
    let z_cols: Vec<BitVector> = (n_d..2 * n_d).map(|c| inst.omega_a().column(c)).collect();
    let omega_z = Gf2Matrix::from_columns(2 * inst.partition().n_a, &z_cols)?;
    let z = omega_z
        .solve(&p_a.symplectic_vector())?
        .ok_or_else(|| Error::NotRecoverable(format!("no Z-type Q_D evolves back to {p_a}")))?;
    logical_from_qd(inst, p_a, &BitVector::zeros(n_d).concat(&z))
}

/// `U (X_{B_i}, Z_{B_i}) U† ⊗ (X, Z)_{B̄_i}` on the code register.
pub fn stabilizer_generators(inst: &HpInstance) -> Vec<PauliOperator> {
    let p = inst.partition();
    let n = p.n();
    let mut gens = Vec::with_capacity(2 * p.n_b);
    for kind in [PauliKind::X, PauliKind::Z] {
        for i in 0..p.n_b {
            let inner = PauliOperator::single(n, p.n_a + i, kind).unwrap();
            let image = inst.tableau().conjugate(&inner).unwrap();
            gens.push(image.tensor(&PauliOperator::single(p.n_b, i, kind).unwrap()));
        }
    }
    gens
}

/// `Some(k)` when `op = i^k g` for an element `g` of the stabilizer group.
pub fn stabilizer_membership(inst: &HpInstance, op: &PauliOperator) -> Result<Option<u8>> {
    let gens = stabilizer_generators(inst);
    let p = inst.partition();
    check_dim(p.n() + p.n_b, op.n())?;
    if gens.is_empty() {
        return Ok(op.is_identity_up_to_phase().then_some(op.phase()));
    }
    let cols: Vec<BitVector> = gens.iter().map(|g| g.symplectic_vector()).collect();
    let m = Gf2Matrix::from_columns(2 * op.n(), &cols)?;
    let Some(coeffs) = m.solve(&op.symplectic_vector())? else {
        return Ok(None);
    };
    let mut g = PauliOperator::identity(op.n());
    for i in coeffs.iter_ones() {
        g = g.multiply(&gens[i])?;
    }
    Ok(Some((op.phase() + 4 - g.phase()) & 3))
}

/// Whether some operator supported on `C` commutes with every stabilizer
/// generator without belonging to the stabilizer group.
pub fn logical_supported_on_c_exists(inst: &HpInstance) -> Result<bool> {
    let gens = stabilizer_generators(inst);
    let p = inst.partition();
    let width = p.n() + p.n_b;
    let c = inst.c_wires();
    // ⟨g, e⟩ for e supported on C, as a 2n_B × 2n_C matrix.
    let rows = gens
        .iter()
        .map(|g| {
            let r = g.extract(c)?;
            Ok(r.z().concat(r.x()))
        })
        .collect::<Result<Vec<_>>>()?;
    let commutant_dim = Gf2Matrix::from_rows(2 * c.len(), rows)?.kernel_dim();
    let outside: Vec<usize> = (0..width).filter(|w| !c.contains(w)).collect();
    let outside_rows = gens
        .iter()
        .map(|g| Ok(g.extract(&outside)?.symplectic_vector()))
        .collect::<Result<Vec<_>>>()?;
    let outside_rank = Gf2Matrix::from_rows(2 * outside.len(), outside_rows)?.rank();
    let stabilizers_on_c = gens.len() - outside_rank;
    Ok(commutant_dim > stabilizers_on_c)
}

/// `⟨P_A(t) Q_D P_A(t)† Q_D†⟩` with `P_A(t) = U P_A U†`.
pub fn otoc_alpha(inst: &HpInstance, p_a: &PauliOperator, q_d: &PauliOperator) -> Result<i8> {
    let p = inst.partition();
    check_dim(p.n_a, p_a.n())?;
    check_dim(p.n_d, q_d.n())?;
    let n = p.n();
    let evolved = inst.tableau().conjugate(&p_a.embed(n, &inst.a_wires())?)?;
    evolved.commutator_sign(&q_d.embed(n, inst.d_wires())?)
}

/// The same sign evaluated backwards: `⟨P_A Q_D(-t) P_A† Q_D(-t)†⟩`.
pub fn otoc_alpha_backward(inst: &HpInstance, p_a: &PauliOperator, q_d: &PauliOperator) -> Result<i8> {
    let p = inst.partition();
    check_dim(p.n_a, p_a.n())?;
    check_dim(p.n_d, q_d.n())?;
    let n = p.n();
    let evolved = inst.tableau().conjugate_by_inverse(&q_d.embed(n, inst.d_wires())?)?;
    p_a.embed(n, &inst.a_wires())?.commutator_sign(&evolved)
}

/// `F_{P,Q} = ⟨P Q P† Q†⟩ = (-1)^{⟨P,Q⟩}` for symplectic vectors.
pub fn f_sign(p: &BitVector, q: &BitVector) -> i64 {
    let n = p.len() / 2;
    let form = p.slice(0, n).and_count(&q.slice(n, n)) + p.slice(n, n).and_count(&q.slice(0, n));
    if form.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Largest `n_A + n_D` accepted by [`verify_existence_identity`].
pub const EXISTENCE_CHECK_MAX: usize = 5;

fn all_vectors(len: usize) -> Vec<BitVector> {
    (0..1u64 << len).map(|v| BitVector::from_u64(len, v)).collect()
}

/// Checks both sign-sum identities exhaustively in integer arithmetic:
/// `Σ_{P_A} F_{R_A,P_A} α_{P_A,Q_D} = d_A² δ_{Ω_A(Q_D),R_A}` and
/// `Σ_{Q_D} α_{P_A,Q_D} F_{Q_D,R_D} = d_D² δ_{Λ_D(P_A),R_D}`.
pub fn verify_existence_identity(inst: &HpInstance) -> Result<bool> {
    let p = inst.partition();
    if p.n_a + p.n_d > EXISTENCE_CHECK_MAX {
        return Err(Error::SizeLimit {
            what: "n_A + n_D for the exhaustive identity check",
            value: p.n_a + p.n_d,
            max: EXISTENCE_CHECK_MAX,
        });
    }
    let pas = all_vectors(2 * p.n_a);
    let qds = all_vectors(2 * p.n_d);
    let alpha = pas
        .iter()
        .map(|a| {
            let pa = PauliOperator::from_symplectic(a)?;
            qds.iter()
                .map(|q| otoc_alpha(inst, &pa, &PauliOperator::from_symplectic(q)?).map(i64::from))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let d_a2 = pas.len() as i64;
    let d_d2 = qds.len() as i64;

    for (qi, q) in qds.iter().enumerate() {
        let omega = inst.backward(q)?;
        for r in &pas {
            let sum: i64 = pas.iter().enumerate().map(|(ai, a)| f_sign(r, a) * alpha[ai][qi]).sum();
            if sum != d_a2 * i64::from(&omega == r) {
                return Ok(false);
            }
        }
    }
    for (ai, a) in pas.iter().enumerate() {
        let lambda = inst.forward(a)?;
        for r in &qds {
            let sum: i64 = qds.iter().enumerate().map(|(qi, q)| alpha[ai][qi] * f_sign(q, r)).sum();
            if sum != d_d2 * i64::from(&lambda == r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
