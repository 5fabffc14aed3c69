//! Sign matrices, commutator wavefunctions and Wigner operators, checked
//! exhaustively at small size.
//!
//! Paulis are indexed by their symplectic vector read as an integer (bit
//! `j` of the index is entry `j` of `(x | z)`), and every label is the
//! Hermitian representative with `+1` sign.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::bits::BitVector;
use crate::dense::{choi_vector, pauli_matrix, C64};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub const F_MATRIX_MAX_QUBITS: usize = 4;
pub const WIGNER_MAX_QUBITS: usize = 3;

fn limit(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::SizeLimit { what, value: n, max });
    }
    Ok(())
}

/// `(-1)^{⟨p,q⟩}` for Pauli indices on `n` qubits.
fn sign(n: usize, p: u64, q: u64) -> i64 {
    let mask = (1u64 << n) - 1;
    let form = ((p & mask) & (q >> n)).count_ones() + ((p >> n) & (q & mask)).count_ones();
    1 - 2 * (form & 1) as i64
}

/// The Hermitian Pauli with index `i`.
pub fn pauli_label(n: usize, index: u64) -> PauliOperator {
    PauliOperator::from_symplectic(&BitVector::from_u64(2 * n, index)).expect("even length")
}

/// `F_{P,Q}` from the group commutator of the labelled operators.
pub fn f_entry(n: usize, p: u64, q: u64) -> i8 {
    pauli_label(n, p)
        .commutator_sign(&pauli_label(n, q))
        .expect("same width")
}

/// `Σ_Q F_{P,Q} F_{Q,R} = d² δ_{P,R}` for every pair, in integers.
pub fn f_matrix_inversion_check(n: usize) -> Result<bool> {
    limit("qubits for the F-matrix check", n, F_MATRIX_MAX_QUBITS)?;
    let size = 1u64 << (2 * n);
    for p in 0..size {
        for r in 0..size {
            let sum: i64 = (0..size).map(|q| sign(n, p, q) * sign(n, q, r)).sum();
            if sum != if p == r { size as i64 } else { 0 } {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `F_{P,Q} = F_{Q,P}` for every pair, using the operator commutator.
pub fn f_symmetry_check(n: usize) -> Result<bool> {
    limit("qubits for the F-symmetry check", n, WIGNER_MAX_QUBITS)?;
    let size = 1u64 << (2 * n);
    for p in 0..size {
        for q in 0..=p {
            let pq = f_entry(n, p, q);
            if pq != f_entry(n, q, p) || i64::from(pq) != sign(n, p, q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|ψ_u⟩ = Σ_Q (F_{T_u,Q}/d) |Q⟩` in the Choi basis `|Q⟩ = (Q⊗I)|EPR⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorWavefunction {
    pub n: usize,
    pub u_label: PauliOperator,
    /// `F_{T_u,Q}` for every `Q` in index order.
    pub signs: Vec<i8>,
}

impl CommutatorWavefunction {
    pub fn new(n: usize, u: u64) -> Self {
        let size = 1u64 << (2 * n);
        CommutatorWavefunction {
            n,
            u_label: pauli_label(n, u),
            signs: (0..size).map(|q| f_entry(n, u, q)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        1 << self.n
    }

    pub fn coefficient(&self, q: usize) -> f64 {
        f64::from(self.signs[q]) / self.d() as f64
    }

    /// `d² ⟨ψ_u|ψ_v⟩`, an exact integer.
    pub fn scaled_overlap(&self, other: &CommutatorWavefunction) -> i64 {
        self.signs
            .iter()
            .zip(&other.signs)
            .map(|(&a, &b)| i64::from(a) * i64::from(b))
            .sum()
    }

    /// The vector `Σ_Q c_Q (Q⊗I)|EPR⟩` on `2n` qubits.
    pub fn to_dense(&self) -> Result<DVector<C64>> {
        let mut v = DVector::zeros(1 << (2 * self.n));
        for (q, &s) in self.signs.iter().enumerate() {
            let basis = choi_vector(&pauli_matrix(&pauli_label(self.n, q as u64))?)?;
            v += basis * C64::new(f64::from(s) / self.d() as f64, 0.0);
        }
        Ok(v)
    }
}

/// `W_u = (1/d) Σ_Q T_u Q T_u†` as a dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerOperator {
    pub u_label: PauliOperator,
    pub matrix: DMatrix<C64>,
}

impl WignerOperator {
    pub fn new(n: usize, u: u64) -> Result<Self> {
        limit("qubits for dense Wigner operators", n, WIGNER_MAX_QUBITS)?;
        let d = 1usize << n;
        let t = pauli_matrix(&pauli_label(n, u))?;
        let t_dag = t.adjoint();
        let mut w = DMatrix::zeros(d, d);
        for q in 0..1u64 << (2 * n) {
            w += &t * pauli_matrix(&pauli_label(n, q))? * &t_dag;
        }
        Ok(WignerOperator {
            u_label: pauli_label(n, u),
            matrix: w / C64::new(d as f64, 0.0),
        })
    }

    /// `⟨W_u|W_v⟩ = Tr(W_u† W_v) / d`.
    pub fn overlap(&self, other: &WignerOperator) -> C64 {
        let d = self.matrix.nrows() as f64;
        (self.matrix.adjoint() * &other.matrix).trace() / d
    }

    pub fn choi(&self) -> Result<DVector<C64>> {
        choi_vector(&self.matrix)
    }
}

fn wigner_set(n: usize) -> Result<Vec<WignerOperator>> {
    limit("qubits for dense Wigner operators", n, WIGNER_MAX_QUBITS)?;
    (0..1u64 << (2 * n)).map(|u| WignerOperator::new(n, u)).collect()
}

/// `max |⟨W_u|W_v⟩ - δ_{u,v}|` over all pairs.
pub fn wigner_orthonormality_check(n: usize) -> Result<f64> {
    let ws = wigner_set(n)?;
    let mut worst: f64 = 0.0;
    for (i, wu) in ws.iter().enumerate() {
        for (j, wv) in ws.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((wu.overlap(wv) - C64::new(target, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// `max ‖|ψ_u⟩ - (W_u ⊗ I)|EPR⟩‖` over all `u`.
pub fn commutator_wavefunction_equals_wigner_choi(n: usize) -> Result<f64> {
    let ws = wigner_set(n)?;
    let mut worst: f64 = 0.0;
    for (u, w) in ws.iter().enumerate() {
        let psi = CommutatorWavefunction::new(n, u as u64).to_dense()?;
        worst = worst.max((psi - w.choi()?).norm());
    }
    Ok(worst)
}

/// Orthonormality of the commutator wavefunctions computed from the sign
/// sums and from the dense Wigner Choi states; returns the largest
/// disagreement between the two Gram matrices.
pub fn proof_chain_check(n: usize) -> Result<f64> {
    let ws = wigner_set(n)?;
    let psis: Vec<CommutatorWavefunction> = (0..ws.len() as u64)
        .map(|u| CommutatorWavefunction::new(n, u))
        .collect();
    let chois = ws.iter().map(|w| w.choi()).collect::<Result<Vec<_>>>()?;
    let d2 = (1u64 << (2 * n)) as f64;
    let mut worst: f64 = 0.0;
    for (i, a) in psis.iter().enumerate() {
        for (j, b) in psis.iter().enumerate() {
            let exact = a.scaled_overlap(b) as f64 / d2;
            let dense = chois[i].dotc(&chois[j]);
            worst = worst.max((dense - C64::new(exact, 0.0)).norm());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixRow {
    pub check: &'static str,
    pub n: usize,
    pub passed: bool,
    pub max_deviation: f64,
}

/// Runs every appendix check at size `n`.
pub fn appendix_report(n: usize, tolerance: f64) -> Result<Vec<AppendixRow>> {
    let f_ok = f_matrix_inversion_check(n)?;
    let mut rows = vec![AppendixRow {
        check: "f_matrix_inversion",
        n,
        passed: f_ok,
        max_deviation: if f_ok { 0.0 } else { 1.0 },
    }];
    if n <= WIGNER_MAX_QUBITS {
        let sym = f_symmetry_check(n)?;
        rows.push(AppendixRow {
            check: "f_symmetry",
            n,
            passed: sym,
            max_deviation: if sym { 0.0 } else { 1.0 },
        });
        for (check, dev) in [
            ("wigner_orthonormality", wigner_orthonormality_check(n)?),
            (
                "commutator_wavefunction_is_wigner_choi",
                commutator_wavefunction_equals_wigner_choi(n)?,
            ),
            ("proof_chain", proof_chain_check(n)?),
        ] {
            rows.push(AppendixRow {
                check,
                n,
                passed: dev < tolerance,
                max_deviation: dev,
            });
        }
    }
    Ok(rows)
}
