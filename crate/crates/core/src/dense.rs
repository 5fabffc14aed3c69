//! Brute-force complex statevector simulation.
//!
//! This module is the reference the stabilizer code is tested against, so it
//! never looks at tableaux or symplectic bits beyond reading Pauli letters:
//! Cliffords enter as gate lists and Paulis as products of 2×2 matrices.
//!
//! Qubit 0 is the most significant bit of a basis index, so operator
//! matrices are plain Kronecker products in wire order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_dim, Error, Result};
use crate::hp::HpLayout;
use crate::pauli::{PauliKind, PauliOperator};

pub type C64 = Complex64;

pub const MAX_STATE_QUBITS: usize = 16;
pub const MAX_DENSITY_QUBITS: usize = 10;
pub const MAX_MATRIX_QUBITS: usize = 8;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

fn limit(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(Error::SizeLimit { what, value, max })
    } else {
        Ok(())
    }
}

pub fn i_pow(k: u8) -> C64 {
    [ONE, I, -ONE, -I][(k & 3) as usize]
}

pub fn single_qubit_matrix(kind: PauliKind) -> DMatrix<C64> {
    match kind {
        PauliKind::I => DMatrix::identity(2, 2),
        PauliKind::X => DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        PauliKind::Y => DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        PauliKind::Z => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

pub fn gate_matrix(gate: &Gate) -> DMatrix<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match gate {
        Gate::H(_) => DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)],
        ),
        Gate::S(_) => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, I]),
        Gate::Cnot(_, _) => {
            let mut m = DMatrix::zeros(4, 4);
            m[(0, 0)] = ONE;
            m[(1, 1)] = ONE;
            m[(2, 3)] = ONE;
            m[(3, 2)] = ONE;
            m
        }
    }
}

fn gate_wires(gate: &Gate) -> Vec<usize> {
    match *gate {
        Gate::H(q) | Gate::S(q) => vec![q],
        Gate::Cnot(c, t) => vec![c, t],
    }
}

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

/// Dense matrix of a phased Pauli: `i^k ⊗_j (X^{x_j} Z^{z_j})`.
pub fn pauli_matrix(p: &PauliOperator) -> Result<DMatrix<C64>> {
    limit("matrix qubits", p.n(), MAX_MATRIX_QUBITS)?;
    let x = single_qubit_matrix(PauliKind::X);
    let z = single_qubit_matrix(PauliKind::Z);
    let id = DMatrix::<C64>::identity(2, 2);
    let mut m = DMatrix::from_element(1, 1, i_pow(p.phase()));
    for j in 0..p.n() {
        let xs = if p.x().get(j) { &x } else { &id };
        let zs = if p.z().get(j) { &z } else { &id };
        m = kron(&m, &(xs * zs));
    }
    Ok(m)
}

/// Dense unitary of a circuit, for small registers.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DMatrix<C64>> {
    let n = circuit.num_qubits();
    limit("matrix qubits", n, MAX_MATRIX_QUBITS)?;
    let dim = 1usize << n;
    let mut u = DMatrix::<C64>::identity(dim, dim);
    for col in 0..dim {
        let mut s = DenseState::basis(n, col)?;
        s.apply_circuit(circuit, &(0..n).collect::<Vec<_>>(), false)?;
        u.set_column(col, &s.amps);
    }
    Ok(u)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: DVector<C64>,
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        limit("state qubits", n, MAX_STATE_QUBITS)?;
        let mut amps = DVector::zeros(1 << n);
        amps[index] = ONE;
        Ok(DenseState { n, amps })
    }

    pub fn from_amplitudes(amps: DVector<C64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        limit("state qubits", n, MAX_STATE_QUBITS)?;
        Ok(DenseState { n, amps })
    }

    /// `n_pairs` EPR pairs with qubit `j` paired to qubit `n_pairs + j`.
    pub fn epr(n_pairs: usize) -> Result<Self> {
        let n = 2 * n_pairs;
        limit("state qubits", n, MAX_STATE_QUBITS)?;
        let d = 1usize << n_pairs;
        let mut amps = DVector::zeros(1 << n);
        let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        for j in 0..d {
            amps[(j << n_pairs) | j] = a;
        }
        Ok(DenseState { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        self.amps /= C64::new(n, 0.0);
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Result<C64> {
        check_dim(self.n, other.n)?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn tensor(&self, other: &DenseState) -> Result<DenseState> {
        limit("state qubits", self.n + other.n, MAX_STATE_QUBITS)?;
        Ok(DenseState {
            n: self.n + other.n,
            amps: self.amps.kronecker(&other.amps),
        })
    }

    /// Applies a `2^k × 2^k` matrix to the listed wires (first wire most
    /// significant within the matrix).
    pub fn apply_matrix(&mut self, m: &DMatrix<C64>, wires: &[usize]) -> Result<()> {
        let k = wires.len();
        check_dim(1 << k, m.nrows())?;
        check_dim(1 << k, m.ncols())?;
        for &w in wires {
            if w >= self.n {
                return Err(Error::IndexOutOfRange { index: w, n: self.n });
            }
        }
        let shifts: Vec<usize> = wires.iter().map(|&w| self.n - 1 - w).collect();
        let mask: usize = shifts.iter().map(|&s| 1usize << s).sum();
        let sub_index = |local: usize| -> usize {
            let mut idx = 0;
            for (b, &s) in shifts.iter().enumerate() {
                if (local >> (k - 1 - b)) & 1 == 1 {
                    idx |= 1 << s;
                }
            }
            idx
        };
        let offsets: Vec<usize> = (0..1 << k).map(sub_index).collect();
        let mut buf = vec![ZERO; 1 << k];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, &o) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | o];
            }
            for (r, &o) in offsets.iter().enumerate() {
                let mut acc = ZERO;
                for (c, &b) in buf.iter().enumerate() {
                    acc += m[(r, c)] * b;
                }
                self.amps[base | o] = acc;
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate, wires: &[usize]) -> Result<()> {
        let local = gate_wires(gate);
        let mapped = local
            .iter()
            .map(|&l| {
                wires.get(l).copied().ok_or(Error::IndexOutOfRange {
                    index: l,
                    n: wires.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.apply_matrix(&gate_matrix(gate), &mapped)
    }

    /// Runs `circuit` with its local wire `j` mapped to `wires[j]`; with
    /// `conjugate` set every gate matrix is complex-conjugated (giving `U*`).
    pub fn apply_circuit(&mut self, circuit: &Circuit, wires: &[usize], conjugate: bool) -> Result<()> {
        check_dim(circuit.num_qubits(), wires.len())?;
        for g in circuit.gates() {
            let local = gate_wires(g);
            let mapped: Vec<usize> = local.iter().map(|&l| wires[l]).collect();
            let mut m = gate_matrix(g);
            if conjugate {
                m = m.map(|c| c.conj());
            }
            self.apply_matrix(&m, &mapped)?;
        }
        Ok(())
    }

    /// Applies a Pauli factor by factor on the listed wires.
    pub fn apply_pauli(&mut self, p: &PauliOperator, wires: &[usize]) -> Result<()> {
        check_dim(p.n(), wires.len())?;
        let x = single_qubit_matrix(PauliKind::X);
        let z = single_qubit_matrix(PauliKind::Z);
        for (j, &w) in wires.iter().enumerate() {
            if p.z().get(j) {
                self.apply_matrix(&z, &[w])?;
            }
            if p.x().get(j) {
                self.apply_matrix(&x, &[w])?;
            }
        }
        self.amps *= i_pow(p.phase());
        Ok(())
    }

    /// `⟨ψ|Π|ψ⟩` for an operator on the listed wires.
    pub fn expectation(&self, op: &DMatrix<C64>, wires: &[usize]) -> Result<C64> {
        let mut t = self.clone();
        t.apply_matrix(op, wires)?;
        self.inner(&t)
    }

    pub fn born_probability(&self, projector: &DMatrix<C64>, wires: &[usize]) -> Result<f64> {
        Ok(self.expectation(projector, wires)?.re)
    }

    /// Applies a projector and renormalises; returns the probability.
    pub fn project(&mut self, projector: &DMatrix<C64>, wires: &[usize]) -> Result<f64> {
        self.apply_matrix(projector, wires)?;
        let p = self.amps.norm_squared();
        if p > 1e-300 {
            self.amps /= C64::new(p.sqrt(), 0.0);
        }
        Ok(p)
    }

    /// Reduced density matrix on `subset`, basis ordered with `subset[0]`
    /// most significant.
    pub fn reduced_density(&self, subset: &[usize]) -> Result<DMatrix<C64>> {
        let k = subset.len();
        limit("density qubits", k, MAX_DENSITY_QUBITS)?;
        let mut in_subset = vec![false; self.n];
        for &w in subset {
            if w >= self.n {
                return Err(Error::IndexOutOfRange { index: w, n: self.n });
            }
            if in_subset[w] {
                return Err(Error::Parse(format!("wire {w} repeated in subset")));
            }
            in_subset[w] = true;
        }
        let rest: Vec<usize> = (0..self.n).filter(|&w| !in_subset[w]).collect();
        let mut m = DMatrix::<C64>::zeros(1 << k, 1 << rest.len());
        for (idx, &a) in self.amps.iter().enumerate() {
            let bit = |w: usize| (idx >> (self.n - 1 - w)) & 1;
            let row = subset.iter().fold(0, |acc, &w| (acc << 1) | bit(w));
            let col = rest.iter().fold(0, |acc, &w| (acc << 1) | bit(w));
            m[(row, col)] = a;
        }
        Ok(&m * m.adjoint())
    }
}

/// Entropy in bits from the spectrum; eigenvalues below `1e-14` are dropped.
pub fn von_neumann_entropy(dm: &DMatrix<C64>) -> f64 {
    let eig = nalgebra::SymmetricEigen::new(dm.clone());
    eig.eigenvalues
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.log2())
        .sum()
}

/// `-log₂ Tr ρ²`.
pub fn renyi2_entropy(dm: &DMatrix<C64>) -> f64 {
    let purity = (dm * dm).trace().re;
    -purity.log2()
}

/// `⟨φ|ρ|φ⟩`.
pub fn fidelity(dm: &DMatrix<C64>, target: &DenseState) -> Result<f64> {
    check_dim(dm.nrows(), target.amps.len())?;
    Ok((target.amps.adjoint() * dm * &target.amps)[(0, 0)].re)
}

pub fn state_fidelity(a: &DenseState, b: &DenseState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Choi vector `(M ⊗ I)|EPR⟩` of a `d × d` operator.
pub fn choi_vector(m: &DMatrix<C64>) -> Result<DVector<C64>> {
    let d = m.nrows();
    let n = d.trailing_zeros() as usize;
    let mut s = DenseState::epr(n)?;
    s.apply_matrix(m, &(0..n).collect::<Vec<_>>())?;
    Ok(s.amps)
}

/// Projector onto `(Q ⊗ I)|EPR⟩` acting on `2·q.n()` wires (Q's register first).
pub fn bell_projector(q: &PauliOperator) -> Result<DMatrix<C64>> {
    let v = choi_vector(&pauli_matrix(q)?)?;
    Ok(&v * v.adjoint())
}

pub fn computational_projector(bits: &[bool]) -> DMatrix<C64> {
    let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
    let mut m = DMatrix::zeros(1 << bits.len(), 1 << bits.len());
    m[(idx, idx)] = ONE;
    m
}

/// `|0…0⟩` on `n` qubits with an EPR pair prepared on each `(a, b)`.
pub fn epr_register(n: usize, pairs: &[(usize, usize)]) -> Result<DenseState> {
    let mut s = DenseState::zero(n)?;
    for &(a, b) in pairs {
        s.apply_gate(&Gate::H(0), &[a])?;
        s.apply_gate(&Gate::Cnot(0, 1), &[a, b])?;
    }
    Ok(s)
}

/// The encoded state on `[R | CD | B̄]` of the protocol layout.
pub fn hp_encoded_state(circuit: &Circuit, layout: &HpLayout) -> Result<DenseState> {
    let pairs: Vec<(usize, usize)> = layout
        .r
        .iter()
        .copied()
        .zip(layout.a.iter().copied())
        .chain(layout.b.iter().copied().zip(layout.bbar.iter().copied()))
        .collect();
    let mut s = epr_register(layout.encoded_qubits, &pairs)?;
    s.apply_circuit(circuit, &layout.u_wires, false)?;
    Ok(s)
}

/// The encoded state with `|EPR⟩_{R̄A'}` appended and `U*` applied to `A'B̄`.
pub fn hp_decoder_state(circuit: &Circuit, layout: &HpLayout) -> Result<DenseState> {
    let pairs: Vec<(usize, usize)> = layout
        .r
        .iter()
        .copied()
        .zip(layout.a.iter().copied())
        .chain(layout.b.iter().copied().zip(layout.bbar.iter().copied()))
        .chain(layout.rbar.iter().copied().zip(layout.a_prime.iter().copied()))
        .collect();
    let mut s = epr_register(layout.total_qubits, &pairs)?;
    s.apply_circuit(circuit, &layout.u_wires, false)?;
    s.apply_circuit(circuit, &layout.decoder_wires, true)?;
    Ok(s)
}

/// `Γ(ψ) = U(|ψ⟩_A ⊗ |EPR⟩_{BB̄})` on `[U wires | B̄]`.
pub fn hp_code_state(circuit: &Circuit, psi: &DenseState, n_b: usize) -> Result<DenseState> {
    let n = psi.n() + n_b;
    check_dim(n, circuit.num_qubits())?;
    let pairs: Vec<(usize, usize)> = (0..n_b).map(|i| (psi.n() + i, n + i)).collect();
    let mut s = psi.tensor(&DenseState::zero(2 * n_b)?)?;
    for &(a, b) in &pairs {
        s.apply_gate(&Gate::H(0), &[a])?;
        s.apply_gate(&Gate::Cnot(0, 1), &[a, b])?;
    }
    s.apply_circuit(circuit, &(0..n).collect::<Vec<_>>(), false)?;
    Ok(s)
}

/// `(1/|labels|) Σ |P⟩⟨P|` with `|P⟩ = (P ⊗ I)|EPR⟩` on `2n` qubits.
pub fn epr_label_mixture(n: usize, labels: &[PauliOperator]) -> Result<DMatrix<C64>> {
    let d2 = 1usize << (2 * n);
    let mut rho = DMatrix::zeros(d2, d2);
    for p in labels {
        check_dim(n, p.n())?;
        let v = choi_vector(&pauli_matrix(p)?)?;
        rho += &v * v.adjoint();
    }
    Ok(rho / C64::new(labels.len() as f64, 0.0))
}

/// Random normalised state; amplitudes start uniform in the unit square.
pub fn random_state<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DenseState> {
    limit("state qubits", n, MAX_STATE_QUBITS)?;
    let amps = DVector::from_fn(1 << n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let mut s = DenseState { n, amps };
    s.normalize();
    Ok(s)
}
