//! Stabilizer states in the stabilizer/destabilizer form.
//!
//! Row `i` of the stabilizer list and row `i` of the destabilizer list
//! anticommute; all other pairs commute. Measurements follow the usual
//! Aaronson-Gottesman update, with phases tracked exactly by the Pauli
//! product rule.

use rand::Rng;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{check_dim, Error, Result};
use crate::gf2::Gf2Matrix;
use crate::hp::{HpLayout, Partition};
use crate::pauli::{PauliKind, PauliOperator};
use crate::tableau::CliffordTableau;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    stabilizers: Vec<PauliOperator>,
    destabilizers: Vec<PauliOperator>,
}

/// Result of measuring a Hermitian Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `+1` or `-1`.
    pub outcome: i8,
    /// Whether the outcome was random (probability 1/2 each).
    pub random: bool,
}

impl StabilizerState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Self {
        StabilizerState {
            stabilizers: (0..n)
                .map(|q| PauliOperator::single(n, q, PauliKind::Z).unwrap())
                .collect(),
            destabilizers: (0..n)
                .map(|q| PauliOperator::single(n, q, PauliKind::X).unwrap())
                .collect(),
        }
    }

    /// `|Φ⁺⟩^{⊗k}` with each `(a_j, b_j)` an EPR pair, all other qubits `|0⟩`.
    pub fn with_epr_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut s = Self::zero(n);
        for &(a, b) in pairs {
            s.apply_gate(Gate::H(a))?;
            s.apply_gate(Gate::Cnot(a, b))?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.stabilizers.len()
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.destabilizers
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliOperator> {
        self.stabilizers.iter_mut().chain(self.destabilizers.iter_mut())
    }

    pub fn apply_gate(&mut self, gate: Gate) -> Result<()> {
        let n = self.n();
        if gate.max_wire() >= n {
            return Err(Error::IndexOutOfRange {
                index: gate.max_wire(),
                n,
            });
        }
        if let Gate::Cnot(c, t) = gate {
            if c == t {
                return Err(Error::InvalidPartition(format!("CNOT on a single wire {c}")));
            }
        }
        for row in self.rows_mut() {
            match gate {
                Gate::H(q) => row.conjugate_h(q),
                Gate::S(q) => row.conjugate_s(q),
                Gate::Cnot(c, t) => row.conjugate_cnot(c, t),
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit, wires: &[usize]) -> Result<()> {
        check_dim(circuit.num_qubits(), wires.len())?;
        for g in circuit.gates() {
            let mapped = match *g {
                Gate::H(q) => Gate::H(wires[q]),
                Gate::S(q) => Gate::S(wires[q]),
                Gate::Cnot(c, t) => Gate::Cnot(wires[c], wires[t]),
            };
            self.apply_gate(mapped)?;
        }
        Ok(())
    }

    /// Applies the Clifford `u` to the listed wires (`u` wire `k` ↦ `wires[k]`).
    pub fn apply_clifford(&mut self, u: &CliffordTableau, wires: &[usize]) -> Result<()> {
        check_dim(u.n(), wires.len())?;
        let n = self.n();
        let mut seen = vec![false; n];
        for &w in wires {
            if w >= n {
                return Err(Error::IndexOutOfRange { index: w, n });
            }
            if seen[w] {
                return Err(Error::InvalidPartition(format!("wire {w} repeated")));
            }
            seen[w] = true;
        }
        for row in self.rows_mut() {
            let image = u.conjugate(&row.extract(wires)?)?;
            row.splice(wires, &image);
        }
        Ok(())
    }

    /// Applies the Pauli `p` (on `wires`) as a unitary.
    pub fn apply_pauli(&mut self, p: &PauliOperator, wires: &[usize]) -> Result<()> {
        let full = p.embed(self.n(), wires)?;
        for row in self.rows_mut() {
            if row.anticommutes_unchecked(&full) {
                *row = row.negate();
            }
        }
        Ok(())
    }

    fn check_measurable(&self, p: &PauliOperator) -> Result<()> {
        check_dim(self.n(), p.n())?;
        if !p.is_hermitian() {
            return Err(Error::NotHermitian(p.to_string()));
        }
        Ok(())
    }

    /// `Some(±1)` when `p` has a definite value, `None` when it is random.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Option<i8>> {
        self.check_measurable(p)?;
        if self.stabilizers.iter().any(|g| g.anticommutes_unchecked(p)) {
            return Ok(None);
        }
        Ok(Some(self.deterministic_value(p)))
    }

    fn deterministic_value(&self, p: &PauliOperator) -> i8 {
        let mut acc = PauliOperator::identity(self.n());
        for (g, d) in self.stabilizers.iter().zip(&self.destabilizers) {
            if d.anticommutes_unchecked(p) {
                acc.mul_assign_right(g);
            }
        }
        debug_assert_eq!(acc.x(), p.x());
        debug_assert_eq!(acc.z(), p.z());
        if acc.phase() == p.phase() {
            1
        } else {
            -1
        }
    }

    fn collapse(&mut self, p: &PauliOperator, pivot: usize, outcome: i8) {
        let g = self.stabilizers[pivot].clone();
        for (i, row) in self.stabilizers.iter_mut().enumerate() {
            if i != pivot && row.anticommutes_unchecked(p) {
                row.mul_assign_right(&g);
            }
        }
        for (i, row) in self.destabilizers.iter_mut().enumerate() {
            if i != pivot && row.anticommutes_unchecked(p) {
                row.mul_assign_right(&g);
            }
        }
        self.destabilizers[pivot] = g;
        self.stabilizers[pivot] = if outcome < 0 { p.negate() } else { p.clone() };
    }

    /// Measures the Hermitian Pauli `p`, updating the state.
    pub fn measure_pauli<R: Rng + ?Sized>(&mut self, p: &PauliOperator, rng: &mut R) -> Result<Measurement> {
        self.check_measurable(p)?;
        match self.stabilizers.iter().position(|g| g.anticommutes_unchecked(p)) {
            Some(pivot) => {
                let outcome = if rng.random::<bool>() { -1 } else { 1 };
                self.collapse(p, pivot, outcome);
                Ok(Measurement { outcome, random: true })
            }
            None => Ok(Measurement {
                outcome: self.deterministic_value(p),
                random: false,
            }),
        }
    }

    /// Post-selects on `outcome` and returns its probability. A zero
    /// probability leaves the state untouched.
    pub fn measure_pauli_forced(&mut self, p: &PauliOperator, outcome: i8) -> Result<f64> {
        self.check_measurable(p)?;
        if outcome != 1 && outcome != -1 {
            return Err(Error::ProtocolViolation(format!("outcome {outcome} is not ±1")));
        }
        match self.stabilizers.iter().position(|g| g.anticommutes_unchecked(p)) {
            Some(pivot) => {
                self.collapse(p, pivot, outcome);
                Ok(0.5)
            }
            None => Ok(if self.deterministic_value(p) == outcome {
                1.0
            } else {
                0.0
            }),
        }
    }

    /// Measures `Z` on `qubit`; returns the bit (`true` for `|1⟩`).
    pub fn measure_z<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<bool> {
        let z = PauliOperator::single(self.n(), qubit, PauliKind::Z)?;
        Ok(self.measure_pauli(&z, rng)?.outcome < 0)
    }

    /// Probability that every generator in `gens` measures `+1` in sequence,
    /// i.e. `⟨ψ|Π|ψ⟩` for the joint `+1` projector when `gens` commute.
    pub fn projection_probability(&self, gens: &[PauliOperator]) -> Result<f64> {
        let mut s = self.clone();
        let mut prob = 1.0;
        for g in gens {
            prob *= s.measure_pauli_forced(g, 1)?;
            if prob == 0.0 {
                break;
            }
        }
        Ok(prob)
    }

    /// Von Neumann entropy of `subset` in bits: `rank(G|_subset) - |subset|`.
    pub fn entropy(&self, subset: &[usize]) -> Result<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &q in subset {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, n });
            }
            if seen[q] {
                return Err(Error::InvalidPartition(format!("qubit {q} repeated")));
            }
            seen[q] = true;
        }
        let rows = self
            .stabilizers
            .iter()
            .map(|g| Ok(g.extract(subset)?.symplectic_vector()))
            .collect::<Result<Vec<_>>>()?;
        let rank = Gf2Matrix::from_rows(2 * subset.len(), rows)?.rank();
        Ok(rank - subset.len())
    }

    /// Stabilizer generators as Pauli strings.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct StateJson<'a> {
            n: usize,
            stabilizers: &'a [PauliOperator],
            destabilizers: &'a [PauliOperator],
        }
        serde_json::to_string_pretty(&StateJson {
            n: self.n(),
            stabilizers: &self.stabilizers,
            destabilizers: &self.destabilizers,
        })
        .expect("serialisable")
    }
}

/// The encoded state on `[R | CD | B̄]`: EPR pairs `R–A` and `B–B̄`, then `U` on `AB`.
pub fn prepare_hp_state(u: &CliffordTableau, part: &Partition, layout: &HpLayout) -> Result<StabilizerState> {
    part.validate()?;
    check_dim(part.n(), u.n())?;
    let pairs: Vec<(usize, usize)> = layout
        .r
        .iter()
        .copied()
        .zip(layout.a.iter().copied())
        .chain(layout.b.iter().copied().zip(layout.bbar.iter().copied()))
        .collect();
    let mut s = StabilizerState::with_epr_pairs(layout.encoded_qubits, &pairs)?;
    s.apply_clifford(u, &layout.u_wires)?;
    Ok(s)
}

/// Widens the state by `extra` qubits in `|0⟩`.
pub fn extend(state: &StabilizerState, extra: usize) -> StabilizerState {
    let n = state.n() + extra;
    let pad = |p: &PauliOperator| p.tensor(&PauliOperator::identity(extra));
    let mut stabilizers: Vec<PauliOperator> = state.stabilizers.iter().map(pad).collect();
    let mut destabilizers: Vec<PauliOperator> = state.destabilizers.iter().map(pad).collect();
    for q in state.n()..n {
        stabilizers.push(PauliOperator::single(n, q, PauliKind::Z).unwrap());
        destabilizers.push(PauliOperator::single(n, q, PauliKind::X).unwrap());
    }
    StabilizerState {
        stabilizers,
        destabilizers,
    }
}
