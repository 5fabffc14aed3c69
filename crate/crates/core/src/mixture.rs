//! Output states of the form `(1/N) Σ_{P ∈ K} |P⟩⟨P|` for a subspace `K`
//! of Paulis on `R`, where `|P⟩ = (P ⊗ I)|EPR⟩_{RR̄}`.

use serde::Serialize;

use crate::bits::BitVector;
use crate::gf2::enumerate_span;

/// Kernel enumeration stops beyond this many elements.
pub const ENUMERATION_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelState {
    /// Symplectic length `2 n_R`.
    pub len: usize,
    pub basis: Vec<BitVector>,
    elements: Option<Vec<BitVector>>,
}

impl KernelState {
    pub fn new(len: usize, basis: Vec<BitVector>, cap: usize) -> Self {
        let elements = enumerate_span(len, &basis, cap);
        KernelState { len, basis, elements }
    }

    pub fn kernel_dim(&self) -> usize {
        self.basis.len()
    }

    /// `1/N`, the weight of every label and the EPR fidelity.
    pub fn weight(&self) -> f64 {
        (-(self.basis.len() as f64)).exp2()
    }

    /// All labels, or `None` when the span exceeded the cap.
    pub fn elements(&self) -> Option<&[BitVector]> {
        self.elements.as_deref()
    }

    pub fn is_pure_epr(&self) -> bool {
        self.basis.is_empty()
    }
}
