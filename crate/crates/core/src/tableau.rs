//! Clifford unitaries represented by their conjugation action on generators.
//!
//! A tableau stores `U X_j U†` and `U Z_j U†` for every qubit `j`; the global
//! phase of `U` is not represented.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::circuit::{Circuit, Gate};
use crate::error::{check_dim, Error, Result};
use crate::gf2::Gf2Matrix;
use crate::pauli::{PauliKind, PauliOperator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct CliffordTableau {
    x_images: Vec<PauliOperator>,
    z_images: Vec<PauliOperator>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    n: usize,
    x_images: Vec<PauliOperator>,
    z_images: Vec<PauliOperator>,
}

impl TryFrom<TableauJson> for CliffordTableau {
    type Error = Error;

    fn try_from(j: TableauJson) -> Result<Self> {
        check_dim(j.n, j.x_images.len())?;
        check_dim(j.n, j.z_images.len())?;
        CliffordTableau::from_images(j.x_images, j.z_images)
    }
}

impl From<CliffordTableau> for TableauJson {
    fn from(t: CliffordTableau) -> Self {
        TableauJson {
            n: t.n(),
            x_images: t.x_images,
            z_images: t.z_images,
        }
    }
}

/// Symplectic form on `(x | z)` vectors of length `2n`.
fn symplectic_form(a: &BitVector, b: &BitVector, n: usize) -> bool {
    let mut acc = 0usize;
    for i in a.iter_ones() {
        let j = if i < n { i + n } else { i - n };
        if b.get(j) {
            acc += 1;
        }
    }
    acc & 1 == 1
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            x_images: (0..n)
                .map(|j| PauliOperator::single(n, j, PauliKind::X).unwrap())
                .collect(),
            z_images: (0..n)
                .map(|j| PauliOperator::single(n, j, PauliKind::Z).unwrap())
                .collect(),
        }
    }

    /// Validates that the images are Hermitian and obey the canonical
    /// commutation relations.
    pub fn from_images(x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Result<Self> {
        let n = x_images.len();
        check_dim(n, z_images.len())?;
        for p in x_images.iter().chain(&z_images) {
            check_dim(n, p.n())?;
            if !p.is_hermitian() {
                return Err(Error::InvalidTableau(format!("image {p} is not Hermitian")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xz = x_images[i].anticommutes_unchecked(&z_images[j]);
                if xz != (i == j) {
                    return Err(Error::InvalidTableau(format!(
                        "images of X{i} and Z{j} have the wrong commutation"
                    )));
                }
                if j > i
                    && (x_images[i].anticommutes_unchecked(&x_images[j])
                        || z_images[i].anticommutes_unchecked(&z_images[j]))
                {
                    return Err(Error::InvalidTableau(format!(
                        "images of generators on qubits {i} and {j} anticommute"
                    )));
                }
            }
        }
        Ok(CliffordTableau { x_images, z_images })
    }

    pub fn from_gates(n: usize, gates: &[Gate]) -> Result<Self> {
        let mut t = CliffordTableau::identity(n);
        for &g in gates {
            t.apply_gate(g)?;
        }
        Ok(t)
    }

    pub fn from_circuit(circuit: &Circuit) -> Self {
        Self::from_gates(circuit.num_qubits(), circuit.gates()).expect("circuit wires validated")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x_images.len()
    }

    pub fn x_images(&self) -> &[PauliOperator] {
        &self.x_images
    }

    pub fn z_images(&self) -> &[PauliOperator] {
        &self.z_images
    }

    /// `U ← G U`.
    pub fn apply_gate(&mut self, gate: Gate) -> Result<()> {
        let n = self.n();
        if gate.max_wire() >= n {
            return Err(Error::IndexOutOfRange {
                index: gate.max_wire(),
                n,
            });
        }
        for p in self.x_images.iter_mut().chain(self.z_images.iter_mut()) {
            match gate {
                Gate::H(q) => p.conjugate_h(q),
                Gate::S(q) => p.conjugate_s(q),
                Gate::Cnot(c, t) => p.conjugate_cnot(c, t),
            }
        }
        Ok(())
    }

    /// `U P U†` with exact phase.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.n(), p.n())?;
        let mut out = PauliOperator::identity(self.n()).with_phase(p.phase());
        for j in 0..self.n() {
            if p.x().get(j) {
                out.mul_assign_right(&self.x_images[j]);
            }
            if p.z().get(j) {
                out.mul_assign_right(&self.z_images[j]);
            }
        }
        Ok(out)
    }

    /// `U† P U` with exact phase, without building the inverse tableau.
    pub fn conjugate_by_inverse(&self, p: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.n(), p.n())?;
        let n = self.n();
        // x_j(U†PU) = ⟨P, U Z_j U†⟩ and z_j(U†PU) = ⟨P, U X_j U†⟩
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for j in 0..n {
            if p.anticommutes_unchecked(&self.z_images[j]) {
                x.set(j, true);
            }
            if p.anticommutes_unchecked(&self.x_images[j]) {
                z.set(j, true);
            }
        }
        let pre = PauliOperator::new(x, z, 0)?;
        let forward = self.conjugate(&pre)?;
        debug_assert_eq!(forward.x(), p.x());
        debug_assert_eq!(forward.z(), p.z());
        let phase = (4 + p.phase() - forward.phase()) & 3;
        Ok(pre.with_phase(phase))
    }

    /// Tableau of `self ∘ other`, i.e. the unitary `U V`.
    pub fn compose(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        check_dim(self.n(), other.n())?;
        let x_images = other
            .x_images
            .iter()
            .map(|p| self.conjugate(p))
            .collect::<Result<Vec<_>>>()?;
        let z_images = other
            .z_images
            .iter()
            .map(|p| self.conjugate(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(CliffordTableau { x_images, z_images })
    }

    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n();
        let img = |kind| {
            (0..n)
                .map(|j| {
                    let g = PauliOperator::single(n, j, kind).unwrap();
                    self.conjugate_by_inverse(&g).unwrap()
                })
                .collect()
        };
        CliffordTableau {
            x_images: img(PauliKind::X),
            z_images: img(PauliKind::Z),
        }
    }

    /// Tableau of the entrywise complex conjugate `U*`.
    ///
    /// `U* P U^T = (U P* U†)*` and X, Z are real, so every image keeps its
    /// bits and has its phase exponent negated.
    pub fn complex_conjugate(&self) -> CliffordTableau {
        let flip = |p: &PauliOperator| p.clone().with_phase((4 - p.phase()) & 3);
        CliffordTableau {
            x_images: self.x_images.iter().map(flip).collect(),
            z_images: self.z_images.iter().map(flip).collect(),
        }
    }

    /// `2n × 2n` matrix whose column `j` (`n + j`) is the symplectic vector of
    /// the image of `X_j` (`Z_j`).
    pub fn symplectic_matrix(&self) -> Gf2Matrix {
        let cols: Vec<BitVector> = self
            .x_images
            .iter()
            .chain(&self.z_images)
            .map(PauliOperator::symplectic_vector)
            .collect();
        Gf2Matrix::from_columns(2 * self.n(), &cols).expect("consistent image lengths")
    }

    /// Image sign bits: `true` where the image is `-1` times its canonical
    /// Hermitian form. X images first, then Z images.
    pub fn sign_bits(&self) -> Vec<bool> {
        self.x_images
            .iter()
            .chain(&self.z_images)
            .map(|p| p.phase() != p.canonical_hermitian().phase())
            .collect()
    }

    /// Uniformly random element of the Clifford group modulo global phase.
    ///
    /// Builds an ordered symplectic basis one pair at a time: the image of
    /// `X_i` is uniform over nonzero vectors of the symplectic complement of
    /// the earlier pairs, the image of `Z_i` uniform over that complement's
    /// vectors pairing to one with it. Signs are then drawn uniformly.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordTableau {
        let dim = 2 * n;
        let mut basis: Vec<(BitVector, BitVector)> = (0..n)
            .map(|k| (BitVector::unit(dim, k), BitVector::unit(dim, n + k)))
            .collect();
        let mut x_images = Vec::with_capacity(n);
        let mut z_images = Vec::with_capacity(n);

        for _ in 0..n {
            let combo = |rng: &mut R, coeffs: &mut Vec<bool>| {
                let mut v = BitVector::zeros(dim);
                coeffs.clear();
                for (e, f) in &basis {
                    let (ce, cf) = (rng.random::<bool>(), rng.random::<bool>());
                    if ce {
                        v.xor_assign(e);
                    }
                    if cf {
                        v.xor_assign(f);
                    }
                    coeffs.push(ce);
                    coeffs.push(cf);
                }
                v
            };
            let mut coeffs = Vec::new();
            let v = loop {
                let v = combo(rng, &mut coeffs);
                if !v.is_zero() {
                    break v;
                }
            };
            let first = coeffs.iter().position(|&c| c).expect("nonzero combination");
            let (e, f) = &basis[first / 2];
            let partner = if first % 2 == 0 { f.clone() } else { e.clone() };
            let mut w = combo(rng, &mut coeffs);
            if !symplectic_form(&v, &w, n) {
                w.xor_assign(&partner);
            }

            let mut rest: Vec<BitVector> = basis
                .iter()
                .flat_map(|(e, f)| [e.clone(), f.clone()])
                .map(|b| project_out(b, &v, &w, n))
                .filter(|b| !b.is_zero())
                .collect();
            basis = symplectic_gram_schmidt(&mut rest, n);

            x_images.push(v);
            z_images.push(w);
        }

        let mut signed = |v: BitVector| {
            let p = PauliOperator::from_symplectic(&v).unwrap();
            if rng.random::<bool>() {
                p.negate()
            } else {
                p
            }
        };
        let x_images: Vec<_> = x_images.into_iter().map(&mut signed).collect();
        let z_images: Vec<_> = z_images.into_iter().map(&mut signed).collect();
        CliffordTableau { x_images, z_images }
    }

    pub fn random_seeded(n: usize, seed: u64) -> CliffordTableau {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random(n, &mut rng)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tableau serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Removes the components of `b` along the hyperbolic pair `(v, w)`.
fn project_out(mut b: BitVector, v: &BitVector, w: &BitVector, n: usize) -> BitVector {
    let bw = symplectic_form(&b, w, n);
    let bv = symplectic_form(&b, v, n);
    if bw {
        b.xor_assign(v);
    }
    if bv {
        b.xor_assign(w);
    }
    b
}

/// Extracts hyperbolic pairs spanning the (nondegenerate) span of `vectors`.
fn symplectic_gram_schmidt(vectors: &mut Vec<BitVector>, n: usize) -> Vec<(BitVector, BitVector)> {
    let mut pairs = Vec::new();
    while let Some(a) = vectors.pop() {
        if a.is_zero() {
            continue;
        }
        let Some(k) = vectors.iter().position(|b| symplectic_form(&a, b, n)) else {
            panic!("degenerate span in symplectic Gram-Schmidt");
        };
        let b = vectors.swap_remove(k);
        for c in vectors.iter_mut() {
            *c = project_out(std::mem::take(c), &a, &b, n);
        }
        vectors.retain(|c| !c.is_zero());
        pairs.push((a, b));
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_swaps_x_and_z() {
        let h = CliffordTableau::from_gates(1, &[Gate::H(0)]).unwrap();
        assert_eq!(h.conjugate(&p("X")).unwrap(), p("Z"));
        assert_eq!(h.conjugate(&p("Z")).unwrap(), p("X"));
        assert_eq!(h.conjugate(&p("Y")).unwrap(), p("-Y"));
    }

    #[test]
    fn swap_moves_x() {
        let c: Circuit = "SWAP 0 1".parse().unwrap();
        let t = CliffordTableau::from_circuit(&c);
        assert_eq!(t.conjugate(&p("XI")).unwrap(), p("IX"));
    }

    #[test]
    fn s_gate_and_inverse() {
        let s = CliffordTableau::from_gates(1, &[Gate::S(0)]).unwrap();
        assert_eq!(s.conjugate(&p("X")).unwrap(), p("Y"));
        assert_eq!(s.inverse().conjugate(&p("X")).unwrap(), p("-Y"));
    }

    #[test]
    fn h_composed_with_h_is_identity() {
        let h = CliffordTableau::from_gates(1, &[Gate::H(0)]).unwrap();
        assert_eq!(h.compose(&h).unwrap(), CliffordTableau::identity(1));
    }

    #[test]
    fn random_is_valid_and_deterministic() {
        for n in 1..8 {
            let t = CliffordTableau::random_seeded(n, 42 + n as u64);
            let checked = CliffordTableau::from_images(t.x_images.clone(), t.z_images.clone()).unwrap();
            assert_eq!(checked, t);
            assert_eq!(t, CliffordTableau::random_seeded(n, 42 + n as u64));
        }
    }

    #[test]
    fn rejects_non_symplectic_images() {
        let bad = CliffordTableau::from_images(vec![p("X")], vec![p("X")]);
        assert!(matches!(bad, Err(Error::InvalidTableau(_))));
        let non_herm = CliffordTableau::from_images(vec![p("iX")], vec![p("Z")]);
        assert!(non_herm.is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = CliffordTableau::random_seeded(3, 9);
        let json = t.to_json();
        assert_eq!(CliffordTableau::from_json(&json).unwrap(), t);
        let wrong_n = r#"{"n": 2, "x_images": ["+X"], "z_images": ["+Z"]}"#;
        assert!(CliffordTableau::from_json(wrong_n).is_err());
    }

    #[test]
    fn gate_out_of_range() {
        assert!(matches!(
            CliffordTableau::from_gates(2, &[Gate::H(2)]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn complex_conjugate_of_s_is_s_dagger() {
        let s = CliffordTableau::from_gates(1, &[Gate::S(0)]).unwrap();
        let sdg = CliffordTableau::from_gates(1, &[Gate::S(0); 3]).unwrap();
        assert_eq!(s.complex_conjugate(), sdg);
    }
}
