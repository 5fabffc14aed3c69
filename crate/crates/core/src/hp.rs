//! Hayden-Preskill instances: the partition bookkeeping and the linear maps
//! describing how Paulis on the input `A` spread onto the radiation `D`.
//!
//! `U` acts on `n` wires. Input wires `0..n_A` are `A`, the rest `B`. Output
//! wires are split into `D` (by default the last `n_D`) and `C` (the rest).
//! All maps work on phaseless symplectic vectors `(x | z)`.

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{check_dim, Error, Result};
use crate::gf2::{enumerate_span, Elimination, Gf2Matrix};
use crate::pauli::{PauliKind, PauliOperator};
use crate::tableau::CliffordTableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub n_a: usize,
    pub n_b: usize,
    pub n_c: usize,
    pub n_d: usize,
}

impl Partition {
    pub fn new(n_a: usize, n_b: usize, n_c: usize, n_d: usize) -> Result<Self> {
        let p = Partition { n_a, n_b, n_c, n_d };
        p.validate()?;
        Ok(p)
    }

    /// Partition of `n` wires with `n_a` inputs and `n_d` radiated outputs.
    pub fn from_sizes(n: usize, n_a: usize, n_d: usize) -> Result<Self> {
        if n_a > n || n_d > n {
            return Err(Error::InvalidPartition(format!(
                "n_A = {n_a} and n_D = {n_d} must not exceed n = {n}"
            )));
        }
        Self::new(n_a, n - n_a, n - n_d, n_d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_a + self.n_b != self.n_c + self.n_d {
            return Err(Error::InvalidPartition(format!(
                "n_A + n_B = {} differs from n_C + n_D = {}",
                self.n_a + self.n_b,
                self.n_c + self.n_d
            )));
        }
        if self.n_a == 0 {
            return Err(Error::InvalidPartition("input register A is empty".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n_a + self.n_b
    }
}

/// Global qubit positions of every register in the simulated protocols.
///
/// The encoded state occupies `[R | U wires | B̄]`; the decoders append
/// `[R̄ | A']` and run `U*` on `A' ∪ B̄`, whose outputs are `C̄` and `D̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpLayout {
    pub r: Vec<usize>,
    /// Global position of `U` wire `k` (input `A`/`B`, output `C`/`D`).
    pub u_wires: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub bbar: Vec<usize>,
    pub rbar: Vec<usize>,
    pub a_prime: Vec<usize>,
    /// Global position of `U*` wire `k`.
    pub decoder_wires: Vec<usize>,
    pub cbar: Vec<usize>,
    pub dbar: Vec<usize>,
    /// Qubits in the encoded state `[R | CD | B̄]`.
    pub encoded_qubits: usize,
    /// Qubits including the decoder registers.
    pub total_qubits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpInstance {
    u: CliffordTableau,
    part: Partition,
    d_wires: Vec<usize>,
    c_wires: Vec<usize>,
    lambda_d: Gf2Matrix,
    lambda_z: Gf2Matrix,
    omega_a: Gf2Matrix,
    lambda_d_elim: Elimination,
    lambda_z_elim: Elimination,
    omega_a_elim: Elimination,
}

impl HpInstance {
    /// Builds the instance with `D` = the last `n_D` output wires.
    pub fn build(u: CliffordTableau, part: Partition) -> Result<Self> {
        let d_wires: Vec<usize> = (part.n_c..part.n()).collect();
        Self::build_with_d(u, part, d_wires)
    }

    pub fn build_with_d(u: CliffordTableau, part: Partition, d_wires: Vec<usize>) -> Result<Self> {
        part.validate()?;
        check_dim(part.n(), u.n())?;
        check_dim(part.n_d, d_wires.len())?;
        let n = part.n();
        let mut in_d = vec![false; n];
        for &w in &d_wires {
            if w >= n {
                return Err(Error::IndexOutOfRange { index: w, n });
            }
            if in_d[w] {
                return Err(Error::InvalidPartition(format!("wire {w} listed twice in D")));
            }
            in_d[w] = true;
        }
        let c_wires: Vec<usize> = (0..n).filter(|&w| !in_d[w]).collect();
        let a_wires: Vec<usize> = (0..part.n_a).collect();

        let generators = |wires: &[usize]| -> Vec<PauliOperator> {
            [PauliKind::X, PauliKind::Z]
                .iter()
                .flat_map(|&k| wires.iter().map(move |&w| PauliOperator::single(n, w, k).unwrap()))
                .collect()
        };

        let forward_cols = generators(&a_wires)
            .iter()
            .map(|g| Ok(u.conjugate(g)?.extract(&d_wires)?.symplectic_vector()))
            .collect::<Result<Vec<_>>>()?;
        let lambda_d = Gf2Matrix::from_columns(2 * part.n_d, &forward_cols)?;
        let lambda_z = lambda_d.select_rows(&(0..part.n_d).collect::<Vec<_>>());

        let backward_cols = generators(&d_wires)
            .iter()
            .map(|g| Ok(u.conjugate_by_inverse(g)?.extract(&a_wires)?.symplectic_vector()))
            .collect::<Result<Vec<_>>>()?;
        let omega_a = Gf2Matrix::from_columns(2 * part.n_a, &backward_cols)?;

        Ok(HpInstance {
            lambda_d_elim: lambda_d.eliminate(),
            lambda_z_elim: lambda_z.eliminate(),
            omega_a_elim: omega_a.eliminate(),
            u,
            part,
            d_wires,
            c_wires,
            lambda_d,
            lambda_z,
            omega_a,
        })
    }

    pub fn tableau(&self) -> &CliffordTableau {
        &self.u
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn d_wires(&self) -> &[usize] {
        &self.d_wires
    }

    pub fn c_wires(&self) -> &[usize] {
        &self.c_wires
    }

    pub fn a_wires(&self) -> Vec<usize> {
        (0..self.part.n_a).collect()
    }

    pub fn b_wires(&self) -> Vec<usize> {
        (self.part.n_a..self.part.n()).collect()
    }

    /// `2n_D × 2n_A`; column `j` is `U P_j U†` restricted to `D`.
    pub fn lambda_d(&self) -> &Gf2Matrix {
        &self.lambda_d
    }

    /// `n_D × 2n_A`; row `j` records anticommutation with `Z` on `D_j`.
    pub fn lambda_z(&self) -> &Gf2Matrix {
        &self.lambda_z
    }

    /// `2n_A × 2n_D`; column `j` is `U† Q_j U` restricted to `A`.
    pub fn omega_a(&self) -> &Gf2Matrix {
        &self.omega_a
    }

    pub fn lambda_d_elimination(&self) -> &Elimination {
        &self.lambda_d_elim
    }

    pub fn lambda_z_elimination(&self) -> &Elimination {
        &self.lambda_z_elim
    }

    pub fn kernel_dim_bell(&self) -> usize {
        self.lambda_d_elim.kernel_dim()
    }

    pub fn kernel_dim_local(&self) -> usize {
        self.lambda_z_elim.kernel_dim()
    }

    /// `Λ_D(P_A)` for a symplectic vector on `A`.
    pub fn forward(&self, p_a: &BitVector) -> Result<BitVector> {
        self.lambda_d.mul_vec(p_a)
    }

    /// `Λ_Z(P_A)`.
    pub fn forward_z(&self, p_a: &BitVector) -> Result<BitVector> {
        self.lambda_z.mul_vec(p_a)
    }

    /// `Ω_A(Q_D)`.
    pub fn backward(&self, q_d: &BitVector) -> Result<BitVector> {
        self.omega_a.mul_vec(q_d)
    }

    /// `log₂ N_{Q_D}`, or `None` when no `P_A` maps to `q_d`.
    pub fn count_preimages_log2(&self, q_d: &BitVector) -> Result<Option<usize>> {
        check_dim(2 * self.part.n_d, q_d.len())?;
        Ok(self.lambda_d_elim.solve(q_d)?.map(|_| self.lambda_d_elim.kernel_dim()))
    }

    /// `N_{Q_D}`, the number of Paulis on `A` whose `D` part is `q_d`.
    pub fn count_preimages(&self, q_d: &BitVector) -> Result<u128> {
        match self.count_preimages_log2(q_d)? {
            None => Ok(0),
            Some(k) if k < 128 => Ok(1u128 << k),
            Some(k) => Err(Error::SizeLimit {
                what: "log2 preimage count",
                value: k,
                max: 127,
            }),
        }
    }

    /// `Λ_D` is one-to-one.
    pub fn is_perfectly_recoverable(&self) -> bool {
        self.lambda_d_elim.rank() == 2 * self.part.n_a
    }

    /// `Λ_Z` is one-to-one.
    pub fn is_locally_recoverable(&self) -> bool {
        self.lambda_z_elim.rank() == 2 * self.part.n_a
    }

    /// `S_RC = log₂(d_C d_R / N_{I_D})` in bits.
    pub fn entropy_rc_bits(&self) -> usize {
        self.part.n_c + self.part.n_a - self.kernel_dim_bell()
    }

    pub fn entropy_rc(&self) -> f64 {
        self.entropy_rc_bits() as f64
    }

    /// Some `Q_D` with `Ω_A(Q_D) = p_a`.
    pub fn backward_find_qd(&self, p_a: &BitVector) -> Result<Option<BitVector>> {
        check_dim(2 * self.part.n_a, p_a.len())?;
        self.omega_a_elim.solve(p_a)
    }

    /// Basis of `ker Λ_D`.
    pub fn kernel_bell(&self) -> Vec<BitVector> {
        self.lambda_d_elim.kernel_basis()
    }

    pub fn kernel_local(&self) -> Vec<BitVector> {
        self.lambda_z_elim.kernel_basis()
    }

    /// Basis of the image of `Λ_D` (its pivot columns).
    pub fn image_basis_bell(&self) -> Vec<BitVector> {
        self.lambda_d_elim
            .pivots()
            .iter()
            .map(|&c| self.lambda_d.column(c))
            .collect()
    }

    pub fn image_basis_local(&self) -> Vec<BitVector> {
        self.lambda_z_elim
            .pivots()
            .iter()
            .map(|&c| self.lambda_z.column(c))
            .collect()
    }

    /// Every element of the image of `Λ_D`, if there are at most `cap`.
    pub fn enumerate_image_bell(&self, cap: usize) -> Option<Vec<BitVector>> {
        enumerate_span(2 * self.part.n_d, &self.image_basis_bell(), cap)
    }

    pub fn layout(&self) -> HpLayout {
        let p = &self.part;
        let n = p.n();
        let r: Vec<usize> = (0..p.n_a).collect();
        let u_wires: Vec<usize> = (p.n_a..p.n_a + n).collect();
        let bbar: Vec<usize> = (p.n_a + n..p.n_a + n + p.n_b).collect();
        let encoded_qubits = p.n_a + n + p.n_b;
        let rbar: Vec<usize> = (encoded_qubits..encoded_qubits + p.n_a).collect();
        let a_prime: Vec<usize> = (encoded_qubits + p.n_a..encoded_qubits + 2 * p.n_a).collect();
        let decoder_wires: Vec<usize> = a_prime.iter().chain(&bbar).copied().collect();
        let pick = |wires: &[usize], locals: &[usize]| locals.iter().map(|&l| wires[l]).collect();
        HpLayout {
            a: u_wires[..p.n_a].to_vec(),
            b: u_wires[p.n_a..].to_vec(),
            c: pick(&u_wires, &self.c_wires),
            d: pick(&u_wires, &self.d_wires),
            cbar: pick(&decoder_wires, &self.c_wires),
            dbar: pick(&decoder_wires, &self.d_wires),
            r,
            u_wires,
            bbar,
            rbar,
            a_prime,
            decoder_wires,
            encoded_qubits,
            total_qubits: encoded_qubits + 2 * p.n_a,
        }
    }

    pub fn to_json(&self) -> InstanceJson {
        let m = |g: &Gf2Matrix| MatrixJson {
            rows: g.rows(),
            cols: g.cols(),
            hex_rows: g.to_hex_rows(),
        };
        InstanceJson {
            tableau: self.u.clone(),
            partition: self.part,
            d_wires: self.d_wires.clone(),
            lambda_d: m(&self.lambda_d),
            lambda_z: m(&self.lambda_z),
            omega_a: m(&self.omega_a),
        }
    }

    /// Rebuilds an instance from its JSON dump, checking the stored matrices
    /// against the recomputed ones.
    pub fn from_json(json: &InstanceJson) -> Result<Self> {
        let inst = HpInstance::build_with_d(json.tableau.clone(), json.partition, json.d_wires.clone())?;
        for (name, stored, actual) in [
            ("lambda_d", &json.lambda_d, &inst.lambda_d),
            ("lambda_z", &json.lambda_z, &inst.lambda_z),
            ("omega_a", &json.omega_a, &inst.omega_a),
        ] {
            let parsed = stored.to_matrix()?;
            if &parsed != actual {
                return Err(Error::Parse(format!("{name} does not match the tableau")));
            }
        }
        Ok(inst)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub hex_rows: Vec<String>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Gf2Matrix> {
        check_dim(self.rows, self.hex_rows.len())?;
        Gf2Matrix::from_hex_rows(self.cols, &self.hex_rows)
    }
}

/// JSON dump of an instance; matrix rows are hex strings, bit 0 leftmost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub tableau: CliffordTableau,
    pub partition: Partition,
    pub d_wires: Vec<usize>,
    pub lambda_d: MatrixJson,
    pub lambda_z: MatrixJson,
    pub omega_a: MatrixJson,
}

/// Phaseless Pauli letters of a symplectic vector `(x | z)`.
pub fn letters(v: &BitVector) -> String {
    PauliOperator::from_symplectic(v)
        .map(|p| p.letters())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    fn swap_instance() -> HpInstance {
        let u = CliffordTableau::from_circuit(&"SWAP 0 1".parse::<Circuit>().unwrap());
        HpInstance::build(u, Partition::new(1, 1, 1, 1).unwrap()).unwrap()
    }

    #[test]
    fn partition_must_balance() {
        assert!(Partition::new(1, 2, 2, 2).is_err());
        assert!(Partition::new(0, 2, 1, 1).is_err());
        assert_eq!(
            Partition::from_sizes(6, 2, 3).unwrap(),
            Partition::new(2, 4, 3, 3).unwrap()
        );
    }

    #[test]
    fn swap_moves_a_onto_d() {
        let inst = swap_instance();
        assert_eq!(inst.lambda_d(), &Gf2Matrix::identity(2));
        assert!(inst.is_perfectly_recoverable());
        assert_eq!(inst.entropy_rc_bits(), 2);
        let x_a = BitVector::from_u64(2, 0b01);
        assert_eq!(inst.backward_find_qd(&x_a).unwrap().unwrap(), x_a);
    }

    #[test]
    fn identity_with_d_equal_b_is_not_recoverable() {
        let inst = HpInstance::build(CliffordTableau::identity(2), Partition::new(1, 1, 1, 1).unwrap()).unwrap();
        assert!(inst.lambda_d().is_zero());
        assert!(!inst.is_perfectly_recoverable());
        assert_eq!(inst.count_preimages(&BitVector::zeros(2)).unwrap(), 4);
        assert_eq!(inst.count_preimages(&BitVector::unit(2, 0)).unwrap(), 0);
        assert_eq!(inst.entropy_rc_bits(), 0);
    }

    #[test]
    fn zero_qd_always_has_a_preimage() {
        let inst = HpInstance::build(
            CliffordTableau::random_seeded(5, 3),
            Partition::from_sizes(5, 2, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            inst.backward_find_qd(&BitVector::zeros(4)).unwrap(),
            Some(BitVector::zeros(4))
        );
        assert!(inst.count_preimages(&BitVector::zeros(4)).unwrap() >= 1);
    }

    #[test]
    fn dimension_checks() {
        let inst = swap_instance();
        assert!(inst.count_preimages(&BitVector::zeros(3)).is_err());
        assert!(inst.backward_find_qd(&BitVector::zeros(4)).is_err());
        assert!(HpInstance::build(CliffordTableau::identity(3), Partition::new(1, 1, 1, 1).unwrap()).is_err());
        assert!(HpInstance::build_with_d(
            CliffordTableau::identity(2),
            Partition::new(1, 1, 0, 2).unwrap(),
            vec![1, 1]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip_validates_matrices() {
        let inst = HpInstance::build(
            CliffordTableau::random_seeded(4, 8),
            Partition::from_sizes(4, 1, 2).unwrap(),
        )
        .unwrap();
        let json = inst.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: InstanceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HpInstance::from_json(&back).unwrap(), inst);
        let mut tampered = json.clone();
        tampered.lambda_d.hex_rows[0] = if tampered.lambda_d.hex_rows[0] == "0" {
            "8".into()
        } else {
            "0".into()
        };
        assert!(HpInstance::from_json(&tampered).is_err());
    }
}
