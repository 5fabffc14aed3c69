#![allow(dead_code)]

use clifford_hp::dense::C64;
use clifford_hp::{BitVector, PauliOperator};
use nalgebra::DMatrix;
use rand::Rng;

pub fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliOperator {
    let x = BitVector::from_bools(&(0..n).map(|_| rng.random()).collect::<Vec<_>>());
    let z = BitVector::from_bools(&(0..n).map(|_| rng.random()).collect::<Vec<_>>());
    PauliOperator::new(x, z, rng.random_range(0..4)).unwrap()
}

pub fn random_hermitian_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliOperator {
    let p = random_pauli(n, rng).canonical_hermitian();
    if rng.random() {
        p.negate()
    } else {
        p
    }
}

/// Every phase-0 Pauli `X^x Z^z` on `n` qubits, indexed by `(x | z)` as an integer.
pub fn all_paulis(n: usize) -> Vec<PauliOperator> {
    (0..1u64 << (2 * n))
        .map(|v| {
            PauliOperator::new(
                BitVector::from_u64(n, v & ((1 << n) - 1)),
                BitVector::from_u64(n, v >> n),
                0,
            )
            .unwrap()
        })
        .collect()
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// A random gate list and the instance of its tableau.
pub fn random_circuit_instance<R: Rng>(
    n: usize,
    n_a: usize,
    n_d: usize,
    rng: &mut R,
) -> (clifford_hp::Circuit, clifford_hp::HpInstance) {
    let circuit = clifford_hp::Circuit::random(n, 8 * n * n, rng);
    let u = clifford_hp::CliffordTableau::from_circuit(&circuit);
    let part = clifford_hp::Partition::from_sizes(n, n_a, n_d).unwrap();
    (circuit, clifford_hp::HpInstance::build(u, part).unwrap())
}

pub fn bools(v: &BitVector) -> Vec<bool> {
    v.iter().collect()
}
