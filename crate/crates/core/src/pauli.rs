//! Phased Pauli operators on `n` qubits.
//!
//! An operator is `i^phase · ∏_j X_j^{x_j} Z_j^{z_j}` with X to the left of Z
//! on every qubit, so `Y = i·XZ` has `phase = 1`. Products only need the
//! overlap `z₁·x₂` to track the phase.
//!
//! Two text forms are supported:
//!
//! * `±[i]IXYZ…` where the letters are Hermitian single-qubit Paulis and the
//!   prefix is one of `+`, `-`, `+i`, `-i`, `i` or absent (meaning `+`);
//! * the compact form `(k; x-bits; z-bits)`, e.g. `(1; 10; 10)` for `Y⊗I`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::BitVector;
use crate::error::{check_dim, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn new(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        check_dim(x.len(), z.len())?;
        Ok(PauliOperator { x, z, phase: phase & 3 })
    }

    /// The Hermitian operator `⊗ σ_j` with `+1` sign for the given bits.
    pub fn hermitian(x: BitVector, z: BitVector) -> Result<Self> {
        check_dim(x.len(), z.len())?;
        let phase = (x.and_count(&z) & 3) as u8;
        Ok(PauliOperator { x, z, phase })
    }

    /// Hermitian operator from a symplectic vector `(x | z)` of length `2n`.
    pub fn from_symplectic(v: &BitVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Self::hermitian(v.slice(0, n), v.slice(n, n))
    }

    /// Hermitian single-qubit Pauli on `qubit` of an `n`-qubit register.
    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Result<Self> {
        if qubit >= n {
            return Err(Error::IndexOutOfRange { index: qubit, n });
        }
        let (bx, bz) = kind.bits();
        let mut p = Self::identity(n);
        p.x.set(qubit, bx);
        p.z.set(qubit, bz);
        p.phase = u8::from(bx && bz);
        Ok(p)
    }

    /// Hermitian operator from a sequence of single-qubit kinds.
    pub fn from_kinds(kinds: &[PauliKind]) -> Self {
        let mut x = BitVector::zeros(kinds.len());
        let mut z = BitVector::zeros(kinds.len());
        for (j, k) in kinds.iter().enumerate() {
            let (bx, bz) = k.bits();
            x.set(j, bx);
            z.set(j, bz);
        }
        Self::hermitian(x, z).expect("equal lengths")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &BitVector {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVector {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    pub fn kind(&self, qubit: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    /// Number of `Y` factors, i.e. `|x ∧ z|`.
    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&j| self.x.get(j) || self.z.get(j)).count()
    }

    /// True when the symplectic part is zero (any phase).
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_up_to_phase() && self.phase == 0
    }

    /// Exact group product `self · other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_dim(self.n(), other.n())?;
        let mut out = self.clone();
        out.mul_assign_right(other);
        Ok(out)
    }

    /// `self ← self · other`; lengths must already agree.
    pub(crate) fn mul_assign_right(&mut self, other: &PauliOperator) {
        let swap = self.z.and_count(&other.x);
        self.phase = ((self.phase as usize + other.phase as usize + 2 * swap) & 3) as u8;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic form `x₁·z₂ + z₁·x₂ (mod 2)`; true when the operators anticommute.
    pub fn anticommutes_with(&self, other: &PauliOperator) -> Result<bool> {
        check_dim(self.n(), other.n())?;
        Ok(self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)) & 1 == 1
    }

    /// `(1/d) Tr(P Q P† Q†)`, which is `+1` or `-1`.
    pub fn commutator_sign(&self, other: &PauliOperator) -> Result<i8> {
        Ok(if self.anticommutes_with(other)? { -1 } else { 1 })
    }

    pub fn dagger(&self) -> PauliOperator {
        let twist = 2 * self.y_count();
        PauliOperator {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: ((4 - self.phase as usize + twist) & 3) as u8,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        // P = P† iff phase ≡ x·z (mod 2)
        (self.phase as usize + self.y_count()).is_multiple_of(2)
    }

    /// Same bits with the `+1`-sign Hermitian phase.
    pub fn canonical_hermitian(&self) -> PauliOperator {
        PauliOperator::hermitian(self.x.clone(), self.z.clone()).expect("equal lengths")
    }

    /// Multiplies by `-1`.
    pub fn negate(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (p.phase + 2) & 3;
        p
    }

    /// Keeps the bits on `subset`, clears the rest and sets the phase to zero.
    pub fn restrict(&self, subset: &[usize]) -> Result<PauliOperator> {
        let n = self.n();
        let mut out = PauliOperator::identity(n);
        for &q in subset {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, n });
            }
            out.x.set(q, self.x.get(q));
            out.z.set(q, self.z.get(q));
        }
        Ok(out)
    }

    /// The factor on `wires` as an operator on `wires.len()` qubits, phase zero.
    pub fn extract(&self, wires: &[usize]) -> Result<PauliOperator> {
        let n = self.n();
        if let Some(&bad) = wires.iter().find(|&&w| w >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(PauliOperator {
            x: self.x.gather(wires),
            z: self.z.gather(wires),
            phase: 0,
        })
    }

    /// Places `self` on `wires` of an `n_total`-qubit register, keeping the phase.
    pub fn embed(&self, n_total: usize, wires: &[usize]) -> Result<PauliOperator> {
        check_dim(self.n(), wires.len())?;
        let mut out = PauliOperator::identity(n_total);
        for (k, &w) in wires.iter().enumerate() {
            if w >= n_total {
                return Err(Error::IndexOutOfRange { index: w, n: n_total });
            }
            out.x.set(w, self.x.get(k));
            out.z.set(w, self.z.get(k));
        }
        out.phase = self.phase;
        Ok(out)
    }

    /// Overwrites the factor on `wires` with `part` and multiplies by its phase.
    pub(crate) fn splice(&mut self, wires: &[usize], part: &PauliOperator) {
        for (k, &w) in wires.iter().enumerate() {
            self.x.set(w, part.x.get(k));
            self.z.set(w, part.z.get(k));
        }
        self.phase = (self.phase + part.phase) & 3;
    }

    /// `self ⊗ other` on `n + m` qubits.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) & 3,
        }
    }

    /// `(x | z)` of length `2n`.
    pub fn symplectic_vector(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Compact form `(k; x-bits; z-bits)`.
    pub fn to_compact(&self) -> String {
        format!("({}; {}; {})", self.phase, self.x, self.z)
    }

    pub fn parse_compact(s: &str) -> Result<PauliOperator> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("compact Pauli {s:?} must be parenthesised")))?;
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        let [k, x, z] = parts[..] else {
            return Err(Error::Parse(format!(
                "compact Pauli {s:?} needs three ';'-separated fields"
            )));
        };
        let phase: u8 = k
            .parse()
            .ok()
            .filter(|&k: &u8| k < 4)
            .ok_or_else(|| Error::Parse(format!("phase exponent {k:?} not in 0..4")))?;
        let x: BitVector = x.parse()?;
        let z: BitVector = z.parse()?;
        if x.len() != z.len() {
            return Err(Error::Parse(format!(
                "x and z parts differ in length ({} vs {})",
                x.len(),
                z.len()
            )));
        }
        PauliOperator::new(x, z, phase)
    }

    /// Letters only, ignoring the phase.
    pub fn letters(&self) -> String {
        (0..self.n()).map(|j| self.kind(j).letter()).collect()
    }

    // Gate conjugations used when folding circuits into tableaux.

    pub(crate) fn conjugate_h(&mut self, q: usize) {
        let (bx, bz) = (self.x.get(q), self.z.get(q));
        if bx && bz {
            self.phase = (self.phase + 2) & 3;
        }
        self.x.set(q, bz);
        self.z.set(q, bx);
    }

    pub(crate) fn conjugate_s(&mut self, q: usize) {
        if self.x.get(q) {
            self.phase = (self.phase + 1) & 3;
            self.z.flip(q);
        }
    }

    pub(crate) fn conjugate_cnot(&mut self, control: usize, target: usize) {
        if self.x.get(control) {
            self.x.flip(target);
        }
        if self.z.get(target) {
            self.z.flip(control);
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = (self.phase as usize + 4 - (self.y_count() & 3)) & 3;
        let prefix = ["+", "+i", "-", "-i"][shown];
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('(') {
            return PauliOperator::parse_compact(s);
        }
        let (sign, rest) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s)
        };
        let kinds = rest
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(PauliKind::I),
                'X' => Ok(PauliKind::X),
                'Y' => Ok(PauliKind::Y),
                'Z' => Ok(PauliKind::Z),
                other => Err(Error::Parse(format!("invalid Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let p = PauliOperator::from_kinds(&kinds);
        let phase = (p.phase + sign) & 3;
        Ok(p.with_phase(phase))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
