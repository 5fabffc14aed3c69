//! Gate lists over the generating set {H, S, CNOT}.
//!
//! Text format: one gate per line (or `/`-separated), e.g.
//!
//! ```text
//! # comment
//! H 0
//! S 2
//! CNOT 0 3
//! ```
//!
//! `CX` is accepted for `CNOT`. The convenience gates `SDG`, `X`, `Y`, `Z`,
//! `CZ` and `SWAP` are expanded into the three primitives while parsing.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn max_wire(&self) -> usize {
        match *self {
            Gate::H(q) | Gate::S(q) => q,
            Gate::Cnot(c, t) => c.max(t),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            if g.max_wire() >= num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: g.max_wire(),
                    n: num_qubits,
                });
            }
            if let Gate::Cnot(c, t) = g {
                if c == t {
                    return Err(Error::Parse(format!("CNOT with control = target = {c}")));
                }
            }
        }
        Ok(Circuit { num_qubits, gates })
    }

    /// Parses gate-list text; the register width is the largest index plus one
    /// unless `num_qubits` is given.
    pub fn parse(text: &str, num_qubits: Option<usize>) -> Result<Self> {
        let gates = parse_gate_list(text)?;
        let needed = gates.iter().map(|g| g.max_wire() + 1).max().unwrap_or(0);
        Circuit::new(num_qubits.unwrap_or(needed), gates)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.max_wire() >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: gate.max_wire(),
                n: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Uniformly chosen gates from {H, S, CNOT} on random wires.
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, len: usize, rng: &mut R) -> Self {
        let mut gates = Vec::with_capacity(len);
        while gates.len() < len {
            let a = rng.random_range(0..num_qubits);
            let g = match rng.random_range(0..3) {
                0 => Gate::H(a),
                1 => Gate::S(a),
                _ if num_qubits > 1 => {
                    let mut b = rng.random_range(0..num_qubits - 1);
                    if b >= a {
                        b += 1;
                    }
                    Gate::Cnot(a, b)
                }
                _ => continue,
            };
            gates.push(g);
        }
        Circuit { num_qubits, gates }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s, None)
    }
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {line}: missing qubit index")))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("line {line}: invalid qubit index {tok:?}")))
}

pub fn parse_gate_list(text: &str) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    let statements = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split('/').map(move |s| (i + 1, s)));
    for (line, stmt) in statements {
        let stmt = stmt.split('#').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let mut toks = stmt.split_whitespace();
        let name = toks.next().unwrap_or("").to_ascii_uppercase();
        let arity = match name.as_str() {
            "H" | "S" | "SDG" | "X" | "Y" | "Z" => 1,
            "CNOT" | "CX" | "CZ" | "SWAP" => 2,
            _ => return Err(Error::Parse(format!("line {line}: unknown gate {name:?}"))),
        };
        let a = parse_index(toks.next(), line)?;
        let b = if arity == 2 {
            let b = parse_index(toks.next(), line)?;
            if a == b {
                return Err(Error::Parse(format!(
                    "line {line}: two-qubit gate on a single wire {a}"
                )));
            }
            b
        } else {
            0
        };
        if let Some(extra) = toks.next() {
            return Err(Error::Parse(format!("line {line}: unexpected token {extra:?}")));
        }
        match name.as_str() {
            "H" => gates.push(Gate::H(a)),
            "S" => gates.push(Gate::S(a)),
            "SDG" => gates.extend([Gate::S(a); 3]),
            "Z" => gates.extend([Gate::S(a); 2]),
            "X" => gates.extend([Gate::H(a), Gate::S(a), Gate::S(a), Gate::H(a)]),
            "Y" => gates.extend([Gate::S(a), Gate::S(a), Gate::H(a), Gate::S(a), Gate::S(a), Gate::H(a)]),
            "CNOT" | "CX" => gates.push(Gate::Cnot(a, b)),
            "CZ" => gates.extend([Gate::H(b), Gate::Cnot(a, b), Gate::H(b)]),
            "SWAP" => gates.extend([Gate::Cnot(a, b), Gate::Cnot(b, a), Gate::Cnot(a, b)]),
            _ => unreachable!(),
        }
    }
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_primitives_and_comments() {
        let c: Circuit = "# bell\nH 0\ncx 0 1 # entangle\n\nS 1".parse().unwrap();
        assert_eq!(c.num_qubits(), 2);
        assert_eq!(c.gates(), &[Gate::H(0), Gate::Cnot(0, 1), Gate::S(1)]);
    }

    #[test]
    fn slash_separated_statements() {
        let c: Circuit = "H 0 / S 2 / CNOT 0 3".parse().unwrap();
        assert_eq!(c.gates(), &[Gate::H(0), Gate::S(2), Gate::Cnot(0, 3)]);
        assert_eq!(c.num_qubits(), 4);
    }

    #[test]
    fn swap_expands_to_three_cnots() {
        let gates = parse_gate_list("SWAP 0 1").unwrap();
        assert_eq!(gates.len(), 3);
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in ["T 0", "H", "H x", "CNOT 1 1", "H 0 1", "CNOT 0"] {
            assert!(parse_gate_list(bad).is_err(), "{bad}");
        }
        assert!(Circuit::parse("H 3", Some(2)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c: Circuit = "H 0\nS 1\nCNOT 1 0\n".parse().unwrap();
        assert_eq!(c.to_text().parse::<Circuit>().unwrap(), c);
    }
}
