pub mod bell;
pub mod bits;
pub mod circuit;
pub mod dense;
pub mod ensemble;
pub mod error;
pub mod gf2;
pub mod hp;
pub mod local;
pub mod logical;
pub mod mixture;
pub mod pauli;
pub mod stabilizer;
pub mod tableau;
pub mod wigner;

pub use bits::BitVector;
pub use circuit::{Circuit, Gate};
pub use error::{Error, Result};
pub use gf2::{Elimination, Gf2Matrix};
pub use hp::{HpInstance, HpLayout, Partition};
pub use pauli::{PauliKind, PauliOperator};
pub use stabilizer::StabilizerState;
pub use tableau::CliffordTableau;
