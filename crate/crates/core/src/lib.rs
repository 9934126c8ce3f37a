//! Width-5 permutation branching programs executed on a register with a few
//! clean qubits, plus exact checks of the symmetric-group dimension bounds
//! that limit what such registers can encode.
//!
//! * [`partitions`]: Young diagrams, hook lengths, dimensions, restriction.
//! * [`bounds`]: two-row dimensions and exhaustive scans of the dimension
//!   lower bounds; the qubit-count calculator.
//! * [`barrington`]: formula parser and the width-5 program compiler.
//! * [`mixedsim`]: exact register simulator (diagonal and dense modes).
//! * [`encodings`]: subspace encoding families and their overlap and
//!   permutability properties.

pub mod barrington;
pub mod bounds;
pub mod encodings;
mod error;
pub mod fraction;
pub mod mixedsim;
pub mod partitions;

pub use error::{Error, Result};
pub use num_bigint::BigUint;
pub use partitions::{Cell, Partition};
