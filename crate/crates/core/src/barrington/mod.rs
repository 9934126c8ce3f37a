//! Boolean formulas compiled into width-5 permutation branching programs.
//!
//! A compiled program's product is the identity when the formula is false
//! and the fixed 5-cycle [`sigma`] when it is true. Negation costs no length,
//! so a formula of AND/OR depth `d` compiles to exactly `4^d` instructions.

mod formula;
mod perm5;
mod program;

pub use formula::{parse_formula, random_formula, Assignment, Formula};
pub use perm5::Perm5;
pub use program::{commutator, commutator_witnesses, compile, eval_bp, sigma, Instruction, PermBP};
