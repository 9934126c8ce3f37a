use serde::{Deserialize, Serialize};

use super::formula::{Assignment, Formula};
use super::perm5::Perm5;
use crate::error::{Error, Result};

/// One step of a branching program: read `var`, apply `p0` if it is 0 and
/// `p1` if it is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instruction {
    pub var: u32,
    pub p0: Perm5,
    pub p1: Perm5,
}

impl Instruction {
    pub fn select(&self, x: &Assignment) -> Result<Perm5> {
        Ok(if x.get(self.var)? { self.p1 } else { self.p0 })
    }
}

/// A width-5 permutation branching program. Its product is the identity on
/// inputs where the compiled formula is false and `sigma` where it is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermBP {
    pub num_vars: u32,
    pub sigma: Perm5,
    pub instructions: Vec<Instruction>,
}

impl PermBP {
    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Checks the structural invariants of a program read from outside.
    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_five_cycle() {
            return Err(Error::InvalidPermutation(format!(
                "accepting permutation {} is not a 5-cycle",
                self.sigma
            )));
        }
        for (i, ins) in self.instructions.iter().enumerate() {
            if ins.var == 0 || ins.var > self.num_vars {
                return Err(Error::InvalidPermutation(format!(
                    "instruction {i} reads x{} but the program has {} variables",
                    ins.var, self.num_vars
                )));
            }
        }
        Ok(())
    }
}

/// The output cycle of every compiled program.
pub fn sigma() -> Perm5 {
    Perm5::cycle(&[1, 2, 3, 4, 5]).expect("valid cycle")
}

/// Two 5-cycles whose commutator `α β α⁻¹ β⁻¹` (left to right) is again a
/// 5-cycle. Every AND node relabels this pair so that the commutator becomes
/// the cycle the node has to output.
pub fn commutator_witnesses() -> (Perm5, Perm5) {
    (
        Perm5::cycle(&[1, 2, 3, 4, 5]).expect("valid cycle"),
        Perm5::cycle(&[1, 3, 5, 4, 2]).expect("valid cycle"),
    )
}

/// `a`, then `b`, then `a⁻¹`, then `b⁻¹`.
pub fn commutator(a: &Perm5, b: &Perm5) -> Perm5 {
    a.then(b).then(&a.inverse()).then(&b.inverse())
}

/// Barrington's construction: a program of length exactly `4^depth` whose
/// product is `sigma()` where `f` holds and the identity elsewhere.
pub fn compile(f: &Formula) -> PermBP {
    let sigma = sigma();
    PermBP {
        num_vars: f.num_vars(),
        sigma,
        instructions: compile_to(f, sigma),
    }
}

fn compile_to(f: &Formula, target: Perm5) -> Vec<Instruction> {
    match f {
        Formula::Var(i) => vec![Instruction {
            var: *i,
            p0: Perm5::IDENTITY,
            p1: target,
        }],
        Formula::Not(g) => {
            // g yields target⁻¹ or 1; finishing with target flips that to 1 or target.
            let mut prog = compile_to(g, target.inverse());
            let last = prog.last_mut().expect("programs are never empty");
            last.p0 = last.p0.then(&target);
            last.p1 = last.p1.then(&target);
            prog
        }
        Formula::And(g, h) => {
            let (a0, b0) = commutator_witnesses();
            let theta = Perm5::conjugator(&commutator(&a0, &b0), &target)
                .expect("witness commutator and target are 5-cycles");
            let (a, b) = (a0.relabel(&theta), b0.relabel(&theta));
            let quarter = 4usize.pow(f.depth() - 1);
            let mut prog = Vec::with_capacity(4 * quarter);
            for (sub, cycle) in [(g, a), (h, b), (g, a.inverse()), (h, b.inverse())] {
                let mut part = compile_to(sub, cycle);
                let pad = Instruction {
                    var: sub.first_var(),
                    p0: Perm5::IDENTITY,
                    p1: Perm5::IDENTITY,
                };
                part.resize(quarter, pad);
                prog.extend(part);
            }
            prog
        }
        Formula::Or(g, h) => {
            let dual = Formula::not(Formula::and(
                Formula::not((**g).clone()),
                Formula::not((**h).clone()),
            ));
            compile_to(&dual, target)
        }
    }
}

/// Product of the selected permutations, first instruction applied first.
pub fn eval_bp(bp: &PermBP, x: &Assignment) -> Result<Perm5> {
    bp.instructions
        .iter()
        .try_fold(Perm5::IDENTITY, |acc, ins| Ok(acc.then(&ins.select(x)?)))
}
