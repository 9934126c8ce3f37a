//! Exact simulation of an `n`-qubit register whose first `k` qubits start
//! clean (`|0⟩`) and whose remaining `n - k` qubits start maximally mixed.
//!
//! Two representations:
//!
//! * **diagonal**: a classical distribution over `{0,1}^n`, exact in
//!   rationals. Only basis permutations act on it, so the state is stored as
//!   the initial distribution pulled back through the accumulated
//!   permutation; memory is proportional to the strings moved, not `2^n`,
//!   and moves that leave trailing qubits alone are stored per prefix.
//! * **dense**: a complex `2^n x 2^n` density matrix in `f64`, `n ≤ 10`,
//!   for general unitaries.
//!
//! Qubit 1 is the most significant bit of a basis string.

mod basis;
mod dense;

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

pub use basis::{bit_string, parse_bit_string, BasisPermutation};
pub use dense::{random_unitary, unitarity_deviation, INPUT_TOL, MAX_DENSE_QUBITS, OUTPUT_TOL};

use crate::barrington::{compile, Assignment, Formula, Perm5, PermBP};
use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Largest register the diagonal mode accepts.
pub const MAX_DIAGONAL_QUBITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Diagonal,
    Dense,
}

/// Maps a string `y` to `g⁻¹(y)` for the accumulated permutation `g`.
/// Keys and values are `(n - block)`-bit prefixes and the trailing `block`
/// bits are carried along; unlisted prefixes map to themselves. `block`
/// never exceeds the number of mixed qubits, so all strings sharing a
/// prefix have the same initial probability.
#[derive(Clone, Debug, PartialEq)]
struct Pullback {
    block: usize,
    map: BTreeMap<u64, u64>,
}

impl Pullback {
    fn new(block: usize) -> Self {
        Pullback {
            block,
            map: BTreeMap::new(),
        }
    }

    fn pre(&self, x: u64) -> u64 {
        match self.map.get(&(x >> self.block)) {
            Some(&p) => p << self.block | (x & ((1 << self.block) - 1)),
            None => x,
        }
    }

    fn refine(&mut self, t: usize) {
        if t >= self.block {
            return;
        }
        let k = self.block - t;
        self.map = self
            .map
            .iter()
            .flat_map(|(&y, &x)| (0..1u64 << k).map(move |s| (y << k | s, x << k | s)))
            .collect();
        self.block = t;
    }

    /// `(y, g⁻¹(y))` as full strings standing for their whole block.
    fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.map
            .iter()
            .map(|(&y, &x)| (y << self.block, x << self.block))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Diagonal(Pullback),
    Dense(DMatrix<Complex64>),
}

/// State of a register with `k` clean and `n - k` maximally mixed qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterState {
    n: usize,
    k: usize,
    repr: Repr,
}

fn check_nk(n: usize, k: usize, max: usize) -> Result<()> {
    if n == 0 || n > max || k > n {
        return Err(Error::InvalidRegister(format!(
            "need 0 <= k <= n and 1 <= n <= {max}, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Fresh diagonal register: uniform over the `2^{n-k}` strings whose first
/// `k` bits are 0.
pub fn init_register(n: usize, k: usize) -> Result<RegisterState> {
    check_nk(n, k, MAX_DIAGONAL_QUBITS)?;
    Ok(RegisterState {
        n,
        k,
        repr: Repr::Diagonal(Pullback::new(n - k)),
    })
}

/// Fresh dense register with the same initial state as [`init_register`].
pub fn init_dense(n: usize, k: usize) -> Result<RegisterState> {
    check_nk(n, k, MAX_DENSE_QUBITS)?;
    init_register(n, k)?.to_dense()
}

impl RegisterState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        match self.repr {
            Repr::Diagonal(_) => Mode::Diagonal,
            Repr::Dense(_) => Mode::Dense,
        }
    }

    fn mixed(&self) -> usize {
        self.n - self.k
    }

    // Initial probability of `x`, in units of 2^{-(n-k)}.
    fn initial_weight(&self, x: u64) -> i64 {
        i64::from(x >> self.mixed() == 0)
    }

    fn unit(&self) -> Fraction {
        Fraction::new(1, BigInt::from(1u64) << self.mixed())
    }

    fn pullback(&self) -> Result<&Pullback> {
        match &self.repr {
            Repr::Diagonal(pullback) => Ok(pullback),
            Repr::Dense(_) => Err(Error::ModeMismatch {
                expected: "diagonal",
            }),
        }
    }

    fn check_string(&self, x: u64) -> Result<()> {
        if self.n < 64 && x >> self.n != 0 {
            return Err(Error::OutOfRange(format!(
                "basis string {x} has more than {} bits",
                self.n
            )));
        }
        Ok(())
    }

    /// Exact probability of basis string `x` (diagonal mode).
    pub fn probability(&self, x: u64) -> Result<Fraction> {
        self.check_string(x)?;
        let pre = self.pullback()?.pre(x);
        Ok(if self.initial_weight(pre) == 1 {
            self.unit()
        } else {
            Fraction::zero()
        })
    }

    /// All strings with nonzero probability, in increasing order. Only for
    /// registers small enough to list (at most `2^20` support strings).
    pub fn probabilities(&self) -> Result<BTreeMap<u64, Fraction>> {
        let pullback = self.pullback()?;
        if self.mixed() > 20 {
            return Err(Error::OutOfRange(format!(
                "support of 2^{} strings is too large to list",
                self.mixed()
            )));
        }
        let unit = self.unit();
        let b = pullback.block;
        let mut out: BTreeMap<u64, Fraction> = (0..1u64 << self.mixed())
            .filter(|x| !pullback.map.contains_key(&(x >> b)))
            .map(|x| (x, unit.clone()))
            .collect();
        for (y, x) in pullback.entries() {
            if self.initial_weight(x) == 1 {
                out.extend((0..1u64 << b).map(|s| (y | s, unit.clone())));
            }
        }
        Ok(out)
    }

    /// Sum of all probabilities; exactly 1 in diagonal mode.
    pub fn total_probability(&self) -> Result<Fraction> {
        let pullback = self.pullback()?;
        let base = 1i64 << self.mixed();
        let moved: i64 = pullback
            .entries()
            .map(|(y, x)| (self.initial_weight(x) - self.initial_weight(y)) << pullback.block)
            .sum();
        Ok(Fraction::new(
            base + moved,
            BigInt::from(1u64) << self.mixed(),
        ))
    }

    /// Same distribution (diagonal) or same matrix within `tol` (dense).
    pub fn approx_eq(&self, other: &RegisterState, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Diagonal(a), Repr::Diagonal(b)) => {
                if self.k != other.k {
                    return match (self.probabilities(), other.probabilities()) {
                        (Ok(pa), Ok(pb)) => pa == pb,
                        _ => false,
                    };
                }
                let t = a.block.min(b.block);
                let (mut a, mut b) = (a.clone(), b.clone());
                a.refine(t);
                b.refine(t);
                let same = a
                    .entries()
                    .chain(b.entries())
                    .all(|(y, _)| self.initial_weight(a.pre(y)) == other.initial_weight(b.pre(y)));
                same
            }
            _ => match (self.density_matrix(), other.density_matrix()) {
                (Ok(a), Ok(b)) => (a - b).iter().all(|z| z.norm() <= tol),
                _ => false,
            },
        }
    }

    /// The density matrix; diagonal states are expanded (`n ≤ 10`).
    pub fn density_matrix(&self) -> Result<DMatrix<Complex64>> {
        match &self.repr {
            Repr::Dense(rho) => Ok(rho.clone()),
            Repr::Diagonal(_) => match self.to_dense()?.repr {
                Repr::Dense(rho) => Ok(rho),
                Repr::Diagonal(_) => unreachable!(),
            },
        }
    }

    /// The same state as a dense density matrix.
    pub fn to_dense(&self) -> Result<RegisterState> {
        match &self.repr {
            Repr::Dense(_) => Ok(self.clone()),
            Repr::Diagonal(_) => {
                check_nk(self.n, self.k, MAX_DENSE_QUBITS)?;
                let dim = 1usize << self.n;
                let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
                for (x, p) in self.probabilities()? {
                    rho[(x as usize, x as usize)] = Complex64::new(p.to_f64(), 0.0);
                }
                Ok(RegisterState {
                    n: self.n,
                    k: self.k,
                    repr: Repr::Dense(rho),
                })
            }
        }
    }

    /// Pushforward under a basis permutation: `P'(g(x)) = P(x)`.
    pub fn apply_permutation(&self, g: &BasisPermutation) -> Result<RegisterState> {
        let mut out = self.clone();
        out.apply_permutation_in_place(g)?;
        Ok(out)
    }

    pub fn apply_permutation_in_place(&mut self, g: &BasisPermutation) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::InvalidRegister(format!(
                "permutation on {} qubits applied to {} qubits",
                g.n(),
                self.n
            )));
        }
        match &mut self.repr {
            Repr::Diagonal(pullback) => {
                if g.is_identity() {
                    return Ok(());
                }
                let t = pullback.block.min(g.block());
                pullback.refine(t);
                let map = &mut pullback.map;
                let updates: Vec<(u64, u64)> = g
                    .moved_blocks(t)
                    .map(|(x, y)| (y, map.get(&x).copied().unwrap_or(x)))
                    .collect();
                for (y, pre) in updates {
                    if y == pre {
                        map.remove(&y);
                    } else {
                        map.insert(y, pre);
                    }
                }
                if map.is_empty() {
                    *pullback = Pullback::new(self.n - self.k);
                }
            }
            Repr::Dense(rho) => {
                let dim = rho.nrows();
                let image: Vec<usize> = (0..dim as u64).map(|x| g.apply(x) as usize).collect();
                let mut out = DMatrix::<Complex64>::zeros(dim, dim);
                for r in 0..dim {
                    for c in 0..dim {
                        out[(image[r], image[c])] = rho[(r, c)];
                    }
                }
                *rho = out;
            }
        }
        Ok(())
    }

    /// `ρ -> U ρ U†` with `u` acting on 1-based `targets` (at most 3,
    /// distinct; the first target is the most significant bit of `u`'s index).
    pub fn apply_unitary(
        &self,
        u: &DMatrix<Complex64>,
        targets: &[usize],
    ) -> Result<RegisterState> {
        let Repr::Dense(rho) = &self.repr else {
            return Err(Error::ModeMismatch { expected: "dense" });
        };
        if targets.is_empty() || targets.len() > 3 {
            return Err(Error::OutOfRange(format!(
                "{} target qubits",
                targets.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t == 0 || t > self.n {
                return Err(Error::QubitOutOfRange {
                    index: t,
                    n: self.n,
                });
            }
            if targets[..i].contains(&t) {
                return Err(Error::OutOfRange(format!("qubit {t} targeted twice")));
            }
        }
        let local = 1usize << targets.len();
        if u.nrows() != local || u.ncols() != local {
            return Err(Error::OutOfRange(format!(
                "{}x{} matrix on {} qubits",
                u.nrows(),
                u.ncols(),
                targets.len()
            )));
        }
        let dev = unitarity_deviation(u);
        if dev.is_nan() || dev > INPUT_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let zero_based: Vec<usize> = targets.iter().map(|t| t - 1).collect();
        let rho = dense::conjugate_local(rho, u, &zero_based, self.n);
        Ok(RegisterState {
            n: self.n,
            k: self.k,
            repr: Repr::Dense(rho),
        })
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Exact marginal `(P(0), P(1))` of a 1-based qubit (diagonal mode).
    pub fn measure(&self, qubit: usize) -> Result<(Fraction, Fraction)> {
        self.check_qubit(qubit)?;
        let pullback = self.pullback()?;
        let shift = self.n - qubit;
        let mixed = self.mixed();
        // Count of initially supported strings with the bit set, corrected
        // for every string the accumulated permutation moved.
        let mut ones: i64 = if qubit > self.k {
            1i64 << (mixed - 1)
        } else {
            0
        };
        let b = pullback.block;
        for (y, x) in pullback.entries() {
            let diff = self.initial_weight(x) - self.initial_weight(y);
            if shift < b {
                // The measured qubit is inside the block: half its strings have it set.
                ones += diff << (b - 1);
            } else if y >> shift & 1 == 1 {
                ones += diff << b;
            }
        }
        let denom = BigInt::from(1u64) << mixed;
        let p1 = Fraction::new(ones, denom.clone());
        let p0 = Fraction::new((1i64 << mixed) - ones, denom);
        Ok((p0, p1))
    }

    /// Marginal in floating point; works in both modes.
    pub fn measure_approx(&self, qubit: usize) -> Result<(f64, f64)> {
        self.check_qubit(qubit)?;
        match &self.repr {
            Repr::Diagonal(_) => {
                let (p0, p1) = self.measure(qubit)?;
                Ok((p0.to_f64(), p1.to_f64()))
            }
            Repr::Dense(rho) => {
                let shift = self.n - qubit;
                let p1: f64 = (0..rho.nrows())
                    .filter(|x| x >> shift & 1 == 1)
                    .map(|x| rho[(x, x)].re)
                    .sum();
                let tr = self.trace()?;
                Ok((tr - p1, p1))
            }
        }
    }

    /// Trace of the density matrix (dense mode).
    pub fn trace(&self) -> Result<f64> {
        match &self.repr {
            Repr::Dense(rho) => Ok(rho.trace().re),
            Repr::Diagonal(_) => Ok(self.total_probability()?.to_f64()),
        }
    }

    /// `max |ρ - ρ†|` (dense mode); 0 for diagonal states.
    pub fn hermiticity_deviation(&self) -> f64 {
        match &self.repr {
            Repr::Dense(rho) => (rho - rho.adjoint())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max),
            Repr::Diagonal(_) => 0.0,
        }
    }
}

/// Runs a branching program on the register: each instruction's selected
/// permutation acts on the five prefixes `000..100` of the first three
/// qubits.
pub fn run_bp(bp: &PermBP, x: &Assignment, s: &RegisterState) -> Result<RegisterState> {
    if s.n() < 3 {
        return Err(Error::InvalidRegister(format!(
            "branching programs need at least 3 qubits, got {}",
            s.n()
        )));
    }
    let mut out = s.clone();
    let mut cache: HashMap<Perm5, BasisPermutation> = HashMap::new();
    for ins in &bp.instructions {
        let p = ins.select(x)?;
        if p.is_identity() {
            continue;
        }
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(p) {
            e.insert(BasisPermutation::from_perm5(&p, s.n())?);
        }
        out.apply_permutation_in_place(&cache[&p])?;
    }
    Ok(out)
}

/// Measurement statistics of one accept/reject run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptOutcome {
    pub p0: Fraction,
    pub p1: Fraction,
    /// Qubit 1 can never read 1.
    pub accepted: bool,
    pub formula_value: bool,
}

/// Decides `f(x)` on a fresh register with the accept-on-identity
/// convention: the negation of `f` is compiled, so inputs satisfying `f`
/// leave the register unchanged and qubit 1 reads 0 with certainty. On the
/// others a 5-cycle moves one of the four supported prefixes onto `100`,
/// and on the three-qubit, one-clean register qubit 1 reads 1 with
/// probability exactly 1/4.
pub fn accept(f: &Formula, x: &Assignment, n: usize, k: usize) -> Result<AcceptOutcome> {
    let bp = compile(&Formula::not(f.clone()));
    let state = run_bp(&bp, x, &init_register(n, k)?)?;
    let (p0, p1) = state.measure(1)?;
    Ok(AcceptOutcome {
        accepted: p1 == Fraction::zero(),
        formula_value: f.eval(x)?,
        p0,
        p1,
    })
}
