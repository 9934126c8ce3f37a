//! A reduced run of the invariant suite, small enough to finish in seconds.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cleanqubit::barrington::{compile, random_formula, Assignment};
use cleanqubit::bounds::{self, BoundMode, TheoremParams};
use cleanqubit::encodings::{
    build_family, build_perm_rep_instance, check_bound_difference, overlap_stats,
    permutability_witness, verify_witness, FamilyKind, IndexPermutation, PermRepVariant,
};
use cleanqubit::fraction::{parse_rational, Fraction};
use cleanqubit::mixedsim::{self, random_unitary, BasisPermutation, OUTPUT_TOL};
use cleanqubit::partitions::{enumerate_partitions, Partition};
use cleanqubit::Result;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed_count: usize,
    pub failed_count: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failed_count == 0
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<(bool, String)>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("dimension", dimension),
    ("branching", branching),
    ("phi", phi),
    ("rasala", rasala),
    ("shape-lemma", shape_lemma),
    ("barrington", barrington),
    ("mixture-invariance", invariance),
    ("encodings", encodings),
    ("bound-difference", bound_difference),
    ("theorem", theorem),
];

pub fn run(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks: Vec<Check> = CHECKS
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = f(&mut rng).unwrap_or_else(|e| (false, format!("error: {e}")));
            Check {
                name,
                passed,
                detail,
            }
        })
        .collect();
    let passed_count = checks.iter().filter(|c| c.passed).count();
    SelftestReport {
        failed_count: checks.len() - passed_count,
        passed_count,
        checks,
    }
}

fn dimension(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let d = Partition::new(vec![4, 4, 2, 1])?.dimension()?;
    Ok((d == BigUint::from(1320u32), format!("dim [4,4,2,1] = {d}")))
}

fn branching(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let lambda = Partition::new(vec![4, 4, 2, 1])?;
    let mut ok = lambda.restrict().len() == 3;
    let mut checked = 0;
    for m in 1..=10 {
        for p in enumerate_partitions(m) {
            let sum: BigUint = p
                .restrict()
                .iter()
                .map(|q| q.dimension())
                .sum::<Result<BigUint>>()?;
            ok &= sum == p.dimension()?;
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} shapes, M <= 10")))
}

fn phi(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut ok = true;
    for m in 1..=12 {
        for a in 0..=m / 2 {
            ok &= bounds::phi(a, m)? == Partition::two_row(m, a)?.dimension()?;
        }
    }
    Ok((ok, "M <= 12".into()))
}

fn rasala(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut violations = 0;
    for m in 4..=10 {
        violations += bounds::check_rasala(m)?.violations.len();
    }
    Ok((
        violations == 0,
        format!("{violations} violations, 4 <= M <= 10"),
    ))
}

fn shape_lemma(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut violations = 0;
    for m in 3..=10 {
        violations += bounds::check_shape_lemma(m)?.violations.len();
    }
    Ok((
        violations == 0,
        format!("{violations} violations, 3 <= M <= 10"),
    ))
}

fn barrington(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let quarter = Fraction::new(1, 4);
    let mut ok = true;
    for _ in 0..20 {
        let vars = rng.gen_range(1..=4);
        let f = random_formula(rng, 3, vars);
        ok &= compile(&f).len() == 4usize.pow(f.depth());
        for x in Assignment::all(vars) {
            let out = mixedsim::accept(&f, &x, 3, 1)?;
            let expected = if out.formula_value {
                Fraction::zero()
            } else {
                quarter.clone()
            };
            ok &= out.p1 == expected;
        }
    }
    Ok((ok, "20 formulas, depth <= 3".into()))
}

fn invariance(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let s = mixedsim::init_register(4, 0)?;
    let g = BasisPermutation::from_pairs(4, [(0, 5), (5, 9), (9, 0)])?;
    let mut ok = s.apply_permutation(&g)?.probabilities()? == s.probabilities()?;
    let dense = mixedsim::init_dense(4, 0)?;
    for targets in [vec![1], vec![2, 4], vec![1, 3, 4]] {
        let u = random_unitary(rng, 1 << targets.len());
        ok &= dense
            .apply_unitary(&u, &targets)?
            .approx_eq(&dense, OUTPUT_TOL);
    }
    Ok((ok, "n = 4, k = 0".into()))
}

fn encodings(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut ok = true;
    for n in 2..=6 {
        let parity = overlap_stats(&build_family(n, FamilyKind::Parity)?)?;
        ok &= parity.max_ratio == Some(Fraction::new(1, 2));
        let half = 1i64 << (n - 1);
        let pointed = overlap_stats(&build_family(n, FamilyKind::Pointed)?)?;
        ok &= pointed.max_ratio == Some(Fraction::new(half, half + 1));
    }
    let f = build_family(5, FamilyKind::Pointed)?;
    for _ in 0..10 {
        let pi = IndexPermutation::random(rng, &f);
        ok &= match permutability_witness(&f, &pi)? {
            Some(g) => verify_witness(&f, &pi, &g)?,
            None => false,
        };
    }
    Ok((ok, "n <= 6, 10 witnesses at n = 5".into()))
}

fn bound_difference(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let one = parse_rational("1")?;
    let mut violations = 0;
    for m in 2..=12 {
        for v in [PermRepVariant::Coordinate, PermRepVariant::Complement] {
            violations += check_bound_difference(&build_perm_rep_instance(m, v)?, &one)?.violations;
        }
    }
    Ok((violations == 0, format!("{violations} violations, M <= 12")))
}

fn theorem(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let p = TheoremParams::new(1024, 1, parse_rational("1/2")?, parse_rational("1")?)?;
    let m = bounds::max_simulatable_qubits(&p, BoundMode::General)?;
    Ok((m == 16, format!("general mode: {m} qubits")))
}
