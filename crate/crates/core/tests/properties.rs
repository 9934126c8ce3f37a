use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cleanqubit::barrington::{compile, eval_bp, random_formula, sigma, Assignment, Formula, Perm5};
use cleanqubit::bounds::{max_encoded_size, max_simulatable_qubits, BoundMode, TheoremParams};
use cleanqubit::encodings::{
    build_family, permutability_witness, verify_witness, FamilyKind, IndexPermutation,
};
use cleanqubit::fraction::Fraction;
use cleanqubit::mixedsim::{self, BasisPermutation, OUTPUT_TOL};
use cleanqubit::partitions::{dimension, enumerate_partitions, factorial, Partition};

/// Frobenius: with `l_i = λ_i + r - i` over `r` rows,
/// `dim λ = M! · Π_{i<j} (l_i - l_j) / Π l_i!`.
fn frobenius_dimension(parts: &[u32]) -> BigUint {
    let r = parts.len();
    let m: u32 = parts.iter().sum();
    let l: Vec<i64> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (r - 1 - i) as i64)
        .collect();
    let mut num = BigInt::from(1);
    for i in 0..r {
        for j in i + 1..r {
            num *= l[i] - l[j];
        }
    }
    num *= BigInt::from(factorial(m));
    let den = l.iter().fold(BigInt::one(), |acc, &li| {
        acc * BigInt::from(factorial(li as u32))
    });
    assert!((&num % &den).is_zero());
    (num / den).to_biguint().unwrap()
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=8, 0..=7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

#[test]
fn hook_formula_matches_frobenius() {
    for m in 0..=14 {
        for p in enumerate_partitions(m) {
            assert_eq!(dimension(&p), frobenius_dimension(p.parts()), "{p}");
        }
    }
}

#[test]
fn plancherel() {
    for m in 0..=14 {
        let total: BigUint = enumerate_partitions(m).map(|p| dimension(&p).pow(2)).sum();
        assert_eq!(total, factorial(m), "M = {m}");
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=12).map(|m| enumerate_partitions(m).count()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

proptest! {
    #[test]
    fn conjugation_preserves_dimension(p in partition_strategy()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(dimension(&p.conjugate()), dimension(&p));
    }

    #[test]
    fn branching_sum(p in partition_strategy()) {
        prop_assume!(!p.is_empty());
        let sum: BigUint = p.restrict().iter().map(dimension).sum();
        prop_assert_eq!(sum, frobenius_dimension(p.parts()));
        for q in p.restrict() {
            prop_assert_eq!(q.size() + 1, p.size());
        }
    }

    #[test]
    fn hooks_divide_factorial(p in partition_strategy()) {
        let d = p.dimension().unwrap();
        prop_assert_eq!(d * p.hook_product(), factorial(p.size()));
    }
}

/// Independent program evaluation on 1-based image arrays.
fn run_by_hand(bp: &cleanqubit::barrington::PermBP, x: &Assignment) -> [u8; 5] {
    let mut acc = [1u8, 2, 3, 4, 5];
    for ins in &bp.instructions {
        let p = if x.get(ins.var).unwrap() {
            ins.p1
        } else {
            ins.p0
        }
        .one_based();
        for a in acc.iter_mut() {
            *a = p[*a as usize - 1];
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn barrington_soundness(seed in any::<u64>(), depth in 0u32..=4, vars in 1u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, depth, vars);
        let bp = compile(&f);
        prop_assert_eq!(bp.len(), 4usize.pow(f.depth()));
        prop_assert!(bp.validate().is_ok());
        for x in Assignment::all(vars) {
            let by_hand = run_by_hand(&bp, &x);
            let got = eval_bp(&bp, &x).unwrap();
            prop_assert_eq!(got.one_based(), by_hand);
            if f.eval(&x).unwrap() {
                prop_assert_eq!(by_hand, [2, 3, 4, 5, 1]);
            } else {
                prop_assert_eq!(by_hand, [1, 2, 3, 4, 5]);
            }
        }
    }

    #[test]
    fn perm5_group_laws(a in 0usize..120, b in 0usize..120, c in 0usize..120) {
        let all: Vec<Perm5> = Perm5::all().collect();
        let (a, b, c) = (all[a], all[b], all[c]);
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).is_even(), a.is_even() == b.is_even());
    }
}

#[test]
fn sigma_is_the_standard_five_cycle() {
    assert_eq!(sigma().one_based(), [2, 3, 4, 5, 1]);
    assert_eq!(Perm5::all().count(), 120);
    assert_eq!(Perm5::all().filter(|p| p.is_five_cycle()).count(), 24);
}

#[test]
fn rejecting_runs_have_bias_one_half() {
    let f: Formula = "((x1&x2)|!x3)".parse().unwrap();
    for x in Assignment::all(3) {
        let out = mixedsim::accept(&f, &x, 3, 1).unwrap();
        let bias = Fraction(out.p0.0.clone() - out.p1.0.clone());
        let expected = if f.eval(&x).unwrap() {
            Fraction::one()
        } else {
            Fraction::new(1, 2)
        };
        assert_eq!(bias, expected, "{x:?}");
        assert_eq!(out.accepted, out.formula_value);
    }
}

#[test]
fn diagonal_and_dense_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let f = random_formula(&mut rng, 3, 3);
        let bp = compile(&f);
        for n in 3..=5 {
            for k in 0..=2 {
                for x in Assignment::all(3) {
                    let init = mixedsim::init_register(n, k).unwrap();
                    let out = mixedsim::run_bp(&bp, &x, &init).unwrap();
                    let dense = out.to_dense().unwrap();
                    let (p0, p1) = out.measure(1).unwrap();
                    let (d0, d1) = dense.measure_approx(1).unwrap();
                    assert!((p0.to_f64() - d0).abs() < OUTPUT_TOL);
                    assert!((p1.to_f64() - d1).abs() < OUTPUT_TOL);
                    assert_eq!(out.total_probability().unwrap(), Fraction::one());
                }
            }
        }
    }
}

#[test]
fn one_clean_qubit_on_larger_registers() {
    // With spectator qubits the probability of reading 1 still depends only
    // on the three program qubits.
    let f: Formula = "(x1&x2)".parse().unwrap();
    let x: Assignment = "x1=1,x2=0".parse().unwrap();
    for n in 3..=30 {
        let out = mixedsim::accept(&f, &x, n, 1).unwrap();
        assert_eq!(out.p1, Fraction::new(1, 4), "n = {n}");
    }
}

/// Largest `m` with `2^m ≤ bound`, by counting up with exact comparisons.
fn log2_by_counting(bound: &BigRational) -> u32 {
    let mut m = 0u32;
    let two = BigRational::from_integer(2.into());
    let mut pow = two.clone();
    while pow <= *bound {
        m += 1;
        pow *= &two;
    }
    m
}

proptest! {
    #[test]
    fn qubit_count_is_floor_log2_of_bound(
        n in 1u64..=1 << 24,
        k in 0u32..=12,
        dn in 1i64..=64,
        cn in 1i64..=16,
        general in any::<bool>(),
    ) {
        prop_assume!(u64::from(k) <= n);
        let delta = BigRational::new(dn.into(), 64.into());
        let c = BigRational::new(cn.into(), 4.into());
        let mode = if general { BoundMode::General } else { BoundMode::Representation };
        let p = TheoremParams::new(n, k, delta.clone(), c.clone()).unwrap();

        // Oracle for the bound itself, written out from the two inequalities.
        let nn = BigRational::from_integer(BigInt::from(n));
        let two_k1 = BigRational::from_integer(BigInt::from(2u64.pow(k + 1)));
        let expected = if general {
            &two_k1 * &two_k1 * &c * &nn / (&delta * &delta)
        } else {
            &two_k1 * &c * &nn / &delta
        };
        let bound = max_encoded_size(&p, mode).unwrap();
        prop_assert_eq!(&bound, &expected);
        prop_assert_eq!(max_simulatable_qubits(&p, mode).unwrap(), log2_by_counting(&bound));

        let bigger = TheoremParams::new(n + 1, k, delta.clone(), c.clone()).unwrap();
        prop_assert!(max_simulatable_qubits(&bigger, mode).unwrap() >= max_simulatable_qubits(&p, mode).unwrap());
        let smaller_gap = TheoremParams::new(n, k, delta.clone() / BigRational::from_integer(2.into()), c).unwrap();
        prop_assert!(max_simulatable_qubits(&smaller_gap, mode).unwrap() >= max_simulatable_qubits(&p, mode).unwrap());
    }
}

#[test]
fn calculator_examples() {
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::one();
    let p = TheoremParams::new(1024, 1, half, one.clone()).unwrap();
    assert_eq!(max_simulatable_qubits(&p, BoundMode::General).unwrap(), 16);
    assert_eq!(
        max_simulatable_qubits(&p, BoundMode::Representation).unwrap(),
        13
    );
    let p = TheoremParams::new(1, 0, one.clone(), one).unwrap();
    assert_eq!(
        max_simulatable_qubits(&p, BoundMode::Representation).unwrap(),
        1
    );
}

#[test]
fn closed_forms_match_enumeration() {
    for n in 2..=8 {
        for kind in [FamilyKind::Parity, FamilyKind::Pointed] {
            let f = build_family(n, kind).unwrap();
            let idx: Vec<u64> = f.indices().collect();
            for (i, &a) in idx.iter().enumerate() {
                for &b in &idx[i + 1..] {
                    let by_sets = f
                        .member(a)
                        .unwrap()
                        .intersection(&f.member(b).unwrap())
                        .count() as u64;
                    assert_eq!(
                        f.intersection_size(a, b).unwrap(),
                        by_sets,
                        "{kind} n = {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn pointed_witnesses_carry_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=8 {
        let f = build_family(n, FamilyKind::Pointed).unwrap();
        for _ in 0..100 {
            let pi = IndexPermutation::random(&mut rng, &f);
            let g = permutability_witness(&f, &pi)
                .unwrap()
                .expect("pointed witnesses exist");
            assert!(verify_witness(&f, &pi, &g).unwrap());
            // Check the set images directly as well.
            for b in f.indices() {
                let image: std::collections::BTreeSet<u64> =
                    f.member(b).unwrap().iter().map(|&x| g.apply(x)).collect();
                assert_eq!(image, f.member(pi.apply(b)).unwrap());
            }
        }
    }
}

#[test]
fn mixed_granularity_matches_explicit_vector() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let n = 6usize;
    for k in 0..=3 {
        let mut state = mixedsim::init_register(n, k).unwrap();
        // Oracle: the distribution as a plain vector, in units of 2^{-(n-k)}.
        let mut probs: Vec<u64> = (0..1u64 << n)
            .map(|x| u64::from(x >> (n - k) == 0))
            .collect();
        for step in 0..40 {
            let g = if step % 3 == 0 {
                let mut images: Vec<u64> = (0..1u64 << n).collect();
                let (a, b) = (rng.gen_range(0..64), rng.gen_range(0..64));
                images.swap(a, b);
                BasisPermutation::from_pairs(
                    n,
                    images.into_iter().enumerate().map(|(x, y)| (x as u64, y)),
                )
                .unwrap()
            } else {
                let p = Perm5::all().nth(rng.gen_range(0..120)).unwrap();
                BasisPermutation::from_perm5(&p, n).unwrap()
            };
            let mut next = vec![0; probs.len()];
            for (x, &w) in probs.iter().enumerate() {
                next[g.apply(x as u64) as usize] = w;
            }
            probs = next;
            state.apply_permutation_in_place(&g).unwrap();
            let denom = 1i64 << (n - k);
            for q in 1..=n {
                let ones: u64 = (0..1u64 << n)
                    .filter(|x| x >> (n - q) & 1 == 1)
                    .map(|x| probs[x as usize])
                    .sum();
                assert_eq!(
                    state.measure(q).unwrap().1,
                    Fraction::new(ones as i64, denom),
                    "k = {k}, step {step}, qubit {q}"
                );
            }
            for x in 0..1u64 << n {
                assert_eq!(
                    state.probability(x).unwrap(),
                    Fraction::new(probs[x as usize] as i64, denom)
                );
            }
        }
        assert_eq!(state.total_probability().unwrap(), Fraction::one());
    }
}
