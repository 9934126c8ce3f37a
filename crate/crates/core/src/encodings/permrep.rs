use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{round_sig, Fraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PermRepVariant {
    /// `X_i` = the `i`-th coordinate axis.
    Coordinate,
    /// `X_i` = the span of every axis except the `i`-th.
    Complement,
}

impl fmt::Display for PermRepVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermRepVariant::Coordinate => "coordinate",
            PermRepVariant::Complement => "complement",
        })
    }
}

impl FromStr for PermRepVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coordinate" => Ok(PermRepVariant::Coordinate),
            "complement" => Ok(PermRepVariant::Complement),
            _ => Err(Error::OutOfRange(format!("unknown variant {s:?}"))),
        }
    }
}

/// `S_M` acting on `C^N` by permuting coordinates, together with a family
/// of `M` axis-spanned subspaces it permutes. Subspaces are sets of axes, so
/// `dim X = |X|` and `dim X ∩ Y = |X ∩ Y|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRepInstance {
    pub m: usize,
    pub variant: PermRepVariant,
    pub ambient_dim: usize,
    pub subspaces: Vec<BTreeSet<usize>>,
    /// Adjacent transpositions `s_1..s_{M-1}` as permutations of the axes.
    pub generators: Vec<Vec<usize>>,
}

pub fn build_perm_rep_instance(m: usize, variant: PermRepVariant) -> Result<PermRepInstance> {
    if !(2..=12).contains(&m) {
        return Err(Error::OutOfRange(format!("M = {m} outside 2..=12")));
    }
    let subspaces = (0..m)
        .map(|i| match variant {
            PermRepVariant::Coordinate => BTreeSet::from([i]),
            PermRepVariant::Complement => (0..m).filter(|&j| j != i).collect(),
        })
        .collect();
    let generators = (0..m - 1)
        .map(|j| {
            let mut p: Vec<usize> = (0..m).collect();
            p.swap(j, j + 1);
            p
        })
        .collect();
    Ok(PermRepInstance {
        m,
        variant,
        ambient_dim: m,
        subspaces,
        generators,
    })
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

fn power_is_identity(p: &[usize], k: usize) -> bool {
    let mut acc: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k {
        acc = compose(&acc, p);
    }
    acc.iter().enumerate().all(|(i, &x)| i == x)
}

impl PermRepInstance {
    fn image(&self, g: &[usize], x: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter().map(|&a| g[a]).collect()
    }

    /// Checks that every generator permutes the family (with `s_j` swapping
    /// members `j` and `j+1`) and that the generators satisfy the Coxeter
    /// relations of `S_M`.
    pub fn verify(&self) -> Result<()> {
        for (j, g) in self.generators.iter().enumerate() {
            for (i, x) in self.subspaces.iter().enumerate() {
                let expected = match i {
                    _ if i == j => j + 1,
                    _ if i == j + 1 => j,
                    _ => i,
                };
                if self.image(g, x) != self.subspaces[expected] {
                    return Err(Error::Internal(format!(
                        "s_{} does not carry X_{i} onto X_{expected}",
                        j + 1
                    )));
                }
            }
        }
        let gens = &self.generators;
        for i in 0..gens.len() {
            if !power_is_identity(&gens[i], 2) {
                return Err(Error::Internal(format!("s_{} is not an involution", i + 1)));
            }
            for j in i + 1..gens.len() {
                let order = if j == i + 1 { 3 } else { 2 };
                if !power_is_identity(&compose(&gens[i], &gens[j]), order) {
                    return Err(Error::Internal(format!(
                        "(s_{} s_{})^{order} is not the identity",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self, i: usize) -> usize {
        self.subspaces[i].len()
    }

    pub fn intersection_dim(&self, i: usize, j: usize) -> usize {
        self.subspaces[i].intersection(&self.subspaces[j]).count()
    }
}

/// One ordered pair `(X_i, X_j)` of the bound-difference check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairSlack {
    pub i: usize,
    pub j: usize,
    pub lhs: usize,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundDifferenceReport {
    pub variant: PermRepVariant,
    pub m: usize,
    pub ambient_dim: usize,
    pub c: Fraction,
    /// `lg N`.
    pub n: f64,
    pub rhs: f64,
    pub pairs: Vec<PairSlack>,
    pub min_slack: f64,
    pub violations: usize,
}

impl BoundDifferenceReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// For every ordered pair, `dim X - dim X∩Y ≤ (2·c·lg N / M)·N`. Dimensions
/// are exact integers; only the right-hand side is floating point.
pub fn check_bound_difference(
    inst: &PermRepInstance,
    c: &BigRational,
) -> Result<BoundDifferenceReport> {
    if !c.is_positive() {
        return Err(Error::OutOfRange("c must be positive".into()));
    }
    inst.verify()?;
    let big_n = inst.ambient_dim as f64;
    let lg_n = big_n.log2();
    let c_f = c.to_f64().unwrap_or(f64::NAN);
    let rhs = 2.0 * c_f * lg_n / inst.m as f64 * big_n;
    let mut pairs = Vec::with_capacity(inst.m * inst.m);
    for i in 0..inst.m {
        for j in 0..inst.m {
            let lhs = inst.dim(i) - inst.intersection_dim(i, j);
            pairs.push(PairSlack {
                i,
                j,
                lhs,
                rhs: round_sig(rhs),
                slack: round_sig(rhs - lhs as f64),
            });
        }
    }
    let violations = pairs.iter().filter(|p| (p.lhs as f64) > rhs).count();
    let min_slack = pairs.iter().map(|p| p.slack).fold(f64::INFINITY, f64::min);
    Ok(BoundDifferenceReport {
        variant: inst.variant,
        m: inst.m,
        ambient_dim: inst.ambient_dim,
        c: Fraction(c.clone()),
        n: round_sig(lg_n),
        rhs: round_sig(rhs),
        pairs,
        min_slack,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn instances_are_permutation_representations() {
        for m in 2..=12 {
            for variant in [PermRepVariant::Coordinate, PermRepVariant::Complement] {
                let inst = build_perm_rep_instance(m, variant).unwrap();
                inst.verify().unwrap();
                assert_eq!(inst.subspaces.len(), m);
            }
        }
        assert!(build_perm_rep_instance(1, PermRepVariant::Coordinate).is_err());
        assert!(build_perm_rep_instance(13, PermRepVariant::Coordinate).is_err());
    }

    #[test]
    fn complement_dimensions() {
        let inst = build_perm_rep_instance(5, PermRepVariant::Complement).unwrap();
        for i in 0..5 {
            assert_eq!(inst.dim(i), 4);
            for j in (0..5).filter(|&j| j != i) {
                assert_eq!(inst.intersection_dim(i, j), 3);
            }
        }
        let coord = build_perm_rep_instance(5, PermRepVariant::Coordinate).unwrap();
        assert!((0..5).all(|i| coord.dim(i) == 1));
    }

    #[test]
    fn broken_generator_is_caught() {
        let mut inst = build_perm_rep_instance(4, PermRepVariant::Coordinate).unwrap();
        inst.generators[1] = vec![0, 2, 3, 1];
        assert!(inst.verify().is_err());
    }

    #[test]
    fn bound_difference_examples() {
        let one = BigRational::one();
        let inst = build_perm_rep_instance(8, PermRepVariant::Complement).unwrap();
        let r = check_bound_difference(&inst, &one).unwrap();
        assert_eq!(r.rhs, 6.0);
        let off = r.pairs.iter().find(|p| p.i != p.j).unwrap();
        assert_eq!(off.lhs, 1);
        assert!(r.holds());

        let inst = build_perm_rep_instance(2, PermRepVariant::Coordinate).unwrap();
        let r = check_bound_difference(&inst, &one).unwrap();
        assert_eq!(r.rhs, 2.0);
        assert!(r.pairs.iter().filter(|p| p.i != p.j).all(|p| p.lhs == 1));
        assert!(r.pairs.iter().filter(|p| p.i == p.j).all(|p| p.lhs == 0));
        assert!(check_bound_difference(&inst, &BigRational::from_integer(0.into())).is_err());
    }
}
