//! Families of axis-parallel subspaces of `{0,1}^n` used as encodings of an
//! index `b`, with the two properties an encoding needs:
//!
//! * distinguishability: pairwise overlap `|A ∩ A'| / |A|` bounded away
//!   from 1;
//! * permutability: every permutation of the indices realised by one
//!   operation on the register.
//!
//! Strings use the same convention as [`crate::mixedsim`]: coordinate 1 is
//! the most significant of the `n` bits.

mod permrep;
mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use permrep::{
    build_perm_rep_instance, check_bound_difference, BoundDifferenceReport, PairSlack,
    PermRepInstance, PermRepVariant,
};
pub use witness::{permutability_witness, verify_witness, IndexPermutation};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Largest `n` for which members are enumerated (closed forms go further).
pub const MAX_ENUMERATION_BITS: usize = 20;
/// Largest index set `overlap_stats` will scan pairwise.
pub const MAX_STATS_MEMBERS: u64 = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// `A_b = {x : x·b = 0 mod 2}` for nonzero `b ∈ {0,1}^n`.
    Parity,
    /// `A_b = {x : x_1 = 0 or (x_2..x_n) = b}` for `b ∈ {0,1}^{n-1}`.
    Pointed,
    /// Arbitrary listed sets of strings.
    Explicit,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Parity => "parity",
            FamilyKind::Pointed => "pointed",
            FamilyKind::Explicit => "explicit",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parity" => Ok(FamilyKind::Parity),
            "pointed" => Ok(FamilyKind::Pointed),
            "explicit" => Ok(FamilyKind::Explicit),
            _ => Err(Error::OutOfRange(format!("unknown family kind {s:?}"))),
        }
    }
}

/// An indexed family of subsets of `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    n: usize,
    kind: FamilyKind,
    explicit: Vec<BTreeSet<u64>>,
}

/// Builds the parity or pointed family on `n` bits, `2 ≤ n ≤ 20`.
pub fn build_family(n: usize, kind: FamilyKind) -> Result<SubspaceFamily> {
    if !(2..=MAX_ENUMERATION_BITS).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} outside 2..=20")));
    }
    if kind == FamilyKind::Explicit {
        return Err(Error::OutOfRange(
            "use SubspaceFamily::explicit for listed sets".into(),
        ));
    }
    Ok(SubspaceFamily {
        n,
        kind,
        explicit: Vec::new(),
    })
}

fn popcount_parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

impl SubspaceFamily {
    /// A family given by its members, indexed `0..members.len()`.
    pub fn explicit(n: usize, members: Vec<BTreeSet<u64>>) -> Result<Self> {
        if !(1..=MAX_ENUMERATION_BITS).contains(&n) {
            return Err(Error::OutOfRange(format!("n = {n} outside 1..=20")));
        }
        if members.iter().flatten().any(|&x| x >> n != 0) {
            return Err(Error::OutOfRange(format!(
                "member string wider than {n} bits"
            )));
        }
        Ok(SubspaceFamily {
            n,
            kind: FamilyKind::Explicit,
            explicit: members,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn index_count(&self) -> u64 {
        match self.kind {
            FamilyKind::Parity => (1u64 << self.n) - 1,
            FamilyKind::Pointed => 1u64 << (self.n - 1),
            FamilyKind::Explicit => self.explicit.len() as u64,
        }
    }

    /// Index set in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u64> {
        match self.kind {
            FamilyKind::Parity => 1..1u64 << self.n,
            FamilyKind::Pointed => 0..1u64 << (self.n - 1),
            FamilyKind::Explicit => 0..self.explicit.len() as u64,
        }
    }

    pub fn is_index(&self, b: u64) -> bool {
        match self.kind {
            FamilyKind::Parity => b != 0 && b >> self.n == 0,
            FamilyKind::Pointed => b >> (self.n - 1) == 0,
            FamilyKind::Explicit => b < self.explicit.len() as u64,
        }
    }

    fn check_index(&self, b: u64) -> Result<()> {
        if !self.is_index(b) {
            return Err(Error::OutOfRange(format!(
                "{b} is not an index of the {} family",
                self.kind
            )));
        }
        Ok(())
    }

    /// Whether string `x` lies in `member(b)`.
    pub fn contains(&self, b: u64, x: u64) -> bool {
        match self.kind {
            FamilyKind::Parity => !popcount_parity(x & b),
            FamilyKind::Pointed => {
                let high = 1u64 << (self.n - 1);
                x & high == 0 || x == high | b
            }
            FamilyKind::Explicit => self.explicit[b as usize].contains(&x),
        }
    }

    /// `member(b)`, enumerated.
    pub fn member(&self, b: u64) -> Result<BTreeSet<u64>> {
        self.check_index(b)?;
        if self.kind == FamilyKind::Explicit {
            return Ok(self.explicit[b as usize].clone());
        }
        Ok((0..1u64 << self.n)
            .filter(|&x| self.contains(b, x))
            .collect())
    }

    pub fn member_size(&self, b: u64) -> Result<u64> {
        self.check_index(b)?;
        Ok(match self.kind {
            FamilyKind::Parity => 1 << (self.n - 1),
            FamilyKind::Pointed => (1 << (self.n - 1)) + 1,
            FamilyKind::Explicit => self.explicit[b as usize].len() as u64,
        })
    }

    /// `|member(b) ∩ member(b')|` for distinct indices, by closed form:
    /// two distinct nonzero parity checks are independent (`2^{n-2}`), and
    /// two pointed members share exactly the `x_1 = 0` half (`2^{n-1}`).
    pub fn intersection_size(&self, b: u64, b2: u64) -> Result<u64> {
        self.check_index(b)?;
        self.check_index(b2)?;
        if b == b2 {
            return Err(Error::OutOfRange(format!(
                "intersection of index {b} with itself"
            )));
        }
        Ok(match self.kind {
            FamilyKind::Parity => 1 << (self.n - 2),
            FamilyKind::Pointed => 1 << (self.n - 1),
            FamilyKind::Explicit => self.explicit[b as usize]
                .intersection(&self.explicit[b2 as usize])
                .count() as u64,
        })
    }

    /// The same count by enumerating `{0,1}^n`.
    pub fn intersection_size_enumerated(&self, b: u64, b2: u64) -> Result<u64> {
        self.check_index(b)?;
        self.check_index(b2)?;
        Ok((0..1u64 << self.n)
            .filter(|&x| self.contains(b, x) && self.contains(b2, x))
            .count() as u64)
    }
}

/// Pairwise overlap of a family. A pair's ratio is
/// `|A ∩ A'| / min(|A|, |A'|)`, the larger of its two directed ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapStats {
    pub family: FamilyKind,
    pub n: usize,
    pub members: u64,
    pub pair_count: u64,
    pub max_ratio: Option<Fraction>,
    pub min_ratio: Option<Fraction>,
    /// Intersection size -> number of pairs.
    pub histogram: BTreeMap<u64, u64>,
}

pub fn overlap_stats(f: &SubspaceFamily) -> Result<OverlapStats> {
    let members = f.index_count();
    if members > MAX_STATS_MEMBERS {
        return Err(Error::OutOfRange(format!(
            "{members} members exceed the pairwise limit of {MAX_STATS_MEMBERS}"
        )));
    }
    let sizes: Vec<u64> = f
        .indices()
        .map(|b| f.member_size(b))
        .collect::<Result<_>>()?;
    let idx: Vec<u64> = f.indices().collect();
    let mut histogram = BTreeMap::new();
    // Extremes tracked as (numerator, denominator) and compared by cross-multiplication.
    let mut max: Option<(u64, u64)> = None;
    let mut min: Option<(u64, u64)> = None;
    let mut pairs = 0u64;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let inter = f.intersection_size(idx[i], idx[j])?;
            *histogram.entry(inter).or_insert(0) += 1;
            pairs += 1;
            let denom = sizes[i].min(sizes[j]);
            let r = (inter, denom);
            let less = |a: (u64, u64), b: (u64, u64)| {
                (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
            };
            if max.is_none_or(|m| less(m, r)) {
                max = Some(r);
            }
            if min.is_none_or(|m| less(r, m)) {
                min = Some(r);
            }
        }
    }
    let frac = |r: Option<(u64, u64)>| {
        r.map(|(a, b)| {
            if b == 0 {
                Fraction::zero()
            } else {
                Fraction::new(a, b)
            }
        })
    };
    Ok(OverlapStats {
        family: f.kind(),
        n: f.n(),
        members,
        pair_count: pairs,
        max_ratio: frac(max),
        min_ratio: frac(min),
        histogram,
    })
}
