use std::collections::{BTreeMap, BTreeSet};

use crate::barrington::Perm5;
use crate::error::{Error, Result};

/// A bijection on `{0,1}^n`, stored as the strings it moves.
///
/// Basis strings are `u64` with qubit 1 as the most significant of the `n`
/// bits, so `"100"` on three qubits is `4`. A permutation that never touches
/// the last `block` qubits is stored on the `n - block` leading bits only.
#[derive(Clone, Debug)]
pub struct BasisPermutation {
    n: usize,
    block: usize,
    forward: BTreeMap<u64, u64>,
}

impl BasisPermutation {
    pub fn identity(n: usize) -> Self {
        BasisPermutation {
            n,
            block: 0,
            forward: BTreeMap::new(),
        }
    }

    /// From explicit `x -> g(x)` pairs; unlisted strings are fixed.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        Self::on_prefixes(n, 0, pairs)
    }

    /// `pairs` act on the `n - block` leading bits; the rest are carried along.
    fn on_prefixes(
        n: usize,
        block: usize,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        if !(1..=63).contains(&n) || block >= n {
            return Err(Error::InvalidRegister(format!("{n} qubits")));
        }
        let limit = 1u64 << (n - block);
        let mut forward = BTreeMap::new();
        for (x, y) in pairs {
            if x >= limit || y >= limit {
                return Err(Error::InvalidPermutation(format!(
                    "{x} -> {y} is outside {{0,1}}^{}",
                    n - block
                )));
            }
            if forward.insert(x, y).is_some() {
                return Err(Error::InvalidPermutation(format!("{x} mapped twice")));
            }
        }
        forward.retain(|x, y| x != y);
        let domain: BTreeSet<u64> = forward.keys().copied().collect();
        let image: BTreeSet<u64> = forward.values().copied().collect();
        if domain != image {
            return Err(Error::InvalidPermutation(
                "listed strings are not permuted among themselves".into(),
            ));
        }
        Ok(BasisPermutation { n, block, forward })
    }

    /// A permutation of the five branching-program states, embedded on the
    /// first three qubits: state `i` (0-based) is the prefix `binary(i)`, and
    /// prefixes `101`, `110`, `111` are fixed. Other qubits are untouched.
    pub fn from_perm5(p: &Perm5, n: usize) -> Result<Self> {
        if !(3..=30).contains(&n) {
            return Err(Error::InvalidRegister(format!(
                "branching programs need 3..=30 qubits, got {n}"
            )));
        }
        let pairs = (0..5u8).map(|i| (i as u64, p.apply(i) as u64));
        Self::on_prefixes(n, n - 3, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of trailing qubits the stored moves leave alone.
    pub(crate) fn block(&self) -> usize {
        self.block
    }

    pub fn apply(&self, x: u64) -> u64 {
        match self.forward.get(&(x >> self.block)) {
            Some(&y) => y << self.block | (x & ((1 << self.block) - 1)),
            None => x,
        }
    }

    /// Moves of `(n - t)`-bit prefixes, `t ≤ block`, in increasing order of
    /// the source.
    pub(crate) fn moved_blocks(&self, t: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        assert!(t <= self.block);
        let k = self.block - t;
        self.forward
            .iter()
            .flat_map(move |(&a, &b)| (0..1u64 << k).map(move |s| (a << k | s, b << k | s)))
    }

    /// Moved strings with their images, in increasing order of the source.
    pub fn moved(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.moved_blocks(0)
    }

    pub fn support_len(&self) -> usize {
        self.forward.len() << self.block
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BasisPermutation {
            n: self.n,
            block: self.block,
            forward: self.forward.iter().map(|(&x, &y)| (y, x)).collect(),
        }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &BasisPermutation) -> Self {
        let t = self.block.min(other.block);
        let a: BTreeMap<u64, u64> = self.moved_blocks(t).collect();
        let b: BTreeMap<u64, u64> = other.moved_blocks(t).collect();
        let forward = a
            .keys()
            .chain(b.keys())
            .map(|&x| {
                let mid = a.get(&x).copied().unwrap_or(x);
                (x, b.get(&mid).copied().unwrap_or(mid))
            })
            .filter(|(x, y)| x != y)
            .collect();
        BasisPermutation {
            n: self.n,
            block: t,
            forward,
        }
    }
}

impl PartialEq for BasisPermutation {
    fn eq(&self, other: &Self) -> bool {
        let t = self.block.min(other.block);
        self.n == other.n && self.moved_blocks(t).eq(other.moved_blocks(t))
    }
}

impl Eq for BasisPermutation {}

/// `"0101"`-style text for a basis string.
pub fn bit_string(x: u64, n: usize) -> String {
    (0..n)
        .map(|q| if x >> (n - 1 - q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a `"0101"`-style basis string.
pub fn parse_bit_string(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > 63 || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::OutOfRange(format!("{s:?} is not a bit string")));
    }
    Ok(u64::from_str_radix(s, 2).expect("validated binary digits"))
}
