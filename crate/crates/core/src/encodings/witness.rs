use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{FamilyKind, SubspaceFamily};
use crate::error::{Error, Result};
use crate::mixedsim::{parse_bit_string, BasisPermutation};

/// A permutation of a family's index set, stored as the indices it moves.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexPermutation {
    moved: BTreeMap<u64, u64>,
}

impl IndexPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        f: &SubspaceFamily,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        let mut moved = BTreeMap::new();
        for (a, b) in pairs {
            for i in [a, b] {
                if !f.is_index(i) {
                    return Err(Error::InvalidPermutation(format!(
                        "{i} is not an index of the {} family",
                        f.kind()
                    )));
                }
            }
            if moved.insert(a, b).is_some() {
                return Err(Error::InvalidPermutation(format!("index {a} mapped twice")));
            }
        }
        moved.retain(|a, b| a != b);
        let domain: BTreeSet<_> = moved.keys().collect();
        let image: BTreeSet<_> = moved.values().collect();
        if domain != image {
            return Err(Error::InvalidPermutation(
                "not a bijection of the index set".into(),
            ));
        }
        Ok(IndexPermutation { moved })
    }

    /// A uniformly random permutation of the whole index set.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, f: &SubspaceFamily) -> Self {
        let idx: Vec<u64> = f.indices().collect();
        let mut shuffled = idx.clone();
        shuffled.shuffle(rng);
        let moved = idx
            .into_iter()
            .zip(shuffled)
            .filter(|(a, b)| a != b)
            .collect();
        IndexPermutation { moved }
    }

    /// Parses `identity`, `swap:a,b`, `cycle:a,b,c,...` or `map:a>b,b>a`.
    /// Parity indices are `n`-bit strings, pointed ones `(n-1)`-bit
    /// strings, explicit ones decimal. Shorter bit strings are read with
    /// leading zeros, so on a 6-bit pointed family `01` is `00001`.
    pub fn parse(text: &str, f: &SubspaceFamily) -> Result<Self> {
        let text = text.trim();
        if text == "identity" || text.is_empty() {
            return Ok(Self::identity());
        }
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidPermutation(format!("{text:?}: expected kind:args")))?;
        let width = match f.kind() {
            FamilyKind::Parity => f.n(),
            FamilyKind::Pointed => f.n() - 1,
            FamilyKind::Explicit => 0,
        };
        let index = |tok: &str| -> Result<u64> {
            let tok = tok.trim();
            if width == 0 {
                return tok
                    .parse()
                    .map_err(|_| Error::InvalidPermutation(format!("bad index {tok:?}")));
            }
            if tok.is_empty() || tok.len() > width {
                return Err(Error::InvalidPermutation(format!(
                    "index {tok:?} should have at most {width} bits"
                )));
            }
            parse_bit_string(tok)
        };
        let pairs: Vec<(u64, u64)> = match kind.trim() {
            "swap" => {
                let items = body.split(',').map(index).collect::<Result<Vec<_>>>()?;
                let [a, b] = items[..] else {
                    return Err(Error::InvalidPermutation("swap takes two indices".into()));
                };
                vec![(a, b), (b, a)]
            }
            "cycle" => {
                let items = body.split(',').map(index).collect::<Result<Vec<_>>>()?;
                (0..items.len())
                    .map(|i| (items[i], items[(i + 1) % items.len()]))
                    .collect()
            }
            "map" => body
                .split(',')
                .map(|pair| {
                    let (a, b) = pair.split_once('>').ok_or_else(|| {
                        Error::InvalidPermutation(format!("{pair:?}: expected a>b"))
                    })?;
                    Ok((index(a)?, index(b)?))
                })
                .collect::<Result<_>>()?,
            other => return Err(Error::InvalidPermutation(format!("unknown kind {other:?}"))),
        };
        Self::from_pairs(f, pairs)
    }

    pub fn apply(&self, b: u64) -> u64 {
        self.moved.get(&b).copied().unwrap_or(b)
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    fn check_against(&self, f: &SubspaceFamily) -> Result<()> {
        if self.moved.keys().any(|&b| !f.is_index(b)) {
            return Err(Error::InvalidPermutation("moves a non-index".into()));
        }
        Ok(())
    }
}

/// Linear maps on `GF(2)^n`, stored by the images of the unit vectors.
/// Unit vector `i` (0-based coordinate) is the bit `1 << (n - 1 - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gf2Matrix {
    n: usize,
    cols: Vec<u64>,
}

impl Gf2Matrix {
    pub(crate) fn from_columns(n: usize, cols: Vec<u64>) -> Self {
        Gf2Matrix { n, cols }
    }

    fn unit(n: usize, i: usize) -> u64 {
        1 << (n - 1 - i)
    }

    pub(crate) fn apply(&self, v: u64) -> u64 {
        (0..self.n)
            .filter(|&i| v & Self::unit(self.n, i) != 0)
            .fold(0, |acc, i| acc ^ self.cols[i])
    }

    pub(crate) fn transpose(&self) -> Self {
        let n = self.n;
        // Entry (i, j) is bit i of column j; column j of Mᵀ collects row j of M.
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| self.cols[i] & Self::unit(n, j) != 0)
                    .fold(0, |acc, i| acc | Self::unit(n, i))
            })
            .collect();
        Gf2Matrix { n, cols }
    }

    /// Inverse by Gauss-Jordan elimination on the columns.
    pub(crate) fn inverse(&self) -> Option<Self> {
        let n = self.n;
        // Column operations: keep (M·P, P) with P accumulating the same ops.
        let mut a = self.cols.clone();
        let mut p: Vec<u64> = (0..n).map(|i| Self::unit(n, i)).collect();
        for row in 0..n {
            let bit = Self::unit(n, row);
            let pivot = (row..n).find(|&c| a[c] & bit != 0)?;
            a.swap(row, pivot);
            p.swap(row, pivot);
            for c in 0..n {
                if c != row && a[c] & bit != 0 {
                    a[c] ^= a[row];
                    p[c] ^= p[row];
                }
            }
        }
        // Now M·P = I, so P = M⁻¹.
        Some(Gf2Matrix { n, cols: p })
    }
}

/// A basis permutation `g` with `g(member(b)) = member(π(b))` for every
/// index, or `None` if there is none.
///
/// * pointed: fixes every `x_1 = 0` string and sends `1·b` to `1·π(b)`;
///   always exists.
/// * parity: a linear substitution `x ↦ Lx` carries `A_b` onto
///   `A_{L^{-T} b}`, so `π` is realised this way iff it agrees on the
///   nonzero vectors with the linear map `M` fixed by the unit vectors
///   (`M e_i = π(e_i)`); the witness is then `L = (M^{-1})^T`.
/// * explicit: exhaustive search over all permutations of `{0,1}^n`,
///   only for `n ≤ 3`.
pub fn permutability_witness(
    f: &SubspaceFamily,
    pi: &IndexPermutation,
) -> Result<Option<BasisPermutation>> {
    pi.check_against(f)?;
    let n = f.n();
    match f.kind() {
        FamilyKind::Pointed => {
            let high = 1u64 << (n - 1);
            let pairs = pi.moved.iter().map(|(&b, &c)| (high | b, high | c));
            Ok(Some(BasisPermutation::from_pairs(n, pairs)?))
        }
        FamilyKind::Parity => {
            let m = Gf2Matrix::from_columns(
                n,
                (0..n).map(|i| pi.apply(Gf2Matrix::unit(n, i))).collect(),
            );
            if f.indices().any(|b| m.apply(b) != pi.apply(b)) {
                return Ok(None);
            }
            let l = m
                .inverse()
                .ok_or_else(|| Error::Internal("consistent index map is not invertible".into()))?
                .transpose();
            let pairs = (0..1u64 << n).map(|x| (x, l.apply(x)));
            Ok(Some(BasisPermutation::from_pairs(n, pairs)?))
        }
        FamilyKind::Explicit => {
            if n > 3 {
                return Err(Error::OutOfRange(
                    "witness search for explicit families is limited to n <= 3".into(),
                ));
            }
            let mut points: Vec<u64> = (0..1u64 << n).collect();
            let found = search_permutations(&mut points, 0, &mut |perm| {
                let g = BasisPermutation::from_pairs(
                    n,
                    perm.iter().enumerate().map(|(x, &y)| (x as u64, y)),
                )
                .expect("a permutation of the strings");
                verify_witness(f, pi, &g).unwrap_or(false).then_some(g)
            });
            Ok(found)
        }
    }
}

// Heap-style exhaustive enumeration with early exit.
fn search_permutations<T>(
    items: &mut Vec<u64>,
    start: usize,
    visit: &mut impl FnMut(&[u64]) -> Option<T>,
) -> Option<T> {
    if start == items.len() {
        return visit(items);
    }
    for i in start..items.len() {
        items.swap(start, i);
        if let Some(t) = search_permutations(items, start + 1, visit) {
            return Some(t);
        }
        items.swap(start, i);
    }
    None
}

/// Checks `g(member(b)) = member(π(b))` for every index by enumeration.
pub fn verify_witness(
    f: &SubspaceFamily,
    pi: &IndexPermutation,
    g: &BasisPermutation,
) -> Result<bool> {
    if g.n() != f.n() {
        return Ok(false);
    }
    for b in f.indices() {
        let image: BTreeSet<u64> = f.member(b)?.into_iter().map(|x| g.apply(x)).collect();
        if image != f.member(pi.apply(b))? {
            return Ok(false);
        }
    }
    Ok(true)
}
