//! Young diagrams: partitions, hooks, irreducible dimensions of `S_M` and
//! the restriction (branching) rule to `S_{M-1}`.
//!
//! Everything here is exact. Dimensions are [`BigUint`] because they pass
//! `u64::MAX` long before the scans in [`crate::bounds`] run out of steam.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition of `M`: a weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A cell of a Young diagram, 1-based: `row` counts down, `col` counts right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    /// Validates and wraps `parts`.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be positive"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row shape `(m)`.
    pub fn row(m: u32) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![m] }
        }
    }

    /// The one-column shape `(1, ..., 1)`.
    pub fn column(m: u32) -> Self {
        Partition {
            parts: vec![1; m as usize],
        }
    }

    /// The two-row shape `(m - a, a)`; `a` must not exceed `m - a`.
    pub fn two_row(m: u32, a: u32) -> Result<Self> {
        if 2 * a > m {
            return Err(Error::InvalidPartition(format!(
                "({}, {a})",
                m as i64 - a as i64
            )));
        }
        let mut parts = vec![m - a, a];
        parts.retain(|&p| p > 0);
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `M`, the number of cells.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; rows past the end are 0.
    pub fn part(&self, i: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// Length of the first row (0 for the empty shape).
    pub fn first_row(&self) -> u32 {
        self.part(1)
    }

    /// Length of the first column.
    pub fn first_column(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    /// The transposed diagram: `λ'_j = |{i : λ_i ≥ j}|`.
    pub fn conjugate(&self) -> Partition {
        let width = self.first_row();
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook length of a single cell: arm + leg + 1.
    pub fn hook_length(&self, cell: Cell) -> Option<u32> {
        if !self.contains(cell) {
            return None;
        }
        let arm = self.part(cell.row) - cell.col;
        let leg = self
            .parts
            .iter()
            .skip(cell.row as usize)
            .take_while(|&&p| p >= cell.col)
            .count() as u32;
        Some(arm + leg + 1)
    }

    /// Hook lengths of every cell.
    pub fn hook_lengths(&self) -> BTreeMap<Cell, u32> {
        let conj = self.conjugate();
        self.cells()
            .map(|c| {
                let arm = self.part(c.row) - c.col;
                let leg = conj.part(c.col) - c.row;
                (c, arm + leg + 1)
            })
            .collect()
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigUint {
        self.hook_lengths()
            .values()
            .fold(BigUint::one(), |acc, &h| acc * h)
    }

    /// Dimension of the irreducible representation of `S_M` labelled by this
    /// shape, by the hook length formula `M! / ∏ hooks`.
    pub fn dimension(&self) -> Result<BigUint> {
        let numerator = factorial(self.size());
        let hooks = self.hook_product();
        let (quot, rem) = numerator.div_rem(&hooks);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "hook product of {self} does not divide {}!",
                self.size()
            )));
        }
        Ok(quot)
    }

    /// Cells `(i, λ_i)` with `λ_i > λ_{i+1}`, in row order.
    pub fn inside_corners(&self) -> Vec<Cell> {
        (1..=self.parts.len() as u32)
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Cell::new(i, self.part(i)))
            .collect()
    }

    /// The shape left after deleting `cell`, if that leaves a legal diagram.
    pub fn remove_cell(&self, cell: Cell) -> Option<Partition> {
        if !self.contains(cell) || cell.col != self.part(cell.row) {
            return None;
        }
        if self.part(cell.row) <= self.part(cell.row + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        let idx = cell.row as usize - 1;
        parts[idx] -= 1;
        if parts[idx] == 0 {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Shapes of size `M - 1` obtained by deleting one inside corner: the
    /// irreducible constituents of the restriction to `S_{M-1}`.
    pub fn restrict(&self) -> Vec<Partition> {
        self.inside_corners()
            .into_iter()
            .filter_map(|c| self.remove_cell(c))
            .collect()
    }
}

/// Shorthand for [`Partition::dimension`] on a shape known to be valid.
pub fn dimension(lambda: &Partition) -> BigUint {
    lambda
        .dimension()
        .expect("hook length formula is exact for valid partitions")
}

pub fn factorial(m: u32) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(m: u32, a: u32) -> BigUint {
    if a > m {
        return BigUint::zero();
    }
    let a = a.min(m - a);
    let mut acc = BigUint::one();
    for i in 0..a {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// All partitions of `m` in reverse-lexicographic order, starting at `(m)`
/// and ending at `(1, ..., 1)`.
pub fn enumerate_partitions(m: u32) -> Partitions {
    Partitions {
        next: Some(Partition::row(m)),
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Partition>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(current)
    }
}

// Rightmost part > 1 is decreased by one and the freed cells (that unit
// plus every trailing 1) are repacked greedily with parts of the new size.
fn successor(p: &Partition) -> Option<Partition> {
    let parts = &p.parts;
    let pos = parts.iter().rposition(|&x| x > 1)?;
    let mut next: Vec<u32> = parts[..pos].to_vec();
    let v = parts[pos] - 1;
    let mut rest = (parts.len() - pos - 1) as u32 + 1 + v;
    while rest > 0 {
        let take = v.min(rest);
        next.push(take);
        rest -= take;
    }
    Some(Partition { parts: next })
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"[4,4,2,1]"`; whitespace is ignored and `"[]"` is the empty shape.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("{s:?}: expected [a,b,...]")))?;
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("{s:?}: bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
