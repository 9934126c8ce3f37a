use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of the five branching-program states.
///
/// Stored 0-based; the text and JSON forms use 1-based images so that
/// `[2,3,4,5,1]` is the cycle `(1 2 3 4 5)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm5([u8; 5]);

impl Perm5 {
    pub const IDENTITY: Perm5 = Perm5([0, 1, 2, 3, 4]);

    /// From 0-based images.
    pub fn from_images(images: [u8; 5]) -> Result<Self> {
        let mut seen = [false; 5];
        for &i in &images {
            if i >= 5 || seen[i as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..5"
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm5(images))
    }

    /// From 1-based images, as in the JSON form.
    pub fn from_one_based(images: &[u8]) -> Result<Self> {
        let arr: [u8; 5] = images
            .iter()
            .map(|&i| i.wrapping_sub(1))
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| Error::InvalidPermutation(format!("{images:?}: need 5 images")))?;
        Self::from_images(arr).map_err(|_| {
            Error::InvalidPermutation(format!("{images:?} is not a bijection on 1..=5"))
        })
    }

    /// A single cycle in 1-based notation, e.g. `&[1, 3, 5, 4, 2]`.
    pub fn cycle(points: &[u8]) -> Result<Self> {
        let mut images = [0, 1, 2, 3, 4];
        for (idx, &p) in points.iter().enumerate() {
            let next = points[(idx + 1) % points.len()];
            if !(1..=5).contains(&p) || !(1..=5).contains(&next) {
                return Err(Error::InvalidPermutation(format!("cycle {points:?}")));
            }
            images[p as usize - 1] = next - 1;
        }
        let perm = Self::from_images(images)?;
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::InvalidPermutation(format!(
                "cycle {points:?} repeats a point"
            )));
        }
        Ok(perm)
    }

    pub fn images(&self) -> [u8; 5] {
        self.0
    }

    pub fn one_based(&self) -> [u8; 5] {
        self.0.map(|i| i + 1)
    }

    /// Image of 0-based state `i`.
    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm5) -> Perm5 {
        Perm5(self.0.map(|i| other.0[i as usize]))
    }

    pub fn inverse(&self) -> Perm5 {
        let mut inv = [0u8; 5];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm5(inv)
    }

    /// The permutation `θ ∘ self ∘ θ⁻¹`: `self` with its points renamed by `θ`.
    pub fn relabel(&self, theta: &Perm5) -> Perm5 {
        let mut out = [0u8; 5];
        for i in 0..5 {
            out[theta.0[i] as usize] = theta.0[self.0[i] as usize];
        }
        Perm5(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// True for the 24 five-cycles.
    pub fn is_five_cycle(&self) -> bool {
        let mut x = 0u8;
        for step in 1..=5 {
            x = self.apply(x);
            if x == 0 {
                return step == 5;
            }
        }
        false
    }

    /// Even permutations form `A_5`.
    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// For five-cycles `from` and `to`, the `θ` with `from.relabel(θ) == to`.
    pub fn conjugator(from: &Perm5, to: &Perm5) -> Option<Perm5> {
        if !from.is_five_cycle() || !to.is_five_cycle() {
            return None;
        }
        let mut theta = [0u8; 5];
        let (mut a, mut b) = (0u8, 0u8);
        for _ in 0..5 {
            theta[a as usize] = b;
            a = from.apply(a);
            b = to.apply(b);
        }
        Perm5::from_images(theta).ok()
    }

    /// Enumerates all of `S_5` in lexicographic order of images.
    pub fn all() -> impl Iterator<Item = Perm5> {
        (0..5u8).flat_map(|a| {
            (0..5u8).flat_map(move |b| {
                (0..5u8).flat_map(move |c| {
                    (0..5u8).flat_map(move |d| {
                        (0..5u8).filter_map(move |e| Perm5::from_images([a, b, c, d, e]).ok())
                    })
                })
            })
        })
    }
}

impl fmt::Debug for Perm5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm5{:?}", self.one_based())
    }
}

impl fmt::Display for Perm5 {
    /// Cycle notation, 1-based; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let mut seen = [false; 5];
        for start in 0..5u8 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x as usize] {
                seen[x as usize] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Perm5 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm5 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        Perm5::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}
