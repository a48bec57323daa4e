//! Binary codes and the permutation, bit-flip and restriction transformations.
//!
//! A codeword of length `n` is stored as a bitmask in which variable `x_i`
//! (1-based) occupies bit `i - 1`. Codewords order like their bitstrings read
//! as binary integers, with bit 1 the most significant.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_ambient, check_same_ambient, full_mask, Error, Result};

/// Largest `n` for which operations that scan all of `F_2^n` are allowed.
pub const CUBE_LIMIT: usize = 24;

pub(crate) fn check_cube(n: usize) -> Result<()> {
    if n > CUBE_LIMIT {
        Err(Error::AmbientTooLarge {
            n,
            bound: CUBE_LIMIT,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    n: usize,
    mask: u64,
}

impl Codeword {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_ambient(n)?;
        if mask & !full_mask(n) != 0 {
            let index = 64 - mask.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(Self { n, mask })
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        debug_assert!(n >= 1 && n <= 64 && mask & !full_mask(n) == 0);
        Self { n, mask }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_ambient(bits.len())?;
        let mask = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        Ok(Self {
            n: bits.len(),
            mask,
        })
    }

    /// Codeword with the given 1-based support.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        check_ambient(n)?;
        let mut mask = 0u64;
        for &i in support {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Self { n, mask })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_mask(n, 0)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Bit `i` (1-based).
    pub fn bit(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.mask >> (i - 1) & 1 == 1
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.bit(i)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    /// The value of the bitstring read as a binary integer.
    pub fn sort_key(&self) -> u64 {
        self.mask.reverse_bits() >> (64 - self.n)
    }

    /// All `2^n` codewords in canonical order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Codeword>> {
        check_ambient(n)?;
        check_cube(n)?;
        Ok((0..1u64 << n).map(move |key| Codeword {
            n,
            mask: key.reverse_bits() >> (64 - n),
        }))
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl std::str::FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 0,
                    message: format!("unexpected character {other:?} in codeword"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

/// A bijection of `{1..n}`, stored as the list of images of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        check_ambient(n)?;
        let mut seen = vec![false; n + 1];
        for &j in &images {
            if j == 0 || j > n || seen[j] {
                return Err(Error::NotAPermutation { n, images });
            }
            seen[j] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in [a, b] {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        images.swap(a - 1, b - 1);
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Result<Self> {
        check_same_ambient(self.len(), first.len())
            .map_err(|_| Error::SizeMismatch {
                expected: self.len(),
                found: first.len(),
            })?;
        Ok(Self {
            images: first.images.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    pub(crate) fn apply_mask(&self, mask: u64) -> u64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &j)| acc | 1 << (j - 1))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|j| j.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A set of codewords of a common length `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Code {
    n: usize,
    words: BTreeSet<Codeword>,
}

impl Code {
    pub fn empty(n: usize) -> Result<Self> {
        check_ambient(n)?;
        Ok(Self {
            n,
            words: BTreeSet::new(),
        })
    }

    /// All of `F_2^n`.
    pub fn full(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            words: Codeword::all(n)?.collect(),
        })
    }

    pub fn new(n: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        let mut code = Self::empty(n)?;
        for w in words {
            code.insert(w)?;
        }
        Ok(code)
    }

    /// Builds a code from bitstrings such as `"0110"`.
    pub fn from_strs<S: AsRef<str>>(n: usize, words: &[S]) -> Result<Self> {
        let words = words
            .iter()
            .map(|s| s.as_ref().parse::<Codeword>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, words)
    }

    pub(crate) fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Self {
        Self {
            n,
            words: masks
                .into_iter()
                .map(|m| Codeword::from_mask_unchecked(n, m))
                .collect(),
        }
    }

    /// Inserts a codeword; returns whether it was new.
    pub fn insert(&mut self, word: Codeword) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: word.len(),
            });
        }
        Ok(self.words.insert(word))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &Codeword) -> bool {
        self.words.contains(word)
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        self.words
            .contains(&Codeword::from_mask_unchecked(self.n, mask))
    }

    /// Codewords in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Codeword> {
        self.words.iter()
    }

    pub fn is_full(&self) -> bool {
        self.n < 64 && self.words.len() as u64 == 1u64 << self.n
    }

    /// Words of `F_2^n` not in the code, in canonical order.
    pub fn complement(&self) -> Result<Vec<Codeword>> {
        Ok(Codeword::all(self.n)?
            .filter(|w| !self.words.contains(w))
            .collect())
    }

    pub fn is_subset(&self, other: &Code) -> bool {
        self.n == other.n && self.words.is_subset(&other.words)
    }

    /// `{u : supp(u) = λ(supp(c)), c ∈ C}`.
    pub fn permute(&self, lambda: &Permutation) -> Result<Code> {
        if lambda.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: lambda.len(),
            });
        }
        Ok(Self::from_masks(
            self.n,
            self.words.iter().map(|w| lambda.apply_mask(w.mask)),
        ))
    }

    /// Flips bit `i` of every codeword.
    pub fn bitflip(&self, i: usize) -> Result<Code> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(Self::from_masks(
            self.n,
            self.words.iter().map(|w| w.mask ^ 1 << (i - 1)),
        ))
    }

    /// Keeps the codewords that are zero on `(m, m']` and one on `(m', n]`,
    /// truncated to their first `m` bits.
    pub fn restrict(&self, m: usize, mp: usize) -> Result<Code> {
        let (zeros, ones) = restriction_masks(self.n, m, mp)?;
        let keep = full_mask(m);
        Ok(Self::from_masks(
            m,
            self.words
                .iter()
                .filter(|w| w.mask & zeros == 0 && w.mask & ones == ones)
                .map(|w| w.mask & keep),
        ))
    }
}

/// Masks of the positions forced to zero `(m, m']` and to one `(m', n]`.
pub(crate) fn restriction_masks(n: usize, m: usize, mp: usize) -> Result<(u64, u64)> {
    if m == 0 || m > mp || mp > n {
        return Err(Error::BadParameters { m, mp, n });
    }
    let zeros = full_mask(mp) & !full_mask(m);
    let ones = full_mask(n) & !full_mask(mp);
    Ok((zeros, ones))
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", words.join(", "))
    }
}
