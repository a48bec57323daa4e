//! Pseudomonomials `Π_{i∈σ} x_i · Π_{j∈τ} (1 - x_j)` over `F_2[x_1..x_n]`.
//!
//! `σ` and `τ` are stored as disjoint bitmasks (`x_i` at bit `i - 1`), so
//! equality is structural. The constant 1 is the pseudomonomial with both
//! masks empty; the constant 0 is not a pseudomonomial and only shows up as
//! [`PseudoOrZero::Zero`].

mod multilinear;

pub use multilinear::{MultilinearPoly, ORACLE_LIMIT};

use std::cmp::Ordering;
use std::fmt;

use crate::codes::{check_cube, Codeword};
use crate::error::{check_ambient, check_same_ambient, full_mask, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pseudomonomial {
    n: usize,
    sigma: u64,
    tau: u64,
}

/// Iterates the 1-based indices set in `mask`, ascending.
pub(crate) fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i + 1)
        }
    })
}

fn indices_to_mask(n: usize, indices: &[usize]) -> Result<u64> {
    indices.iter().try_fold(0u64, |acc, &i| {
        if i == 0 || i > n {
            Err(Error::IndexOutOfRange { index: i, n })
        } else {
            Ok(acc | 1 << (i - 1))
        }
    })
}

impl Pseudomonomial {
    /// `Π_{i∈sigma} x_i · Π_{j∈tau} (1 - x_j)` with 1-based indices.
    pub fn new(n: usize, sigma: &[usize], tau: &[usize]) -> Result<Self> {
        check_ambient(n)?;
        let sigma = indices_to_mask(n, sigma)?;
        let tau = indices_to_mask(n, tau)?;
        Self::from_masks(n, sigma, tau)
    }

    pub fn from_masks(n: usize, sigma: u64, tau: u64) -> Result<Self> {
        check_ambient(n)?;
        let outside = (sigma | tau) & !full_mask(n);
        if outside != 0 {
            let index = outside.trailing_zeros() as usize + 1;
            return Err(Error::IndexOutOfRange { index, n });
        }
        let overlap = sigma & tau;
        if overlap != 0 {
            return Err(Error::OverlappingFactors(
                overlap.trailing_zeros() as usize + 1,
            ));
        }
        Ok(Self { n, sigma, tau })
    }

    pub(crate) fn from_masks_unchecked(n: usize, sigma: u64, tau: u64) -> Self {
        debug_assert!(sigma & tau == 0 && (sigma | tau) & !full_mask(n) == 0);
        Self { n, sigma, tau }
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::from_masks(n, 0, 0)
    }

    /// The indicator `ρ_v`: `σ = supp(v)`, `τ = [n] \ supp(v)`.
    pub fn indicator(v: &Codeword) -> Self {
        let n = v.len();
        Self {
            n,
            sigma: v.mask(),
            tau: full_mask(n) & !v.mask(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma_mask(&self) -> u64 {
        self.sigma
    }

    pub fn tau_mask(&self) -> u64 {
        self.tau
    }

    pub fn sigma(&self) -> Vec<usize> {
        mask_indices(self.sigma).collect()
    }

    pub fn tau(&self) -> Vec<usize> {
        mask_indices(self.tau).collect()
    }

    pub fn degree(&self) -> usize {
        (self.sigma | self.tau).count_ones() as usize
    }

    pub fn is_one(&self) -> bool {
        self.sigma == 0 && self.tau == 0
    }

    pub fn is_indicator(&self) -> bool {
        self.degree() == self.n
    }

    /// Value at `v`: 1 iff `σ ⊆ supp(v)` and `τ ∩ supp(v) = ∅`.
    pub fn eval(&self, v: &Codeword) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(self.eval_mask(v.mask()))
    }

    pub(crate) fn eval_mask(&self, mask: u64) -> bool {
        mask & self.sigma == self.sigma && mask & self.tau == 0
    }

    /// Whether `self` divides `other`, i.e. both factor sets are contained.
    pub fn divides(&self, other: &Pseudomonomial) -> Result<bool> {
        check_same_ambient(self.n, other.n)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Pseudomonomial) -> bool {
        self.sigma & !other.sigma == 0 && self.tau & !other.tau == 0
    }

    /// The quotient `other / self`, if `self` divides `other`.
    pub fn quotient(&self, other: &Pseudomonomial) -> Result<Option<Pseudomonomial>> {
        Ok(self.divides(other)?.then(|| Self {
            n: self.n,
            sigma: other.sigma & !self.sigma,
            tau: other.tau & !self.tau,
        }))
    }

    /// The points where `self` is 1. Summing their indicators gives `self`
    /// back, since each free variable splits `f = x_i f + (1 - x_i) f`.
    pub fn expand_indicators(&self) -> Result<Vec<Codeword>> {
        let free = full_mask(self.n) & !(self.sigma | self.tau);
        check_cube(free.count_ones() as usize)?;
        let mut points: Vec<Codeword> = subsets(free)
            .map(|t| Codeword::from_mask_unchecked(self.n, self.sigma | t))
            .collect();
        points.sort();
        Ok(points)
    }

    /// Full multilinear expansion, bounded by [`ORACLE_LIMIT`].
    pub fn to_multilinear(&self) -> Result<MultilinearPoly> {
        MultilinearPoly::from_pseudomonomial(self)
    }

    /// All `3^n` pseudomonomials in enumeration order.
    pub fn enumerate_all(n: usize, bound: usize) -> Result<Vec<Pseudomonomial>> {
        check_ambient(n)?;
        if n > bound {
            return Err(Error::AmbientTooLarge { n, bound });
        }
        let mut all = Vec::with_capacity(3usize.pow(n as u32));
        for used in subsets(full_mask(n)) {
            for sigma in subsets(used) {
                all.push(Self {
                    n,
                    sigma,
                    tau: used & !sigma,
                });
            }
        }
        all.sort();
        Ok(all)
    }

    /// Parses the factor grammar `1 | factor ("*" factor)*` with
    /// `factor := x<k> | (1-x<k>)`. Whitespace is ignored.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_ambient(n)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |message: String| Error::Parse { line: 0, message };
        if compact.is_empty() {
            return Err(err("empty pseudomonomial".into()));
        }
        if compact == "1" {
            return Self::one(n);
        }
        if compact == "0" {
            return Err(err("0 is not a pseudomonomial".into()));
        }
        let (mut sigma, mut tau) = (0u64, 0u64);
        for factor in compact.split('*') {
            let (index, complemented) = if let Some(rest) = factor.strip_prefix("(1-x") {
                let digits = rest
                    .strip_suffix(')')
                    .ok_or_else(|| err(format!("unterminated factor {factor:?}")))?;
                (digits, true)
            } else if let Some(digits) = factor.strip_prefix('x') {
                (digits, false)
            } else {
                return Err(err(format!("unrecognized factor {factor:?}")));
            };
            let i: usize = index
                .parse()
                .map_err(|_| err(format!("bad variable index in {factor:?}")))?;
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            let bit = 1u64 << (i - 1);
            if (sigma | tau) & bit != 0 {
                if (complemented && sigma & bit != 0) || (!complemented && tau & bit != 0) {
                    return Err(Error::OverlappingFactors(i));
                }
                return Err(err(format!("repeated factor {factor:?}")));
            }
            if complemented {
                tau |= bit;
            } else {
                sigma |= bit;
            }
        }
        Ok(Self { n, sigma, tau })
    }
}

/// All submasks of `mask`, starting from 0.
pub(crate) fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == mask {
            None
        } else {
            Some((current.wrapping_sub(mask)) & mask)
        };
        Some(current)
    })
}

impl PartialOrd for Pseudomonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order: degree, then the sorted `σ` index lists
/// lexicographically, then `τ` likewise.
impl Ord for Pseudomonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| mask_indices(self.sigma).cmp(mask_indices(other.sigma)))
            .then_with(|| mask_indices(self.tau).cmp(mask_indices(other.tau)))
    }
}

impl fmt::Display for Pseudomonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in mask_indices(self.sigma | self.tau) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if self.sigma >> (i - 1) & 1 == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "(1-x{i})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pseudomonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pseudomonomial[n={}]({self})", self.n)
    }
}

/// The image of a pseudomonomial under a homomorphism preserving neural
/// ideals: a pseudomonomial or zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PseudoOrZero {
    Zero,
    Pm(Pseudomonomial),
}

impl PseudoOrZero {
    pub fn is_zero(&self) -> bool {
        matches!(self, PseudoOrZero::Zero)
    }

    pub fn pseudomonomial(&self) -> Option<&Pseudomonomial> {
        match self {
            PseudoOrZero::Zero => None,
            PseudoOrZero::Pm(f) => Some(f),
        }
    }
}

impl fmt::Display for PseudoOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoOrZero::Zero => f.write_str("0"),
            PseudoOrZero::Pm(p) => p.fmt(f),
        }
    }
}
