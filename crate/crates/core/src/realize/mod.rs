//! Finite realizations of codes.
//!
//! A [`Cover`] is a finite universe of points with `n` member sets. Its code
//! records which membership patterns occur: `v` is a codeword iff some point
//! lies in exactly the sets `U_i`, `i ∈ supp(v)`. Points in no set witness
//! the all-zeros codeword. [`IntervalCover`] is a concrete 1-D backend whose
//! elementary cells become the points of a [`Cover`].

pub mod interval;

pub use interval::{CellCover, Interval, IntervalCover, IntervalSet, Rational};

use std::collections::BTreeSet;
use std::fmt;

use crate::codes::{restriction_masks, Code, Codeword, Permutation};
use crate::error::{check_ambient, Error, Result};

pub type PointSet = BTreeSet<usize>;

/// One of the three basic transformations, acting on codes and on covers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Transform {
    Permute(Permutation),
    Flip(usize),
    Restrict { m: usize, mp: usize },
}

impl Transform {
    pub fn apply_code(&self, code: &Code) -> Result<Code> {
        match self {
            Transform::Permute(lambda) => code.permute(lambda),
            Transform::Flip(i) => code.bitflip(*i),
            Transform::Restrict { m, mp } => code.restrict(*m, *mp),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Permute(lambda) => write!(f, "permute [{lambda}]"),
            Transform::Flip(i) => write!(f, "flip {i}"),
            Transform::Restrict { m, mp } => write!(f, "restrict {m} {mp}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cover {
    universe: PointSet,
    members: Vec<PointSet>,
}

impl Cover {
    pub fn new(universe: PointSet, members: Vec<PointSet>) -> Result<Self> {
        check_ambient(members.len())?;
        for (i, set) in members.iter().enumerate() {
            if let Some(p) = set.difference(&universe).next() {
                return Err(Error::InvalidCover(format!(
                    "point {p} of U{} is not in the universe",
                    i + 1
                )));
            }
        }
        Ok(Self { universe, members })
    }

    /// Points `0..rows.len()`; row `r` lists the sets containing point `r`.
    pub fn from_incidence(rows: &[Codeword], n: usize) -> Result<Self> {
        check_ambient(n)?;
        let mut members = vec![PointSet::new(); n];
        for (p, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for i in row.support() {
                members[i - 1].insert(p);
            }
        }
        Self::new((0..rows.len()).collect(), members)
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn universe(&self) -> &PointSet {
        &self.universe
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    /// `U_i` (1-based).
    pub fn member(&self, i: usize) -> &PointSet {
        &self.members[i - 1]
    }

    /// The membership pattern of every universe point, in point order.
    pub fn incidence(&self) -> Vec<(usize, Codeword)> {
        self.universe
            .iter()
            .map(|&p| {
                let mask = self
                    .members
                    .iter()
                    .enumerate()
                    .filter(|(_, set)| set.contains(&p))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i);
                (p, Codeword::from_mask_unchecked(self.n(), mask))
            })
            .collect()
    }

    /// `{v : A_v ≠ ∅}`, read off the pattern of each point.
    pub fn code(&self) -> Code {
        Code::new(self.n(), self.incidence().into_iter().map(|(_, w)| w))
            .expect("patterns have the cover's length")
    }

    fn check_length(&self, v: &Codeword) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `(⋂_{v_i=1} U_i) \ (⋃_{v_j=0} U_j)`, the empty intersection being the
    /// universe.
    pub fn codeword_region(&self, v: &Codeword) -> Result<PointSet> {
        self.check_length(v)?;
        let mask = v.mask();
        Ok(self.region(mask, !mask & crate::error::full_mask(self.n())))
    }

    /// Points in every `U_i` for `i` in `inside` and in no `U_j` for `j` in
    /// `outside`.
    fn region(&self, inside: u64, outside: u64) -> PointSet {
        self.universe
            .iter()
            .copied()
            .filter(|p| {
                self.members.iter().enumerate().all(|(i, set)| {
                    let bit = 1u64 << i;
                    if inside & bit != 0 {
                        set.contains(p)
                    } else if outside & bit != 0 {
                        !set.contains(p)
                    } else {
                        true
                    }
                })
            })
            .collect()
    }

    /// `(⋂_{m' < i ≤ n} U_i) \ (⋃_{m < j ≤ m'} U_j)`.
    pub fn compatible_region(&self, m: usize, mp: usize) -> Result<PointSet> {
        let (zeros, ones) = restriction_masks(self.n(), m, mp)?;
        Ok(self.region(ones, zeros))
    }

    /// Applies a transformation so that the new cover realizes the
    /// correspondingly transformed code:
    /// - `Permute(λ)` moves `U_i` to position `λ(i)`;
    /// - `Flip(i)` replaces `U_i` by its complement in the universe;
    /// - `Restrict(m, m')` shrinks the universe to the compatible region `X'`
    ///   and keeps `U_i ∩ X'` for `i ≤ m`.
    pub fn transform(&self, t: &Transform) -> Result<Cover> {
        let n = self.n();
        match t {
            Transform::Permute(lambda) => {
                if lambda.len() != n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: lambda.len(),
                    });
                }
                let mut members = vec![PointSet::new(); n];
                for (i, set) in self.members.iter().enumerate() {
                    members[lambda.apply(i + 1) - 1] = set.clone();
                }
                Cover::new(self.universe.clone(), members)
            }
            Transform::Flip(i) => {
                if *i == 0 || *i > n {
                    return Err(Error::IndexOutOfRange { index: *i, n });
                }
                let mut members = self.members.clone();
                members[i - 1] = self.universe.difference(&self.members[i - 1]).copied().collect();
                Cover::new(self.universe.clone(), members)
            }
            Transform::Restrict { m, mp } => {
                let region = self.compatible_region(*m, *mp)?;
                let members = self.members[..*m]
                    .iter()
                    .map(|set| set.intersection(&region).copied().collect())
                    .collect();
                Cover::new(region, members)
            }
        }
    }
}
