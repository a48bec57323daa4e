use std::collections::BTreeSet;
use std::fmt;

use super::{mask_indices, subsets, Pseudomonomial};
use crate::codes::Codeword;
use crate::error::{check_ambient, check_same_ambient, full_mask, Error, Result};

/// Largest ambient size accepted by the multilinear oracle.
pub const ORACLE_LIMIT: usize = 16;

/// A polynomial over `F_2` in which every monomial is squarefree, stored as
/// the set of monomial supports with coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeSet<u64>,
}

impl MultilinearPoly {
    fn check(n: usize) -> Result<()> {
        check_ambient(n)?;
        if n > ORACLE_LIMIT {
            return Err(Error::AmbientTooLarge {
                n,
                bound: ORACLE_LIMIT,
            });
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::check(n)?;
        Ok(Self {
            n,
            terms: BTreeSet::new(),
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::monomial(n, 0)
    }

    /// The monomial `Π_{i∈S} x_i` for the support mask `S`.
    pub fn monomial(n: usize, support: u64) -> Result<Self> {
        Self::check(n)?;
        if support & !full_mask(n) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - support.leading_zeros() as usize,
                n,
            });
        }
        Ok(Self {
            n,
            terms: BTreeSet::from([support]),
        })
    }

    /// Distributes `Π x_i Π (1 + x_j)`: one monomial `σ ∪ T` per `T ⊆ τ`.
    pub fn from_pseudomonomial(f: &Pseudomonomial) -> Result<Self> {
        Self::check(f.n())?;
        Ok(Self {
            n: f.n(),
            terms: subsets(f.tau_mask()).map(|t| f.sigma_mask() | t).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with support mask `support`.
    pub fn coefficient(&self, support: u64) -> bool {
        self.terms.contains(&support)
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_ambient(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        })
    }

    /// Product of polynomials in disjoint sets of variables. Any pair of
    /// monomials sharing a variable would produce a square, which is not
    /// representable here.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_ambient(self.n, other.n)?;
        let mut terms = BTreeSet::new();
        for &a in &self.terms {
            for &b in &other.terms {
                if a & b != 0 {
                    return Err(Error::NotMultilinear);
                }
                let m = a | b;
                if !terms.insert(m) {
                    terms.remove(&m);
                }
            }
        }
        Ok(Self { n: self.n, terms })
    }

    /// Sum of the coefficients of monomials supported inside `supp(v)`.
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
        self.terms.iter().filter(|&&s| s & !mask == 0).count() % 2 == 1
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<u64> = self.terms.iter().copied().collect();
        ordered.sort_by_key(|&s| (s.count_ones(), mask_indices(s).collect::<Vec<_>>()));
        let parts: Vec<String> = ordered
            .iter()
            .map(|&s| {
                if s == 0 {
                    "1".to_string()
                } else {
                    mask_indices(s)
                        .map(|i| format!("x{i}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
