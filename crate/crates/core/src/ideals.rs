//! Neural ideals `J_C = ⟨ρ_v : v ∉ C⟩`.
//!
//! Neural ideals on `n` variables correspond bijectively to codes on `n`
//! bits, so a [`NeuralIdeal`] stores its code and derives everything else
//! from it. A pseudomonomial lies in `J_C` exactly when it vanishes on `C`.

use std::collections::BTreeSet;
use std::fmt;

use crate::codes::{check_cube, Code, Codeword};
use crate::error::{check_ambient, check_same_ambient, full_mask, Error, Result};
use crate::pseudo::{MultilinearPoly, Pseudomonomial};

/// Default largest `n` for the `3^n` canonical-form enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NeuralIdeal {
    code: Code,
}

/// A list of pseudomonomials over a common ambient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    n: usize,
    gens: Vec<Pseudomonomial>,
}

impl GeneratorSet {
    pub fn new(n: usize, gens: Vec<Pseudomonomial>) -> Result<Self> {
        check_ambient(n)?;
        for g in &gens {
            check_same_ambient(n, g.n())?;
        }
        Ok(Self { n, gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Pseudomonomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// The common zero set in `F_2^n`, i.e. the code `C` with `⟨G⟩ = J_C`.
    pub fn code(&self) -> Result<Code> {
        check_cube(self.n)?;
        Ok(Code::from_masks(
            self.n,
            (0..1u64 << self.n).filter(|&v| self.gens.iter().all(|g| !g.eval_mask(v))),
        ))
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateTerm {
    pub cofactor: Pseudomonomial,
    pub generator: Pseudomonomial,
}

/// A witness `f = Σ cofactor · ρ_v` with every `ρ_v` a generator of `J_C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipCertificate {
    n: usize,
    terms: Vec<CertificateTerm>,
}

impl MembershipCertificate {
    pub fn terms(&self) -> &[CertificateTerm] {
        &self.terms
    }

    /// `Σ cofactor · generator` as a multilinear polynomial.
    pub fn sum(&self) -> Result<MultilinearPoly> {
        let mut total = MultilinearPoly::zero(self.n)?;
        for term in &self.terms {
            let product = term
                .cofactor
                .to_multilinear()?
                .mul(&term.generator.to_multilinear()?)?;
            total = total.add(&product)?;
        }
        Ok(total)
    }

    /// Checks the certificate against `f` and against the ideal's code.
    pub fn verify(&self, ideal: &NeuralIdeal, f: &Pseudomonomial) -> Result<bool> {
        check_same_ambient(self.n, f.n())?;
        let generators_ok = self.terms.iter().all(|t| {
            t.generator.is_indicator()
                && !ideal
                    .code()
                    .contains_mask(t.generator.sigma_mask())
        });
        Ok(generators_ok && self.sum()? == f.to_multilinear()?)
    }
}

impl fmt::Display for MembershipCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.cofactor.is_one() {
                    t.generator.to_string()
                } else {
                    format!("{}*{}", t.cofactor, t.generator)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The division-minimal pseudomonomials of a neural ideal, in enumeration
/// order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalForm {
    n: usize,
    elements: BTreeSet<Pseudomonomial>,
}

impl CanonicalForm {
    /// Keeps the division-minimal members of `candidates`.
    pub fn minimal_of(
        n: usize,
        candidates: impl IntoIterator<Item = Pseudomonomial>,
    ) -> Result<Self> {
        check_ambient(n)?;
        let pool: BTreeSet<Pseudomonomial> = candidates.into_iter().collect();
        for f in &pool {
            check_same_ambient(n, f.n())?;
        }
        // Enumeration order sorts by degree, so a divisor precedes its multiples.
        let mut kept: Vec<Pseudomonomial> = Vec::new();
        for f in pool {
            if !kept.iter().any(|g| g.divides_unchecked(&f)) {
                kept.push(f);
            }
        }
        Ok(Self {
            n,
            elements: kept.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &Pseudomonomial) -> bool {
        self.elements.contains(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pseudomonomial> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &CanonicalForm) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn to_generators(&self) -> GeneratorSet {
        GeneratorSet {
            n: self.n,
            gens: self.elements.iter().copied().collect(),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl NeuralIdeal {
    pub fn from_code(code: Code) -> Self {
        Self { code }
    }

    /// The ideal generated by `gens`, via its zero set.
    pub fn from_generators(gens: &GeneratorSet) -> Result<Self> {
        Ok(Self {
            code: gens.code()?,
        })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Ok(Self {
            code: Code::full(n)?,
        })
    }

    pub fn unit(n: usize) -> Result<Self> {
        Ok(Self {
            code: Code::empty(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn into_code(self) -> Code {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code.is_full()
    }

    pub fn is_unit(&self) -> bool {
        self.code.is_empty()
    }

    /// `{ρ_v : v ∉ C}` in codeword order.
    pub fn generators(&self) -> Result<GeneratorSet> {
        Ok(GeneratorSet {
            n: self.n(),
            gens: self
                .code
                .complement()?
                .iter()
                .map(Pseudomonomial::indicator)
                .collect(),
        })
    }

    pub fn contains(&self, f: &Pseudomonomial) -> Result<bool> {
        check_same_ambient(self.n(), f.n())?;
        Ok(self.code.iter().all(|c| !f.eval_mask(c.mask())))
    }

    /// A codeword of `C` on which `f` evaluates to 1, if any.
    pub fn witness(&self, f: &Pseudomonomial) -> Result<Option<Codeword>> {
        check_same_ambient(self.n(), f.n())?;
        Ok(self.code.iter().find(|c| f.eval_mask(c.mask())).copied())
    }

    /// Writes `f` as the sum of the indicators of the points where it is 1.
    /// Each such point lies outside `C`, so each indicator is a generator.
    pub fn membership_certificate(&self, f: &Pseudomonomial) -> Result<MembershipCertificate> {
        if !self.contains(f)? {
            return Err(Error::NotAMember);
        }
        let one = Pseudomonomial::one(self.n())?;
        let terms = f
            .expand_indicators()?
            .iter()
            .map(|v| CertificateTerm {
                cofactor: one,
                generator: Pseudomonomial::indicator(v),
            })
            .collect();
        Ok(MembershipCertificate {
            n: self.n(),
            terms,
        })
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        self.canonical_form_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    /// Scans all `3^n` pseudomonomials. A pseudomonomial is in the ideal iff
    /// it is an indicator of a non-codeword or both of its refinements on
    /// some free variable are; it is canonical iff it is in the ideal and
    /// dropping any single factor leaves the ideal.
    pub fn canonical_form_bounded(&self, bound: usize) -> Result<CanonicalForm> {
        let n = self.n();
        if n > bound {
            return Err(Error::AmbientTooLarge { n, bound });
        }
        check_cube(n)?;
        let mut in_code = vec![false; 1 << n];
        for c in self.code.iter() {
            in_code[c.mask() as usize] = true;
        }
        let powers: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
        let total = 3usize.pow(n as u32);
        let digits = |mut t: usize| -> Vec<u8> {
            (0..n)
                .map(|_| {
                    let d = (t % 3) as u8;
                    t /= 3;
                    d
                })
                .collect()
        };

        // Ternary digit i: 0 = x_{i+1} absent, 1 = plain, 2 = complemented.
        let mut in_ideal = vec![false; total];
        for t in (0..total).rev() {
            let d = digits(t);
            in_ideal[t] = match d.iter().position(|&x| x == 0) {
                Some(i) => in_ideal[t + powers[i]] && in_ideal[t + 2 * powers[i]],
                None => {
                    let mask = d
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x == 1)
                        .fold(0usize, |acc, (i, _)| acc | 1 << i);
                    !in_code[mask]
                }
            };
        }

        let mut elements = BTreeSet::new();
        for t in 0..total {
            if !in_ideal[t] {
                continue;
            }
            let d = digits(t);
            let minimal = d
                .iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || !in_ideal[t - x as usize * powers[i]]);
            if minimal {
                let (sigma, tau) = d.iter().enumerate().fold((0u64, 0u64), |(s, u), (i, &x)| {
                    match x {
                        1 => (s | 1 << i, u),
                        2 => (s, u | 1 << i),
                        _ => (s, u),
                    }
                });
                debug_assert!((sigma | tau) & !full_mask(n) == 0);
                elements.insert(Pseudomonomial::from_masks_unchecked(n, sigma, tau));
            }
        }
        Ok(CanonicalForm { n, elements })
    }
}

/// Equality of neural ideals on the same ambient ring.
pub fn ideal_equal(a: &NeuralIdeal, b: &NeuralIdeal) -> Result<bool> {
    check_same_ambient(a.n(), b.n())?;
    Ok(a.code == b.code)
}
