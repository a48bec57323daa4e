//! Homomorphisms `F_2[n] → F_2[m]` that carry neural ideals to neural ideals.
//!
//! Such a map is determined by the images of the variables. It preserves
//! neural ideals exactly when every image is one of `0, 1, x_j, 1 - x_j` and
//! every target variable `x_j` is hit by exactly one source variable. Every
//! such map factors as `ω ∘ λ ∘ δ`: a bit flip, then a permutation, then a
//! restriction (see [`Decomposition`]).

mod decompose;

pub use decompose::Decomposition;

use std::fmt;

use crate::codes::{check_cube, Code, Permutation};
use crate::error::{check_ambient, check_same_ambient, full_mask, Error, Result};
use crate::ideals::{CanonicalForm, GeneratorSet, NeuralIdeal};
use crate::pseudo::{mask_indices, PseudoOrZero, Pseudomonomial};

/// Image of a single variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarImage {
    Zero,
    One,
    Var(usize),
    NegVar(usize),
}

impl VarImage {
    /// The image of `1 - x_i` when `x_i` maps to `self`.
    pub fn complement(self) -> Self {
        match self {
            VarImage::Zero => VarImage::One,
            VarImage::One => VarImage::Zero,
            VarImage::Var(j) => VarImage::NegVar(j),
            VarImage::NegVar(j) => VarImage::Var(j),
        }
    }

    pub fn target(self) -> Option<usize> {
        match self {
            VarImage::Var(j) | VarImage::NegVar(j) => Some(j),
            _ => None,
        }
    }

    /// Value at a point of `F_2^m` given as a bitmask.
    pub(crate) fn eval_mask(self, mask: u64) -> bool {
        match self {
            VarImage::Zero => false,
            VarImage::One => true,
            VarImage::Var(j) => mask >> (j - 1) & 1 == 1,
            VarImage::NegVar(j) => mask >> (j - 1) & 1 == 0,
        }
    }
}

impl fmt::Display for VarImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarImage::Zero => f.write_str("0"),
            VarImage::One => f.write_str("1"),
            VarImage::Var(j) => write!(f, "x{j}"),
            VarImage::NegVar(j) => write!(f, "1-x{j}"),
        }
    }
}

/// An unvalidated variable image: a product of literals. The empty product
/// is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RawImage {
    pub factors: Vec<VarImage>,
}

impl RawImage {
    pub fn new(factors: Vec<VarImage>) -> Self {
        Self { factors }
    }

    pub fn single(image: VarImage) -> Self {
        Self {
            factors: vec![image],
        }
    }

    /// Simplifies to a single literal, or `None` if the product has two or
    /// more non-constant factors (degree at least 2).
    pub fn simplify(&self) -> Option<VarImage> {
        if self.factors.contains(&VarImage::Zero) {
            return Some(VarImage::Zero);
        }
        let mut linear = self.factors.iter().filter(|f| f.target().is_some());
        match (linear.next(), linear.next()) {
            (None, _) => Some(VarImage::One),
            (Some(&f), None) => Some(f),
            (Some(_), Some(_)) => None,
        }
    }
}

impl fmt::Display for RawImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|v| match v {
                VarImage::NegVar(j) if self.factors.len() > 1 => format!("(1-x{j})"),
                other => other.to_string(),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A validated neural-ideal-preserving homomorphism `F_2[n] → F_2[m]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NipHom {
    n: usize,
    m: usize,
    images: Vec<VarImage>,
}

impl NipHom {
    /// Validates raw images against the classification: each image must be
    /// one of `0, 1, x_j, 1 - x_j`, and each target variable must be hit by
    /// exactly one source.
    pub fn validate(n: usize, m: usize, raw: &[RawImage]) -> Result<Self> {
        check_ambient(n)?;
        check_ambient(m)?;
        if raw.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: raw.len(),
            });
        }
        let images = raw
            .iter()
            .enumerate()
            .map(|(i, r)| r.simplify().ok_or(Error::NonLinearImage { variable: i + 1 }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(m, images)
    }

    /// Builds a map from already-linear images, checking targets.
    pub fn from_images(m: usize, images: Vec<VarImage>) -> Result<Self> {
        let n = images.len();
        check_ambient(n)?;
        check_ambient(m)?;
        let mut hits: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
        for (i, image) in images.iter().enumerate() {
            if let Some(j) = image.target() {
                if j == 0 || j > m {
                    return Err(Error::IndexOutOfRange { index: j, n: m });
                }
                hits[j].push(i + 1);
            }
        }
        for (j, sources) in hits.iter().enumerate().skip(1) {
            match sources.len() {
                0 => return Err(Error::MissedTarget { target: j }),
                1 => {}
                _ => {
                    return Err(Error::DuplicateTarget {
                        target: j,
                        sources: sources.clone(),
                    })
                }
            }
        }
        Ok(Self { n, m, images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_images(n, (1..=n).map(VarImage::Var).collect())
    }

    /// `x_i ↦ x_{λ(i)}`.
    pub fn permutation(lambda: &Permutation) -> Result<Self> {
        let n = lambda.len();
        Self::from_images(n, lambda.images().iter().map(|&j| VarImage::Var(j)).collect())
    }

    /// Flips every variable in `flips` (1-based).
    pub fn bitflip(n: usize, flips: &[usize]) -> Result<Self> {
        let mut images: Vec<VarImage> = (1..=n).map(VarImage::Var).collect();
        for &i in flips {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            images[i - 1] = images[i - 1].complement();
        }
        Self::from_images(n, images)
    }

    /// `ω_{m,m'}`: `x_i ↦ x_i` for `i ≤ m`, `0` for `m < i ≤ m'`, `1` above.
    pub fn restriction(n: usize, m: usize, mp: usize) -> Result<Self> {
        check_ambient(n)?;
        if m == 0 || m > mp || mp > n {
            return Err(Error::BadParameters { m, mp, n });
        }
        let images = (1..=n)
            .map(|i| {
                if i <= m {
                    VarImage::Var(i)
                } else if i <= mp {
                    VarImage::Zero
                } else {
                    VarImage::One
                }
            })
            .collect();
        Self::from_images(m, images)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn images(&self) -> &[VarImage] {
        &self.images
    }

    /// Image of `x_i` (1-based).
    pub fn image(&self, i: usize) -> VarImage {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.n == self.m
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &v)| v == VarImage::Var(i + 1))
    }

    /// Applies the map factor by factor. A factor sent to 0 kills the
    /// product; factors sent to 1 drop out. Distinct sources never share a
    /// target, so the surviving factors form a pseudomonomial.
    pub fn apply_pm(&self, f: &Pseudomonomial) -> Result<PseudoOrZero> {
        check_same_ambient(self.n, f.n())?;
        let factors = mask_indices(f.sigma_mask())
            .map(|i| self.image(i))
            .chain(mask_indices(f.tau_mask()).map(|i| self.image(i).complement()));
        let (mut sigma, mut tau) = (0u64, 0u64);
        for factor in factors {
            match factor {
                VarImage::Zero => return Ok(PseudoOrZero::Zero),
                VarImage::One => {}
                VarImage::Var(j) => sigma |= 1 << (j - 1),
                VarImage::NegVar(j) => tau |= 1 << (j - 1),
            }
        }
        Ok(PseudoOrZero::Pm(Pseudomonomial::from_masks(self.m, sigma, tau)?))
    }

    /// The point of `F_2^n` obtained by evaluating every image at `u ∈ F_2^m`;
    /// `φ(f)(u) = f(pullback(u))`.
    pub fn pullback_point(&self, u: u64) -> u64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, img)| img.eval_mask(u))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// The code `D` with `φ(J_C) = J_D`, computed through the decomposition:
    /// flip, permute, then restrict the code.
    pub fn apply_code(&self, code: &Code) -> Result<Code> {
        check_same_ambient(self.n, code.n())?;
        self.decompose().transform_code(code)
    }

    /// `φ(J_C)`.
    pub fn apply_ideal(&self, ideal: &NeuralIdeal) -> Result<NeuralIdeal> {
        let image = NeuralIdeal::from_code(self.apply_code(ideal.code())?);
        #[cfg(debug_assertions)]
        if self.n <= 10 {
            debug_assert_eq!(Some(&image), self.apply_ideal_by_generators(ideal).ok().as_ref());
        }
        Ok(image)
    }

    /// Images of the generators of a generating set, with zero images
    /// reported separately by index.
    pub fn apply_generators(&self, gens: &GeneratorSet) -> Result<(GeneratorSet, Vec<usize>)> {
        check_same_ambient(self.n, gens.n())?;
        let mut images = Vec::new();
        let mut zeros = Vec::new();
        for (k, g) in gens.gens().iter().enumerate() {
            match self.apply_pm(g)? {
                PseudoOrZero::Zero => zeros.push(k),
                PseudoOrZero::Pm(p) => {
                    if !images.contains(&p) {
                        images.push(p)
                    }
                }
            }
        }
        Ok((GeneratorSet::new(self.m, images)?, zeros))
    }

    /// `φ(J_C)` from the images of the generators `ρ_v`, `v ∉ C`, dropping
    /// those that vanish. Scans `F_2^n` and `F_2^m`.
    pub fn apply_ideal_by_generators(&self, ideal: &NeuralIdeal) -> Result<NeuralIdeal> {
        check_same_ambient(self.n, ideal.n())?;
        check_cube(self.n)?;
        let (images, _) = self.apply_generators(&ideal.generators()?)?;
        NeuralIdeal::from_generators(&images)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &NipHom) -> Result<NipHom> {
        if first.m != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: first.m,
            });
        }
        let images = first
            .images
            .iter()
            .map(|&img| match img {
                VarImage::Zero | VarImage::One => img,
                VarImage::Var(j) => self.image(j),
                VarImage::NegVar(j) => self.image(j).complement(),
            })
            .collect();
        let composite = Self::from_images(self.m, images);
        debug_assert!(composite.is_ok(), "composition left the class");
        composite
    }

    /// A pseudomonomial `f̂` over `F_2[n]` with `φ(f̂) = f`: lift through `ω`
    /// unchanged, then undo `λ` and `δ`.
    pub fn preimage_pm(&self, f: &Pseudomonomial) -> Result<Pseudomonomial> {
        check_same_ambient(self.m, f.n())?;
        let d = self.decompose();
        let inverse = d.perm().inverse();
        let sigma = inverse.apply_mask(f.sigma_mask());
        let tau = inverse.apply_mask(f.tau_mask());
        let flips = d.flip_mask();
        let (sigma, tau) = ((sigma & !flips) | (tau & flips), (tau & !flips) | (sigma & flips));
        Pseudomonomial::from_masks(self.n, sigma, tau)
    }

    /// Some `J_C` with `φ(J_C) = J_D`, generated by lifts of the generators
    /// of `J_D`.
    pub fn preimage_ideal(&self, target: &NeuralIdeal) -> Result<NeuralIdeal> {
        check_same_ambient(self.m, target.n())?;
        let lifted = target
            .generators()?
            .gens()
            .iter()
            .map(|g| self.preimage_pm(g))
            .collect::<Result<Vec<_>>>()?;
        NeuralIdeal::from_generators(&GeneratorSet::new(self.n, lifted)?)
    }

    /// Maps each canonical-form element, drops zeros and keeps the
    /// division-minimal images. The result is the canonical form of the
    /// image ideal.
    pub fn transport_cf(&self, cf: &CanonicalForm) -> Result<CanonicalForm> {
        check_same_ambient(self.n, cf.n())?;
        let images = cf
            .iter()
            .map(|f| self.apply_pm(f))
            .collect::<Result<Vec<_>>>()?;
        CanonicalForm::minimal_of(self.m, images.into_iter().filter_map(|p| match p {
            PseudoOrZero::Zero => None,
            PseudoOrZero::Pm(f) => Some(f),
        }))
    }

    /// `{φ(g) : g ∈ CF(J)} \ {0}` without minimal selection.
    pub fn image_set(&self, cf: &CanonicalForm) -> Result<Vec<Pseudomonomial>> {
        check_same_ambient(self.n, cf.n())?;
        let mut out = Vec::new();
        for f in cf.iter() {
            if let PseudoOrZero::Pm(p) = self.apply_pm(f)? {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Masks of the sources sent to 0 and to 1.
    pub(crate) fn constant_masks(&self) -> (u64, u64) {
        let mut zeros = 0u64;
        let mut ones = 0u64;
        for (i, img) in self.images.iter().enumerate() {
            match img {
                VarImage::Zero => zeros |= 1 << i,
                VarImage::One => ones |= 1 << i,
                _ => {}
            }
        }
        debug_assert!((zeros | ones) & !full_mask(self.n) == 0);
        (zeros, ones)
    }
}

impl fmt::Display for NipHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| format!("x{} -> {img}", i + 1))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Images of the example map `F_2[6] → F_2[3]`:
/// `x1 ↦ 0, x2 ↦ 1-x3, x3 ↦ 1, x4 ↦ 1-x1, x5 ↦ 1, x6 ↦ x2`.
#[cfg(test)]
pub(crate) fn example_map() -> NipHom {
    use VarImage::*;
    NipHom::from_images(3, vec![Zero, NegVar(3), One, NegVar(1), One, Var(2)]).unwrap()
}
