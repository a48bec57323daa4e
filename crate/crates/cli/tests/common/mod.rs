//! Independent oracles for the acceptance suite.
//!
//! Everything here works on raw bitmasks (bit `i - 1` is `x_i`) and is written
//! from the definitions, without calling the library routines it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use neural_ideals::{Code, Codeword, NipHom, Pseudomonomial, VarImage};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Masks = BTreeSet<u64>;

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub fn masks_of(code: &Code) -> Masks {
    code.iter().map(|w| w.mask()).collect()
}

pub fn code_of(n: usize, masks: &Masks) -> Code {
    Code::new(n, masks.iter().map(|&m| Codeword::from_mask(n, m).unwrap())).unwrap()
}

pub fn bit(mask: u64, i: usize) -> bool {
    mask >> (i - 1) & 1 == 1
}

/// `supp(v) ↦ λ(supp(v))`.
pub fn permute_masks(n: usize, masks: &Masks, images: &[usize]) -> Masks {
    masks
        .iter()
        .map(|&v| {
            (1..=n)
                .filter(|&i| bit(v, i))
                .fold(0, |acc, i| acc | 1 << (images[i - 1] - 1))
        })
        .collect()
}

pub fn flip_masks(masks: &Masks, i: usize) -> Masks {
    masks.iter().map(|&v| v ^ 1 << (i - 1)).collect()
}

/// Words with zeros on `(m, m']` and ones on `(m', n]`, cut to `m` bits.
pub fn restrict_masks(n: usize, masks: &Masks, m: usize, mp: usize) -> Masks {
    masks
        .iter()
        .filter(|&&v| (m + 1..=mp).all(|j| !bit(v, j)) && (mp + 1..=n).all(|j| bit(v, j)))
        .map(|&v| v & full(m))
        .collect()
}

fn eval_image(img: VarImage, u: u64) -> bool {
    match img {
        VarImage::Zero => false,
        VarImage::One => true,
        VarImage::Var(j) => bit(u, j),
        VarImage::NegVar(j) => !bit(u, j),
    }
}

/// `{u ∈ F_2^m : (φ(x_1)(u), …, φ(x_n)(u)) ∈ C}`, the code of `φ(J_C)`.
pub fn pullback_code(phi: &NipHom, masks: &Masks) -> Masks {
    (0..1u64 << phi.m())
        .filter(|&u| {
            let v = phi
                .images()
                .iter()
                .enumerate()
                .filter(|(_, &img)| eval_image(img, u))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            masks.contains(&v)
        })
        .collect()
}

/// Whether every target is hit by exactly one source.
pub fn is_classified(m: usize, images: &[VarImage]) -> bool {
    (1..=m).all(|j| images.iter().filter(|img| img.target() == Some(j)).count() == 1)
        && images.iter().all(|img| img.target().is_none_or(|j| j <= m))
}

/// Every `(σ, τ)` with `σ ∩ τ = ∅` over `n` variables.
pub fn all_pairs(n: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let (mut s, mut t, mut c) = (0u64, 0u64, code);
        for i in 0..n {
            match c % 3 {
                1 => s |= 1 << i,
                2 => t |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        out.push((s, t));
    }
    out
}

pub fn pm_eval(sigma: u64, tau: u64, v: u64) -> bool {
    v & sigma == sigma && v & tau == 0
}

pub fn pm_in_ideal(sigma: u64, tau: u64, code: &Masks) -> bool {
    code.iter().all(|&c| !pm_eval(sigma, tau, c))
}

/// Canonical form by exhaustive search: members of `J_C` none of whose
/// proper divisors is a member, tested against every other member.
pub fn brute_cf(n: usize, code: &Masks) -> BTreeSet<(u64, u64)> {
    let members: Vec<(u64, u64)> = all_pairs(n)
        .into_iter()
        .filter(|&(s, t)| pm_in_ideal(s, t, code))
        .collect();
    let member_set: BTreeSet<(u64, u64)> = members.iter().copied().collect();
    members
        .iter()
        .copied()
        .filter(|&(s, t)| {
            // Proper divisors are the (s', t') with s' ⊆ s, t' ⊆ t, not both equal.
            if n <= 4 {
                !members
                    .iter()
                    .any(|&(s2, t2)| (s2, t2) != (s, t) && s2 & !s == 0 && t2 & !t == 0)
            } else {
                // Membership is closed under multiplication, so a proper member
                // divisor exists iff one obtained by dropping one factor exists.
                !(0..n).any(|i| {
                    let b = 1u64 << i;
                    (s & b != 0 && member_set.contains(&(s & !b, t)))
                        || (t & b != 0 && member_set.contains(&(s, t & !b)))
                })
            }
        })
        .collect()
}

pub fn pm_pair(f: &Pseudomonomial) -> (u64, u64) {
    (f.sigma_mask(), f.tau_mask())
}

/// Multilinear terms of `Π_{σ} x_i Π_{τ} (1 - x_j)`: `x^{σ ∪ S}` for `S ⊆ τ`.
pub fn pm_terms(sigma: u64, tau: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut s = tau;
    loop {
        out.insert(sigma | s);
        if s == 0 {
            break;
        }
        s = (s - 1) & tau;
    }
    out
}

pub fn xor_terms(acc: &mut BTreeSet<u64>, terms: &BTreeSet<u64>) {
    for t in terms {
        if !acc.remove(t) {
            acc.insert(*t);
        }
    }
}

/// Polynomials over `F_2` in `m` variables with arbitrary exponents, as the
/// set of exponent vectors with coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub m: usize,
    pub terms: BTreeSet<Vec<u8>>,
}

impl Poly {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(vec![0; m])
    }

    pub fn monomial(exps: Vec<u8>) -> Self {
        Self {
            m: exps.len(),
            terms: [exps].into_iter().collect(),
        }
    }

    pub fn var(m: usize, j: usize) -> Self {
        let mut e = vec![0; m];
        e[j - 1] = 1;
        Self::monomial(e)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly {
            m: self.m,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut counts: BTreeMap<Vec<u8>, bool> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *counts.entry(e).or_default() ^= true;
            }
        }
        Poly {
            m: self.m,
            terms: counts.into_iter().filter(|(_, c)| *c).map(|(e, _)| e).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The polynomial of the pseudomonomial `(σ, τ)`.
    pub fn of_pm(m: usize, sigma: u64, tau: u64) -> Poly {
        pm_terms(sigma, tau)
            .into_iter()
            .map(|s| Poly::monomial((0..m).map(|i| (s >> i & 1) as u8).collect()))
            .fold(Poly::zero(m), |acc, p| acc.add(&p))
    }
}

/// Whether each `x_j` lies in the `F_2`-span of the products of at most
/// `depth` images (the empty product being 1).
pub fn surjective(m: usize, images: &[Poly], depth: usize) -> bool {
    let mut products = vec![Poly::one(m)];
    let mut frontier = vec![Poly::one(m)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for img in images {
                next.push(p.mul(img));
            }
        }
        products.extend(next.iter().cloned());
        frontier = next;
    }
    let basis = echelon(products);
    (1..=m).all(|j| in_span(&basis, &Poly::var(m, j)))
}

fn leading(p: &Poly) -> Option<&Vec<u8>> {
    p.terms.iter().next_back()
}

fn reduce(basis: &[Poly], p: &Poly) -> Poly {
    let mut p = p.clone();
    loop {
        let Some(lead) = leading(&p).cloned() else {
            return p;
        };
        match basis.iter().find(|b| leading(b) == Some(&lead)) {
            Some(b) => p = p.add(b),
            None => return p,
        }
    }
}

fn echelon(polys: Vec<Poly>) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        let r = reduce(&basis, &p);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis
}

fn in_span(basis: &[Poly], p: &Poly) -> bool {
    reduce(basis, p).is_zero()
}

/// A uniformly shaped random map: `m` distinct sources hit the targets,
/// the rest go to constants.
pub fn random_hom<R: Rng>(rng: &mut R, n: usize, m: usize) -> NipHom {
    let mut sources: Vec<usize> = (0..n).collect();
    sources.shuffle(rng);
    let mut images = vec![VarImage::Zero; n];
    for (k, &i) in sources.iter().enumerate() {
        images[i] = if k < m {
            if rng.random_bool(0.5) {
                VarImage::Var(k + 1)
            } else {
                VarImage::NegVar(k + 1)
            }
        } else if rng.random_bool(0.5) {
            VarImage::One
        } else {
            VarImage::Zero
        };
    }
    NipHom::from_images(m, images).unwrap()
}

pub fn random_masks<R: Rng>(rng: &mut R, n: usize) -> Masks {
    let density: f64 = rng.random_range(0.0..=1.0);
    (0..1u64 << n).filter(|_| rng.random_bool(density)).collect()
}

/// All maps with the given arities whose images are in `{0, 1, x_j, 1-x_j}`.
pub fn all_literal_assignments(n: usize, m: usize) -> Vec<Vec<VarImage>> {
    let mut literals = vec![VarImage::Zero, VarImage::One];
    for j in 1..=m {
        literals.push(VarImage::Var(j));
        literals.push(VarImage::NegVar(j));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                literals.iter().map(move |&l| {
                    let mut p = prefix.clone();
                    p.push(l);
                    p
                })
            })
            .collect();
    }
    out
}

/// All permutations of `1..=n` as image lists.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

/// Membership pattern of each point, and the code they form.
pub fn cover_code(n: usize, universe: &BTreeSet<usize>, members: &[BTreeSet<usize>]) -> Masks {
    universe
        .iter()
        .map(|p| {
            (0..n)
                .filter(|&i| members[i].contains(p))
                .fold(0u64, |acc, i| acc | 1 << i)
        })
        .collect()
}
