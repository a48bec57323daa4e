use std::fmt;

use super::{NipHom, VarImage};
use crate::codes::{Code, Permutation};
use crate::error::{check_same_ambient, Result};
use crate::pseudo::mask_indices;

/// `φ = ω ∘ λ ∘ δ` with `δ` flipping the sources sent to some `1 - x_j`,
/// `λ` moving each source onto its target (the sources sent to 0 onto
/// `m+1..=m'` and those sent to 1 onto `m'+1..=n`, each block in increasing
/// source order), and `ω = ω_{m,m'}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Decomposition {
    n: usize,
    m: usize,
    flips: u64,
    perm: Permutation,
    mp: usize,
}

impl NipHom {
    pub fn decompose(&self) -> Decomposition {
        let (zeros, ones) = self.constant_masks();
        let m = self.m;
        let mp = m + zeros.count_ones() as usize;
        let mut images = vec![0usize; self.n];
        let mut flips = 0u64;
        for (i, img) in self.images.iter().enumerate() {
            match *img {
                VarImage::Var(j) => images[i] = j,
                VarImage::NegVar(j) => {
                    images[i] = j;
                    flips |= 1 << i;
                }
                _ => {}
            }
        }
        for (k, i) in mask_indices(zeros).enumerate() {
            images[i - 1] = m + 1 + k;
        }
        for (k, i) in mask_indices(ones).enumerate() {
            images[i - 1] = mp + 1 + k;
        }
        let perm = Permutation::new(images).expect("validated map yields a bijection");
        Decomposition {
            n: self.n,
            m,
            flips,
            perm,
            mp,
        }
    }
}

impl Decomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Flipped sources, ascending.
    pub fn flips(&self) -> Vec<usize> {
        mask_indices(self.flips).collect()
    }

    pub(crate) fn flip_mask(&self) -> u64 {
        self.flips
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// `(m, m')` of the restriction.
    pub fn restriction(&self) -> (usize, usize) {
        (self.m, self.mp)
    }

    pub fn delta(&self) -> NipHom {
        NipHom::bitflip(self.n, &self.flips()).expect("flips lie in range")
    }

    pub fn lambda(&self) -> NipHom {
        NipHom::permutation(&self.perm).expect("permutation is valid")
    }

    pub fn omega(&self) -> NipHom {
        NipHom::restriction(self.n, self.m, self.mp).expect("1 <= m <= m' <= n")
    }

    /// `ω ∘ λ ∘ δ`.
    pub fn recompose(&self) -> NipHom {
        self.omega()
            .compose(&self.lambda().compose(&self.delta()).expect("arities chain"))
            .expect("arities chain")
    }

    /// The matching code transformation: flip, permute, restrict.
    pub fn transform_code(&self, code: &Code) -> Result<Code> {
        check_same_ambient(self.n, code.n())?;
        let mut out = code.clone();
        for i in self.flips() {
            out = out.bitflip(i)?;
        }
        out.permute(&self.perm)?.restrict(self.m, self.mp)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flips: Vec<String> = self.flips().iter().map(|i| i.to_string()).collect();
        writeln!(f, "delta: flips {{{}}}", flips.join(","))?;
        let arrows: Vec<String> = self
            .perm
            .images()
            .iter()
            .enumerate()
            .map(|(i, j)| format!("{}->{}", i + 1, j))
            .collect();
        writeln!(f, "lambda: {}", arrows.join(" "))?;
        write!(f, "omega: m={} m'={}", self.m, self.mp)
    }
}
