//! Binary neural codes and neural ideals over `F_2[x_1, …, x_n]`.
//!
//! The crate covers pseudomonomial algebra ([`pseudo`]), codes and their
//! transformations ([`codes`]), neural ideals with canonical forms and
//! membership certificates ([`ideals`]), the homomorphisms that preserve
//! neural ideals ([`homs`]), finite realizations of codes by covers
//! ([`realize`]), and the plain-text file formats used by the CLI
//! ([`text`]).

pub mod codes;
pub mod error;
pub mod homs;
pub mod ideals;
pub mod pseudo;
pub mod realize;
pub mod text;

pub use codes::{Code, Codeword, Permutation};
pub use error::{Error, Result};
pub use homs::{Decomposition, NipHom, RawImage, VarImage};
pub use ideals::{
    ideal_equal, CanonicalForm, CertificateTerm, GeneratorSet, MembershipCertificate, NeuralIdeal,
};
pub use pseudo::{MultilinearPoly, PseudoOrZero, Pseudomonomial};
pub use realize::{CellCover, Cover, Interval, IntervalCover, IntervalSet, Rational, Transform};
