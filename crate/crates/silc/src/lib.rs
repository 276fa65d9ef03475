//! Combinatorics and graded characters attached to semi-infinite flag
//! manifolds: affine Weyl groups, the semi-infinite Bruhat order, Demazure
//! and global Weyl module characters, Pieri coefficients, and quasi-maps.

pub mod charring;
pub mod linsolve;
pub mod pieri;
pub mod quasimap;
pub mod ratpoly;
pub mod rootdata;
pub mod semiinf;
pub mod weylgroup;

pub use rootdata::{CartanMatrix, Coweight, RootDataError, RootDatum, Weight};
pub use weylgroup::{AffineWeylElement, FiniteWeylElement, WeylGroup};
