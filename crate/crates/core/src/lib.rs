//! Exact computations around Casselman's basis of Iwahori-fixed vectors.
//!
//! The crate enumerates finite Weyl groups with their Bruhat order, computes
//! the order-theoretic sets `S(u,v)` and `S′(u,v)`, good words and
//! interval-stabilizing reflections, Kazhdan–Lusztig polynomials, and
//! evaluates the transition matrices `m(u,v)` and `m̃(u,v)` between the
//! natural basis `ψ_u` and the Casselman basis `f_u` inside the finite
//! Iwahori–Hecke algebra, at random generic spectral parameters over a prime
//! field or over the rationals.
//!
//! ```
//! use casselman::{WeylGroup, bruhat};
//!
//! let b2 = WeylGroup::build("B2".parse().unwrap()).unwrap();
//! let u = b2.parse("1").unwrap();
//! let v = b2.parse("121").unwrap();
//! assert!(bruhat::find_good_word(&b2, u, v).unwrap().is_none());
//! ```

pub mod bitmatrix;
pub mod bruhat;
pub mod cache;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod rootsys;
pub mod scalars;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use hecke::{HeckeAlgebra, HeckeElement, TransitionMatrices};
pub use kl::{IntPolynomial, KlTable};
pub use rootsys::{CartanType, Family, Root, RootId, RootSystem};
pub use scalars::{Backend, FieldElement, IdentityCheckConfig, SpectralPoint};
pub use weyl::{WeylElement, WeylGroup};
