//! Exact computations with DG Lie algebras of poly vector fields and poly
//! differential operators, L-infinity structures on symmetric coalgebras,
//! Maurer-Cartan elements, twisting, and the HKR map.
//!
//! All arithmetic is over exact rationals. Infinite objects (power series,
//! symmetric coalgebras) are represented through explicit truncations, and
//! every truncation either is exact or fails loudly.

pub mod coalg;
pub mod dga;
pub mod dpoly;
pub mod error;
pub mod hkr;
pub mod instance;
pub mod linalg;
pub mod linf;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod random;
pub mod suite;
pub mod tpoly;

pub use coalg::{CoalgElem, GradedModule, Intent, TaylorSeq, Word};
pub use dga::{dga_tensor, truncated_poly_dga, CoeffDga, DgaElem, ValidationReport};
pub use dpoly::PolyDiffOp;
pub use error::{Error, Result};
pub use linf::{FiniteDgla, LinfAlgebra, LinfMorphism};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use tpoly::PolyVec;
