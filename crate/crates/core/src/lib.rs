//! Exact star products on coadjoint orbits.
//!
//! The crate computes in the deformed enveloping algebra `U_h` of a Lie
//! algebra, the Weyl-ordered product on `Pol(g*)[h]`, the quotient of `U_h` by
//! a Casimir ideal (for su(2): the fuzzy-sphere algebra), and the tangential
//! product built from the harmonic decomposition. A verification harness
//! checks the algebraic properties of all of them exactly.

pub mod cpoly;
pub mod envelope;
pub mod error;
pub mod harmonic;
pub mod lie;
pub mod orbit;
pub mod parse;
pub mod poisson;
pub mod random;
pub mod rep;
pub mod rational;
pub mod scalar;
pub mod verify;

pub use cpoly::{kirillov_bracket, laplacian, CPoly, Monomial};
pub use envelope::{EnvelopingAlgebra, NCPoly, SwapStrategy};
pub use error::{Error, Result};
pub use lie::{jacobi_check, JacobiReport, LieAlgebraSpec};
pub use scalar::{HScalar, Rational};
