//! Exact exterior calculus on polynomial coordinate charts, with the multisymplectic
//! toolkit built on top of it: Hamiltonian pairs, generalized Poisson brackets,
//! homotopy co-momentum maps, multisymplectic phase spaces and the G₂ operator suite.

pub mod comomentum;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod g2;
pub mod homotopy;
pub mod identities;
pub mod lie;
pub mod multisymplectic;
pub mod phase_space;
pub mod linalg;
pub mod poly;
pub mod random;

pub use error::{Error, Result};
pub use exterior::{Blade, Chart, Form, MultiVec};
pub use lie::{Action, FieldWedge, LieAlgebra, WedgePower};
pub use poly::{int, rat, Monomial, Polynomial, Rational};
