//! Exact computation of the fiber ideals attached to a rational map
//! `P^n --> P^r` given by forms of one degree: subspace ideals, row ideals,
//! correspondence and morphism fiber ideals, analytic spread, and
//! birationality tests, on top of a small Gröbner-basis engine.

pub mod error;
pub mod fibers;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rng;
pub mod syzygy;

pub use error::{AlgebraError, Result};
pub use fibers::{MapContext, ProjectivePoint};
pub use field::{Field, PrimeField, Rationals};
pub use ideal::{Codim, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Homogeneity, PolyRing, Polynomial};
pub use syzygy::PresentationMatrix;
