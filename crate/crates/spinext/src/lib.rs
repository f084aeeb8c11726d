//! Exact computation with spin structures on closed surfaces and tori.
//!
//! Surface spin structures are modeled as quadratic refinements of the
//! standard symplectic form over GF(2) and classified by the Arf
//! invariant; torus spin structures as an affine GF(2)^p over the Lie
//! structure. The library computes the bounding/unbounding counts, the
//! orbits of the symplectic and modular group actions, the resulting
//! extension-index lower bounds, and explicit witnesses for each.

pub mod error;
pub mod f2;
pub mod group;
pub mod quadform;
pub mod surface;
pub mod symplectic;
pub mod torus;

pub use error::{Error, Result};
pub use f2::{F2Mat, F2Vec};
pub use quadform::QuadraticRefinement;
pub use symplectic::{SymplecticElement, SymplecticSpace};
pub use torus::{T3Verdict, TorusSpin};
