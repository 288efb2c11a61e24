//! Convergences on finite Boolean algebras `P(n)`, eventually periodic
//! sequences, the sequential topologies they generate, and the Boolean
//! values of the associated forcing statements.

pub mod algebra;
pub mod convergence;
pub mod corpus;
pub mod cube;
pub mod error;
pub mod forcing;
pub mod kernel;
pub mod omega;
mod periodic;
pub mod sequence;
pub mod suite;
pub mod topology;
pub mod verdict;

pub use algebra::{Algebra, Caps, Element, ElementSet};
pub use convergence::{check_axioms, convergence_eq, convergence_le, AxiomReport, Convergence, SupportTable};
pub use corpus::Bounds;
pub use error::{Error, Result};
pub use omega::{compose_with_enumeration, OmegaClass, OmegaSet};
pub use sequence::EPSequence;
pub use topology::FiniteTopology;
pub use verdict::{Verdict, Witness};
