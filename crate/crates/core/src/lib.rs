//! Positive scalar curvature decisions for homogeneous spaces and
//! cohomogeneity one manifolds given as Lie-algebraic group diagrams, plus
//! numerical construction and certification of the invariant
//! non-negative-Ricci and positive-scalar-curvature metrics.
//!
//! The crate splits into:
//!
//! - [`lie`]: compact Lie algebras as structure constants in a basis
//!   orthonormal for the Ad-invariant inner product, with the bracket,
//!   center and derived-subalgebra machinery;
//! - [`diagram`]: group diagrams `(G, H, K_-, K_+)` at Lie-algebra fidelity
//!   with exact finite isotropy data inside tori, and their validation;
//! - [`classify`]: the PSC decision procedures with curvature witnesses and
//!   flat diffeomorphism-type naming;
//! - [`warp`]: the warping-function constructions (sine-then-constant, and
//!   the concave rational modification), their smoothing, the block
//!   curvature functions, and grid certification with independent oracles;
//! - [`catalog`] and [`io`]: built-in examples and the JSON/CSV formats.
//!
//! The numeric core is generic over the scalar type through
//! [`scalar::Real`]; the aliases below fix `f64`, which every default
//! tolerance assumes.

pub mod catalog;
pub mod classify;
pub mod diagram;
mod error;
pub mod io;
pub mod lie;
mod linalg;
pub mod scalar;
pub mod torus;
pub mod warp;

pub use error::{Error, Result};
pub use scalar::Real;

/// Default-precision aliases.
pub type LieAlgebra = lie::LieAlgebraModel<f64>;
pub type Subspace = lie::Subspace<f64>;
pub type Subgroup = diagram::SubgroupDescriptor<f64>;
pub type Diagram = diagram::GroupDiagram<f64>;
pub type Pair = diagram::HomogeneousPair<f64>;
pub type Profile = warp::WarpProfile<f64>;
pub type Splitting = warp::BlockSplitting<f64>;
