//! Poisson structures on trivialized cotangent bundles of matrix Lie groups,
//! their reductions (coadjoint orbits, Cartan subalgebras, principal
//! connections) and the dynamics of a particle carrying a Yang–Mills charge.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod gauge;
pub mod group;
pub mod poisson;
pub mod reduce;

pub use algebra::{load_algebra, AlgebraSpec, DualVector, LieAlgebra};
pub use dynamics::{integrate_wong, invariant_report, wong_vector_field, Trajectory};
pub use error::{Error, Result};
pub use gauge::{CurvatureField, GaugeMap, PotentialSpec, VectorPotential};
pub use group::GroupElement;
pub use poisson::{Bracket, PhasePoint};
pub use reduce::{root_system, RootSystemData, WongState};
