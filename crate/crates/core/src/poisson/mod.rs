//! Poisson-specific analysis on a single chart: the Jacobi check, top powers,
//! Casimirs, germinal isotropy, almost regularity with the distribution `D`,
//! linear Poisson structures, and fiber dimensions of foliation modules.

mod casimir;
mod distribution;
mod foliation;
mod isotropy;
mod linear;
mod structure;

pub use distribution::{
    annihilator, AlmostRegular, DistributionCheck, DistributionPresentation, DistributionSource, NotInvolutive,
    NotTangent,
};
pub use foliation::{FoliationModule, NotIncluded};
pub use isotropy::GerminalIsotropy;
pub use linear::{library, LieAlgebra, LinearPoisson};
pub use structure::{bivector, check_jacobi, koszul_bracket, JacobiFailure, PoissonStructure, TopPower};
