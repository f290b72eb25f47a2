//! Explicit groupoid models integrating linear Poisson data, and curvature
//! periods of anchor splittings.

mod model;
mod monodromy;

pub use model::{
    rational_roots, Arrow, AxiomReport, LinearGroupoidModel, MorphismReport, OmegaForm, PairArrow, COMPOSABLE_TOL,
};
pub use monodromy::{monodromy_period, pairwise_sum, Gauge, MonodromyProblem, PeriodEstimate, SphereMap, SPLITTING_TOL};
