//! Cohomology of finite groups with trivial `F_p` coefficients through the
//! normalized bar complex, inflation along surjections and colimits over
//! towers of finite quotients.

mod bar;
mod tower;

pub use bar::{
    bar_cohomology, periodic_cyclic_oracle, BarComplex, CochainSpace, CohomologyResult, CohomologySummary,
    MAX_COCHAIN_DEGREE, MAX_COCHAIN_DIM, MAX_COHOMOLOGY_DEGREE,
};
pub use tower::{
    inflation_map, lemma51_consistency, tower_continuous_cohomology, Colimit, ConsistencyVerdict, InflationMap,
    Lemma51Report, TowerLevel, TowerReport, TowerSpec,
};
