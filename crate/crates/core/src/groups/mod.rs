//! Finite groups from specifications: cyclic groups, products, `SL_n` over
//! `Z/m` and `F_p[t]/(t^l)`, congruence kernels and unitriangular groups.
//!
//! Elements are canonical coordinate vectors; every enumerated subgroup is
//! stored sorted by its octet encoding, so all reports are deterministic.

mod group;
mod hom;
mod law;
mod quotient;
mod ring;
mod section;
mod series;
mod spec;

pub use group::{construct_group, enumerate_elements, subgroup_generated, FiniteGroup, Subgroup, DEFAULT_ELEMENT_CAP};
pub use hom::Homomorphism;
pub use law::{CyclicLaw, Element, GroupLaw, MatrixKind, MatrixLaw, ProductLaw, QuotientLaw};
pub use quotient::{abelian_invariants, fingerprint, quotient_group, GroupFingerprint};
pub use ring::Ring;
pub use section::{
    default_quotient_generators, elementary_complement_obstruction, find_section, ObstructionReport,
    ObstructionVerdict, SectionCaps, SectionSearchResult, SectionVerdict,
};
pub use series::{
    center, commutator_subgroup, compare_series, congruence_filtration, congruence_filtration_report,
    lower_central_series, lower_central_terms, p_lower_central_series, p_lower_central_terms,
    truncated_sl_filtration_report, ComparisonFlag, FingerprintVerdict, GradedStep, ReferenceFiltration,
    SeriesKind, SeriesReport,
};
pub use spec::{prime_power, GroupSpec, RingSpec};
