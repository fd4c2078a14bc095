//! Group algebras `kG`, the powers of the augmentation ideal `J`, the
//! quotients `A_l = kG/J^(l+1)` with their induced comultiplication, the
//! grouplike groups `P_l` and completion profiles.

mod algebra;
mod coproduct;
mod profile;
mod quotient;
mod units;

pub use algebra::{build_group_algebra, h1_dimension, j_power_filtration, GroupAlgebra, JFiltration, MAX_ALGEBRA_DIM};
pub use coproduct::{coproduct_to_quotient, is_grouplike, Coproduct, MAX_TENSOR_DIM};
pub use profile::{
    completion_profile, fp_vs_pcompletion, h1_group_vs_pl, transition_map, CompletionProfile, GradedFlag, GradedRow,
    H1Comparison, PCompletionComparison, ProfileLevel,
};
pub use quotient::{quotient_algebra, QuotientAlgebra};
pub use units::{grouplike_bruteforce, unit_image_of_group, UnitImage, UnitLaw, BRUTEFORCE_LIMIT};
