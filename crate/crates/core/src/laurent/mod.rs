//! The infinite cyclic group: binomial polynomials `c_i(α)`, the matrices
//! of `(1+T)^k` on `k[[T]]/(T^(l+1))`, their orders over `F_p`, the tower
//! of groups `P_l`, and relations among matrix coordinates on the orbit.

mod binomial;
mod orbit;
mod relations;

pub use binomial::{
    binomial_poly, char_zero_injectivity, vandermonde_check, BinomialPolynomial, InjectivityReport,
    InjectivityVerdict, VandermondeReport, VandermondeRow,
};
pub use orbit::{
    band_order, closed_form_order, graded_p_vs_j, laurent_tower, minimal_exponent, order_profile, shift_matrix_orbit,
    GradedPvsJ, GradedPvsJRow, LaurentTower, OrderProfile, OrderRow, ShiftOrbit, TowerTransition, MAX_GRADED_INDEX,
    MAX_PROFILE_LEVEL, ORBIT_CAP,
};
pub use relations::{
    coord, difference, paper_ideal_audit, vanishing_relations, Coordinate, CoordinatePolynomial, GeneratorCheck,
    GeneratorVerdict, IdealAudit, IdealAuditLevel, RelationBasis, MAX_MONOMIALS, MAX_RELATION_DEGREE,
    MAX_RELATION_LEVEL,
};
