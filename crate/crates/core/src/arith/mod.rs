//! Arithmeticity obstructions and the classification drivers built on them.

mod equilateral;
mod irrational;
mod nonuniform;
mod profile;
mod takeuchi;
mod verdict;

pub use equilateral::{
    equilateral_row, equilateral_scan, equilateral_sign, jacobsthal, smallest_coprime_prime, EquilateralRow,
    EquilateralScan, SPolicy,
};
pub use irrational::{irrational_psi_report, Constraint, IrrationalPsiReport};
pub use nonuniform::{
    enumerate_nonuniform, enumerate_nonuniform_with, nonuniform_psi_values, nonuniform_shapes, NonuniformEntry,
    NONUNIFORM_ANGLE_DENOMS, NONUNIFORM_ORDERS, NONUNIFORM_PSI_DENOMS,
};
pub use profile::{admissibility_test, admissibility_test_with, sign_profile, SignProfile, SignProfileJson};
pub use takeuchi::{
    admissible_right_triangles, classify_right_triangles, right_psi_candidates, takeuchi_fuchsian_test, PsiCandidate,
    RightTriangle, Vertex,
};
pub use verdict::{ReasonTag, Status, Verdict};
