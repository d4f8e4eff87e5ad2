//! Gromov–Vaserstein fibrations for the special linear and symplectic
//! groups, determinant vector fields, fiber reduction and smoothness.

mod determinant;
mod factor;
mod fibration;
mod partial;
mod reduce;
mod smooth;
mod variety;

pub use determinant::{det_vector_field, det_vector_field_named};
pub use factor::{
    build_factor, factor_pairs, is_symplectic, omega, sp_last_row_pairs, symplectic_residual, var_name, FactorMatrix,
    GroupKind,
};
pub use fibration::{build_fibration, build_sp_fibration_reduced, FibrationPresentation, FibrationVar};
pub use partial::{
    all_partial_checks, partial_identity_check, PartialCheck, VanishingCheck, VANISHING_FIBER, VANISHING_SAMPLES,
};
pub use reduce::{fiber_reduce, FiberReduction};
pub use smooth::{
    classify, groebner_smoothness, smoothness_check, unit_vector, ClassifierVerdict, GroebnerVerdict, SmoothnessVerdict,
};
pub use variety::{gv_variety_sl, gv_variety_sp, sp4_presentation, GvVariety, SP4_RENAMING};
