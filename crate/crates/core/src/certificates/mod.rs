//! Compatible tuples: admissible trees, condition (1) evidence, bracket
//! identities, spanning and sufficiency checks.

mod identities;
mod kernel_function;
mod span;
mod sufficiency;
mod tree;
mod tuple;

pub use identities::{lemma1_check, wk_recursion, WkRecursion};
pub use kernel_function::{find_kernel_function, KernelFunction};
pub use span::{field_matrix_at, span_at_point, span_everywhere};
pub use sufficiency::{
    sufficiency_check, sufficiency_from_instance, PairVerdict, SufficiencyInstance, SufficiencyReport,
};
pub use tree::{check_edge, AdmissibleTree, EdgeCheck, TreeEdge, LABEL_DEGREE_CAP};
pub use tuple::{
    coverage_certificate, coverage_degrees, validate_tree, verify_tuple, witness_span_check, CheckLine, CheckStatus,
    ConditionOneEvidence, TreeValidation, TupleCertificate, Verdict, VerificationReport, WitnessCheck, WitnessFactor,
    WitnessTarget,
};
