//! Constructive projection arguments in the Basilica group: descent by
//! squaring towards `ab` and `b⁻¹a`, coset solving in `B/B'`, and the
//! search for a vertex at which a subgroup projects onto the whole group.

pub mod certificate;
pub mod congruence;
pub mod descent;
pub mod lattice;
pub mod search;

pub use certificate::{verify_certificate, Budgets, ProdenseCertificate, StageRecord};
pub use congruence::{congruence_transition, CosetClass};
pub use descent::{
    find_ab, find_ab_with_budget, find_b_inv_a, find_b_inv_a_with_budget, persist_ab, AbForm,
    DescentCertificate, Target,
};
pub use lattice::{lattice, solve_coset, CosetOutcome, CosetSolution};
pub use search::{prodense_projection_search, FailureKind, FailureReport, SearchOutcome};
