//! Helicity Fock space `|n+, n->`, observable matrices and the tabulated
//! closed forms.

pub mod basis;
pub mod commutators;
pub mod observables;
pub mod tables;

pub use basis::{ladder_matrix, ladder_ops, CMatrix, FockBasis, FockOperator, Ladder, LadderTerm};
pub use commutators::{commutator_check, run_identity_suite, IdentityCheck, IDENTITY_IDS};
pub use observables::{build_observable, gauge_variant_matrix, gauge_variant_shift, ladder_terms, poly_operator};
pub use tables::{
    change_of_basis, change_of_basis_full, change_of_basis_jet, level_phase, t1_kernel, table2_element,
    T1Kernel, TableValue,
};
