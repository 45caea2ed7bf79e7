//! Numerical checks of the representations against the algebra.

pub mod casimir;
pub mod residual;
pub mod spectrum;

pub use casimir::{casimir_commutators, casimir_scalarity, CasimirReport, SectorValue};
pub use residual::{
    general_identities, identity_residual, n3_closed_list, relation_residual_suite, run_identities, star_suite,
    Identity, IdentityReport, SuiteReport,
};
pub use spectrum::{
    gram_psd_check, highest_weight_search, norm_recursion_check, predicted_highest_weights, spectrum_report,
    GramReport, NormRecursion, NormStep, ObservableSpectrum, SpectrumTable,
};
