//! Orchestration: the proof pipeline, its configuration, the emitted
//! certificate and its re-verification.

mod certificate;
mod config;
mod stages;
mod verify;

pub use certificate::{NumberRecord, ProofCertificate, StageOutcome, Stages, SCHEMA_VERSION};
pub use config::{parse_sci_biguint, ProveConfig};
pub use stages::{
    case_n1, final_grid, prove, small_n_search, EquationSolution, GridCell, GridScan, SearchRange,
    SignVariant, SOURCE_GAMMA_PREFIX,
};
pub use verify::{verify_certificate, StageCheck, VerifyReport};
