//! Named reconstructions with golden-file regression and the composite
//! identity checks built on top of the forms engine.

mod golden;
pub mod tables;
mod verify;

pub use golden::{
    default_golden_dir, emit_golden_all, phi10_summary, read_golden, ErrataEntry, Phi10Summary, ERRATA_FILE,
    PHI10_FILE, PHI9_FILE,
};
pub use tables::{build_table, render_table, Table, TableKind, TableSpec, TABLES};
pub(crate) use golden::parse_form_lines;
pub(crate) use verify::run;
pub use verify::{
    verify_errata, verify_phi_spin10, verify_phi_spin9, verify_restriction_identity, verify_tables,
    verify_theorem_tau, IdentityReport,
};
