//! Exact exterior algebra over the 32 real covectors of C¹⁶.

pub mod blade;
pub mod complex;
mod decomposition;
mod form;
mod ops;
pub mod standard;
mod tau;

pub use blade::{Blade, SubsetRanker};
pub use complex::{ComplexBladeView, ComplexTerm, Cov};
pub use decomposition::{tau2_decomposition, DecompositionCheck, PrintedClaim, Tau2Decomposition};
pub use form::{FormMatrix, FormTerm, SparseForm};
pub use ops::{kahler_form_of, lie_derivation};
pub use tau::{divide_exact, integer_content, quadruples, tau2, tau4, tau4_minor_oracle, tau4_with_stats, KernelPath, Tau4Stats};
