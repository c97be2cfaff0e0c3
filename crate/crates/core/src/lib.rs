//! Affine composition operators `C_{az+b}` on weighted Hilbert spaces of
//! Dirichlet series `H(β, Λ)`.
//!
//! Closed-form operator quantities (norm, essential norm, Schatten
//! membership, closed range, cyclicity, complex symmetry) live in
//! [`operator`], [`dynamics`] and [`symmetry`]; [`oracle`] rebuilds the same
//! quantities from dense truncation matrices for cross-checking.

pub mod dynamics;
pub mod error;
pub mod numeric;
pub mod operator;
pub mod oracle;
pub mod sequences;
pub mod space;
pub mod symmetry;
pub mod window;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use sequences::{FrequencySequence, WeightSequence};

pub use space::{DirichletElement, HalfPlaneDomain, Space};
pub use window::Estimate;
