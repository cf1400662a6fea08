//! Norms and Mahler measures of Fekete and Turyn polynomials, and the
//! limiting constants of the associated random Rademacher series.

pub mod analysis;
pub mod circle_norms;
pub mod error;
pub mod number_theory;
pub mod parallel;
pub mod polynomials;
pub mod quadrature;
pub mod rand_process;
pub mod roots;

pub use error::{Error, Result};
