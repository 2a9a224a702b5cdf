//! Exact verification that `g = cnⁿ(x, m)` annihilates
//!
//! ```text
//! n·g‴·g² + b·g″·g′·g + c·g′³
//! ```
//!
//! for the tabulated `(m, b, c)`, in rational arithmetic over `Q[n]`.

pub mod element;
pub mod poly;
pub mod star;
pub mod table;

use thiserror::Error;

pub use element::{CExp, ElementPoly, ElementRing, Exponent, Monomial};
pub use poly::{Limit, NLaurent, NRatio, PolyN};
pub use star::{
    closed_form_quadratic, proportionality, reduce_star, symbolic_g_derivatives, GDerivatives, IdentityCoeffs,
    StarCoeffs, StarReduction,
};
pub use table::{
    check_solution_table, check_solution_table_with, limit_coefficients, row_correspondence, LimitReport,
    TableReport, TableRow, Triple,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("parameter m = {0} is outside [0, 1]")]
    ParameterOutOfRange(String),
    #[error("exponent n = {0} is below 4")]
    ExponentTooSmall(u32),
    #[error("unexpected shape: {0}")]
    Structural(String),
}
