//! Explicit solutions of the universal algebraic differential equation
//!
//! ```text
//! y⁗y′² − 3y‴y″y′ + 2(1 − n⁻²)y″³ = 0,     n ≥ 4
//! ```
//!
//! built by pasting S-modules `Y(x) = δ + γ∫g(αt + β)dt` with
//! `g = cnⁿ(·, 1/2)`, together with the numerical tooling to check them.
//!
//! - [`elliptic`]: K(m), sn, cn, dn (parameter convention `m = k²`).
//! - [`smodule`]: one monotone transition and its closed-form derivatives.
//! - [`approx`]: knot planning and pasting to approximate a target within ε.
//! - [`residual`]: ADE residuals and certification of pasted solutions.
//! - [`funcparse`]: the small expression language for targets and tolerances.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod elliptic;
pub mod funcparse;
pub mod quadrature;
pub mod residual;
pub mod smodule;

pub use approx::{build_solution, error_report, plan_knots, ErrorReport, PiecewiseSolution, TargetSpec};
pub use elliptic::{complete_k, jacobi_derivatives, jacobi_sncndn, EllipticParam, EllipticTriple};
pub use residual::{certify, JetPoint, ResidualReport};
pub use smodule::{eval_g_derivs, make_transition, mass, SModule};
