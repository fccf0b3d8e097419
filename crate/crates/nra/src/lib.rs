//! A solver kernel for quantifier-free nonlinear real arithmetic.
//!
//! The crate is organized in layers:
//!
//! * [`poly`] — exact multivariate polynomial arithmetic over the integers,
//!   with the resultant/discriminant machinery projection needs.
//! * [`realalg`] — real root isolation and exact real algebraic numbers,
//!   including sign determination at algebraic points.
//! * [`model`] — terms, formulas, assignments and three-valued evaluation.
//! * [`cad`] — projection closure and model-driven single-cell construction.
//! * [`mcsat`] — the model-constructing search loop with solving modulo a
//!   partial model and model-interpolant certificates.
//! * [`itp`] — two-solver interpolation and elimination of extended literals.
//! * [`gen`] — implicant extraction and model generalization.
//! * [`frontend`] — parsers and printers for the script and transition-system
//!   input languages.
//! * [`mc`] — BMC, k-induction and interpolation-based invariant inference.
//! * [`cli`] — command line driver shared by the binary and the bindings.

pub mod cad;
pub mod cli;
pub mod error;
pub mod frontend;
pub mod gen;
pub mod itp;
pub mod mc;
pub mod mcsat;
pub mod model;
pub mod poly;
pub mod realalg;

pub use error::{Error, Result};
