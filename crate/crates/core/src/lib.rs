//! Finite-volume solver for the compressible Euler equations of two-component
//! gas mixtures (perfect and stiffened gases), with low-diffusion central
//! schemes, classical upwind comparators, a test-case registry and
//! verification diagnostics.
//!
//! ```
//! use mixfv::{cases, solver, SchemeKind};
//!
//! let case = cases::get_case("sod_unequal_gamma").unwrap();
//! let ov = solver::RunOverrides { t_end: Some(0.01), ..Default::default() };
//! let run = solver::run(&case, SchemeKind::Ricca, &ov).unwrap();
//! assert!(run.ledger.residual() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cases;
pub mod diagnostics;
pub mod error;
mod fast1d;
pub mod flux;
pub mod io;
pub mod solver;
pub mod state;
pub mod thermo;

pub use cases::{CaseSpec, EndTime};
pub use error::{Error, Location, Result};
pub use flux::{InterfaceFlux, SchemeKind};
pub use solver::{Field, Grid, Run, RunOverrides, RunStatus, StepReport};
pub use state::{Axis, Composition, Conserved, Model, ModelKind, Primitive};
pub use thermo::{GasComponent, MixtureThermo};
