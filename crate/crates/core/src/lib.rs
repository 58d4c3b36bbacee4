//! Legendre-Gauss-Lobatto polynomials, Legendre coefficients of functions of
//! limited regularity, and the error bounds that go with them.
//!
//! The modules build on each other in order: [`polycore`] evaluates the
//! classical families and Gauss rules, [`lobatto`] the LGL/GGL functions,
//! [`coefficients`] projects test functions, [`bounds`] evaluates the
//! closed-form estimates and [`interp`] does barycentric interpolation.
//! [`experiments`] and [`verify`] run the sweeps behind the CLI.

pub mod bounds;
pub mod coefficients;
pub mod csv;
pub mod error;
pub mod experiments;
pub mod interp;
pub mod lobatto;
pub mod polycore;
pub mod verify;

pub use bounds::{BoundReport, EllipseSpec};
pub use coefficients::{FunctionKind, FunctionSpec, L2Error, LegendreSeries, LinfError};
pub use csv::{format_g17, Cell, CsvTable};
pub use error::{Error, Result};
pub use interp::{BarycentricSet, DiffMatrix, RungeExperiment};
pub use lobatto::{EllipseMin, GglParams, PhiMax};
pub use polycore::{NodeKind, NodeSet};
