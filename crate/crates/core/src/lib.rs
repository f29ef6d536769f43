//! Exact computation and verification of Rado numbers for equations of the form
//! `c_1 x_1 + ... + c_{k-1} x_{k-1} = x_k + b` with positive `c_i`.
//!
//! * [`equation`] and [`coloring`]: the equation family, solutions, and the
//!   goodness / excellence predicates.
//! * [`search`]: exhaustive backtracking for Rado numbers and longest
//!   excellent colorings.
//! * [`bounds`]: closed-form bounds in terms of the homogeneous Rado number,
//!   and the colorings that realize them.
//! * [`registry`] and [`repro`]: known values, corollary formulas, and the
//!   harness that checks them against search.
//! * [`store`] and [`output`]: certificate persistence and the JSON result record.

pub mod bounds;
pub mod coloring;
pub mod equation;
pub mod output;
pub mod registry;
pub mod repro;
pub mod search;
pub mod store;

pub use bounds::{BoundInputs, BoundsError, BoundsReport};
pub use coloring::{is_excellent_coloring, is_good_coloring, Color, Coloring, ColoringError};
pub use equation::{ceil_div, Equation, EquationError, RegularityStatus, SolutionTuple};
pub use registry::{conjecture_value, Corollary, KnownValue, Registry};
pub use repro::{conjecture_check, reproduce_report, ReproOptions, Scope};
pub use search::{
    find_good_coloring, max_excellent_length, rado_number, ExcellenceResult, ExcellenceStatus, RadoResult, RadoStatus,
    SearchOptions,
};
pub use store::{Certificate, CertificateStore};

/// Version string recorded in certificates and JSON output.
pub const ENGINE_VERSION: &str = concat!("rado-core ", env!("CARGO_PKG_VERSION"));
