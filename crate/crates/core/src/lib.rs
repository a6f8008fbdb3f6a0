//! Exact verification of the finite data attached to the root-of-unity
//! quantum vertex algebra `V_{p,tau}^l(g)`.

pub mod error;
pub mod exact;
pub mod cartan;
pub mod qcomb;
pub mod report;
pub mod series;
pub mod tau;
pub mod qyb;
pub mod symcomb;
pub mod dist;
pub mod quiver;
pub mod runner;

pub use error::{Error, Result};
pub use exact::{CycloField, CycloScalar, LaurentPoly, Rational, Substitution};
pub use report::{Check, ContextEcho, Report, Status};
pub use runner::{emit_report, run_suite, Format, RunConfig, Suite};
