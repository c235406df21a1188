//! Exact Hilbert-Samuel and irreducibility multiplicities for finite direct
//! sums of cyclic monomial quotients.

pub mod error;
pub mod fitter;
pub mod fuzz;
pub mod instance;
pub mod module;
pub mod monomial;
pub mod quotient;
pub mod report;
pub mod staircase;
pub mod theorem;

pub use error::{AlgebraError, Result};
pub use fitter::{fit, BinomialPolynomial, GrowthKind, GrowthTable};
pub use instance::{parse_instance, InstanceDocument, InstanceError};
pub use module::{GrowthSamples, ModulePresentation};
pub use monomial::{AmbientRing, Monomial, MonomialIdeal};
pub use staircase::Staircase;
pub use theorem::{multiplicity_report, verify_theorem, MultiplicityReport, UlrichReport};
