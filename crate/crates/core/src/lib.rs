//! Thermal Casimir interaction of two parallel gapless graphene sheets.
//!
//! The free energy comes from the Lifshitz Matsubara sum with reflection
//! coefficients built on the graphene polarization tensor (zero-temperature
//! parts plus exact thermal corrections). The crate provides the full
//! numerics, the decomposition of the thermal correction into its summation
//! and tensor parts, closed-form low-temperature expressions, entropy and
//! pressure by numerical differentiation, parameter sweeps, and the
//! acceptance checks used by the CLI `verify` command.

pub mod asymptotics;
pub mod error;
pub mod lifshitz;
pub mod numerics;
pub mod params;
pub mod polarization;
pub mod reflection;
pub mod sweep;
pub mod verify;

pub use error::{CasimirError, Result};
pub use lifshitz::{Estimate, SolverConfig};
pub use params::{Couplings, PhysicalSetup, Scales};
