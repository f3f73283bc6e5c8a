//! Entropy production of a qubit relaxing in a thermal bath, split into a
//! population part and a coherence part.
//!
//! The dynamics is the generalized amplitude damping channel
//! ([`channel::GadChannel`]), cross-checked against a Lindblad integrator.
//! [`entropy`] computes the decomposition, [`prep`] builds the wave-plate
//! input states, [`tomography`] simulates finite-shot state reconstruction
//! and [`harness`] runs parameter sweeps and the property suite behind the
//! `gad-entropy` binary.

pub mod channel;
pub mod entropy;
pub mod error;
pub mod extended;
pub mod harness;
pub mod prep;
pub mod qstate;
pub mod tomography;

pub use channel::{BathSpec, GadChannel};
pub use entropy::{budget, EntropyBudget};
pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use prep::PrepSetting;
pub use qstate::{BlochVector, QubitState};
pub use tomography::{CountRecord, Reconstruction};
