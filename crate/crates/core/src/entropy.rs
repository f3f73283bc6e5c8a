//! Entropy production and its population/coherence split.
//!
//! With `D` the relative entropy to the equilibrium state and `C` the
//! relative entropy of coherence:
//!
//! ```text
//! total      = D(rho || eq)     - D(rho' || eq)
//! population = D(dephase(rho) || eq) - D(dephase(rho') || eq)
//! coherence  = C(rho) - C(rho')
//! ```
//!
//! and `total = population + coherence` whenever the reference is diagonal.

use crate::channel::GadChannel;
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::qstate::{dephase, rel_entropy_coherence, relative_entropy, QubitState, STATE_TOLERANCE};

/// Values in `[-NEGATIVITY_FLOOR, 0)` are rounding noise and are clamped to
/// zero inside an [`EntropyBudget`].
pub const NEGATIVITY_FLOOR: f64 = 1e-10;

/// Allowed `|total - population - coherence|`.
pub const ADDITIVITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBudget {
    pub total: ExtendedReal,
    pub population: ExtendedReal,
    pub coherence: f64,
}

fn check_reference(eq: &QubitState) -> Result<()> {
    if eq.is_diagonal(STATE_TOLERANCE) {
        Ok(())
    } else {
        Err(Error::ReferenceNotDiagonal {
            off_diagonal: eq.coherence_element().norm(),
        })
    }
}

pub fn total_production(
    initial: &QubitState,
    final_state: &QubitState,
    eq: &QubitState,
) -> Result<ExtendedReal> {
    check_reference(eq)?;
    relative_entropy(initial, eq).checked_sub(relative_entropy(final_state, eq), "total production")
}

pub fn population_production(
    initial: &QubitState,
    final_state: &QubitState,
    eq: &QubitState,
) -> Result<ExtendedReal> {
    check_reference(eq)?;
    relative_entropy(&dephase(initial), eq).checked_sub(
        relative_entropy(&dephase(final_state), eq),
        "population production",
    )
}

pub fn coherence_production(initial: &QubitState, final_state: &QubitState) -> f64 {
    rel_entropy_coherence(initial) - rel_entropy_coherence(final_state)
}

fn floor(value: f64, quantity: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NEGATIVITY_FLOOR {
        Ok(0.0)
    } else {
        Err(Error::ConsistencyViolation { quantity, value })
    }
}

fn floor_extended(value: ExtendedReal, quantity: &'static str) -> Result<ExtendedReal> {
    match value {
        ExtendedReal::Finite(x) => floor(x, quantity).map(ExtendedReal::Finite),
        ExtendedReal::Infinite => Ok(ExtendedReal::Infinite),
    }
}

impl EntropyBudget {
    /// Budget for an explicit `initial -> final_state` transition relative to
    /// the diagonal reference `eq`.
    pub fn from_states(initial: &QubitState, final_state: &QubitState, eq: &QubitState) -> Result<Self> {
        let total = total_production(initial, final_state, eq)?;
        let population = population_production(initial, final_state, eq)?;
        let coherence = coherence_production(initial, final_state);

        if let (Some(t), Some(p)) = (total.finite(), population.finite()) {
            let gap = t - p - coherence;
            if gap.abs() > ADDITIVITY_TOLERANCE {
                return Err(Error::ConsistencyViolation {
                    quantity: "total - population - coherence",
                    value: gap,
                });
            }
        }

        Ok(Self {
            total: floor_extended(total, "total production")?,
            population: floor_extended(population, "population production")?,
            coherence: floor(coherence, "coherence production")?,
        })
    }
}

/// Applies `ch` to `initial` and splits the resulting entropy production. The
/// reference is always the channel's own equilibrium state.
pub fn budget(initial: &QubitState, ch: &GadChannel) -> Result<EntropyBudget> {
    let final_state = ch.apply(initial);
    EntropyBudget::from_states(initial, &final_state, &ch.equilibrium_state())
}
