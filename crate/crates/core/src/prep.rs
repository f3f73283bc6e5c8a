//! Wave-plate state preparation and the closed-form evolved state.
//!
//! A half-wave plate at angle `alpha` followed by the fixed `pi/8` plate
//! yields a state with equal populations and real coherence
//! `cos(4 alpha) / 2`. Setting `dephased` models the long-path-difference
//! preparation in which that coherence is destroyed.

use std::f64::consts::FRAC_PI_4;

use crate::channel::GadChannel;
use crate::error::{Error, Result};
use crate::qstate::{real_mat, QubitState};

const ANGLE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepSetting {
    alpha: f64,
    dephased: bool,
}

impl PrepSetting {
    pub fn new(alpha: f64, dephased: bool) -> Result<Self> {
        if !(-ANGLE_SLACK..=FRAC_PI_4 + ANGLE_SLACK).contains(&alpha) {
            return Err(Error::AngleOutOfRange { alpha });
        }
        Ok(Self {
            alpha: alpha.clamp(0.0, FRAC_PI_4),
            dephased,
        })
    }

    pub fn from_degrees(alpha_deg: f64, dephased: bool) -> Result<Self> {
        Self::new(alpha_deg.to_radians(), dephased)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dephased(&self) -> bool {
        self.dephased
    }

    /// The same angle with the coherence removed.
    pub fn as_dephased(&self) -> Self {
        Self {
            alpha: self.alpha,
            dephased: true,
        }
    }

    fn off_diagonal(&self) -> f64 {
        if self.dephased {
            0.0
        } else {
            0.5 * (4.0 * self.alpha).cos()
        }
    }

    pub fn prepare(&self) -> QubitState {
        let c = self.off_diagonal();
        QubitState::assume_valid(real_mat(0.5, c, c, 0.5))
    }

    /// The prepared state after the GAD channel, written out entrywise:
    /// `p_g = p r + (1 - r)/2`, `p_e = (1 + r)/2 - p r`,
    /// `p_c = cos(4 alpha) sqrt(1 - r) / 2`.
    pub fn evolved_closed_form(&self, ch: &GadChannel) -> QubitState {
        let (p, r) = (ch.p(), ch.r());
        let ground = p * r + (1.0 - r) / 2.0;
        let excited = (1.0 + r) / 2.0 - p * r;
        let c = self.off_diagonal() * (1.0 - r).sqrt();
        QubitState::assume_valid(real_mat(ground, c, c, excited))
    }
}

/// HWP1 angle giving l1 coherence `c`: `arccos(c) / 4`.
pub fn alpha_for_coherence(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::CoherenceOutOfRange { value: c });
    }
    Ok(c.acos() / 4.0)
}

/// SLI1 half-wave plate angle realizing `p = cos^2(2 theta)`.
pub fn hwp_theta_for_p(p: f64) -> Result<f64> {
    if !(0.5..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            range: "[0.5, 1]",
        });
    }
    Ok(p.sqrt().acos() / 2.0)
}

/// SLI2/SLI3 half-wave plate angle realizing `r = sin^2(2 phi)`.
pub fn hwp_phi_for_r(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r,
            range: "[0, 1]",
        });
    }
    Ok(r.sqrt().asin() / 2.0)
}
