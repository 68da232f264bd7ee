//! Physical constants shared by every calculation in the crate.

use serde::Serialize;

use crate::error::{Error, Result};

/// Electron and photon constants, in MeV and metres.
///
/// Every routine takes a reference to one of these rather than reading
/// literals, so a run can be repeated with perturbed constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// m0 c^2 in MeV.
    pub electron_rest_energy: f64,
    /// r_e in metres.
    pub classical_electron_radius: f64,
    /// h c in MeV m.
    pub planck_hc: f64,
}

impl PhysicalConstants {
    /// CODATA 2014 values.
    pub const CODATA_2014: PhysicalConstants = PhysicalConstants {
        electron_rest_energy: 0.510_998_946_1,
        classical_electron_radius: 2.817_940_322_7e-15,
        planck_hc: 1.239_841_973_9e-12,
    };

    /// Checks the constants against the accepted physical ranges.
    pub fn validate(&self) -> Result<()> {
        let m = self.electron_rest_energy;
        if !(m > 0.5109 && m < 0.5111) {
            return Err(Error::Domain {
                param: "electron_rest_energy",
                value: m,
                reason: "must lie in (0.5109, 0.5111) MeV",
            });
        }
        let r = self.classical_electron_radius;
        if !(r > 2.817e-15 && r < 2.819e-15) {
            return Err(Error::Domain {
                param: "classical_electron_radius",
                value: r,
                reason: "must lie in (2.817e-15, 2.819e-15) m",
            });
        }
        if !(self.planck_hc.is_finite() && self.planck_hc > 0.0) {
            return Err(Error::Domain {
                param: "planck_hc",
                value: self.planck_hc,
                reason: "must be positive",
            });
        }
        Ok(())
    }

    /// r_e^2 in m^2.
    pub fn re_squared_m2(&self) -> f64 {
        self.classical_electron_radius * self.classical_electron_radius
    }

    /// r_e^2 in barns (1 b = 1e-28 m^2).
    pub fn re_squared_barn(&self) -> f64 {
        self.re_squared_m2() * 1e28
    }

    /// Compton wavelength h/(m0 c) in metres.
    pub fn compton_wavelength(&self) -> f64 {
        self.planck_hc / self.electron_rest_energy
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2014
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_values_validate() {
        PhysicalConstants::CODATA_2014.validate().unwrap();
        let r2 = PhysicalConstants::CODATA_2014.re_squared_m2();
        assert!((r2 - 7.940_787_7e-30).abs() < 1e-37);
    }

    #[test]
    fn out_of_range_rest_energy_rejected() {
        let c = PhysicalConstants {
            electron_rest_energy: 0.52,
            ..PhysicalConstants::CODATA_2014
        };
        assert!(c.validate().is_err());
    }
}
