//! Relativistic two-body kinematics of a photon scattering off a free
//! electron at rest.
//!
//! Energies are in MeV, momenta in MeV/c and angles in radians. The
//! `1 - cos(phi)` factor is always formed as `2 sin^2(phi/2)` so forward
//! angles keep full relative precision.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Slack allowed on the angle domain before an input is rejected.
pub const ANGLE_SLACK: f64 = 1e-12;

/// Relative threshold below which a negative momentum radicand is treated
/// as roundoff and clamped to zero.
pub const RADICAND_CLAMP: f64 = 1e-15;

/// Incident photon energy, strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct IncidentPhoton(f64);

impl IncidentPhoton {
    pub fn new(energy: f64) -> Result<Self> {
        check_energy(energy).map(Self)
    }

    pub fn energy(self) -> f64 {
        self.0
    }
}

/// Complete final state for one `(hnu, phi)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatterState {
    pub incident_energy: f64,
    pub angle: f64,
    pub scattered_energy: f64,
    pub electron_momentum: f64,
    pub electron_kinetic: f64,
    pub electron_total: f64,
}

impl ScatterState {
    pub fn new(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<Self> {
        let hnu = check_energy(hnu)?;
        let phi = check_angle(phi)?;
        let scattered = scattered_unchecked(consts, hnu, phi);
        let kinetic = kinetic_unchecked(consts, hnu, phi);
        Ok(Self {
            incident_energy: hnu,
            angle: phi,
            scattered_energy: scattered,
            electron_momentum: momentum_unchecked(hnu, scattered, phi)?,
            electron_kinetic: kinetic,
            electron_total: kinetic + consts.electron_rest_energy,
        })
    }
}

pub(crate) fn check_energy(hnu: f64) -> Result<f64> {
    if hnu.is_finite() && hnu > 0.0 {
        Ok(hnu)
    } else {
        Err(Error::Domain {
            param: "energy",
            value: hnu,
            reason: "photon energy must be positive and finite",
        })
    }
}

/// Validates an angle and clamps values within `ANGLE_SLACK` of the ends.
pub(crate) fn check_angle(phi: f64) -> Result<f64> {
    if phi.is_finite() && (-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&phi) {
        Ok(phi.clamp(0.0, PI))
    } else {
        Err(Error::Domain {
            param: "angle",
            value: phi,
            reason: "scattering angle must lie in [0, pi]",
        })
    }
}

#[inline]
fn one_minus_cos(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    2.0 * s * s
}

/// `(hnu / m0c^2)(1 - cos phi)`
#[inline]
fn shift(consts: &PhysicalConstants, hnu: f64, phi: f64) -> f64 {
    hnu / consts.electron_rest_energy * one_minus_cos(phi)
}

#[inline]
pub(crate) fn scattered_unchecked(consts: &PhysicalConstants, hnu: f64, phi: f64) -> f64 {
    hnu / (1.0 + shift(consts, hnu, phi))
}

#[inline]
pub(crate) fn kinetic_unchecked(consts: &PhysicalConstants, hnu: f64, phi: f64) -> f64 {
    // hnu - hnu' rearranged so that it does not cancel at small angles
    let x = shift(consts, hnu, phi);
    hnu * x / (1.0 + x)
}

fn momentum_unchecked(hnu: f64, scattered: f64, phi: f64) -> Result<f64> {
    // (hnu)^2 + (hnu')^2 - 2 hnu hnu' cos(phi), regrouped as a sum of squares
    let d = hnu - scattered;
    let radicand = d * d + 2.0 * hnu * scattered * one_minus_cos(phi);
    let scale = hnu * hnu + scattered * scattered;
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand > -RADICAND_CLAMP * scale {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { radicand })
    }
}

/// Scattered photon energy `hnu' = hnu / (1 + (hnu/m0c^2)(1 - cos phi))`.
pub fn scattered_photon_energy(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let phi = check_angle(phi)?;
    Ok(scattered_unchecked(consts, hnu, phi))
}

/// Recoil electron momentum in MeV/c, from momentum conservation.
pub fn electron_momentum(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let phi = check_angle(phi)?;
    momentum_unchecked(hnu, scattered_unchecked(consts, hnu, phi), phi)
}

/// Recoil electron kinetic energy `hnu - hnu'`.
pub fn electron_kinetic_energy(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let phi = check_angle(phi)?;
    Ok(kinetic_unchecked(consts, hnu, phi))
}

/// Recoil electron total energy `hnu - hnu' + m0c^2`.
pub fn electron_total_energy(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<f64> {
    Ok(electron_kinetic_energy(consts, hnu, phi)? + consts.electron_rest_energy)
}

/// Electron momentum from its kinetic energy, `pc = sqrt(K^2 + 2 K m0c^2)`.
pub fn momentum_from_kinetic(consts: &PhysicalConstants, kinetic: f64) -> Result<f64> {
    if !(kinetic.is_finite() && kinetic >= 0.0) {
        return Err(Error::Domain {
            param: "kinetic",
            value: kinetic,
            reason: "kinetic energy must be non-negative and finite",
        });
    }
    Ok((kinetic * (kinetic + 2.0 * consts.electron_rest_energy)).sqrt())
}

/// Compton wavelength shift `lambda' - lambda` in metres, formed as
/// `hc (hnu - hnu') / (hnu hnu')`.
pub fn wavelength_shift(consts: &PhysicalConstants, hnu: f64, phi: f64) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let phi = check_angle(phi)?;
    let scattered = scattered_unchecked(consts, hnu, phi);
    let kinetic = kinetic_unchecked(consts, hnu, phi);
    Ok(consts.planck_hc * kinetic / (hnu * scattered))
}
