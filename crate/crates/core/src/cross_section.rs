//! Klein-Nishina differential and total cross sections for an unpolarized
//! photon on a free electron at rest.
//!
//! Values are dimensionless multiples of r_e^2 (per steradian for the
//! differential form). Multiply by [`PhysicalConstants::re_squared_barn`]
//! for barns.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::kinematics::{check_angle, check_energy, scattered_unchecked};
use crate::minimize::scan_then_refine;
use crate::quadrature::AdaptiveSimpson;

/// Points in the coarse scan preceding golden-section refinement.
pub const MINIMUM_SCAN_POINTS: usize = 10_000;
/// Bracket width at which the refinement stops, in radians.
pub const MINIMUM_ANGLE_TOL: f64 = 1e-10;

/// Which form of the cross section to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnVariant {
    /// The complete unpolarized expression.
    Full,
    /// The `sin^2(phi)` term removed from the bracket.
    NoInterference,
}

impl KnVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            KnVariant::Full => "full",
            KnVariant::NoInterference => "no-sin2",
        }
    }
}

impl fmt::Display for KnVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KnVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full" => Ok(KnVariant::Full),
            "no-sin2" | "no-interference" => Ok(KnVariant::NoInterference),
            other => Err(format!(
                "unknown variant `{other}` (expected full or no-sin2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnValue {
    pub value: f64,
    pub energy: f64,
    pub angle: f64,
    pub variant: KnVariant,
}

impl KnValue {
    pub fn evaluate(
        consts: &PhysicalConstants,
        hnu: f64,
        phi: f64,
        variant: KnVariant,
    ) -> Result<Self> {
        Ok(Self {
            value: kn_differential(consts, hnu, phi, variant)?,
            energy: hnu,
            angle: phi,
            variant,
        })
    }

    /// The same value in barns per steradian.
    pub fn barn_per_sr(&self, consts: &PhysicalConstants) -> f64 {
        self.value * consts.re_squared_barn()
    }
}

/// Location and depth of the angular minimum of the cross section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnMinimum {
    pub angle: f64,
    pub value: f64,
    pub energy: f64,
    pub variant: KnVariant,
}

#[inline]
pub(crate) fn kn_unchecked(
    consts: &PhysicalConstants,
    hnu: f64,
    phi: f64,
    variant: KnVariant,
) -> f64 {
    let ratio = scattered_unchecked(consts, hnu, phi) / hnu;
    let sin2 = match variant {
        KnVariant::Full => {
            let s = phi.sin();
            s * s
        }
        KnVariant::NoInterference => 0.0,
    };
    0.5 * ratio * ratio * (ratio + 1.0 / ratio - sin2)
}

/// `dσ/dΩ` in units of r_e^2 per steradian.
pub fn kn_differential(
    consts: &PhysicalConstants,
    hnu: f64,
    phi: f64,
    variant: KnVariant,
) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let phi = check_angle(phi)?;
    Ok(kn_unchecked(consts, hnu, phi, variant))
}

/// Global minimum of `dσ/dΩ` over `[0, pi]` for a fixed energy.
pub fn kn_minimum(consts: &PhysicalConstants, hnu: f64, variant: KnVariant) -> Result<KnMinimum> {
    let hnu = check_energy(hnu)?;
    let m = scan_then_refine(
        |phi| kn_unchecked(consts, hnu, phi, variant),
        0.0,
        PI,
        MINIMUM_SCAN_POINTS,
        MINIMUM_ANGLE_TOL,
    );
    Ok(KnMinimum {
        angle: m.x,
        value: m.value,
        energy: hnu,
        variant,
    })
}

/// Total cross section `2 pi ∫ (dσ/dΩ) sin(phi) dphi` in units of r_e^2.
pub fn kn_total_cross_section(consts: &PhysicalConstants, hnu: f64) -> Result<f64> {
    kn_total_with(consts, hnu, &AdaptiveSimpson::default())
}

pub fn kn_total_with(consts: &PhysicalConstants, hnu: f64, quad: &AdaptiveSimpson) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    let integral = quad.integrate(
        |phi| kn_unchecked(consts, hnu, phi, KnVariant::Full) * phi.sin(),
        0.0,
        PI,
    )?;
    Ok(2.0 * PI * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const C: PhysicalConstants = PhysicalConstants::CODATA_2014;

    #[test]
    fn forward_value_is_thomson() {
        for hnu in [1e-7, 1e-3, 0.5, 1.0, 77.0, 1000.0] {
            for v in [KnVariant::Full, KnVariant::NoInterference] {
                assert_eq!(kn_differential(&C, hnu, 0.0, v).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn backscatter_at_one_mev() {
        // r = hnu'/hnu at pi, then 0.5 r^2 (r + 1/r)
        let r = 1.0 / (1.0 + 2.0 / C.electron_rest_energy);
        let oracle = 0.5 * r * r * (r + 1.0 / r);
        let v = kn_differential(&C, 1.0, PI, KnVariant::Full).unwrap();
        assert!((v - oracle).abs() < 1e-15);
        assert!((v - 0.10597).abs() < 5e-6, "{v}");
    }

    #[test]
    fn thomson_right_angle() {
        let v = kn_differential(&C, 1e-5, FRAC_PI_2, KnVariant::Full).unwrap();
        assert!(((v - 0.5) / 0.5).abs() < 1e-4);
    }

    #[test]
    fn full_never_exceeds_no_interference() {
        for i in 0..=200 {
            let phi = PI * i as f64 / 200.0;
            for hnu in [1e-4, 0.2, 3.0, 900.0] {
                let full = kn_differential(&C, hnu, phi, KnVariant::Full).unwrap();
                let ni = kn_differential(&C, hnu, phi, KnVariant::NoInterference).unwrap();
                assert!(full <= ni);
                assert!(full > 0.0 && full <= 1.0);
            }
        }
    }

    #[test]
    fn minimum_locations() {
        let low = kn_minimum(&C, 1e-5, KnVariant::Full).unwrap();
        assert!((low.angle - FRAC_PI_2).abs() < 1e-3, "{}", low.angle);
        let high = kn_minimum(&C, 1000.0, KnVariant::Full).unwrap();
        assert!((high.angle - PI).abs() < 1e-6);
        for hnu in [1e-5, 0.01, 0.5, 20.0] {
            let m = kn_minimum(&C, hnu, KnVariant::NoInterference).unwrap();
            assert_eq!(m.angle, PI);
        }
    }

    #[test]
    fn minimum_migrates_towards_pi() {
        let mut last = 0.0;
        for hnu in [1e-5, 1e-3, 0.01, 0.1, 0.3, 0.5] {
            let a = kn_minimum(&C, hnu, KnVariant::Full).unwrap().angle;
            assert!(a > last && a > FRAC_PI_2 && a < PI);
            last = a;
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("full".parse::<KnVariant>().unwrap(), KnVariant::Full);
        assert_eq!(
            "no-sin2".parse::<KnVariant>().unwrap(),
            KnVariant::NoInterference
        );
        assert!("partial".parse::<KnVariant>().is_err());
    }

    #[test]
    fn total_thomson_limit() {
        let s = kn_total_cross_section(&C, 1e-6).unwrap();
        let thomson = 8.0 * PI / 3.0;
        assert!(((s - thomson) / thomson).abs() < 1e-3);
        let b = s * C.re_squared_barn();
        assert!((b - 0.66525).abs() < 1e-3);
    }

    #[test]
    fn total_decreases() {
        let s: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&e| kn_total_cross_section(&C, e).unwrap())
            .collect();
        assert!(s[0] > s[1] && s[1] > s[2]);
    }
}
