//! Per-energy normalizations of the cross section and of the recoil
//! kinematics onto the unit interval, and the amplitude table built from
//! their reference values.
//!
//! Each curve is normalized against a reference angle. Kinematic curves
//! that are compared with the cross section are referenced to
//! backscatter (`pi`). The amplitude table instead uses `pi*`: `pi` from
//! 1 MeV upward and the angle of the cross-section minimum below it.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::cross_section::{kn_minimum, kn_unchecked, KnMinimum, KnVariant};
use crate::error::{Error, Result};
use crate::grid::AngleGrid;
use crate::kinematics::{check_angle, check_energy, electron_momentum, scattered_unchecked};

/// Energies at or above this use `pi` as the reference angle in the
/// amplitude table.
pub const BACKSCATTER_REFERENCE_ENERGY: f64 = 1.0;
/// Energy whose cross-section amplitude scales the global normalization.
pub const GLOBAL_REFERENCE_ENERGY: f64 = 1000.0;
const DEGENERATE: f64 = 1e-300;

/// Which variant's minimum fixes the reference angle and `KN_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimumRule {
    /// Each variant uses its own minimum.
    #[default]
    OwnVariant,
    /// The full cross section's minimum angle is used for both variants.
    FullVariant,
}

impl FromStr for MinimumRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "own" | "own-variant" => Ok(MinimumRule::OwnVariant),
            "full" | "full-variant" => Ok(MinimumRule::FullVariant),
            other => Err(format!(
                "unknown minimum rule `{other}` (expected own or full)"
            )),
        }
    }
}

impl fmt::Display for MinimumRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinimumRule::OwnVariant => "own",
            MinimumRule::FullVariant => "full",
        })
    }
}

/// Reference angle for the kinematic normalizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// Always `pi`.
    #[default]
    Backscatter,
    /// `pi*` (see [`reference_angle`]).
    KnMinimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    KnNorm,
    ScatteredEnergyNorm,
    ElectronMomentumNorm,
    ElectronKineticNorm,
    KnGlobalNorm,
    ScatterFraction,
    MomentumScaledNorm,
    EnergyTransferFraction,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::KnNorm => "kn_norm",
            Quantity::ScatteredEnergyNorm => "scattered_energy_norm",
            Quantity::ElectronMomentumNorm => "electron_momentum_norm",
            Quantity::ElectronKineticNorm => "electron_kinetic_norm",
            Quantity::KnGlobalNorm => "kn_global_norm",
            Quantity::ScatterFraction => "scatter_fraction",
            Quantity::MomentumScaledNorm => "momentum_scaled_norm",
            Quantity::EnergyTransferFraction => "energy_transfer_fraction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub angle: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub energy: f64,
    pub quantity: Quantity,
    pub variant: KnVariant,
    pub samples: Vec<Sample>,
}

impl Curve {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.value)
    }
}

/// One row of the amplitude table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeRow {
    pub energy: f64,
    /// `(KN(0) - KN_min) / (KN(0) - KN_min)` at 1000 MeV.
    pub kn_amplitude: f64,
    /// `(hnu'(0) - hnu'(pi*)) / hnu`
    pub scatter_drop: f64,
    /// `(hnu/c) / p_e'(pi*)`
    pub momentum_ratio: f64,
    /// `K_e'(pi*) / hnu`
    pub transfer_fraction: f64,
}

/// `pi*`: `pi` from 1 MeV upward, otherwise the angle of the
/// cross-section minimum of `variant`.
pub fn reference_angle(consts: &PhysicalConstants, hnu: f64, variant: KnVariant) -> Result<f64> {
    reference_angle_with(consts, hnu, variant, MinimumRule::OwnVariant)
}

pub fn reference_angle_with(
    consts: &PhysicalConstants,
    hnu: f64,
    variant: KnVariant,
    rule: MinimumRule,
) -> Result<f64> {
    let hnu = check_energy(hnu)?;
    if hnu >= BACKSCATTER_REFERENCE_ENERGY {
        Ok(PI)
    } else {
        Ok(locate_minimum(consts, hnu, variant, rule)?.angle)
    }
}

fn locate_minimum(
    consts: &PhysicalConstants,
    hnu: f64,
    variant: KnVariant,
    rule: MinimumRule,
) -> Result<KnMinimum> {
    match (rule, variant) {
        (MinimumRule::FullVariant, KnVariant::NoInterference) => {
            let full = kn_minimum(consts, hnu, KnVariant::Full)?;
            Ok(KnMinimum {
                angle: full.angle,
                value: kn_unchecked(consts, hnu, full.angle, variant),
                energy: hnu,
                variant,
            })
        }
        _ => kn_minimum(consts, hnu, variant),
    }
}

fn guard(denominator: f64, what: &'static str, energy: f64) -> Result<f64> {
    if denominator.abs() < DEGENERATE || !denominator.is_finite() {
        Err(Error::Degenerate { what, energy })
    } else {
        Ok(denominator)
    }
}

/// Reference values for one energy, from which every normalized curve
/// is evaluated pointwise.
#[derive(Debug, Clone, Copy)]
pub struct EnergyFrame {
    consts: PhysicalConstants,
    pub energy: f64,
    pub variant: KnVariant,
    pub minimum: KnMinimum,
    pub reference_angle: f64,
    kn_span: f64,
    // sin^2(ref/2), so that (1 - cos phi)/(1 - cos ref) is energy free
    half_sin2_ref: f64,
    shift_ref: f64,
    momentum_ref: f64,
}

impl EnergyFrame {
    pub fn new(
        consts: &PhysicalConstants,
        hnu: f64,
        variant: KnVariant,
        rule: MinimumRule,
        reference: Reference,
    ) -> Result<Self> {
        let hnu = check_energy(hnu)?;
        let minimum = locate_minimum(consts, hnu, variant, rule)?;
        let reference_angle = match reference {
            Reference::Backscatter => PI,
            Reference::KnMinimum if hnu >= BACKSCATTER_REFERENCE_ENERGY => PI,
            Reference::KnMinimum => minimum.angle,
        };
        let kn_span = guard(1.0 - minimum.value, "cross section", hnu)?;
        let h = (0.5 * reference_angle).sin();
        let half_sin2_ref = guard(h * h, "reference angle", hnu)?;
        let shift_ref = 2.0 * hnu / consts.electron_rest_energy * half_sin2_ref;
        let momentum_ref = guard(
            electron_momentum(consts, hnu, reference_angle)?,
            "electron momentum",
            hnu,
        )?;
        Ok(Self {
            consts: *consts,
            energy: hnu,
            variant,
            minimum,
            reference_angle,
            kn_span,
            half_sin2_ref,
            shift_ref,
            momentum_ref,
        })
    }

    /// Raw cross section in r_e^2 per steradian.
    pub fn kn(&self, phi: f64) -> f64 {
        kn_unchecked(&self.consts, self.energy, phi, self.variant)
    }

    /// `(KN(phi) - KN_min) / (KN(0) - KN_min)`; `KN(0)` is exactly 1.
    pub fn kn_norm(&self, phi: f64) -> f64 {
        (self.kn(phi) - self.minimum.value) / self.kn_span
    }

    /// `KN(0) - KN_min`, the unnormalized amplitude.
    pub fn kn_span(&self) -> f64 {
        self.kn_span
    }

    fn ratio_to_ref(&self, phi: f64) -> f64 {
        let h = (0.5 * phi).sin();
        h * h / self.half_sin2_ref
    }

    fn shift(&self, phi: f64) -> f64 {
        self.shift_ref * self.ratio_to_ref(phi)
    }

    /// `(hnu'(phi) - hnu'(ref)) / (hnu'(0) - hnu'(ref))`
    pub fn scattered_norm(&self, phi: f64) -> f64 {
        (1.0 - self.ratio_to_ref(phi)) / (1.0 + self.shift(phi))
    }

    /// `K_e'(phi) / K_e'(ref)`
    pub fn kinetic_norm(&self, phi: f64) -> f64 {
        self.ratio_to_ref(phi) * (1.0 + self.shift_ref) / (1.0 + self.shift(phi))
    }

    /// `p_e'(phi) / p_e'(ref)`
    pub fn momentum_norm(&self, phi: f64) -> f64 {
        // angles reaching this point are already validated
        electron_momentum(&self.consts, self.energy, phi).unwrap_or(f64::NAN) / self.momentum_ref
    }

    /// `(hnu/c) / p_e'(ref)`
    pub fn photon_to_electron_momentum(&self) -> f64 {
        self.energy / self.momentum_ref
    }

    /// `hnu'(phi) / hnu`
    pub fn scatter_fraction(&self, phi: f64) -> f64 {
        scattered_unchecked(&self.consts, self.energy, phi) / self.energy
    }

    /// `K_e'(phi) / hnu`
    pub fn transfer_fraction(&self, phi: f64) -> f64 {
        let x = self.shift(phi);
        x / (1.0 + x)
    }
}

/// Builds normalized curves for one variant and one set of reference
/// conventions.
#[derive(Debug, Clone, Copy)]
pub struct Normalizer<'a> {
    consts: &'a PhysicalConstants,
    variant: KnVariant,
    rule: MinimumRule,
    reference: Reference,
}

impl<'a> Normalizer<'a> {
    pub fn new(consts: &'a PhysicalConstants, variant: KnVariant) -> Self {
        Self {
            consts,
            variant,
            rule: MinimumRule::default(),
            reference: Reference::default(),
        }
    }

    pub fn with_minimum_rule(mut self, rule: MinimumRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_reference(mut self, reference: Reference) -> Self {
        self.reference = reference;
        self
    }

    pub fn variant(&self) -> KnVariant {
        self.variant
    }

    pub fn frame(&self, hnu: f64) -> Result<EnergyFrame> {
        EnergyFrame::new(self.consts, hnu, self.variant, self.rule, self.reference)
    }

    fn curve<F: Fn(&EnergyFrame, f64) -> f64>(
        &self,
        hnu: f64,
        grid: &AngleGrid,
        quantity: Quantity,
        eval: F,
    ) -> Result<Curve> {
        let frame = self.frame(hnu)?;
        let samples = grid
            .angles()
            .iter()
            .map(|&phi| {
                let phi = check_angle(phi)?;
                Ok(Sample {
                    angle: phi,
                    value: eval(&frame, phi),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Curve {
            energy: frame.energy,
            quantity,
            variant: self.variant,
            samples,
        })
    }

    pub fn kn_normalized(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(hnu, grid, Quantity::KnNorm, EnergyFrame::kn_norm)
    }

    /// Cross section normalized by the 1000 MeV amplitude of the same
    /// variant.
    pub fn kn_global_normalized(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        let global = self.frame(GLOBAL_REFERENCE_ENERGY)?.kn_span();
        self.curve(hnu, grid, Quantity::KnGlobalNorm, |f, phi| {
            (f.kn(phi) - f.minimum.value) / global
        })
    }

    pub fn scattered_energy_normalized(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(
            hnu,
            grid,
            Quantity::ScatteredEnergyNorm,
            EnergyFrame::scattered_norm,
        )
    }

    pub fn electron_momentum_normalized(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(
            hnu,
            grid,
            Quantity::ElectronMomentumNorm,
            EnergyFrame::momentum_norm,
        )
    }

    /// `p_e'(phi)/p_e'(ref)` multiplied by `(hnu/c)/p_e'(ref)`.
    pub fn electron_momentum_scaled(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(hnu, grid, Quantity::MomentumScaledNorm, |f, phi| {
            f.momentum_norm(phi) * f.photon_to_electron_momentum()
        })
    }

    pub fn electron_kinetic_normalized(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(
            hnu,
            grid,
            Quantity::ElectronKineticNorm,
            EnergyFrame::kinetic_norm,
        )
    }

    pub fn energy_transfer_fraction(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(
            hnu,
            grid,
            Quantity::EnergyTransferFraction,
            EnergyFrame::transfer_fraction,
        )
    }

    pub fn scatter_fraction(&self, hnu: f64, grid: &AngleGrid) -> Result<Curve> {
        self.curve(
            hnu,
            grid,
            Quantity::ScatterFraction,
            EnergyFrame::scatter_fraction,
        )
    }
}

/// Amplitude of every normalized quantity at each energy, always
/// referenced to `pi*`.
pub fn amplitude_table(
    consts: &PhysicalConstants,
    energies: &[f64],
    variant: KnVariant,
    rule: MinimumRule,
) -> Result<Vec<AmplitudeRow>> {
    let global = EnergyFrame::new(
        consts,
        GLOBAL_REFERENCE_ENERGY,
        variant,
        rule,
        Reference::KnMinimum,
    )?
    .kn_span();
    energies
        .par_iter()
        .map(|&hnu| {
            let frame = EnergyFrame::new(consts, hnu, variant, rule, Reference::KnMinimum)?;
            let scattered = scattered_unchecked(consts, frame.energy, frame.reference_angle);
            // hnu'(0) = hnu, and K_e' = hnu - hnu' from the same call
            let kinetic = frame.energy - scattered;
            Ok(AmplitudeRow {
                energy: frame.energy,
                kn_amplitude: frame.kn_span() / global,
                scatter_drop: (frame.energy - scattered) / frame.energy,
                momentum_ratio: frame.photon_to_electron_momentum(),
                transfer_fraction: kinetic / frame.energy,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const C: PhysicalConstants = PhysicalConstants::CODATA_2014;

    #[test]
    fn reference_angle_rule() {
        assert_eq!(reference_angle(&C, 1000.0, KnVariant::Full).unwrap(), PI);
        assert_eq!(reference_angle(&C, 1.0, KnVariant::Full).unwrap(), PI);
        let low = reference_angle(&C, 1e-5, KnVariant::Full).unwrap();
        assert!((low - FRAC_PI_2).abs() < 1e-3);
        let mid = reference_angle(&C, 0.5, KnVariant::Full).unwrap();
        assert!(mid > FRAC_PI_2 && mid <= PI);
        assert_eq!(
            reference_angle(&C, 0.01, KnVariant::NoInterference).unwrap(),
            PI
        );
    }

    #[test]
    fn kn_curve_starts_near_one() {
        let g = AngleGrid::midpoints(2000).unwrap();
        let c = Normalizer::new(&C, KnVariant::Full)
            .kn_normalized(1e-5, &g)
            .unwrap();
        let first = c.samples[0].value;
        assert!(first > 1.0 - 1e-4 && first <= 1.0, "{first}");
    }

    #[test]
    fn thomson_limit_shape() {
        // (KN - min)/(max - min) -> cos^2 as the energy vanishes
        let g = AngleGrid::inclusive(721).unwrap();
        let c = Normalizer::new(&C, KnVariant::Full)
            .kn_normalized(1e-5, &g)
            .unwrap();
        for s in &c.samples {
            assert!((s.value - s.angle.cos().powi(2)).abs() < 1e-3);
        }
    }

    #[test]
    fn scattered_energy_right_angle_at_one_mev() {
        let m = C.electron_rest_energy;
        let s_half = 1.0 / (1.0 + 1.0 / m);
        let s_pi = 1.0 / (1.0 + 2.0 / m);
        let oracle = (s_half - s_pi) / (1.0 - s_pi);
        let f = Normalizer::new(&C, KnVariant::Full).frame(1.0).unwrap();
        let v = f.scattered_norm(FRAC_PI_2);
        assert!((v - oracle).abs() < 1e-14);
        assert!((v - 0.16908).abs() < 5e-5, "{v}");
    }

    #[test]
    fn momentum_scaled_at_backscatter() {
        let g = AngleGrid::inclusive(3).unwrap();
        let c = Normalizer::new(&C, KnVariant::Full)
            .electron_momentum_scaled(1.0, &g)
            .unwrap();
        assert!((c.samples[2].value - 0.8309).abs() < 5e-5);
        assert_eq!(c.samples[0].value, 0.0);
    }

    #[test]
    fn transfer_fraction_examples() {
        let n = Normalizer::new(&C, KnVariant::Full).with_reference(Reference::KnMinimum);
        let f = n.frame(1.0).unwrap();
        assert!((f.transfer_fraction(PI) - 0.7965).abs() < 5e-5);
        let f = n.frame(0.01).unwrap();
        let v = f.transfer_fraction(f.reference_angle);
        assert!((v - 0.0195).abs() < 5e-5, "{v}");
        assert_eq!(f.transfer_fraction(0.0), 0.0);
    }

    #[test]
    fn global_normalization_amplitudes() {
        let g = AngleGrid::inclusive(2).unwrap();
        let n = Normalizer::new(&C, KnVariant::Full);
        for (e, want) in [(1000.0, 1.0), (1.0, 0.8941), (0.1, 0.6457)] {
            let c = n.kn_global_normalized(e, &g).unwrap();
            assert!((c.samples[0].value - want).abs() < 5e-5, "{e}");
        }
    }

    #[test]
    fn full_variant_rule_for_no_interference() {
        let own = EnergyFrame::new(
            &C,
            0.1,
            KnVariant::NoInterference,
            MinimumRule::OwnVariant,
            Reference::KnMinimum,
        )
        .unwrap();
        let full = EnergyFrame::new(
            &C,
            0.1,
            KnVariant::NoInterference,
            MinimumRule::FullVariant,
            Reference::KnMinimum,
        )
        .unwrap();
        assert_eq!(own.reference_angle, PI);
        assert!(full.reference_angle < PI);
        assert!(full.minimum.value > own.minimum.value);
    }

    #[test]
    fn amplitude_columns_identical() {
        let rows = amplitude_table(
            &C,
            &[1e-5, 0.01, 0.5, 1.0, 1000.0],
            KnVariant::Full,
            MinimumRule::OwnVariant,
        )
        .unwrap();
        for r in &rows {
            assert_eq!(r.scatter_drop.to_bits(), r.transfer_fraction.to_bits());
        }
        assert_eq!(rows[4].kn_amplitude, 1.0);
    }

    #[test]
    fn parse_rule() {
        assert_eq!(
            "own".parse::<MinimumRule>().unwrap(),
            MinimumRule::OwnVariant
        );
        assert_eq!(
            "full".parse::<MinimumRule>().unwrap(),
            MinimumRule::FullVariant
        );
        assert!("x".parse::<MinimumRule>().is_err());
    }
}
