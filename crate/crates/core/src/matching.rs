//! Difference and sum curves comparing the normalized cross section with
//! the normalized kinematics, and the Pearson chi-square statistics that
//! score them.

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::cross_section::KnVariant;
use crate::error::{Error, Result};
use crate::grid::AngleGrid;
use crate::normalization::{AmplitudeRow, MinimumRule, Normalizer, Reference, Sample};

/// Critical value for 1999 degrees of freedom at probability 0.9999.
pub const CRITICAL_DOF_1999: f64 = 1740.7049;
/// Critical value for 7 degrees of freedom at probability 0.9999.
pub const CRITICAL_DOF_7: f64 = 0.1528;
/// Smallest energy included in the amplitude chi-square.
pub const AMPLITUDE_CHI2_MIN_ENERGY: f64 = 1.0;

/// Tabulated critical values; no quantile function is evaluated.
pub fn critical_value(dof: usize) -> Option<f64> {
    match dof {
        1999 => Some(CRITICAL_DOF_1999),
        7 => Some(CRITICAL_DOF_7),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    /// `KN_norm - hnu'_norm`, ideally 0.
    DiffScatteredEnergy,
    /// `KN_norm + p_e'_norm`, ideally 1.
    SumMomentum,
    /// `KN_norm + K_e'_norm`, ideally 1.
    SumKinetic,
}

impl MatchKind {
    pub const ALL: [MatchKind; 3] = [
        MatchKind::DiffScatteredEnergy,
        MatchKind::SumMomentum,
        MatchKind::SumKinetic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatchKind::DiffScatteredEnergy => "diff_scattered_energy",
            MatchKind::SumMomentum => "sum_momentum",
            MatchKind::SumKinetic => "sum_kinetic",
        }
    }

    /// The value a perfect match would take at every angle.
    pub fn target(self) -> f64 {
        match self {
            MatchKind::DiffScatteredEnergy => 0.0,
            MatchKind::SumMomentum | MatchKind::SumKinetic => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchCurve {
    pub energy: f64,
    pub kind: MatchKind,
    pub variant: KnVariant,
    pub samples: Vec<Sample>,
}

impl MatchCurve {
    pub fn max_deviation(&self) -> f64 {
        let t = self.kind.target();
        self.samples
            .iter()
            .map(|s| (s.value - t).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquareReport {
    pub chi2: f64,
    pub dof: usize,
    pub critical_value: Option<f64>,
    pub below_critical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<f64>>,
}

/// `sum (O - E)^2 / E` with `n - 1` degrees of freedom.
pub fn pearson_chi_square(
    observed: &[f64],
    expected: &[f64],
    critical: Option<f64>,
    keep_terms: bool,
) -> Result<ChiSquareReport> {
    if observed.len() != expected.len() {
        return Err(Error::ChiSquare(format!(
            "observed has {} values, expected has {}",
            observed.len(),
            expected.len()
        )));
    }
    if observed.len() < 2 {
        return Err(Error::ChiSquare("need at least two values".into()));
    }
    if let Some((i, e)) = expected
        .iter()
        .enumerate()
        .find(|(_, e)| !(e.is_finite() && **e > 0.0))
    {
        return Err(Error::ChiSquare(format!(
            "expected[{i}] = {e} is not strictly positive"
        )));
    }
    let terms: Vec<f64> = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| {
            let d = o - e;
            d * d / e
        })
        .collect();
    let chi2: f64 = terms.iter().sum();
    Ok(ChiSquareReport {
        chi2,
        dof: observed.len() - 1,
        critical_value: critical,
        below_critical: critical.map(|c| chi2 < c),
        terms: keep_terms.then_some(terms),
    })
}

/// Matching curves are normalized against backscatter.
fn matching_normalizer(
    consts: &PhysicalConstants,
    variant: KnVariant,
    rule: MinimumRule,
) -> Normalizer<'_> {
    Normalizer::new(consts, variant)
        .with_minimum_rule(rule)
        .with_reference(Reference::Backscatter)
}

pub fn match_curve(
    consts: &PhysicalConstants,
    hnu: f64,
    grid: &AngleGrid,
    kind: MatchKind,
    variant: KnVariant,
    rule: MinimumRule,
) -> Result<MatchCurve> {
    let frame = matching_normalizer(consts, variant, rule).frame(hnu)?;
    let samples = grid
        .angles()
        .iter()
        .map(|&phi| {
            let kn = frame.kn_norm(phi);
            let value = match kind {
                MatchKind::DiffScatteredEnergy => kn - frame.scattered_norm(phi),
                MatchKind::SumMomentum => kn + frame.momentum_norm(phi),
                MatchKind::SumKinetic => kn + frame.kinetic_norm(phi),
            };
            Sample { angle: phi, value }
        })
        .collect();
    Ok(MatchCurve {
        energy: frame.energy,
        kind,
        variant,
        samples,
    })
}

/// The three chi-squares for one energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub energy: f64,
    /// Difference curve offset onto a unit baseline, against 1.
    pub scattered: ChiSquareReport,
    /// Momentum sum curve against 1.
    pub momentum: ChiSquareReport,
    /// Kinetic sum curve against 1.
    pub kinetic: ChiSquareReport,
}

impl SweepRow {
    pub fn columns(&self) -> [f64; 3] {
        [self.scattered.chi2, self.momentum.chi2, self.kinetic.chi2]
    }
}

/// Scores one match curve against its ideal value. Curves are shifted so
/// that the ideal is 1, which keeps every expected value positive.
pub fn score_curve(curve: &MatchCurve, keep_terms: bool) -> Result<ChiSquareReport> {
    let offset = 1.0 - curve.kind.target();
    let observed: Vec<f64> = curve.samples.iter().map(|s| s.value + offset).collect();
    let expected = vec![1.0; observed.len()];
    pearson_chi_square(
        &observed,
        &expected,
        critical_value(observed.len() - 1),
        keep_terms,
    )
}

pub fn chi2_sweep(
    consts: &PhysicalConstants,
    energies: &[f64],
    grid: &AngleGrid,
    variant: KnVariant,
    rule: MinimumRule,
    keep_terms: bool,
) -> Result<Vec<SweepRow>> {
    energies
        .par_iter()
        .map(|&hnu| {
            let mut reports = MatchKind::ALL.iter().map(|&kind| {
                let curve = match_curve(consts, hnu, grid, kind, variant, rule)?;
                score_curve(&curve, keep_terms)
            });
            let (Some(a), Some(b), Some(c)) = (reports.next(), reports.next(), reports.next())
            else {
                unreachable!("three match kinds");
            };
            Ok(SweepRow {
                energy: hnu,
                scattered: a?,
                momentum: b?,
                kinetic: c?,
            })
        })
        .collect()
}

/// The two amplitude chi-squares over the rows from 1 MeV upward.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeChi2 {
    /// Transfer fraction observed against the cross-section amplitude.
    pub transfer: ChiSquareReport,
    /// Momentum ratio observed against the cross-section amplitude.
    pub momentum: ChiSquareReport,
}

pub fn amplitude_chi2(rows: &[AmplitudeRow]) -> Result<AmplitudeChi2> {
    if rows.len() != 8 {
        return Err(Error::ChiSquare(format!(
            "amplitude chi-square needs the 8 rows from 1 MeV upward, got {}",
            rows.len()
        )));
    }
    if rows.iter().any(|r| r.energy < AMPLITUDE_CHI2_MIN_ENERGY) {
        return Err(Error::ChiSquare("row below 1 MeV".into()));
    }
    if !rows.windows(2).all(|w| w[0].energy < w[1].energy) {
        return Err(Error::ChiSquare("rows must be in ascending energy".into()));
    }
    let expected: Vec<f64> = rows.iter().map(|r| r.kn_amplitude).collect();
    let transfer: Vec<f64> = rows.iter().map(|r| r.transfer_fraction).collect();
    let momentum: Vec<f64> = rows.iter().map(|r| r.momentum_ratio).collect();
    let crit = critical_value(rows.len() - 1);
    Ok(AmplitudeChi2 {
        transfer: pearson_chi_square(&transfer, &expected, crit, false)?,
        momentum: pearson_chi_square(&momentum, &expected, crit, false)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const C: PhysicalConstants = PhysicalConstants::CODATA_2014;

    #[test]
    fn identical_series_score_zero() {
        let v = [0.3, 0.7, 1.2];
        let r = pearson_chi_square(&v, &v, None, true).unwrap();
        assert_eq!(r.chi2, 0.0);
        assert_eq!(r.dof, 2);
        assert_eq!(r.below_critical, None);
    }

    #[test]
    fn hand_evaluated_pair() {
        let r = pearson_chi_square(&[1.0, 2.0], &[2.0, 1.0], Some(2.0), true).unwrap();
        assert_eq!(r.chi2, 1.5);
        assert_eq!(r.terms.as_deref(), Some(&[0.5, 1.0][..]));
        assert_eq!(r.below_critical, Some(true));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(pearson_chi_square(&[1.0, 2.0], &[1.0, 0.0], None, false).is_err());
        assert!(pearson_chi_square(&[1.0, 2.0], &[1.0, -3.0], None, false).is_err());
        assert!(pearson_chi_square(&[1.0], &[1.0], None, false).is_err());
        assert!(pearson_chi_square(&[1.0, 2.0], &[1.0], None, false).is_err());
    }

    #[test]
    fn doubling_both_doubles_chi2() {
        let o = [0.4, 1.3, 2.2, 0.9];
        let e = [0.5, 1.0, 2.0, 1.1];
        let a = pearson_chi_square(&o, &e, None, false).unwrap().chi2;
        let o2: Vec<f64> = o.iter().map(|x| 2.0 * x).collect();
        let e2: Vec<f64> = e.iter().map(|x| 2.0 * x).collect();
        let b = pearson_chi_square(&o2, &e2, None, false).unwrap().chi2;
        assert!((b - 2.0 * a).abs() < 1e-15);
    }

    #[test]
    fn curve_endpoints() {
        let g = AngleGrid::inclusive(181).unwrap();
        for hnu in [1.0, 10.0, 1000.0] {
            let d = match_curve(
                &C,
                hnu,
                &g,
                MatchKind::DiffScatteredEnergy,
                KnVariant::Full,
                MinimumRule::OwnVariant,
            )
            .unwrap();
            assert_eq!(d.samples[0].value, 0.0);
            let k = match_curve(
                &C,
                hnu,
                &g,
                MatchKind::SumKinetic,
                KnVariant::Full,
                MinimumRule::OwnVariant,
            )
            .unwrap();
            let last = k.samples.last().unwrap();
            assert_eq!(last.angle, PI);
            assert_eq!(last.value, 1.0);
        }
    }

    #[test]
    fn amplitude_chi2_rejects_wrong_rows() {
        let row = AmplitudeRow {
            energy: 1.0,
            kn_amplitude: 0.9,
            scatter_drop: 0.8,
            momentum_ratio: 0.8,
            transfer_fraction: 0.8,
        };
        assert!(amplitude_chi2(&[row; 3]).is_err());
        assert!(amplitude_chi2(&[row; 8]).is_err()); // not ascending
    }
}
