//! Self-check suite run by the `verify` command.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cross_section::{kn_differential, kn_minimum, kn_total_cross_section, KnVariant};
use crate::grid::AngleGrid;
use crate::kinematics::{
    electron_kinetic_energy, electron_momentum, electron_total_energy, momentum_from_kinetic,
    scattered_photon_energy, wavelength_shift,
};
use crate::matching::chi2_sweep;
use crate::normalization::{amplitude_table, MinimumRule, Normalizer, Reference};
use crate::reference::amplitude_reference;
use crate::report::{amplitude_chi2_pair, RunConfig, TABLE_ENERGIES};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Deterministic low-discrepancy `(hnu, phi)` samples spanning
/// `[1e-5, 1e3]` MeV log-uniformly and `[0, pi]` uniformly.
fn sample_points(n: usize) -> impl Iterator<Item = (f64, f64)> {
    const G1: f64 = 0.754_877_666_246_692_8;
    const G2: f64 = 0.569_840_290_998_053_3;
    (0..n).map(|i| {
        let u = (0.5 + G1 * i as f64).fract();
        let v = (0.5 + G2 * i as f64).fract();
        (10f64.powf(-5.0 + 8.0 * u), PI * v)
    })
}

fn kinematic_identities(config: &RunConfig) -> Vec<Check> {
    let c = &config.constants;
    let mut worst = [0.0f64; 3];
    let mut errors = 0;
    for (hnu, phi) in sample_points(20_000) {
        let (Ok(s), Ok(total), Ok(p), Ok(k), Ok(shift)) = (
            scattered_photon_energy(c, hnu, phi),
            electron_total_energy(c, hnu, phi),
            electron_momentum(c, hnu, phi),
            electron_kinetic_energy(c, hnu, phi),
            wavelength_shift(c, hnu, phi),
        ) else {
            errors += 1;
            continue;
        };
        let m = c.electron_rest_energy;
        worst[0] = worst[0].max(rel(hnu + m, s + total));
        let via_k = momentum_from_kinetic(c, k).unwrap_or(f64::NAN);
        worst[1] = worst[1].max(rel(p, via_k));
        let h = (0.5 * phi).sin();
        worst[2] = worst[2].max(rel(shift, c.compton_wavelength() * 2.0 * h * h));
    }
    vec![
        check(
            "energy conservation",
            errors == 0 && worst[0] <= 1e-12,
            format!("max rel {:.3e}", worst[0]),
        ),
        check(
            "momentum routes agree",
            errors == 0 && worst[1] <= 1e-10,
            format!("max rel {:.3e}", worst[1]),
        ),
        check(
            "wavelength shift",
            errors == 0 && worst[2] <= 1e-10,
            format!("max rel {:.3e}", worst[2]),
        ),
    ]
}

fn thomson_checks(config: &RunConfig) -> Vec<Check> {
    let c = &config.constants;
    let forward_ok = TABLE_ENERGIES.iter().all(|&e| {
        [KnVariant::Full, KnVariant::NoInterference]
            .iter()
            .all(|&v| kn_differential(c, e, 0.0, v).is_ok_and(|x| (x - 1.0).abs() <= 1e-14))
    });
    let total = kn_total_cross_section(c, 1e-6);
    let thomson = 8.0 * PI / 3.0;
    let total_dev = total.as_ref().map_or(f64::INFINITY, |s| rel(*s, thomson));
    vec![
        check("forward cross section is 1 r_e^2", forward_ok, ""),
        check(
            "Thomson total cross section",
            total_dev <= 1e-3,
            format!("rel deviation {total_dev:.3e}"),
        ),
    ]
}

fn high_energy_scaling(config: &RunConfig) -> Check {
    let c = &config.constants;
    let mut detail = Vec::new();
    let mut ok = true;
    for e in [100.0, 250.0, 500.0] {
        match (
            kn_total_cross_section(c, e),
            kn_total_cross_section(c, 2.0 * e),
        ) {
            (Ok(a), Ok(b)) => {
                let r = b / a;
                ok &= r > 0.50 && r < 0.62;
                detail.push(format!("{e}:{r:.4}"));
            }
            _ => ok = false,
        }
    }
    check("sigma(2e)/sigma(e) in (0.50, 0.62)", ok, detail.join(" "))
}

/// Rows that do not depend on where the sub-MeV minimum sits: every
/// amplitude cell from 1 MeV upward, and the cross-section amplitude at
/// all energies.
fn amplitude_table_check(config: &RunConfig) -> Check {
    let c = &config.constants;
    let reference = amplitude_reference();
    let energies: Vec<f64> = reference.iter().map(|r| r.energy.value).collect();
    let rows = match amplitude_table(c, &energies, KnVariant::Full, MinimumRule::OwnVariant) {
        Ok(r) => r,
        Err(e) => return check("amplitude table", false, e.to_string()),
    };
    let mut flagged = Vec::new();
    for (row, published) in rows.iter().zip(&reference) {
        let mut cells = vec![(
            "kn_amplitude",
            row.kn_amplitude,
            &published.kn_amplitude,
            1e-4,
        )];
        if row.energy >= 1.0 {
            cells.extend([
                (
                    "scatter_drop",
                    row.scatter_drop,
                    &published.scatter_drop,
                    0.0,
                ),
                (
                    "momentum_ratio",
                    row.momentum_ratio,
                    &published.momentum_ratio,
                    0.0,
                ),
                (
                    "transfer_fraction",
                    row.transfer_fraction,
                    &published.transfer_fraction,
                    0.0,
                ),
            ]);
        }
        for (name, v, pr, floor) in cells {
            let tol = pr.last_digit_unit().max(floor) * (1.0 + 1e-9);
            if (v - pr.value).abs() > tol {
                flagged.push(format!(
                    "{}MeV {name} {v:.6} vs {} (delta {:+.2e})",
                    row.energy,
                    pr.text,
                    v - pr.value
                ));
            }
        }
    }
    check(
        "amplitude table matches printed values",
        flagged.is_empty(),
        flagged.join("; "),
    )
}

fn endpoint_checks(config: &RunConfig) -> Check {
    let c = &config.constants;
    let grid = match AngleGrid::inclusive(config.grid_points.max(2) + 1) {
        Ok(g) => g,
        Err(e) => return check("normalization endpoints", false, e.to_string()),
    };
    let mut worst = 0.0f64;
    let mut failed = false;
    for &e in &TABLE_ENERGIES {
        for reference in [Reference::Backscatter, Reference::KnMinimum] {
            let n = Normalizer::new(c, KnVariant::Full).with_reference(reference);
            let Ok(f) = n.frame(e) else {
                failed = true;
                continue;
            };
            let r = f.reference_angle;
            worst = worst
                .max((f.kn_norm(0.0) - 1.0).abs())
                .max(f.kn_norm(f.minimum.angle).abs())
                .max(f.scattered_norm(r).abs())
                .max((f.kinetic_norm(r) - 1.0).abs())
                .max((f.momentum_norm(r) - 1.0).abs());
            for &phi in grid.angles() {
                worst = worst.max((f.scattered_norm(phi) + f.kinetic_norm(phi) - 1.0).abs());
            }
        }
    }
    check(
        "normalization endpoints and complement identity",
        !failed && worst <= 1e-12,
        format!("max deviation {worst:.3e}"),
    )
}

fn minimum_check(config: &RunConfig) -> Check {
    let c = &config.constants;
    let n = 100_000;
    let mut ok = true;
    for &e in &[1e-5, 0.01, 0.3, 0.5, 1.0, 1000.0] {
        let Ok(m) = kn_minimum(c, e, KnVariant::Full) else {
            ok = false;
            continue;
        };
        ok &= (0..n).all(|i| {
            let phi = PI * i as f64 / (n - 1) as f64;
            kn_differential(c, e, phi, KnVariant::Full).is_ok_and(|v| m.value <= v)
        });
    }
    check("minimum below dense grid", ok, "")
}

fn sweep_checks(config: &RunConfig) -> Vec<Check> {
    let c = &config.constants;
    let grid = match config.grid() {
        Ok(g) => g,
        Err(e) => return vec![check("chi-square sweep", false, e.to_string())],
    };
    let full = match chi2_sweep(
        c,
        &TABLE_ENERGIES,
        &grid,
        KnVariant::Full,
        MinimumRule::OwnVariant,
        false,
    ) {
        Ok(r) => r,
        Err(e) => return vec![check("chi-square sweep", false, e.to_string())],
    };
    let same = full
        .iter()
        .map(|r| rel(r.scattered.chi2, r.kinetic.chi2))
        .fold(0.0, f64::max);
    let mut out = vec![check(
        "scattered and kinetic chi-squares agree",
        same <= 1e-12,
        format!("max rel {same:.3e}"),
    )];
    let below = full.iter().all(|r| {
        [&r.scattered, &r.momentum, &r.kinetic]
            .iter()
            .all(|rep| rep.below_critical != Some(false))
    });
    out.push(check("chi-squares below critical value", below, ""));
    let dec = (0..3).all(|k| {
        full.windows(2)
            .all(|w| w[1].columns()[k] < w[0].columns()[k])
    });
    out.push(check("chi-squares decrease with energy", dec, ""));
    out
}

fn amplitude_chi2_check(config: &RunConfig) -> Check {
    match amplitude_chi2_pair(config) {
        Ok((computed, printed)) => {
            let all = [
                &computed.transfer,
                &computed.momentum,
                &printed.transfer,
                &printed.momentum,
            ];
            let ok = all.iter().all(|r| r.below_critical == Some(true));
            check(
                "amplitude chi-squares below critical value",
                ok,
                format!(
                    "computed {:.5}/{:.5}, printed rows {:.5}/{:.5}",
                    computed.transfer.chi2,
                    computed.momentum.chi2,
                    printed.transfer.chi2,
                    printed.momentum.chi2
                ),
            )
        }
        Err(e) => check("amplitude chi-squares", false, e.to_string()),
    }
}

/// Runs every check. Constants that fail validation are reported but the
/// remaining checks still run with them.
pub fn run_checks(config: &RunConfig) -> Vec<Check> {
    let mut checks = vec![match config.constants.validate() {
        Ok(()) => check("physical constants in range", true, ""),
        Err(e) => check("physical constants in range", false, e.to_string()),
    }];
    checks.extend(thomson_checks(config));
    checks.extend(kinematic_identities(config));
    checks.push(high_energy_scaling(config));
    checks.push(amplitude_table_check(config));
    checks.push(endpoint_checks(config));
    checks.push(minimum_check(config));
    checks.extend(sweep_checks(config));
    checks.push(amplitude_chi2_check(config));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_points_cover_the_box() {
        let pts: Vec<_> = sample_points(1000).collect();
        assert!(pts
            .iter()
            .all(|&(e, p)| (1e-5..=1e3).contains(&e) && (0.0..=PI).contains(&p)));
        assert!(pts.iter().any(|&(e, _)| e < 1e-4));
        assert!(pts.iter().any(|&(e, _)| e > 1e2));
    }
}
