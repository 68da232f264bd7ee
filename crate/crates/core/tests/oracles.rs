use std::f64::consts::PI;

use compton_kn::matching::{amplitude_chi2, pearson_chi_square};
use compton_kn::report::{
    amplitude_report, format_full, printed_amplitude_rows, RunConfig, TABLE_ENERGIES,
};
use compton_kn::{
    amplitude_table, kn_differential, kn_minimum, kn_total_cross_section, KnVariant, MinimumRule,
    PhysicalConstants,
};

const C: PhysicalConstants = PhysicalConstants::CODATA_2014;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Closed-form Klein-Nishina total in r_e^2.
fn closed_form_total(hnu: f64) -> f64 {
    let k = hnu / C.electron_rest_energy;
    let l = (2.0 * k).ln_1p();
    let a = 1.0 + 2.0 * k;
    2.0 * PI
        * ((1.0 + k) / (k * k) * (2.0 * (1.0 + k) / a - l / k) + l / (2.0 * k)
            - (1.0 + 3.0 * k) / (a * a))
}

#[test]
fn total_matches_closed_form() {
    for e in [1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0] {
        let q = kn_total_cross_section(&C, e).unwrap();
        assert!(rel(q, closed_form_total(e)) < 1e-9, "{e}: {q}");
    }
}

#[test]
fn thomson_limit_converges() {
    let s = kn_total_cross_section(&C, 1e-7).unwrap();
    assert!(rel(s, 8.0 * PI / 3.0) < 1e-5);
    let low = kn_total_cross_section(&C, 1e-6).unwrap();
    let high = kn_total_cross_section(&C, 1e-3).unwrap();
    assert!(s > low && low > high);
}

#[test]
fn minimum_beats_dense_scan() {
    let n = 100_000;
    for variant in [KnVariant::Full, KnVariant::NoInterference] {
        for e in [1e-5, 1e-3, 0.1, 0.3, 0.5, 0.9, 1.0, 5.0, 1000.0] {
            let m = kn_minimum(&C, e, variant).unwrap();
            let scan = (0..n)
                .map(|i| kn_differential(&C, e, PI * i as f64 / (n - 1) as f64, variant).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(
                m.value <= scan + 1e-15,
                "{e} {variant:?}: {} > {scan}",
                m.value
            );
        }
    }
}

#[test]
fn minimum_sits_at_backscatter_from_one_mev() {
    for e in [1.0, 5.0, 100.0, 1000.0] {
        assert_eq!(kn_minimum(&C, e, KnVariant::Full).unwrap().angle, PI);
    }
    let low = kn_minimum(&C, 1e-3, KnVariant::Full).unwrap().angle;
    assert!((low - PI / 2.0).abs() < 0.01, "{low}");
}

#[test]
fn no_interference_never_below_full() {
    for &e in &TABLE_ENERGIES {
        for i in 0..=180 {
            let phi = PI * i as f64 / 180.0;
            let full = kn_differential(&C, e, phi, KnVariant::Full).unwrap();
            let ni = kn_differential(&C, e, phi, KnVariant::NoInterference).unwrap();
            assert!(full <= ni);
        }
    }
}

#[test]
fn amplitude_columns_from_one_mev() {
    let rows = amplitude_table(
        &C,
        &TABLE_ENERGIES,
        KnVariant::Full,
        MinimumRule::OwnVariant,
    )
    .unwrap();
    let high: Vec<_> = rows.iter().filter(|r| r.energy >= 1.0).collect();
    assert!(high
        .windows(2)
        .all(|w| w[1].kn_amplitude > w[0].kn_amplitude));
    let gaps: Vec<f64> = high
        .iter()
        .map(|r| (r.kn_amplitude - r.transfer_fraction).abs())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert_eq!(rows.last().unwrap().kn_amplitude, 1.0);
    for r in &rows {
        assert_eq!(r.scatter_drop.to_bits(), r.transfer_fraction.to_bits());
    }
}

#[test]
fn amplitude_chi2_hand_summation() {
    let rows = printed_amplitude_rows();
    let by_hand: f64 = rows
        .iter()
        .map(|r| (r.transfer_fraction - r.kn_amplitude).powi(2) / r.kn_amplitude)
        .sum();
    let got = amplitude_chi2(&rows).unwrap();
    assert!(rel(got.transfer.chi2, by_hand) < 1e-12);
    assert!((got.transfer.chi2 - 0.0114).abs() < 5e-5);
    assert!((got.momentum.chi2 - 0.0051).abs() < 5e-5);
    assert_eq!(got.transfer.dof, 7);
}

#[test]
fn chi_square_rejects_bad_input() {
    assert!(pearson_chi_square(&[1.0, 2.0], &[1.0, 0.0], None, false).is_err());
    assert!(pearson_chi_square(&[1.0, 2.0], &[1.0], None, false).is_err());
    assert!(pearson_chi_square(&[1.0], &[1.0], None, false).is_err());
    let rows = printed_amplitude_rows();
    assert!(amplitude_chi2(&rows[1..]).is_err());
}

#[test]
fn csv_round_trips_at_full_precision() {
    let config = RunConfig::default();
    let table = amplitude_report(&config).unwrap();
    let csv = table.to_csv();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "kn_amplitude").unwrap();
    let rows = amplitude_table(
        &C,
        &TABLE_ENERGIES,
        KnVariant::Full,
        MinimumRule::OwnVariant,
    )
    .unwrap();
    for (line, row) in lines.zip(&rows) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0].parse::<f64>().unwrap(), row.energy);
        assert_eq!(cells[col].parse::<f64>().unwrap(), row.kn_amplitude);
    }
    for x in [PI, 1.0 / 3.0, 4.0388e-8, f64::MIN_POSITIVE, 1e300] {
        assert_eq!(format_full(x).parse::<f64>().unwrap(), x);
    }
    assert!(!csv.contains('\r'));
}
