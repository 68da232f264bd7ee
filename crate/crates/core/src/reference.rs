//! Published reference values, embedded as CSV, for side-by-side
//! comparison with computed tables.
//!
//! Values keep their printed text so that comparisons can be made to one
//! unit in the last printed digit.

use serde::Serialize;

const TABLE_S1: &str = include_str!("../data/table_s1.csv");
const TABLE_S2: &str = include_str!("../data/table_s2.csv");
const TABLE_S3: &str = include_str!("../data/table_s3.csv");
const AMPLITUDE_CHI2: &str = include_str!("../data/amplitude_chi2.csv");

/// A number as it appears in print.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Printed {
    pub text: String,
    pub value: f64,
}

impl Printed {
    fn parse(text: &str) -> Self {
        let text = text.trim().to_string();
        let value = text
            .parse()
            .unwrap_or_else(|_| panic!("embedded reference value `{text}` is not a number"));
        Self { text, value }
    }

    /// One unit in the last printed digit. Bare integers are read as
    /// four-decimal values.
    pub fn last_digit_unit(&self) -> f64 {
        let (mantissa, exponent) = match self.text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().unwrap_or(0)),
            None => (self.text.as_str(), 0),
        };
        let decimals = match mantissa.split_once('.') {
            Some((_, frac)) => frac.len() as i32,
            None => 4,
        };
        10f64.powi(exponent - decimals)
    }

    /// Whether `computed` rounds to this value within one last-digit unit.
    pub fn agrees_with(&self, computed: f64) -> bool {
        (computed - self.value).abs() <= self.last_digit_unit() * (1.0 + 1e-9)
    }
}

fn rows(csv: &str) -> impl Iterator<Item = Vec<Printed>> + '_ {
    csv.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(Printed::parse).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeReference {
    pub energy: Printed,
    pub kn_amplitude: Printed,
    pub scatter_drop: Printed,
    pub momentum_ratio: Printed,
    pub transfer_fraction: Printed,
}

/// The published amplitude table, 14 rows from 1e-5 to 1000 MeV.
pub fn amplitude_reference() -> Vec<AmplitudeReference> {
    rows(TABLE_S1)
        .map(|mut r| {
            assert_eq!(r.len(), 5, "amplitude reference rows have 5 columns");
            let mut take = || r.remove(0);
            AmplitudeReference {
                energy: take(),
                kn_amplitude: take(),
                scatter_drop: take(),
                momentum_ratio: take(),
                transfer_fraction: take(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Chi2Reference {
    pub energy: Printed,
    pub scattered: Printed,
    pub momentum: Printed,
    pub kinetic: Printed,
}

impl Chi2Reference {
    pub fn columns(&self) -> [&Printed; 3] {
        [&self.scattered, &self.momentum, &self.kinetic]
    }
}

fn chi2_rows(csv: &str) -> Vec<Chi2Reference> {
    rows(csv)
        .map(|mut r| {
            assert_eq!(r.len(), 4, "chi-square reference rows have 4 columns");
            let mut take = || r.remove(0);
            Chi2Reference {
                energy: take(),
                scattered: take(),
                momentum: take(),
                kinetic: take(),
            }
        })
        .collect()
}

/// Published chi-squares for the full cross section.
pub fn sweep_reference_full() -> Vec<Chi2Reference> {
    chi2_rows(TABLE_S2)
}

/// Published chi-squares with the `sin^2` term removed.
pub fn sweep_reference_no_interference() -> Vec<Chi2Reference> {
    chi2_rows(TABLE_S3)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeChi2Reference {
    pub transfer: Printed,
    pub momentum: Printed,
    pub dof: usize,
    pub critical_value: Printed,
}

pub fn amplitude_chi2_reference() -> AmplitudeChi2Reference {
    let mut transfer = None;
    let mut momentum = None;
    let mut dof = 0;
    let mut critical = None;
    for line in AMPLITUDE_CHI2.lines().skip(1).filter(|l| !l.is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        let chi2 = Printed::parse(cells[1]);
        dof = cells[2].trim().parse().expect("dof is an integer");
        critical = Some(Printed::parse(cells[3]));
        match cells[0] {
            "transfer" => transfer = Some(chi2),
            "momentum" => momentum = Some(chi2),
            other => panic!("unknown amplitude chi-square report `{other}`"),
        }
    }
    AmplitudeChi2Reference {
        transfer: transfer.expect("transfer row"),
        momentum: momentum.expect("momentum row"),
        dof,
        critical_value: critical.expect("critical value"),
    }
}

/// The 14 energies of the amplitude and chi-square tables, in MeV.
pub fn table_energies() -> Vec<f64> {
    amplitude_reference()
        .iter()
        .map(|r| r.energy.value)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_load() {
        assert_eq!(amplitude_reference().len(), 14);
        assert_eq!(sweep_reference_full().len(), 14);
        assert_eq!(sweep_reference_no_interference().len(), 14);
        let e = table_energies();
        assert_eq!(e[0], 1e-5);
        assert_eq!(e[13], 1000.0);
        let s2 = sweep_reference_full();
        for (a, b) in s2.iter().zip(&amplitude_reference()) {
            assert_eq!(a.energy.value, b.energy.value);
        }
    }

    #[test]
    fn last_digit_units() {
        let p = Printed::parse("0.8941");
        assert!((p.last_digit_unit() - 1e-4).abs() < 1e-18);
        assert!((Printed::parse("1.9495e-5").last_digit_unit() - 1e-9).abs() < 1e-22);
        assert!((Printed::parse("0.82626").last_digit_unit() - 1e-5).abs() < 1e-19);
        assert!((Printed::parse("1").last_digit_unit() - 1e-4).abs() < 1e-18);
        assert!(p.agrees_with(0.89415));
        assert!(!p.agrees_with(0.8943));
    }

    #[test]
    fn amplitude_chi2_values() {
        let r = amplitude_chi2_reference();
        assert_eq!(r.transfer.value, 0.01025);
        assert_eq!(r.momentum.value, 0.02286);
        assert_eq!(r.dof, 7);
    }
}
