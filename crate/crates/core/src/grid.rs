use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// `(i - 0.5) pi / N`, strictly inside `(0, pi)`.
    Midpoint,
    /// `i pi / (N - 1)`, both ends included. Used for endpoint diagnostics.
    Inclusive,
}

/// Ordered scattering angles on `[0, pi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleGrid {
    kind: GridKind,
    angles: Vec<f64>,
}

impl AngleGrid {
    pub fn midpoints(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Grid(format!("need at least 2 points, got {count}")));
        }
        let step = PI / count as f64;
        let angles = (1..=count).map(|i| (i as f64 - 0.5) * step).collect();
        Ok(Self {
            kind: GridKind::Midpoint,
            angles,
        })
    }

    pub fn inclusive(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Grid(format!("need at least 2 points, got {count}")));
        }
        let last = count - 1;
        let angles = (0..count)
            .map(|i| {
                if i == last {
                    PI
                } else {
                    PI * i as f64 / last as f64
                }
            })
            .collect();
        Ok(Self {
            kind: GridKind::Inclusive,
            angles,
        })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoints_are_interior_and_increasing() {
        let g = AngleGrid::midpoints(2000).unwrap();
        assert_eq!(g.len(), 2000);
        assert!(g.angles()[0] > 0.0 && *g.angles().last().unwrap() < PI);
        assert!(g.angles().windows(2).all(|w| w[0] < w[1]));
        assert!((g.angles()[0] - 0.5 * PI / 2000.0).abs() < 1e-18);
    }

    #[test]
    fn inclusive_hits_both_ends() {
        let g = AngleGrid::inclusive(7).unwrap();
        assert_eq!(g.angles()[0], 0.0);
        assert_eq!(g.angles()[6], PI);
    }

    #[test]
    fn too_small_rejected() {
        assert!(AngleGrid::midpoints(1).is_err());
        assert!(AngleGrid::inclusive(0).is_err());
    }
}
