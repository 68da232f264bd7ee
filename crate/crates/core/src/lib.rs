//! Compton scattering kinematics and the Klein-Nishina cross section for a
//! free electron at rest, normalized angular curves built from both, and
//! Pearson chi-square measures of how closely those curves agree.

pub mod constants;
pub mod cross_section;
pub mod error;
pub mod grid;
pub mod kinematics;
pub mod matching;
pub mod minimize;
pub mod normalization;
pub mod quadrature;
pub mod reference;
pub mod report;
pub mod verify;

pub use constants::PhysicalConstants;
pub use cross_section::{
    kn_differential, kn_minimum, kn_total_cross_section, KnMinimum, KnVariant,
};
pub use error::{Error, Result};
pub use grid::AngleGrid;
pub use normalization::{amplitude_table, AmplitudeRow, Curve, MinimumRule, Normalizer, Reference};
