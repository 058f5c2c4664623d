//! Elastic distance measures and their parameter grids.
//!
//! Pointwise cost is the squared difference for the DTW family, ERP and
//! TWED, and the absolute difference for MSM. Window fractions `w` map to a
//! Sakoe-Chiba band of half-width `ceil(w * n)`; `w = 0` is the diagonal.

mod dtw;
mod edit;
mod grid;
mod spec;

pub use dtw::{derivative_transform, dtw_distance, euclidean_distance, wdtw_distance};
pub use edit::{erp_distance, lcss_distance, msm_distance, twed_distance};
pub use grid::{ee_parameter_grid, Constituent, ParameterGrid};
pub use spec::{DistanceSpec, Measure};

use crate::error::{Error, Result};

/// Half-width of the warping band for window fraction `w` on length `n`.
pub fn band_radius(w: f64, n: usize) -> usize {
    // the small offset stops 0.17 * 100 = 17.000000000000004 from rounding up
    let r = (w * n as f64 - 1e-9).ceil();
    if r <= 0.0 {
        0
    } else {
        (r as usize).min(n)
    }
}

pub(crate) fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SeriesLengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::SeriesTooShort { found: 0, required: 1 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_radius_is_exact_on_grid_points() {
        assert_eq!(band_radius(0.17, 100), 17);
        assert_eq!(band_radius(0.0, 100), 0);
        assert_eq!(band_radius(1.0, 7), 7);
        assert_eq!(band_radius(0.01, 10), 1);
        for x in 0..100 {
            assert_eq!(band_radius(x as f64 / 100.0, 100), x);
        }
    }
}
