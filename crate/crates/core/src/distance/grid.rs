use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use super::{DistanceSpec, Measure};
use crate::error::{Error, Result};
use crate::seed::Rng;

/// Stiffness values for TWED, crossed with ten `lambda` values.
const TWED_NU: [f64; 10] = [0.00001, 0.0001, 0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0];

/// `k` evenly spaced values from `lo` to `hi` inclusive.
fn linspace(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    (0..k).map(move |i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
}

/// An ordered list of parameter options for one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGrid {
    pub measure: Measure,
    pub options: Vec<DistanceSpec>,
}

impl ParameterGrid {
    pub fn len(&self) -> usize {
        self.options.len()
    }

    pub fn is_empty(&self) -> bool {
        self.options.is_empty()
    }
}

/// The 100-option tuning grid of a measure. `pooled_std` is the standard
/// deviation over all training values, used by the LCSS and ERP ranges.
pub fn ee_parameter_grid(measure: Measure, pooled_std: f64, series_length: usize) -> Result<ParameterGrid> {
    let sigma = pooled_std;
    let options: Vec<DistanceSpec> = match measure {
        Measure::Euclidean => return Err(Error::NotTunable(measure.to_string())),
        Measure::Dtw => (0..100).map(|x| DistanceSpec::Dtw { w: x as f64 / 100.0 }).collect(),
        Measure::Ddtw => (0..100).map(|x| DistanceSpec::Ddtw { w: x as f64 / 100.0 }).collect(),
        Measure::Wdtw => (0..100).map(|x| DistanceSpec::Wdtw { g: x as f64 / 100.0 }).collect(),
        Measure::Wddtw => (0..100).map(|x| DistanceSpec::Wddtw { g: x as f64 / 100.0 }).collect(),
        Measure::Lcss => linspace(sigma / 4.0, sigma, 10)
            .flat_map(|epsilon| {
                (0..10).map(move |k| DistanceSpec::Lcss {
                    epsilon,
                    delta: k * series_length / 36,
                })
            })
            .collect(),
        Measure::Erp => linspace(sigma / 5.0, sigma, 10)
            .flat_map(|g| linspace(0.0, 0.25, 10).map(move |w| DistanceSpec::Erp { g, w }))
            .collect(),
        Measure::Msm => (0..100)
            .map(|k| DistanceSpec::Msm {
                c: 10f64.powf(-2.0 + 4.0 * k as f64 / 99.0),
            })
            .collect(),
        Measure::Twed => TWED_NU
            .iter()
            .flat_map(|&nu| linspace(0.0, 0.1, 10).map(move |lambda| DistanceSpec::Twed { nu, lambda }))
            .collect(),
    };
    Ok(ParameterGrid { measure, options })
}

/// The eleven nearest-neighbour constituents of the Elastic Ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constituent {
    Euclidean,
    FullDtw,
    FullDdtw,
    DtwCv,
    DdtwCv,
    Wdtw,
    Wddtw,
    Lcss,
    Erp,
    Msm,
    Twed,
}

impl Constituent {
    pub const ALL: [Constituent; 11] = [
        Constituent::Euclidean,
        Constituent::FullDtw,
        Constituent::FullDdtw,
        Constituent::DtwCv,
        Constituent::DdtwCv,
        Constituent::Wdtw,
        Constituent::Wddtw,
        Constituent::Lcss,
        Constituent::Erp,
        Constituent::Msm,
        Constituent::Twed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constituent::Euclidean => "euclidean",
            Constituent::FullDtw => "dtw",
            Constituent::FullDdtw => "ddtw",
            Constituent::DtwCv => "dtwcv",
            Constituent::DdtwCv => "ddtwcv",
            Constituent::Wdtw => "wdtw",
            Constituent::Wddtw => "wddtw",
            Constituent::Lcss => "lcss",
            Constituent::Erp => "erp",
            Constituent::Msm => "msm",
            Constituent::Twed => "twed",
        }
    }

    pub fn measure(self) -> Measure {
        match self {
            Constituent::Euclidean => Measure::Euclidean,
            Constituent::FullDtw | Constituent::DtwCv => Measure::Dtw,
            Constituent::FullDdtw | Constituent::DdtwCv => Measure::Ddtw,
            Constituent::Wdtw => Measure::Wdtw,
            Constituent::Wddtw => Measure::Wddtw,
            Constituent::Lcss => Measure::Lcss,
            Constituent::Erp => Measure::Erp,
            Constituent::Msm => Measure::Msm,
            Constituent::Twed => Measure::Twed,
        }
    }

    /// The untuned spec for constituents without a grid.
    pub fn fixed_spec(self) -> Option<DistanceSpec> {
        match self {
            Constituent::Euclidean => Some(DistanceSpec::Euclidean),
            Constituent::FullDtw => Some(DistanceSpec::Dtw { w: 1.0 }),
            Constituent::FullDdtw => Some(DistanceSpec::Ddtw { w: 1.0 }),
            _ => None,
        }
    }

    pub fn grid(self, pooled_std: f64, series_length: usize) -> Option<Result<ParameterGrid>> {
        match self.fixed_spec() {
            Some(_) => None,
            None => Some(ee_parameter_grid(self.measure(), pooled_std, series_length)),
        }
    }

    /// Draws a spec uniformly from the constituent's tuning range (continuous
    /// where the range is continuous; MSM's cost is drawn log-uniformly).
    pub fn sample(self, pooled_std: f64, series_length: usize, rng: &mut Rng) -> DistanceSpec {
        let sigma = pooled_std;
        match self {
            Constituent::Euclidean => DistanceSpec::Euclidean,
            Constituent::FullDtw => DistanceSpec::Dtw { w: 1.0 },
            Constituent::FullDdtw => DistanceSpec::Ddtw { w: 1.0 },
            Constituent::DtwCv => DistanceSpec::Dtw {
                w: rng.random_range(0.0..=0.99),
            },
            Constituent::DdtwCv => DistanceSpec::Ddtw {
                w: rng.random_range(0.0..=0.99),
            },
            Constituent::Wdtw => DistanceSpec::Wdtw {
                g: rng.random_range(0.0..=0.99),
            },
            Constituent::Wddtw => DistanceSpec::Wddtw {
                g: rng.random_range(0.0..=0.99),
            },
            Constituent::Lcss => {
                let lo = (sigma / 4.0).max(1e-9);
                DistanceSpec::Lcss {
                    epsilon: rng.random_range(lo..=sigma.max(lo)),
                    delta: rng.random_range(0..=series_length / 4),
                }
            }
            Constituent::Erp => DistanceSpec::Erp {
                g: rng.random_range(sigma / 5.0..=sigma.max(sigma / 5.0)),
                w: rng.random_range(0.0..=0.25),
            },
            Constituent::Msm => DistanceSpec::Msm {
                c: 10f64.powf(rng.random_range(-2.0..=2.0)),
            },
            Constituent::Twed => DistanceSpec::Twed {
                nu: TWED_NU[rng.random_range(0..TWED_NU.len())],
                lambda: rng.random_range(0.0..=0.1),
            },
        }
    }
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Constituent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Constituent::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMeasure(s.to_owned()))
    }
}
