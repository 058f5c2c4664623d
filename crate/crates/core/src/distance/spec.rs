use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use super::{check_lengths, dtw, edit};
use crate::error::{Error, Result};

/// The nine distance measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Euclidean,
    Dtw,
    Ddtw,
    Wdtw,
    Wddtw,
    Lcss,
    Erp,
    Msm,
    Twed,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::Euclidean,
        Measure::Dtw,
        Measure::Ddtw,
        Measure::Wdtw,
        Measure::Wddtw,
        Measure::Lcss,
        Measure::Erp,
        Measure::Msm,
        Measure::Twed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Euclidean => "euclidean",
            Measure::Dtw => "dtw",
            Measure::Ddtw => "ddtw",
            Measure::Wdtw => "wdtw",
            Measure::Wddtw => "wddtw",
            Measure::Lcss => "lcss",
            Measure::Erp => "erp",
            Measure::Msm => "msm",
            Measure::Twed => "twed",
        }
    }

    /// Whether the measure operates on derivative-transformed series.
    pub fn uses_derivative(self) -> bool {
        matches!(self, Measure::Ddtw | Measure::Wddtw)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMeasure(s.to_owned()))
    }
}

/// A measure together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceSpec {
    Euclidean,
    Dtw { w: f64 },
    Ddtw { w: f64 },
    Wdtw { g: f64 },
    Wddtw { g: f64 },
    Lcss { epsilon: f64, delta: usize },
    Erp { g: f64, w: f64 },
    Msm { c: f64 },
    Twed { nu: f64, lambda: f64 },
}

impl DistanceSpec {
    pub fn measure(&self) -> Measure {
        match self {
            DistanceSpec::Euclidean => Measure::Euclidean,
            DistanceSpec::Dtw { .. } => Measure::Dtw,
            DistanceSpec::Ddtw { .. } => Measure::Ddtw,
            DistanceSpec::Wdtw { .. } => Measure::Wdtw,
            DistanceSpec::Wddtw { .. } => Measure::Wddtw,
            DistanceSpec::Lcss { .. } => Measure::Lcss,
            DistanceSpec::Erp { .. } => Measure::Erp,
            DistanceSpec::Msm { .. } => Measure::Msm,
            DistanceSpec::Twed { .. } => Measure::Twed,
        }
    }

    /// Builds a spec from `key=value` pairs. Missing keys default to
    /// `w=1`, `g=0.05` (wdtw), `epsilon=0.05`, `delta=3`, `g=0` (erp), `c=1`,
    /// `nu=0.001` and `lambda=1`.
    pub fn from_params(measure: Measure, params: &[(String, f64)]) -> Result<Self> {
        let get = |key: &str, default: f64| -> f64 {
            params
                .iter()
                .rev()
                .find(|(k, _)| k.eq_ignore_ascii_case(key))
                .map_or(default, |(_, v)| *v)
        };
        let allowed: &[&str] = match measure {
            Measure::Euclidean => &[],
            Measure::Dtw | Measure::Ddtw => &["w"],
            Measure::Wdtw | Measure::Wddtw => &["g"],
            Measure::Lcss => &["epsilon", "delta"],
            Measure::Erp => &["g", "w"],
            Measure::Msm => &["c"],
            Measure::Twed => &["nu", "lambda"],
        };
        if let Some((k, _)) = params
            .iter()
            .find(|(k, _)| !allowed.iter().any(|a| a.eq_ignore_ascii_case(k)))
        {
            return Err(Error::InvalidParameter(format!("{measure} does not take parameter {k:?}")));
        }
        let spec = match measure {
            Measure::Euclidean => DistanceSpec::Euclidean,
            Measure::Dtw => DistanceSpec::Dtw { w: get("w", 1.0) },
            Measure::Ddtw => DistanceSpec::Ddtw { w: get("w", 1.0) },
            Measure::Wdtw => DistanceSpec::Wdtw { g: get("g", 0.05) },
            Measure::Wddtw => DistanceSpec::Wddtw { g: get("g", 0.05) },
            Measure::Lcss => {
                let delta = get("delta", 3.0);
                if delta < 0.0 || delta.fract() != 0.0 {
                    return Err(Error::InvalidParameter(format!("lcss delta {delta} is not a count")));
                }
                DistanceSpec::Lcss {
                    epsilon: get("epsilon", 0.05),
                    delta: delta as usize,
                }
            }
            Measure::Erp => DistanceSpec::Erp {
                g: get("g", 0.0),
                w: get("w", 1.0),
            },
            Measure::Msm => DistanceSpec::Msm { c: get("c", 1.0) },
            Measure::Twed => DistanceSpec::Twed {
                nu: get("nu", 0.001),
                lambda: get("lambda", 1.0),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses `"w=0.1,g=0.5"` style text (empty text means no parameters).
    pub fn parse(measure: Measure, text: &str) -> Result<Self> {
        let params = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|kv| {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {kv:?}")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad value in {kv:?}")))?;
                Ok((k.trim().to_owned(), v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_params(measure, &params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            DistanceSpec::Dtw { w } | DistanceSpec::Ddtw { w } | DistanceSpec::Erp { w, .. }
                if !(0.0..=1.0).contains(&w) =>
            {
                bad(format!("window {w} outside [0, 1]"))
            }
            DistanceSpec::Wdtw { g } | DistanceSpec::Wddtw { g } if !(g >= 0.0) => {
                bad(format!("weight {g} must be non-negative"))
            }
            DistanceSpec::Lcss { epsilon, .. } if !(epsilon > 0.0) => {
                bad(format!("epsilon {epsilon} must be positive"))
            }
            DistanceSpec::Erp { g, .. } if !(g >= 0.0) => bad(format!("erp g {g} must be non-negative")),
            DistanceSpec::Msm { c } if !(c > 0.0) => bad(format!("msm c {c} must be positive")),
            DistanceSpec::Twed { nu, lambda } if !(nu > 0.0 && lambda >= 0.0) => {
                bad(format!("twed nu {nu} / lambda {lambda} out of range"))
            }
            _ => Ok(()),
        }
    }

    /// The representation of a series this measure compares: its derivative
    /// for ddtw/wddtw, the series itself otherwise.
    pub fn prepare<'a>(&self, x: &'a [f64]) -> Result<Cow<'a, [f64]>> {
        if self.measure().uses_derivative() {
            Ok(Cow::Owned(dtw::derivative_transform(x)?))
        } else {
            Ok(Cow::Borrowed(x))
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        check_lengths(a, b)?;
        let (pa, pb) = (self.prepare(a)?, self.prepare(b)?);
        Ok(self.distance_prepared(&pa, &pb, f64::INFINITY))
    }

    /// Distance between already prepared series of equal length.
    ///
    /// May return `f64::INFINITY` once the result is known to exceed
    /// `cutoff`; any value `<= cutoff` is exact. LCSS never abandons.
    pub fn distance_prepared(&self, a: &[f64], b: &[f64], cutoff: f64) -> f64 {
        match *self {
            DistanceSpec::Euclidean => dtw::euclidean(a, b, cutoff),
            DistanceSpec::Dtw { w } | DistanceSpec::Ddtw { w } => dtw::dtw(a, b, w, cutoff),
            DistanceSpec::Wdtw { g } | DistanceSpec::Wddtw { g } => dtw::wdtw(a, b, g, cutoff),
            DistanceSpec::Lcss { epsilon, delta } => edit::lcss(a, b, epsilon, delta),
            DistanceSpec::Erp { g, w } => edit::erp(a, b, g, w, cutoff),
            DistanceSpec::Msm { c } => edit::msm(a, b, c, cutoff),
            DistanceSpec::Twed { nu, lambda } => edit::twed(a, b, nu, lambda, cutoff),
        }
    }
}

impl fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.measure())?;
        match *self {
            DistanceSpec::Euclidean => Ok(()),
            DistanceSpec::Dtw { w } | DistanceSpec::Ddtw { w } => write!(f, " w={w}"),
            DistanceSpec::Wdtw { g } | DistanceSpec::Wddtw { g } => write!(f, " g={g}"),
            DistanceSpec::Lcss { epsilon, delta } => write!(f, " epsilon={epsilon},delta={delta}"),
            DistanceSpec::Erp { g, w } => write!(f, " g={g},w={w}"),
            DistanceSpec::Msm { c } => write!(f, " c={c}"),
            DistanceSpec::Twed { nu, lambda } => write!(f, " nu={nu},lambda={lambda}"),
        }
    }
}
