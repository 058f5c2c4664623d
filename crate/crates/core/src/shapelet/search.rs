use std::time::{Duration, Instant};

use rand::Rng as _;

use super::quality::shapelet_quality;
use super::stc::{StcConfig, StcContract};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::kernels::{mean, znormalize, ZERO_VARIANCE};
use crate::{par, seed};

#[derive(Debug, Clone, PartialEq)]
pub struct Shapelet {
    /// Z-normalised values (all zero when the source span is flat).
    pub values: Vec<f64>,
    pub source_case: usize,
    pub source_start: usize,
    pub quality: f64,
    /// Class index of the source case.
    pub class_origin: usize,
}

impl Shapelet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn overlaps(&self, case: usize, start: usize, length: usize) -> bool {
        self.source_case == case && start < self.source_start + self.len() && self.source_start < start + length
    }
}

/// A series centred on its mean with prefix sums, for fast window statistics.
#[derive(Debug, Clone)]
pub(crate) struct PreparedSeries {
    x: Vec<f64>,
    sum: Vec<f64>,
    sumsq: Vec<f64>,
}

impl PreparedSeries {
    pub(crate) fn new(series: &[f64]) -> Self {
        let m = mean(series);
        let x: Vec<f64> = series.iter().map(|v| v - m).collect();
        let mut sum = Vec::with_capacity(x.len() + 1);
        let mut sumsq = Vec::with_capacity(x.len() + 1);
        let (mut s, mut q) = (0.0, 0.0);
        sum.push(0.0);
        sumsq.push(0.0);
        for v in &x {
            s += v;
            q += v * v;
            sum.push(s);
            sumsq.push(q);
        }
        Self { x, sum, sumsq }
    }

    /// Smallest mean squared difference between `shapelet` and a z-normalised window.
    pub(crate) fn distance(&self, shapelet: &[f64]) -> Result<f64> {
        let l = shapelet.len();
        let n = self.x.len();
        if l == 0 || l > n {
            return Err(Error::ShapeletTooLong { shapelet: l, series: n });
        }
        let lf = l as f64;
        let mut best = f64::INFINITY;
        for start in 0..=n - l {
            let mu = (self.sum[start + l] - self.sum[start]) / lf;
            let var = (self.sumsq[start + l] - self.sumsq[start]) / lf - mu * mu;
            let sd = var.max(0.0).sqrt();
            let mut total = 0.0;
            if sd < ZERO_VARIANCE {
                for s in shapelet {
                    total += s * s;
                    if total >= best {
                        break;
                    }
                }
            } else {
                let window = &self.x[start..start + l];
                for (s, x) in shapelet.iter().zip(window) {
                    let d = s - (x - mu) / sd;
                    total += d * d;
                    if total >= best {
                        break;
                    }
                }
            }
            if total < best {
                best = total;
            }
        }
        Ok(best / lf)
    }
}

/// Minimum over alignments of the mean squared difference between the
/// shapelet and the z-normalised, equally long window of `series`.
pub fn subsequence_distance(shapelet: &[f64], series: &[f64]) -> Result<f64> {
    PreparedSeries::new(series).distance(shapelet)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    case: usize,
    start: usize,
    length: usize,
    class_origin: usize,
}

/// Draws candidates with source classes taken in turn.
struct CandidateStream<'a> {
    targets: &'a [usize],
    rng: seed::Rng,
    by_class: Vec<Vec<usize>>,
    min_len: usize,
    max_len: usize,
    series_length: usize,
    next_class: usize,
}

impl CandidateStream<'_> {
    fn next(&mut self) -> Candidate {
        let cases = &self.by_class[self.next_class % self.by_class.len()];
        self.next_class += 1;
        let case = cases[self.rng.random_range(0..cases.len())];
        let length = self.rng.random_range(self.min_len..=self.max_len);
        let start = self.rng.random_range(0..=self.series_length - length);
        Candidate {
            case,
            start,
            length,
            class_origin: self.targets[case],
        }
    }
}

/// Search parameters resolved against a particular training set.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeletSearch {
    pub contract: StcContract,
    pub max_retained: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl ShapeletSearch {
    pub fn resolve(config: &StcConfig, train: &TimeSeriesDataset) -> Result<Self> {
        let n = train.series_length();
        let max_len = config.max_len.unwrap_or(n);
        if config.min_len == 0 || config.min_len > max_len || max_len > n {
            return Err(Error::InvalidConfig(format!(
                "shapelet lengths {}..={} for series of length {}",
                config.min_len, max_len, n
            )));
        }
        Ok(Self {
            contract: config.contract,
            max_retained: config
                .max_retained_shapelets
                .unwrap_or_else(|| (10 * train.len()).min(1000))
                .max(1),
            min_len: config.min_len,
            max_len,
            seed: config.seed,
        })
    }
}

fn score(train: &TimeSeriesDataset, prepared: &[PreparedSeries], c: &Candidate) -> Result<f64> {
    let values = znormalize(&train.series(c.case)[c.start..c.start + c.length]);
    let distances = prepared.iter().map(|p| p.distance(&values)).collect::<Result<Vec<_>>>()?;
    shapelet_quality(&distances, train.targets(), c.class_origin)
}

/// Samples and scores random subseries until the contract is spent, then
/// keeps the best non-overlapping ones.
pub fn random_shapelet_search(train: &TimeSeriesDataset, config: &StcConfig) -> Result<Vec<Shapelet>> {
    let search = ShapeletSearch::resolve(config, train)?;
    let counts = train.class_counts();
    let by_class: Vec<Vec<usize>> = (0..train.n_classes())
        .filter(|&k| counts[k] > 0)
        .map(|k| (0..train.len()).filter(|&i| train.targets()[i] == k).collect())
        .collect();
    if by_class.len() < 2 {
        return Err(Error::DegenerateLabels);
    }
    let mut stream = CandidateStream {
        targets: train.targets(),
        rng: seed::rng(search.seed),
        by_class,
        min_len: search.min_len,
        max_len: search.max_len,
        series_length: train.series_length(),
        next_class: 0,
    };
    let prepared: Vec<PreparedSeries> = (0..train.len()).map(|i| PreparedSeries::new(train.series(i))).collect();
    let scored: Vec<(Candidate, f64)> = match search.contract {
        StcContract::MaxCandidates(k) => {
            let candidates: Vec<Candidate> = (0..k).map(|_| stream.next()).collect();
            let qualities = par::try_map_range(k, |i| score(train, &prepared, &candidates[i]))?;
            candidates.into_iter().zip(qualities).collect()
        }
        StcContract::Minutes(minutes) => {
            let budget = Duration::from_secs_f64(minutes * 60.0);
            let start = Instant::now();
            let mut out = Vec::new();
            while start.elapsed() < budget {
                let c = stream.next();
                out.push((c, score(train, &prepared, &c)?));
            }
            out
        }
    };
    if scored.is_empty() {
        return Err(Error::ContractTooSmall);
    }
    Ok(retain(train, scored, search.max_retained))
}

fn retain(train: &TimeSeriesDataset, mut scored: Vec<(Candidate, f64)>, max_retained: usize) -> Vec<Shapelet> {
    scored.sort_by(|(a, qa), (b, qb)| {
        qb.total_cmp(qa)
            .then(a.case.cmp(&b.case))
            .then(a.start.cmp(&b.start))
            .then(a.length.cmp(&b.length))
    });
    let mut kept: Vec<Shapelet> = Vec::new();
    for (c, q) in scored {
        if kept.len() == max_retained {
            break;
        }
        if kept.iter().any(|s| s.overlaps(c.case, c.start, c.length)) {
            continue;
        }
        kept.push(Shapelet {
            values: znormalize(&train.series(c.case)[c.start..c.start + c.length]),
            source_case: c.case,
            source_start: c.start,
            quality: q,
            class_origin: c.class_origin,
        });
    }
    kept
}


#[cfg(test)]
impl Shapelet {
    pub(crate) fn overlaps_for_test(&self, other: &Shapelet) -> bool {
        self.overlaps(other.source_case, other.source_start, other.len())
    }
}
