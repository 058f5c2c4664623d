use super::{band_radius, check_lengths};
use crate::error::{Error, Result};

/// Keogh-Pazzani first-order derivative; output has length `n - 2`.
pub fn derivative_transform(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 3 {
        return Err(Error::SeriesTooShort {
            found: x.len(),
            required: 3,
        });
    }
    Ok(x.windows(3)
        .map(|w| ((w[1] - w[0]) + (w[2] - w[0]) / 2.0) / 2.0)
        .collect())
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(a, b)?;
    Ok(euclidean(a, b, f64::INFINITY))
}

pub(crate) fn euclidean(a: &[f64], b: &[f64], cutoff: f64) -> f64 {
    // slack keeps sums whose root rounds to exactly `cutoff` from abandoning
    let limit = if cutoff.is_finite() { cutoff * cutoff * (1.0 + 1e-12) } else { f64::INFINITY };
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b) {
        sum += (x - y) * (x - y);
        if sum > limit {
            return f64::INFINITY;
        }
    }
    sum.sqrt()
}

pub fn dtw_distance(a: &[f64], b: &[f64], w: f64) -> Result<f64> {
    check_lengths(a, b)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidParameter(format!("window {w} outside [0, 1]")));
    }
    Ok(dtw(a, b, w, f64::INFINITY))
}

pub fn wdtw_distance(a: &[f64], b: &[f64], g: f64) -> Result<f64> {
    check_lengths(a, b)?;
    if g < 0.0 {
        return Err(Error::InvalidParameter(format!("wdtw weight {g} is negative")));
    }
    Ok(wdtw(a, b, g, f64::INFINITY))
}

pub(crate) fn dtw(a: &[f64], b: &[f64], w: f64, cutoff: f64) -> f64 {
    let r = band_radius(w, a.len());
    banded_dp(a.len(), r, cutoff, |i, j| {
        let d = a[i] - b[j];
        d * d
    })
}

pub(crate) fn wdtw(a: &[f64], b: &[f64], g: f64, cutoff: f64) -> f64 {
    let n = a.len();
    let half = n as f64 / 2.0;
    let weights: Vec<f64> = (0..n)
        .map(|d| 1.0 / (1.0 + (-g * (d as f64 - half)).exp()))
        .collect();
    banded_dp(n, n, cutoff, |i, j| {
        let d = a[i] - b[j];
        weights[i.abs_diff(j)] * d * d
    })
}

/// Time-warping DP over an `n x n` grid restricted to `|i - j| <= r`.
/// Returns infinity as soon as every cell of a row exceeds `cutoff`.
fn banded_dp(n: usize, r: usize, cutoff: f64, cost: impl Fn(usize, usize) -> f64) -> f64 {
    let mut prev = vec![f64::INFINITY; n + 1];
    let mut curr = vec![f64::INFINITY; n + 1];
    prev[0] = 0.0;
    for i in 1..=n {
        let lo = i.saturating_sub(r).max(1);
        let hi = (i + r).min(n);
        curr[lo - 1] = f64::INFINITY;
        let mut row_min = f64::INFINITY;
        for j in lo..=hi {
            let best = prev[j - 1].min(prev[j]).min(curr[j - 1]);
            let v = cost(i - 1, j - 1) + best;
            curr[j] = v;
            row_min = row_min.min(v);
        }
        if hi < n {
            curr[hi + 1] = f64::INFINITY;
        }
        if row_min > cutoff {
            return f64::INFINITY;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[n]
}
