//! Numeric primitives shared by the interval classifiers and transforms.
//!
//! All standard deviations use the population (n) denominator. Zero-variance
//! inputs never fail: autocorrelations and z-normalized values collapse to 0.

use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Below this standard deviation a sequence is treated as constant.
pub const ZERO_VARIANCE: f64 = 1e-8;

/// Mean, population standard deviation and least-squares slope of an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalFeatures {
    pub mean: f64,
    pub std: f64,
    pub slope: f64,
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub fn mean_std(x: &[f64]) -> (f64, f64) {
    let m = mean(x);
    let var = x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / x.len() as f64;
    (m, var.max(0.0).sqrt())
}

pub fn interval_summary(x: &[f64]) -> Result<IntervalFeatures> {
    let n = x.len();
    if n < 2 {
        return Err(Error::IntervalTooShort(n));
    }
    let (mean, std) = mean_std(x);
    let t_mean = (n - 1) as f64 / 2.0;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (i, v) in x.iter().enumerate() {
        let dt = i as f64 - t_mean;
        sxy += dt * (v - mean);
        sxx += dt * dt;
    }
    Ok(IntervalFeatures {
        mean,
        std,
        slope: sxy / sxx,
    })
}

/// Autocorrelation at lags `1..=min(len - 1, maxlag)`.
pub fn acf_coefs(x: &[f64], maxlag: usize) -> Result<Vec<f64>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::IntervalTooShort(n));
    }
    let nlags = (n - 1).min(maxlag);
    let m = mean(x);
    let centred: Vec<f64> = x.iter().map(|v| v - m).collect();
    let denom: f64 = centred.iter().map(|v| v * v).sum();
    if denom <= ZERO_VARIANCE * ZERO_VARIANCE * n as f64 {
        return Ok(vec![0.0; nlags]);
    }
    Ok((1..=nlags)
        .map(|k| {
            centred[..n - k]
                .iter()
                .zip(&centred[k..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / denom
        })
        .collect())
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Squared magnitudes of the first `len / 2` DFT coefficients.
pub fn power_spectrum(x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::IntervalTooShort(n));
    }
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n));
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft.process(&mut buf);
    Ok(buf[..n / 2].iter().map(|c| c.norm_sqr()).collect())
}

/// `(x - mean) / std`, or all zeros when `std < 1e-8`.
pub fn znormalize(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let (m, s) = mean_std(x);
    if s < ZERO_VARIANCE {
        return vec![0.0; x.len()];
    }
    x.iter().map(|v| (v - m) / s).collect()
}
