use std::f64::consts::PI;

use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::kernels::{mean_std, ZERO_VARIANCE};

/// Highest Fourier index any supported word can need (16 values skipping DC).
pub(crate) const MAX_FREQUENCY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SfaParams {
    pub window_length: usize,
    pub word_length: usize,
    pub alphabet_size: usize,
    pub normalize: bool,
}

impl SfaParams {
    pub fn new(window_length: usize, word_length: usize, normalize: bool) -> Self {
        Self {
            window_length,
            word_length,
            alphabet_size: 4,
            normalize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.window_length == 0 || self.word_length == 0 || self.word_length > self.window_length {
            return Err(Error::InvalidParameter(format!(
                "word length {} and window length {}",
                self.word_length, self.window_length
            )));
        }
        if self.alphabet_size < 2 {
            return Err(Error::InvalidParameter("alphabet size below 2".into()));
        }
        if (self.alphabet_size as f64).powi(self.word_length as i32) > u64::MAX as f64 {
            return Err(Error::InvalidParameter("word does not fit in 64 bits".into()));
        }
        Ok(())
    }

    fn first_frequency(&self) -> usize {
        usize::from(self.normalize)
    }

    fn frequencies_needed(&self) -> usize {
        self.word_length.div_ceil(2)
    }
}

/// Cosine and sine tables for the low frequencies of one window length.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Twiddles {
    window_length: usize,
    n_freq: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl Twiddles {
    pub(crate) fn new(window_length: usize, n_freq: usize) -> Self {
        let mut cos = Vec::with_capacity(n_freq * window_length);
        let mut sin = Vec::with_capacity(n_freq * window_length);
        for k in 0..n_freq {
            for t in 0..window_length {
                let angle = 2.0 * PI * ((k * t) % window_length) as f64 / window_length as f64;
                cos.push(angle.cos());
                sin.push(angle.sin());
            }
        }
        Self {
            window_length,
            n_freq,
            cos,
            sin,
        }
    }

    pub(crate) fn for_params(params: &SfaParams) -> Self {
        Self::new(params.window_length, params.first_frequency() + params.frequencies_needed())
    }

    /// Unnormalised DFT `X_k = Σ x_t e^{-2πikt/W}` as `[re_0, im_0, re_1, ...]`.
    pub(crate) fn raw_dft(&self, window: &[f64], out: &mut Vec<f64>) {
        out.clear();
        let w = self.window_length;
        for k in 0..self.n_freq {
            let (c, s) = (&self.cos[k * w..(k + 1) * w], &self.sin[k * w..(k + 1) * w]);
            let mut re = 0.0;
            let mut im = 0.0;
            for t in 0..w {
                re += window[t] * c[t];
                im -= window[t] * s[t];
            }
            out.push(re);
            out.push(im);
        }
    }
}

/// Turns a window's raw DFT into the word's coefficient values. Under
/// normalisation the window is z-normalised, which for every frequency above
/// DC only divides by the window's standard deviation.
pub(crate) fn select_coefficients(raw: &[f64], window_std: f64, params: &SfaParams, out: &mut Vec<f64>) {
    out.clear();
    let first = 2 * params.first_frequency();
    let values = &raw[first..first + params.word_length];
    if params.normalize {
        if window_std < ZERO_VARIANCE {
            out.resize(params.word_length, 0.0);
        } else {
            out.extend(values.iter().map(|v| v / window_std));
        }
    } else {
        out.extend_from_slice(values);
    }
}

/// The `word_length` coefficient values of one window.
pub fn sfa_coefficients(window: &[f64], params: &SfaParams) -> Result<Vec<f64>> {
    params.validate()?;
    if window.len() != params.window_length {
        return Err(Error::DimensionMismatch {
            expected: params.window_length,
            found: window.len(),
        });
    }
    let mut raw = Vec::new();
    Twiddles::for_params(params).raw_dft(window, &mut raw);
    let mut out = Vec::new();
    select_coefficients(&raw, mean_std(window).1, params, &mut out);
    Ok(out)
}

/// Per-coefficient discretisation thresholds, `alphabet_size - 1` each.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoints {
    pub thresholds: Vec<Vec<f64>>,
}

impl Breakpoints {
    /// Symbol of a value is the number of thresholds strictly below it.
    pub fn symbol(&self, coefficient: usize, value: f64) -> u64 {
        self.thresholds[coefficient].iter().take_while(|&&t| t < value).count() as u64
    }

    pub(crate) fn encode(&self, coefficients: &[f64], alphabet_size: usize) -> Result<u64> {
        if self.thresholds.len() < coefficients.len() {
            return Err(Error::UnfittedBreakpoints);
        }
        Ok(coefficients
            .iter()
            .enumerate()
            .fold(0u64, |code, (i, &v)| code * alphabet_size as u64 + self.symbol(i, v)))
    }

    /// Equi-depth thresholds from pooled per-coefficient values: the
    /// nearest-rank quantile at `j / alphabet_size` for each `j`, nudged
    /// upwards where needed so each threshold exceeds the previous.
    pub(crate) fn from_columns(mut columns: Vec<Vec<f64>>, alphabet_size: usize) -> Self {
        let thresholds = columns
            .iter_mut()
            .map(|col| {
                col.sort_by(f64::total_cmp);
                let n = col.len();
                let mut out: Vec<f64> = Vec::with_capacity(alphabet_size - 1);
                for j in 1..alphabet_size {
                    let idx = (j * n).div_ceil(alphabet_size).max(1) - 1;
                    let mut t = col[idx];
                    if let Some(&prev) = out.last() {
                        if t <= prev {
                            t = prev.next_up();
                        }
                    }
                    out.push(t);
                }
                out
            })
            .collect();
        Self { thresholds }
    }
}

/// Packs a window's symbols base `alphabet_size`, first coefficient most significant.
pub fn sfa_word(window: &[f64], params: &SfaParams, breakpoints: &Breakpoints) -> Result<u64> {
    let coefs = sfa_coefficients(window, params)?;
    breakpoints.encode(&coefs, params.alphabet_size)
}

/// Raw DFT and standard deviation of every sliding window of every training case.
#[derive(Debug, Clone)]
pub(crate) struct WindowCache {
    /// Per case, per window: `2 * (MAX_FREQUENCY + 1)` raw DFT values.
    pub(crate) raw: Vec<Vec<Vec<f64>>>,
    pub(crate) stds: Vec<Vec<f64>>,
}

impl WindowCache {
    pub(crate) fn build(train: &TimeSeriesDataset, window_length: usize, n_freq: usize) -> Result<Self> {
        let n = train.series_length();
        if window_length > n {
            return Err(Error::WindowTooLong {
                window: window_length,
                series: n,
            });
        }
        let twiddles = Twiddles::new(window_length, n_freq);
        let mut raw = Vec::with_capacity(train.len());
        let mut stds = Vec::with_capacity(train.len());
        for c in 0..train.len() {
            let x = train.series(c);
            let (r, s): (Vec<_>, Vec<_>) = x
                .windows(window_length)
                .map(|w| {
                    let mut buf = Vec::new();
                    twiddles.raw_dft(w, &mut buf);
                    (buf, mean_std(w).1)
                })
                .unzip();
            raw.push(r);
            stds.push(s);
        }
        Ok(Self { raw, stds })
    }

    pub(crate) fn breakpoints(&self, params: &SfaParams) -> Breakpoints {
        let mut columns = vec![Vec::new(); params.word_length];
        let mut buf = Vec::new();
        for (raw_case, std_case) in self.raw.iter().zip(&self.stds) {
            for (raw, &s) in raw_case.iter().zip(std_case) {
                select_coefficients(raw, s, params, &mut buf);
                for (col, &v) in columns.iter_mut().zip(&buf) {
                    col.push(v);
                }
            }
        }
        Breakpoints::from_columns(columns, params.alphabet_size)
    }

    pub(crate) fn words(&self, case: usize, params: &SfaParams, breakpoints: &Breakpoints) -> Result<Vec<u64>> {
        let mut buf = Vec::new();
        self.raw[case]
            .iter()
            .zip(&self.stds[case])
            .map(|(raw, &s)| {
                select_coefficients(raw, s, params, &mut buf);
                breakpoints.encode(&buf, params.alphabet_size)
            })
            .collect()
    }
}

/// Pools coefficient values over all training windows and fits equi-depth
/// thresholds for each coefficient.
pub fn fit_breakpoints(train: &TimeSeriesDataset, params: &SfaParams) -> Result<Breakpoints> {
    params.validate()?;
    let tw = Twiddles::for_params(params);
    let cache = WindowCache::build(train, params.window_length, tw.n_freq)?;
    Ok(cache.breakpoints(params))
}
