use super::sfa::{Breakpoints, SfaParams, Twiddles, select_coefficients};
use crate::error::{Error, Result};
use crate::kernels::mean_std;

/// Sparse word counts, sorted by word code.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordHistogram {
    counts: Vec<(u64, u32)>,
}

impl WordHistogram {
    /// Counts words after numerosity reduction: a word equal to the one
    /// immediately before it is skipped.
    pub fn from_words(words: &[u64]) -> Self {
        let mut kept: Vec<u64> = Vec::with_capacity(words.len());
        let mut prev = None;
        for &w in words {
            if prev != Some(w) {
                kept.push(w);
            }
            prev = Some(w);
        }
        kept.sort_unstable();
        let mut counts: Vec<(u64, u32)> = Vec::new();
        for w in kept {
            match counts.last_mut() {
                Some((last, c)) if *last == w => *c += 1,
                _ => counts.push((w, 1)),
            }
        }
        Self { counts }
    }

    pub fn from_counts<I: IntoIterator<Item = (u64, u32)>>(counts: I) -> Self {
        let mut counts: Vec<_> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        counts.sort_unstable();
        counts.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        Self { counts }
    }

    pub fn get(&self, word: u64) -> u32 {
        self.counts
            .binary_search_by_key(&word, |&(w, _)| w)
            .map_or(0, |i| self.counts[i].1)
    }

    pub fn n_words(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| u64::from(c)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.counts.iter().copied()
    }
}

pub(crate) fn words_of(
    series: &[f64],
    params: &SfaParams,
    breakpoints: &Breakpoints,
    twiddles: &Twiddles,
) -> Result<Vec<u64>> {
    if params.window_length > series.len() {
        return Err(Error::WindowTooLong {
            window: params.window_length,
            series: series.len(),
        });
    }
    let mut raw = Vec::new();
    let mut coefs = Vec::new();
    series
        .windows(params.window_length)
        .map(|w| {
            twiddles.raw_dft(w, &mut raw);
            select_coefficients(&raw, mean_std(w).1, params, &mut coefs);
            breakpoints.encode(&coefs, params.alphabet_size)
        })
        .collect()
}

/// Slides a stride-1 window over `series` and counts its SFA words.
pub fn series_to_histogram(series: &[f64], params: &SfaParams, breakpoints: &Breakpoints) -> Result<WordHistogram> {
    params.validate()?;
    let words = words_of(series, params, breakpoints, &Twiddles::for_params(params))?;
    Ok(WordHistogram::from_words(&words))
}

/// `Σ_{w ∈ a} (a[w] - b[w])²`; words only in `b` are ignored.
pub fn boss_distance(a: &WordHistogram, b: &WordHistogram) -> f64 {
    boss_distance_bounded(a, b, f64::INFINITY)
}

/// As [`boss_distance`], but may stop early and return a value above
/// `cutoff` once the partial sum exceeds it.
pub fn boss_distance_bounded(a: &WordHistogram, b: &WordHistogram, cutoff: f64) -> f64 {
    let mut total = 0.0;
    let mut j = 0;
    let bc = &b.counts;
    for &(w, ca) in &a.counts {
        while j < bc.len() && bc[j].0 < w {
            j += 1;
        }
        let cb = if j < bc.len() && bc[j].0 == w { bc[j].1 } else { 0 };
        let d = f64::from(ca) - f64::from(cb);
        total += d * d;
        if total > cutoff {
            return total;
        }
    }
    total
}
