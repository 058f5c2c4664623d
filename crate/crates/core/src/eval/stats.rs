use statrs::distribution::{ContinuousCDF, Normal};

use super::metrics::midranks;
use crate::error::{Error, Result};

const DRAW_TOLERANCE: f64 = 1e-10;
const EXACT_LIMIT: usize = 25;

/// Counts of `a` beating, drawing with and losing to `b`.
pub fn win_draw_loss(a: &[f64], b: &[f64]) -> Result<(usize, usize, usize)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut out = (0, 0, 0);
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() <= DRAW_TOLERANCE {
            out.1 += 1;
        } else if x > y {
            out.0 += 1;
        } else {
            out.2 += 1;
        }
    }
    Ok(out)
}

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped and tied magnitudes share midranks. Up to 25 non-zero
/// differences the p-value is exact (over all sign assignments of the
/// observed ranks); beyond that a tie-corrected normal approximation with
/// continuity correction is used.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|&v| v != 0.0).collect();
    let n = d.len();
    if n < 5 {
        return Err(Error::TooFewSamples(n));
    }
    let ranks = midranks(&d.iter().map(|v| v.abs()).collect::<Vec<_>>());
    if n <= EXACT_LIMIT {
        // doubled midranks are integers
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let total: usize = doubled.iter().sum();
        let w_plus: usize = doubled.iter().zip(&d).filter(|(_, &v)| v > 0.0).map(|(r, _)| r).sum();
        let mut counts = vec![0.0f64; total + 1];
        counts[0] = 1.0;
        for &r in &doubled {
            for s in (r..=total).rev() {
                counts[s] += counts[s - r];
            }
        }
        let observed = (2 * w_plus).abs_diff(total);
        let extreme: f64 = (0..=total).filter(|&s| (2 * s).abs_diff(total) >= observed).map(|s| counts[s]).sum();
        Ok((extreme / 2f64.powi(n as i32)).min(1.0))
    } else {
        let w_plus: f64 = ranks.iter().zip(&d).filter(|(_, &v)| v > 0.0).map(|(r, _)| r).sum();
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let mut sorted = ranks.clone();
        sorted.sort_by(f64::total_cmp);
        let mut tie_term = 0.0;
        let mut i = 0;
        while i < n {
            let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
            let t = j as f64;
            tie_term += t * t * t - t;
            i += j;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
        let normal = Normal::standard();
        Ok((2.0 * normal.sf(z)).min(1.0))
    }
}

/// Holm step-down: rejections, in input order, at family-wise level `alpha`.
pub fn holm_correct(p_values: &[f64], alpha: f64) -> Vec<bool> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]).then(a.cmp(&b)));
    let mut reject = vec![false; m];
    for (i, &k) in order.iter().enumerate() {
        if p_values[k] > alpha / (m - i) as f64 {
            break;
        }
        reject[k] = true;
    }
    reject
}

/// Holm-adjusted p-values, in input order.
pub fn holm_adjust(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]).then(a.cmp(&b)));
    let mut adjusted = vec![0.0; m];
    let mut running: f64 = 0.0;
    for (i, &k) in order.iter().enumerate() {
        running = running.max(((m - i) as f64 * p_values[k]).min(1.0));
        adjusted[k] = running;
    }
    adjusted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_positive_six() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let p = wilcoxon_signed_rank(&a, &[0.0; 6]).unwrap();
        assert!((p - 0.03125).abs() < 1e-15);
        assert_eq!(wilcoxon_signed_rank(&a, &a), Err(Error::TooFewSamples(0)));
    }

    #[test]
    fn holm_examples() {
        assert_eq!(holm_correct(&[0.01, 0.04, 0.03], 0.05), vec![true, false, false]);
        assert_eq!(holm_correct(&[1.0, 1.0], 0.05), vec![false, false]);
        assert_eq!(holm_correct(&[0.05], 0.05), vec![true]);
        assert_eq!(holm_adjust(&[0.01, 0.04, 0.03]), vec![0.03, 0.06, 0.06]);
    }

    #[test]
    fn wdl() {
        assert_eq!(win_draw_loss(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), (0, 2, 0));
        assert_eq!(win_draw_loss(&[2.0, 3.0, 0.0], &[1.0, 2.0, 1.0]).unwrap(), (2, 0, 1));
    }

    #[test]
    fn large_sample_is_finite_and_symmetric() {
        let a: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = (0..40).map(|i| (i as f64 * 0.11).cos() * 0.5).collect();
        let p = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!(p > 0.0 && p <= 1.0);
        assert_eq!(p, wilcoxon_signed_rank(&b, &a).unwrap());
    }
}
