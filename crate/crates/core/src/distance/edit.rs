use super::{band_radius, check_lengths};
use crate::error::{Error, Result};

/// `1 - L / n` where `L` is the longest common subsequence under the
/// matching rule `|a_i - b_j| <= epsilon && |i - j| <= delta`.
pub fn lcss_distance(a: &[f64], b: &[f64], epsilon: f64, delta: usize) -> Result<f64> {
    check_lengths(a, b)?;
    if epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!("lcss epsilon {epsilon} is negative")));
    }
    Ok(lcss(a, b, epsilon, delta))
}

pub(crate) fn lcss(a: &[f64], b: &[f64], epsilon: f64, delta: usize) -> f64 {
    let n = a.len();
    let mut prev = vec![0usize; n + 1];
    let mut curr = vec![0usize; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            curr[j] = if (i - 1).abs_diff(j - 1) <= delta && (a[i - 1] - b[j - 1]).abs() <= epsilon {
                prev[j - 1] + 1
            } else {
                prev[j].max(curr[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    1.0 - prev[n] as f64 / n as f64
}

pub fn erp_distance(a: &[f64], b: &[f64], g: f64, w: f64) -> Result<f64> {
    check_lengths(a, b)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidParameter(format!("window {w} outside [0, 1]")));
    }
    Ok(erp(a, b, g, w, f64::INFINITY))
}

/// Edit distance with real penalty. Cells of the `(n+1) x (n+1)` table,
/// borders included, are admissible iff `|i - j| <= ceil(w * n)`.
pub(crate) fn erp(a: &[f64], b: &[f64], g: f64, w: f64, cutoff: f64) -> f64 {
    let n = a.len();
    let r = band_radius(w, n);
    let gap_a: Vec<f64> = a.iter().map(|v| (v - g) * (v - g)).collect();
    let gap_b: Vec<f64> = b.iter().map(|v| (v - g) * (v - g)).collect();
    let mut prev = vec![f64::INFINITY; n + 1];
    let mut curr = vec![f64::INFINITY; n + 1];
    prev[0] = 0.0;
    for j in 1..=r.min(n) {
        prev[j] = prev[j - 1] + gap_b[j - 1];
    }
    for i in 1..=n {
        let lo = i.saturating_sub(r);
        let hi = (i + r).min(n);
        if lo > 0 {
            curr[lo - 1] = f64::INFINITY;
        }
        let mut row_min = f64::INFINITY;
        for j in lo..=hi {
            let v = if j == 0 {
                prev[0] + gap_a[i - 1]
            } else {
                let d = a[i - 1] - b[j - 1];
                (prev[j - 1] + d * d)
                    .min(prev[j] + gap_a[i - 1])
                    .min(curr[j - 1] + gap_b[j - 1])
            };
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

pub fn msm_distance(a: &[f64], b: &[f64], c: f64) -> Result<f64> {
    check_lengths(a, b)?;
    if c < 0.0 {
        return Err(Error::InvalidParameter(format!("msm cost {c} is negative")));
    }
    Ok(msm(a, b, c, f64::INFINITY))
}

/// Cost of a split or merge producing `new` next to neighbours `x` and `y`.
#[inline]
pub(crate) fn msm_split_merge(new: f64, x: f64, y: f64, c: f64) -> f64 {
    if (x <= new && new <= y) || (y <= new && new <= x) {
        c
    } else {
        c + (new - x).abs().min((new - y).abs())
    }
}

/// Move-split-merge with absolute move cost.
pub(crate) fn msm(a: &[f64], b: &[f64], c: f64, cutoff: f64) -> f64 {
    let n = a.len();
    // row 0 of the table: a[0] against every prefix of b
    let mut prev = vec![0.0; n];
    prev[0] = (a[0] - b[0]).abs();
    for j in 1..n {
        prev[j] = prev[j - 1] + msm_split_merge(b[j], a[0], b[j - 1], c);
    }
    let mut curr = vec![0.0; n];
    for i in 1..n {
        curr[0] = prev[0] + msm_split_merge(a[i], a[i - 1], b[0], c);
        let mut row_min = curr[0];
        for j in 1..n {
            let v = (prev[j - 1] + (a[i] - b[j]).abs())
                .min(prev[j] + msm_split_merge(a[i], a[i - 1], b[j], c))
                .min(curr[j - 1] + msm_split_merge(b[j], a[i], b[j - 1], c));
            curr[j] = v;
            row_min = row_min.min(v);
        }
        if row_min > cutoff {
            return f64::INFINITY;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[n - 1]
}

pub fn twed_distance(a: &[f64], b: &[f64], nu: f64, lambda: f64) -> Result<f64> {
    check_lengths(a, b)?;
    if nu <= 0.0 || lambda < 0.0 {
        return Err(Error::InvalidParameter(format!("twed nu={nu}, lambda={lambda}")));
    }
    Ok(twed(a, b, nu, lambda, f64::INFINITY))
}

/// Time warp edit distance with squared local cost and timestamps `1..=n`.
/// Both series are padded with a leading zero at time 0.
pub(crate) fn twed(a: &[f64], b: &[f64], nu: f64, lambda: f64, cutoff: f64) -> f64 {
    let n = a.len();
    let at = |i: usize| if i == 0 { 0.0 } else { a[i - 1] };
    let bt = |j: usize| if j == 0 { 0.0 } else { b[j - 1] };
    let sq = |x: f64, y: f64| (x - y) * (x - y);
    let mut prev = vec![f64::INFINITY; n + 1];
    let mut curr = vec![f64::INFINITY; n + 1];
    prev[0] = 0.0;
    for i in 1..=n {
        curr[0] = f64::INFINITY;
        let mut row_min = f64::INFINITY;
        for j in 1..=n {
            let del_a = prev[j] + sq(at(i - 1), at(i)) + nu + lambda;
            let del_b = curr[j - 1] + sq(bt(j - 1), bt(j)) + nu + lambda;
            let time_gap = i.abs_diff(j) as f64;
            let matched = prev[j - 1] + sq(at(i), bt(j)) + sq(at(i - 1), bt(j - 1)) + nu * 2.0 * time_gap;
            let v = matched.min(del_a).min(del_b);
            curr[j] = v;
            row_min = row_min.min(v);
        }
        if row_min > cutoff {
            return f64::INFINITY;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[n]
}
