use crate::error::{Error, Result};

fn entropy(pos: usize, neg: usize) -> f64 {
    let n = (pos + neg) as f64;
    [pos, neg]
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Best information gain (bits) of a threshold split on `values` for a binary
/// target, with the threshold halfway between the two values it separates.
/// Ties go to the lowest threshold; returns `(0, NaN)` if no split exists.
pub fn best_binary_split(values: &[f64], positive: &[bool]) -> (f64, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let total_pos = positive.iter().filter(|&&p| p).count();
    let n = values.len();
    let parent = entropy(total_pos, n - total_pos);
    let mut best = (0.0, f64::NAN);
    let mut left_pos = 0;
    for k in 0..n.saturating_sub(1) {
        if positive[order[k]] {
            left_pos += 1;
        }
        let (lo, hi) = (values[order[k]], values[order[k + 1]]);
        if lo == hi {
            continue;
        }
        let left_n = k + 1;
        let right_n = n - left_n;
        let children = (left_n as f64 * entropy(left_pos, left_n - left_pos)
            + right_n as f64 * entropy(total_pos - left_pos, right_n - (total_pos - left_pos)))
            / n as f64;
        let gain = parent - children;
        if gain > best.0 || best.1.is_nan() {
            best = (gain.max(0.0), lo + (hi - lo) / 2.0);
        }
    }
    best
}

/// One-vs-rest information gain of the distances for the shapelet's class.
pub fn shapelet_quality(distances: &[f64], targets: &[usize], class_origin: usize) -> Result<f64> {
    if distances.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: targets.len(),
            found: distances.len(),
        });
    }
    let positive: Vec<bool> = targets.iter().map(|&t| t == class_origin).collect();
    let n_pos = positive.iter().filter(|&&p| p).count();
    if distances.len() < 2 || n_pos == 0 || n_pos == distances.len() {
        return Err(Error::DegenerateLabels);
    }
    Ok(best_binary_split(distances, &positive).0)
}
