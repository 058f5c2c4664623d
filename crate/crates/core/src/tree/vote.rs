use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteMode {
    /// Arithmetic mean of member distributions.
    Average,
    /// Normalized counts of each member's argmax.
    Majority,
}

/// Index of the largest entry; the lowest index wins ties.
pub fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in p.iter().enumerate() {
        if v > p[best] {
            best = i;
        }
    }
    best
}

pub fn ensemble_predict_proba<V: AsRef<[f64]>>(members: &[V], mode: VoteMode) -> Result<Vec<f64>> {
    let first = members.first().ok_or(Error::InconsistentDimensions)?.as_ref();
    let k = first.len();
    if k == 0 || members.iter().any(|m| m.as_ref().len() != k) {
        return Err(Error::InconsistentDimensions);
    }
    let mut out = vec![0.0; k];
    match mode {
        VoteMode::Average => {
            for m in members {
                for (o, v) in out.iter_mut().zip(m.as_ref()) {
                    *o += v;
                }
            }
        }
        VoteMode::Majority => {
            for m in members {
                out[argmax(m.as_ref())] += 1.0;
            }
        }
    }
    let n = members.len() as f64;
    out.iter_mut().for_each(|v| *v /= n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ensemble_predict_proba(&[vec![0.3, 0.7]], VoteMode::Average).unwrap(), vec![0.3, 0.7]);
        assert_eq!(
            ensemble_predict_proba(&[vec![1.0, 0.0], vec![0.0, 1.0]], VoteMode::Majority).unwrap(),
            vec![0.5, 0.5]
        );
        let p = ensemble_predict_proba(&[vec![0.6, 0.4], vec![0.2, 0.8]], VoteMode::Average).unwrap();
        assert!((p[0] - 0.4).abs() < 1e-15 && (p[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn majority_tie_goes_low() {
        let p = ensemble_predict_proba(&[vec![0.5, 0.5]], VoteMode::Majority).unwrap();
        assert_eq!(p, vec![1.0, 0.0]);
    }

    #[test]
    fn inconsistent_lengths() {
        assert_eq!(
            ensemble_predict_proba(&[vec![1.0], vec![0.5, 0.5]], VoteMode::Average),
            Err(Error::InconsistentDimensions)
        );
        let none: [Vec<f64>; 0] = [];
        assert_eq!(ensemble_predict_proba(&none, VoteMode::Average), Err(Error::InconsistentDimensions));
    }
}
